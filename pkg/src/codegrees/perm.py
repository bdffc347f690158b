"""Permutations and permutation groups.

Points are ``0..n-1`` and permutations act on the right: ``(a*b)(x) = b(a(x))``,
so products read left to right.  A :class:`Permutation` is a tuple of images,
which keeps hashing and dictionary lookups cheap in the element scans used
everywhere else in the package.
"""

from __future__ import annotations

import math
import random
import re
from operator import itemgetter
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import CapacityError, InputError


class Permutation(tuple):
    """A bijection of ``range(n)`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a permutation: {images!r}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(range(n))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise InputError(f"point {x} out of range for degree {degree}")
                if x in seen:
                    raise InputError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a] = b
        return cls._raw(images)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __call__(self, x: int) -> int:
        return self[x]

    def __mul__(self, other: "Permutation") -> "Permutation":  # type: ignore[override]
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        result = Permutation.identity(len(self))
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inv(self))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def moved_points(self) -> list[int]:
        return [i for i, x in enumerate(self) if i != x]

    def __str__(self) -> str:
        return format_perm(self)

    def __repr__(self) -> str:
        return f"Permutation({format_perm(self)!r}, degree={len(self)})"

    # tuple's add/rmul would silently produce non-permutations
    def __add__(self, other):  # type: ignore[override]
        return NotImplemented


def _mul(a: tuple, b: tuple) -> Permutation:
    if len(a) < 2:
        return Permutation._raw(b)
    # itemgetter builds the image tuple in C, several times faster than map
    return Permutation._raw(itemgetter(*a)(b))


def _inv(a: tuple) -> list[int]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return out


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a*b``: first ``a``, then ``b``."""
    if len(a) != len(b):
        raise InputError(f"degree mismatch: {len(a)} vs {len(b)}")
    return _mul(a, b)


def conjugate(g: Permutation, h: Permutation) -> Permutation:
    """Return ``h^-1 * g * h``."""
    if len(g) != len(h):
        raise InputError(f"degree mismatch: {len(g)} vs {len(h)}")
    # (h^-1 g h)(h(x)) = h(g(x))
    out = [0] * len(g)
    for x, gx in enumerate(g):
        out[h[x]] = h[gx]
    return Permutation._raw(out)


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``a^-1 b^-1 a b``."""
    return _mul(_mul(a.inverse(), b.inverse()), _mul(a, b))


def format_perm(p: Sequence[int]) -> str:
    cyc = Permutation._raw(p).cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(\s*([0-9\s,]*)\)")


def parse_perm(text: str, degree: int | None = None) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"``; ``"()"`` is the identity."""
    stripped = text.strip()
    pos = 0
    cycles: list[list[int]] = []
    while pos < len(stripped):
        m = _CYCLE_RE.match(stripped, pos)
        if not m:
            raise InputError(f"cannot parse permutation {text!r} at column {pos + 1}")
        body = m.group(1).replace(",", " ").split()
        if body:
            cycles.append([int(x) for x in body])
        pos = m.end()
        while pos < len(stripped) and stripped[pos].isspace():
            pos += 1
    if not stripped:
        raise InputError("empty permutation text")
    top = max((max(c) for c in cycles if c), default=-1) + 1
    if degree is None:
        degree = max(top, 1)
    elif top > degree:
        raise InputError(f"permutation {text!r} moves points beyond degree {degree}")
    return Permutation.from_cycles(cycles, degree)


class StabChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    Base points are taken as the smallest point moved by the generator that
    forces a new level, so the chain depends only on the generator order.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        self.degree = degree
        self.identity = Permutation.identity(degree)
        self.base: list[int] = []
        self.strong: list[Permutation] = []
        self.transversals: list[dict[int, Permutation]] = []
        self.inverses: list[dict[int, Permutation]] = []
        self.orbit_lists: list[list[int]] = []
        for g in generators:
            self.extend(Permutation._raw(g))

    def _level_gens(self, i: int) -> list[Permutation]:
        fixed = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in fixed)]

    def _rebuild_level(self, i: int) -> None:
        gens = self._level_gens(i)
        b = self.base[i]
        trans = {b: self.identity}
        order = [b]
        for delta in order:
            u = trans[delta]
            for s in gens:
                img = s[delta]
                if img not in trans:
                    trans[img] = _mul(u, s)
                    order.append(img)
        while len(self.transversals) <= i:
            self.transversals.append({})
            self.inverses.append({})
            self.orbit_lists.append([])
        self.transversals[i] = trans
        self.inverses[i] = {k: Permutation._raw(_inv(v)) for k, v in trans.items()}
        self.orbit_lists[i] = order

    def sift(self, g: Sequence[int], start: int = 0) -> tuple[Permutation, int]:
        g = Permutation._raw(g)
        for level in range(start, len(self.base)):
            delta = g[self.base[level]]
            inv = self.inverses[level].get(delta)
            if inv is None:
                return g, level
            g = _mul(g, inv)
        return g, len(self.base)

    def _new_base_point(self, h: Permutation) -> None:
        moved = [x for x, y in enumerate(h) if x != y and x not in self.base]
        self.base.append(moved[0])

    def extend(self, g: Sequence[int]) -> None:
        """Enlarge the group by ``g`` and restore the strong generating property."""
        g = Permutation._raw(g)
        if g == self.identity:
            return
        h, j = self.sift(g)
        if j == len(self.base) and h == self.identity:
            return
        self.strong.append(g)
        if all(g[b] == b for b in self.base):
            self._new_base_point(g)
        self._schreier_sims(len(self.base) - 1)

    def _schreier_sims(self, i: int) -> None:
        for level in range(i + 1):
            self._rebuild_level(level)
        while i >= 0:
            self._rebuild_level(i)
            gens = self._level_gens(i)
            trans, inverses = self.transversals[i], self.inverses[i]
            failed = False
            for delta in self.orbit_lists[i]:
                u = trans[delta]
                for s in gens:
                    sg = _mul(_mul(u, s), inverses[s[delta]])
                    if sg == self.identity:
                        continue
                    h, j = self.sift(sg, i + 1)
                    if j == len(self.base) and h == self.identity:
                        continue
                    self.strong.append(h)
                    if j == len(self.base):
                        self._new_base_point(h)
                    for level in range(i + 1, j + 1):
                        self._rebuild_level(level)
                    i = j
                    failed = True
                    break
                if failed:
                    break
            if not failed:
                i -= 1

    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals[: len(self.base)])

    def contains(self, g: Sequence[int]) -> bool:
        h, j = self.sift(g)
        return j == len(self.base) and h == self.identity

    def transversal_lists(self) -> list[list[Permutation]]:
        return [[self.transversals[i][d] for d in self.orbit_lists[i]] for i in range(len(self.base))]


class PermGroup:
    """A permutation group given by generators, with a lazily built chain.

    ``parent`` is set on subgroups produced by structural computations; it is
    informational only.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None,
                 parent: "PermGroup | None" = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise InputError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise InputError(f"generator {format_perm(g)} has degree {len(g)}, expected {degree}")
        self.degree = degree
        self.generators: list[Permutation] = gens
        self.parent = parent
        self._chain: StabChain | None = None
        self._elements: list[Permutation] | None = None
        self._element_set: frozenset | None = None

    def __repr__(self) -> str:
        gens = ", ".join(format_perm(g) for g in self.generators) or "()"
        return f"PermGroup([{gens}], degree={self.degree})"

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.degree, self.generators)
        return self._chain

    def build_chain(self) -> "PermGroup":
        self.chain
        return self

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, p: Sequence[int]) -> bool:
        if len(p) != self.degree:
            raise InputError(f"degree mismatch: {len(p)} vs {self.degree}")
        if self._element_set is not None:
            return p in self._element_set
        return self.chain.contains(p)

    __contains__ = contains

    def elements(self, capacity: int | None = None) -> list[Permutation]:
        """All elements, identity first, in an order fixed by the chain."""
        if self._elements is not None:
            return self._elements
        limit = config.capacity() if capacity is None else capacity
        n = self.order()
        if n > limit:
            raise CapacityError(f"group of order {n} exceeds capacity {limit}")
        elems = [self.identity()]
        for level in reversed(self.chain.transversal_lists()):
            elems = [_mul(h, u) for u in level for h in elems]
        self._elements = elems
        self._element_set = frozenset(elems)
        return elems

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.order()

    def orbit(self, x: int) -> set[int]:
        if not 0 <= x < self.degree:
            raise InputError(f"point {x} out of range for degree {self.degree}")
        seen = {x}
        todo = [x]
        for y in todo:
            for g in self.generators:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    todo.append(z)
        return seen

    def random_element(self, seed: int | random.Random = 0) -> Permutation:
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        g = self.identity()
        for level in reversed(self.chain.transversal_lists()):
            g = _mul(g, rng.choice(level))
        return g

    def subgroup(self, generators: Iterable[Sequence[int]]) -> "PermGroup":
        return PermGroup(list(generators), self.degree, parent=self)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_as(self, other: "PermGroup") -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)


def group_from_elements(parent: PermGroup, elements: Iterable[Sequence[int]]) -> PermGroup:
    """Subgroup generated by ``elements``, with a greedily thinned generating set."""
    chain = StabChain(parent.degree)
    gens = []
    for g in elements:
        if not chain.contains(g):
            chain.extend(g)
            gens.append(Permutation._raw(g))
    sub = PermGroup(gens, parent.degree, parent=parent)
    sub._chain = chain
    return sub


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    gens = [Permutation.from_cycles([[0, 1]], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([list(range(n))], n))
    return PermGroup(gens, n)


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([Permutation.from_cycles([list(range(n))], n)], n)


def direct_product(a: PermGroup, b: PermGroup) -> PermGroup:
    """Direct product acting on the disjoint union of the two point sets."""
    n, m = a.degree, b.degree
    gens = [Permutation._raw(tuple(g) + tuple(range(n, n + m))) for g in a.generators]
    gens += [Permutation._raw(tuple(range(n)) + tuple(x + n for x in g)) for g in b.generators]
    return PermGroup(gens, n + m)
