"""Subgroup computations and structural predicates.

Everything works by element scans over groups of desk-scale order, backed by
stabilizer chains for membership.  Subgroups are plain :class:`PermGroup`
objects whose ``parent`` points at the ambient group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from sympy import factorint

from . import fq
from .errors import DomainError, InputError, InvariantError
from .perm import (PermGroup, Permutation, StabChain, _mul, commutator, conjugate,
                   group_from_elements)


def trivial_subgroup(G: PermGroup) -> PermGroup:
    return PermGroup([], G.degree, parent=G)


def subgroup_generated(G: PermGroup, gens) -> PermGroup:
    return group_from_elements(G, gens)


def normal_closure(G: PermGroup, gens) -> PermGroup:
    """Smallest subgroup normalized by ``G`` that contains ``gens``."""
    chain = StabChain(G.degree)
    kept = []
    queue = list(gens)
    while queue:
        x = queue.pop()
        if chain.contains(x):
            continue
        chain.extend(x)
        kept.append(Permutation._raw(x))
        queue.extend(conjugate(x, g) for g in G.generators)
    sub = PermGroup(kept, G.degree, parent=G)
    sub._chain = chain
    return sub


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    return all(H.contains(conjugate(h, g)) for h in H.generators for g in G.generators)


def commutator_subgroup(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    """``[A, B]`` for subgroups normalized by ``G`` with ``A B`` generating a subgroup of G."""
    return normal_closure(G, [commutator(a, b) for a in A.generators for b in B.generators])


def derived_subgroup(G: PermGroup) -> PermGroup:
    return normal_closure(G, [commutator(a, b) for a, b in itertools.combinations(G.generators, 2)])


def derived_series(G: PermGroup) -> list[PermGroup]:
    """``G, G', G'', ...`` down to the perfect core (last term repeated never)."""
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            return series
        series.append(D)


def lower_central_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        last = series[-1]
        nxt = normal_closure(G, [commutator(a, g) for a in last.generators for g in G.generators])
        if nxt.order() == last.order():
            return series
        series.append(nxt)


def nilpotent_residual(G: PermGroup) -> PermGroup:
    return lower_central_series(G)[-1]


def is_abelian(G: PermGroup) -> bool:
    return all(a * b == b * a for a, b in itertools.combinations(G.generators, 2))


def is_nilpotent(G: PermGroup) -> bool:
    return nilpotent_residual(G).order() == 1


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G)[-1].order() == 1


def is_perfect(G: PermGroup) -> bool:
    return derived_subgroup(G).order() == G.order()


def fitting_height(G: PermGroup) -> int:
    """Length of the lower nilpotent series ``G > res(G) > res(res(G)) > ... > 1``."""
    if not is_solvable(G):
        raise DomainError("Fitting height is defined here only for solvable groups")
    h = 0
    H = G
    while H.order() > 1:
        H = nilpotent_residual(H)
        h += 1
    return h


def centralizer_of_element(G: PermGroup, g: Permutation) -> PermGroup:
    return group_from_elements(G, (x for x in G.elements() if _mul(x, g) == _mul(g, x)))


def centralizer(G: PermGroup, H: PermGroup) -> PermGroup:
    """``C_G(H)`` by scanning ``G`` against the generators of ``H``."""
    gens = H.generators
    return group_from_elements(G, (x for x in G.elements()
                                   if all(_mul(x, h) == _mul(h, x) for h in gens)))


def center(G: PermGroup) -> PermGroup:
    return centralizer(G, G)


def element_order(g: Permutation) -> int:
    return g.order()


def exponent(G: PermGroup) -> int:
    return math.lcm(1, *(g.order() for g in G.elements()))


def p_part(n: int, p: int) -> int:
    k = 1
    while n % p == 0:
        n //= p
        k *= p
    return k


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


def elementary_abelian_rank(G: PermGroup) -> tuple[int, int] | None:
    """``(p, r)`` if ``G`` is elementary abelian of order ``p^r``; None otherwise.

    The trivial group has no defining prime and also returns None.
    """
    pp = fq.prime_power(G.order())
    if pp is None or not is_abelian(G):
        return None
    p, r = pp
    if any(g.order() not in (1, p) for g in G.generators):
        return None
    return p, r


def is_elementary_abelian(G: PermGroup) -> bool:
    return G.order() == 1 or elementary_abelian_rank(G) is not None


def is_homocyclic(G: PermGroup) -> bool:
    """Abelian p-group that is a direct product of cyclic groups of one order."""
    if G.order() == 1:
        return True
    pp = fq.prime_power(G.order())
    if pp is None or not is_abelian(G):
        return False
    p = pp[0]
    e = exponent(G)
    omega1 = sum(1 for g in G.elements() if g.order() in (1, p))
    # homocyclic of exponent p^k and rank r has |G| = p^(kr) and |Omega_1| = p^r
    k = fq.prime_power(e)[1]
    return omega1 ** k == G.order()


def is_p_group(G: PermGroup) -> bool:
    return G.order() == 1 or fq.prime_power(G.order()) is not None


def frattini_of_p_group(G: PermGroup) -> PermGroup:
    """``Phi(G) = G' G^p`` for a p-group."""
    if G.order() == 1:
        return trivial_subgroup(G)
    pp = fq.prime_power(G.order())
    if pp is None:
        raise DomainError("Frattini subgroup is only computed for p-groups")
    p = pp[0]
    gens = [commutator(a, b) for a, b in itertools.combinations(G.generators, 2)]
    gens += [g ** p for g in G.generators]
    return normal_closure(G, gens)


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of ``G`` inside ``H``."""
    current = set(H.elements())
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            keep = {x for x in current if conjugate(x, g) in current}
            if len(keep) != len(current):
                current = keep
                changed = True
    return group_from_elements(G, sorted(current))


def is_frobenius(G: PermGroup, N: PermGroup, P: PermGroup) -> bool:
    """True iff every nontrivial element of ``P`` fixes no nontrivial element of ``N``."""
    if not is_normal(G, N):
        raise InputError("N is not normal in G")
    if N.order() * P.order() != G.order() or any(N.contains(x) for x in P.elements()[1:]):
        raise InputError("G is not the semidirect product of N by P")
    if N.order() == 1 or P.order() == 1:
        return False
    n_elems = N.elements()[1:]
    for x in P.elements()[1:]:
        if not fq.is_prime(x.order()):
            continue
        for n in n_elems:
            if conjugate(n, x) == n:
                return False
    return True


def fixed_points_in(N: PermGroup, x: Permutation) -> list[Permutation]:
    return [n for n in N.elements() if conjugate(n, x) == n]


class _Coordinates:
    """Coordinates on an elementary abelian section ``L/B`` with a fixed basis."""

    def __init__(self, parent: PermGroup, L: PermGroup, B: PermGroup, q: int):
        self.q = q
        b_set = set(B.elements())
        span = set(b_set)
        basis = []
        for x in L.elements():
            if x in span:
                continue
            basis.append(x)
            new = set()
            power = x
            for _ in range(q - 1):
                new |= {_mul(power, y) for y in span}
                power = _mul(power, x)
            span |= new
        self.basis = basis
        self.dim = len(basis)
        self.coords: dict[Permutation, tuple[int, ...]] = {}
        identity = parent.identity()
        b_elems = B.elements()
        for c in itertools.product(range(q), repeat=self.dim):
            y = identity
            for b, e in zip(basis, c):
                for _ in range(e):
                    y = _mul(y, b)
            for z in b_elems:
                self.coords[_mul(y, z)] = c
        if len(self.coords) != L.order():
            raise InvariantError("section is not elementary abelian")

    def lift(self, vec) -> Permutation:
        y = Permutation.identity(len(self.basis[0]))
        for b, e in zip(self.basis, vec):
            for _ in range(e % self.q):
                y = _mul(y, b)
        return y

    def module(self, acting) -> fq.FqModule:
        mats = []
        for g in acting:
            rows = [list(self.coords[conjugate(b, g)]) for b in self.basis]
            mats.append(fq.FqMatrix(rows, self.q))
        return fq.FqModule(self.q, self.dim, mats)


@dataclass(eq=False)
class ChiefFactor:
    """A chief factor ``top/bottom`` of order ``q**dim`` with its conjugation module."""

    q: int
    dim: int
    module: fq.FqModule
    top: PermGroup
    bottom: PermGroup

    @property
    def order(self) -> int:
        return self.q ** self.dim


def _omega_center_layer(N: PermGroup, B: PermGroup, q: int) -> PermGroup:
    """Preimage of the elements of order dividing ``q`` in ``Z(N/B)``."""
    gens = N.generators
    elems = [x for x in N.elements()
             if B.contains(x ** q) and all(B.contains(commutator(x, n)) for n in gens)]
    return group_from_elements(N, elems)


def chief_factors(G: PermGroup, N: PermGroup, P: PermGroup | None = None,
                  bottom: PermGroup | None = None) -> list[ChiefFactor]:
    """A G-chief series of the nilpotent normal subgroup ``N``, bottom up.

    Each step takes the socle-type layer ``Omega_1(Z(N/B))`` for the smallest
    prime, and inside it a minimal submodule for the conjugation action of the
    generators of ``P`` (or of ``G`` when ``P`` is omitted).  ``bottom`` lets the
    series start at a normal subgroup ``B <= N`` instead of 1.
    """
    if not is_normal(G, N):
        raise InputError("N is not normal in G")
    if P is not None and math.gcd(P.order(), N.order()) != 1:
        raise DomainError("chief factors in the kernel need a coprime acting complement")
    acting = P.generators if P is not None else G.generators
    B = bottom if bottom is not None else trivial_subgroup(G)
    if N.order() % B.order() or not B.is_subgroup_of(N):
        raise InputError("bottom is not a subgroup of N")
    factors = []
    while B.order() < N.order():
        q = prime_divisors(N.order() // B.order())[0]
        L = _omega_center_layer(N, B, q)
        if L.order() == B.order():
            raise DomainError("N is not nilpotent")
        coords = _Coordinates(G, L, B, q)
        module = coords.module(acting)
        basis, pivots = fq.minimal_submodule(module)
        top = group_from_elements(G, list(B.generators) + [coords.lift(v) for v in basis])
        factors.append(ChiefFactor(q, len(basis), module.submodule(basis, pivots), top, B))
        B = top
    return factors


def homogeneous_classes(factors: list[ChiefFactor]) -> list[list[ChiefFactor]]:
    """Group chief factors into P-module isomorphism classes (same q and dim first)."""
    classes: list[list[ChiefFactor]] = []
    for f in factors:
        for cls in classes:
            rep = cls[0]
            if rep.q == f.q and rep.dim == f.dim and fq.are_isomorphic(rep.module, f.module):
                cls.append(f)
                break
        else:
            classes.append([f])
    return classes


def sylow_subgroup(G: PermGroup, p: int, hint: PermGroup | None = None) -> PermGroup:
    """A Sylow p-subgroup; ``hint`` (construction metadata) wins if it has the right order.

    The fallback grows a p-subgroup ``S`` by a p-element of ``N_G(S)`` outside
    ``S``; such an element exists until ``S`` is Sylow.
    """
    target = p_part(G.order(), p)
    if hint is not None and hint.order() == target and hint.is_subgroup_of(G):
        return hint
    chain = StabChain(G.degree)
    gens: list[Permutation] = []
    order = 1
    while order < target:
        for x in G.elements():
            if fq.prime_power(x.order()) is None or x.order() % p or chain.contains(x):
                continue
            if all(chain.contains(conjugate(s, x)) for s in gens):
                chain.extend(x)
                gens.append(x)
                order = chain.order()
                break
        else:
            raise InvariantError("Sylow search stalled")
    S = PermGroup(gens, G.degree, parent=G)
    S._chain = chain
    return S


def _hyperplanes(D: PermGroup, p: int) -> list[PermGroup]:
    coords = _Coordinates(D, D, trivial_subgroup(D), p)
    r = coords.dim
    out = []
    for phi in itertools.product(range(p), repeat=r):
        nz = [x for x in phi if x]
        if not nz or nz[0] != 1:
            continue
        elems = [x for x, c in coords.coords.items() if sum(a * b for a, b in zip(phi, c)) % p == 0]
        out.append(group_from_elements(D, elems))
    return out


def is_semi_extraspecial(G: PermGroup) -> bool:
    pp = fq.prime_power(G.order())
    if pp is None:
        raise DomainError("semi-extraspecial test needs a p-group")
    if is_abelian(G):
        raise DomainError("semi-extraspecial test needs a nonabelian group")
    p = pp[0]
    D = derived_subgroup(G)
    Z = center(G)
    F = frattini_of_p_group(G)
    if not (D.same_as(Z) and D.same_as(F)):
        return False
    gens = G.generators
    for M in _hyperplanes(D, p):
        # G/M is extraspecial iff Z(G/M) = D/M, i.e. only D commutes with G modulo M
        centre_mod_m = sum(1 for g in G.elements() if all(M.contains(commutator(g, h)) for h in gens))
        if centre_mod_m != D.order():
            return False
    return True


def is_ultraspecial(G: PermGroup) -> bool:
    if not is_semi_extraspecial(G):
        return False
    d = derived_subgroup(G).order()
    return d * d == G.order() // d


def fingerprint(G: PermGroup) -> tuple[int, int, int, int, int]:
    """(order, exponent, |G'|, |Z(G)|, number of involutions)."""
    return (G.order(), exponent(G), derived_subgroup(G).order(), center(G).order(),
            sum(1 for g in G.elements() if g.order() == 2))


def quotient_group(G: PermGroup, K: PermGroup) -> PermGroup:
    """``G/K`` for normal ``K``, as the action of G on the right cosets of K."""
    if not is_normal(G, K):
        raise InputError("quotient needs a normal subgroup")
    index: dict[Permutation, int] = {}
    reps = []
    k_elems = K.elements()
    for g in G.elements():
        if g not in index:
            for k in k_elems:
                index[k * g] = len(reps)
            reps.append(g)
    gens = [Permutation._raw(index[r * x] for r in reps) for x in G.generators]
    return PermGroup([g for g in gens if not g.is_identity()], len(reps))
