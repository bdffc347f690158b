"""Character tables over a prime field and the codegrees read off them.

The table is computed from the class algebra: the central characters of the
irreducibles are the common eigenvectors of the class multiplication
matrices, found over ``F_p`` for a prime ``p = 1 (mod exp G)`` with
``p > 2 sqrt|G|``.  No cyclotomic numbers are ever formed.  Instead every
value ``chi(g)`` is stored as integer multiplicities ``m_k`` of the roots of
unity ``zeta_o^k`` (``o`` the order of ``g``), which is all that kernels,
centres and codegrees need.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

from sympy import nextprime

from . import linalg
from .errors import InputError, InvariantError
from .perm import PermGroup, Permutation, _inv, _mul, group_from_elements


@dataclass(eq=False)
class ClassData:
    group: PermGroup
    reps: list[Permutation]
    sizes: list[int]
    orders: list[int]
    class_of: dict[Permutation, int]
    members: list[list[Permutation]]
    inverse_class: list[int]
    powers: list[list[int]]  # powers[j][u] = class of reps[j]**u, 0 <= u < orders[j]
    exponent: int

    def __len__(self) -> int:
        return len(self.reps)

    def power_map(self, j: int, u: int) -> int:
        return self.powers[j][u % self.orders[j]]

    def centralizer_order(self, j: int) -> int:
        return self.group.order() // self.sizes[j]


def conjugacy_classes(G: PermGroup) -> ClassData:
    """Classes ordered: identity first, then by element order, then by first appearance."""
    cached = getattr(G, "_class_data", None)
    if cached is not None:
        return cached
    elems = G.elements()
    position = {g: i for i, g in enumerate(elems)}
    gens = [(Permutation._raw(_inv(h)), h) for h in G.generators]
    raw: list[list[Permutation]] = []
    seen: set = set()
    for g in elems:
        if g in seen:
            continue
        orbit = [g]
        seen.add(g)
        for x in orbit:
            for hi, h in gens:
                y = _mul(_mul(hi, x), h)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
        raw.append(orbit)
    raw.sort(key=lambda c: (c[0].order(), position[c[0]]))
    class_of = {}
    for idx, members in enumerate(raw):
        for x in members:
            class_of[x] = idx
    reps = [c[0] for c in raw]
    orders = [r.order() for r in reps]
    powers = []
    for r, o in zip(reps, orders):
        row = []
        x = G.identity()
        for _ in range(o):
            row.append(class_of[x])
            x = _mul(x, r)
        powers.append(row)
    inverse_class = [p[-1] if len(p) > 1 else p[0] for p in powers]
    cd = ClassData(
        group=G,
        reps=reps,
        sizes=[len(c) for c in raw],
        orders=orders,
        class_of=class_of,
        members=raw,
        inverse_class=inverse_class,
        powers=powers,
        exponent=math.lcm(1, *orders),
    )
    G._class_data = cd
    return cd


def structure_constants(cd: ClassData, r: int) -> list[list[int]]:
    """``M[j][s]`` = number of ``x`` in class ``r`` with ``x^-1 z_s`` in class ``j``.

    That is the count of pairs ``(x, y)`` in ``K_r x K_j`` with ``x y = z_s``,
    for the fixed representative ``z_s``.
    """
    k = len(cd)
    M = [[0] * k for _ in range(k)]
    reps = cd.reps
    class_of = cd.class_of
    for x in cd.members[r]:
        xi = Permutation._raw(_inv(x))
        for s, z in enumerate(reps):
            M[class_of[_mul(xi, z)]][s] += 1
    return M


def dixon_prime(order: int, exponent: int) -> tuple[int, int]:
    """Least prime ``p = 1 (mod exponent)`` with ``p > 2 sqrt(order)``, and the least
    primitive ``exponent``-th root of unity modulo ``p``."""
    p = 1
    while True:
        p = nextprime(p)
        if p % exponent == 1 % exponent and p * p > 4 * order:
            break
    return p, primitive_root_of_unity(p, exponent)


def primitive_root_of_unity(p: int, e: int) -> int:
    if (p - 1) % e:
        raise InputError(f"F_{p} has no primitive {e}-th root of unity")
    if e == 1:
        return 1
    divisors = [r for r in range(2, e + 1) if e % r == 0 and all(r % s for s in range(2, int(r ** 0.5) + 1))]
    for z in range(2, p):
        if pow(z, e, p) == 1 and all(pow(z, e // r, p) != 1 for r in divisors):
            return z
    raise InvariantError("no primitive root of unity found")


@dataclass(eq=False)
class CharTable:
    classes: ClassData
    p: int
    z: int
    values: list[list[int]]            # values[i][j] = theta_i(g_j) mod p
    degrees: list[int]
    multiplicities: list[list[list[int]]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.degrees)

    @property
    def order(self) -> int:
        return self.classes.group.order()

    def value(self, i: int, j: int) -> complex:
        """Complex value of character ``i`` on class ``j`` from its multiplicities.

        The modular reduction fixes the table only up to Galois conjugation;
        values are those of one consistent algebraic conjugate.
        """
        o = self.classes.orders[j]
        return sum(m * cmath.exp(2j * math.pi * k / o) for k, m in enumerate(self.multiplicities[i][j]))

    def kernel_classes(self, i: int) -> list[int]:
        d = self.degrees[i]
        return [j for j, m in enumerate(self.multiplicities[i]) if m[0] == d]

    def center_classes(self, i: int) -> list[int]:
        """Classes where ``|chi(g)| = chi(1)``: all weight on a single root of unity."""
        d = self.degrees[i]
        return [j for j, m in enumerate(self.multiplicities[i]) if d in m]

    def kernel_order(self, i: int) -> int:
        return sum(self.classes.sizes[j] for j in self.kernel_classes(i))

    def codegree(self, i: int) -> int:
        n = self.order
        denom = self.kernel_order(i) * self.degrees[i]
        if n % denom:
            raise InvariantError(f"non-integral codegree {n}/{denom}")
        return n // denom

    def trivial_index(self) -> int:
        return next(i for i, row in enumerate(self.values) if all(v == 1 for v in row))


def _restricted(M: Sequence[Sequence[int]], basis, pivots, p: int) -> list[list[int]]:
    """Coefficients ``C[i][j]`` with ``M b_i = sum_j C[i][j] b_j`` on an invariant subspace."""
    # only the pivot coordinates of M b are needed, and RREF bases are sparse
    rows = [M[c] for c in pivots]
    out = []
    for b in basis:
        nz = [(t, x) for t, x in enumerate(b) if x]
        out.append([sum(x * row[t] for t, x in nz) % p for row in rows])
    return out


def _split(space, M, p):
    basis, pivots = space
    m = len(basis)
    C = _restricted(M, basis, pivots, p)
    roots = linalg.poly_roots(linalg.char_poly(C, p), p)
    if len(roots) == 1:
        return [space]
    Ct = linalg.transpose(C)
    parts = []
    for lam in roots:
        shifted = [[(x - (i == j) * lam) % p for j, x in enumerate(row)] for i, row in enumerate(Ct)]
        coords = linalg.nullspace(shifted, p, m)
        vecs = [[sum(c * b[t] for c, b in zip(x, basis)) % p for t in range(len(basis[0]))] for x in coords]
        parts.append(linalg.rref(vecs, p))
    if sum(len(part[0]) for part in parts) != m:
        raise InvariantError("class matrix is not diagonalizable on a joint eigenspace")
    return parts


def modp_table(cd: ClassData, p: int | None = None, z: int | None = None) -> CharTable:
    """Irreducible characters modulo ``p`` by joint eigenspace splitting.

    Class matrices are taken in class order; each space that is not yet a line
    is split into eigenspaces of the next matrix.
    """
    G = cd.group
    n = G.order()
    if p is None:
        p, z = dixon_prime(n, cd.exponent)
    elif z is None:
        z = primitive_root_of_unity(p, cd.exponent)
    if (p - 1) % cd.exponent or p * p <= 4 * n:
        raise InputError(f"prime {p} unsuitable for a group of order {n} and exponent {cd.exponent}")
    k = len(cd)
    spaces = [(linalg.identity(k), list(range(k)))]
    for r in range(1, k):
        if all(len(s[0]) == 1 for s in spaces):
            break
        M = structure_constants(cd, r)
        spaces = [part for s in spaces for part in (_split(s, M, p) if len(s[0]) > 1 else [s])]
    if len(spaces) != k or any(len(s[0]) != 1 for s in spaces):
        raise InvariantError("class algebra did not split into one-dimensional eigenspaces")
    root = math.isqrt(n)
    rows = []
    for basis, _ in spaces:
        w = basis[0]
        if w[0] == 0:
            raise InvariantError("central character vanishes on the identity class")
        inv0 = pow(w[0], -1, p)
        w = [x * inv0 % p for x in w]
        norm = sum(w[s] * w[cd.inverse_class[s]] * pow(cd.sizes[s], -1, p) for s in range(k)) % p
        d2 = n * pow(norm, -1, p) % p
        d = next((d for d in range(1, root + 1) if d * d % p == d2), None)
        if d is None:
            raise InvariantError("no integral degree matches the modular norm")
        values = [d * w[s] * pow(cd.sizes[s], -1, p) % p for s in range(k)]
        rows.append((d, values))
    rows.sort(key=lambda r: (r[0], any(v != 1 for v in r[1]), r[1]))
    table = CharTable(cd, p, z, [r[1] for r in rows], [r[0] for r in rows])
    if sum(d * d for d in table.degrees) != n:
        raise InvariantError("sum of squared degrees differs from the group order")
    return table


def multiplicity_vectors(t: CharTable) -> CharTable:
    """Fill ``t.multiplicities`` from the modular values and the power maps."""
    cd, p = t.classes, t.p
    e = cd.exponent
    out = []
    for i, row in enumerate(t.values):
        d = t.degrees[i]
        per_class = []
        for j, o in enumerate(cd.orders):
            zo_inv = pow(pow(t.z, e // o, p), -1, p)
            o_inv = pow(o, -1, p)
            vals = [row[c] for c in cd.powers[j]]
            ms = []
            for kk in range(o):
                step = pow(zo_inv, kk, p)
                acc, w = 0, 1
                for v in vals:
                    acc += v * w
                    w = w * step % p
                m = acc * o_inv % p
                if m > d:
                    raise InvariantError(f"multiplicity residue {m} exceeds degree {d}")
                ms.append(m)
            if sum(ms) != d:
                raise InvariantError("multiplicities do not sum to the degree")
            per_class.append(ms)
        out.append(per_class)
    t.multiplicities = out
    return t


def character_table(G: PermGroup, p: int | None = None, z: int | None = None) -> CharTable:
    """Full table (values, degrees, multiplicities); memoized on ``G`` for the default prime."""
    if p is None:
        cached = getattr(G, "_char_table", None)
        if cached is not None:
            return cached
    t = multiplicity_vectors(modp_table(conjugacy_classes(G), p, z))
    if p is None:
        G._char_table = t
    return t


def kernel_of_character(t: CharTable, i: int) -> tuple[PermGroup, list[int]]:
    cls = t.kernel_classes(i)
    cd = t.classes
    K = group_from_elements(cd.group, (x for j in cls for x in cd.members[j]))
    if K.order() != sum(cd.sizes[j] for j in cls):
        raise InvariantError("kernel classes do not form a subgroup")
    return K, cls


@dataclass
class CharacterRecord:
    degree: int
    kernel_order: int
    kernel_classes: list[int]
    codegree: int


@dataclass
class CodegreeReport:
    order: int
    exponent: int
    class_count: int
    characters: list[CharacterRecord]

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.characters]

    @property
    def codegrees(self) -> list[int]:
        return [c.codegree for c in self.characters]

    @property
    def cod_set(self) -> list[int]:
        return sorted(set(self.codegrees))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "exponent": self.exponent,
            "classCount": self.class_count,
            "degrees": self.degrees,
            "codegrees": self.codegrees,
            "codSet": self.cod_set,
            "kernels": [{"degree": c.degree, "kernelOrder": c.kernel_order, "codegree": c.codegree}
                        for c in self.characters],
        }


def codegree_report(G: PermGroup) -> CodegreeReport:
    t = character_table(G)
    n = G.order()
    records = []
    for i in range(len(t)):
        kc = t.kernel_classes(i)
        ko = sum(t.classes.sizes[j] for j in kc)
        cod = t.codegree(i)
        if cod * t.degrees[i] * ko != n:
            raise InvariantError("codegree * degree * |kernel| != |G|")
        records.append(CharacterRecord(t.degrees[i], ko, kc, cod))
    if 1 not in {r.codegree for r in records}:
        raise InvariantError("trivial character missing")
    return CodegreeReport(n, t.classes.exponent, len(t), records)


def cod_set(G: PermGroup) -> list[int]:
    return codegree_report(G).cod_set


def relative_cod_set(G: PermGroup, A: PermGroup) -> list[int]:
    """``cod(G|A)``: codegrees of characters whose kernel does not contain ``A``."""
    t = character_table(G)
    cd = t.classes
    a_classes = {cd.class_of[x] for x in A.elements()}
    return sorted({t.codegree(i) for i in range(len(t)) if not a_classes <= set(t.kernel_classes(i))})


@dataclass
class RestrictionCheck:
    multiplicities: list[list[int]]     # [chi of G][psi of N]
    group_cods: list[int]
    normal_cods: list[int]
    divides: list[list[bool | None]]    # None where psi is not a constituent

    @property
    def holds(self) -> bool:
        return all(x is not False for row in self.divides for x in row)


def restriction_constituent_cods(G: PermGroup, N: PermGroup) -> RestrictionCheck:
    """For each chi in Irr(G) and constituent psi of chi_N, test cod(psi) | cod(chi)."""
    tg = character_table(G)
    cdg = tg.classes
    cdn = conjugacy_classes(N)
    if cdg.exponent % cdn.exponent:
        raise InputError("exponent of N does not divide that of G")
    zn = pow(tg.z, cdg.exponent // cdn.exponent, tg.p)
    tn = multiplicity_vectors(modp_table(cdn, tg.p, zn))
    p = tg.p
    try:
        fusion = [cdg.class_of[r] for r in cdn.reps]
    except KeyError as exc:
        raise InputError("N is not a subgroup of G") from exc
    n_inv = pow(N.order(), -1, p)
    cods_g = [tg.codegree(i) for i in range(len(tg))]
    cods_n = [tn.codegree(i) for i in range(len(tn))]
    mults, divides = [], []
    for i in range(len(tg)):
        mrow, drow = [], []
        for a in range(len(tn)):
            s = sum(cdn.sizes[c] * tg.values[i][fusion[c]] * tn.values[a][cdn.inverse_class[c]]
                    for c in range(len(cdn))) * n_inv % p
            if s > tg.degrees[i]:
                raise InvariantError("restriction multiplicity out of range")
            mrow.append(s)
            drow.append(cods_g[i] % cods_n[a] == 0 if s else None)
        mults.append(mrow)
        divides.append(drow)
    return RestrictionCheck(mults, cods_g, cods_n, divides)


def orthogonality_residuals(t: CharTable) -> tuple[list[list[int]], list[list[int]]]:
    """Row and column orthogonality defects modulo ``p`` (all zero for a valid table)."""
    cd, p, n = t.classes, t.p, t.order
    k = len(t)
    rows = [[(sum(cd.sizes[j] * t.values[a][j] * t.values[b][cd.inverse_class[j]] for j in range(k))
              - (n if a == b else 0)) % p for b in range(k)] for a in range(k)]
    cols = [[(sum(t.values[i][a] * t.values[i][cd.inverse_class[b]] for i in range(k))
              - (cd.centralizer_order(a) if a == b else 0)) % p for b in range(k)] for a in range(k)]
    return rows, cols
