"""Realize construction specs as permutation groups with decomposition metadata."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import config, dsl
from .errors import CapacityError, DomainError, InputError, InvariantError
from .fq import FqMatrix, frobenius_matrix, is_prime, mult_order, prime_power, primitive_polynomial, singer_matrix
from .perm import Permutation, PermGroup, direct_product, parse_perm, symmetric_group
from .structure import fingerprint, is_frobenius, is_normal


@dataclass
class BuiltGroup:
    group: PermGroup
    family: str
    spec: dsl.GroupSpec | None = None
    meta: dict[str, PermGroup] = field(default_factory=dict)
    expected_case: str | None = None

    @property
    def text(self) -> str:
        return dsl.to_text(self.spec) if self.spec is not None else self.family


# ---------------------------------------------------------------- complements

def complement_fingerprint(name: str) -> tuple[int, int, int, int, int]:
    """(order, exponent, |G'|, |Z|, involutions) for a named complement."""
    if name.startswith("C") and name[1:].isdigit():
        n = int(name[1:])
        return (n, n, 1, n, int(n % 2 == 0))
    if name.startswith("D") and name[1:].isdigit() and int(name[1:]) >= 6 and int(name[1:]) % 2 == 0:
        n = int(name[1:]) // 2
        even = n % 2 == 0
        return (2 * n, math.lcm(2, n), n // 2 if even else n, 2 if even else 1, n + int(even))
    table = {
        "Q8": (8, 4, 2, 2, 1),
        "SmallGroup(16,13)": (16, 4, 2, 4, 7),
        "Pauli16": (16, 4, 2, 4, 7),
        "ES(2^5_-)": (32, 4, 2, 2, 11),
        "ESminus32": (32, 4, 2, 2, 11),
    }
    if name not in table:
        raise InputError(f"unknown complement name {name!r}")
    return table[name]


# ---------------------------------------------------------------- point actions

def _vectors(q: int, dim: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(q), repeat=dim))


def _check_degree(n: int) -> None:
    if n > config.capacity():
        raise CapacityError(f"action on {n} points exceeds capacity {config.capacity()}")


def _index(v, q: int) -> int:
    k = 0
    for x in v:
        k = k * q + x
    return k


def affine_group(q: int, dim: int, mats: list[FqMatrix]) -> tuple[PermGroup, PermGroup, PermGroup]:
    """``F_q^dim`` extended by the matrix group; returns (G, translations, linear part)."""
    _check_degree(q ** dim)
    vecs = _vectors(q, dim)
    trans = []
    for i in range(dim):
        e = [int(j == i) for j in range(dim)]
        trans.append(Permutation._raw(_index([(a + b) % q for a, b in zip(v, e)], q) for v in vecs))
    lin = [Permutation._raw(_index(m.act(v), q) for v in vecs) for m in mats]
    lin = [g for g in lin if not g.is_identity()]
    G = PermGroup(trans + lin, q ** dim)
    return G, G.subgroup(trans), G.subgroup(lin)


def linear_group(q: int, dim: int, mats: list[FqMatrix]) -> PermGroup:
    """Matrix group acting on the orbits of the standard basis vectors.

    The basis spans ``F_q^dim``, so the action is faithful; points are the
    orbit vectors in lexicographic order.
    """
    seen: set[tuple[int, ...]] = set()
    for i in range(dim):
        todo = [tuple(int(j == i) for j in range(dim))]
        seen.add(todo[0])
        for v in todo:
            for m in mats:
                w = tuple(m.act(v))
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
                    _check_degree(len(seen))
    points = sorted(seen)
    index = {v: k for k, v in enumerate(points)}
    gens = [Permutation._raw(index[tuple(m.act(v))] for v in points) for m in mats]
    return PermGroup([g for g in gens if not g.is_identity()], len(points))


def _block_diagonal(m: FqMatrix, copies: int) -> FqMatrix:
    d = m.nrows
    rows = []
    for b in range(copies):
        for r in m.rows:
            rows.append([0] * (b * d) + list(r) + [0] * ((copies - b - 1) * d))
    return FqMatrix(rows, m.q)


def _shift(g: Permutation, offset: int, total: int) -> Permutation:
    images = list(range(total))
    for i, x in enumerate(g):
        images[offset + i] = offset + x
    return Permutation._raw(images)


# ---------------------------------------------------------------- validation

def _check_capacity(G: PermGroup) -> None:
    if G.order() > config.capacity():
        raise CapacityError(f"group of order {G.order()} exceeds capacity {config.capacity()}")


def check_meta(built: BuiltGroup) -> None:
    """N normal, G = N P and N meets P trivially, when both roles are present."""
    G, meta = built.group, built.meta
    if "N" in meta and "P" in meta:
        N, P = meta["N"], meta["P"]
        if not is_normal(G, N):
            raise InvariantError(f"{built.family}: N is not normal")
        if N.order() * P.order() != G.order() or any(N.contains(g) for g in P.generators):
            raise InvariantError(f"{built.family}: G is not N semidirect P")
        if any(N.contains(x) for x in P.elements()[1:]):
            raise InvariantError(f"{built.family}: N and P intersect")
    if "V" in meta and "K" in meta:
        if not (is_normal(G, meta["V"]) and is_normal(G, meta["K"])):
            raise InvariantError(f"{built.family}: V or K is not normal")


def _finish(built: BuiltGroup, frobenius: bool = False) -> BuiltGroup:
    _check_capacity(built.group)
    check_meta(built)
    if frobenius and not is_frobenius(built.group, built.meta["N"], built.meta["P"]):
        raise InvariantError(f"{built.family}: Frobenius check failed")
    return built


# ---------------------------------------------------------------- families

def frob_singer_build(pk: int, q: int, copies: int = 1) -> BuiltGroup:
    """C_pk acting fixed-point-freely on ``copies`` copies of F_{q^d}, d = ord_pk(q)."""
    pp = prime_power(pk)
    if pp is None:
        raise DomainError(f"{pk} is not a prime power")
    if not is_prime(q) or pk % q == 0:
        raise DomainError("need q prime and gcd(pk, q) = 1")
    d = mult_order(q, pk)
    _check_degree(q ** (d * copies))
    s = singer_matrix(q, d)
    a = s ** ((q ** d - 1) // pk)
    if not a.has_order(pk):
        raise InvariantError("Singer power has the wrong order")
    G, N, P = affine_group(q, d * copies, [_block_diagonal(a, copies)])
    expected = "2b" if pp[1] == 2 else None
    return _finish(BuiltGroup(G, "frobsinger", dsl.FrobSinger(pk, q, copies), {"N": N, "P": P}, expected),
                   frobenius=True)


def _q8_generators(q: int) -> tuple[FqMatrix, FqMatrix]:
    """Least ``a``, then ``b``, with ``a^2 + b^2 = -1``; i = [[a,b],[b,-a]], j = [[0,-1],[1,0]]."""
    for a in range(q):
        for b in range(q):
            if (a * a + b * b + 1) % q == 0:
                return FqMatrix([[a, b], [b, -a]], q), FqMatrix([[0, -1], [1, 0]], q)
    raise InvariantError(f"no solution of a^2 + b^2 = -1 mod {q}")


def q8_on_cq2(q: int) -> BuiltGroup:
    if not is_prime(q) or q == 2:
        raise DomainError(f"Q8onCq2 needs an odd prime, got {q} (q prime and q != 2 violated)")
    i, j = _q8_generators(q)
    G, N, P = affine_group(q, 2, [i, j])
    if P.order() != 8:
        raise InvariantError("Q8 embedding has the wrong order")
    spec = dsl.Named("Q8onCq2", (q,))
    return _finish(BuiltGroup(G, "Q8onCq2", spec, {"N": N, "P": P}, "2a"), frobenius=True)


def _sdp_named(tag: str, q: int, mats: list[list[list[int]]], complement: str, case: str,
               dim: int = 2) -> BuiltGroup:
    G, N, P = affine_group(q, dim, [FqMatrix(m, q) for m in mats])
    if fingerprint(P) != complement_fingerprint(complement):
        raise InvariantError(f"{tag}: complement is not {complement}")
    return _finish(BuiltGroup(G, tag, dsl.Named(tag), {"N": N, "P": P}, case))


def d8_on_c3sq() -> BuiltGroup:
    return _sdp_named("D8onC3sq", 3, [[[0, 2], [1, 0]], [[1, 0], [0, 2]]], "D8", "4a")


def pauli16_on_c5sq() -> BuiltGroup:
    return _sdp_named("Pauli16onC5sq", 5, [[[0, 4], [1, 0]], [[1, 0], [0, 4]], [[2, 0], [0, 2]]],
                      "SmallGroup(16,13)", "4b")


def esminus32_on_c3p4() -> BuiltGroup:
    one = FqMatrix.identity(2, 3)
    d8 = [FqMatrix([[0, 2], [1, 0]], 3), FqMatrix([[1, 0], [0, 2]], 3)]
    q8 = list(_q8_generators(3))
    mats = [m.kron(one).tolist() for m in d8] + [one.kron(m).tolist() for m in q8]
    return _sdp_named("ESminus32onC3p4", 3, mats, "ES(2^5_-)", "4c", dim=4)


def two_step_frobenius(p: int, q: int, r: int, m: int) -> BuiltGroup:
    """V = F_r^{pm}, a Singer element of order q, and x -> x^(r^m) of order p."""
    for name, v in (("p", p), ("q", q), ("r", r)):
        if not is_prime(v):
            raise DomainError(f"TwoStepFrobenius: {name} = {v} is not prime")
    if m < 1:
        raise DomainError("TwoStepFrobenius: m >= 1 violated")
    n = p * m
    if (r ** n - 1) % (r ** m - 1) or (r ** n - 1) // (r ** m - 1) != q:
        raise DomainError(f"TwoStepFrobenius: q = (r^(pm) - 1)/(r^m - 1) violated for q={q}")
    _check_degree(r ** n)
    s = singer_matrix(r, n)
    qgen = s ** ((r ** n - 1) // q)
    pgen = frobenius_matrix(r, n, m)
    if not qgen.has_order(q) or not pgen.has_order(p):
        raise InvariantError("TwoStepFrobenius: generator orders are wrong")
    G, V, _ = affine_group(r, n, [qgen, pgen])
    vecs = _vectors(r, n)
    qperm = Permutation._raw(_index(qgen.act(v), r) for v in vecs)
    pperm = Permutation._raw(_index(pgen.act(v), r) for v in vecs)
    K = G.subgroup(list(V.generators) + [qperm])
    P = G.subgroup([pperm])
    spec = dsl.Named("TwoStepFrobenius", (), (("p", p), ("q", q), ("r", r), ("m", m)))
    built = BuiltGroup(G, "TwoStepFrobenius", spec, {"V": V, "K": K, "P": P, "N": K}, "6")
    return _finish(built)


def sl2_of_3() -> BuiltGroup:
    """SL2(3) = Q8 x| C3 on the eight nonzero vectors of F_3^2."""
    i, j = _q8_generators(3)
    c = FqMatrix([[1, 1], [0, 1]], 3)
    G = linear_group(3, 2, [i, j, c])
    gens = G.generators
    N, P = G.subgroup(gens[:2]), G.subgroup(gens[2:])
    built = BuiltGroup(G, "Q8rtimesC3", dsl.Named("Q8rtimesC3"), {"N": N, "P": P}, "3")
    return _finish(built)


class _GF2:
    """GF(2^f) with elements encoded as bit vectors of polynomial coefficients."""

    def __init__(self, f: int):
        coeffs = primitive_polynomial(2, f)
        self.f, self.size = f, 2 ** f
        self.modulus = sum(c << i for i, c in enumerate(coeffs)) | (1 << f)
        self.omega = 2 if f > 1 else 1

    def mul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & self.size:
                a ^= self.modulus
        return r

    def inv(self, a: int) -> int:
        return self.power(a, self.size - 2)

    def power(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r


def sl2_build(f: int) -> BuiltGroup:
    """SL2(2^f) on the projective line: points 0..2^f-1 are field elements, 2^f is infinity."""
    if f < 1:
        raise DomainError("sl2 needs f >= 1")
    _check_degree(2 ** f + 1)
    F = _GF2(f)
    inf = F.size

    def perm(a, b, c, d):
        images = []
        for t in range(F.size + 1):
            x, y = (t, 1) if t != inf else (1, 0)
            u = F.mul(x, a) ^ F.mul(y, c)
            v = F.mul(x, b) ^ F.mul(y, d)
            images.append(inf if v == 0 else F.mul(u, F.inv(v)))
        return Permutation._raw(images)

    w = F.omega
    gens = [perm(w, 0, 0, F.inv(w)), perm(1, 1, 0, 1), perm(0, 1, 1, 0)]
    G = PermGroup([g for g in gens if not g.is_identity()], F.size + 1)
    q = F.size
    if G.order() != q * (q * q - 1):
        raise InvariantError("SL2 generators produced the wrong order")
    return _finish(BuiltGroup(G, "sl2", dsl.Sl2(f), {}, "7" if f >= 2 else None))


def metacyclic_build(n: int, m: int, a: int) -> BuiltGroup:
    """C_n x| C_m on Z/n: x -> x+1 and x -> a x, with a of multiplicative order m."""
    if math.gcd(a, n) != 1:
        raise DomainError(f"metacyclic: gcd(a, n) = 1 violated for a={a}, n={n}")
    if (m == 1 and a % n != 1) or (m > 1 and mult_order(a % n, n) != m):
        raise DomainError(f"metacyclic: a={a} does not have multiplicative order {m} mod {n}")
    _check_degree(n)
    t = Permutation._raw([(x + 1) % n for x in range(n)])
    u = Permutation._raw([(a * x) % n for x in range(n)])
    G = PermGroup([t] + ([u] if m > 1 else []), n)
    N, P = G.subgroup([t]), G.subgroup([u] if m > 1 else [])
    return _finish(BuiltGroup(G, "metacyclic", dsl.Metacyclic(n, m, a), {"N": N, "P": P}))


def _dirprod(left: BuiltGroup, right: BuiltGroup, spec) -> BuiltGroup:
    G = direct_product(left.group, right.group)
    n, total = left.group.degree, G.degree
    A = G.subgroup([_shift(g, 0, total) for g in left.group.generators])
    B = G.subgroup([_shift(g, n, total) for g in right.group.generators])
    expected = None
    ls, rs = left.spec, right.spec
    if isinstance(ls, dsl.ElemAb) and isinstance(rs, dsl.ElemAb) and ls.p != rs.p:
        expected = "1"
    elif (isinstance(ls, dsl.FrobSinger) and is_prime(ls.pk)
          and isinstance(rs, (dsl.Cyclic, dsl.ElemAb))
          and (rs.n == ls.pk if isinstance(rs, dsl.Cyclic) else rs.p == ls.pk)):
        expected = "5"
    return _finish(BuiltGroup(G, "dirprod", spec, {"A": A, "B": B}, expected))


def build(spec: dsl.GroupSpec | str) -> BuiltGroup:
    if isinstance(spec, str):
        spec = dsl.parse_spec(spec)
    if isinstance(spec, dsl.ElemAb):
        if not is_prime(spec.p):
            raise DomainError(f"{spec.p} is not prime")
        _check_degree(spec.p * spec.n)
        gens = [Permutation._raw([(x + 1) % spec.p + k * spec.p if k == b else x + k * spec.p
                                  for k in range(spec.n) for x in range(spec.p)]) for b in range(spec.n)]
        G = PermGroup(gens, spec.p * spec.n)
        return _finish(BuiltGroup(G, "elemab", spec))
    if isinstance(spec, dsl.Cyclic):
        _check_degree(spec.n)
        G = PermGroup([Permutation._raw([(x + 1) % spec.n for x in range(spec.n)])] if spec.n > 1 else [],
                      spec.n)
        return _finish(BuiltGroup(G, "cyclic", spec))
    if isinstance(spec, dsl.Symmetric):
        _check_degree(spec.n)
        return _finish(BuiltGroup(symmetric_group(spec.n), "symmetric", spec))
    if isinstance(spec, dsl.Dihedral):
        n = spec.order // 2
        rot = Permutation._raw([(x + 1) % n for x in range(n)])
        ref = Permutation._raw([(-x) % n for x in range(n)])
        G = PermGroup([rot, ref], n)
        return _finish(BuiltGroup(G, "dihedral", spec, {"N": G.subgroup([rot]), "P": G.subgroup([ref])}))
    if isinstance(spec, dsl.Metacyclic):
        return metacyclic_build(spec.n, spec.m, spec.a)
    if isinstance(spec, dsl.FrobSinger):
        return frob_singer_build(spec.pk, spec.q, spec.copies)
    if isinstance(spec, dsl.Sl2):
        return sl2_build(spec.f)
    if isinstance(spec, dsl.DirProd):
        return _dirprod(build(spec.left), build(spec.right), spec)
    if isinstance(spec, dsl.SdpMatrix):
        mats = [FqMatrix(m, spec.q) for m in spec.matrices]
        if any(not m.is_invertible() for m in mats):
            raise DomainError("sdp: singular action matrix")
        G, N, P = affine_group(spec.q, spec.dim, mats)
        if spec.complement is not None:
            want, got = complement_fingerprint(spec.complement), fingerprint(P)
            if want != got:
                raise InputError(f"sdp: matrices generate a group with fingerprint {got}, "
                                 f"not {spec.complement} {want}")
        return _finish(BuiltGroup(G, "sdp", spec, {"N": N, "P": P}))
    if isinstance(spec, dsl.MatGroup):
        mats = [FqMatrix(m, spec.q) for m in spec.matrices]
        return _finish(BuiltGroup(linear_group(spec.q, spec.dim, mats), "matgroup", spec))
    if isinstance(spec, dsl.Perms):
        degree = max(len(parse_perm(g)) for g in spec.generators)
        G = PermGroup([parse_perm(g, degree) for g in spec.generators], degree)
        return _finish(BuiltGroup(G, "perms", spec))
    if isinstance(spec, dsl.Named):
        built = _build_named(spec)
        built.spec = spec
        return built
    raise InputError(f"cannot build {spec!r}")


def _named_params(spec: dsl.Named, names: tuple[str, ...]) -> list[int]:
    kw = dict(spec.kwargs)
    if len(spec.args) > len(names):
        raise InputError(f"{spec.tag} takes {len(names)} parameter(s)")
    values = dict(zip(names, spec.args))
    for k, v in kw.items():
        if k not in names:
            raise InputError(f"{spec.tag}: unknown parameter {k!r}")
        if k in values:
            raise InputError(f"{spec.tag}: parameter {k!r} given twice")
        values[k] = v
    missing = [n for n in names if n not in values]
    if missing:
        raise InputError(f"{spec.tag}: missing parameter(s) {', '.join(missing)}")
    return [values[n] for n in names]


def _build_named(spec: dsl.Named) -> BuiltGroup:
    tag = spec.tag
    if tag == "Q8onCq2":
        return q8_on_cq2(*_named_params(spec, ("q",)))
    if tag == "TwoStepFrobenius":
        return two_step_frobenius(*_named_params(spec, ("p", "q", "r", "m")))
    _named_params(spec, ())
    if tag == "D8onC3sq":
        return d8_on_c3sq()
    if tag == "Pauli16onC5sq":
        return pauli16_on_c5sq()
    if tag == "ESminus32onC3p4":
        return esminus32_on_c3p4()
    if tag == "Q8rtimesC3":
        return sl2_of_3()
    raise InputError(f"unknown named family {tag!r}")
