"""Decide which four-codegree family a group belongs to.

The verdict records every predicate it evaluated.  A group with four
codegrees that fits no family, or a verdict whose predicted codegree set
disagrees with the computed one, raises :class:`InvariantError`.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from . import chartable
from .build import BuiltGroup, build, complement_fingerprint
from .errors import CodegreeError, InvariantError
from .fq import mult_order, prime_power
from .perm import PermGroup, commutator, conjugate, group_from_elements
from .structure import (center, chief_factors, commutator_subgroup, core, derived_subgroup, exponent,
                        fingerprint, fitting_height, homogeneous_classes, is_abelian,
                        is_elementary_abelian, is_frobenius, is_perfect,
                        is_semi_extraspecial, is_solvable, is_ultraspecial, nilpotent_residual,
                        prime_divisors, quotient_group, sylow_subgroup)

LABELS = ("Case1", "Case2a", "Case2b", "Case2c", "Case2d", "Case2e", "Case2f", "Case3",
          "Case4a", "Case4b", "Case4c", "Case5", "Case6", "Case7",
          "NotFourCodegrees", "PrimePowerOutOfScope")


@dataclass
class Evidence:
    predicate: str
    result: Any
    witness: Any = None

    def to_json(self) -> dict:
        out = {"predicate": self.predicate, "result": self.result}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class CaseVerdict:
    label: str
    cod_set: list[int]
    evidence: list[Evidence] = field(default_factory=list)

    @property
    def case(self) -> str:
        """The label without its ``Case`` prefix, e.g. ``"2a"``."""
        return self.label[4:] if self.label.startswith("Case") else self.label

    def to_json(self) -> dict:
        return {"label": self.label, "codSet": self.cod_set,
                "evidence": [e.to_json() for e in self.evidence]}


class _Recorder:
    def __init__(self):
        self.items: list[Evidence] = []

    def __call__(self, predicate: str, result, witness=None):
        self.items.append(Evidence(predicate, result, witness))
        return result

    def require(self, predicate: str, result: bool, witness=None) -> None:
        self(predicate, bool(result), witness)
        if not result:
            raise _Mismatch(predicate)


class _Mismatch(Exception):
    """A family's defining predicate failed."""


def _fail(rec: _Recorder, cods: list[int], why: str):
    detail = "; ".join(f"{e.predicate}={e.result}" for e in rec.items)
    raise InvariantError(f"four codegrees {cods} but {why} [{detail}]")


def _unwrap(G) -> tuple[PermGroup, dict]:
    if isinstance(G, BuiltGroup):
        return G.group, G.meta
    return G, {}


# ---------------------------------------------------------------- families

def _case7(G: PermGroup, cods: list[int], rec: _Recorder) -> str:
    n = G.order()
    f = next((f for f in range(2, 64) if 2 ** f * (4 ** f - 1) == n), None)
    rec.require("orderIsSL2Order", f is not None, {"order": n, "f": f})
    rec.require("perfect", is_perfect(G))
    q = 2 ** f
    expected = sorted({1, q * q - q, q * q + q, q * q - 1})
    rec.require("codSetMatchesSL2", cods == expected, {"expected": expected})
    rec("identification", "invariant-level identification relying on the classification theorem",
        {"f": f})
    return "Case7"


def _case1(G: PermGroup, cods: list[int], rec: _Recorder) -> str:
    primes = prime_divisors(G.order())
    rec.require("abelian", is_abelian(G))
    rec.require("twoPrimes", len(primes) == 2, primes)
    e = exponent(G)
    rec.require("squarefreeExponent", e == math.prod(primes), e)
    p, q = primes
    _expect(rec, cods, [1, p, q, p * q])
    return "Case1"


def _case6(G: PermGroup, cods: list[int], rec: _Recorder) -> str:
    K = nilpotent_residual(G)
    V = nilpotent_residual(K)
    gk, kv = G.order() // K.order(), K.order() // V.order()
    rec.require("indexGKPrime", prime_power(gk) is not None and prime_power(gk)[1] == 1, gk)
    rec.require("indexKVPrime", prime_power(kv) is not None and prime_power(kv)[1] == 1, kv)
    p, q = gk, kv
    rec.require("VElementaryAbelian", is_elementary_abelian(V), V.order())
    r, n = prime_power(V.order())
    rec.require("pDividesDimension", n % p == 0, {"r": r, "dim": n, "p": p})
    m = n // p
    rec.require("qEqualsQuotient", (r ** n - 1) == q * (r ** m - 1), {"q": q, "r": r, "m": m})
    kg = commutator_subgroup(G, K, G)
    rec.require("GModVFrobenius", not kg.is_subgroup_of(V))
    Q = sylow_subgroup(K, q)
    rec.require("KFrobeniusOverV", is_frobenius(K, V, Q))
    factors = chief_factors(K, V, Q)
    rec.require("VMinimalNormalInK", len(factors) == 1, [f.dim for f in factors])
    _expect(rec, cods, [1, p, q, p * r ** n])
    return "Case6"


def _centralizer_in(P: PermGroup, N: PermGroup) -> PermGroup:
    gens = N.generators
    return group_from_elements(P, (x for x in P.elements()
                                   if all(conjugate(n, x) == n for n in gens)))


def _chief_dims(G, N, P) -> tuple[list[int], int]:
    factors = chief_factors(G, N, P)
    return [f.dim for f in factors], len(homogeneous_classes(factors))


def _case5(G, N, P, p, q, C, cods, rec) -> str:
    rec.require("PElementaryAbelian", is_elementary_abelian(P), P.order())
    rec.require("centralizerIndexP", P.order() // C.order() == p, C.order())
    x = next(x for x in P.generators if not C.contains(x))
    H = group_from_elements(G, list(N.generators) + [x])
    P0 = P.subgroup([x])
    rec.require("HFrobenius", is_frobenius(H, N, P0))
    rec.require("NElementaryAbelian", is_elementary_abelian(N), N.order())
    dims, classes = _chief_dims(H, N, P0)
    rec.require("NHomogeneous", classes == 1, dims)
    d = mult_order(q, p)
    rec("chiefFactorDimension", dims[0] == d, {"d": d, "dims": dims})
    _expect(rec, cods, [1, p, q ** d, p * q ** d])
    return "Case5"


def _nonlinear_quotients(G: PermGroup, N: PermGroup):
    """For each nonlinear theta in Irr(N): (theta(1), ker(theta^G))."""
    t = chartable.character_table(N)
    seen = {}
    for i in range(len(t)):
        if t.degrees[i] == 1:
            continue
        K, cls = chartable.kernel_of_character(t, i)
        K = core(G, K)
        key = frozenset(K.elements())
        seen.setdefault((t.degrees[i], key), (t.degrees[i], K))
    return list(seen.values())


def _case2_prime(G, N, P, p, q, d, cods, rec) -> str:
    if is_abelian(N):
        e = exponent(N)
        dims, classes = _chief_dims(G, N, P)
        rec("chiefFactorDims", dims)
        rec("isomorphismClasses", classes)
        if e == q * q and classes == 1:
            rec("NAbelianExponentQ2", True, e)
            _expect(rec, cods, [1, p, q ** d, q ** (2 * d)])
            return "Case2c"
        if e == q and classes == 2:
            rec("NElementaryTwoClasses", True)
            _expect(rec, cods, [1, p, q ** d, q ** (2 * d)])
            return "Case2d"
        raise _Mismatch("abelian kernel fits neither 2c nor 2d")
    D = derived_subgroup(N)
    top = quotient_group(N, D)
    ultra = True
    for deg, K in _nonlinear_quotients(G, N):
        Q = quotient_group(N, K)
        ok = Q.order() == q ** (3 * d) and is_ultraspecial(Q)
        rec("ultraspecialQuotient", ok, {"degree": deg, "quotientOrder": Q.order()})
        ultra = ultra and ok
    # N/N' as a P-module: chief factors of G between N' and N
    factors = chief_factors(G, N, P, bottom=D)
    classes = len(homogeneous_classes(factors))
    e = exponent(top)
    rec("abelianizationExponent", e)
    rec("abelianizationClasses", classes)
    if ultra and ((e == q * q and classes == 1) or (e == q and classes == 2)):
        _expect(rec, cods, [1, p, q ** d, q ** (2 * d)])
        return "Case2e"
    rec.require("abelianizationHomogeneous", e == q and classes == 1)
    ks = set()
    for deg, K in _nonlinear_quotients(G, N):
        ratio = (N.order() // K.order()) // deg
        k = prime_power(ratio)[1] if ratio > 1 and prime_power(ratio) else 0
        ks.add(k)
    rec.require("nonlinearCodegreesAboveQd", ks and min(ks) > d, sorted(ks))
    extra = [c for c in cods if c not in (1, p, q ** d)]
    pp = prime_power(extra[0]) if len(extra) == 1 else None
    rec.require("codSetShape2f", len(extra) == 1 and pp is not None and pp[0] == q and pp[1] > d,
                {"k": pp[1] if pp else None})
    return "Case2f"


def _case2(G, N, P, p, q, cods, rec) -> str:
    d = mult_order(q, P.order())
    dims, _ = _chief_dims(G, N, P)
    rec("chiefFactorDims", dims, {"multOrder": d})
    fpP = fingerprint(P)
    if fpP == complement_fingerprint("Q8") and is_elementary_abelian(N) and N.order() == q * q:
        rec("PIsQ8", True, list(fpP))
        _expect(rec, cods, [1, 2, 4, q * q])
        return "Case2a"
    cyclic = exponent(P) == P.order()
    rec("PCyclic", cyclic, P.order())
    rec.require("PCyclicOrderPOrP2", cyclic and P.order() in (p, p * p))
    if P.order() == p * p:
        rec.require("NElementaryAbelian", is_elementary_abelian(N))
        _, classes = _chief_dims(G, N, P)
        rec.require("NHomogeneous", classes == 1)
        rec.require("dimensionMultipleOfD", prime_power(N.order())[1] % d == 0)
        _expect(rec, cods, [1, p, p * p, q ** d])
        return "Case2b"
    return _case2_prime(G, N, P, p, q, d, cods, rec)


_CASE4 = {"Case4a": ("D8", 9, [1, 2, 4, 18]),
          "Case4b": ("SmallGroup(16,13)", 25, [1, 2, 8, 50]),
          "Case4c": ("ES(2^5_-)", 81, [1, 2, 8, 162])}


def _all_centralizers_order_two(N: PermGroup, P: PermGroup) -> bool:
    p_elems = P.elements()
    for x in N.elements()[1:]:
        cent = [g for g in p_elems if conjugate(x, g) == x]
        if len(cent) != 2:
            return False
        c = cent[1]
        if all(conjugate(c, g) == c for g in P.generators):
            return False
    return True


def _case4(N, P, cods, rec) -> str:
    fp = fingerprint(P)
    for label, (name, norder, cod) in _CASE4.items():
        if fp == complement_fingerprint(name) and N.order() == norder and is_elementary_abelian(N):
            rec("complementFingerprint", name, list(fp))
            _expect(rec, cods, cod)
            return label
    raise _Mismatch("case-4 action with an unlisted (P, N)")


def _case3(G, N, P, p, q, cods, rec) -> str:
    rec.require("POrderP", P.order() == p, P.order())
    rec.require("NNonabelian", not is_abelian(N))
    rec.require("NSemiExtraspecial", is_semi_extraspecial(N))
    D = derived_subgroup(N)
    rec.require("NDerivedIsCenter", D.same_as(center(G)), D.order())
    x = P.generators[0]
    fixed = sum(1 for n in N.elements() if D.contains(commutator(n, x)))
    rec.require("GModNDerivedFrobenius", fixed == D.order(), fixed)
    factors = chief_factors(G, N, P, bottom=D)
    rec.require("NModDerivedHomogeneous", len(homogeneous_classes(factors)) == 1,
                [f.dim for f in factors])
    d = mult_order(q, p)
    root = math.isqrt(N.order() // D.order())
    _expect(rec, cods, [1, p, q ** d, p * q * root])
    return "Case3"


def _expect(rec: _Recorder, cods: list[int], expected) -> None:
    expected = sorted(set(expected))
    ok = cods == expected
    rec("codSetMatchesFamily", ok, {"expected": expected, "computed": cods})
    if not ok:
        raise InvariantError(f"family predicts {expected} but computed codSet is {cods}")


def _height_two(G, meta, cods, rec) -> str:
    if "N" in meta and "P" in meta:
        N, P = meta["N"], meta["P"]
        rec("decomposition", "metadata")
    else:
        N = nilpotent_residual(G)
        P = None
        rec("decomposition", "derived")
    top = G.order() // N.order()
    pp_top, pp_n = prime_power(top), prime_power(N.order())
    rec.require("quotientIsPGroup", pp_top is not None, top)
    rec.require("NIsQGroup", pp_n is not None, N.order())
    p, q = pp_top[0], pp_n[0]
    if P is None:
        P = sylow_subgroup(G, p)
    rec("primes", {"p": p, "q": q})
    C = _centralizer_in(P, N)
    if rec("centralizerPOfNNontrivial", C.order() > 1, C.order()):
        return _case5(G, N, P, p, q, C, cods, rec)
    if rec("frobenius", is_frobenius(G, N, P)):
        return _case2(G, N, P, p, q, cods, rec)
    if rec("centralizersOrderTwoNonNormal", _all_centralizers_order_two(N, P)):
        return _case4(N, P, cods, rec)
    return _case3(G, N, P, p, q, cods, rec)


def classify(G: BuiltGroup | PermGroup) -> CaseVerdict:
    group, meta = _unwrap(G)
    cods = chartable.cod_set(group)
    rec = _Recorder()
    rec("codSetSize", len(cods), cods)
    pp = prime_power(group.order())
    if len(cods) != 4:
        rec("primePowerOrder", pp is not None, group.order())
        return CaseVerdict("NotFourCodegrees", cods, rec.items)
    if rec("primePowerOrder", pp is not None or group.order() == 1, group.order()):
        return CaseVerdict("PrimePowerOutOfScope", cods, rec.items)
    try:
        if not rec("solvable", is_solvable(group)):
            label = _case7(group, cods, rec)
        else:
            h = rec("fittingHeight", fitting_height(group))
            if h == 1:
                label = _case1(group, cods, rec)
            elif h == 3:
                label = _case6(group, cods, rec)
            elif h == 2:
                label = _height_two(group, meta, cods, rec)
            else:
                raise _Mismatch("Fitting height outside 1..3")
    except _Mismatch as exc:
        _fail(rec, cods, f"no family matches ({exc})")
    return CaseVerdict(label, cods, rec.items)


# ---------------------------------------------------------------- catalog round trip

@dataclass
class EntryResult:
    text: str
    line: int
    cod_set: list[int] | None
    label: str | None
    failures: list[str]
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"entry": self.text, "line": self.line, "codSet": self.cod_set, "label": self.label,
                "ok": self.ok, "failures": self.failures}


def check_entry(entry) -> EntryResult:
    """Build, classify and compare one catalog entry against its annotations."""
    start = time.perf_counter()
    failures = []
    cods = label = None
    try:
        built = build(entry.spec)
        verdict = classify(built)
        cods, label = verdict.cod_set, verdict.label
        if entry.expect_cod is not None and cods != entry.expect_cod:
            failures.append(f"codSet {cods} != expected {entry.expect_cod}")
        if entry.expect_case is not None and verdict.case != entry.expect_case:
            failures.append(f"label {label} != expected {entry.expect_case}")
        if built.expected_case is not None and entry.expect_case is not None \
                and built.expected_case != entry.expect_case:
            failures.append(f"builder expects case {built.expected_case}, catalog says {entry.expect_case}")
    except CodegreeError as exc:
        failures.append(f"{type(exc).__name__}: {exc}")
    return EntryResult(entry.text, entry.line, cods, label, failures, time.perf_counter() - start)


def theorem_round_trip(entries, jobs: int = 1, initializer=None) -> list[EntryResult]:
    """Check every catalog entry; results come back in entry order.

    ``initializer`` is an optional ``(function, args)`` pair run in each worker
    process, used to carry capacity and seed settings across.
    """
    entries = list(entries)
    if jobs > 1 and len(entries) > 1:
        init, initargs = initializer if initializer else (None, ())
        with ProcessPoolExecutor(max_workers=jobs, initializer=init, initargs=initargs) as pool:
            return list(pool.map(check_entry, entries))
    return [check_entry(e) for e in entries]
