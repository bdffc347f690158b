"""Property checks shared by the property suite and the acceptance run.

Each check takes ``[(name, PermGroup), ...]`` and returns a list of
counterexample descriptions (empty when the property holds).
"""

from __future__ import annotations

import itertools
import math

from sympy import factorint

from codegrees import build
from codegrees.chartable import character_table, codegree_report, cod_set, orthogonality_residuals, relative_cod_set
from codegrees.fq import mult_order, prime_power
from codegrees.perm import direct_product
from codegrees.structure import (chief_factors, elementary_abelian_rank, exponent, fitting_height,
                                 homogeneous_classes, is_abelian, is_frobenius, is_solvable)

import oracle


def degrees_and_orthogonality(groups):
    bad = []
    for name, G in groups:
        t = character_table(G)
        if sum(d * d for d in t.degrees) != G.order():
            bad.append(f"{name}: sum of squared degrees")
        rows, cols = orthogonality_residuals(t)
        if any(any(r) for r in rows) or any(any(c) for c in cols):
            bad.append(f"{name}: orthogonality residual")
    return bad


def codegree_identity(groups):
    bad = []
    for name, G in groups:
        for c in codegree_report(G).characters:
            if c.codegree * c.degree * c.kernel_order != G.order():
                bad.append(f"{name}: {c}")
    return bad


def prime_divides_some_codegree(groups):
    bad = []
    for name, G in groups:
        cods = cod_set(G)
        for p in factorint(G.order()):
            if not any(c % p == 0 for c in cods):
                bad.append(f"{name}: no codegree divisible by {p}")
    return bad


def kernel_index_bound(groups):
    """|G:ker chi| <= cod(chi)^2, with equality exactly for the trivial character."""
    bad = []
    for name, G in groups:
        for c in codegree_report(G).characters:
            index = G.order() // c.kernel_order
            if index > c.codegree ** 2 or (index == c.codegree ** 2) != (index == 1):
                bad.append(f"{name}: index {index}, codegree {c.codegree}")
    return bad


def coprime_direct_products(groups, limit: int = 400):
    """Every coprime pair with product order at most ``limit``."""
    bad, pairs = [], 0
    for (na, A), (nb, B) in itertools.combinations(groups, 2):
        if math.gcd(A.order(), B.order()) != 1 or A.order() * B.order() > limit:
            continue
        ca, cb = cod_set(A), cod_set(B)
        cab = cod_set(direct_product(A, B))
        if len(cab) != len(ca) * len(cb) or set(cab) != {x * y for x in ca for y in cb}:
            bad.append(f"{na} x {nb}: {cab} vs {ca}, {cb}")
        pairs += 1
    if pairs < 10:
        bad.append(f"only {pairs} coprime pairs")
    return bad


def small_codset_iff_elementary_abelian(groups):
    bad = []
    for name, G in groups:
        if G.order() == 1:
            continue
        if (len(cod_set(G)) <= 2) != (elementary_abelian_rank(G) is not None):
            bad.append(f"{name}: codSet {cod_set(G)}")
    return bad


def fitting_height_bound(groups):
    bad = []
    for name, G in groups:
        if G.order() > 1 and is_solvable(G) and fitting_height(G) > len(cod_set(G)) - 1:
            bad.append(f"{name}: h = {fitting_height(G)}, codSet {cod_set(G)}")
    return bad


# Frobenius groups with cyclic complement, abelian kernel A and pairwise isomorphic chief factors in A
FROBENIUS_FIXTURES = ["frobsinger(4,3,1)", "frobsinger(3,7,1)", "frobsinger(7,2,1)", "frobsinger(5,2,1)",
                      "frobsinger(3,2,2)", "frobsinger(9,2,1)", "frobsinger(2,3,1)", "frobsinger(4,5,2)",
                      "metacyclic(9,2,8)", "metacyclic(25,4,7)", "metacyclic(13,3,3)", "metacyclic(7,3,2)"]


def frobenius_relative_codegrees(specs=FROBENIUS_FIXTURES):
    bad = []
    for text in specs:
        b = build(text)
        G, A, P = b.group, b.meta["N"], b.meta["P"]
        if not (is_frobenius(G, A, P) and exponent(P) == P.order() and is_abelian(A)
                and len(homogeneous_classes(chief_factors(G, A, P))) == 1):
            bad.append(f"{text}: hypotheses fail")
            continue
        q, _ = prime_power(A.order())
        d = mult_order(q, P.order())
        top = prime_power(exponent(A))[1]
        expected = [q ** (k * d) for k in range(1, top + 1)]
        got = relative_cod_set(G, A)
        if got != expected:
            bad.append(f"{text}: cod(G|A) = {got}, expected {expected}")
    return bad


def oracle_agreement(groups, max_order: int = 60):
    """Kernels (as element sets) and codegrees against the floating-point oracle."""
    bad, checked = [], 0
    for name, G in groups:
        if G.order() > max_order:
            continue
        t = character_table(G)
        cd = t.classes
        ours = []
        for i in range(len(t)):
            ker = frozenset(tuple(x) for j in t.kernel_classes(i) for x in cd.members[j])
            ours.append((t.degrees[i], ker, t.codegree(i)))
        ours.sort(key=lambda r: (r[0], len(r[1]), r[2], sorted(r[1])))
        ref = oracle.kernels_and_codegrees(G.elements())
        if ours != ref:
            bad.append(name)
        checked += 1
    return bad, checked
