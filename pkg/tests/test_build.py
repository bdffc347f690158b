from __future__ import annotations

import pytest

from codegrees import build, config
from codegrees.build import affine_group, complement_fingerprint, frob_singer_build, sl2_build
from codegrees.errors import CapacityError, DomainError, InputError
from codegrees.fq import FqMatrix
from codegrees.perm import symmetric_group
from codegrees.structure import (center, centralizer_of_element, chief_factors, derived_subgroup,
                                 fingerprint, is_frobenius, is_normal, is_semi_extraspecial)


@pytest.mark.parametrize("text,order,degree", [
    ('named("Q8onCq2", 5)', 200, 25),
    ('named("Q8onCq2", 3)', 72, 9),
    ('named("D8onC3sq")', 72, 9),
    ('named("Pauli16onC5sq")', 400, 25),
    ('named("ESminus32onC3p4")', 2592, 81),
    ('named("TwoStepFrobenius", p=3, q=7, r=2, m=1)', 168, None),
    ('named("TwoStepFrobenius", p=2, q=3, r=2, m=1)', 24, None),
    ("sl2(2)", 60, 5),
    ("sl2(3)", 504, 9),
    ("sl2(4)", 4080, 17),
    ("sl2(1)", 6, 3),
    ("frobsinger(4,3,1)", 36, 9),
    ("frobsinger(3,7,1)", 21, 7),
    ("frobsinger(7,2,1)", 56, 8),
    ('named("Q8rtimesC3")', 24, None),
    ("dirprod(elemab(2,1),elemab(3,1))", 6, 5),
    ("metacyclic(9,2,8)", 18, 9),
])
def test_family_orders(text, order, degree):
    G = build(text).group
    assert G.order() == order
    if degree is not None:
        assert G.degree == degree


def test_two_step_frobenius_smallest_is_s4():
    b = build('named("TwoStepFrobenius", p=2, q=3, r=2, m=1)')
    G = b.group
    assert G.degree == 4 and G.same_as(symmetric_group(4))
    assert [b.meta[r].order() for r in ("V", "K", "P")] == [4, 12, 2]


def test_metadata_invariants(catalog_groups):
    for text, b in catalog_groups:
        G, meta = b.group, b.meta
        if "N" in meta and "P" in meta:
            N, P = meta["N"], meta["P"]
            assert is_normal(G, N), text
            assert N.order() * P.order() == G.order(), text
            assert not any(N.contains(x) for x in P.elements()[1:]), text
        for role in ("V", "K"):
            if role in meta:
                assert is_normal(G, meta[role]), text
        if "V" in meta:
            assert meta["V"].is_subgroup_of(meta["K"])


@pytest.mark.parametrize("text", ["frobsinger(4,3,1)", "frobsinger(3,7,1)", "frobsinger(7,2,2)",
                                  'named("Q8onCq2", 5)', 'named("Q8onCq2", 7)', "metacyclic(9,2,8)",
                                  "sdp(7,2,[[[2,0],[0,4]]])"])
def test_frobenius_families(text):
    b = build(text)
    assert is_frobenius(b.group, b.meta["N"], b.meta["P"])


@pytest.mark.parametrize("tag,case", [("D8onC3sq", "4a"), ("Pauli16onC5sq", "4b"), ("ESminus32onC3p4", "4c")])
def test_case4_centralizers_are_non_normal_of_order_two(tag, case):
    b = build(f'named("{tag}")')
    N, P = b.meta["N"], b.meta["P"]
    assert b.expected_case == case
    for x in N.elements()[1:]:
        C = centralizer_of_element(P, x)
        assert C.order() == 2
        assert not is_normal(P, C)


def test_complement_fingerprints_of_named_families():
    assert fingerprint(build('named("Pauli16onC5sq")').meta["P"]) == complement_fingerprint("SmallGroup(16,13)")
    P = build('named("ESminus32onC3p4")').meta["P"]
    assert fingerprint(P) == complement_fingerprint("ES(2^5_-)")
    assert derived_subgroup(P).same_as(center(P))


def test_complement_mismatch_is_reported():
    # these matrices generate C2 x C2 inside GL2(3), not D8
    with pytest.raises(InputError, match="fingerprint"):
        build('sdp(3,2,[[[2,0],[0,1]],[[1,0],[0,2]]],complement="D8")')
    with pytest.raises(InputError):
        complement_fingerprint("SmallGroup(1,1)")


def test_q8_generators_are_least_solution():
    b = build('named("Q8onCq2", 5)')
    P = b.meta["P"]
    assert fingerprint(P) == complement_fingerprint("Q8")
    # a = 0, b = 2 is the least solution of a^2 + b^2 = -1 over F_5
    G, _, _ = affine_group(5, 2, [FqMatrix([[0, 2], [2, 0]], 5), FqMatrix([[0, 4], [1, 0]], 5)])
    assert G.same_as(b.group)


def test_semi_extraspecial_case3():
    b = build('named("Q8rtimesC3")')
    N = b.meta["N"]
    assert N.order() == 8 and is_semi_extraspecial(N)
    assert derived_subgroup(N).same_as(center(b.group))


def test_frobsinger_chief_factor_is_homogeneous():
    b = frob_singer_build(9, 2, 1)
    factors = chief_factors(b.group, b.meta["N"], b.meta["P"])
    assert [f.dim for f in factors] == [6]
    assert b.expected_case == "2b"


def test_validation_errors():
    with pytest.raises(DomainError):
        frob_singer_build(6, 5)
    with pytest.raises(DomainError):
        build('named("TwoStepFrobenius", p=2, q=5, r=2, m=1)')
    with pytest.raises(InputError):
        build('named("TwoStepFrobenius", p=2, q=3, r=2)')
    with pytest.raises(DomainError):
        build('named("Q8onCq2", 2)')
    with pytest.raises(InputError):
        build("metacyclic(7,3,3)")
    with pytest.raises(DomainError):
        sl2_build(0)


def test_capacity_is_enforced():
    with config.capacity_limit(1000):
        with pytest.raises(CapacityError):
            build('named("ESminus32onC3p4")').group.order()
