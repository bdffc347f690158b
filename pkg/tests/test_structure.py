from __future__ import annotations

import itertools

import pytest

from codegrees import build
from codegrees.errors import DomainError, InputError
from codegrees.fq import mult_order
from codegrees.perm import Permutation, PermGroup, cyclic_group, symmetric_group
from codegrees.structure import (center, centralizer, chief_factors, core, derived_series,
                                 derived_subgroup, elementary_abelian_rank, fingerprint, fitting_height,
                                 frattini_of_p_group, homogeneous_classes, is_frobenius, is_homocyclic,
                                 is_nilpotent, is_normal, is_semi_extraspecial, is_solvable,
                                 is_ultraspecial, nilpotent_residual, quotient_group, sylow_subgroup)

from oracle import kernels_and_codegrees


def regular(elements, mul):
    """Right regular permutation representation of a finite group given by a table."""
    index = {g: i for i, g in enumerate(elements)}

    def perm(g):
        return Permutation([index[mul(h, g)] for h in elements])
    return perm


def heisenberg_f4():
    """Upper unitriangular 3x3 matrices over GF(4), order 64, derived subgroup of order 4."""
    def fmul(a, b):
        r = 0
        for i in range(2):
            if b >> i & 1:
                r ^= a << i
        return r ^ 0b111 if r & 4 else r

    elems = list(itertools.product(range(4), repeat=3))

    def mul(x, y):
        return (x[0] ^ y[0], x[1] ^ y[1], x[2] ^ y[2] ^ fmul(x[0], y[1]))
    perm = regular(elems, mul)
    gens = [perm((1, 0, 0)), perm((2, 0, 0)), perm((0, 1, 0)), perm((0, 2, 0))]
    return PermGroup(gens, 64)


def test_heisenberg_multiplication_in_gf4():
    G = heisenberg_f4()
    assert G.order() == 64
    assert derived_subgroup(G).order() == 4
    assert center(G).same_as(derived_subgroup(G))


@pytest.mark.parametrize("text", ["symmetric(4)", "symmetric(5)", "named(\"Q8rtimesC3\")",
                                  "named(\"ESminus32onC3p4\")", "sl2(2)"])
def test_derived_series_descends_and_is_normal(text):
    G = build(text).group
    series = derived_series(G)
    assert series[0].same_as(G)
    for a, b in zip(series, series[1:]):
        assert b.is_subgroup_of(a) and b.order() <= a.order()
        assert is_normal(G, b)
    assert is_solvable(G) == (series[-1].order() == 1)


def test_solvability_and_heights():
    assert fitting_height(symmetric_group(4)) == 3
    assert fitting_height(build("frobsinger(3,7,1)").group) == 2
    assert fitting_height(cyclic_group(12)) == 1
    assert fitting_height(PermGroup([], 3)) == 0
    assert not is_solvable(symmetric_group(5))
    with pytest.raises(DomainError):
        fitting_height(symmetric_group(5))
    assert nilpotent_residual(symmetric_group(4)).order() == 12
    assert is_nilpotent(build("dihedral(16)").group)


def test_centres_and_centralizers():
    assert center(symmetric_group(4)).order() == 1
    assert center(build("dirprod(dihedral(8),cyclic(3))").group).order() == 6
    G = build("named(\"Q8rtimesC3\")").group
    assert center(G).order() == 2
    assert centralizer(G, G).same_as(center(G))


@pytest.mark.parametrize("text,p,order", [("symmetric(4)", 2, 8), ("symmetric(4)", 3, 3),
                                          ("symmetric(5)", 2, 8), ("symmetric(5)", 5, 5),
                                          ("sl2(2)", 2, 4), ("named(\"D8onC3sq\")", 3, 9)])
def test_sylow_subgroups(text, p, order):
    G = build(text).group
    S = sylow_subgroup(G, p)
    assert S.order() == order and S.is_subgroup_of(G)


def test_elementary_abelian_and_homocyclic():
    assert elementary_abelian_rank(build("elemab(3,2)").group) == (3, 2)
    assert elementary_abelian_rank(cyclic_group(4)) is None
    assert elementary_abelian_rank(PermGroup([], 2)) is None
    assert is_homocyclic(build("dirprod(cyclic(4),cyclic(4))").group)
    assert not is_homocyclic(build("dirprod(cyclic(4),cyclic(2))").group)


def test_frattini():
    assert frattini_of_p_group(build("dihedral(8)").group).order() == 2
    assert frattini_of_p_group(build("elemab(2,3)").group).order() == 1
    with pytest.raises(DomainError):
        frattini_of_p_group(symmetric_group(3))


def _semi_extraspecial_by_characters(G):
    """Class two, and every irreducible character outside G/G' has degree sqrt(|G:G'|)."""
    elems = G.elements()
    D = {x.inverse() * y.inverse() * x * y for x in elems for y in elems}
    if any(d * g != g * d for d in D for g in elems):
        return False
    index = G.order() // len(D)
    for degree, ker, _ in kernels_and_codegrees(G.elements()):
        if not D <= ker and degree * degree != index:
            return False
    return True


P_GROUPS = {
    "Q8": lambda: build("matgroup(3,2,[[[1,1],[1,2]],[[0,2],[1,0]]])").group,
    "D8": lambda: build("dihedral(8)").group,
    "D16": lambda: build("dihedral(16)").group,
    "heis27": lambda: build("matgroup(3,3,[[[1,1,0],[0,1,0],[0,0,1]],[[1,0,0],[0,1,1],[0,0,1]]])").group,
    "heisF4": heisenberg_f4,
    "D8xC2": lambda: build("dirprod(dihedral(8),cyclic(2))").group,
    "Pauli16": lambda: build("named(\"Pauli16onC5sq\")").meta["P"],
    "ES32": lambda: build("named(\"ESminus32onC3p4\")").meta["P"],
    "Q8xC4": lambda: build("dirprod(matgroup(3,2,[[[1,1],[1,2]],[[0,2],[1,0]]]),cyclic(4))").group,
}


@pytest.mark.parametrize("name", sorted(P_GROUPS))
def test_semi_extraspecial_matches_character_criterion(name):
    G = P_GROUPS[name]()
    assert is_semi_extraspecial(G) == _semi_extraspecial_by_characters(G)


def test_semi_extraspecial_known_answers():
    assert is_semi_extraspecial(P_GROUPS["Q8"]())
    assert is_ultraspecial(heisenberg_f4())
    assert not is_ultraspecial(P_GROUPS["ES32"]())
    assert not is_semi_extraspecial(P_GROUPS["D16"]())
    with pytest.raises(DomainError):
        is_semi_extraspecial(symmetric_group(3))
    with pytest.raises(DomainError):
        is_semi_extraspecial(build("elemab(2,2)").group)


def test_fingerprints_match_literals():
    from codegrees.build import complement_fingerprint
    assert fingerprint(P_GROUPS["Q8"]()) == complement_fingerprint("Q8")
    assert fingerprint(P_GROUPS["D8"]()) == complement_fingerprint("D8")
    assert fingerprint(P_GROUPS["Pauli16"]()) == complement_fingerprint("SmallGroup(16,13)")
    assert fingerprint(P_GROUPS["ES32"]()) == complement_fingerprint("ES(2^5_-)")
    for n in (6, 10, 12):
        assert fingerprint(build(f"dihedral({n})").group) == complement_fingerprint(f"D{n}")
    assert fingerprint(cyclic_group(6)) == complement_fingerprint("C6")


def test_is_frobenius():
    b = build("frobsinger(3,7,1)")
    assert is_frobenius(b.group, b.meta["N"], b.meta["P"])
    b = build("named(\"D8onC3sq\")")
    assert not is_frobenius(b.group, b.meta["N"], b.meta["P"])
    with pytest.raises(InputError):
        is_frobenius(b.group, b.meta["P"], b.meta["N"])


@pytest.mark.parametrize("pk,q,copies", [(3, 2, 1), (5, 2, 1), (7, 2, 2), (3, 7, 1), (9, 2, 1), (4, 5, 2)])
def test_frobenius_chief_factor_dimension(pk, q, copies):
    b = build(f"frobsinger({pk},{q},{copies})")
    factors = chief_factors(b.group, b.meta["N"], b.meta["P"])
    d = mult_order(q, pk)
    assert [f.dim for f in factors] == [d] * copies
    assert all(f.q == q for f in factors)
    assert len(homogeneous_classes(factors)) == 1


def test_chief_factors_of_2d_fixture_are_not_isomorphic():
    b = build("sdp(7,2,[[[2,0],[0,4]]])")
    factors = chief_factors(b.group, b.meta["N"], b.meta["P"])
    assert [f.dim for f in factors] == [1, 1]
    assert len(homogeneous_classes(factors)) == 2


def test_quotient_and_core():
    G = symmetric_group(4)
    V = nilpotent_residual(nilpotent_residual(G))
    assert V.order() == 4
    Q = quotient_group(G, V)
    assert Q.order() == 6 and derived_subgroup(Q).order() == 3
    stab = PermGroup([Permutation.from_cycles([[0, 1, 2]], 4), Permutation.from_cycles([[0, 1]], 4)], 4)
    assert core(G, stab).order() == 1
    with pytest.raises(InputError):
        quotient_group(G, stab)
