from __future__ import annotations

import itertools
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from codegrees import linalg
from codegrees.errors import DomainError, InputError
from codegrees.fq import (FqMatrix, FqModule, are_isomorphic, companion, composition_factors,
                          decompose_homogeneous, frobenius_matrix, intertwiners, is_homogeneous,
                          is_irreducible, mult_order, norton_test, prime_power, primitive_polynomial,
                          singer_matrix)
from codegrees.structure import _Coordinates, is_elementary_abelian, trivial_subgroup


def square(p, n):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n)


@settings(max_examples=50, deadline=None)
@given(square(7, 4))
def test_char_poly_matches_sympy(a):
    ours = linalg.char_poly(a, 7)
    x = sympy.symbols("x")
    ref = sympy.Poly(sympy.Matrix(a).charpoly(x).as_expr(), x, modulus=7)
    assert [c % 7 for c in reversed(ref.all_coeffs())] == ours


@settings(max_examples=50, deadline=None)
@given(square(5, 4))
def test_rref_nullspace_inverse(a):
    p = 5
    for v in linalg.nullspace(a, p):
        assert all(sum(x * y for x, y in zip(row, v)) % p == 0 for row in a)
    r = linalg.rank(a, p)
    assert r + len(linalg.nullspace(a, p)) == 4
    if linalg.det(a, p):
        assert linalg.mat_mul(a, linalg.inverse(a, p), p) == linalg.identity(4)
    else:
        assert r < 4
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(a, p)


def test_mult_order_examples():
    assert mult_order(2, 73) == 9
    assert mult_order(3, 4) == 2
    assert mult_order(2, 7) == 3
    with pytest.raises(InputError):
        mult_order(3, 6)
    with pytest.raises(InputError):
        mult_order(5, 1)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    assert prime_power(12) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("q,d", [(2, 1), (2, 3), (2, 4), (3, 2), (3, 4), (5, 2), (7, 2), (2, 6)])
def test_singer_has_exact_order(q, d):
    s = singer_matrix(q, d)
    assert s.has_order(q ** d - 1)
    assert s.order() == q ** d - 1


def test_primitive_polynomial_is_least():
    # x^3 + x + 1 over F_2, read as coefficients c0, c1, c2
    assert primitive_polynomial(2, 3) == [1, 1, 0]
    assert singer_matrix(3, 2) == FqMatrix([[0, 1], [1, 2]], 3)
    with pytest.raises(DomainError):
        primitive_polynomial(4, 2)


def test_frobenius_matrix_is_field_automorphism():
    q, d = 2, 4
    s, f = singer_matrix(q, d), frobenius_matrix(q, d)
    assert f.has_order(d)
    # conjugating multiplication by a through x -> x^q gives multiplication by a^q
    assert f.inverse() @ s @ f == s ** q


def test_matrix_arithmetic():
    a = FqMatrix([[1, 2], [3, 4]], 5)
    assert (a @ a.inverse()).is_identity()
    assert a.det() == (4 - 6) % 5
    assert str(a) == "[[1,2],[3,4]] mod 5"
    k = a.kron(FqMatrix.identity(2, 5))
    assert k.nrows == 4 and k.det() == pow(a.det(), 2, 5)
    with pytest.raises(InputError):
        a @ FqMatrix([[1]], 7)


def test_q8_over_f5_irreducible():
    i = FqMatrix([[0, 2], [2, 0]], 5)  # a=0, b=2: 0 + 4 = -1
    j = FqMatrix([[0, 4], [1, 0]], 5)
    assert is_irreducible(FqModule(5, 2, [i, j]))


def test_diagonal_module_splits():
    m = FqModule(7, 2, [FqMatrix.diagonal([2, 4], 7)])
    parts = decompose_homogeneous(m)
    assert sorted(rep.dim for rep, _ in parts) == [1, 1]
    assert not is_homogeneous(m)
    double = FqModule(7, 1, [FqMatrix([[2]], 7)])
    parts = decompose_homogeneous(double.direct_sum(double))
    assert [(rep.dim, mult) for rep, mult in parts] == [(1, 2)]


def test_norton_on_large_singer_module():
    s = singer_matrix(2, 13)
    ok, _ = norton_test(FqModule(2, 13, [s]))
    assert ok
    trivial = FqModule(2, 13, [FqMatrix.identity(13, 2)])
    assert not is_irreducible(trivial)
    ok, sub = norton_test(trivial)
    assert not ok and 0 < len(sub[0]) < 13


def test_intertwiners_row_convention():
    # x^2 - 2 has no root mod 5, so this module is irreducible
    a = FqModule(5, 2, [FqMatrix([[0, 2], [1, 0]], 5)])
    b_mat = FqMatrix([[1, 1], [0, 1]], 5)
    b = FqModule(5, 2, [b_mat.inverse() @ a.gens[0] @ b_mat])
    xs = intertwiners(a, b)
    assert xs
    x = FqMatrix(xs[0], 5)
    assert a.gens[0] @ x == x @ b.gens[0]
    assert are_isomorphic(a, b)


def test_isomorphism_requires_irreducible():
    m = FqModule(7, 2, [FqMatrix.diagonal([2, 4], 7)])
    with pytest.raises(DomainError):
        are_isomorphic(m, m)


def _catalog_modules(catalog_groups):
    """Conjugation modules of P on elementary abelian N for every built sdp."""
    out = []
    for text, built in catalog_groups:
        meta = built.meta
        if "N" not in meta or "P" not in meta:
            continue
        N, P = meta["N"], meta["P"]
        if not is_elementary_abelian(N) or math.gcd(N.order(), P.order()) != 1:
            continue
        q = prime_power(N.order())[0]
        coords = _Coordinates(built.group, N, trivial_subgroup(built.group), q)
        out.append((text, coords.module(P.generators)))
    return out


def test_catalog_module_decompositions(catalog_groups):
    modules = _catalog_modules(catalog_groups)
    assert len(modules) >= 8
    for text, m in modules:
        parts = decompose_homogeneous(m)
        assert sum(rep.dim * mult for rep, mult in parts) == m.dim, text
        for rep, _ in parts:
            assert is_irreducible(rep), text
        for (r1, _), (r2, _) in itertools.combinations(parts, 2):
            assert not are_isomorphic(r1, r2), text
        assert sum(f.dim for f in composition_factors(m)) == m.dim


def test_isomorphism_is_an_equivalence(catalog_groups):
    reps = []
    for _, m in _catalog_modules(catalog_groups):
        reps += [rep for rep, _ in decompose_homogeneous(m)]
    by_shape = {}
    for r in reps:
        by_shape.setdefault((r.q, r.dim, len(r.gens)), []).append(r)
    for group in by_shape.values():
        group = group[:6]
        for a in group:
            assert are_isomorphic(a, a)
        for a, b in itertools.product(group, repeat=2):
            assert are_isomorphic(a, b) == are_isomorphic(b, a)
        for a, b, c in itertools.product(group, repeat=3):
            if are_isomorphic(a, b) and are_isomorphic(b, c):
                assert are_isomorphic(a, c)


def test_companion_matrix_has_its_char_poly():
    coeffs = [3, 0, 1]
    c = companion(coeffs, 5)
    assert linalg.char_poly(c.tolist(), 5) == coeffs + [1]
