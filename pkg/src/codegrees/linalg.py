"""Dense linear algebra over prime fields.

Matrices are lists of row lists with entries already reduced into ``[0, p)``.
Everything here is exact and deterministic; dimensions in this package stay
below a few hundred, so plain Python lists are adequate.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def vec_mat(v: Sequence[int], a: Sequence[Sequence[int]], p: int) -> list[int]:
    n = len(a[0]) if a else 0
    out = [0] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                out[j] += x * y
    return [x % p for x in out]


def mat_pow(a: Matrix, k: int, p: int) -> Matrix:
    result = identity(len(a))
    base = [list(r) for r in a]
    if k < 0:
        base = inverse(base, p)
        k = -k
    while k:
        if k & 1:
            result = mat_mul(result, base, p)
        base = mat_mul(base, base, p)
        k >>= 1
    return result


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*a)]


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def nullspace(a: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> Matrix:
    """Basis (as rows) of ``{x : a x = 0}``."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    red, pivots = rref(a, p) if a else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = -row[f] % p
        basis.append(x)
    return basis


def left_nullspace(a: Sequence[Sequence[int]], p: int) -> Matrix:
    """Basis of ``{x : x a = 0}``."""
    return nullspace(transpose(a), p, len(a))


def det(a: Sequence[Sequence[int]], p: int) -> int:
    m = [list(r) for r in a]
    n = len(m)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = d * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return d % p


def inverse(a: Sequence[Sequence[int]], p: int) -> Matrix:
    n = len(a)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def reduce_vector(v: Sequence[int], basis: Sequence[Sequence[int]], pivots: Sequence[int], p: int) -> list[int]:
    """Reduce ``v`` against an RREF basis, clearing every pivot coordinate."""
    v = list(v)
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return v


def char_poly(a: Sequence[Sequence[int]], p: int) -> list[int]:
    """Characteristic polynomial, coefficients from the constant term upward (monic).

    Reduces to upper Hessenberg form by similarity, then runs the usual
    three-term recurrence on the leading principal minors.
    """
    n = len(a)
    h = [list(r) for r in a]
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if h[i][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[c + 1], h[piv] = h[piv], h[c + 1]
            for row in h:
                row[c + 1], row[piv] = row[piv], row[c + 1]
        inv = pow(h[c + 1][c], -1, p)
        for i in range(c + 2, n):
            f = h[i][c] * inv % p
            if f:
                h[i] = [(x - f * y) % p for x, y in zip(h[i], h[c + 1])]
                for row in h:
                    row[c + 1] = (row[c + 1] + f * row[i]) % p
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        # p_m = (x - h[m-1][m-1]) p_{m-1} - sum_{i<m} h[i-1][m-1] prod(subdiag) p_{i-1}
        prev = polys[m - 1]
        cur = [0] + prev
        for k, coef in enumerate(prev):
            cur[k] = (cur[k] - h[m - 1][m - 1] * coef) % p
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * h[i][i - 1] % p
            if not t:
                break
            f = h[i - 1][m - 1] * t % p
            for k, coef in enumerate(polys[i - 1]):
                cur[k] = (cur[k] - f * coef) % p
        polys.append(cur)
    return polys[n]


def poly_roots(coeffs: Sequence[int], p: int) -> list[int]:
    """Distinct roots in ``F_p`` by exhaustive evaluation, ascending."""
    roots = []
    rev = list(reversed(coeffs))
    for x in range(p):
        acc = 0
        for c in rev:
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def poly_eval_matrix(coeffs: Sequence[int], a: Matrix, p: int) -> Matrix:
    n = len(a)
    acc = zeros(n, n)
    for c in reversed(coeffs):
        acc = mat_mul(acc, a, p)
        for i in range(n):
            acc[i][i] = (acc[i][i] + c) % p
    return acc
