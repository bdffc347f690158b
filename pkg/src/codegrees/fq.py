"""Prime-field matrices, Singer cycles and a small module toolkit.

Extension fields never appear symbolically: ``F_{q^d}`` is always the row
space ``F_q^d`` with multiplication by a field generator given by a companion
matrix.  Modules are right modules, ``v -> v @ A`` for each acting matrix.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from sympy import factorint, isprime

from . import config, linalg
from .errors import CapacityError, DomainError, InputError, InvariantError

SINGER_BOUND = 1 << 20
SPIN_ALL_LIMIT = 4096
NORTON_TRIES = 200


def is_prime(n: int) -> bool:
    return n > 1 and bool(isprime(n))


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``n == p**k``, or None."""
    if n < 2:
        return None
    f = factorint(n)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return p, k


def mult_order(q: int, m: int) -> int:
    """Smallest ``k >= 1`` with ``q**k == 1 (mod m)``."""
    if m <= 1:
        raise InputError("modulus must exceed 1")
    if math.gcd(q, m) != 1:
        raise InputError(f"{q} and {m} are not coprime")
    k, x = 1, q % m
    while x != 1:
        x = x * q % m
        k += 1
    return k


class FqMatrix:
    """An immutable matrix over the prime field ``F_q``."""

    __slots__ = ("q", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], q: int):
        if not is_prime(q):
            raise DomainError(f"{q} is not prime")
        self.q = q
        self.rows = tuple(tuple(int(x) % q for x in r) for r in rows)
        if not self.rows or len({len(r) for r in self.rows}) != 1 or not self.rows[0]:
            raise InputError("matrix rows must be nonempty and of equal length")
        self._hash = hash((q, self.rows))

    @classmethod
    def identity(cls, n: int, q: int) -> "FqMatrix":
        return cls(linalg.identity(n), q)

    @classmethod
    def diagonal(cls, entries: Sequence[int], q: int) -> "FqMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], q)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, FqMatrix) and self.q == other.q and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FqMatrix({[list(r) for r in self.rows]}, q={self.q})"

    def __str__(self) -> str:
        body = ",".join("[" + ",".join(map(str, r)) + "]" for r in self.rows)
        return f"[{body}] mod {self.q}"

    def _check(self, other: "FqMatrix") -> None:
        if self.q != other.q:
            raise InputError(f"field mismatch: F_{self.q} vs F_{other.q}")

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise InputError("shape mismatch")
        return FqMatrix(linalg.mat_mul(self.rows, other.rows, self.q), self.q)

    __mul__ = __matmul__

    def __pow__(self, k: int) -> "FqMatrix":
        return FqMatrix(linalg.mat_pow(self.tolist(), k, self.q), self.q)

    def act(self, v: Sequence[int]) -> list[int]:
        """Row vector times matrix."""
        return linalg.vec_mat(v, self.rows, self.q)

    def det(self) -> int:
        return linalg.det(self.rows, self.q)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.det() != 0

    def inverse(self) -> "FqMatrix":
        return FqMatrix(linalg.inverse(self.rows, self.q), self.q)

    def transpose(self) -> "FqMatrix":
        return FqMatrix(linalg.transpose(self.rows), self.q)

    def kron(self, other: "FqMatrix") -> "FqMatrix":
        self._check(other)
        rows = []
        for r1 in self.rows:
            for r2 in other.rows:
                rows.append([a * b for a in r1 for b in r2])
        return FqMatrix(rows, self.q)

    def is_identity(self) -> bool:
        return self.rows == tuple(tuple(int(i == j) for j in range(self.ncols)) for i in range(self.nrows))

    def order(self, limit: int = SINGER_BOUND) -> int:
        """Multiplicative order of an invertible matrix, by repeated multiplication."""
        if not self.is_invertible():
            raise DomainError("singular matrix has no multiplicative order")
        x, k = self, 1
        while not x.is_identity():
            x = x @ self
            k += 1
            if k > limit:
                raise CapacityError("matrix order exceeds search bound")
        return k

    def has_order(self, n: int) -> bool:
        """Exact order test via ``A**n == 1`` and ``A**(n/r) != 1`` for primes ``r | n``."""
        if not (self ** n).is_identity():
            return False
        return all(not (self ** (n // r)).is_identity() for r in factorint(n))


def companion(coeffs: Sequence[int], q: int) -> FqMatrix:
    """Companion of ``x^d + c_{d-1} x^{d-1} + ... + c_0`` for row-vector action.

    Basis ``1, a, ..., a^{d-1}``; the matrix sends ``a^i`` to ``a^{i+1}``.
    """
    d = len(coeffs)
    rows = [[int(j == i + 1) for j in range(d)] for i in range(d - 1)]
    rows.append([-c % q for c in coeffs])
    return FqMatrix(rows, q)


def primitive_polynomial(q: int, d: int) -> list[int]:
    """Lexicographically least primitive polynomial of degree ``d`` over ``F_q``.

    Returned as ``[c_0, ..., c_{d-1}]`` (monic leading term implied); the
    ordering compares ``c_{d-1}`` first, i.e. the polynomial read as a base-q
    numeral.
    """
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    if q ** d > SINGER_BOUND:
        raise CapacityError(f"F_{q}^{d} exceeds Singer bound {SINGER_BOUND}")
    target = q ** d - 1
    for code in range(q ** d):
        coeffs = [(code // q ** i) % q for i in range(d)]
        if coeffs[0] == 0:
            continue
        if companion(coeffs, q).has_order(target):
            return coeffs
    raise InvariantError(f"no primitive polynomial of degree {d} over F_{q}")


def singer_matrix(q: int, d: int) -> FqMatrix:
    """A ``d x d`` matrix of order ``q^d - 1``: multiplication by a primitive element."""
    return companion(primitive_polynomial(q, d), q)


def frobenius_matrix(q: int, d: int, power: int = 1) -> FqMatrix:
    """The field automorphism ``x -> x^(q^power)`` of ``F_{q^d}`` in the Singer basis."""
    s = singer_matrix(q, d)
    e0 = [1] + [0] * (d - 1)
    rows = []
    for i in range(d):
        rows.append((s ** (i * q ** power)).act(e0))
    return FqMatrix(rows, q)


def _projective_vectors(q: int, dim: int) -> Iterable[list[int]]:
    """One nonzero vector per line (leading nonzero coordinate 1), lexicographic."""
    for lead in range(dim):
        for tail in itertools.product(range(q), repeat=dim - lead - 1):
            yield [0] * lead + [1] + list(tail)


@dataclass(eq=False)
class FqModule:
    """``F_q^dim`` with a list of acting invertible matrices (right action)."""

    q: int
    dim: int
    gens: list[FqMatrix] = field(default_factory=list)

    def __post_init__(self):
        if not is_prime(self.q):
            raise DomainError(f"{self.q} is not prime")
        for g in self.gens:
            if g.q != self.q or g.nrows != self.dim or g.ncols != self.dim:
                raise InputError("acting matrix has wrong field or shape")
            if not g.is_invertible():
                raise InputError("acting matrix is singular")

    @cached_property
    def _gen_rows(self) -> list[tuple[tuple[int, ...], ...]]:
        return [g.rows for g in self.gens]

    def spin(self, v: Sequence[int]) -> tuple[linalg.Matrix, list[int]]:
        """Smallest invariant subspace containing ``v``, as an RREF basis and pivots."""
        q = self.q
        v = [x % q for x in v]
        if len(v) != self.dim:
            raise InputError("vector has wrong length")
        if not any(v):
            raise InputError("cannot spin the zero vector")
        basis: linalg.Matrix = []
        pivots: list[int] = []
        queue = [v]
        while queue:
            w = linalg.reduce_vector(queue.pop(0), basis, pivots, q)
            c = next((i for i, x in enumerate(w) if x), None)
            if c is None:
                continue
            inv = pow(w[c], -1, q)
            w = [x * inv % q for x in w]
            basis = [linalg.reduce_vector(b, [w], [c], q) for b in basis]
            basis.append(w)
            pivots.append(c)
            if len(basis) == self.dim:
                break
            for rows in self._gen_rows:
                queue.append(linalg.vec_mat(w, rows, q))
        order = sorted(range(len(pivots)), key=pivots.__getitem__)
        return [basis[i] for i in order], [pivots[i] for i in order]

    def submodule(self, basis: linalg.Matrix, pivots: list[int]) -> "FqModule":
        """The action restricted to an invariant RREF subspace."""
        mats = []
        for g in self.gens:
            rows = []
            for b in basis:
                img = g.act(b)
                rows.append([img[c] for c in pivots])
            mats.append(FqMatrix(rows, self.q))
        return FqModule(self.q, len(basis), mats)

    def quotient(self, basis: linalg.Matrix, pivots: list[int]) -> "FqModule":
        """The action on ``V / W`` in the coordinates not used as pivots of ``W``."""
        free = [c for c in range(self.dim) if c not in pivots]
        mats = []
        for g in self.gens:
            rows = []
            for c in free:
                e = [0] * self.dim
                e[c] = 1
                img = linalg.reduce_vector(g.act(e), basis, pivots, self.q)
                rows.append([img[j] for j in free])
            mats.append(FqMatrix(rows, self.q))
        return FqModule(self.q, len(free), mats)

    def dual(self) -> "FqModule":
        return FqModule(self.q, self.dim, [g.transpose() for g in self.gens])

    def direct_sum(self, other: "FqModule") -> "FqModule":
        if self.q != other.q or len(self.gens) != len(other.gens):
            raise InputError("modules differ in field or number of acting generators")
        n, m = self.dim, other.dim
        mats = []
        for a, b in zip(self.gens, other.gens):
            rows = [list(r) + [0] * m for r in a.rows] + [[0] * n + list(r) for r in b.rows]
            mats.append(FqMatrix(rows, self.q))
        return FqModule(self.q, n + m, mats)

    def is_faithful_fixed_point_free(self) -> bool:
        return all(not linalg.nullspace(linalg.transpose(_minus_identity(g)), self.q) for g in self.gens)


def _minus_identity(g: FqMatrix) -> linalg.Matrix:
    return [[(x - (i == j)) % g.q for j, x in enumerate(r)] for i, r in enumerate(g.rows)]


def spin_submodule(module: FqModule, v: Sequence[int]) -> linalg.Matrix:
    return module.spin(v)[0]


def _random_algebra_element(module: FqModule, rng: random.Random) -> linalg.Matrix:
    q, n = module.q, module.dim
    mats = [g.tolist() for g in module.gens] or [linalg.identity(n)]
    words = [linalg.identity(n)]
    for _ in range(3):
        a = rng.choice(words)
        b = rng.choice(mats)
        words.append(linalg.mat_mul(a, b, q))
    acc = linalg.zeros(n, n)
    for w in words:
        c = rng.randrange(q)
        acc = [[(x + c * y) % q for x, y in zip(r1, r2)] for r1, r2 in zip(acc, w)]
    return acc


def _irreducible_factors(coeffs: list[int], q: int) -> list[list[int]]:
    from sympy import Poly, symbols

    x = symbols("x")
    poly = Poly(list(reversed(coeffs)), x, modulus=q)
    _, factors = poly.factor_list()
    out = []
    for f, _mult in factors:
        out.append([int(c) % q for c in reversed(f.all_coeffs())])
    out.sort(key=lambda c: (len(c), c))
    return out


def norton_test(module: FqModule, seed: int | None = None) -> tuple[bool, tuple | None]:
    """Norton's irreducibility test with seeded random algebra elements.

    Returns ``(True, None)`` for an irreducible module or ``(False, (basis, pivots))``
    with a proper nonzero submodule.
    """
    q, n = module.q, module.dim
    rng = random.Random(config.seed() if seed is None else seed)
    dual = module.dual()
    for _ in range(NORTON_TRIES):
        theta = _random_algebra_element(module, rng)
        for f in _irreducible_factors(linalg.char_poly(theta, q), q):
            ft = linalg.poly_eval_matrix(f, theta, q)
            kernel = linalg.left_nullspace(ft, q)
            if not kernel:
                continue
            sub = module.spin(kernel[0])
            if len(sub[0]) < n:
                return False, sub
            dker = linalg.left_nullspace(linalg.transpose(ft), q)
            dsub = dual.spin(dker[0])
            if len(dsub[0]) < n:
                ann = linalg.nullspace(dsub[0], q, n)
                return False, linalg.rref(ann, q)
            if len(kernel) == len(f) - 1:
                return True, None
    raise InvariantError("Norton test inconclusive after the fixed number of trials")


def minimal_submodule(module: FqModule, seed: int | None = None) -> tuple[linalg.Matrix, list[int]]:
    """An irreducible submodule, chosen deterministically."""
    q, n = module.q, module.dim
    if q ** n <= SPIN_ALL_LIMIT:
        best = None
        for v in _projective_vectors(q, n):
            sub = module.spin(v)
            if best is None or len(sub[0]) < len(best[0]):
                best = sub
                if len(sub[0]) == 1:
                    break
        return best
    current = linalg.rref(linalg.identity(n), q)
    while True:
        sub_module = module.submodule(*current)
        irreducible, found = norton_test(sub_module, seed)
        if irreducible:
            return current
        # lift the submodule basis back to ambient coordinates
        basis = [linalg.vec_mat(b, current[0], q) for b in found[0]]
        current = linalg.rref(basis, q)


def is_irreducible(module: FqModule, seed: int | None = None) -> bool:
    """True iff no proper nonzero invariant subspace exists."""
    q, n = module.q, module.dim
    if n == 1:
        return True
    if q ** n <= SPIN_ALL_LIMIT:
        return all(len(module.spin(v)[0]) == n for v in _projective_vectors(q, n))
    return norton_test(module, seed)[0]


def intertwiners(m1: FqModule, m2: FqModule) -> list[linalg.Matrix]:
    """Basis of ``{X : A_i X = X B_i}`` (module maps for the right action)."""
    if m1.q != m2.q or len(m1.gens) != len(m2.gens):
        raise InputError("modules differ in field or number of acting generators")
    q, a, b = m1.q, m1.dim, m2.dim
    eqs = []
    # unknown X[k][l] sits at index k*b + l
    for A, B in zip(m1.gens, m2.gens):
        for i in range(a):
            for j in range(b):
                row = [0] * (a * b)
                for k in range(a):
                    row[k * b + j] += A.rows[i][k]
                for l in range(b):
                    row[i * b + l] -= B.rows[l][j]
                eqs.append([x % q for x in row])
    if not eqs:
        eqs = [[0] * (a * b)]
    sols = linalg.nullspace(eqs, q, a * b)
    return [[s[i * b:(i + 1) * b] for i in range(a)] for s in sols]


def are_isomorphic(m1: FqModule, m2: FqModule, seed: int | None = None) -> bool:
    """Isomorphism test for irreducible modules via Schur's lemma."""
    if not (is_irreducible(m1, seed) and is_irreducible(m2, seed)):
        raise DomainError("isomorphism test requires irreducible modules")
    if m1.dim != m2.dim:
        return False
    sols = intertwiners(m1, m2)
    if not sols:
        return False
    if linalg.det(sols[0], m1.q) == 0:
        raise InvariantError("nonzero intertwiner of irreducible modules is singular")
    return True


def composition_factors(module: FqModule, seed: int | None = None) -> list[FqModule]:
    factors = []
    current = module
    while current.dim:
        basis, pivots = minimal_submodule(current, seed)
        factors.append(current.submodule(basis, pivots))
        if len(basis) == current.dim:
            break
        current = current.quotient(basis, pivots)
    return factors


def decompose_homogeneous(module: FqModule, seed: int | None = None) -> list[tuple[FqModule, int]]:
    """Irreducible constituents grouped into isomorphism classes with multiplicities.

    The module must be completely reducible (coprime action).  A cheap
    necessary check is applied: ``dim Hom(S, M)`` must equal the multiplicity
    of ``S`` times ``dim End(S)``.
    """
    classes: list[list] = []
    for f in composition_factors(module, seed):
        for entry in classes:
            if are_isomorphic(entry[0], f, seed):
                entry[1] += 1
                break
        else:
            classes.append([f, 1])
    for rep, mult in classes:
        # in a semisimple module, dim Hom(S, M) = mult * dim End(S)
        hom = len(intertwiners(rep, module))
        end = len(intertwiners(rep, rep))
        if hom != mult * end:
            raise InvariantError("module is not completely reducible")
    if sum(rep.dim * m for rep, m in classes) != module.dim:
        raise InvariantError("constituent dimensions do not add up")
    return [(rep, m) for rep, m in classes]


def is_homogeneous(module: FqModule, seed: int | None = None) -> bool:
    return len(decompose_homogeneous(module, seed)) == 1
