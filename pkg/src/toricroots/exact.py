"""Exact integer linear algebra.

Matrices are tuples of row tuples of Python ints, so every value is
immutable and arbitrary precision. Nothing here touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .errors import BadInput, DimensionMismatch, ZeroVector

IntVec = Tuple[int, ...]
IntMat = Tuple[IntVec, ...]


def as_vector(v: Sequence[int]) -> IntVec:
    out = []
    for x in v:
        if isinstance(x, bool) or int(x) != x:
            raise BadInput(f"non-integer entry {x!r}")
        out.append(int(x))
    return tuple(out)


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMat:
    """Coerce nested sequences to an IntMat, checking the shape."""
    mat = tuple(as_vector(r) for r in rows)
    if mat and any(len(r) != len(mat[0]) for r in mat):
        raise DimensionMismatch("ragged matrix rows")
    return mat


def shape(A: IntMat) -> Tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: IntMat) -> IntMat:
    return tuple(zip(*A)) if A else ()


def matmul(A: IntMat, B: IntMat) -> IntMat:
    if shape(A)[1] != len(B):
        raise DimensionMismatch(f"cannot multiply {shape(A)} by {shape(B)}")
    cols = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def matvec(A: IntMat, x: Sequence[int]) -> IntVec:
    if shape(A)[1] != len(x):
        raise DimensionMismatch(f"cannot apply {shape(A)} matrix to length {len(x)}")
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"pairing of lengths {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def content(v: Sequence[int]) -> int:
    """Non-negative gcd of the entries; 0 for the zero vector."""
    return math.gcd(*v) if v else 0


def det(A: IntMat) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n, m = shape(A)
    if n != m:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Sequence[Sequence]) -> int:
    """Rank over Q; accepts integer or rational entries."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    r = 0
    for c in range(len(M[0])):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _check_nonempty(A: IntMat) -> None:
    if not A or not A[0]:
        raise BadInput("empty matrix")


def hermite_normal_form(A: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ A`` and ``U`` unimodular. ``H`` is in
    row echelon form with positive pivots, entries above each pivot reduced
    into ``[0, pivot)`` and zero rows at the bottom.
    """
    A = as_matrix(A)
    _check_nonempty(A)
    m, n = shape(A)
    H = [list(r) for r in A]
    U = [list(r) for r in identity(m)]

    def combine(i: int, k: int, c: int) -> None:
        a, b = H[i][c], H[k][c]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            H[k] = [y - q * x for x, y in zip(H[i], H[k])]
            U[k] = [y - q * x for x, y in zip(U[i], U[k])]
            return
        g, x, y = xgcd(a, b)
        p, s = -b // g, a // g
        for M in (H, U):
            ri, rk = M[i], M[k]
            M[i] = [x * u + y * w for u, w in zip(ri, rk)]
            M[k] = [p * u + s * w for u, w in zip(ri, rk)]

    r = 0
    for c in range(n):
        if r == m:
            break
        for k in range(r + 1, m):
            combine(r, k, c)
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for k in range(r):
            q = H[k][c] // p
            if q:
                H[k] = [x - q * y for x, y in zip(H[k], H[r])]
                U[k] = [x - q * y for x, y in zip(U[k], U[r])]
        r += 1
    return as_matrix(H), as_matrix(U)


def smith_normal_form(A: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat, IntMat]:
    """Smith normal form with transforms.

    Returns ``(U, S, V)`` with ``S = U @ A @ V`` diagonal, diagonal entries
    non-negative and each dividing the next, ``U`` and ``V`` unimodular.
    """
    A = as_matrix(A)
    _check_nonempty(A)
    m, n = shape(A)
    S = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def row_axpy(dst: int, src: int, q: int) -> None:
        # row dst -= q * row src
        S[dst] = [x - q * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def col_axpy(dst: int, src: int, q: int) -> None:
        for M in (S, V):
            for row in M:
                row[dst] -= q * row[src]

    def swap_cols(a: int, b: int) -> None:
        for M in (S, V):
            for row in M:
                row[a], row[b] = row[b], row[a]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return as_matrix(U), as_matrix(S), as_matrix(V)
            i, j = best
            S[t], S[i] = S[i], S[t]
            U[t], U[i] = U[i], U[t]
            swap_cols(t, j)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    row_axpy(i, t, S[i][t] // p)
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    col_axpy(j, t, S[t][j] // p)
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_axpy(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return as_matrix(U), as_matrix(S), as_matrix(V)


def invariant_factors(A: Sequence[Sequence[int]]) -> IntVec:
    """Diagonal of the Smith form, zeros included."""
    _, S, _ = smith_normal_form(A)
    return tuple(S[i][i] for i in range(min(shape(S))))


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[IntVec]:
    """Some integer ``x`` with ``A @ x == b``, or None when none exists."""
    A = as_matrix(A)
    b = as_vector(b)
    m, n = shape(A)
    if len(b) != m:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {m}")
    U, S, V = smith_normal_form(A)
    c = matvec(U, b)
    y = [0] * n
    for i in range(m):
        s = S[i][i] if i < n else 0
        if s == 0:
            if c[i]:
                return None
        elif c[i] % s:
            return None
        else:
            y[i] = c[i] // s
    x = matvec(V, y)
    assert matvec(A, x) == b
    return x


def kernel_basis(A: Sequence[Sequence[int]]) -> IntMat:
    """Rows forming a basis of the integer kernel ``{x : A @ x = 0}``."""
    A = as_matrix(A)
    H, U = hermite_normal_form(transpose(A))
    return tuple(u for h, u in zip(H, U) if not any(h))


def primitivize(v: Sequence[int]) -> Tuple[IntVec, int]:
    """Split ``v`` as ``c * p`` with ``c > 0`` and ``p`` primitive."""
    v = as_vector(v)
    c = content(v)
    if c == 0:
        raise ZeroVector("cannot primitivize the zero vector")
    return tuple(x // c for x in v), c


def sublattice_index(B: Sequence[Sequence[int]]) -> Union[int, float]:
    """Index in ``Z^r`` of the lattice spanned by the rows of ``B``.

    Returns ``math.inf`` when the rows do not span a full-rank sublattice.
    """
    B = as_matrix(B)
    r = shape(B)[1]
    factors = [s for s in invariant_factors(B) if s]
    if len(factors) < r:
        return math.inf
    return math.prod(factors)
