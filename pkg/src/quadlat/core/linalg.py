"""
Exact linear algebra over Q and Z.

Matrices are sequences of rows. Rational work is done in Fraction; integer
Hermite normal forms and kernels back the lattice canonical forms.
"""
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Row = Tuple[Fraction, ...]
Matrix = Tuple[Row, ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return ()
    return tuple(tuple(Fraction(m[i][j]) for i in range(len(m))) for j in range(len(m[0])))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in bt)
        for row in a
    )


def vecmat(v: Sequence, m: Sequence[Sequence]) -> Row:
    """Row vector times matrix."""
    if not m:
        return ()
    ncols = len(m[0])
    out = [Fraction(0)] * ncols
    for coeff, row in zip(v, m):
        if coeff:
            for j in range(ncols):
                out[j] += coeff * row[j]
    return tuple(out)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(u, v)), Fraction(0))


def scale_rows(m: Sequence[Sequence], c) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in m)


def _echelon(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(_echelon([[Fraction(x) for x in row] for row in m])[1])


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(m: Sequence[Sequence]) -> Matrix:
    """
    Exact inverse by row reduction of [m | I].

    Raises:
        ZeroDivisionError: If m is singular
    """
    n = len(m)
    aug = [[Fraction(x) for x in row] + list(e) for row, e in zip(m, identity(n))]
    red, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def right_nullspace(m: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Basis (as rows) of {x : m x^T = 0}."""
    if not m:
        n = ncols or 0
        return identity(n)
    n = len(m[0])
    red, pivots = _echelon([[Fraction(x) for x in row] for row in m])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)


def left_nullspace(m: Sequence[Sequence]) -> Matrix:
    """Basis of {x : x m = 0}."""
    return right_nullspace(transpose(m), ncols=len(m))


def solve_left(b: Sequence[Sequence], v: Sequence) -> Optional[Row]:
    """
    Solves x b = v for a matrix b with linearly independent rows.
    Returns None when v is outside the row span.
    """
    k = len(b)
    if k == 0:
        return () if all(x == 0 for x in v) else None
    n = len(v)
    # Columns of the system: b^T x^T = v^T
    aug = [[Fraction(b[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    red, pivots = _echelon(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        x[pc] = row[k]
    return tuple(x)


# ---------------------------------------------------------------------------
# Integer lattices
# ---------------------------------------------------------------------------

def common_denominator(rows: Sequence[Sequence]) -> int:
    d = 1
    for row in rows:
        for x in row:
            den = Fraction(x).denominator
            d = d * den // gcd(d, den)
    return d


def integer_rows(rows: Sequence[Sequence]) -> Tuple[List[List[int]], int]:
    """Scales rational rows by their common denominator."""
    d = common_denominator(rows)
    return [[int(Fraction(x) * d) for x in row] for row in rows], d


def hnf(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[List[int]]:
    """
    Row-style Hermite normal form of an integer matrix.

    Pivots are positive and entries above each pivot are reduced into
    [0, pivot). Zero rows are dropped, so the result is a basis of the row
    lattice.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0]) if ncols is None else ncols
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not live:
                break
            i_min = min(live, key=lambda i: abs(a[i][c]))
            a[r], a[i_min] = a[i_min], a[r]
            finished = True
            for i in range(r + 1, len(a)):
                if a[i][c] != 0:
                    f = a[i][c] // a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    if a[i][c] != 0:
                        finished = False
            if finished:
                break
        if r >= len(a) or a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return [row for row in a[:r]]


def rational_hnf(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """
    Canonical basis of the Z-span of rational rows.

    Args:
        rows: Generators with int, Fraction or 'p/q' string entries
        ncols: Ambient dimension

    Returns:
        Matrix: HNF basis scaled back by the common denominator; () for the
        zero lattice
    """
    nonzero = [row for row in rows if any(Fraction(x) != 0 for x in row)]
    if not nonzero:
        return ()
    ints, d = integer_rows(nonzero)
    return tuple(tuple(Fraction(x, d) for x in row) for row in hnf(ints, ncols))


def integer_left_kernel(m: Sequence[Sequence]) -> List[List[int]]:
    """
    Z-basis of {x in Z^k : x m = 0} for a k x n rational matrix m.

    Reads the kernel off the HNF of the augmented matrix [m | I].
    """
    k = len(m)
    if k == 0:
        return []
    n = len(m[0]) if m[0] else 0
    ints, _ = integer_rows(m) if n else ([[] for _ in range(k)], 1)
    aug = [row + [1 if i == j else 0 for j in range(k)] for i, row in enumerate(ints)]
    h = hnf(aug, n + k)
    return [row[n:] for row in h if not any(row[:n])]


def left_kernel_mod_p(m: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    """
    Basis over F_p of {x : x m = 0 mod p}, entries in [0, p).

    Args:
        m: Integer matrix
        p: Prime modulus

    Returns:
        List of kernel rows, empty if x m = 0 mod p forces x = 0
    """
    k = len(m)
    n = len(m[0]) if k else 0
    # Row-reduce m^T mod p, then read off the kernel.
    a = [[m[i][j] % p for i in range(k)] for j in range(n)]
    pivots: List[int] = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, len(a)) if a[i][c] % p), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    basis = []
    for f in (c for c in range(k) if c not in pivots):
        x = [0] * k
        x[f] = 1
        for row, pc in zip(a[:r], pivots):
            x[pc] = (-row[f]) % p
        basis.append(x)
    return basis
