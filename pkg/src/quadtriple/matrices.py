"""Small exact matrix helpers over Fraction (2x2 and 6x6 are what we use)."""

from __future__ import annotations

from itertools import combinations

from .exact import Q


def mat(rows):
    return tuple(tuple(Q(x) for x in row) for row in rows)


def identity(n):
    return mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_vec(a, v):
    return tuple(sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a)))


def transpose(a):
    return tuple(zip(*a))


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def det(a):
    """Determinant by fraction Gaussian elimination."""
    n = len(a)
    m = [list(row) for row in a]
    sign = Q(1)
    out = Q(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Q(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        pv = m[col][col]
        out *= pv
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / pv
                for j in range(col, n):
                    m[i][j] -= f * m[col][j]
    return sign * out


def det3(r0, r1, r2):
    return (
        r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
        - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
    )


def mat_inverse(a):
    n = len(a)
    m = [list(row) + [Q(1) if i == j else Q(0) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return tuple(tuple(row[n:]) for row in m)


# ---------------------------------------------------------------------------
# symplectic structure on rank 6, J = (0 I3; -I3 0)
# ---------------------------------------------------------------------------

def symplectic_form(n=3):
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = -1
    return mat(rows)


J6 = symplectic_form(3)


def is_symplectic(g, n=3):
    return mat_mul(mat_mul(transpose(g), symplectic_form(n)), g) == symplectic_form(n)


WEDGE_BASIS = tuple(combinations(range(6), 3))  # 20 sorted triples


def wedge_rows(r0, r1, r2):
    """Coordinates of r0 ^ r1 ^ r2 in the sorted-triple basis of wedge^3 Q^6."""
    return tuple(
        det3(
            (r0[c[0]], r0[c[1]], r0[c[2]]),
            (r1[c[0]], r1[c[1]], r1[c[2]]),
            (r2[c[0]], r2[c[1]], r2[c[2]]),
        )
        for c in WEDGE_BASIS
    )
