"""Small exact integer linear algebra helpers.

Everything here works on plain Python ints (arbitrary precision) and
tuples; nothing is ever rounded.  The matrices involved are at most
3x3, so naive algorithms are fine.
"""

from __future__ import annotations

from math import gcd

IVec = tuple[int, int, int]


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def primitive(vec):
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = gcd_all(vec)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(v // g for v in vec)


def cross3(u: IVec, w: IVec) -> IVec:
    return (
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    )


def hnf_rows(rows):
    """Row Hermite normal form of an integer matrix, zero rows dropped.

    Pivots are positive, entries above a pivot are reduced into
    [0, pivot).  The result is the canonical basis of the row span, so
    two inputs span the same lattice iff their HNFs are equal.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    row = 0
    for col in range(ncols):
        pivot = None
        for i in range(row, len(mat)):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        # gcd out the column below the pivot
        for i in range(row + 1, len(mat)):
            while mat[i][col] != 0:
                q = mat[row][col] // mat[i][col]
                mat[row] = [a - q * b for a, b in zip(mat[row], mat[i])]
                mat[row], mat[i] = mat[i], mat[row]
        if mat[row][col] < 0:
            mat[row] = [-a for a in mat[row]]
        # reduce the entries above the pivot
        for i in range(row):
            q = mat[i][col] // mat[row][col]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[row])]
        row += 1
        if row == len(mat):
            break
    return [tuple(r) for r in mat[:row] if any(r)]


def kernel_basis(form: IVec):
    """Integer basis of {x in Z^3 : form . x = 0} for a nonzero form.

    Column-reduces the identity against the form, keeping the columns
    on which the form vanishes; the result is saturated by construction
    and returned in HNF.
    """
    if not any(form):
        raise ValueError("kernel of the zero form is everything")
    cols = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    vals = list(form)
    # sweep to a single nonzero value by gcd column operations
    while sum(1 for v in vals if v != 0) > 1:
        nz = sorted((abs(v), i) for i, v in enumerate(vals) if v != 0)
        _, i = nz[0]
        _, j = nz[1]
        q = vals[j] // vals[i]
        vals[j] -= q * vals[i]
        cols[j] = [a - q * b for a, b in zip(cols[j], cols[i])]
    kernel = [tuple(cols[i]) for i, v in enumerate(vals) if v == 0]
    assert len(kernel) == 2
    return hnf_rows(kernel)


def solve_pair(b1: IVec, b2: IVec, target: IVec):
    """Solve x*b1 + y*b2 = target over Q for independent b1, b2.

    Returns (x, y) as a Fraction pair, or None when target is outside
    the span.  Integrality is up to the caller.
    """
    from fractions import Fraction

    for i in range(3):
        for j in range(i + 1, 3):
            det = b1[i] * b2[j] - b1[j] * b2[i]
            if det == 0:
                continue
            x = Fraction(target[i] * b2[j] - target[j] * b2[i], det)
            y = Fraction(b1[i] * target[j] - b1[j] * target[i], det)
            for k in range(3):
                if x * b1[k] + y * b2[k] != target[k]:
                    return None
            return (x, y)
    raise ValueError("basis vectors are proportional")


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y
