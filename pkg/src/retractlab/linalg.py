"""Exact Gaussian elimination over the rationals.

Matrices are lists of rows; rows are lists of coefficients.  Only what the
rest of the package needs: row echelon form, particular solutions and null
spaces.
"""

from __future__ import annotations

from .poly import Q


def rref(rows, ncols):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [[Q(c) for c in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [c * inv for c in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                row = m[i]
                m[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve(a_rows, b, ncols):
    """One solution of ``A z = b`` with free variables set to zero, or None."""
    aug = [list(row) + [rhs] for row, rhs in zip(a_rows, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    z = [Q(0)] * ncols
    for row, col in zip(red, pivots):
        z[col] = row[ncols]
    return z


def nullspace(a_rows, ncols):
    """Basis of ``{z : A z = 0}`` as a list of vectors."""
    red, pivots = rref(a_rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for row, col in zip(red, pivots):
            v[col] = -row[f]
        basis.append(v)
    return basis


def row_space_basis(vectors, ncols):
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    red, _ = rref(vectors, ncols)
    return red


def intersect(basis_a, basis_b, ncols):
    """Canonical basis of span(basis_a) ∩ span(basis_b)."""
    if not basis_a or not basis_b:
        return []
    # solve sum a_i u_i - sum b_j v_j = 0 and map back through the first span
    cols = [list(u) for u in basis_a] + [[-c for c in v] for v in basis_b]
    mat = [[cols[k][i] for k in range(len(cols))] for i in range(ncols)]
    kernel = nullspace(mat, len(cols))
    vectors = []
    for z in kernel:
        vec = [Q(0)] * ncols
        for k, u in enumerate(basis_a):
            if z[k]:
                for i in range(ncols):
                    vec[i] += z[k] * u[i]
        vectors.append(vec)
    return row_space_basis(vectors, ncols)
