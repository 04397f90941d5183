"""Matrices over K[x]: Hermite normal form, determinants, exact solves.

A matrix is a list of rows; each entry is a univariate coefficient list.
All row operations used here are unimodular over K[x] unless stated.
"""

from __future__ import annotations

from . import upoly as U
from .errors import Singular


def zero_matrix(m, n):
    return [[[] for _ in range(n)] for _ in range(m)]


def identity(F, n):
    M = zero_matrix(n, n)
    for i in range(n):
        M[i][i] = [F.one]
    return M


def copy_matrix(M):
    return [[list(e) for e in row] for row in M]


def transpose(M):
    if not M:
        return []
    return [[list(M[i][j]) for i in range(len(M))] for j in range(len(M[0]))]


def mat_mul(F, A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = zero_matrix(len(A), ncols)
    for i, row in enumerate(A):
        for k in range(inner):
            a = row[k]
            if not a:
                continue
            bk = B[k]
            for j in range(ncols):
                if bk[j]:
                    out[i][j] = U.add(F, out[i][j], U.mul(F, a, bk[j]))
    return out


def mat_scale(F, M, c):
    return [[U.mul(F, e, c) for e in row] for row in M]


def is_zero_row(row):
    return not any(row)


def _axpy(F, dst, q, src, start=0):
    """dst -= q * src (in place, columns >= start)."""
    for j in range(start, len(dst)):
        if src[j]:
            dst[j] = U.sub(F, dst[j], U.mul(F, q, src[j]))


def hermite_normal_form(F, M, with_transform=False):
    """Row Hermite form H = T M with T unimodular over K[x].

    Pivots move left to right, are monic, and entries above a pivot have
    smaller degree than the pivot.  Zero rows are kept at the bottom.
    Returns ``(H, T)``; ``T`` is ``None`` unless requested."""
    H = copy_matrix(M)
    m = len(H)
    ncols = len(H[0]) if H else 0
    T = identity(F, m) if with_transform else None
    r = 0
    for col in range(ncols):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: len(H[i][col]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                if T is not None:
                    T[r], T[piv] = T[piv], T[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][col]:
                    q, rem = U.divmod_(F, H[i][col], H[r][col])
                    _axpy(F, H[i], q, H[r], col)
                    if T is not None:
                        _axpy(F, T[i], q, T[r])
                    if rem:
                        clean = False
            if clean:
                break
        if not H[r][col]:
            continue
        c = F.inv(H[r][col][-1])
        if c != F.one:
            H[r] = [U.scale(F, e, c) for e in H[r]]
            if T is not None:
                T[r] = [U.scale(F, e, c) for e in T[r]]
        for i in range(r):
            if H[i][col] and len(H[i][col]) >= len(H[r][col]):
                q = U.divmod_(F, H[i][col], H[r][col])[0]
                _axpy(F, H[i], q, H[r], col)
                if T is not None:
                    _axpy(F, T[i], q, T[r])
        r += 1
    return H, T


def hnf_rows(F, M):
    """Nonzero rows of the Hermite form of M."""
    H, _ = hermite_normal_form(F, M)
    return [row for row in H if not is_zero_row(row)]


def row_reduce(F, M):
    """Row reduction over K[x] (alias of the Hermite form without zero rows)."""
    return hnf_rows(F, M)


def kernel_mod_Q(F, A, Q):
    """Basis (rows) of the K[x]-module {v : v A == 0 mod Q}.

    Uses the Hermite form of [[A | I], [Q I | 0]]; first-block entries are
    reduced mod Q along the way, which is legal because the untouched
    Q e_j rows belong to the lattice."""
    m = len(A)
    k = len(A[0]) if A else 0
    rows = []
    for i in range(m):
        left = [U.mod(F, e, Q) for e in A[i]]
        right = [[] for _ in range(m)]
        right[i] = [F.one]
        rows.append(left + right)
    for j in range(k):
        left = [[] for _ in range(k)]
        left[j] = list(Q)
        rows.append(left + [[] for _ in range(m)])
    # eliminate the first block column by column
    total = m + k
    r = 0
    for col in range(k):
        while True:
            nz = [i for i in range(r, total) if rows[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: len(rows[i][col]))
            rows[r], rows[piv] = rows[piv], rows[r]
            clean = True
            for i in range(r + 1, total):
                if rows[i][col]:
                    q, rem = U.divmod_(F, rows[i][col], rows[r][col])
                    _axpy(F, rows[i], q, rows[r], col)
                    if rem:
                        clean = False
            if clean:
                break
        if rows[r][col]:
            r += 1
        # keep later first-block columns small
        for i in range(r, total):
            for j in range(col + 1, k):
                if rows[i][j] and len(rows[i][j]) > len(Q) - 1 and not _is_q_row(rows[i], j, Q):
                    rows[i][j] = U.mod(F, rows[i][j], Q)
    kern = [row[k:] for row in rows[r:] if all(not e for e in row[:k]) and any(row[k:])]
    return hnf_rows(F, kern)


def _is_q_row(row, j, Q):
    return row[j] == list(Q) and sum(1 for e in row if e) == 1


def determinant(F, M):
    """Bareiss fraction-free determinant over K[x]."""
    n = len(M)
    if n == 0:
        return [F.one]
    A = copy_matrix(M)
    sign = 1
    prev = [F.one]
    for k in range(n - 1):
        if not A[k][k]:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return []
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = U.sub(F, U.mul(F, A[i][j], A[k][k]), U.mul(F, A[i][k], A[k][j]))
                A[i][j] = U.div_exact(F, t, prev)
            A[i][k] = []
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return U.neg(F, d) if sign < 0 else d


def solve_fraction_free(F, A, B):
    """Return (X, d) with A X = d B, d = det(A) != 0, X over K[x]."""
    n = len(A)
    nb = len(B[0]) if B else 0
    M = [list(map(list, A[i])) + list(map(list, B[i])) for i in range(n)]
    sign = 1
    prev = [F.one]
    width = n + nb
    for k in range(n):
        if not M[k][k]:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                raise Singular("matrix is singular")
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, width):
                t = U.sub(F, U.mul(F, M[i][j], M[k][k]), U.mul(F, M[i][k], M[k][j]))
                M[i][j] = U.div_exact(F, t, prev)
            M[i][k] = []
        prev = M[k][k]
    d = M[n - 1][n - 1]
    X = zero_matrix(n, nb)
    for c in range(nb):
        for i in range(n - 1, -1, -1):
            acc = U.mul(F, d, M[i][n + c])
            for j in range(i + 1, n):
                if M[i][j] and X[j][c]:
                    acc = U.sub(F, acc, U.mul(F, M[i][j], X[j][c]))
            X[i][c] = U.div_exact(F, acc, M[i][i])
    if sign < 0:
        d = U.neg(F, d)
        X = [[U.neg(F, e) for e in row] for row in X]
    return X, d


def inverse(F, A):
    """(adj, d) with A adj = d I and d = det(A)."""
    X, d = solve_fraction_free(F, A, identity(F, len(A)))
    return X, d


def solve_field_system(F, rows, rhs, nvars):
    """Gauss-Jordan over a field.

    Returns (consistent, x, rank) where x is the particular solution of the
    reduced row echelon form with free variables set to zero."""
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for col in range(nvars):
        sel = next((i for i in range(r, len(A)) if not F.is_zero(A[i][col])), None)
        if sel is None:
            continue
        A[r], A[sel] = A[sel], A[r]
        inv = F.inv(A[r][col])
        A[r] = [F.mul(v, inv) for v in A[r]]
        for i in range(len(A)):
            if i != r and not F.is_zero(A[i][col]):
                c = A[i][col]
                A[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(A[i], A[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(A)):
        if not F.is_zero(A[i][nvars]):
            return False, None, r
    x = [F.zero] * nvars
    for i, col in enumerate(piv_cols):
        x[col] = A[i][nvars]
    return True, x, r


def row_reduce_fractions(F, M, den):
    """Hermite basis of the K[x]-module spanned by the rows of M / den.

    Returns (H, den) with H the nonzero Hermite rows of the numerator
    matrix; dividing by a common denominator commutes with the reduction."""
    return hnf_rows(F, M), den
