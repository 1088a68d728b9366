"""Exact Smith normal form over the integers, with unimodular transforms.

Everything here works on plain lists of Python ints, so there is no
overflow and no tolerance anywhere.  The matrices that show up (relation
matrices of finite abelian groups) have at most a couple dozen rows and
columns, so the textbook gcd-reduction algorithm is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += f * bk[j]
    return out


def mat_vec(a: list[list[int]], v: list[int]) -> list[int]:
    return [sum(f * x for f, x in zip(row, v)) for row in a]


@dataclass(frozen=True)
class SmithForm:
    """U @ matrix @ V == diag, with U, V unimodular (inverses carried along)."""

    diag: list[list[int]]
    u: list[list[int]]
    u_inv: list[list[int]]
    v: list[list[int]]
    v_inv: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        n = min(len(self.diag), len(self.diag[0]) if self.diag else 0)
        return [self.diag[i][i] for i in range(n)]


def smith_normal_form(matrix: list[list[int]]) -> SmithForm:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns the canonical form with non-negative diagonal entries in a
    divisibility chain d1 | d2 | ...  Zero rows/columns are legal.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [[int(x) for x in row] for row in matrix]
    u = identity_matrix(rows)
    u_inv = identity_matrix(rows)
    v = identity_matrix(cols)
    v_inv = identity_matrix(cols)

    def swap_rows(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in u_inv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(i, j, k):
        # row_i += k * row_j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        u[i] = [x + k * y for x, y in zip(u[i], u[j])]
        for r in u_inv:
            r[j] -= k * r[i]

    def add_col(i, j, k):
        # col_i += k * col_j
        for r in a:
            r[i] += k * r[j]
        for r in v:
            r[i] += k * r[j]
        v_inv[j] = [x - k * y for x, y in zip(v_inv[j], v_inv[i])]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in u_inv:
            r[i] = -r[i]

    def clear_at(t):
        """Make a[t][t] the only nonzero in its row and column."""
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            if a[t][t] < 0:
                negate_row(t)
            done = True
            for i in range(t + 1, rows):
                if a[i][t] % a[t][t] != 0:
                    done = False
                add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, cols):
                if a[t][j] % a[t][t] != 0:
                    done = False
                add_col(j, t, -(a[t][j] // a[t][t]))
            if done:
                # row/col t now zero except possibly exact multiples cleared above
                if all(a[i][t] == 0 for i in range(t + 1, rows)) and all(
                    a[t][j] == 0 for j in range(t + 1, cols)
                ):
                    return

    n = min(rows, cols)
    for t in range(n):
        clear_at(t)

    # divisibility chain d_t | d_{t+1}; gluing col t+1 into col t and
    # re-clearing replaces (d_t, d_{t+1}) by (gcd, lcm)
    changed = True
    while changed:
        changed = False
        for t in range(n - 1):
            d0, d1 = a[t][t], a[t + 1][t + 1]
            if d1 and (d0 == 0 or d1 % d0 != 0):
                add_col(t, t + 1, 1)
                clear_at(t)
                changed = True

    for t in range(n):
        if a[t][t] < 0:
            negate_row(t)

    return SmithForm(diag=a, u=u, u_inv=u_inv, v=v, v_inv=v_inv)
