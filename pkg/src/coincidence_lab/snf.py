"""Smith normal form over the integers with a checkable certificate.

The decomposition U * A * V = D is produced by elementary unimodular row and
column operations, so det(U) and det(V) are +1 or -1 by construction and the
certificate can be verified by plain matrix multiplication.  The diagonal is
nonnegative and each entry divides the next (zeros trail, since everything
divides zero).

The transform matrices of an elementary-operation SNF grow much faster than
the input; nearest-integer quotients keep the growth down, but certificates
for matrices beyond roughly 5x5 with double-digit entries can leave the
signed 64-bit range, which raises the overflow error instead of degrading.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import IntegerMatrix


def _nearest_quotient(a: int, b: int) -> int:
    """Quotient minimizing |a - q*b|; keeps elimination entries small."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


@dataclass(frozen=True)
class SnfResult:
    """Certificate U * A * V = D for unimodular U, V and diagonal D."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    def det_u(self) -> int:
        return self.U.det()

    def det_v(self) -> int:
        return self.V.det()

    def verify(self, a: IntegerMatrix) -> bool:
        """Re-check every certificate invariant by multiplication."""
        if (self.U @ a) @ self.V != self.D:
            return False
        if abs(self.det_u()) != 1 or abs(self.det_v()) != 1:
            return False
        for i in range(self.D.rows):
            for j in range(self.D.cols):
                if i != j and self.D[i, j] != 0:
                    return False
        diag = self.diagonal()
        for x, y in zip(diag, diag[1:]):
            if x < 0 or y < 0:
                return False
            if x == 0 and y != 0:
                return False
            if x != 0 and y % x != 0:
                return False
        return True


class _Worker:
    """Mutable elimination state; every step mirrors into U or V.

    Intermediate values run on unbounded ints; the 64-bit policy is enforced
    on the certificate matrices when the result is assembled.
    """

    def __init__(self, a: IntegerMatrix):
        self.m = [list(row) for row in a.entries]
        self.rows = a.rows
        self.cols = a.cols
        self.u = [[1 if i == j else 0 for j in range(a.rows)] for i in range(a.rows)]
        self.v = [[1 if i == j else 0 for j in range(a.cols)] for i in range(a.cols)]

    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            self.m[i], self.m[j] = self.m[j], self.m[i]
            self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i != j:
            for row in self.m:
                row[i], row[j] = row[j], row[i]
            for row in self.v:
                row[i], row[j] = row[j], row[i]

    def negate_row(self, i: int) -> None:
        self.m[i] = [-x for x in self.m[i]]
        self.u[i] = [-x for x in self.u[i]]

    def add_row(self, dst: int, src: int, factor: int) -> None:
        self.m[dst] = [x + factor * y for x, y in zip(self.m[dst], self.m[src])]
        self.u[dst] = [x + factor * y for x, y in zip(self.u[dst], self.u[src])]

    def add_col(self, dst: int, src: int, factor: int) -> None:
        for row in self.m:
            row[dst] = row[dst] + factor * row[src]
        for row in self.v:
            row[dst] = row[dst] + factor * row[src]

    def pivot_position(self, start: int) -> tuple[int, int] | None:
        best = None
        for i in range(start, self.rows):
            for j in range(start, self.cols):
                value = abs(self.m[i][j])
                if value and (best is None or value < abs(self.m[best[0]][best[1]])):
                    best = (i, j)
        return best

    def clear_around(self, t: int) -> None:
        """Reduce row and column t until the pivot is their only nonzero."""
        while True:
            for i in range(t + 1, self.rows):
                if self.m[i][t]:
                    q = _nearest_quotient(self.m[i][t], self.m[t][t])
                    self.add_row(i, t, -q)
                    if self.m[i][t]:
                        # remainder is smaller than the pivot: promote it
                        self.swap_rows(i, t)
            if any(self.m[i][t] for i in range(t + 1, self.rows)):
                continue
            for j in range(t + 1, self.cols):
                if self.m[t][j]:
                    q = _nearest_quotient(self.m[t][j], self.m[t][t])
                    self.add_col(j, t, -q)
                    if self.m[t][j]:
                        self.swap_cols(j, t)
            if any(self.m[t][j] for j in range(t + 1, self.cols)):
                continue
            if any(self.m[i][t] for i in range(t + 1, self.rows)):
                continue
            return


def smith_normal_form(a: IntegerMatrix) -> SnfResult:
    """Diagonalize ``a`` by unimodular transforms.

    >>> res = smith_normal_form(IntegerMatrix([[2, 0], [0, 3]]))
    >>> res.diagonal()
    (1, 6)
    """
    w = _Worker(a)
    limit = min(w.rows, w.cols)
    t = 0
    while t < limit:
        pos = w.pivot_position(t)
        if pos is None:
            break
        w.swap_rows(pos[0], t)
        w.swap_cols(pos[1], t)
        w.clear_around(t)
        if w.m[t][t] < 0:
            w.negate_row(t)
        # divisibility: fold any offending entry into this pivot's row
        pivot = w.m[t][t]
        offender = None
        for i in range(t + 1, w.rows):
            for j in range(t + 1, w.cols):
                if w.m[i][j] % pivot != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            w.add_row(t, offender, 1)
            continue
        t += 1
    d = [[0] * w.cols for _ in range(w.rows)]
    for i in range(limit):
        d[i][i] = w.m[i][i]
    result = SnfResult(IntegerMatrix(w.u), IntegerMatrix(d), IntegerMatrix(w.v))
    if not result.verify(a):
        raise RuntimeError("internal error: certificate failed verification")
    return result
