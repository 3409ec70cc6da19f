"""Finite dimensional associative algebras given by structure constants."""
from __future__ import annotations

from typing import Callable, Sequence

from .errors import RadicalNotComputable
from .exactla import Field, Matrix, kernel_basis


class FDAlgebra:
    """Associative algebra with basis ``b_0..b_{n-1}``.

    ``product(i, j)`` returns the coordinates of ``b_i * b_j`` as a sparse
    dict. Products are memoised on first use.
    """

    def __init__(self, field: Field, dim: int, product: Callable[[int, int], dict],
                 unit: Sequence | None = None):
        self.field = field
        self.dim = dim
        self._product = product
        self._table: dict[tuple[int, int], dict] = {}
        self.unit = list(unit) if unit is not None else None

    def basis_product(self, i: int, j: int) -> dict:
        key = (i, j)
        got = self._table.get(key)
        if got is None:
            got = self._table[key] = self._product(i, j)
        return got

    def mul(self, x: Sequence, y: Sequence) -> list:
        f = self.field
        out = [f.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in self.basis_product(i, j).items():
                    out[k] += ab * c
        if f.p is not None:
            out = [v % f.p for v in out]
        return out

    def left_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> x*y`` in the basis."""
        f = self.field
        cols = []
        for j in range(self.dim):
            e = [f.zero] * self.dim
            e[j] = f.one
            cols.append(self.mul(x, e))
        return Matrix.from_columns(f, cols, self.dim)

    def traces(self) -> list:
        """``tr(L_{b_k})`` for every basis element."""
        f = self.field
        out = []
        for k in range(self.dim):
            t = f.zero
            for j in range(self.dim):
                t += self.basis_product(k, j).get(j, 0)
            out.append(f(t) if f.p is not None else t)
        return out

    def radical(self) -> list[list]:
        return algebra_radical(self)


def algebra_radical(alg: FDAlgebra) -> list[list]:
    """Basis of the Jacobson radical by the trace-form criterion.

    ``J = {x : tr(L_x L_y) = 0 for all y}``. This characterisation needs
    characteristic 0 or a prime larger than the dimension.
    """
    f = alg.field
    n = alg.dim
    if f.p is not None and f.p <= n:
        raise RadicalNotComputable(
            f"trace-form radical needs p > dim A (p={f.p}, dim={n}); use rationals")
    if n == 0:
        return []
    t = alg.traces()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v = f.zero
            for k, c in alg.basis_product(i, j).items():
                v += c * t[k]
            row.append(f(v) if f.p is not None else v)
        rows.append(row)
    gram = Matrix(f, rows, n)
    # x in J iff sum_i x_i G[i][j] = 0 for all j, i.e. G^T x = 0.
    ker = kernel_basis(gram.T)
    return [list(c) for c in ker.columns()]
