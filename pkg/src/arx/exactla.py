"""Exact scalar arithmetic over Q and F_p and dense linear algebra on top of it.

Rationals are ``gmpy2.mpq`` values (always in lowest terms with positive
denominator); prime-field elements are plain ``int`` residues in ``[0, p)``.
Nothing here ever touches floating point.

Pivoting is deterministic (first nonzero entry, columns scanned left to
right), so every basis derived from :func:`rref` is reproducible.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import FieldMismatch, InputError, NoSolution, ShapeError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """The ground field k: either Q or F_p."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str = "rational", p: int | None = None):
        if kind == "rational":
            p = None
        elif kind == "prime":
            if p is None or not is_prime(int(p)):
                raise InputError(f"prime field needs a prime modulus, got {p!r}")
            p = int(p)
        else:
            raise InputError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p

    @classmethod
    def rational(cls) -> "Field":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls("prime", p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse the CLI spelling: ``rational`` or ``fp:<p>``."""
        if text in ("rational", "Q", "q"):
            return cls.rational()
        if text.startswith("fp:"):
            try:
                return cls.prime(int(text[3:]))
            except ValueError:
                raise InputError(f"bad field {text!r}") from None
        raise InputError(f"bad field {text!r}")

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    def __eq__(self, other):
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Field.rational()" if self.p is None else f"Field.prime({self.p})"

    def to_json(self) -> dict:
        return {"kind": "rational"} if self.p is None else {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        try:
            return cls(data["kind"], data.get("p"))
        except (KeyError, TypeError):
            raise InputError(f"bad field description {data!r}") from None

    # -- scalars --------------------------------------------------------

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                return self.parse_scalar(x)
            return mpq(x)
        if isinstance(x, str):
            return self.parse_scalar(x)
        if isinstance(x, int):
            return x % self.p
        q = mpq(x)
        return int(q.numerator) * pow(int(q.denominator), -1, self.p) % self.p

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def add(self, x, y):
        return x + y if self.p is None else (x + y) % self.p

    def sub(self, x, y):
        return x - y if self.p is None else (x - y) % self.p

    def mul(self, x, y):
        return x * y if self.p is None else x * y % self.p

    def neg(self, x):
        return -x if self.p is None else -x % self.p

    def format_scalar(self, x) -> str:
        if self.p is None:
            return f"{x.numerator}/{x.denominator}"
        return str(int(x))

    def parse_scalar(self, text: str):
        text = str(text).strip()
        try:
            if self.p is None:
                if "/" in text:
                    num, den = text.split("/")
                    return mpq(int(num), int(den))
                return mpq(int(text))
            if "/" in text:
                num, den = text.split("/")
                return int(num) * pow(int(den), -1, self.p) % self.p
            return int(text) % self.p
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad scalar {text!r} for {self!r}") from None

    def random_element(self, rng, bound: int = 5):
        return self(rng.randint(-bound, bound))


def _sub_scaled(field: Field, a: Sequence, c, b: Sequence) -> list:
    """Return ``a - c*b`` entrywise."""
    p = field.p
    if p is None:
        return [x - c * y for x, y in zip(a, b)]
    return [(x - c * y) % p for x, y in zip(a, b)]


def _scale(field: Field, a: Sequence, c) -> list:
    p = field.p
    if p is None:
        return [x * c for x in a]
    return [x * c % p for x in a]


class Matrix:
    """Immutable dense matrix over a :class:`Field`.

    Rows are stored as a tuple of tuples. Use :meth:`Matrix.of` to build
    from arbitrary Python numbers/strings; the bare constructor trusts that
    entries are already field elements.
    """

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ShapeError("ncols must be given for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def of(cls, field: Field, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        return cls(field, [[field(x) for x in r] for r in rows], ncols)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        if not cols:
            return cls(field, [() for _ in range(nrows)], 0)
        return cls(field, zip(*cols), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def columns(self) -> list[tuple]:
        if self.nrows == 0:
            return [() for _ in range(self.ncols)]
        return list(zip(*self.rows))

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.columns(), self.nrows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format_scalar(x) for x in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols}>[{body}]"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        p = self.field.p
        if p is None:
            rows = [[x + y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)]
        else:
            rows = [[(x + y) % p for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)]
        return Matrix(self.field, rows, self.ncols)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.neg(x) for x in r] for r in self.rows], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, [_scale(self.field, r, c) for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"{self.shape} @ {other.shape}")
        f = self.field
        n = other.ncols
        if self.nrows == 0 or n == 0:
            return Matrix.zeros(f, self.nrows, n)
        zero = f.zero
        # Row-times-sparse-rows: skips zero entries, which dominate in practice.
        orows = other.rows
        p = f.p
        out = []
        for r in self.rows:
            acc = [zero] * n
            for k, x in enumerate(r):
                if x:
                    ok = orows[k]
                    for j in range(n):
                        y = ok[j]
                        if y:
                            acc[j] += x * y
            if p is not None:
                acc = [v % p for v in acc]
            out.append(acc)
        return Matrix(f, out, n)

    def apply(self, vec: Sequence) -> list:
        """Matrix times a column vector given as a sequence."""
        f = self.field
        zero = f.zero
        out = []
        for r in self.rows:
            acc = zero
            for x, y in zip(r, vec):
                if x and y:
                    acc += x * y
            out.append(acc if f.p is None else acc % f.p)
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def rank(self) -> int:
        return rref(self)[1]

    def flat(self) -> list:
        return [x for r in self.rows for x in r]


def hstack(field: Field, mats: Sequence[Matrix], nrows: int | None = None) -> Matrix:
    if not mats:
        if nrows is None:
            raise ShapeError("hstack of nothing needs nrows")
        return Matrix(field, [() for _ in range(nrows)], 0)
    n = mats[0].nrows
    for m in mats:
        if m.field != field:
            raise FieldMismatch("hstack")
        if m.nrows != n:
            raise ShapeError("hstack row mismatch")
    rows = [sum((m.rows[i] for m in mats), ()) for i in range(n)]
    return Matrix(field, rows, sum(m.ncols for m in mats))


def vstack(field: Field, mats: Sequence[Matrix], ncols: int | None = None) -> Matrix:
    if not mats:
        if ncols is None:
            raise ShapeError("vstack of nothing needs ncols")
        return Matrix(field, [], ncols)
    n = mats[0].ncols
    for m in mats:
        if m.field != field:
            raise FieldMismatch("vstack")
        if m.ncols != n:
            raise ShapeError("vstack column mismatch")
    return Matrix(field, [r for m in mats for r in m.rows], n)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    ncols = sum(m.ncols for m in mats)
    z = field.zero
    rows = []
    offset = 0
    for m in mats:
        if m.field != field:
            raise FieldMismatch("block_diag")
        left = (z,) * offset
        right = (z,) * (ncols - offset - m.ncols)
        rows.extend(left + r + right for r in m.rows)
        offset += m.ncols
    return Matrix(field, rows, ncols)


# -- dense elimination --------------------------------------------------------

def _rref_rows(field: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = _scale(field, rows[r], field.inv(rows[r][c]))
        rows[r] = prow
        for i in range(nrows):
            if i != r:
                x = rows[i][c]
                if x:
                    rows[i] = _sub_scaled(field, rows[i], x, prow)
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.rows], m.ncols)
    return Matrix(m.field, rows, m.ncols), len(pivots), pivots


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form the canonical basis of the null space of ``m``.

    One column per free (non-pivot) variable, in increasing order; the free
    variable itself carries 1 and the other free variables 0.
    """
    f = m.field
    reduced, rank, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    cols = []
    for j in free:
        v = [f.zero] * m.ncols
        v[j] = f.one
        for i, c in enumerate(pivots):
            v[c] = f.neg(reduced.rows[i][j])
        cols.append(v)
    return Matrix.from_columns(f, cols, m.ncols)


def solve_right(a: Matrix, b: Matrix) -> Matrix:
    """One solution ``X`` of ``a @ X == b`` (free variables set to zero).

    Raises :class:`NoSolution` when rank(a) < rank([a | b]).
    """
    if a.field != b.field:
        raise FieldMismatch("solve_right")
    if a.nrows != b.nrows:
        raise ShapeError(f"solve_right: {a.shape} vs {b.shape}")
    f = a.field
    n = a.ncols
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    rows, pivots = _rref_rows(f, aug, n + b.ncols)
    sol = [[f.zero] * b.ncols for _ in range(n)]
    for i, c in enumerate(pivots):
        if c >= n:
            raise NoSolution("inconsistent system")
        sol[c] = rows[i][n:]
    return Matrix(f, sol, b.ncols)


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ShapeError("inverse of non-square matrix")
    try:
        x = solve_right(m, Matrix.identity(m.field, m.nrows))
    except NoSolution:
        raise NoSolution("singular matrix") from None
    if m.rank() != m.nrows:
        raise NoSolution("singular matrix")
    return x


def column_space_basis(m: Matrix) -> Matrix:
    """Canonical basis of the column space: transposed nonzero rows of rref(m^T)."""
    reduced, rank, _ = rref(m.T)
    return Matrix.from_columns(m.field, reduced.rows[:rank], m.nrows)


def left_inverse(b: Matrix) -> Matrix:
    """A matrix ``Y`` with ``Y @ b == I`` for ``b`` of full column rank."""
    f = b.field
    if b.ncols == 0:
        return Matrix.zeros(f, 0, b.nrows)
    _, rank, pivots = rref(b.T)
    if rank != b.ncols:
        raise ShapeError("left_inverse needs full column rank")
    square = b.submatrix(pivots, range(b.ncols))
    inv = inverse(square)
    z = f.zero
    rows = []
    for r in inv.rows:
        full = [z] * b.nrows
        for k, row_idx in enumerate(pivots):
            full[row_idx] = r[k]
        rows.append(full)
    return Matrix(f, rows, b.nrows)


def quotient_coords(ambient_dim: int, sub_basis: Matrix) -> tuple[Matrix, int]:
    """Coordinates on ``k^ambient_dim / span(columns of sub_basis)``.

    The quotient basis is the set of standard vectors left after completing
    the pivot columns of the subspace, in index order. Returns ``(proj,
    dim)`` with ``proj @ sub_basis == 0`` and ``proj`` of full row rank.
    """
    q = Quotient.from_matrix(ambient_dim, sub_basis)
    return q.proj_matrix(), q.dim


# -- sparse elimination ------------------------------------------------------

class SparseEchelon:
    """Incremental row echelon form over sparse rows ``{column: value}``.

    Rows may be added in any order; :meth:`finalize` yields the unique
    reduced row echelon form of their span, so derived kernels agree with
    the dense :func:`kernel_basis`.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}
        self._final = False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Remainder of ``row`` modulo the current pivots (a fresh dict)."""
        f = self.field
        p = f.p
        row = {k: v for k, v in row.items() if v}
        heap = list(row)
        heapq.heapify(heap)
        pivots = self.pivots
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            x = row.get(c)
            if not x or c not in pivots:
                continue
            for k, v in pivots[c].items():
                old = row.get(k)
                if p is None:
                    nv = (old if old is not None else 0) - x * v
                else:
                    nv = ((old if old is not None else 0) - x * v) % p
                if nv:
                    row[k] = nv
                    if old is None:
                        heapq.heappush(heap, k)
                elif old is not None:
                    del row[k]
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it enlarged the span."""
        rem = self.reduce(row)
        if not rem:
            return False
        c = min(rem)
        inv = self.field.inv(rem[c])
        f = self.field
        self.pivots[c] = {k: f.mul(v, inv) for k, v in rem.items()}
        self._final = False
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def finalize(self) -> "SparseEchelon":
        """Bring the pivot rows to reduced form (idempotent)."""
        if self._final:
            return self
        f = self.field
        p = f.p
        pivots = self.pivots
        for c in sorted(pivots, reverse=True):
            row = pivots[c]
            for k in [k for k in row if k != c and k in pivots]:
                x = row.get(k)
                if not x:
                    continue
                for kk, v in pivots[k].items():
                    old = row.get(kk, 0)
                    nv = old - x * v if p is None else (old - x * v) % p
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
        self._final = True
        return self

    def free_columns(self, limit: int | None = None) -> list[int]:
        n = self.ncols if limit is None else limit
        return [j for j in range(n) if j not in self.pivots]

    def kernel(self, nvars: int | None = None) -> tuple[list[int], list[dict]]:
        """Canonical kernel basis (as sparse dicts) and its free columns.

        ``nvars`` restricts to the first columns (the rest being, e.g., an
        augmented right-hand side).
        """
        self.finalize()
        n = self.ncols if nvars is None else nvars
        free = self.free_columns(n)
        index = {j: i for i, j in enumerate(free)}
        f = self.field
        vecs = [{j: f.one} for j in free]
        for c, row in self.pivots.items():
            if c >= n:
                continue
            for k, v in row.items():
                if k != c and k in index:
                    vecs[index[k]][c] = f.neg(v)
        return free, vecs

    def solve(self, rhs_col: int) -> dict:
        """Particular solution when the last column ``rhs_col`` is the RHS."""
        self.finalize()
        if rhs_col in self.pivots:
            raise NoSolution("inconsistent system")
        sol = {}
        for c, row in self.pivots.items():
            v = row.get(rhs_col)
            if v:
                sol[c] = v
        return sol


class Quotient:
    """Coordinates on ``k^n / W`` by pivot completion.

    ``W`` is held in reduced echelon form; the quotient basis consists of
    the standard vectors at the non-pivot indices, so a lift of a quotient
    coordinate vector is simply its placement at those indices.
    """

    def __init__(self, field: Field, ambient_dim: int, echelon: SparseEchelon):
        self.field = field
        self.ambient_dim = ambient_dim
        self.echelon = echelon.finalize()
        self.complement = echelon.free_columns(ambient_dim)
        self._pos = {j: i for i, j in enumerate(self.complement)}
        # For each pivot c, the (position, -coef) entries it contributes.
        self._pivot_image = {
            c: [(self._pos[k], v) for k, v in row.items() if k != c]
            for c, row in self.echelon.pivots.items()
        }

    @classmethod
    def from_rows(cls, field: Field, ambient_dim: int, rows: Iterable[dict]) -> "Quotient":
        ech = SparseEchelon(field, ambient_dim)
        for r in rows:
            ech.add(r)
        return cls(field, ambient_dim, ech)

    @classmethod
    def from_matrix(cls, ambient_dim: int, sub_basis: Matrix) -> "Quotient":
        if sub_basis.nrows != ambient_dim:
            raise ShapeError(f"sub_basis has {sub_basis.nrows} rows, ambient is {ambient_dim}")
        rows = ({i: x for i, x in enumerate(col) if x} for col in sub_basis.columns())
        return cls.from_rows(sub_basis.field, ambient_dim, rows)

    @property
    def dim(self) -> int:
        return len(self.complement)

    def coords(self, vec: dict | Sequence) -> list:
        """Quotient coordinates of an ambient vector (dense or sparse)."""
        f = self.field
        p = f.p
        out = [f.zero] * self.dim
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        pos = self._pos
        pim = self._pivot_image
        for k, x in items:
            if not x:
                continue
            j = pos.get(k)
            if j is not None:
                out[j] += x
            else:
                for jj, v in pim[k]:
                    out[jj] -= x * v
        if p is not None:
            out = [v % p for v in out]
        return out

    def proj_matrix(self) -> Matrix:
        f = self.field
        cols = []
        for k in range(self.ambient_dim):
            cols.append(self.coords({k: f.one}))
        return Matrix.from_columns(f, cols, self.dim) if cols else Matrix(f, [() for _ in range(self.dim)], 0)

    def lift(self, coords: Sequence) -> list:
        f = self.field
        out = [f.zero] * self.ambient_dim
        for j, x in zip(self.complement, coords):
            out[j] = x
        return out


def sparse_from_dense(vec: Sequence) -> dict:
    return {i: x for i, x in enumerate(vec) if x}


__all__ = [
    "Field", "Matrix", "rref", "kernel_basis", "solve_right", "quotient_coords",
    "column_space_basis", "left_inverse", "inverse", "hstack", "vstack",
    "block_diag", "SparseEchelon", "Quotient", "is_prime",
]
