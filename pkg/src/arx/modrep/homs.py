"""Hom spaces between modules as kernels of the naturality system."""
from __future__ import annotations

from bisect import bisect_right
from functools import lru_cache
from typing import Sequence

from ..errors import CategoryMismatch, NoSolution
from ..exactla import Matrix, Quotient, SparseEchelon
from .module import Module, ModuleMap, same_category


class HomSpace:
    """Basis of ``Hom(M, N)``.

    A map is flattened by listing ``phi_a`` row-major for ``a = 0..L``. The
    basis is the canonical kernel basis of the naturality system, one vector
    per free variable; the coordinates of a natural map are therefore just
    its entries at the free positions.
    """

    def __init__(self, src: Module, dst: Module, offsets: list[int], nvars: int,
                 free: list[int], vecs: list[dict]):
        self.src = src
        self.dst = dst
        self.offsets = offsets
        self.nvars = nvars
        self.free = free
        self.vecs = vecs
        self._maps: dict[int, ModuleMap] = {}

    @property
    def dim(self) -> int:
        return len(self.vecs)

    def __len__(self):
        return len(self.vecs)

    def vector_to_map(self, vec: dict) -> ModuleMap:
        f = self.src.field
        comps = []
        for a in self.src.cat.objects:
            rn, cn = self.dst.dims[a], self.src.dims[a]
            off = self.offsets[a]
            rows = [[f.zero] * cn for _ in range(rn)]
            for r in range(rn):
                base = off + r * cn
                row = rows[r]
                for c in range(cn):
                    v = vec.get(base + c)
                    if v:
                        row[c] = v
            comps.append(Matrix(f, rows, cn))
        return ModuleMap(self.src, self.dst, comps)

    def map(self, i: int) -> ModuleMap:
        m = self._maps.get(i)
        if m is None:
            m = self._maps[i] = self.vector_to_map(self.vecs[i])
        return m

    @property
    def basis(self) -> list[ModuleMap]:
        return [self.map(i) for i in range(self.dim)]

    def map_vector(self, phi: ModuleMap) -> dict:
        out = {}
        for a, m in enumerate(phi.comp):
            off = self.offsets[a]
            cn = m.ncols
            for r, row in enumerate(m.rows):
                for c, x in enumerate(row):
                    if x:
                        out[off + r * cn + c] = x
        return out

    def coords(self, phi: ModuleMap) -> list:
        """Coordinates of a natural map in this basis (entries at free positions)."""
        f = self.src.field
        comps = phi.comp
        out = []
        for j in self.free:
            a = _object_of(self.offsets, j)
            rel = j - self.offsets[a]
            cn = self.src.dims[a]
            out.append(comps[a].rows[rel // cn][rel % cn])
        return [f(x) if f.p is not None else x for x in out]

    def from_coords(self, coords: Sequence) -> ModuleMap:
        f = self.src.field
        acc: dict = {}
        for c, vec in zip(coords, self.vecs):
            if not c:
                continue
            for k, v in vec.items():
                acc[k] = acc.get(k, 0) + c * v
        if f.p is not None:
            acc = {k: v % f.p for k, v in acc.items()}
        return self.vector_to_map({k: v for k, v in acc.items() if v})

    def __repr__(self):
        return f"Hom({self.src!r}, {self.dst!r}) dim {self.dim}"


def _object_of(offsets: list[int], j: int) -> int:
    # Empty blocks share their offset with the next one; the last match is the owner.
    return bisect_right(offsets, j) - 1


def naturality_system(M: Module, N: Module) -> tuple[SparseEchelon, list[int], int]:
    """Echelon form of the equations ``N(s) phi_a = phi_b M(s)`` over generators ``s``."""
    if not same_category(M.cat, N.cat):
        raise CategoryMismatch("Hom between modules over different categories")
    cat = M.cat
    f = cat.field
    offsets = []
    n = 0
    for a in cat.objects:
        offsets.append(n)
        n += M.dims[a] * N.dims[a]
    ech = SparseEchelon(f, n)
    p = f.p
    for (a, b, i) in cat.generators():
        Ma, Mb, Nb = M.dims[a], M.dims[b], N.dims[b]
        if not Ma or not Nb:
            continue
        Nf = N.act[(a, b)][i].rows     # Nb x Na
        Mf = M.act[(a, b)][i].rows     # Mb x Ma
        oa, ob = offsets[a], offsets[b]
        nf_nz = [[(k, x) for k, x in enumerate(row) if x] for row in Nf]
        mf_cols = [[(k, Mf[k][c]) for k in range(Mb) if Mf[k][c]] for c in range(Ma)]
        for r in range(Nb):
            for c in range(Ma):
                eq: dict = {}
                for k, x in nf_nz[r]:
                    key = oa + k * Ma + c
                    eq[key] = eq.get(key, 0) + x
                for k, y in mf_cols[c]:
                    key = ob + r * Mb + k
                    eq[key] = eq.get(key, 0) - y
                if p is not None:
                    eq = {k: v % p for k, v in eq.items() if v % p}
                else:
                    eq = {k: v for k, v in eq.items() if v}
                if eq:
                    ech.add(eq)
    return ech, offsets, n


@lru_cache(maxsize=8192)
def hom_space(M: Module, N: Module) -> HomSpace:
    """All natural transformations ``M -> N``."""
    ech, offsets, n = naturality_system(M, N)
    free, vecs = ech.kernel(n)
    return HomSpace(M, N, offsets, n, free, vecs)


def hom_dim(M: Module, N: Module) -> int:
    return hom_space(M, N).dim


def span_quotient(space: HomSpace, maps: Sequence[ModuleMap]) -> Quotient:
    """``Hom(M, N) / span(maps)`` in the coordinates of ``space``."""
    f = space.src.field
    rows = []
    for m in maps:
        c = space.coords(m)
        rows.append({i: x for i, x in enumerate(c) if x})
    return Quotient.from_rows(f, space.dim, rows)


def solve_combination(targets: Sequence[ModuleMap], goal: ModuleMap) -> list | None:
    """Coefficients ``c`` with ``sum c_k targets[k] == goal``, or ``None``."""
    f = goal.field
    flat_goal = goal.flat()
    n = len(targets)
    ech = SparseEchelon(f, n + 1)
    cols = [t.flat() for t in targets]
    for r in range(len(flat_goal)):
        row = {k: cols[k][r] for k in range(n) if cols[k][r]}
        if flat_goal[r]:
            row[n] = flat_goal[r]
        if row:
            ech.add(row)
    try:
        sol = ech.solve(n)
    except NoSolution:
        return None
    return [sol.get(k, f.zero) for k in range(n)]
