"""Induced projectives, radicals, projective covers and minimal presentations.

Projectives are kept as lists of pieces ``(a, V)`` where ``V`` is a module
over End(a) (one matrix per basis element of End(a)); the realisation is
``C(a, -) (x)_{End(a)} V`` summed over the pieces. With End(a) = k this is
just ``dim V`` copies of the representable ``C(a, -)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..errors import InternalError, NonSemisimpleEnd, NoSolution
from ..exactla import Matrix, Quotient, SparseEchelon, kernel_basis
from ..lincat import LinCat
from .constructions import (QuotientModule, dualize, dualize_map, kernel, quotient_by,
                            submodule, is_submodule_of)
from .module import Module, ModuleMap

DEFAULT_MARGIN = 3


@dataclass(frozen=True)
class Piece:
    obj: int
    V: tuple[Matrix, ...]   # action of the End(obj) basis on k^dim

    @property
    def dim(self) -> int:
        return self.V[0].nrows if self.V else 0


def _end_generators(cat: LinCat, a: int) -> list[int]:
    return [i for (x, y, i) in cat.generators() if x == y == a]


class InducedProjective:
    """The module ``sum_p C(a_p, -) (x)_{End(a_p)} V_p``."""

    def __init__(self, cat: LinCat, pieces: Sequence[Piece]):
        self.cat = cat
        self.pieces = tuple(pieces)
        f = cat.field
        # quotients[p][x] realises C(a, x) (x) V / relations for piece p
        self.quotients: list[list[Quotient | None]] = []
        for pc in self.pieces:
            a, t = pc.obj, pc.dim
            gens = _end_generators(cat, a)
            qs = []
            for x in cat.objects:
                n = cat.dim(a, x)
                if n == 0 or t == 0:
                    qs.append(Quotient.from_rows(f, 0, []))
                    continue
                rows = []
                for e in gens:
                    Ve = pc.V[e].rows
                    for i in range(n):
                        fe = cat.comp[(a, a, x)][e][i]   # f_i o e
                        for j in range(t):
                            rel: dict = {}
                            for k, c in fe:
                                key = k * t + j
                                rel[key] = rel.get(key, 0) + c
                            for jj in range(t):
                                c = Ve[jj][j]
                                if c:
                                    key = i * t + jj
                                    rel[key] = rel.get(key, 0) - c
                            rows.append(rel)
                qs.append(Quotient.from_rows(f, n * t, rows))
            self.quotients.append(qs)
        self.offsets = []
        dims = [0] * (cat.L + 1)
        for p in range(len(self.pieces)):
            self.offsets.append(list(dims))
            for x in cat.objects:
                dims[x] += self.quotients[p][x].dim
        self.dims = dims
        self.module = self._realise()

    def _realise(self) -> Module:
        cat = self.cat
        f = cat.field
        act = {}
        for (x, y), names in cat.hom.items():
            if not names:
                continue
            mats = []
            for j in range(len(names)):
                cols = []
                for p, pc in enumerate(self.pieces):
                    a, t = pc.obj, pc.dim
                    qx, qy = self.quotients[p][x], self.quotients[p][y]
                    for pos in qx.complement:
                        i, v = divmod(pos, t)
                        img = {}
                        for k, c in cat.comp[(a, x, y)][i][j]:
                            img[k * t + v] = c
                        col = [f.zero] * self.dims[y]
                        off = self.offsets[p][y]
                        for r, val in enumerate(qy.coords(img)):
                            col[off + r] = val
                        cols.append(col)
                mats.append(Matrix.from_columns(f, cols, self.dims[y]))
            act[(x, y)] = mats
        return Module(cat, self.dims, act, projective=True,
                      name="+".join(f"P{pc.obj}^{pc.dim}" for pc in self.pieces) or "0")

    def generator_vectors(self, p: int) -> list[list]:
        """Coordinates in the realisation of ``id_a (x) v_j`` for piece ``p``."""
        cat = self.cat
        f = cat.field
        pc = self.pieces[p]
        a, t = pc.obj, pc.dim
        q = self.quotients[p][a]
        out = []
        for j in range(t):
            amb = {k * t + j: c for k, c in cat.ident[a]}
            vec = [f.zero] * self.dims[a]
            off = self.offsets[p][a]
            for r, val in enumerate(q.coords(amb)):
                vec[off + r] = val
            out.append(vec)
        return out

    def ambient_of(self, x: int, vec: Sequence) -> list[tuple[int, int, int, object]]:
        """Decompose a vector of the realisation at ``x`` into terms ``(piece, f_i, v_j, coeff)``."""
        out = []
        for p, pc in enumerate(self.pieces):
            q = self.quotients[p][x]
            off = self.offsets[p][x]
            t = pc.dim
            coords = vec[off:off + q.dim]
            for pos, c in zip(q.complement, coords):
                if c:
                    i, j = divmod(pos, t)
                    out.append((p, i, j, c))
        return out

    def map_to(self, N: Module, images: Sequence[Matrix]) -> ModuleMap:
        """The map determined by ``id_a (x) v_j -> images[p][:, j]``.

        ``images[p]`` must be End(a)-equivariant: ``N(e) images[p] = images[p] V(e)``.
        """
        cat = self.cat
        f = cat.field
        comps = []
        for x in cat.objects:
            cols = []
            for p, pc in enumerate(self.pieces):
                a, t = pc.obj, pc.dim
                q = self.quotients[p][x]
                phi = images[p]
                for pos in q.complement:
                    i, j = divmod(pos, t)
                    vj = phi.column(j)
                    cols.append(N.act[(a, x)][i].apply(vj))
            comps.append(Matrix.from_columns(f, cols, N.dims[x]))
        return ModuleMap(self.module, N, comps)

    def __repr__(self):
        return f"InducedProjective({self.module.name})"


# -- radical and top -----------------------------------------------------------

def ensure_semisimple(cat: LinCat):
    if not cat.check_semisimple():
        raise NonSemisimpleEnd("an endomorphism algebra of the category is not semisimple")


def radical_bases(M: Module) -> list[Matrix]:
    """Column bases of ``rad M(b) = sum over a < b of the images of C(a, b)``."""
    cat = M.cat
    ensure_semisimple(cat)
    f = M.field
    out = []
    for b in cat.objects:
        ech = SparseEchelon(f, M.dims[b])
        if M.dims[b]:
            for a in range(b):
                if not M.dims[a]:
                    continue
                for m in M.act.get((a, b), ()):
                    for col in m.columns():
                        ech.add({i: x for i, x in enumerate(col) if x})
                        if ech.rank == M.dims[b]:
                            break
        ech.finalize()
        cols = [[row.get(i, f.zero) for i in range(M.dims[b])] for _, row in sorted(ech.pivots.items())]
        out.append(Matrix.from_columns(f, cols, M.dims[b]))
    return out


def radical_submodule(M: Module) -> tuple[Module, ModuleMap]:
    return submodule(M, radical_bases(M))


def top_data(M: Module) -> QuotientModule:
    """``M / rad M`` with the End(a)-actions retained."""
    spans = [[{i: x for i, x in enumerate(col) if x} for col in b.columns()] for b in radical_bases(M)]
    return quotient_by(M, spans)


def top(M: Module) -> Module:
    return top_data(M).module


# -- covers --------------------------------------------------------------------

def _equivariant_section(M: Module, a: int, q: Quotient, T: list[Matrix]) -> Matrix:
    """``s: top M(a) -> M(a)`` with ``pi s = 1`` and ``M(e) s = s T(e)`` for End generators."""
    cat = M.cat
    f = M.field
    d, t = M.dims[a], q.dim
    n = d * t  # s[r][c] -> r * t + c
    ech = SparseEchelon(f, n + 1)
    proj = q.proj_matrix()
    for i in range(t):
        for c in range(t):
            row = {r * t + c: proj.rows[i][r] for r in range(d) if proj.rows[i][r]}
            if i == c:
                row[n] = f.one
            if row:
                ech.add(row)
    for e in _end_generators(cat, a):
        Me = M.act[(a, a)][e].rows
        Te = T[e].rows
        for r in range(d):
            for c in range(t):
                row: dict = {}
                for k in range(d):
                    if Me[r][k]:
                        row[k * t + c] = row.get(k * t + c, 0) + Me[r][k]
                for k in range(t):
                    if Te[k][c]:
                        row[r * t + k] = row.get(r * t + k, 0) - Te[k][c]
                if f.p is not None:
                    row = {k: v % f.p for k, v in row.items()}
                row = {k: v for k, v in row.items() if v}
                if row:
                    ech.add(row)
    try:
        sol = ech.solve(n)
    except NoSolution:
        raise NonSemisimpleEnd(f"no End({a})-equivariant section of the top at {a}") from None
    return Matrix(f, [[sol.get(r * t + c, f.zero) for c in range(t)] for r in range(d)], t)


@dataclass
class Cover:
    M: Module
    P: InducedProjective
    f0: ModuleMap

    @property
    def module(self) -> Module:
        return self.P.module


@lru_cache(maxsize=4096)
def projective_cover(M: Module) -> Cover:
    """Minimal epimorphism ``P0 -> M`` from an induced projective.

    Raises InternalError if the minimality certificate ``ker f0 <= rad P0``
    fails.
    """
    cat = M.cat
    td = top_data(M)
    T = td.module
    pieces, images = [], []
    for a in cat.objects:
        t = T.dims[a]
        if not t:
            continue
        Ta = list(T.act[(a, a)])
        s = _equivariant_section(M, a, td.quotients[a], Ta)
        pieces.append(Piece(a, tuple(Ta)))
        images.append(s)
    P = InducedProjective(cat, pieces)
    f0 = P.map_to(M, images)
    if not f0.is_surjective():
        raise InternalError("projective cover map is not surjective")
    if not f0.is_natural():
        raise InternalError("projective cover map is not natural")
    ker_bases = [kernel_basis(m) for m in f0.comp]
    if not is_submodule_of(ker_bases, radical_bases(P.module)):
        raise InternalError("kernel of the cover is not radical")
    return Cover(M, P, f0)


def syzygy(M: Module) -> tuple[Module, ModuleMap]:
    """``(Omega M, inclusion into P0)``."""
    return _syzygy(M)


@lru_cache(maxsize=4096)
def _syzygy(M: Module):
    cov = projective_cover(M)
    return kernel(cov.f0)


@dataclass
class Presentation:
    """``P1 --f1--> P0 --f0--> M -> 0`` with both maps projective covers onto their images."""

    M: Module
    P0: InducedProjective
    f0: ModuleMap
    omega: Module
    iota: ModuleMap
    P1: InducedProjective
    g1: ModuleMap        # cover P1 -> omega
    f1: ModuleMap        # iota o g1
    minimal: bool = True

    def generator_objects(self) -> list[int]:
        return sorted({pc.obj for pc in self.P0.pieces} | {pc.obj for pc in self.P1.pieces})

    def is_projective(self) -> bool:
        return self.omega.is_zero()


@lru_cache(maxsize=4096)
def minimal_presentation(M: Module) -> Presentation:
    cov = projective_cover(M)
    omega, iota = syzygy(M)
    cov1 = projective_cover(omega)
    f1 = iota @ cov1.f0
    return Presentation(M, cov.P, cov.f0, omega, iota, cov1.P, cov1.f0, f1)


def is_projective(M: Module) -> bool:
    return M.projective or syzygy(M)[0].is_zero()


# -- injective envelopes and finiteness ----------------------------------------------

FD_TRUE, FD_FALSE, FD_UNCLEAR = True, False, "BoundaryUnclear"


def is_fd(M: Module, margin: int = DEFAULT_MARGIN):
    """Horizon-limited finite-dimensionality verdict.

    ``True`` when M vanishes on the last ``margin`` objects, ``False`` when
    it is nonzero there and either a known projective or nonzero on every
    object of that window; ``"BoundaryUnclear"`` otherwise.
    """
    L = M.L
    window = [x for x in range(max(0, L - margin + 1), L + 1)]
    tail = [M.dims[x] for x in window]
    if not any(tail):
        return FD_TRUE
    if M.projective or all(tail):
        return FD_FALSE
    return FD_UNCLEAR


@dataclass
class Envelope:
    M: Module
    I: Module
    incl: ModuleMap


@lru_cache(maxsize=4096)
def injective_envelope(M: Module) -> Envelope:
    """``M -> I`` obtained by dualising the projective cover of ``D M``.

    Callers are responsible for the finite-dimensionality gate.
    """
    cov = projective_cover(dualize(M))
    incl = dualize_map(cov.f0)          # D(DM) = M -> D(P)
    I = incl.dst
    I = Module(I.cat, I.dims, I.act, name=f"E({M.name})" if M.name else None)
    incl = ModuleMap(M, I, incl.comp)
    return Envelope(M, I, incl)


def touches_margin(objs: Sequence[int], L: int, margin: int = DEFAULT_MARGIN) -> bool:
    return any(x > L - margin for x in objs)
