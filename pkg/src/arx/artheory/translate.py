"""Transpose and the Auslander-Reiten translations ``tau = D Tr`` and ``tau^- = Tr D``."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import InternalError, IsProjective, NotFiniteDimensional
from ..exactla import Matrix, SparseEchelon
from ..modrep.constructions import cokernel, dualize
from ..modrep.decompose import find_isomorphism
from ..modrep.module import Module, ModuleMap, zero_module
from ..modrep.projective import (DEFAULT_MARGIN, FD_UNCLEAR, InducedProjective, Presentation,
                                 _end_generators, is_fd, minimal_presentation, touches_margin)


class StarDual:
    """``P* = Hom_C(P, C)``, a module over the opposite category.

    For a piece ``(a, V)`` and an object ``y`` of C the value is
    ``Hom_{End(a)}(V, C(y, a))``; an element is stored as the matrix ``Psi``
    (rows: basis of C(y, a), columns: basis of V) flattened row-major, and
    coordinates are the canonical kernel coordinates (entries at the free
    positions of the equivariance system).
    """

    def __init__(self, P: InducedProjective):
        self.P = P
        cat = P.cat
        self.cat = cat
        self.op = cat.opposite()
        f = cat.field
        L = cat.L
        # spaces[p][y] = (free positions, kernel vectors)
        self.spaces = []
        for pc in P.pieces:
            a, t = pc.obj, pc.dim
            gens = _end_generators(cat, a)
            per_y = []
            for y in cat.objects:
                n = cat.dim(y, a)
                nv = n * t
                ech = SparseEchelon(f, nv)
                for e in (gens if n else ()):
                    post = cat.post_matrix(y, a, a, e).rows      # f -> e o f on C(y, a)
                    Ve = pc.V[e].rows
                    for r in range(n):
                        for c in range(t):
                            row: dict = {}
                            for k in range(t):
                                if Ve[k][c]:
                                    row[r * t + k] = row.get(r * t + k, 0) + Ve[k][c]
                            for k in range(n):
                                if post[r][k]:
                                    row[k * t + c] = row.get(k * t + c, 0) - post[r][k]
                            if f.p is not None:
                                row = {k: v % f.p for k, v in row.items()}
                            row = {k: v for k, v in row.items() if v}
                            if row:
                                ech.add(row)
                per_y.append(ech.kernel(nv))
            self.spaces.append(per_y)
        # offsets[p][y] within P*(y)
        self.offsets = []
        dims_y = [0] * (L + 1)
        for p in range(len(P.pieces)):
            self.offsets.append(list(dims_y))
            for y in cat.objects:
                dims_y[y] += len(self.spaces[p][y][1])
        self.dims_y = dims_y
        self.module = self._realise()

    def coords(self, p: int, y: int, psi: dict) -> list:
        free, _ = self.spaces[p][y]
        f = self.cat.field
        return [psi.get(j, f.zero) for j in free]

    def _realise(self) -> Module:
        cat, op, L = self.cat, self.op, self.cat.L
        f = cat.field
        dims = [self.dims_y[L - x] for x in op.objects]
        act = {}
        for (x1, x2), names in op.hom.items():
            if not names:
                continue
            y, y2 = L - x1, L - x2          # op morphism x1 -> x2 is h: y2 -> y in C
            mats = []
            for j in range(len(names)):
                cols = []
                for p, pc in enumerate(self.P.pieces):
                    a, t = pc.obj, pc.dim
                    _, vecs = self.spaces[p][y]
                    if not vecs:
                        continue
                    pre = cat.pre_matrix(y2, y, a, j).rows  # g -> g o h, C(y,a) -> C(y2,a)
                    n2 = cat.dim(y2, a)
                    for psi in vecs:
                        new: dict = {}
                        for key, val in psi.items():
                            r, c = divmod(key, t)
                            for r2 in range(n2):
                                w = pre[r2][r]
                                if w:
                                    k2 = r2 * t + c
                                    new[k2] = new.get(k2, 0) + w * val
                        if f.p is not None:
                            new = {k: v % f.p for k, v in new.items()}
                        col = [f.zero] * self.dims_y[y2]
                        off = self.offsets[p][y2]
                        for r, v in enumerate(self.coords(p, y2, new)):
                            col[off + r] = v
                        cols.append(col)
                mats.append(Matrix.from_columns(f, cols, self.dims_y[y2]))
            act[(x1, x2)] = mats
        return Module(op, dims, act, projective=True)


def star_of_map(pres: Presentation) -> tuple[StarDual, StarDual, ModuleMap]:
    """``f1*: P0* -> P1*`` obtained by precomposing with ``f1: P1 -> P0``."""
    P0, P1, f1 = pres.P0, pres.P1, pres.f1
    cat = P0.cat
    f = cat.field
    L = cat.L
    S0, S1 = StarDual(P0), StarDual(P1)
    # images of the generators of P1 in P0, split into (piece, f_i, v_k, coeff) terms
    gen_terms = []
    for q, qc in enumerate(P1.pieces):
        b = qc.obj
        terms = []
        for vec in P1.generator_vectors(q):
            terms.append(P0.ambient_of(b, f1.comp[b].apply(vec)))
        gen_terms.append(terms)
    comps = []
    for x in S0.op.objects:
        y = L - x
        cols = []
        for p, pc in enumerate(P0.pieces):
            a, t = pc.obj, pc.dim
            _, vecs = S0.spaces[p][y]
            for psi in vecs:
                col = [f.zero] * S1.dims_y[y]
                for q, qc in enumerate(P1.pieces):
                    b, tw = qc.obj, qc.dim
                    if not S1.spaces[q][y][1]:
                        continue
                    nb = cat.dim(y, b)
                    new: dict = {}
                    for j, terms in enumerate(gen_terms[q]):
                        for (pp, i, k, c) in terms:
                            if pp != p:
                                continue
                            # f_i o Psi(v_k), f_i in C(a, b)
                            post = cat.post_matrix(y, a, b, i).rows
                            for r2 in range(nb):
                                acc = 0
                                for r in range(cat.dim(y, a)):
                                    v = psi.get(r * t + k)
                                    if v and post[r2][r]:
                                        acc += post[r2][r] * v
                                if acc:
                                    key = r2 * tw + j
                                    new[key] = new.get(key, 0) + c * acc
                    if f.p is not None:
                        new = {kk: v % f.p for kk, v in new.items()}
                    off = S1.offsets[q][y]
                    for r, v in enumerate(S1.coords(q, y, new)):
                        col[off + r] = v
                cols.append(col)
        comps.append(Matrix.from_columns(f, cols, S1.dims_y[y]))
    fstar = ModuleMap(S0.module, S1.module, comps)
    if not fstar.is_natural():
        raise InternalError("dual of the presentation map is not natural")
    return S0, S1, fstar


@lru_cache(maxsize=4096)
def transpose(M: Module) -> Module:
    """``Tr M = Cok(f1*)`` over the opposite category, from the minimal presentation."""
    pres = minimal_presentation(M)
    op = M.cat.opposite()
    if pres.is_projective():
        return zero_module(op)
    _, _, fstar = star_of_map(pres)
    T, _ = cokernel(fstar)
    return Module(op, T.dims, T.act, name=f"Tr({M.name})" if M.name else None)


@dataclass
class Translate:
    """Outcome of a translation: the module plus bookkeeping flags."""

    module: Module
    flag: str | None            # "Projective", "Injective" or None
    margin_warning: bool
    fd: object = None           # is_fd verdict of the input for tau_minus

    @property
    def is_zero(self) -> bool:
        return self.module.is_zero()


def _margin(M: Module, margin: int) -> bool:
    pres = minimal_presentation(M)
    return touches_margin(pres.generator_objects(), M.L, margin)


def tau_report(M: Module, margin: int = DEFAULT_MARGIN) -> Translate:
    pres = minimal_presentation(M)
    warn = _margin(M, margin)
    if pres.is_projective():
        return Translate(zero_module(M.cat), "Projective", warn)
    T = dualize(transpose(M))
    T = Module(M.cat, T.dims, T.act, name=f"tau({M.name})" if M.name else None)
    return Translate(T, None, warn)


def tau(M: Module, margin: int = DEFAULT_MARGIN) -> Module:
    """``D Tr M`` (zero for projective M)."""
    return tau_report(M, margin).module


def tau_minus_report(M: Module, margin: int = DEFAULT_MARGIN) -> Translate:
    """``Tr D M``; refused when M is known not to be finite dimensional.

    A BoundaryUnclear finiteness verdict lets the computation proceed with a
    margin warning.
    """
    fd = is_fd(M, margin)
    if fd is False:
        raise NotFiniteDimensional(f"{M!r} is not finite dimensional; tau^- is not defined here")
    DM = dualize(M)
    warn = fd == FD_UNCLEAR or _margin(DM, margin)
    if minimal_presentation(DM).is_projective():
        return Translate(zero_module(M.cat), "Injective", warn, fd)
    T = transpose(DM)
    T = Module(M.cat, T.dims, T.act, name=f"tau-({M.name})" if M.name else None)
    return Translate(T, None, warn, fd)


def tau_minus(M: Module, margin: int = DEFAULT_MARGIN) -> Module:
    return tau_minus_report(M, margin).module


@dataclass
class TrTrReport:
    M: Module
    trtr: Module
    iso: ModuleMap | None

    @property
    def ok(self) -> bool:
        return self.iso is not None


def trtr_check(M: Module) -> TrTrReport:
    """Compare ``Tr Tr M`` with ``M`` by an explicit isomorphism search."""
    if minimal_presentation(M).is_projective():
        raise IsProjective(f"{M!r} is projective; Tr M = 0")
    T = transpose(transpose(M))
    T = Module(M.cat, T.dims, T.act, name=f"TrTr({M.name})" if M.name else None)
    return TrTrReport(M, T, find_isomorphism(M, T))
