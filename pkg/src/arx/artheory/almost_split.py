"""Almost split sequences ending at an indecomposable non-projective module."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import InternalError, IsProjective, NotIndecomposable
from ..exactla import Matrix, Quotient, kernel_basis, vstack
from ..modrep.decompose import end_algebra, split_once, ProbablyIndecomposable
from ..modrep.homs import hom_space, span_quotient
from ..modrep.module import Module
from ..modrep.projective import DEFAULT_MARGIN, minimal_presentation
from .ext import ExtClass, ShortExactSeq, ext1, is_split, lift_endomorphism, realize_extension
from .translate import tau_report


@dataclass
class FactorCheck:
    """Non-retractions ``X -> M`` versus those lifting through ``E -> M``."""

    X: Module
    nonretractions: int
    lifted: int

    @property
    def ok(self) -> bool:
        return self.lifted == self.nonretractions


@dataclass
class AlmostSplit:
    seq: ShortExactSeq
    ext_dim: int
    socle_dim: int
    margin_warning: bool
    split: bool
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.split and all(c.ok for c in self.checks)


def right_action_matrix(space, pres, phi) -> Matrix:
    """Matrix of ``xi -> xi . phi`` (pull back along ``phi in End M``) on Ext coordinates."""
    f = space.M.field
    _, phi_omega = lift_endomorphism(pres, phi)
    cols = []
    for cl in space.basis():
        cols.append(space.coords_of(cl.cocycle @ phi_omega))
    return Matrix.from_columns(f, cols, space.dim)


def socle_class(M: Module, N: Module) -> tuple[ExtClass, int]:
    """First nonzero class of ``Ext^1(M, N)`` killed by rad End(M), and the socle dimension."""
    space = ext1(M, N)
    pres = minimal_presentation(M)
    E = end_algebra(M)
    f = M.field
    mats = [right_action_matrix(space, pres, E.space.from_coords(list(r))) for r in E.radical]
    if mats:
        ann = kernel_basis(vstack(f, mats, space.dim))
    else:
        ann = Matrix.identity(f, space.dim)
    if ann.ncols == 0:
        return None, 0
    return ExtClass(space, list(ann.column(0))), ann.ncols


def nonretraction_check(seq: ShortExactSeq, X: Module) -> FactorCheck:
    """Count non-retractions ``X -> M`` and how many of them lift through ``p``.

    With End(M) local, ``h`` is a non-retraction iff ``h o s`` lies in
    rad End(M) for every ``s: M -> X``.
    """
    M = seq.B
    f = M.field
    H = hom_space(X, M)
    if H.dim == 0:
        return FactorCheck(X, 0, 0)
    E = end_algebra(M)
    topq = Quotient.from_rows(f, E.dim, [{i: x for i, x in enumerate(r) if x} for r in E.radical])
    back = hom_space(M, X).basis
    cols = []
    for h in H.basis:
        col = []
        for s in back:
            col.extend(topq.coords(E.space.coords(h @ s)))
        cols.append(col)
    if cols[0]:
        nr_basis = kernel_basis(Matrix.from_columns(f, cols, len(cols[0])))
    else:
        nr_basis = Matrix.identity(f, H.dim)
    nr_dim = nr_basis.ncols
    if nr_dim == 0:
        return FactorCheck(X, 0, 0)
    lifted = [seq.p @ g for g in hom_space(X, seq.E).basis]
    q = span_quotient(H, lifted)
    count = 0
    for c in range(nr_basis.ncols):
        vec = list(nr_basis.column(c))
        h = H.from_coords(vec)
        if not any(q.coords(H.coords(h))):
            count += 1
    return FactorCheck(X, nr_dim, count)


def almost_split(M: Module, family: Sequence[Module] = (), margin: int = DEFAULT_MARGIN,
                 check_indecomposable: bool = True) -> AlmostSplit:
    """``0 -> tau M -> E -> M -> 0`` from the socle class of ``Ext^1(M, tau M)``."""
    rep = tau_report(M, margin)
    if rep.flag == "Projective":
        raise IsProjective(f"{M!r} is projective; no almost split sequence ends at it")
    if check_indecomposable:
        res = split_once(M)
        if res is not None and not isinstance(res, ProbablyIndecomposable):
            raise NotIndecomposable(f"{M!r} decomposes")
        if isinstance(res, ProbablyIndecomposable):
            raise NotIndecomposable(f"{M!r}: End/J has dimension {res.d}; cannot certify indecomposability")
    T = rep.module
    xi, socle = socle_class(M, T)
    if xi is None:
        raise InternalError("Ext^1(M, tau M) has no socle class")
    seq = realize_extension(xi)
    out = AlmostSplit(seq, ext1(M, T).dim, socle, rep.margin_warning, is_split(seq))
    for X in family:
        out.checks.append(nonretraction_check(seq, X))
    return out
