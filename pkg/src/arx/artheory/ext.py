"""Ext^1 through minimal presentations, realisation of classes, stable Hom spaces."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import InternalError, NotFiniteDimensional
from ..exactla import Quotient, left_inverse, vstack
from ..modrep.constructions import cokernel_data
from ..modrep.homs import HomSpace, hom_space, solve_combination, span_quotient
from ..modrep.module import Module, ModuleMap, direct_sum
from ..modrep.projective import (DEFAULT_MARGIN, Presentation, injective_envelope, is_fd,
                                 minimal_presentation, projective_cover)


@dataclass
class ShortExactSeq:
    """``0 -> A --i--> E --p--> B -> 0``."""

    A: Module
    E: Module
    B: Module
    i: ModuleMap
    p: ModuleMap

    def problems(self) -> list[str]:
        out = []
        if not self.i.is_injective():
            out.append("left map not injective")
        if not self.p.is_surjective():
            out.append("right map not surjective")
        if not (self.p @ self.i).is_zero():
            out.append("composite is not zero")
        for a in self.E.cat.objects:
            if self.E.dims[a] != self.A.dims[a] + self.B.dims[a]:
                out.append(f"dimensions do not add up at {a}")
        if not self.i.is_natural() or not self.p.is_natural():
            out.append("maps are not natural")
        return out

    def is_exact(self) -> bool:
        return not self.problems()


def is_split(seq: ShortExactSeq) -> bool:
    """True when ``p`` has a section."""
    B = seq.B
    if B.is_zero():
        return True
    H = hom_space(B, seq.E)
    targets = [seq.p @ h for h in H.basis]
    return solve_combination(targets, ModuleMap.identity(B)) is not None


class ExtSpace:
    """``Ext^1(M, N) = coker(Hom(P0, N) -> Hom(Omega M, N))``.

    Classes are represented by cocycles ``Omega M -> N``; the canonical basis
    consists of the Hom(Omega M, N) basis maps at the quotient-complement
    positions.
    """

    def __init__(self, M: Module, N: Module):
        self.M, self.N = M, N
        self.pres: Presentation = minimal_presentation(M)
        self.cocycles: HomSpace = hom_space(self.pres.omega, N)
        if self.cocycles.dim:
            restricted = [phi @ self.pres.iota for phi in hom_space(self.pres.P0.module, N).basis]
            self.quotient: Quotient = span_quotient(self.cocycles, restricted)
        else:
            self.quotient = Quotient.from_rows(M.field, 0, [])

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def cocycle(self, coords) -> ModuleMap:
        return self.cocycles.from_coords(self.quotient.lift(list(coords)))

    def coords_of(self, cocycle: ModuleMap) -> list:
        return self.quotient.coords(self.cocycles.coords(cocycle))

    def basis(self) -> list["ExtClass"]:
        f = self.M.field
        n = self.dim
        return [ExtClass(self, [f.one if i == j else f.zero for i in range(n)]) for j in range(n)]

    def __repr__(self):
        return f"Ext1({self.M!r}, {self.N!r}) dim {self.dim}"


@dataclass
class ExtClass:
    space: ExtSpace
    coords: list

    @property
    def cocycle(self) -> ModuleMap:
        return self.space.cocycle(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


@lru_cache(maxsize=16384)
def ext1(M: Module, N: Module) -> ExtSpace:
    return ExtSpace(M, N)


def ext_dim(M: Module, N: Module) -> int:
    return ext1(M, N).dim


def realize_extension(x: ExtClass) -> ShortExactSeq:
    """``0 -> N -> E -> M -> 0`` with E the pushout of ``Omega M -> P0`` along the cocycle."""
    sp = x.space
    pres = sp.pres
    N, M = sp.N, sp.M
    c = x.cocycle
    P0 = pres.P0.module
    S, incs, projs = direct_sum([N, P0])
    comps = [vstack(M.field, [c.comp[a], -pres.iota.comp[a]], pres.omega.dims[a])
             for a in M.cat.objects]
    qm = cokernel_data(ModuleMap(pres.omega, S, comps))
    E = qm.module
    i = qm.projection @ incs[0]
    p = qm.descend(pres.f0 @ projs[1])
    return ShortExactSeq(N, E, M, i, p)


# -- stable homs ---------------------------------------------------------------------

@dataclass
class StableHom:
    space: HomSpace
    quotient: Quotient

    @property
    def dim(self) -> int:
        return self.quotient.dim


@lru_cache(maxsize=16384)
def stable_hom_proj(M: Module, N: Module) -> StableHom:
    """``Hom(M, N)`` modulo maps factoring through the projective cover of N."""
    H = hom_space(M, N)
    if H.dim == 0:
        return StableHom(H, Quotient.from_rows(M.field, 0, []))
    cov = projective_cover(N)
    maps = [cov.f0 @ psi for psi in hom_space(M, cov.module).basis]
    return StableHom(H, span_quotient(H, maps))


@lru_cache(maxsize=16384)
def stable_hom_inj(N: Module, X: Module, margin: int = DEFAULT_MARGIN) -> StableHom:
    """``Hom(N, X)`` modulo maps factoring through the injective envelope of N.

    Refused (NotFiniteDimensional) when N is known not to be finite
    dimensional.
    """
    if is_fd(N, margin) is False:
        raise NotFiniteDimensional(f"{N!r} is not finite dimensional; no injective envelope")
    H = hom_space(N, X)
    if H.dim == 0:
        return StableHom(H, Quotient.from_rows(N.field, 0, []))
    env = injective_envelope(N)
    maps = [phi @ env.incl for phi in hom_space(env.I, X).basis]
    return StableHom(H, span_quotient(H, maps))


# -- defects -----------------------------------------------------------------------------

def covariant_defect_dim(seq: ShortExactSeq, X: Module) -> int:
    """``dim coker(Hom(E, X) -> Hom(A, X))``."""
    HA = hom_space(seq.A, X)
    if HA.dim == 0:
        return 0
    maps = [phi @ seq.i for phi in hom_space(seq.E, X).basis]
    return span_quotient(HA, maps).dim


def contravariant_defect_dim(seq: ShortExactSeq, M: Module) -> int:
    """``dim coker(Hom(M, E) -> Hom(M, B))``."""
    HB = hom_space(M, seq.B)
    if HB.dim == 0:
        return 0
    maps = [seq.p @ phi for phi in hom_space(M, seq.E).basis]
    return span_quotient(HB, maps).dim


def lift_endomorphism(pres: Presentation, phi: ModuleMap) -> tuple[ModuleMap, ModuleMap]:
    """Lift ``phi: M -> M`` to ``phi0: P0 -> P0`` and restrict to ``Omega M``."""
    P0 = pres.P0.module
    H = hom_space(P0, P0)
    targets = [pres.f0 @ h for h in H.basis]
    coeffs = solve_combination(targets, phi @ pres.f0)
    if coeffs is None:
        raise InternalError("endomorphism does not lift through the projective cover")
    phi0 = H.from_coords(coeffs)
    comps = []
    for a in pres.M.cat.objects:
        io = pres.iota.comp[a]
        comps.append(left_inverse(io) @ (phi0.comp[a] @ io))
    return phi0, ModuleMap(pres.omega, pres.omega, comps)
