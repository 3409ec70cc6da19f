"""Membership in the left/right parts of the generalized AR duality.

Every finitely presented module lies in the right part. The left part is
``add(fd modules + injective objects of fp C)``; which projectives count as
injective objects depends on the category:

* linear / uniformly interval finite quivers: only ``P_0``;
* FI, FI_G, VI: every finitely generated projective.

Other categories have no known rule; the classifier then reports the
finite-dimensionality component plus an Ext-vanishing audit over a test
family, which is evidence and not a proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import UnknownBackendRule
from ..lincat import hom_growth
from ..modrep.constructions import representable
from ..modrep.decompose import decompose, find_isomorphism
from ..modrep.module import Module
from ..modrep.projective import DEFAULT_MARGIN, FD_UNCLEAR, is_fd, is_projective
from .ext import ext_dim

QUIVER_BACKENDS = ("linear", "quiver", "star_ray")
PROJECTIVE_INJECTIVE_BACKENDS = ("fi", "fi_g", "vi")

YES_FD = "Yes(FiniteDimensional)"
YES_INJ = "Yes(InjectiveObject)"
NO = "No"
UNCLEAR = "BoundaryUnclear"
UNKNOWN = "UnknownRule"


@dataclass
class SummandVerdict:
    module: Module
    multiplicity: int
    verdict: str
    fd: object


@dataclass
class Classification:
    M: Module
    r_member: bool
    l_member: str
    summands: list
    audit: list = field(default_factory=list)   # (test module name, dim Ext^1(T, M))

    @property
    def l_yes(self) -> bool:
        return self.l_member.startswith("Yes")


def _uniformly_bounded(cat, margin: int) -> bool:
    return all(hom_growth(cat, a, margin).verdict == "Bounded"
               for a in range(0, max(1, cat.L - margin + 1)))


def _injective_rule(X: Module, margin: int) -> str:
    cat = X.cat
    backend = cat.backend
    if backend in QUIVER_BACKENDS and (backend == "linear" or _uniformly_bounded(cat, margin)):
        return YES_INJ if find_isomorphism(X, representable(cat, 0)) is not None else NO
    if backend in PROJECTIVE_INJECTIVE_BACKENDS:
        return YES_INJ if is_projective(X) else NO
    return UNKNOWN


def classify_gar(M: Module, margin: int = DEFAULT_MARGIN, family: Sequence[Module] = (),
                 strict: bool = False) -> Classification:
    """Classify each indecomposable summand, then combine.

    The combined left-membership is Yes only if every summand is Yes; a No
    summand makes it No; otherwise the unresolved verdict is reported.
    """
    dec = decompose(M)
    verdicts = []
    for X, mult in dec.summands:
        fd = is_fd(X, margin)
        if fd is True:
            v = YES_FD
        elif fd == FD_UNCLEAR:
            v = UNCLEAR
        else:
            v = _injective_rule(X, margin)
            if v == UNKNOWN and strict:
                raise UnknownBackendRule(f"no injectivity rule for backend {X.cat.backend!r}")
        verdicts.append(SummandVerdict(X, mult, v, fd))
    vs = [s.verdict for s in verdicts]
    if not vs or all(v.startswith("Yes") for v in vs):
        l = "Yes" if not vs else (YES_FD if all(v == YES_FD for v in vs) else
                                  (YES_INJ if all(v == YES_INJ for v in vs) else "Yes"))
    elif NO in vs:
        l = NO
    elif UNKNOWN in vs:
        l = UNKNOWN
    else:
        l = UNCLEAR
    audit = []
    if l == UNKNOWN:
        for T in family:
            audit.append((T.name, ext_dim(T, M)))
    return Classification(M, True, l, verdicts, audit)
