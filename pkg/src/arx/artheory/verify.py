"""Verification suites: invariants swept over a corpus, reported as flat check records.

Every check is a pair of integers that must agree. Checks whose supporting
presentations reach into the boundary margin carry ``margin_warning``; a
failing check without that flag is a hard failure.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable

from ..errors import IsProjective, NotFiniteDimensional, WrongBackend
from ..lincat import LinCat
from ..modrep.constructions import injective_representable, representable
from ..modrep.decompose import decompose, find_isomorphism
from ..modrep.homs import hom_dim
from ..modrep.module import Module
from ..modrep.projective import (DEFAULT_MARGIN, FD_UNCLEAR, is_fd, minimal_presentation,
                                 syzygy, touches_margin)
from .almost_split import almost_split
from .catalog import corpus, ses_pool
from .classify import NO, YES_INJ, classify_gar
from .ext import (contravariant_defect_dim, covariant_defect_dim, ext_dim, stable_hom_inj,
                  stable_hom_proj)
from .translate import tau_minus_report, tau_report, trtr_check

QUIVER_BACKENDS = ("linear", "quiver", "star_ray")
FI_LIKE = ("fi", "fi_g", "vi")


@dataclass
class Check:
    check: str
    inputs: list
    lhs: int
    rhs: int
    passed: bool
    margin_warning: bool = False
    skip_reason: str | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def make_check(name, inputs, lhs, rhs, warn=False) -> Check:
    return Check(name, [str(x) for x in inputs], int(lhs), int(rhs), lhs == rhs, bool(warn))


def skipped(name, inputs, reason) -> Check:
    return Check(name, [str(x) for x in inputs], 0, 0, True, False, reason)


@dataclass
class SuiteReport:
    suite: str
    category: str
    checks: list = field(default_factory=list)

    @property
    def hard_failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed and not c.margin_warning]

    @property
    def margin_warned(self) -> list[Check]:
        return [c for c in self.checks if c.margin_warning]

    @property
    def ok(self) -> bool:
        return not self.hard_failures

    def summary(self) -> dict:
        run = [c for c in self.checks if c.skip_reason is None]
        return {
            "suite": self.suite,
            "category": self.category,
            "checks": len(run),
            "passed": sum(c.passed for c in run),
            "hard_failures": len(self.hard_failures),
            "margin_warned": len(self.margin_warned),
            "margin_warned_failures": sum(1 for c in self.margin_warned if not c.passed),
            "skipped": len(self.checks) - len(run),
        }

    def to_json(self) -> dict:
        ordered = sorted(self.checks, key=lambda c: (c.check, c.inputs))
        return {"summary": self.summary(), "checks": [c.to_json() for c in ordered]}


def _label(M: Module) -> str:
    return M.name or "dims(" + ",".join(map(str, M.dims)) + ")"


def _pres_warn(M: Module, margin: int) -> bool:
    return touches_margin(minimal_presentation(M).generator_objects(), M.L, margin)


def indecomposables(cat: LinCat) -> list[Module]:
    """Indecomposable summands of the corpus, one per isomorphism class."""
    out: list[Module] = []
    for M in corpus(cat):
        dec = decompose(M)
        whole = len(dec.summands) == 1 and dec.summands[0][1] == 1
        for k, (X, _) in enumerate(dec.summands):
            if not any(Y.dims == X.dims and find_isomorphism(Y, X) is not None for Y in out):
                out.append(X.with_name(_label(M) if whole else f"{_label(M)}[{k}]"))
    return out


# -- suites ---------------------------------------------------------------------------

def suite_yoneda(cat: LinCat, margin: int = DEFAULT_MARGIN) -> list[Check]:
    """``dim Hom(P_a, M) = dim M(a) = dim Hom(M, I_a)``."""
    out = []
    P = [representable(cat, a) for a in cat.objects]
    I = [injective_representable(cat, a) for a in cat.objects]
    for M in corpus(cat):
        for a in cat.objects:
            out.append(make_check("yoneda.proj", [_label(M), a], hom_dim(P[a], M), M.dims[a]))
            out.append(make_check("yoneda.inj", [_label(M), a], hom_dim(M, I[a]), M.dims[a]))
    return out


def suite_arformula(cat: LinCat, margin: int = DEFAULT_MARGIN) -> list[Check]:
    """``Ext^1(N, tau M) = stable Hom_P(M, N)`` and, for fd N, ``stable Hom_I(N, tau M) = Ext^1(M, N)``."""
    out = []
    mods = corpus(cat)
    for M in mods:
        rep = tau_report(M, margin)
        T = rep.module
        for N in mods:
            lab = [_label(M), _label(N)]
            out.append(make_check("arformula.1", lab, ext_dim(N, T), stable_hom_proj(M, N).dim,
                                  rep.margin_warning))
            fd = is_fd(N, margin)
            if fd is True:
                out.append(make_check("arformula.2", lab, stable_hom_inj(N, T, margin).dim,
                                      ext_dim(M, N), rep.margin_warning))
            else:
                out.append(skipped("arformula.2", lab,
                                   "N not finite dimensional" if fd is False else "N finiteness unclear at margin"))
    return out


def suite_almostsplit(cat: LinCat, margin: int = DEFAULT_MARGIN) -> list[Check]:
    """Non-split, left term ``tau M``, and every non-retraction from the family lifts."""
    out = []
    family = corpus(cat)
    for M in indecomposables(cat):
        lab = _label(M)
        if minimal_presentation(M).is_projective():
            continue
        rep = tau_report(M, margin)
        warn = rep.margin_warning or is_fd(rep.module, margin) == FD_UNCLEAR
        a = almost_split(M, family=family, margin=margin, check_indecomposable=False)
        out.append(make_check("almostsplit.nonsplit", [lab], int(not a.split), 1, warn))
        iso = find_isomorphism(a.seq.A, rep.module) is not None
        out.append(make_check("almostsplit.left_is_tau", [lab], int(iso), 1, warn))
        for c in a.checks:
            out.append(make_check("almostsplit.factor", [lab, _label(c.X)], c.lifted,
                                  c.nonretractions, warn))
    return out


def suite_tautau(cat: LinCat, margin: int = DEFAULT_MARGIN) -> list[Check]:
    """``tau^- tau M = M`` (M non-projective) and ``tau tau^- M = M`` (M fd non-injective)."""
    out = []
    for M in indecomposables(cat):
        lab = [_label(M)]
        if not minimal_presentation(M).is_projective():
            rep = tau_report(M, margin)
            try:
                back = tau_minus_report(rep.module, margin)
                iso = find_isomorphism(M, back.module) is not None
                out.append(make_check("tautau.minus_after_tau", lab, int(iso), 1,
                                      rep.margin_warning or back.margin_warning))
            except NotFiniteDimensional:
                out.append(skipped("tautau.minus_after_tau", lab, "tau M not finite dimensional"))
        try:
            fwd = tau_minus_report(M, margin)
        except NotFiniteDimensional:
            out.append(skipped("tautau.tau_after_minus", lab, "M not finite dimensional"))
            continue
        if fwd.flag == "Injective":
            continue
        back = tau_report(fwd.module, margin)
        iso = find_isomorphism(M, back.module) is not None
        out.append(make_check("tautau.tau_after_minus", lab, int(iso), 1,
                              fwd.margin_warning or back.margin_warning))
    return out


def suite_trtr(cat: LinCat, margin: int = DEFAULT_MARGIN) -> list[Check]:
    out = []
    for M in indecomposables(cat):
        try:
            r = trtr_check(M)
        except IsProjective:
            continue
        out.append(make_check("trtr", [_label(M)], int(r.ok), 1, _pres_warn(M, margin)))
    return out


def _interval_expectation(M: Module, margin: int) -> tuple[int, bool]:
    """Membership of an interval module in add(fd + {P_0}) read off its support.

    Returns (expected, warn); intervals ending inside the margin band are
    fd in the untruncated category but not decidable here.
    """
    supp = M.support()
    i, j = min(supp), max(supp)
    L = M.L
    if j == L:
        return int(i == 0), False
    return 1, j > L - margin


def suite_classify(cat: LinCat, margin: int = DEFAULT_MARGIN) -> list[Check]:
    """Left-membership against the known description, plus Ext witnesses."""
    out = []
    family = corpus(cat)
    for M in family:
        lab = [_label(M)]
        cl = classify_gar(M, margin)
        got = int(cl.l_yes)
        out.append(make_check("classify.r_member", lab, int(cl.r_member), 1))
        if cat.backend == "linear":
            exp, warn = _interval_expectation(M, margin)
        elif cat.backend in FI_LIKE:
            exp = int(all(s.fd is True or minimal_presentation(s.module).is_projective()
                          for s in cl.summands))
            warn = any(s.fd == FD_UNCLEAR for s in cl.summands)
        else:
            out.append(skipped("classify.l_member", lab, f"no rule for backend {cat.backend}"))
            continue
        out.append(make_check("classify.l_member", lab, got, exp, warn))
        if cl.l_member == YES_INJ:
            inside = [T for T in family if not _pres_warn(T, margin)]
            near = [T for T in family if _pres_warn(T, margin)]
            out.append(make_check("classify.injective_ext_vanishes", lab,
                                  max((ext_dim(T, M) for T in inside), default=0), 0))
            if near:
                out.append(make_check("classify.injective_ext_vanishes_at_margin", lab,
                                      max(ext_dim(T, M) for T in near), 0, True))
        elif cl.l_member == NO:
            witness = next((T for T in family if ext_dim(T, M)), None)
            if witness is not None:
                out.append(make_check("classify.no_witness", lab + [_label(witness)], 1, 1))
            else:
                out.append(skipped("classify.no_witness", lab, "no Ext witness in the family"))
    return out


def suite_defect(cat: LinCat, margin: int = DEFAULT_MARGIN, minimum: int = 20) -> list[Check]:
    """``dim delta_*(tau M) = dim delta^*(M)`` for pool sequences and corpus M with fd tau M."""
    out = []
    pool = ses_pool(cat, minimum)
    if len(pool) < minimum:
        out.append(skipped("defect.pool_size", [len(pool)], f"pool smaller than {minimum}"))
    for M in corpus(cat):
        rep = tau_report(M, margin)
        fd = is_fd(rep.module, margin)
        if fd is not True:
            out.append(skipped("defect", [_label(M)], "tau M not finite dimensional within margin"))
            continue
        for name, seq in pool:
            out.append(make_check("defect", [_label(M), name],
                                  covariant_defect_dim(seq, rep.module),
                                  contravariant_defect_dim(seq, M), rep.margin_warning))
    return out


def suite_hereditary(cat: LinCat, margin: int = DEFAULT_MARGIN) -> list[Check]:
    """``Omega^2 M = 0`` on path categories of quivers."""
    if cat.backend not in QUIVER_BACKENDS:
        raise WrongBackend(f"hereditary sweep applies to quiver backends, not {cat.backend!r}")
    out = []
    for M in corpus(cat):
        om, _ = syzygy(M)
        om2, _ = syzygy(om)
        out.append(make_check("hereditary", [_label(M)], om2.total_dim, 0))
    return out


def suite_fiinj(cat: LinCat, margin: int = DEFAULT_MARGIN) -> list[Check]:
    """Finitely generated projectives are injective objects: ``Ext^1(T, P_a) = 0``."""
    if cat.backend not in FI_LIKE:
        raise WrongBackend(f"fiinj applies to FI/FI_G/VI backends, not {cat.backend!r}")
    out = []
    for a in cat.objects:
        P = representable(cat, a)
        for T in corpus(cat):
            warn = _pres_warn(T, margin) or a > cat.L - margin
            out.append(make_check("fiinj", [_label(T), f"P:{a}"], ext_dim(T, P), 0, warn))
    return out


SUITES: dict[str, Callable] = {
    "yoneda": suite_yoneda,
    "arformula": suite_arformula,
    "almostsplit": suite_almostsplit,
    "tautau": suite_tautau,
    "trtr": suite_trtr,
    "classify": suite_classify,
    "defect": suite_defect,
    "hereditary": suite_hereditary,
    "fiinj": suite_fiinj,
}


def run_suite(name: str, cat: LinCat, margin: int = DEFAULT_MARGIN, cat_name: str | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    return SuiteReport(name, cat_name or cat.meta.get("name", repr(cat)), SUITES[name](cat, margin))
