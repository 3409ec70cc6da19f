"""``arx`` command line.

Exit codes: 0 success, 1 mathematical-domain refusal or failing suite,
2 invalid input, 3 unsupported characteristic or scale.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .artheory.almost_split import almost_split
from .artheory.catalog import corpus
from .artheory.classify import classify_gar
from .artheory.ext import ext1, realize_extension
from .artheory.translate import tau_minus_report, tau_report
from .artheory.verify import SUITES, run_suite
from .dot import ar_quiver_dot
from .errors import ArxError, InputError
from .exactla import Field
from .io import (Workspace, dumps, load_category, map_json, module_summary, render_pretty)
from .lincat import hom_growth, validate
from .modrep.decompose import decompose, find_isomorphism
from .modrep.homs import hom_space
from .modrep.module import Module
from .modrep.projective import DEFAULT_MARGIN


class Context:
    def __init__(self, args):
        self.args = args
        self.field = Field.parse(args.field) if args.field else None
        self._cat = None
        self._ws = None

    @property
    def cat(self):
        if self._cat is None:
            if not self.args.cat:
                raise InputError("no category given (use --cat)")
            self._cat = load_category(self.args.cat, self.field)
        return self._cat

    @property
    def ws(self) -> Workspace:
        if self._ws is None:
            self._ws = Workspace(self.args.workspace, self.cat)
        return self._ws

    def module(self, ref: str) -> Module:
        return self.ws.module(ref)

    def identify(self, M: Module) -> str | None:
        """Name of an isomorphic corpus module, if any."""
        if M.is_zero():
            return "0"
        for Y in corpus(self.cat):
            if Y.dims == M.dims and find_isomorphism(M, Y) is not None:
                return Y.name
        return None

    def describe(self, M: Module, full: bool = False) -> dict:
        out = module_summary(M, full)
        out["identified"] = self.identify(M)
        return out


# -- cat ----------------------------------------------------------------------------

def cmd_cat(ctx: Context) -> tuple[dict, int]:
    a = ctx.args
    ctx.args.cat = a.spec
    cat = ctx.cat
    if a.action == "build":
        return cat.to_json(), 0
    if a.action == "validate":
        rep = validate(cat)
        return {"ok": rep.ok, "violations": rep.violations}, (0 if rep.ok else 2)
    rows = []
    objs = [a.obj] if a.obj is not None else list(cat.objects)
    for x in objs:
        g = hom_growth(cat, x, a.window)
        rows.append({"object": x, "dims": list(g.dims), "verdict": g.verdict, "bound": g.bound})
    return {"category": a.spec, "window": a.window, "growth": rows}, 0


# -- mod ----------------------------------------------------------------------------

def _mod_define(ctx):
    M = ctx.module(ctx.args.source)
    M.check()
    ctx.ws.define(ctx.args.name, M)
    if ctx.args.workspace:
        ctx.ws.save(ctx.args.cat)
    return {"name": ctx.args.name, "dims": list(M.dims), "module": M.to_json()}, 0


def _mod_hom(ctx):
    M, N = ctx.module(ctx.args.M), ctx.module(ctx.args.N)
    H = hom_space(M, N)
    return {"src": M.name, "dst": N.name, "dim": H.dim,
            "basis": [map_json(phi) for phi in H.basis]}, 0


def _mod_ext(ctx):
    M, N = ctx.module(ctx.args.M), ctx.module(ctx.args.N)
    sp = ext1(M, N)
    classes = []
    for k, x in enumerate(sp.basis()):
        seq = realize_extension(x)
        classes.append({"class": k, "middle_dims": list(seq.E.dims),
                        "middle": ctx.identify(seq.E)})
    return {"M": M.name, "N": N.name, "dim": sp.dim, "basis": classes}, 0


def _mod_tau(ctx, minus=False):
    M = ctx.module(ctx.args.M)
    rep = (tau_minus_report if minus else tau_report)(M, ctx.args.margin)
    out = {"input": ctx.describe(M), "result": ctx.describe(rep.module, full=not ctx.args.pretty),
           "flag": rep.flag, "margin_warning": rep.margin_warning}
    return out, 0


def _mod_ass(ctx):
    M = ctx.module(ctx.args.M)
    family = corpus(ctx.cat)
    res = almost_split(M, family=family, margin=ctx.args.margin)
    seq = res.seq
    middle = [dict(ctx.describe(X), multiplicity=m) for X, m in decompose(seq.E).summands]
    bad = [c.X.name for c in res.checks if not c.ok]
    out = {
        "left": ctx.describe(seq.A),
        "middle": middle,
        "middle_dims": list(seq.E.dims),
        "right": ctx.describe(seq.B),
        "verification": {
            "non_split": not res.split,
            "ext_dim": res.ext_dim,
            "socle_dim": res.socle_dim,
            "family_size": len(family),
            "nonretractions_checked": sum(c.nonretractions for c in res.checks),
            "failures": bad,
            "margin_warning": res.margin_warning,
        },
    }
    return out, (0 if res.ok else 1)


def _mod_classify(ctx):
    M = ctx.module(ctx.args.M)
    cl = classify_gar(M, ctx.args.margin, family=corpus(ctx.cat), strict=ctx.args.strict)
    out = {
        "module": ctx.describe(M),
        "r_member": cl.r_member,
        "l_member": cl.l_member,
        "summands": [dict(ctx.describe(s.module), multiplicity=s.multiplicity,
                          verdict=s.verdict, fd=str(s.fd)) for s in cl.summands],
    }
    if cl.audit:
        out["ext_audit"] = {"note": "evidence only", "ext1_into_M": [
            {"test": name, "dim": d} for name, d in cl.audit]}
    return out, 0


def _mod_decompose(ctx):
    M = ctx.module(ctx.args.M)
    dec = decompose(M)
    unresolved = [{"dims": list(u.module.dims), "top_dim": u.d} for u in dec.unresolved]
    return {"module": ctx.describe(M),
            "summands": [dict(ctx.describe(X), multiplicity=m) for X, m in dec.summands],
            "indecomposable": dec.indecomposable,
            "unresolved": unresolved}, 0


MOD_ACTIONS = {
    "define": _mod_define,
    "hom": _mod_hom,
    "ext": _mod_ext,
    "tau": _mod_tau,
    "tauminus": lambda ctx: _mod_tau(ctx, minus=True),
    "ass": _mod_ass,
    "classify": _mod_classify,
    "decompose": _mod_decompose,
}


def cmd_mod(ctx):
    return MOD_ACTIONS[ctx.args.action](ctx)


def cmd_verify(ctx):
    rep = run_suite(ctx.args.suite, ctx.cat, ctx.args.margin, cat_name=ctx.args.cat)
    return rep.to_json(), (0 if rep.ok else 1)


def cmd_dot(ctx):
    return ar_quiver_dot(ctx.cat, ctx.args.margin), 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cat", help="builtin name (linear:8, fi:4, ...) or category/quiver file")
    common.add_argument("--field", help="rational (default) or fp:<p>")
    common.add_argument("--margin", type=int, default=DEFAULT_MARGIN, help="boundary margin width")
    common.add_argument("--workspace", help="workspace JSON holding named modules")
    common.add_argument("--pretty", action="store_true", help="human-readable tables instead of JSON")
    common.add_argument("--out", help="write output to this file")

    p = argparse.ArgumentParser(prog="arx", description="Exact AR theory over truncated triangular categories.")
    p.add_argument("--version", action="version", version=f"arx {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("cat", help="build, validate or inspect a category")
    csub = pc.add_subparsers(dest="action", required=True)
    for name in ("build", "validate", "growth"):
        q = csub.add_parser(name, parents=[common])
        q.add_argument("spec", help="builtin name or file")
        if name == "growth":
            q.add_argument("--obj", type=int, help="source object (default: all)")
            q.add_argument("--window", type=int, default=3, help="tail length for the verdict")
    pc.set_defaults(func=cmd_cat)

    pm = sub.add_parser("mod", help="module operations")
    msub = pm.add_subparsers(dest="action", required=True)
    q = msub.add_parser("define", parents=[common], help="register a module in the workspace")
    q.add_argument("name")
    q.add_argument("source", help="named constructor or module JSON file")
    for name in ("hom", "ext"):
        q = msub.add_parser(name, parents=[common])
        q.add_argument("M")
        q.add_argument("N")
    for name in ("tau", "tauminus", "ass", "classify", "decompose"):
        q = msub.add_parser(name, parents=[common])
        q.add_argument("M")
        if name == "classify":
            q.add_argument("--strict", action="store_true", help="fail on backends without a rule")
    pm.set_defaults(func=cmd_mod)

    pv = sub.add_parser("verify", parents=[common], help="run a verification suite")
    pv.add_argument("suite", choices=sorted(SUITES))
    pv.set_defaults(func=cmd_verify)

    pd = sub.add_parser("dot", parents=[common], help="DOT diagrams")
    pd.add_argument("what", choices=["arquiver"])
    pd.set_defaults(func=cmd_dot)
    return p


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = Context(args)
        payload, code = args.func(ctx)
        if isinstance(payload, str):
            text = payload
        elif args.pretty:
            text = render_pretty(payload)
        else:
            text = dumps(payload)
        _emit(text, args.out)
        return code
    except ArxError as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
