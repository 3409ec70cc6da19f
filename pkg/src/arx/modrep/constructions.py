"""Standard modules and objectwise constructions (kernels, cokernels, pushouts, duals)."""
from __future__ import annotations

from typing import Sequence

from ..errors import InternalError, InvalidModule, InvalidObject, ShapeError
from ..exactla import Matrix, Quotient, hstack, vstack, kernel_basis, left_inverse, column_space_basis
from ..lincat import LinCat
from .module import Module, ModuleMap, direct_sum, same_category


def _check_object(cat: LinCat, a: int):
    if not isinstance(a, int) or not 0 <= a <= cat.L:
        raise InvalidObject(f"object {a!r} outside 0..{cat.L}")


def _revalidate(m: Module, what: str) -> Module:
    probs = m.problems()
    if probs:
        raise InternalError(f"{what} produced an invalid module: {probs[0]}")
    return m


def representable(cat: LinCat, a: int) -> Module:
    """``P_a = C(a, -)`` with the action by post-composition."""
    _check_object(cat, a)
    dims = [cat.dim(a, x) for x in cat.objects]
    act = {}
    for (x, y), names in cat.hom.items():
        if not names:
            continue
        if dims[x] and dims[y]:
            act[(x, y)] = [cat.post_matrix(a, x, y, j) for j in range(len(names))]
        else:
            act[(x, y)] = [Matrix.zeros(cat.field, dims[y], dims[x])] * len(names)
    return Module(cat, dims, act, projective=True, name=f"P:{a}")


def dualize(M: Module) -> Module:
    """``D M = Hom_k(M, k)`` over the opposite category (object ``x`` -> ``L - x``)."""
    cat = M.cat
    op = cat.opposite()
    L = cat.L
    dims = [M.dims[L - x] for x in op.objects]
    act = {}
    for (x, y), names in op.hom.items():
        if names:
            # op morphism x -> y is a C-morphism L-y -> L-x
            act[(x, y)] = [m.T for m in M.act[(L - y, L - x)]]
    name = None
    if M.name:
        name = M.name[2:-1] if M.name.startswith("D(") and M.name.endswith(")") else f"D({M.name})"
    return Module(op, dims, act, projective=False, name=name)


def dualize_map(phi: ModuleMap) -> ModuleMap:
    """``D phi: D N -> D M`` for ``phi: M -> N``."""
    L = phi.src.L
    src, dst = dualize(phi.dst), dualize(phi.src)
    return ModuleMap(src, dst, [phi.comp[L - x].T for x in range(L + 1)])


def injective_representable(cat: LinCat, a: int) -> Module:
    """``I_a = D C(-, a)``: the dual of the representable at ``L - a`` over the opposite."""
    _check_object(cat, a)
    m = dualize(representable(cat.opposite(), cat.L - a))
    return Module(cat, m.dims, m.act, name=f"I:{a}")


def trivial_character(cat: LinCat, a: int) -> list[Matrix]:
    """The 1-dimensional End(a)-module sending every basis morphism to 1.

    Valid whenever the basis of End(a) is closed under composition (quiver
    paths, group-like FI_G and VI bases).
    """
    f = cat.field
    return [Matrix(f, [[f.one]], 1) for _ in range(cat.dim(a, a))]


def simple(cat: LinCat, a: int, V: Sequence[Matrix] | None = None) -> Module:
    """The module equal to the End(a)-module ``V`` at ``a`` and zero elsewhere.

    ``V`` lists the action matrices of the basis of End(a); by default the
    trivial character is used. ``V`` must be simple for the result to be a
    simple module; this is not checked here.
    """
    _check_object(cat, a)
    f = cat.field
    if V is None:
        V = trivial_character(cat, a)
    V = list(V)
    if len(V) != cat.dim(a, a):
        raise InvalidModule(f"End({a})-module needs {cat.dim(a, a)} matrices")
    d = V[0].nrows if V else 0
    dims = [d if x == a else 0 for x in cat.objects]
    act = {}
    for (x, y), names in cat.hom.items():
        if not names:
            continue
        if x == y == a:
            act[(x, y)] = V
        else:
            act[(x, y)] = [Matrix.zeros(f, dims[y], dims[x])] * len(names)
    m = Module(cat, dims, act, name=f"S:{a}")
    probs = m.problems()
    if probs:
        raise InvalidModule(f"not an End({a})-module: {probs[0]}")
    return m


def quiver_representation(cat: LinCat, dims: Sequence[int], arrows: dict) -> Module:
    """Module over a path category from one matrix per arrow.

    Path morphisms act by the product of their arrow matrices; arrows left
    out act by zero.
    """
    q = cat.meta.get("quiver")
    if q is None:
        raise InvalidModule("not a path category; give the action of every basis morphism")
    f = cat.field
    dims = [int(d) for d in dims]
    if len(dims) != cat.L + 1:
        raise ShapeError(f"need {cat.L + 1} dimensions")
    src = {lab: (s, t) for s, t, lab in q.arrows}
    for lab, m in arrows.items():
        if lab not in src:
            raise InvalidModule(f"unknown arrow {lab!r}")
        s, t = src[lab]
        if m.shape != (dims[t], dims[s]):
            raise ShapeError(f"arrow {lab} needs a {dims[t]}x{dims[s]} matrix, got {m.shape}")
    act = {}
    for (a, b), names in cat.hom.items():
        mats = []
        for name in names:
            if a == b:
                mats.append(Matrix.identity(f, dims[a]))
                continue
            m = Matrix.identity(f, dims[a])
            for lab in name.split("."):
                s, t = src[lab]
                m = arrows.get(lab, Matrix.zeros(f, dims[t], dims[s])) @ m
            mats.append(m)
        if mats:
            act[(a, b)] = mats
    return _revalidate(Module(cat, dims, act), "quiver_representation")


def submodule(M: Module, bases: Sequence[Matrix]) -> tuple[Module, ModuleMap]:
    """Submodule spanned objectwise by the (independent) columns of ``bases[a]``.

    The columns must span an invariant subspace; the induced action is read
    off with a left inverse.
    """
    f = M.field
    cat = M.cat
    dims = [b.ncols for b in bases]
    linv = [left_inverse(b) for b in bases]
    act = {}
    for (x, y), names in cat.hom.items():
        if not names:
            continue
        mats = []
        for i in range(len(names)):
            if dims[x] and dims[y]:
                img = M.act[(x, y)][i] @ bases[x]
                mats.append(linv[y] @ img)
            else:
                mats.append(Matrix.zeros(f, dims[y], dims[x]))
        act[(x, y)] = mats
    sub = Module(cat, dims, act)
    incl = ModuleMap(sub, M, list(bases))
    for (x, y, i) in cat.generators():
        if dims[x] and M.act[(x, y)][i] @ bases[x] != bases[y] @ act[(x, y)][i]:
            raise InternalError("subspace family is not a submodule")
    return sub, incl


def kernel(phi: ModuleMap) -> tuple[Module, ModuleMap]:
    """``(ker phi, inclusion)``."""
    bases = [kernel_basis(m) for m in phi.comp]
    sub, incl = submodule(phi.src, bases)
    return _revalidate(sub, "kernel"), incl


def image(phi: ModuleMap) -> tuple[Module, ModuleMap]:
    """``(im phi, inclusion into the target)``."""
    bases = []
    for a, m in enumerate(phi.comp):
        if m.ncols == 0 or m.nrows == 0:
            bases.append(Matrix.zeros(phi.field, m.nrows, 0))
        else:
            bases.append(column_space_basis(m))
    sub, incl = submodule(phi.dst, bases)
    return _revalidate(sub, "image"), incl


class QuotientModule:
    """Objectwise quotients ``N(a) / W(a)`` together with the induced module."""

    def __init__(self, N: Module, quotients: list[Quotient]):
        self.N = N
        self.quotients = quotients
        f = N.field
        cat = N.cat
        dims = [q.dim for q in quotients]
        lifts = []
        for a, q in enumerate(quotients):
            cols = [q.lift([f.one if i == j else f.zero for i in range(q.dim)]) for j in range(q.dim)]
            lifts.append(Matrix.from_columns(f, cols, N.dims[a]))
        projs = [q.proj_matrix() if q.ambient_dim else Matrix.zeros(f, q.dim, 0) for q in quotients]
        act = {}
        for (x, y), names in cat.hom.items():
            if not names:
                continue
            mats = []
            for i in range(len(names)):
                if dims[x] and dims[y]:
                    mats.append(projs[y] @ (N.act[(x, y)][i] @ lifts[x]))
                else:
                    mats.append(Matrix.zeros(f, dims[y], dims[x]))
            act[(x, y)] = mats
        self.module = Module(cat, dims, act)
        self.lifts = lifts
        self.projection = ModuleMap(N, self.module, projs)

    def descend(self, phi: ModuleMap) -> ModuleMap:
        """The map ``N / W -> X`` induced by ``phi: N -> X`` vanishing on ``W``."""
        return ModuleMap(self.module, phi.dst, [m @ l for m, l in zip(phi.comp, self.lifts)])


def quotient_by(N: Module, spans: Sequence[Sequence[dict]]) -> QuotientModule:
    f = N.field
    qs = [Quotient.from_rows(f, N.dims[a], spans[a]) for a in N.cat.objects]
    return QuotientModule(N, qs)


def cokernel_data(phi: ModuleMap) -> QuotientModule:
    spans = []
    for m in phi.comp:
        spans.append([{i: x for i, x in enumerate(col) if x} for col in m.columns()])
    qm = quotient_by(phi.dst, spans)
    _revalidate(qm.module, "cokernel")
    return qm


def cokernel(phi: ModuleMap) -> tuple[Module, ModuleMap]:
    """``(coker phi, projection)``."""
    qm = cokernel_data(phi)
    return qm.module, qm.projection


def pushout(f1: ModuleMap, g1: ModuleMap) -> tuple[Module, ModuleMap, ModuleMap]:
    """Pushout of ``B <- A -> C``: returns ``(E, B -> E, C -> E)``."""
    if f1.src != g1.src:
        raise ShapeError("pushout needs maps out of the same module")
    B, C = f1.dst, g1.dst
    S, incs, _ = direct_sum([B, C])
    comps = [vstack(f1.field, [f1.comp[a], -g1.comp[a]], f1.src.dims[a]) for a in S.cat.objects]
    into = ModuleMap(f1.src, S, comps)
    E, q = cokernel(into)
    return E, q @ incs[0], q @ incs[1]


def is_submodule_of(sub: Sequence[Matrix], ambient: Sequence[Matrix]) -> bool:
    """Objectwise ``span(sub[a]) <= span(ambient[a])``."""
    for s, a in zip(sub, ambient):
        if s.ncols == 0:
            continue
        if a.ncols == 0:
            if not s.is_zero():
                return False
            continue
        if hstack(s.field, [a, s]).rank() != a.rank():
            return False
    return True


__all__ = [
    "representable", "injective_representable", "simple", "trivial_character",
    "dualize", "dualize_map", "kernel", "image", "cokernel", "cokernel_data",
    "pushout", "submodule", "quotient_by", "QuotientModule", "direct_sum",
    "is_submodule_of", "same_category",
]
