"""Named modules, the interval catalog of the linear quiver, and test corpora."""
from __future__ import annotations

import re
from functools import lru_cache

from ..errors import InputError, WrongBackend
from ..exactla import Matrix
from ..lincat import LinCat
from ..modrep.constructions import cokernel, injective_representable, representable, simple
from ..modrep.module import Module, ModuleMap
from ..modrep.projective import minimal_presentation
from .ext import ShortExactSeq, ext1, realize_extension


def _require_linear(cat: LinCat):
    if cat.backend != "linear":
        raise WrongBackend(f"the interval catalog needs the linear quiver, not {cat.backend!r}")


def interval(cat: LinCat, i: int, j: int) -> Module:
    """``X_ij``: k on the objects i..j, identity maps inside the interval."""
    _require_linear(cat)
    if not 0 <= i <= j <= cat.L:
        raise InputError(f"need 0 <= i <= j <= {cat.L}, got X:{i}:{j}")
    f = cat.field
    dims = [1 if i <= a <= j else 0 for a in cat.objects]
    act = {}
    for (a, b), names in cat.hom.items():
        if names:
            inside = i <= a and b <= j
            act[(a, b)] = [Matrix(f, [[f.one]], 1) if inside else Matrix.zeros(f, dims[b], dims[a])]
    return Module(cat, dims, act, projective=(j == cat.L), name=f"X:{i}:{j}")


def linear_catalog(cat: LinCat) -> list[Module]:
    """All ``X_ij`` with ``0 <= i <= j <= L`` (ordered by i, then j)."""
    _require_linear(cat)
    return [interval(cat, i, j) for i in cat.objects for j in range(i, cat.L + 1)]


def path_cokernel(cat: LinCat, a: int, b: int, k: int) -> Module:
    """Cokernel of ``P_b -> P_a`` sending ``id_b`` to the basis morphism ``k`` of C(a, b)."""
    Pa, Pb = representable(cat, a), representable(cat, b)
    comps = []
    for x in cat.objects:
        if Pb.dims[x]:
            comps.append(cat.pre_matrix(a, b, x, k))
        else:
            comps.append(Matrix.zeros(cat.field, Pa.dims[x], 0))
    C, _ = cokernel(ModuleMap(Pb, Pa, comps))
    return Module(cat, C.dims, C.act, name=f"C:{a}:{b}:{k}")


def resolve(cat: LinCat, name: str) -> Module:
    """Named constructors ``P:a``, ``I:a``, ``S:a``, ``X:i:j``, ``C:a:b:k``."""
    m = re.fullmatch(r"([PISXC]):(\d+)(?::(\d+))?(?::(\d+))?", name.strip())
    if not m:
        raise InputError(f"unknown module name {name!r}")
    kind = m.group(1)
    nums = [int(g) for g in m.groups()[1:] if g is not None]
    if kind in "PIS" and len(nums) == 1:
        a = nums[0]
        return {"P": representable, "I": injective_representable, "S": simple}[kind](cat, a)
    if kind == "X" and len(nums) == 2:
        return interval(cat, *nums)
    if kind == "C" and len(nums) == 3:
        a, b, k = nums
        if not (0 <= a < b <= cat.L and 0 <= k < cat.dim(a, b)):
            raise InputError(f"no basis morphism {k} in C({a},{b})")
        return path_cokernel(cat, a, b, k)
    raise InputError(f"unknown module name {name!r}")


@lru_cache(maxsize=64)
def _corpus(cat: LinCat) -> tuple[Module, ...]:
    if cat.backend == "linear":
        return tuple(linear_catalog(cat))
    out = []
    for a in cat.objects:
        out.append(representable(cat, a))
        out.append(injective_representable(cat, a))
        out.append(simple(cat, a))
    seen = set(out)
    for a in cat.objects:
        for b in range(a + 1, cat.L + 1):
            if cat.dim(a, b):
                C = path_cokernel(cat, a, b, 0)
                if not C.is_zero() and C not in seen:
                    seen.add(C)
                    out.append(C)
    return tuple(out)


def corpus(cat: LinCat) -> list[Module]:
    """The test family: the interval catalog for the linear quiver; otherwise
    every P_a, I_a, S_a plus cokernels of maps between representables."""
    return list(_corpus(cat))


def ses_pool(cat: LinCat, minimum: int = 20) -> list[tuple[str, ShortExactSeq]]:
    """Short exact sequences for defect checks.

    Presentation sequences ``0 -> Omega M -> P0 -> M -> 0`` and realisations
    of basis Ext classes between corpus members, in deterministic order.
    """
    mods = corpus(cat)
    pool = []
    for M in mods:
        pres = minimal_presentation(M)
        if not pres.omega.is_zero():
            pool.append((f"pres({M.name})", ShortExactSeq(pres.omega, pres.P0.module, M,
                                                          pres.iota, pres.f0)))
    for M in mods:
        for N in mods:
            sp = ext1(M, N)
            if sp.dim:
                pool.append((f"ext({M.name},{N.name})", realize_extension(sp.basis()[0])))
            if len(pool) >= 3 * minimum:
                return pool
    return pool
