"""Endomorphism algebras, isomorphism search and splitting into indecomposables."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from ..algebra import FDAlgebra, algebra_radical
from ..exactla import Field, Matrix, solve_right, NoSolution
from .constructions import image
from .homs import hom_space, HomSpace
from .module import Module, ModuleMap

DEFAULT_BUDGET = 64
SEED = 20240611


@dataclass(frozen=True)
class EndAlgebra:
    """``End(M)`` in the canonical Hom basis, with its radical."""

    M: Module
    space: HomSpace
    algebra: FDAlgebra
    radical: tuple

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def top_dim(self) -> int:
        return self.dim - len(self.radical)


@lru_cache(maxsize=2048)
def end_algebra(M: Module) -> EndAlgebra:
    H = hom_space(M, M)
    f = M.field

    def product(i, j):
        # b_i * b_j = b_i o b_j
        c = H.coords(H.map(i) @ H.map(j))
        return {k: x for k, x in enumerate(c) if x}

    unit = H.coords(ModuleMap.identity(M)) if H.dim else []
    alg = FDAlgebra(f, H.dim, product, unit=unit)
    rad = tuple(tuple(v) for v in algebra_radical(alg))
    return EndAlgebra(M, H, alg, rad)


def _random_coeffs(field: Field, rng: random.Random, n: int) -> list:
    if field.p is None:
        return [field(rng.randint(-9, 9)) for _ in range(n)]
    return [rng.randrange(field.p) for _ in range(n)]


def find_isomorphism(M: Module, N: Module, tries: int = 24, seed: int = SEED) -> ModuleMap | None:
    """An explicit isomorphism ``M -> N`` if one is found.

    Basis maps are tried first, then seeded random combinations. Over an
    infinite field a generic combination is invertible as soon as any
    element of Hom(M, N) is, so a miss is strong (not absolute) evidence
    of non-isomorphism.
    """
    if M.dims != N.dims:
        return None
    if M.is_zero():
        return ModuleMap.zero(M, N)
    H = hom_space(M, N)
    if H.dim == 0:
        return None
    for i in range(H.dim):
        phi = H.map(i)
        if phi.is_iso():
            return phi
    rng = random.Random(seed)
    for _ in range(tries):
        phi = H.from_coords(_random_coeffs(M.field, rng, H.dim))
        if phi.is_iso():
            return phi
    return None


def is_isomorphic(M: Module, N: Module) -> bool:
    return find_isomorphism(M, N) is not None


# -- polynomial helpers (sympy) ----------------------------------------------------

def _to_sympy(field: Field, coeffs: list):
    import sympy
    x = sympy.Symbol("x")
    if field.p is None:
        vals = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in coeffs]
        return sympy.Poly(list(reversed(vals)), x, domain="QQ")
    return sympy.Poly(list(reversed([int(c) for c in coeffs])), x, modulus=field.p)


def _from_sympy(field: Field, poly) -> list:
    """Coefficients in increasing degree."""
    out = []
    for c in reversed(poly.all_coeffs()):
        if field.p is None:
            out.append(field(int(c.p)) / field(int(c.q)))
        else:
            out.append(field(int(c)))
    return out


def _powers(alg: FDAlgebra, x: list, unit: list):
    yield unit
    cur = unit
    while True:
        cur = alg.mul(x, cur)
        yield cur


def minimal_polynomial(alg: FDAlgebra, x: list, unit: list) -> list:
    """Coefficients (increasing degree, monic) of the minimal polynomial of ``x``."""
    f = alg.field
    cols = []
    for pw in _powers(alg, x, unit):
        if cols:
            a = Matrix.from_columns(f, cols, alg.dim)
            try:
                sol = solve_right(a, Matrix.from_columns(f, [pw], alg.dim))
                return [f.neg(r[0]) for r in sol.rows] + [f.one]
            except NoSolution:
                pass
        cols.append(pw)


def _poly_eval(alg: FDAlgebra, coeffs: list, x: list, unit: list) -> list:
    f = alg.field
    acc = [f.zero] * alg.dim
    for c in reversed(coeffs):
        acc = alg.mul(acc, x)
        acc = [a + c * u for a, u in zip(acc, unit)]
        if f.p is not None:
            acc = [a % f.p for a in acc]
    return acc


def splitting_idempotent(alg: FDAlgebra, x: list, unit: list) -> list | None:
    """A nontrivial idempotent in k[x] when the minimal polynomial has coprime factors."""
    f = alg.field
    mp = minimal_polynomial(alg, x, unit)
    if len(mp) <= 2:
        return None
    poly = _to_sympy(f, mp)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    g, mult = factors[0]
    u = g ** mult
    v = poly.exquo(u)
    s, t, h = u.gcdex(v)
    # s u + t v = 1 ; e = t v is 1 mod u and 0 mod v
    e_poly = (t * v).rem(poly)
    e = _poly_eval(alg, _from_sympy(f, e_poly), x, unit)
    if not any(e) or e == unit:
        return None
    return e


# -- decomposition ----------------------------------------------------------------

@dataclass
class ProbablyIndecomposable:
    module: Module
    d: int   # dim End(M) / J

    def __str__(self):
        return f"ProbablyIndecomposable({self.d})"


@dataclass
class Decomposition:
    summands: list            # list of (Module, multiplicity)
    unresolved: list           # ProbablyIndecomposable verdicts among the summands

    @property
    def indecomposable(self) -> bool:
        return len(self.summands) == 1 and self.summands[0][1] == 1 and not self.unresolved


def _candidates(alg: FDAlgebra, rng: random.Random, budget: int):
    n = alg.dim
    f = alg.field
    for i in range(n):
        yield [f.one if k == i else f.zero for k in range(n)]
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if count >= budget // 2:
                break
            v = [f.zero] * n
            v[i], v[j] = f.one, f.one
            yield v
            count += 1
    for _ in range(budget):
        yield _random_coeffs(f, rng, n)


def split_once(M: Module, budget: int = DEFAULT_BUDGET, seed: int = SEED):
    """Either ``(e-image, (1-e)-image)`` or an indecomposability verdict."""
    E = end_algebra(M)
    if E.top_dim <= 1:
        return None
    alg = E.algebra
    unit = alg.unit
    rng = random.Random(seed)
    for x in _candidates(alg, rng, budget):
        e = splitting_idempotent(alg, x, unit)
        if e is None:
            continue
        f = M.field
        one_minus = [u - v for u, v in zip(unit, e)]
        if f.p is not None:
            one_minus = [v % f.p for v in one_minus]
        A, _ = image(E.space.from_coords(e))
        B, _ = image(E.space.from_coords(one_minus))
        return A, B
    return ProbablyIndecomposable(M, E.top_dim)


def decompose(M: Module, budget: int = DEFAULT_BUDGET, seed: int = SEED) -> Decomposition:
    """Split ``M`` into indecomposables (grouped into isomorphism classes)."""
    if M.is_zero():
        return Decomposition([], [])
    stack = [M]
    pieces, unresolved = [], []
    while stack:
        X = stack.pop()
        res = split_once(X, budget, seed)
        if res is None:
            pieces.append(X)
        elif isinstance(res, ProbablyIndecomposable):
            pieces.append(X)
            unresolved.append(res)
        else:
            stack.extend(reversed(res))
    classes: list[list] = []
    for X in pieces:
        X = Module(X.cat, X.dims, X.act, projective=M.projective)
        for cl in classes:
            if find_isomorphism(cl[0], X) is not None:
                cl[1] += 1
                break
        else:
            classes.append([X, 1])
    return Decomposition([(m, k) for m, k in classes], unresolved)


def is_indecomposable(M: Module) -> bool:
    if M.is_zero():
        return False
    return end_algebra(M).top_dim == 1 or decompose(M).indecomposable
