"""Finite presentations of triangular k-linear Hom-finite categories.

A :class:`LinCat` has objects ``0..L``; ``C(a, b)`` has a finite ordered
basis of labelled morphisms and is empty whenever ``b < a``. Composition is
stored as structure constants: ``comp[(a, b, c)][i][j]`` holds the
coordinates of ``g_j o f_i`` in the basis of ``C(a, c)``, for ``f_i`` in
``C(a, b)`` and ``g_j`` in ``C(b, c)``, as a tuple of ``(index, coeff)``
pairs.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .algebra import FDAlgebra, algebra_radical
from .errors import InvalidCategory, InputError
from .exactla import Field, Matrix, SparseEchelon

DEFAULT_WINDOW = 3


def _sparse(vec) -> tuple:
    if isinstance(vec, dict):
        return tuple(sorted((k, v) for k, v in vec.items() if v))
    return tuple((k, v) for k, v in enumerate(vec) if v)


@dataclass
class ValidationReport:
    violations: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "Ok" if self.ok else "\n".join(self.violations)


class LinCat:
    def __init__(self, field: Field, L: int, hom: dict, comp: dict, ident: dict,
                 backend: str | None = None, meta: dict | None = None,
                 semisimple: bool | None = None):
        self.field = field
        self.L = L
        self.hom = {k: tuple(v) for k, v in hom.items()}
        self.comp = comp
        self.ident = {a: _sparse(v) for a, v in ident.items()}
        self.backend = backend
        self.meta = dict(meta or {})
        self.semisimple = semisimple
        self._opposite: LinCat | None = None
        self._post: dict = {}
        self._pre: dict = {}
        self._generators = None
        self._digest = None
        self._labels = None
        self._radicals: dict = {}

    # -- basic access ------------------------------------------------------

    @property
    def objects(self) -> range:
        return range(self.L + 1)

    def dim(self, a: int, b: int) -> int:
        return len(self.hom.get((a, b), ()))

    def basis(self, a: int, b: int) -> tuple:
        return self.hom.get((a, b), ())

    def compose_basis(self, a: int, b: int, c: int, i: int, j: int) -> tuple:
        """Coordinates of ``g_j o f_i`` (sparse)."""
        return self.comp[(a, b, c)][i][j]

    def compose(self, a: int, b: int, c: int, f: dict, g: dict) -> dict:
        """``g o f`` for sparse vectors ``f`` in C(a,b), ``g`` in C(b,c)."""
        out: dict = {}
        table = self.comp.get((a, b, c))
        if table is None:
            return out
        fld = self.field
        for i, x in f.items():
            row = table[i]
            for j, y in g.items():
                xy = x * y
                for k, v in row[j]:
                    out[k] = out.get(k, 0) + xy * v
        p = fld.p
        if p is not None:
            return {k: v % p for k, v in out.items() if v % p}
        return {k: v for k, v in out.items() if v}

    def identity(self, a: int) -> dict:
        return dict(self.ident[a])

    @property
    def labels(self) -> dict:
        """Map label -> (a, b, index)."""
        if self._labels is None:
            self._labels = {}
            for (a, b), names in self.hom.items():
                for i, n in enumerate(names):
                    self._labels[n] = (a, b, i)
        return self._labels

    def morphisms(self) -> Iterable[tuple[int, int]]:
        """Pairs (a, b) with a nonempty Hom space, in canonical order."""
        return sorted(k for k, v in self.hom.items() if v)

    def post_matrix(self, a: int, b: int, c: int, j: int) -> Matrix:
        """Matrix of ``f -> g_j o f`` from C(a,b) to C(a,c)."""
        key = (a, b, c, j)
        m = self._post.get(key)
        if m is None:
            f = self.field
            nb, nc = self.dim(a, b), self.dim(a, c)
            rows = [[f.zero] * nb for _ in range(nc)]
            table = self.comp[(a, b, c)]
            for i in range(nb):
                for k, v in table[i][j]:
                    rows[k][i] = v
            m = self._post[key] = Matrix(f, rows, nb)
        return m

    def pre_matrix(self, a: int, b: int, c: int, i: int) -> Matrix:
        """Matrix of ``g -> g o f_i`` from C(b,c) to C(a,c)."""
        key = (a, b, c, i)
        m = self._pre.get(key)
        if m is None:
            f = self.field
            nb, nc = self.dim(b, c), self.dim(a, c)
            rows = [[f.zero] * nb for _ in range(nc)]
            table = self.comp[(a, b, c)][i]
            for j in range(nb):
                for k, v in table[j]:
                    rows[k][j] = v
            m = self._pre[key] = Matrix(f, rows, nb)
        return m

    # -- structure -----------------------------------------------------------

    def endo_algebra(self, a: int) -> FDAlgebra:
        """End(a) with product ``x * y = x o y``."""
        n = self.dim(a, a)
        table = self.comp[(a, a, a)]
        return FDAlgebra(self.field, n, lambda i, j: dict(table[j][i]),
                         unit=[dict(self.ident[a]).get(k, self.field.zero) for k in range(n)])

    def generators(self) -> list[tuple[int, int, int]]:
        """A set of basis morphisms generating the category (identities omitted).

        Built greedily: algebra generators of each End(a), then for a < b
        basis elements of C(a, b) not already produced by composites through
        intermediate objects and two-sided End actions.
        """
        if self._generators is not None:
            return self._generators
        f = self.field
        gens: list[tuple[int, int, int]] = []
        endo_gens: dict[int, list[int]] = {}
        for a in self.objects:
            n = self.dim(a, a)
            span = SparseEchelon(f, n)
            span.add(dict(self.ident[a]))
            chosen: list[int] = []
            for i in range(n):
                if span.contains({i: f.one}):
                    continue
                chosen.append(i)
                self._close_subalgebra(a, span, chosen)
            endo_gens[a] = chosen
            gens.extend((a, a, i) for i in chosen)
        for d in range(1, self.L + 1):
            for a in range(0, self.L + 1 - d):
                b = a + d
                n = self.dim(a, b)
                if n == 0:
                    continue
                span = SparseEchelon(f, n)
                for c in range(a + 1, b):
                    for i in range(self.dim(a, c)):
                        for j in range(self.dim(c, b)):
                            span.add(dict(self.comp[(a, c, b)][i][j]))
                            if span.rank == n:
                                break
                for i in range(n):
                    if span.rank == n:
                        break
                    if span.contains({i: f.one}):
                        continue
                    gens.append((a, b, i))
                    self._two_sided_closure(a, b, i, span)
        self._generators = gens
        return gens

    def _close_subalgebra(self, a: int, span: SparseEchelon, chosen: list[int]):
        f = self.field
        n = self.dim(a, a)
        frontier = [{i: f.one} for i in chosen]
        # Start from the current span's vectors plus the generators.
        basis = [dict(r) for r in span.pivots.values()]
        for g in chosen:
            span.add({g: f.one})
        work = basis + frontier
        while work:
            new = []
            for x in work:
                for g in chosen:
                    y = self.compose(a, a, a, x, {g: f.one})
                    if span.add(y):
                        new.append(y)
                    if span.rank == n:
                        return
            work = new

    def _two_sided_closure(self, a: int, b: int, i: int, span: SparseEchelon):
        f = self.field
        n = self.dim(a, b)
        x = {i: f.one}
        for e in range(self.dim(b, b)):
            left = self.compose(a, b, b, x, {e: f.one})
            for e2 in range(self.dim(a, a)):
                span.add(self.compose(a, a, b, {e2: f.one}, left))
                if span.rank == n:
                    return

    def check_semisimple(self) -> bool:
        """True when every End(a) is semisimple (trace-form check if unknown)."""
        if self.semisimple is None:
            self.semisimple = all(not self.endo_radical(a) for a in self.objects)
        return self.semisimple

    def endo_radical(self, a: int) -> list[list]:
        if a not in self._radicals:
            self._radicals[a] = algebra_radical(self.endo_algebra(a))
        return self._radicals[a]

    # -- opposite ------------------------------------------------------------

    def opposite(self) -> "LinCat":
        """C^op with object ``a`` relabelled ``L - a`` (keeps triangularity).

        The opposite of the opposite is this very object.
        """
        if self._opposite is None:
            L = self.L
            hom = {(L - b, L - a): names for (a, b), names in self.hom.items()}
            comp = {}
            for (a, b, c), table in self.comp.items():
                # op: f' in Cop(L-c, L-b) = C(b,c), g' in Cop(L-b, L-a) = C(a,b);
                # g' o_op f' = f' o g' computed in C as comp[(a,b,c)][g'][f'].
                nab, nbc = len(table), (len(table[0]) if table else self.dim(b, c))
                comp[(L - c, L - b, L - a)] = [
                    [table[j][i] for j in range(nab)] for i in range(nbc)
                ]
            ident = {L - a: dict(v) for a, v in self.ident.items()}
            backend = None if self.backend is None else (
                self.backend[3:] if self.backend.startswith("op:") else "op:" + self.backend)
            op = LinCat(self.field, L, hom, comp, ident, backend=backend, meta=self.meta,
                        semisimple=self.semisimple)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def relabel(self, a: int) -> int:
        return self.L - a

    # -- serialisation ---------------------------------------------------------

    def to_json(self) -> dict:
        f = self.field
        fmt = f.format_scalar
        hom = {f"{a},{b}": list(names) for (a, b), names in sorted(self.hom.items())}
        comp = {}
        for (a, b, c), table in sorted(self.comp.items()):
            nac = self.dim(a, c)
            out = []
            for row in table:
                outrow = []
                for vec in row:
                    dense = [f.zero] * nac
                    for k, v in vec:
                        dense[k] = v
                    outrow.append([fmt(x) for x in dense])
                out.append(outrow)
            comp[f"{a},{b},{c}"] = out
        ident = {}
        for a in self.objects:
            dense = [f.zero] * self.dim(a, a)
            for k, v in self.ident[a]:
                dense[k] = v
            ident[str(a)] = [fmt(x) for x in dense]
        out = {"field": f.to_json(), "L": self.L, "hom": hom, "comp": comp, "id": ident}
        if self.backend is not None:
            out["backend"] = self.backend
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LinCat":
        try:
            f = Field.from_json(data["field"])
            L = int(data["L"])
            hom = {}
            for key, names in data["hom"].items():
                a, b = (int(x) for x in key.split(","))
                hom[(a, b)] = [str(n) for n in names]
            comp = {}
            for key, table in data["comp"].items():
                a, b, c = (int(x) for x in key.split(","))
                comp[(a, b, c)] = [[_sparse([f.parse_scalar(x) for x in vec]) for vec in row]
                                   for row in table]
            ident = {}
            for key, vec in data["id"].items():
                ident[int(key)] = [f.parse_scalar(x) for x in vec]
        except (KeyError, ValueError, AttributeError, TypeError) as exc:
            raise InvalidCategory(f"malformed category JSON: {exc}") from None
        for a in range(L + 1):
            for b in range(a, L + 1):
                hom.setdefault((a, b), [])
            ident.setdefault(a, [])
        cat = cls(f, L, hom, comp, ident, backend=data.get("backend"))
        cat._shape_issues = _shape_problems(cat)
        return cat

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        if self._digest is None:
            self._digest = hashlib.sha256(self.dumps().encode()).hexdigest()[:16]
        return self._digest

    def __repr__(self):
        name = self.meta.get("name", self.backend or "custom")
        return f"LinCat<{name}, L={self.L}, {self.field!r}>"


def _shape_problems(cat: LinCat) -> list[str]:
    problems = []
    for (a, b), names in cat.hom.items():
        if b < a and names:
            problems.append(f"triangularity: C({a},{b}) nonempty with {b} < {a}")
        if not (0 <= a <= cat.L and 0 <= b <= cat.L):
            problems.append(f"object out of range in C({a},{b})")
    for a in cat.objects:
        for b in range(a, cat.L + 1):
            for c in range(b, cat.L + 1):
                nab, nbc, nac = cat.dim(a, b), cat.dim(b, c), cat.dim(a, c)
                if nab == 0 or nbc == 0:
                    continue
                table = cat.comp.get((a, b, c))
                if table is None or len(table) != nab or any(len(r) != nbc for r in table):
                    problems.append(f"composition table ({a},{b},{c}) has wrong shape")
                    continue
                for row in table:
                    for vec in row:
                        if any(k >= nac or k < 0 for k, _ in vec):
                            problems.append(f"composition ({a},{b},{c}) indexes outside C({a},{c})")
                            break
    for a in cat.objects:
        if len(dict(cat.ident.get(a, ()))) == 0 and cat.dim(a, a) == 0:
            problems.append(f"object {a} has no identity (End({a}) = 0)")
    return problems


def validate(c: LinCat) -> ValidationReport:
    """Check triangularity, label uniqueness, identity laws and associativity.

    Every violated composable triple is listed.
    """
    rep = ValidationReport()
    shape = getattr(c, "_shape_issues", None)
    if shape is None:
        shape = _shape_problems(c)
    rep.violations.extend(shape)
    if shape:
        return rep
    seen: dict[str, tuple] = {}
    for (a, b), names in sorted(c.hom.items()):
        for i, n in enumerate(names):
            if n in seen:
                rep.violations.append(f"label {n!r} used for {seen[n]} and {(a, b, i)}")
            seen[n] = (a, b, i)
    f = c.field
    one = f.one
    for a in c.objects:
        for b in range(a, c.L + 1):
            for i in range(c.dim(a, b)):
                fi = {i: one}
                if c.compose(a, b, b, fi, dict(c.ident[b])) != fi:
                    rep.violations.append(f"identity law: id_{b} o {c.hom[(a, b)][i]} != itself")
                if c.compose(a, a, b, dict(c.ident[a]), fi) != fi:
                    rep.violations.append(f"identity law: {c.hom[(a, b)][i]} o id_{a} != itself")
    L = c.L
    for a in c.objects:
        for b in range(a, L + 1):
            nab = c.dim(a, b)
            if not nab:
                continue
            for cc in range(b, L + 1):
                nbc = c.dim(b, cc)
                if not nbc:
                    continue
                t_abc = c.comp[(a, b, cc)]
                for d in range(cc, L + 1):
                    ncd = c.dim(cc, d)
                    if not ncd:
                        continue
                    t_acd = c.comp[(a, cc, d)]
                    t_bcd = c.comp[(b, cc, d)]
                    t_abd = c.comp[(a, b, d)]
                    for i in range(nab):
                        for j in range(nbc):
                            gf = t_abc[i][j]
                            for h in range(ncd):
                                # h o (g o f)
                                lhs: dict = {}
                                for k, v in gf:
                                    for kk, vv in t_acd[k][h]:
                                        lhs[kk] = lhs.get(kk, 0) + v * vv
                                rhs: dict = {}
                                for m, v in t_bcd[j][h]:
                                    for kk, vv in t_abd[i][m]:
                                        rhs[kk] = rhs.get(kk, 0) + v * vv
                                if _norm(f, lhs) != _norm(f, rhs):
                                    rep.violations.append(
                                        "associativity: ({2} o {1}) o {0} != {2} o ({1} o {0}) "
                                        "in C({3},{4})".format(
                                            c.hom[(a, b)][i], c.hom[(b, cc)][j],
                                            c.hom[(cc, d)][h], a, d))
    return rep


def _norm(f: Field, vec: dict) -> dict:
    if f.p is not None:
        return {k: v % f.p for k, v in vec.items() if v % f.p}
    return {k: v for k, v in vec.items() if v}


def opposite(c: LinCat) -> LinCat:
    return c.opposite()


def radical_basis(c: LinCat, a: int, b: int) -> list[list]:
    """Vectors spanning rad C(a, b): everything when a != b, J(End a) when a == b."""
    f = c.field
    if a != b:
        n = c.dim(a, b)
        return [[f.one if i == j else f.zero for i in range(n)] for j in range(n)]
    return c.endo_radical(a)


@dataclass(frozen=True)
class GrowthReport:
    obj: int
    dims: tuple[int, ...]
    window: int
    verdict: str
    bound: int | None

    def __str__(self):
        v = f"Bounded({self.bound})" if self.verdict == "Bounded" else self.verdict
        return f"{v} (horizon-limited, window {self.window})"


def hom_growth(c: LinCat, a: int, window: int = DEFAULT_WINDOW) -> GrowthReport:
    """``dim C(a, j)`` for ``j = a..L`` plus a horizon-limited boundedness verdict.

    ``Bounded(N)`` when the sequence is constant (= N) on its last ``window``
    entries (or on all of them when fewer than ``window`` exist),
    ``GrowingAtHorizon`` otherwise.
    """
    if not 0 <= a <= c.L:
        raise InputError(f"object {a} outside 0..{c.L}")
    dims = tuple(c.dim(a, j) for j in range(a, c.L + 1))
    tail = dims[-window:]
    if len(set(tail)) == 1:
        return GrowthReport(a, dims, window, "Bounded", tail[0])
    return GrowthReport(a, dims, window, "GrowingAtHorizon", None)
