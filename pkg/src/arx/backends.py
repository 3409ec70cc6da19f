"""Generators of LinCat presentations: acyclic quivers, FI_G and VI.

Bases are canonical enumerations so serialised categories are byte-stable:
paths are sorted by their arrow-label sequence, injections and matrices
lexicographically.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import (CharacteristicUnsupported, InputError, InvalidGroup, InvalidQuiver,
                     ScaleExceeded)
from .exactla import Field
from .lincat import LinCat

MAX_HOM_BASIS = 10_000
MAX_COMPOSITES = 3_000_000


# -- quivers -------------------------------------------------------------------

@dataclass(frozen=True)
class QuiverSpec:
    """Vertices ``0..L`` and arrows ``(source, target, label)`` with source < target."""

    L: int
    arrows: tuple[tuple[int, int, str], ...]

    def __post_init__(self):
        if self.L < 0:
            raise InvalidQuiver("L must be non-negative")
        labels = set()
        for s, t, lab in self.arrows:
            if not (0 <= s <= self.L and 0 <= t <= self.L):
                raise InvalidQuiver(f"arrow {lab}: {s} -> {t} leaves vertices 0..{self.L}")
            if s >= t:
                raise InvalidQuiver(f"arrow {lab}: source {s} must be below target {t}")
            if lab in labels:
                raise InvalidQuiver(f"duplicate arrow label {lab!r}")
            if "." in lab or not lab:
                raise InvalidQuiver(f"bad arrow label {lab!r}")
            labels.add(lab)

    @classmethod
    def parse(cls, text: str, L: int | None = None) -> "QuiverSpec":
        """Parse lines ``src -> dst : label`` (``#`` starts a comment)."""
        arrows = []
        pat = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*:\s*(\S+)\s*$")
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0]
            if not line.strip():
                continue
            m = pat.match(line)
            if not m:
                raise InvalidQuiver(f"line {lineno}: expected 'src -> dst : label'")
            arrows.append((int(m.group(1)), int(m.group(2)), m.group(3)))
        top = max([t for _, t, _ in arrows], default=0)
        return cls(top if L is None else L, tuple(arrows))


def _paths(q: QuiverSpec) -> dict[tuple[int, int], list[tuple[str, ...]]]:
    out_arrows: dict[int, list[tuple[int, str]]] = {v: [] for v in range(q.L + 1)}
    for s, t, lab in q.arrows:
        out_arrows[s].append((t, lab))
    paths: dict[tuple[int, int], list[tuple[str, ...]]] = {}
    for a in range(q.L + 1):
        stack = [(a, ())]
        while stack:
            v, p = stack.pop()
            paths.setdefault((a, v), []).append(p)
            for t, lab in out_arrows[v]:
                stack.append((t, p + (lab,)))
    for key in paths:
        paths[key].sort()
    return paths


def count_paths(q: QuiverSpec) -> dict[tuple[int, int], int]:
    """Path counts by dynamic programming over the (acyclic) vertex order."""
    counts = {}
    incoming: dict[int, list[int]] = {v: [] for v in range(q.L + 1)}
    for s, t, _ in q.arrows:
        incoming[t].append(s)
    for a in range(q.L + 1):
        row = [0] * (q.L + 1)
        row[a] = 1
        for v in range(a + 1, q.L + 1):
            row[v] = sum(row[s] for s in incoming[v])
        for b in range(a, q.L + 1):
            counts[(a, b)] = row[b]
    return counts


def quiver_category(q: QuiverSpec, field: Field, backend: str = "quiver",
                    name: str | None = None) -> LinCat:
    """k-linearisation of the path category of ``q``."""
    paths = _paths(q)
    L = q.L
    hom = {}
    index = {}
    for a in range(L + 1):
        for b in range(a, L + 1):
            ps = paths.get((a, b), [])
            hom[(a, b)] = [f"e{a}" if not p else ".".join(p) for p in ps]
            index[(a, b)] = {p: i for i, p in enumerate(ps)}
    one = field.one
    comp = {}
    for a in range(L + 1):
        for b in range(a, L + 1):
            for c in range(b, L + 1):
                pab, pbc = paths.get((a, b), []), paths.get((b, c), [])
                if not pab or not pbc:
                    continue
                idx = index[(a, c)]
                comp[(a, b, c)] = [[((idx[f + g], one),) for g in pbc] for f in pab]
    ident = {a: {0: one} for a in range(L + 1)}
    return LinCat(field, L, hom, comp, ident, backend=backend,
                  meta={"name": name or backend, "quiver": q}, semisimple=True)


def linear_quiver(L: int) -> QuiverSpec:
    return QuiverSpec(L, tuple((i - 1, i, f"a{i}") for i in range(1, L + 1)))


def star_ray_quiver(L: int) -> QuiverSpec:
    arrows = [(0, i, f"a{i}") for i in range(1, L + 1)]
    arrows += [(i - 1, i, f"b{i}") for i in range(2, L + 1)]
    return QuiverSpec(L, tuple(arrows))


def linear_ainfty(L: int, field: Field | None = None) -> LinCat:
    """Truncation of 0 -> 1 -> 2 -> ... to vertices 0..L."""
    return quiver_category(linear_quiver(L), field or Field.rational(), backend="linear",
                           name=f"linear:{L}")


def star_ray(L: int, field: Field | None = None) -> LinCat:
    """Truncation of the non-Noetherian quiver with arrows 0 -> i and i-1 -> i."""
    return quiver_category(star_ray_quiver(L), field or Field.rational(), backend="star_ray",
                           name=f"star_ray:{L}")


# -- groups --------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = "G"

    def __post_init__(self):
        n = self.order
        if n < 1 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise InvalidGroup("table must be order x order")
        if not 0 <= self.identity < n:
            raise InvalidGroup("identity index out of range")
        t = self.table
        for r in t:
            if any(not 0 <= x < n for x in r):
                raise InvalidGroup("table entry out of range")
        e = self.identity
        for x in range(n):
            if t[e][x] != x or t[x][e] != x:
                raise InvalidGroup(f"{e} is not a two-sided identity")
            if sum(1 for y in range(n) if t[x][y] == e) != 1:
                raise InvalidGroup(f"element {x} lacks a unique inverse")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if t[t[x][y]][z] != t[x][t[y][z]]:
                        raise InvalidGroup(f"not associative at ({x},{y},{z})")

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    @classmethod
    def trivial(cls) -> "GroupTable":
        return cls(1, ((0,),), 0, "1")

    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        return cls(n, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0, f"C{n}")

    @classmethod
    def symmetric(cls, n: int) -> "GroupTable":
        perms = list(itertools.permutations(range(n)))
        idx = {p: i for i, p in enumerate(perms)}
        table = tuple(tuple(idx[tuple(p[q[k]] for k in range(n))] for q in perms) for p in perms)
        return cls(len(perms), table, 0, f"S{n}")

    @classmethod
    def load(cls, spec: str) -> "GroupTable":
        """Builtins ``trivial``, ``C<n>``, ``S<n>`` or a JSON file ``{"table": .., "identity": ..}``."""
        if spec in ("trivial", "1"):
            return cls.trivial()
        m = re.fullmatch(r"C(\d+)", spec)
        if m:
            return cls.cyclic(int(m.group(1)))
        m = re.fullmatch(r"S(\d+)", spec)
        if m:
            return cls.symmetric(int(m.group(1)))
        try:
            data = json.loads(Path(spec).read_text())
            table = tuple(tuple(int(x) for x in r) for r in data["table"])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InvalidGroup(f"cannot read group {spec!r}: {exc}") from None
        return cls(len(table), table, int(data.get("identity", 0)), data.get("name", Path(spec).stem))


# -- FI_G ------------------------------------------------------------------------

def _check_scale(dims: dict[tuple[int, int], int], L: int):
    worst = max(dims.values(), default=0)
    if worst > MAX_HOM_BASIS:
        raise ScaleExceeded(f"a Hom space has {worst} basis elements (limit {MAX_HOM_BASIS})")
    total = 0
    for a in range(L + 1):
        for b in range(a, L + 1):
            for c in range(b, L + 1):
                total += dims[(a, b)] * dims[(b, c)]
    if total > MAX_COMPOSITES:
        raise ScaleExceeded(f"{total} basis composites to tabulate (limit {MAX_COMPOSITES})")


def fi_g_category(L: int, g: GroupTable, field: Field | None = None) -> LinCat:
    """Skeleton of FI_G on sets ``[0]..[L]``.

    A basis morphism ``[m] -> [n]`` is a pair (injection, map [m] -> G);
    ``(f', g') o (f, g) = (f' o f, x -> g'(f(x)) * g(x))``.
    """
    field = field or Field.rational()
    p = field.p
    if p is not None and (g.order % p == 0 or p <= L):
        raise CharacteristicUnsupported(
            f"characteristic {p} divides |G|^n n! for some n <= {L}; End algebras are not semisimple")
    dims = {(m, n): g.order ** m * math.perm(n, m) for m in range(L + 1) for n in range(m, L + 1)}
    _check_scale(dims, L)
    G = range(g.order)
    trivial = g.order == 1
    bases: dict[tuple[int, int], list] = {}
    index: dict[tuple[int, int], dict] = {}
    hom = {}
    for m in range(L + 1):
        for n in range(m, L + 1):
            els = [(inj, gv) for inj in itertools.permutations(range(n), m)
                   for gv in itertools.product(G, repeat=m)]
            bases[(m, n)] = els
            index[(m, n)] = {e: i for i, e in enumerate(els)}
            hom[(m, n)] = [
                f"{m}>{n}:" + ",".join(map(str, inj)) + ("" if trivial else "|" + ",".join(map(str, gv)))
                for inj, gv in els]
    one = field.one
    table = g.table
    comp = {}
    for a in range(L + 1):
        for b in range(a, L + 1):
            for c in range(b, L + 1):
                idx = index[(a, c)]
                rows = []
                for inj, gv in bases[(a, b)]:
                    row = []
                    for inj2, gv2 in bases[(b, c)]:
                        new_inj = tuple(inj2[x] for x in inj)
                        new_g = tuple(table[gv2[inj[x]]][gv[x]] for x in range(a))
                        row.append(((idx[(new_inj, new_g)], one),))
                    rows.append(row)
                comp[(a, b, c)] = rows
    ident = {a: {index[(a, a)][(tuple(range(a)), (g.identity,) * a)]: one} for a in range(L + 1)}
    name = f"fi:{L}" if trivial else f"fi_g:{L}:{g.name}"
    return LinCat(field, L, hom, comp, ident, backend="fi" if trivial else "fi_g",
                  meta={"name": name, "group": g}, semisimple=True)


def fi_category(L: int, field: Field | None = None) -> LinCat:
    return fi_g_category(L, GroupTable.trivial(), field)


# -- VI --------------------------------------------------------------------------

def _rank_mod(cols: list[tuple[int, ...]], q: int) -> int:
    rows = [list(c) for c in cols]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, q)
        rows[rank] = [x * inv % q for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def vi_category(L: int, q: int, field: Field | None = None) -> LinCat:
    """Skeleton of VI over F_q: objects F_q^0..F_q^L, morphisms linear injections.

    A basis morphism ``F_q^m -> F_q^n`` is an ``n x m`` matrix of rank m,
    stored as its tuple of columns.
    """
    field = field or Field.rational()
    if q not in (2, 3) or L > 3:
        raise ScaleExceeded("VI is supported for q in {2, 3} and L <= 3")
    p = field.p
    if p is not None and any(gl_order(n, q) % p == 0 for n in range(1, L + 1)):
        raise CharacteristicUnsupported(f"characteristic {p} divides |GL_n(F_{q})| for some n <= {L}")
    dims = {}
    for m in range(L + 1):
        for n in range(m, L + 1):
            d = 1
            for i in range(m):
                d *= q ** n - q ** i
            dims[(m, n)] = d
    _check_scale(dims, L)
    bases = {}
    index = {}
    hom = {}
    for m in range(L + 1):
        for n in range(m, L + 1):
            vectors = list(itertools.product(range(q), repeat=n))
            els = [cols for cols in itertools.product(vectors, repeat=m)
                   if m == 0 or _rank_mod(list(cols), q) == m]
            bases[(m, n)] = els
            index[(m, n)] = {e: i for i, e in enumerate(els)}
            hom[(m, n)] = [f"vi{m}>{n}:" + ",".join("".join(map(str, c)) for c in cols) for cols in els]
    one = field.one
    comp = {}
    for a in range(L + 1):
        for b in range(a, L + 1):
            for c in range(b, L + 1):
                idx = index[(a, c)]
                rows = []
                for f_cols in bases[(a, b)]:
                    row = []
                    for g_cols in bases[(b, c)]:
                        # g o f: column x of the product is g applied to column x of f.
                        prod = tuple(
                            tuple(sum(g_cols[k][r] * fc[k] for k in range(b)) % q for r in range(c))
                            for fc in f_cols)
                        row.append(((idx[prod], one),))
                    rows.append(row)
                comp[(a, b, c)] = rows
    ident = {}
    for a in range(L + 1):
        eye = tuple(tuple(1 if r == col else 0 for r in range(a)) for col in range(a))
        ident[a] = {index[(a, a)][eye]: one}
    return LinCat(field, L, hom, comp, ident, backend="vi",
                  meta={"name": f"vi:{L}:{q}", "q": q}, semisimple=True)


# -- builtin names -------------------------------------------------------------------

def parse_builtin(name: str, field: Field | None = None) -> LinCat:
    """Resolve ``linear:<L>``, ``star_ray:<L>``, ``fi:<L>``, ``fi_g:<L>:<group>``, ``vi:<L>:<q>``."""
    field = field or Field.rational()
    parts = name.split(":")
    try:
        kind = parts[0]
        if kind == "linear" and len(parts) == 2:
            return linear_ainfty(int(parts[1]), field)
        if kind == "star_ray" and len(parts) == 2:
            return star_ray(int(parts[1]), field)
        if kind == "fi" and len(parts) == 2:
            return fi_category(int(parts[1]), field)
        if kind == "fi_g" and len(parts) >= 3:
            return fi_g_category(int(parts[1]), GroupTable.load(":".join(parts[2:])), field)
        if kind == "vi" and len(parts) == 3:
            return vi_category(int(parts[1]), int(parts[2]), field)
    except ValueError:
        pass
    raise InputError(f"unknown builtin category {name!r}")
