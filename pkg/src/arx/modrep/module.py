"""Modules (functors to vector spaces) and module maps (natural transformations)."""
from __future__ import annotations

from typing import Sequence

from ..errors import CategoryMismatch, InvalidModule, ShapeError
from ..exactla import Field, Matrix, block_diag
from ..lincat import LinCat


def same_category(c1: LinCat, c2: LinCat) -> bool:
    return c1 is c2 or (c1.L == c2.L and c1.field == c2.field and c1.digest() == c2.digest())


class Module:
    """A C-module: ``dims[a] = dim M(a)`` and ``act[(a, b)][i] = M(f_i)``.

    ``act`` holds one ``dims[b] x dims[a]`` matrix per basis morphism of every
    nonempty C(a, b). Modules compare structurally and are hashable, so
    derived data can be memoised on them.

    ``projective`` is a provenance tag set by constructions that are known
    to produce projective modules (representables, induced projectives,
    their summands).
    """

    __slots__ = ("cat", "dims", "act", "projective", "name", "_hash")

    def __init__(self, cat: LinCat, dims: Sequence[int], act: dict,
                 projective: bool = False, name: str | None = None):
        self.cat = cat
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != cat.L + 1:
            raise ShapeError(f"module needs {cat.L + 1} dimensions, got {len(self.dims)}")
        self.act = {k: tuple(v) for k, v in act.items()}
        self.projective = projective
        self.name = name
        self._hash = None

    # -- basic data --------------------------------------------------------

    @property
    def field(self) -> Field:
        return self.cat.field

    @property
    def L(self) -> int:
        return self.cat.L

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def support(self) -> list[int]:
        return [a for a, d in enumerate(self.dims) if d]

    def mat(self, a: int, b: int, i: int) -> Matrix:
        return self.act[(a, b)][i]

    def morphism_matrix(self, a: int, b: int, vec: dict) -> Matrix:
        """``M(f)`` for a sparse combination ``f`` of basis morphisms of C(a, b)."""
        f = self.field
        out = Matrix.zeros(f, self.dims[b], self.dims[a])
        for i, c in vec.items():
            out = out + self.act[(a, b)][i].scale(c)
        return out

    def _key(self):
        return (self.cat.L, self.cat.field, self.dims,
                tuple(sorted((k, v) for k, v in self.act.items() if v)))

    def __eq__(self, other):
        if not isinstance(other, Module):
            return NotImplemented
        if self is other:
            return True
        if self.dims != other.dims or not same_category(self.cat, other.cat):
            return False
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cat.digest(), self._key()))
        return self._hash

    def __repr__(self):
        label = self.name or "Module"
        return f"{label}{list(self.dims)}"

    def with_name(self, name: str | None) -> "Module":
        m = Module(self.cat, self.dims, self.act, self.projective, name)
        return m

    # -- validation ----------------------------------------------------------

    def problems(self) -> list[str]:
        """Shape and functoriality violations (empty when the module is valid).

        Functoriality is checked on the identities and on ``s o f`` for every
        category generator ``s`` and every basis morphism ``f``; this implies
        the full condition because every morphism is a combination of words
        in the generators.
        """
        c = self.cat
        f = self.field
        out = []
        for (a, b), names in c.hom.items():
            if not names:
                continue
            mats = self.act.get((a, b))
            if mats is None or len(mats) != len(names):
                out.append(f"missing action for C({a},{b})")
                continue
            for i, m in enumerate(mats):
                if m.field != f or m.shape != (self.dims[b], self.dims[a]):
                    out.append(f"action of {names[i]} has shape {m.shape}, "
                               f"expected {(self.dims[b], self.dims[a])}")
        if out:
            return out
        for a in c.objects:
            if self.dims[a] and self.morphism_matrix(a, a, dict(c.ident[a])) != Matrix.identity(f, self.dims[a]):
                out.append(f"identity of {a} does not act as the identity")
        for (b, cc, j) in c.generators():
            s = self.act[(b, cc)][j]
            for a in range(0, b + 1):
                for i in range(c.dim(a, b)):
                    lhs = self.morphism_matrix(a, cc, dict(c.comp[(a, b, cc)][i][j]))
                    rhs = s @ self.act[(a, b)][i]
                    if lhs != rhs:
                        out.append(f"functoriality fails for {c.hom[(b, cc)][j]} o {c.hom[(a, b)][i]}")
        return out

    def check(self) -> "Module":
        probs = self.problems()
        if probs:
            raise InvalidModule("; ".join(probs[:5]))
        return self

    # -- serialisation -------------------------------------------------------

    def to_json(self) -> dict:
        fmt = self.field.format_scalar
        act = {}
        for (a, b), mats in sorted(self.act.items()):
            names = self.cat.hom.get((a, b), ())
            for i, m in enumerate(mats):
                act[names[i]] = [[fmt(x) for x in row] for row in m.rows]
        return {"cat": self.cat.digest(), "dims": list(self.dims), "act": act}

    @classmethod
    def from_json(cls, cat: LinCat, data: dict, check: bool = True) -> "Module":
        f = cat.field
        try:
            ref = data.get("cat")
            if ref is not None:
                if isinstance(ref, dict):
                    if not same_category(cat, LinCat.from_json(ref)):
                        raise CategoryMismatch("module refers to a different category")
                elif ref != cat.digest():
                    raise CategoryMismatch(f"module category {ref} != {cat.digest()}")
            dims = [int(d) for d in data["dims"]]
            if len(dims) != cat.L + 1:
                raise ShapeError(f"module needs {cat.L + 1} dimensions")
            given = data.get("act", {})
            act = {}
            labels = cat.labels
            for lab in given:
                if lab not in labels:
                    raise InvalidModule(f"unknown morphism label {lab!r}")
            for (a, b), names in cat.hom.items():
                if not names:
                    continue
                mats = []
                for n in names:
                    if n in given:
                        rows = [[f.parse_scalar(x) for x in row] for row in given[n]]
                        if dims[b] == 0:
                            m = Matrix.zeros(f, 0, dims[a])
                        else:
                            m = Matrix(f, rows, dims[a])
                    else:
                        m = Matrix.zeros(f, dims[b], dims[a])
                    mats.append(m)
                act[(a, b)] = mats
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InvalidModule(f"malformed module JSON: {exc}") from None
        m = cls(cat, dims, act)
        return m.check() if check else m


def zero_module(cat: LinCat) -> Module:
    f = cat.field
    act = {k: [Matrix.zeros(f, 0, 0)] * len(v) for k, v in cat.hom.items() if v}
    return Module(cat, [0] * (cat.L + 1), act, projective=True)


class ModuleMap:
    """Natural transformation ``src -> dst``: ``comp[a]`` is ``dst.dims[a] x src.dims[a]``."""

    __slots__ = ("src", "dst", "comp")

    def __init__(self, src: Module, dst: Module, comp: Sequence[Matrix]):
        if not same_category(src.cat, dst.cat):
            raise CategoryMismatch("module map between different categories")
        self.src = src
        self.dst = dst
        self.comp = tuple(comp)
        if len(self.comp) != src.L + 1:
            raise ShapeError("module map needs one matrix per object")
        for a, m in enumerate(self.comp):
            if m.shape != (dst.dims[a], src.dims[a]):
                raise ShapeError(f"component {a} has shape {m.shape}, "
                                 f"expected {(dst.dims[a], src.dims[a])}")

    @property
    def field(self):
        return self.src.field

    @classmethod
    def identity(cls, m: Module) -> "ModuleMap":
        return cls(m, m, [Matrix.identity(m.field, d) for d in m.dims])

    @classmethod
    def zero(cls, src: Module, dst: Module) -> "ModuleMap":
        return cls(src, dst, [Matrix.zeros(src.field, dst.dims[a], src.dims[a]) for a in src.cat.objects])

    def problems(self) -> list[str]:
        out = []
        c = self.src.cat
        for (a, b, i) in c.generators():
            if self.dst.act[(a, b)][i] @ self.comp[a] != self.comp[b] @ self.src.act[(a, b)][i]:
                out.append(f"naturality fails at {c.hom[(a, b)][i]}")
        return out

    def is_natural(self) -> bool:
        return not self.problems()

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        return ModuleMap(other.src, self.dst, [x @ y for x, y in zip(self.comp, other.comp)])

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.dst, [x + y for x, y in zip(self.comp, other.comp)])

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.dst, [x - y for x, y in zip(self.comp, other.comp)])

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.src, self.dst, [x.scale(c) for x in self.comp])

    def __eq__(self, other):
        return (isinstance(other, ModuleMap) and self.src == other.src and self.dst == other.dst
                and self.comp == other.comp)

    def __hash__(self):
        return hash(self.comp)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comp)

    def ranks(self) -> list[int]:
        return [m.rank() for m in self.comp]

    def is_injective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.src.dims))

    def is_surjective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.dst.dims))

    def is_iso(self) -> bool:
        return self.src.dims == self.dst.dims and self.is_injective()

    def flat(self) -> list:
        out = []
        for m in self.comp:
            out.extend(m.flat())
        return out

    def __repr__(self):
        return f"ModuleMap({self.src!r} -> {self.dst!r})"


def direct_sum(mods: Sequence[Module]) -> tuple[Module, list[ModuleMap], list[ModuleMap]]:
    """``(M_1 + ... + M_k, inclusions, projections)``."""
    if not mods:
        raise ShapeError("direct sum of no modules")
    cat = mods[0].cat
    for m in mods[1:]:
        if not same_category(cat, m.cat):
            raise CategoryMismatch("direct sum over different categories")
    f = cat.field
    dims = [sum(m.dims[a] for m in mods) for a in cat.objects]
    act = {}
    for key, names in cat.hom.items():
        if names:
            act[key] = [block_diag(f, [m.act[key][i] for m in mods]) for i in range(len(names))]
    total = Module(cat, dims, act, projective=all(m.projective for m in mods))
    incs, projs = [], []
    offsets = [0] * (cat.L + 1)
    for m in mods:
        ic, pc = [], []
        for a in cat.objects:
            d, D, o = m.dims[a], dims[a], offsets[a]
            rows = [[f.one if r == o + c else f.zero for c in range(d)] for r in range(D)]
            inc = Matrix(f, rows, d)
            ic.append(inc)
            pc.append(inc.T)
            offsets[a] += d
        incs.append(ModuleMap(m, total, ic))
        projs.append(ModuleMap(total, m, pc))
    return total, incs, projs
