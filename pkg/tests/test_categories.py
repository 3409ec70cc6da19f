import itertools
import json
import math

import pytest
from hypothesis import given, strategies as st

from arx.algebra import FDAlgebra, algebra_radical
from arx.backends import (GroupTable, QuiverSpec, count_paths, fi_category, fi_g_category,
                          gl_order, linear_ainfty, parse_builtin, quiver_category, star_ray,
                          vi_category)
from arx.errors import (CharacteristicUnsupported, InputError, InvalidCategory, InvalidGroup,
                        InvalidQuiver, RadicalNotComputable, ScaleExceeded)
from arx.exactla import Field
from arx.lincat import LinCat, hom_growth, opposite, validate

QQ = Field.rational()


# -- algebras -------------------------------------------------------------------------

def upper_triangular_2x2(f):
    # basis e11, e12, e22
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return FDAlgebra(f, 3, lambda i, j: {k: f(v) for k, v in table.get((i, j), {}).items()},
                     unit=[f.one, f.zero, f.one])


def group_algebra(f, g: GroupTable):
    return FDAlgebra(f, g.order, lambda i, j: {g.mul(i, j): f.one})


def test_radical_upper_triangular():
    rad = algebra_radical(upper_triangular_2x2(QQ))
    assert len(rad) == 1
    assert [int(x) for x in rad[0]] == [0, 1, 0]


@pytest.mark.parametrize("g", [GroupTable.cyclic(3), GroupTable.symmetric(3)])
def test_group_algebra_semisimple(g):
    assert algebra_radical(group_algebra(QQ, g)) == []


def test_radical_refuses_small_characteristic():
    with pytest.raises(RadicalNotComputable):
        algebra_radical(upper_triangular_2x2(Field.prime(3)))


# -- quivers ---------------------------------------------------------------------------

def brute_force_paths(q: QuiverSpec, a: int, b: int) -> int:
    if a == b:
        return 1
    return sum(brute_force_paths(q, t, b) for s, t, _ in q.arrows if s == a and t <= b)


quiver_strategy = st.integers(1, 5).flatmap(
    lambda L: st.lists(st.tuples(st.integers(0, L - 1), st.integers(1, L)),
                       max_size=8).map(lambda arrows: (L, [(s, t) for s, t in arrows if s < t])))


@given(quiver_strategy)
def test_path_counts_match_recursion(data):
    L, arrows = data
    q = QuiverSpec(L, tuple((s, t, f"x{i}") for i, (s, t) in enumerate(arrows)))
    counts = count_paths(q)
    cat = quiver_category(q, QQ)
    for a in range(L + 1):
        for b in range(a, L + 1):
            assert counts[(a, b)] == brute_force_paths(q, a, b) == cat.dim(a, b)
    assert validate(cat).ok


def test_quiver_parse():
    q = QuiverSpec.parse("0 -> 1 : a\n1 -> 2 : b  # comment\n0 -> 2 : c\n")
    assert q.L == 2
    assert count_paths(q)[(0, 2)] == 2


@pytest.mark.parametrize("text", ["1 -> 0 : a", "0 -> 1 : a\n0 -> 2 : a", "0 => 1 : a", "0 -> 1 : a.b"])
def test_quiver_rejects(text):
    with pytest.raises(InvalidQuiver):
        QuiverSpec.parse(text)


def test_star_ray_counts():
    c = star_ray(8)
    assert [c.dim(0, j) for j in range(9)] == [1, 1, 2, 3, 4, 5, 6, 7, 8]


# -- FI, FI_G, VI -----------------------------------------------------------------------

def injections(m, n):
    return sum(1 for _ in itertools.permutations(range(n), m))


@pytest.mark.parametrize("L", [2, 3, 4])
def test_fi_dims(L):
    c = fi_category(L)
    for m in range(L + 1):
        for n in range(m, L + 1):
            assert c.dim(m, n) == injections(m, n)


@pytest.mark.parametrize("g", [GroupTable.cyclic(2), GroupTable.cyclic(3)])
def test_fi_g_dims(g):
    c = fi_g_category(3, g)
    for m in range(4):
        for n in range(m, 4):
            assert c.dim(m, n) == g.order ** m * math.perm(n, m)
    assert validate(fi_g_category(2, g)).ok


def test_fi_g_composition_rule():
    # composite decoration is g'(f(x)) * g(x)
    c = fi_g_category(2, GroupTable.cyclic(3))
    assert validate(c).ok
    assert validate(opposite(c)).ok


@pytest.mark.parametrize("q,L", [(2, 2), (3, 1), (2, 3)])
def test_vi_dims(q, L):
    c = vi_category(L, q)
    for m in range(L + 1):
        for n in range(m, L + 1):
            expect = math.prod(q ** n - q ** i for i in range(m))
            assert c.dim(m, n) == expect
    assert c.dim(L, L) == gl_order(L, q)


def test_vi_validates():
    assert validate(vi_category(2, 2)).ok


def test_characteristic_guards():
    with pytest.raises(CharacteristicUnsupported):
        fi_g_category(2, GroupTable.cyclic(2), Field.prime(2))
    with pytest.raises(CharacteristicUnsupported):
        fi_category(4, Field.prime(3))
    with pytest.raises(CharacteristicUnsupported):
        vi_category(2, 2, Field.prime(3))
    assert fi_category(3, Field.prime(5)).dim(1, 3) == 3


def test_scale_guards():
    with pytest.raises(ScaleExceeded):
        vi_category(4, 2)
    with pytest.raises(ScaleExceeded):
        fi_category(9)


def test_group_validation(tmp_path):
    with pytest.raises(InvalidGroup):
        GroupTable(2, ((0, 1), (1, 1)))
    p = tmp_path / "c2.json"
    p.write_text(json.dumps({"table": [[0, 1], [1, 0]]}))
    assert GroupTable.load(str(p)).order == 2
    assert GroupTable.load("S3").order == 6


@pytest.mark.parametrize("name", ["linear:5", "star_ray:6", "fi:3", "fi_g:2:C2", "vi:2:2"])
def test_builtins_validate_with_opposites(name):
    c = parse_builtin(name)
    assert validate(c).ok
    op = c.opposite()
    assert validate(op).ok
    assert op.opposite() is c
    for a in c.objects:
        for b in range(a, c.L + 1):
            assert op.dim(c.L - b, c.L - a) == c.dim(a, b)


@pytest.mark.parametrize("bad", ["linear", "linear:x", "cube:3", "vi:2"])
def test_bad_builtin(bad):
    with pytest.raises(InputError):
        parse_builtin(bad)


# -- LinCat ------------------------------------------------------------------------------

def test_json_roundtrip():
    c = fi_category(3)
    d = LinCat.from_json(json.loads(c.dumps()))
    assert d.digest() == c.digest()
    assert validate(d).ok


def test_validate_lists_associativity_triple():
    data = linear_ainfty(3).to_json()
    data["comp"]["0,1,2"] = [[["2"]]]
    rep = validate(LinCat.from_json(data))
    assert not rep.ok
    assert any("associativity" in v and "a1" in v and "a3" in v for v in rep.violations)


def test_validate_detects_bad_identity():
    data = linear_ainfty(2).to_json()
    data["id"]["1"] = ["2"]
    assert not validate(LinCat.from_json(data)).ok


def test_validate_detects_lower_morphisms():
    data = linear_ainfty(2).to_json()
    data["hom"]["2,1"] = ["back"]
    assert not validate(LinCat.from_json(data)).ok


def test_malformed_json():
    with pytest.raises(InvalidCategory):
        LinCat.from_json({"L": 2})


def test_growth():
    g = hom_growth(linear_ainfty(8), 0)
    assert g.dims == (1,) * 9 and g.verdict == "Bounded" and g.bound == 1
    g = hom_growth(star_ray(8), 0)
    assert g.dims == (1, 1, 2, 3, 4, 5, 6, 7, 8) and g.verdict == "GrowingAtHorizon"
    assert hom_growth(fi_category(4), 1).dims == (1, 2, 3, 4)
