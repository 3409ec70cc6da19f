import pytest
from hypothesis import given, strategies as st

from arx.artheory import (ExtClass, almost_split, classify_gar, corpus, ext1, ext_dim, interval,
                          is_split, linear_catalog, realize_extension, resolve, ses_pool,
                          stable_hom_inj, stable_hom_proj, tau, tau_minus, tau_minus_report,
                          tau_report, transpose, trtr_check, run_suite)
from arx.artheory.ext import contravariant_defect_dim, covariant_defect_dim
from arx.backends import QuiverSpec, parse_builtin, quiver_category
from arx.errors import (InputError, IsProjective, NotFiniteDimensional, NotIndecomposable,
                        UnknownBackendRule, WrongBackend)
from arx.exactla import Field
from arx.modrep import (decompose, direct_sum, find_isomorphism, injective_representable,
                        representable, simple)

from conftest import random_representation

QQ = Field.rational()
LIN4 = parse_builtin("linear:4", QQ)
STAR4 = parse_builtin("star_ray:4", QQ)


def iso(A, B):
    return A.dims == B.dims and find_isomorphism(A, B) is not None


# -- transpose and translations -------------------------------------------------------------

def test_transpose_of_intervals(lin8):
    L = 8
    for i in range(L + 1):
        for j in range(i, L):
            T = transpose(interval(lin8, i, j))
            # over the opposite, object y stands for L - y
            assert T.dims == tuple(int(i + 1 <= L - y <= j + 1) for y in range(L + 1))


def test_transpose_of_projective_is_zero(lin8, fi4):
    assert transpose(representable(lin8, 3)).is_zero()
    assert transpose(representable(fi4, 2)).is_zero()


def test_fi_transpose_and_tau_of_simple(fi4):
    S0 = simple(fi4, 0)
    T = transpose(S0)
    assert T.dims == (0, 0, 0, 1, 0)
    assert iso(tau(S0), simple(fi4, 1))


def test_tau_shifts_intervals(lin8):
    for i in range(9):
        for j in range(i, 7):
            assert iso(tau(interval(lin8, i, j)), interval(lin8, i + 1, j + 1))


def test_tau_flags(lin8):
    rep = tau_report(representable(lin8, 2))
    assert rep.flag == "Projective" and rep.is_zero
    rep = tau_minus_report(interval(lin8, 0, 4))
    assert rep.flag == "Injective" and rep.is_zero
    with pytest.raises(NotFiniteDimensional):
        tau_minus(representable(lin8, 1))


def test_tau_minus_inverts_tau(lin8):
    for i in range(1, 6):
        for j in range(i, 6):
            X = interval(lin8, i, j)
            assert iso(tau_minus(X), interval(lin8, i - 1, j - 1))


def test_margin_warning(lin8):
    assert not tau_report(interval(lin8, 1, 1)).margin_warning
    assert tau_report(interval(lin8, 1, 6)).margin_warning


def test_trtr(lin8, fi4):
    assert trtr_check(interval(lin8, 1, 1)).ok
    assert trtr_check(simple(fi4, 0)).ok
    with pytest.raises(IsProjective):
        trtr_check(representable(lin8, 0))


# -- Ext and stable Hom --------------------------------------------------------------------

def test_ext_examples(lin8, fi4):
    assert ext_dim(interval(lin8, 1, 1), interval(lin8, 2, 2)) == 1
    assert ext_dim(interval(lin8, 2, 2), interval(lin8, 1, 1)) == 0
    assert ext_dim(representable(lin8, 3), interval(lin8, 2, 2)) == 0
    assert ext_dim(simple(fi4, 0), representable(fi4, 0)) == 0


def test_realize_extension(lin8):
    sp = ext1(interval(lin8, 1, 1), interval(lin8, 2, 2))
    seq = realize_extension(sp.basis()[0])
    assert seq.is_exact() and not is_split(seq)
    assert iso(seq.E, interval(lin8, 1, 2))
    zero = realize_extension(ExtClass(sp, [QQ(0)]))
    assert zero.is_exact() and is_split(zero)


def test_stable_homs(lin8, fi4):
    X11 = interval(lin8, 1, 1)
    assert stable_hom_proj(X11, X11).dim == 1
    assert stable_hom_proj(representable(lin8, 2), interval(lin8, 2, 4)).dim == 0
    assert stable_hom_inj(injective_representable(lin8, 3), interval(lin8, 0, 5)).dim == 0
    with pytest.raises(NotFiniteDimensional):
        stable_hom_inj(representable(lin8, 1), X11)
    # formula 1 at M = S_0, N = P_0 over FI: both sides vanish
    S0, P0 = simple(fi4, 0), representable(fi4, 0)
    assert ext_dim(P0, tau(S0)) == 0 == stable_hom_proj(S0, P0).dim


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.sampled_from([LIN4, STAR4]))
def test_ar_formulas_random(s1, s2, cat):
    # the truncated categories are finite dimensional algebras, so both formulas hold
    # for every pair of modules (margin 0 switches the finiteness gate off)
    M = random_representation(cat, s1)
    N = random_representation(cat, s2)
    T = tau(M, margin=0)
    assert ext_dim(N, T) == stable_hom_proj(M, N).dim
    assert stable_hom_inj(N, T, margin=0).dim == ext_dim(M, N)


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_tau_additive(s1, s2):
    A, B = random_representation(STAR4, s1), random_representation(STAR4, s2)
    S, _, _ = direct_sum([A, B])
    assert tau(S).dims == tuple(x + y for x, y in zip(tau(A).dims, tau(B).dims))


@given(st.integers(0, 10 ** 6))
def test_ext_of_random_extension_is_exact(seed):
    M = random_representation(LIN4, seed)
    N = random_representation(LIN4, seed + 7)
    sp = ext1(M, N)
    for x in sp.basis():
        seq = realize_extension(x)
        assert seq.is_exact() and not is_split(seq)


def test_defect_identity_on_pool(lin8):
    pool = ses_pool(lin8)
    assert len(pool) >= 20
    for name, seq in pool[:10]:
        for M in (interval(lin8, 1, 2), interval(lin8, 0, 3)):
            assert covariant_defect_dim(seq, tau(M)) == contravariant_defect_dim(seq, M)


# -- almost split sequences ------------------------------------------------------------------

def test_almost_split_examples(lin8):
    fam = linear_catalog(lin8)
    a = almost_split(interval(lin8, 1, 1), family=fam)
    assert a.ok and iso(a.seq.A, interval(lin8, 2, 2)) and iso(a.seq.E, interval(lin8, 1, 2))
    a = almost_split(interval(lin8, 0, 0), family=fam)
    assert a.ok and iso(a.seq.A, interval(lin8, 1, 1)) and iso(a.seq.E, interval(lin8, 0, 1))


def test_almost_split_middle_term(lin8):
    a = almost_split(interval(lin8, 2, 4))
    summands = sorted(X.dims for X, _ in decompose(a.seq.E).summands)
    expect = sorted([interval(lin8, 2, 5).dims, interval(lin8, 3, 4).dims])
    assert summands == expect


def test_almost_split_refusals(lin8):
    with pytest.raises(IsProjective):
        almost_split(representable(lin8, 4))
    S, _, _ = direct_sum([interval(lin8, 1, 1), interval(lin8, 3, 3)])
    with pytest.raises(NotIndecomposable):
        almost_split(S)


def test_almost_split_fi(fi4):
    a = almost_split(simple(fi4, 0), family=corpus(fi4))
    assert a.ok and iso(a.seq.A, simple(fi4, 1))


# -- catalog and classification ---------------------------------------------------------------

def test_catalog(lin3):
    cat = linear_catalog(lin3)
    assert len(cat) == 10
    for k, X in enumerate(cat):
        assert decompose(X).indecomposable
        assert not any(iso(X, Y) for Y in cat[k + 1:])
    for j in range(4):
        assert iso(interval(lin3, 0, j), injective_representable(lin3, j))
        assert iso(interval(lin3, j, 3), representable(lin3, j))


def test_catalog_needs_linear(fi3):
    with pytest.raises(WrongBackend):
        linear_catalog(fi3)


def test_resolve(lin3):
    assert resolve(lin3, "X:1:2") == interval(lin3, 1, 2)
    assert resolve(lin3, "P:1") == representable(lin3, 1)
    assert resolve(lin3, "C:0:2:0").dims == (1, 1, 0, 0)
    for bad in ("Q:1", "X:2:1", "P:9", "C:2:1:0", "X:1"):
        with pytest.raises(InputError):
            resolve(lin3, bad)


def test_classify_linear(lin8):
    assert classify_gar(representable(lin8, 0)).l_member == "Yes(InjectiveObject)"
    assert classify_gar(representable(lin8, 1)).l_member == "No"
    assert classify_gar(interval(lin8, 2, 4)).l_member == "Yes(FiniteDimensional)"
    assert classify_gar(interval(lin8, 2, 6)).l_member == "BoundaryUnclear"
    S, _, _ = direct_sum([interval(lin8, 2, 4), representable(lin8, 0)])
    cl = classify_gar(S)
    assert cl.l_yes and cl.r_member and len(cl.summands) == 2
    S, _, _ = direct_sum([interval(lin8, 2, 4), representable(lin8, 3)])
    assert classify_gar(S).l_member == "No"


def test_classify_p1_has_ext_witness(lin8):
    P1 = representable(lin8, 1)
    assert any(ext_dim(T, P1) for T in linear_catalog(lin8))


def test_classify_fi(fi4):
    for a in range(5):
        assert classify_gar(representable(fi4, a)).l_member == "Yes(InjectiveObject)"


def test_classify_unknown_rule(star6):
    cl = classify_gar(representable(star6, 1), family=corpus(star6)[:4])
    assert cl.l_member == "UnknownRule" and len(cl.audit) == 4
    with pytest.raises(UnknownBackendRule):
        classify_gar(representable(star6, 1), strict=True)


def test_classify_custom_bounded_quiver():
    q = QuiverSpec.parse("\n".join(f"{i} -> {i + 1} : b{i}" for i in range(6)))
    cat = quiver_category(q, QQ)
    assert classify_gar(representable(cat, 0)).l_member == "Yes(InjectiveObject)"
    assert classify_gar(representable(cat, 2)).l_member == "No"


# -- suites -------------------------------------------------------------------------------------

@pytest.mark.parametrize("suite", ["yoneda", "arformula", "almostsplit", "tautau", "trtr",
                                   "classify", "defect", "hereditary"])
def test_suites_linear4(suite):
    rep = run_suite(suite, LIN4)
    assert rep.ok, rep.hard_failures[:3]
    data = rep.to_json()
    assert data["summary"]["hard_failures"] == 0
    for c in data["checks"]:
        assert set(c) == {"check", "inputs", "lhs", "rhs", "pass", "margin_warning", "skip_reason"}


def test_suite_backend_guards(fi3, lin3):
    with pytest.raises(WrongBackend):
        run_suite("hereditary", fi3)
    with pytest.raises(WrongBackend):
        run_suite("fiinj", lin3)


def test_fiinj_suite(fi3):
    rep = run_suite("fiinj", fi3)
    assert rep.ok
