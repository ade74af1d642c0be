import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from coxnef import preset, preset_names, riemann_roch
from coxnef.cohomology import (
    FREE,
    NOT_EFFECTIVE,
    SINGLE_POINT,
    BaseLocusKind,
    CohomologyVector,
    base_locus,
    cohomology,
    h0,
    h1_nef,
    h2,
    is_effective,
    minus_one_part,
    reduce_to_nef,
)
from coxnef.coxdeg import nef_hilbert_basis
from coxnef.errors import CoxnefError
from coxnef.surface import is_nef, named_class, negative_curves

E8M2 = "halphen-e8-m2"


def vec(m, *coeffs):
    return m.lattice.cls(coeffs)


def test_zero_class():
    m = preset(E8M2)
    assert cohomology(m, m.lattice.zero()) == CohomologyVector(1, 0, 0, 1)


def test_anticanonical_multiples_m2():
    m = preset(E8M2)
    assert cohomology(m, -m.K) == CohomologyVector(1, 0, 0, 1)
    assert cohomology(m, -m.K * 2) == CohomologyVector(2, 1, 0, 1)
    assert cohomology(m, m.K) == CohomologyVector(0, 0, 1, 1)
    assert h1_nef(m, -m.K) == 0
    assert h1_nef(m, -m.K * 2) == 1


def test_conic_bundle_pencil():
    m = preset(E8M2)
    assert cohomology(m, named_class(m, "H-Eq")) == CohomologyVector(2, 0, 0, 2)


def test_m1_anticanonical_multiples():
    m = preset("halphen-e8-m1")
    for a in range(1, 4):
        assert h0(m, -m.K * a) == a + 1


def test_m3_anticanonical_multiples():
    m = preset("halphen-e8-m3")
    assert [h0(m, -m.K * a) for a in range(1, 8)] == [1, 1, 2, 2, 2, 3, 3]


def test_del_pezzo_h1_vanishes():
    m = preset("wdp-e6-cubic")
    for n in nef_hilbert_basis(m):
        assert h1_nef(m, n) == 0
    assert cohomology(m, -m.K) == CohomologyVector(4, 0, 0, 4)


def test_h1_nef_rejects_non_nef():
    m = preset(E8M2)
    with pytest.raises(CoxnefError):
        h1_nef(m, named_class(m, "E1"))


def test_cohomology_vector_consistency_enforced():
    with pytest.raises(CoxnefError):
        CohomologyVector(1, 1, 1, 3)


# ---------------------------------------------------------------- reduction


def test_reduce_nef_is_identity():
    m = preset(E8M2)
    red = reduce_to_nef(m, -m.K)
    assert red.nef == -m.K and red.subtracted == ()


def test_reduce_twice_a_curve():
    m = preset(E8M2)
    e1 = named_class(m, "E1")
    red = reduce_to_nef(m, e1 * 2)
    assert red.nef.is_zero() and red.subtracted == (e1, e1)


def test_minus_k_plus_curve_is_nef():
    m = preset(E8M2)
    d = -m.K + named_class(m, "E1")
    red = reduce_to_nef(m, d)
    assert red.nef == d and red.subtracted == ()


def test_effectivity_examples():
    m = preset(E8M2)
    assert is_effective(m, -m.K)
    assert not is_effective(m, m.K)
    assert reduce_to_nef(m, m.K) is NOT_EFFECTIVE
    assert is_effective(m, named_class(m, "5H-E1-E2-E3-E4-E5-E6-E7-E8-4Eq"))


# ---------------------------------------------------------------- base locus


def test_base_locus_m2():
    m = preset(E8M2)
    assert base_locus(m, -m.K) == BaseLocusKind("Curve", -m.K)
    assert base_locus(m, -m.K * 2) == FREE
    assert base_locus(m, -m.K * 3) == BaseLocusKind("Curve", -m.K)
    assert base_locus(m, -m.K + named_class(m, "E1")) == SINGLE_POINT
    assert base_locus(m, named_class(m, "H-Eq")) == FREE


def test_base_locus_m1_curve():
    m = preset("halphen-e8-m1")
    e1 = named_class(m, "E1")
    assert base_locus(m, -m.K + e1) == BaseLocusKind("Curve", e1)
    assert base_locus(m, -m.K * 2 + e1) == BaseLocusKind("Curve", e1)
    assert minus_one_part(m, -m.K * 2 + e1) == e1
    assert base_locus(m, -m.K) == FREE


def test_base_locus_del_pezzo():
    m = preset("wdp-e6-cubic")
    assert base_locus(m, -m.K) == FREE


def test_base_locus_degree_one_del_pezzo():
    from test_surface import del_pezzo

    m = del_pezzo(8)
    assert base_locus(m, -m.K) == SINGLE_POINT
    assert base_locus(m, -m.K * 2) == FREE


def test_base_locus_errors():
    m = preset(E8M2)
    with pytest.raises(CoxnefError):
        base_locus(m, m.lattice.zero())
    with pytest.raises(CoxnefError):
        base_locus(m, named_class(m, "E1"))


# ---------------------------------------------------------------- properties

PRESETS = [n for n in preset_names() if n != "halphen-a8-m2"]
small10 = st.lists(st.integers(-3, 3), min_size=10, max_size=10)


@st.composite
def preset_class(draw):
    name = draw(st.sampled_from(preset_names()))
    m = preset(name)
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=m.lattice.rank, max_size=m.lattice.rank))
    return m, m.lattice.cls(coeffs)


@given(preset_class())
def test_serre_and_euler_identities(data):
    m, d = data
    lat = m.lattice
    v = cohomology(m, d)
    chi = riemann_roch(lat, d).chi
    assert chi == riemann_roch(lat, m.K - d).chi
    assert v.h0 - v.h1 + v.h2 == chi
    assert v.h2 == h0(m, m.K - d) == h2(m, d)
    dual = cohomology(m, m.K - d)
    assert (dual.h0, dual.h1, dual.h2) == (v.h2, v.h1, v.h0)


@st.composite
def nef_class(draw):
    m = preset(draw(st.sampled_from(preset_names())))
    hb = nef_hilbert_basis(m)
    parts = draw(st.lists(st.sampled_from(hb), min_size=1, max_size=3))
    d = parts[0]
    for p in parts[1:]:
        d = d + p
    return m, d


@given(nef_class())
def test_nef_classes_effective_with_no_h2(data):
    m, d = data
    assert is_nef(m, d)
    v = cohomology(m, d)
    assert v.h2 == 0 and v.h0 >= 1


@given(preset_class())
def test_h0_reduction_invariant(data):
    m, d = data
    for c in negative_curves(m):
        if m.pair(d, c) < 0:
            assert h0(m, d) == h0(m, d - c)
            break


@st.composite
def effective_guess(draw):
    m = preset(draw(st.sampled_from(["halphen-e8-m2", "halphen-e8-m1", "wdp-e6-cubic"])))
    gens = list(negative_curves(m)) + list(nef_hilbert_basis(m))
    parts = draw(st.lists(st.sampled_from(gens), min_size=1, max_size=3))
    d = parts[0]
    for p in parts[1:]:
        d = d + p
    minus = draw(st.sampled_from(gens))
    return m, gens, d, d - minus


@given(effective_guess())
def test_effectivity_matches_monoid_search(data):
    m, gens, d, d2 = data
    # grading: pairing with the sum of the nef basis, positive on every curve and nef class
    amp = nef_hilbert_basis(m)[0]
    for n in nef_hilbert_basis(m)[1:]:
        amp = amp + n
    w = m.lattice.dual(amp.coeffs)
    coeffs = [g.coeffs for g in gens]
    assert all(oracles.dot(w, g) > 0 for g in coeffs)
    assert is_effective(m, d)
    assert oracles.effective_by_search(coeffs, d.coeffs, w, 3)
    low = min(oracles.dot(w, g) for g in coeffs)
    terms = oracles.dot(w, d2.coeffs) // low
    assume(terms <= 3)
    assert is_effective(m, d2) == oracles.effective_by_search(coeffs, d2.coeffs, w, max(terms, 0))
