import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxnef import DivisorClass, PicardLattice, pairing, riemann_roch, square, validate_lattice
from coxnef.errors import LatticeError
from coxnef.lattice import change_basis

LABELS = ["H"] + [f"E{i}" for i in range(1, 10)]
LAT = PicardLattice.blowup(LABELS)


def test_blowup_form_values():
    h, e1 = LAT.unit(0), LAT.unit(1)
    assert pairing(LAT, h, h) == 1
    assert pairing(LAT, h, e1) == 0
    assert square(LAT, LAT.K) == 0


def test_riemann_roch_values():
    assert (riemann_roch(LAT, LAT.zero()).chi, riemann_roch(LAT, LAT.zero()).genus) == (1, 1)
    rr = riemann_roch(LAT, -LAT.K)
    assert (rr.chi, rr.genus) == (1, 1)
    rr = riemann_roch(LAT, LAT.unit(0))
    assert (rr.chi, rr.genus) == (3, 0)


def test_validate_lattice_accepts_blowup():
    assert validate_lattice(LAT) == []


def test_validate_lattice_flags_determinant():
    lat = PicardLattice(((2, 0), (0, -1)), (0, 1), ("a", "b"))
    assert any("unimodular" in p for p in validate_lattice(lat))


def test_validate_lattice_flags_signature():
    lat = PicardLattice(((-1, 0), (0, -1)), (1, 1), ("a", "b"))
    assert any("signature" in p for p in validate_lattice(lat))


def test_e6_dynkin_gram_is_valid():
    from coxnef import preset

    assert validate_lattice(preset("wdp-e6-cubic").lattice) == []


def test_dimension_mismatch_raises():
    with pytest.raises(LatticeError):
        pairing(LAT, LAT.unit(0), DivisorClass((1, 0), LAT.basis_id))


def test_mixed_bases_rejected():
    with pytest.raises(Exception):
        LAT.unit(0) + DivisorClass((1,) * 10, "other")


def test_format_and_parse_round_trip():
    d = LAT.parse({"H": 3, "E1": -1, "E9": -2})
    assert LAT.format(d) == "3H-E1-2E9"
    assert LAT.format(LAT.zero()) == "0"


vec = st.lists(st.integers(-5, 5), min_size=10, max_size=10)


@given(vec, vec)
def test_pairing_symmetric_and_bilinear(a, b):
    x, y = LAT.cls(a), LAT.cls(b)
    assert pairing(LAT, x, y) == pairing(LAT, y, x)
    assert pairing(LAT, x + y, y) == pairing(LAT, x, y) + square(LAT, y)


@given(vec)
def test_genus_chi_relation(a):
    d = LAT.cls(a)
    rr = riemann_roch(LAT, d)
    # chi + genus = 2 + D^2
    assert rr.chi + rr.genus == 2 + square(LAT, d)


def test_change_basis_preserves_form():
    m = [[1 if i == j else 0 for j in range(10)] for i in range(10)]
    m[0][1] = 1  # new e1 = H + E1 in old coordinates
    new = change_basis(LAT, m, [f"b{i}" for i in range(10)], "nb")
    assert validate_lattice(new) == []
    assert square(new, new.K) == 0
    assert new.gram[1][1] == 0
