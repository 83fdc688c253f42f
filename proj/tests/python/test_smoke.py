"""Smoke tests for the python bindings.

These are deliberately shallow: the exhaustive identity and oracle tests
live in the C++ suites.  Here we only verify that the binding layer loads,
that objects round-trip sensibly, and that a few known values come through
unchanged.
"""

import os

import pytest

import cfh

DEFS = os.environ.get("CFH_DEFS_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "defs"))


def path(name):
    return os.path.join(DEFS, name)


@pytest.fixture(scope="module")
def e1():
    return cfh.load_file(path("e1.def"))


def test_load_and_check(e1):
    assert e1.algebra.rank == 1
    assert e1.algebra.product(0, 0) == ["1"]
    report = cfh.check_associativity(e1.algebra)
    assert report.ok and bool(report)
    assert report.check == "associativity"
    assert report.witness is None


def test_failing_check_carries_witness():
    bad = cfh.load_file(path("e1_bad.def"))
    report = cfh.check_maurer_cartan(bad.algebra)
    assert not report.ok
    assert report.witness["difference"] == ["-4*d*l1 - 2*d*l2 - 2*d^2"]
    assert report.witness["tuple"] == [0, 0, 0]


def test_parse_errors_surface():
    with pytest.raises(RuntimeError, match="2:1: rank too large"):
        cfh.load_text("[algebra]\nrank = 999\n")


def test_cochain_operations(e1):
    der = e1.cochains["der"]
    ident = e1.cochains["id"]
    assert der.degree == 1 and der.value([0]) == ["d"]
    assert cfh.differential(der).is_zero()  # a derivation is closed
    assert cfh.cup(ident, ident).value([0, 0]) == ["1"]
    assert cfh.circ(ident, der, slot=1) == der
    assert (der - der).is_zero()

    rho = cfh.structure_cochain(e1.algebra)
    assert rho.degree == 2
    assert cfh.bracket(rho, rho).is_zero()  # associativity, flatness form


def test_cochain_editing(e1):
    c = cfh.cochain(e1.algebra, 1)
    c.set_value([0], ["d^2"])
    assert c.value([0]) == ["d^2"]
    assert c.tuples() == [[0]]
    assert "value 0 = [\"d^2\"]" in c.render("probe")
    with pytest.raises(RuntimeError):
        c.set_value([0], ["l7"])  # lambda index out of range at degree 1


def test_identity_suite(e1):
    reports = cfh.check_identities(e1.algebra, seed=7, trials=2)
    assert len(reports) > 20
    assert all(r.ok for r in reports)
    assert reports[0].check == "maurer-cartan"


def test_cohomology_dimensions(e1):
    for n in (0, 1):
        dims = cfh.cohomology(e1.algebra, n, d_cap=3, slack=2)
        assert (dims["Z"], dims["B"], dims["HH_upper"]) == (1, 0, 1)
    assert cfh.derivations(e1.algebra, d_cap=2)
    assert cfh.inner_derivations(e1.algebra) == []  # commutative: none


def test_extensions(e1):
    ext = cfh.trivial_extension(e1.algebra)
    assert ext.ok and ext.split_section
    assert ext.total.rank == 2
    assert cfh.check_projection_chain_map(ext, seed=3, trials=2).ok
    assert cfh.check_ring_morphism(ext, seed=3, trials=1).ok
    assert cfh.check_projection_morphism(ext, seed=3, trials=4).ok

    rho = cfh.structure_cochain(e1.algebra)
    pulled = cfh.pullback(ext, cfh.structure_cochain(ext.total))
    assert pulled == rho


def test_extension_from_cocycle():
    defn = cfh.load_file(path("ext_e1.def"))
    phi = defn.cochains["phi"]
    ext = cfh.extension_from_2cocycle(defn.algebra, phi)
    assert ext.ok  # phi is a cocycle, so the total is associative
    assert not ext.split_section  # ... but the section is not multiplicative
    assert cfh.check_projection_morphism(ext, seed=5, trials=4).ok
    with pytest.raises(RuntimeError, match="section is not an algebra morphism"):
        cfh.check_projection_chain_map(ext, trials=1)

    # The file's own [extension] block assembles the trivial extension.
    trivial = defn.extension()
    assert trivial.ok and trivial.split_section


def test_poly_canonicalization():
    assert cfh.parse_poly("3/6") == "1/2"
    assert cfh.parse_poly("l1*d") == "d*l1"
    with pytest.raises(RuntimeError, match="zero denominator"):
        cfh.parse_poly("1/0")
