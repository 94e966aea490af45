"""
Unit tests for finite inverse semigroups, their groupoids and Ω_S
"""

import pytest

from algebra.correspondence import homology_maps, validate
from algebra.exceptions import ValidationError
from algebra.groupoid import cyclic_group, pair_groupoid
from algebra.homology import homology
from algebra.invsemi import (
    FiniteInverseSemigroup,
    build_inverse_semigroup,
    chain_iso_check,
    chain_semilattice,
    derive_star,
    discrete_groupoid,
    germ,
    group_semigroup,
    omega_factorization,
    omega_S,
    omega_S_comparison,
    omega_S_displayed,
    orbit_representatives,
    stabilizer,
    stabilizer_decomposition,
    symmetric_inverse_monoid,
    universal_groupoid,
    validate_inverse_semigroup,
)


@pytest.fixture(scope="module")
def i2():
    """Partial bijections of a two-element set"""
    return symmetric_inverse_monoid(2)


class TestValidation:
    """Test exhaustive inverse-semigroup validation"""

    def test_symmetric_inverse_monoid_is_valid(self, i2):
        assert validate_inverse_semigroup(i2).passed
        assert len(i2.elements) == 7

    def test_partial_table(self):
        table = {("a", "a"): "a"}
        S = FiniteInverseSemigroup(["a", "b"], table, star={"a": "a", "b": "b"})
        report = validate_inverse_semigroup(S)
        assert report.fault_code == "table"

    def test_non_associative(self):
        table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "a", ("b", "b"): "a"}
        with pytest.raises(ValidationError) as exc:
            build_inverse_semigroup(["a", "b"], table, star={"a": "a", "b": "b"})
        assert exc.value.report.fault_code == "associativity"

    def test_left_zero_band_has_no_unique_inverse(self):
        table = {("a", "a"): "a", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
        assert derive_star(["a", "b"], table) == {}
        with pytest.raises(ValidationError) as exc:
            build_inverse_semigroup(["a", "b"], table)
        assert exc.value.report.fault_code == "star"

    def test_zero_must_absorb(self):
        S = chain_semilattice(["1", "e"])
        with pytest.raises(ValidationError) as exc:
            build_inverse_semigroup(S.elements, S.table, zero="1")
        assert exc.value.report.fault_code == "zero"


class TestFamilies:
    """Test the named semigroup families and the zero convention"""

    def test_symmetric_inverse_monoid_names(self, i2):
        assert i2.zero == "--"
        assert set(i2.idempotents) == {"--", "1-", "-2", "12"}
        assert i2.mul("2-", "1-") == "2-"
        assert i2.star("2-") == "-1"
        assert i2.source("2-") == "1-" and i2.range("2-") == "-2"

    def test_symmetric_inverse_monoid_bounds(self):
        with pytest.raises(ValueError):
            symmetric_inverse_monoid(0)

    def test_chain_keeps_its_minimum(self):
        S = chain_semilattice(["1", "e"])
        assert S.zero is None
        assert S.nonzero_idempotents == ("1", "e")
        assert S.down_set("1") == ("1", "e")

    def test_detected_zero(self):
        S = chain_semilattice(["1", "e"])
        assert build_inverse_semigroup(S.elements, S.table).zero == "e"

    def test_group_semigroup(self):
        S = group_semigroup(cyclic_group(3))
        assert S.zero is None
        assert S.nonzero_idempotents == ("0",)
        with pytest.raises(ValueError):
            group_semigroup(pair_groupoid(2))


class TestGroupoids:
    """Test S ⋉ E^× and the universal groupoid G_S"""

    def test_discrete_groupoid(self, i2):
        G = discrete_groupoid(i2)
        assert len(G.objects) == 3
        assert len(G) == 6
        assert G.s("2-") == "1-" and G.r("2-") == "-2"

    def test_universal_groupoid_naming(self, i2):
        universal = universal_groupoid(i2)
        assert universal.filters["12"] == "12^"
        assert universal.germs["21"] == germ(i2, "21") == "[21;12^]"
        assert universal.elements["[21;12^]"] == "21"
        assert set(universal.basis["12"]) == {"-2^", "1-^", "12^"}

    def test_normalization_is_bijective(self, i2):
        discrete = discrete_groupoid(i2)
        phi = universal_groupoid(i2).normalization(discrete)
        assert phi.validate().passed
        assert len(set(phi.arrows.values())) == len(discrete)

    def test_isotropy_is_the_stabilizer(self, i2):
        universal = universal_groupoid(i2)
        isotropy = universal.groupoid.isotropy(universal.filters["12"])
        assert set(isotropy) == {universal.germs[t] for t in stabilizer(i2, "12").arrows}

    def test_homology_of_universal_groupoid(self, i2):
        groups = homology(universal_groupoid(i2).groupoid, max_degree=3)
        assert [str(g) for g in groups] == ["Z^2", "Z/2", "0", "Z/2"]

    def test_chain_universal_groupoid_is_a_space(self):
        groups = homology(universal_groupoid(chain_semilattice(["1", "e", "f"])).groupoid, max_degree=2)
        assert [str(g) for g in groups] == ["Z^3", "0", "0"]


class TestOmegaS:
    """Test Ω_S : S ⋉ E^× -> G_S and the homology comparison"""

    def test_composite_is_valid(self, i2):
        omega = omega_S(i2)
        assert validate(omega).passed
        assert omega.target == universal_groupoid(i2).groupoid

    def test_composite_matches_displayed_bispace(self, i2):
        assert omega_S_comparison(i2).passed
        assert len(omega_S(i2).points) == len(omega_S_displayed(i2).points)

    def test_factorization_parts(self, i2):
        fac = omega_factorization(i2)
        assert validate(fac.action.correspondence).passed
        assert fac.psi.validate().passed
        assert fac.filters.validate().passed

    @pytest.mark.parametrize("S", [
        symmetric_inverse_monoid(1),
        chain_semilattice(["1", "e"]),
        group_semigroup(cyclic_group(2)),
    ])
    def test_comparison_on_small_semigroups(self, S):
        assert omega_S_comparison(S).passed
        assert chain_iso_check(S, 2).passed

    def test_chain_isomorphism(self, i2):
        report = chain_iso_check(i2, 2)
        assert report.passed, report.witness
        assert [d['degree'] for d in report.degrees] == [0, 1, 2]
        assert all(d['abs_determinant'] == 1 for d in report.degrees)

    @pytest.mark.slow
    def test_induced_maps_are_isomorphisms(self, i2):
        for f in homology_maps(omega_S(i2), 2):
            assert f.is_isomorphism()


class TestStabilizers:
    """Test H_*(G_S) against the stabiliser groups"""

    def test_orbit_representatives(self, i2):
        assert set(orbit_representatives(i2)) == {"-2", "12"}

    def test_decomposition(self, i2):
        comparison = stabilizer_decomposition(i2, 3)
        assert comparison.passed
        assert [str(g) for g in comparison.right] == ["Z^2", "Z/2", "0", "Z/2"]

    def test_group_semigroup_decomposition(self):
        comparison = stabilizer_decomposition(group_semigroup(cyclic_group(3)), 2)
        assert comparison.passed
        assert [str(g) for g in comparison.left] == ["Z", "Z/3", "0"]
