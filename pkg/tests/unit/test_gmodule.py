"""
Unit tests for groupoid modules, coinvariants, fibre products and induction
"""

import pytest

from algebra.exceptions import AdjunctionError, DimensionError, ValidationError
from algebra.gmodule import (
    BarResolution,
    GModuleMap,
    adjunction_counit,
    adjunction_unit,
    build_module,
    coinvariants,
    direct_sum,
    ensure_triangles,
    gset_module,
    identity_map,
    induce,
    induce_map,
    module_resolution_check,
    pushforward,
    restrict,
    tensor_kappa,
    triangle_check,
    trivial_module,
    validate_module,
    zero_map,
)
from algebra.groupoid import (
    cyclic_group,
    full_subgroupoid,
    left_regular_gset,
    pair_groupoid,
    right_regular_gset,
    subgroupoid,
    unit_space_gset,
)
from algebra.intalg import FGAbelianGroup, IntMatrix


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def p2():
    return pair_groupoid(2)


@pytest.fixture
def sign(z2):
    """Z with the generator of Z/2 acting by -1"""
    return build_module(z2, {"*": 1}, {"1": IntMatrix.from_dense([[-1]])}, name="sign")


class TestModules:
    """Test module construction and validation"""

    def test_trivial_module(self, p2):
        M = trivial_module(p2)
        assert validate_module(M).passed
        assert M.total_rank == 2
        assert M.act("1.0") == IntMatrix.identity(1)

    def test_units_default_to_identity(self, sign):
        assert sign.act("0") == IntMatrix.identity(1)

    def test_non_functorial_action_rejected(self, z2):
        with pytest.raises(ValidationError) as exc:
            build_module(z2, {"*": 1}, {"1": IntMatrix.from_dense([[2]])})
        assert exc.value.report.fault_code == "functoriality"

    def test_wrong_shape_rejected(self, z2):
        with pytest.raises(ValidationError) as exc:
            build_module(z2, {"*": 2}, {"1": IntMatrix.from_dense([[1]])})
        assert exc.value.report.fault_code == "shape"

    def test_equality_ignores_name(self, p2):
        renamed = trivial_module(p2)
        renamed.name = "other"
        assert renamed == trivial_module(p2)

    def test_direct_sum(self, z2, sign):
        M = direct_sum(trivial_module(z2), sign)
        assert M.rank("*") == 2
        assert M.act("1") == IntMatrix.from_dense([[1, 0], [0, -1]])
        assert validate_module(M).passed

    def test_direct_sum_over_different_groupoids(self, z2, p2):
        with pytest.raises(DimensionError):
            direct_sum(trivial_module(z2), trivial_module(p2))


class TestModuleMaps:
    """Test equivariant maps"""

    def test_identity_and_zero(self, sign):
        assert identity_map(sign).is_identity()
        assert zero_map(sign, sign).is_zero()
        assert identity_map(sign).compose(zero_map(sign, sign)).is_zero()

    def test_non_equivariant_map(self, z2, sign):
        f = GModuleMap(trivial_module(z2), sign, {"*": IntMatrix.identity(1)})
        report = f.validate()
        assert not report.passed
        assert report.fault_code == "equivariance"

    def test_pushforward_to_unit_space(self, p2):
        X, Y = left_regular_gset(p2), unit_space_gset(p2)
        f = pushforward(X, Y, {h: p2.r(h) for h in p2.arrows})
        assert f.validate().passed
        assert f.component("0") == IntMatrix.from_dense([[1, 1]])

    def test_pushforward_rejects_anchor_change(self, p2):
        X, Y = left_regular_gset(p2), unit_space_gset(p2)
        with pytest.raises(ValidationError):
            pushforward(X, Y, {h: p2.s(h) for h in p2.arrows})


class TestCoinvariants:
    """Test M_G as a cokernel"""

    def test_trivial_coefficients(self, p2):
        assert coinvariants(trivial_module(p2)).group == FGAbelianGroup(free_rank=1)

    def test_sign_module(self, sign):
        assert coinvariants(sign).group == FGAbelianGroup(torsion=(2,))

    def test_regular_module(self, z2):
        M = gset_module(left_regular_gset(z2))
        assert M.rank("*") == 2
        assert coinvariants(M).group == FGAbelianGroup(free_rank=1)

    def test_projection_identifies_orbit(self, p2):
        C = coinvariants(trivial_module(p2))
        assert C.reduce({0: 1}) == C.reduce({1: 1})


class TestFibreProducts:
    """Test Y ×_G Z and its orbit basis κ"""

    def test_regular_sets_on_pair_groupoid(self, p2):
        product = tensor_kappa(right_regular_gset(p2), left_regular_gset(p2))
        assert len(product.pairs) == 8
        assert len(product) == 4
        assert product.check().passed

    def test_regular_sets_on_group(self, z2):
        product = tensor_kappa(right_regular_gset(z2), left_regular_gset(z2))
        assert len(product) == 2
        assert product.kappa("1", "1") == product.kappa("0", "0")
        assert product.check().passed

    def test_unit_space_factor(self, p2):
        product = tensor_kappa(right_regular_gset(p2), unit_space_gset(p2))
        assert len(product) == 2
        assert product.check().passed

    def test_wrong_sides(self, p2):
        with pytest.raises(ValueError):
            tensor_kappa(left_regular_gset(p2), left_regular_gset(p2))
        with pytest.raises(ValueError):
            tensor_kappa(right_regular_gset(p2), right_regular_gset(p2))


class TestInduction:
    """Test restriction, induction and the adjunction between them"""

    def test_restrict_to_corner(self, p2):
        H = full_subgroupoid(p2, ["0"])
        M = restrict(p2, H, trivial_module(p2))
        assert M.groupoid == H
        assert M.rank("0") == 1

    def test_restrict_needs_subgroupoid(self, z2, p2):
        with pytest.raises(DimensionError):
            restrict(p2, z2, trivial_module(p2))

    def test_induce_from_unit_space_of_group(self, z2):
        H = subgroupoid(z2, ["*"], [])
        M = induce(z2, H, trivial_module(H))
        assert validate_module(M).passed
        assert M.rank("*") == 2
        assert coinvariants(M).group == FGAbelianGroup(free_rank=1)

    def test_induce_from_corner_of_pair(self, p2):
        H = full_subgroupoid(p2, ["0"])
        M = induce(p2, H, trivial_module(H))
        assert M.rank("0") == 1 and M.rank("1") == 1
        assert validate_module(M).passed

    def test_induce_map_of_identity(self, z2):
        H = subgroupoid(z2, ["*"], [])
        N = trivial_module(H)
        assert induce_map(z2, H, identity_map(N)).is_identity()

    def test_unit_and_counit_are_equivariant(self, p2):
        H = full_subgroupoid(p2, ["1"])
        assert adjunction_unit(p2, H, trivial_module(H)).validate().passed
        assert adjunction_counit(p2, H, trivial_module(p2)).validate().passed

    @pytest.mark.parametrize("objects", [["0"], ["1"], ["0", "1"]])
    def test_triangle_identities(self, p2, objects):
        H = full_subgroupoid(p2, objects)
        M = direct_sum(trivial_module(p2), gset_module(left_regular_gset(p2)))
        assert triangle_check(p2, H, trivial_module(H), M).passed

    def test_triangle_identities_for_sign(self, z2, sign):
        H = subgroupoid(z2, ["*"], [])
        assert triangle_check(z2, H, trivial_module(H), sign).passed
        ensure_triangles(z2, H, trivial_module(H), sign)

    def test_triangle_identities_for_index_two_subgroup(self):
        G = cyclic_group(4)
        H = subgroupoid(G, G.objects, ["0", "2"])
        M = direct_sum(trivial_module(G), gset_module(left_regular_gset(G)))
        assert triangle_check(G, H, gset_module(left_regular_gset(H)), M).passed

    def test_ensure_triangles_raises_on_breach(self, z2, sign, monkeypatch):
        H = subgroupoid(z2, ["*"], [])
        monkeypatch.setattr(
            "algebra.gmodule.adjunction_counit",
            lambda G, K, M: zero_map(induce(G, K, restrict(G, K, M)), M),
        )
        with pytest.raises(AdjunctionError):
            ensure_triangles(z2, H, trivial_module(H), sign)


class TestBarResolution:
    """Test the contracting homotopy of the bar resolution of a module"""

    def test_trivial_coefficients(self, z2):
        assert module_resolution_check(trivial_module(z2), 2).passed

    def test_sign_coefficients(self, sign):
        assert module_resolution_check(sign, 2).passed

    def test_permutation_module(self, p2):
        assert module_resolution_check(gset_module(left_regular_gset(p2)), 1).passed

    def test_generators_have_unit_heads(self, z2):
        P = BarResolution(trivial_module(z2))
        assert [t for t, _ in P.generators(1)] == [("0", "0"), ("0", "1")]

    def test_boundary_squares_to_zero(self, sign):
        P = BarResolution(sign)
        assert (P.boundary_matrix(1) @ P.boundary_matrix(2)).is_zero()
        assert (P.boundary_matrix(0) @ P.boundary_matrix(1)).is_zero()
