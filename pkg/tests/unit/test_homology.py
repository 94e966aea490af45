"""
Unit tests for groupoid homology: both complexes, coefficients and Shapiro
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.exceptions import DegreeError, DimensionError, MalformedComplexError
from algebra.gmodule import build_module, gset_module, trivial_module
from algebra.groupoid import (
    cyclic_group,
    disjoint_union,
    empty_groupoid,
    full_subgroupoid,
    left_regular_gset,
    pair_groupoid,
    product_groupoid,
    relabel,
    subgroupoid,
    trivial_group,
)
from algebra.homology import (
    HomologyComparison,
    IntChainComplex,
    bar_complex,
    homology,
    homology_groups,
    matui_complex,
    shapiro_check,
    two_path_check,
)
from algebra.intalg import FGAbelianGroup, IntMatrix

Z = FGAbelianGroup(free_rank=1)
ZERO = FGAbelianGroup()


def cyclic(m):
    return FGAbelianGroup(torsion=(m,))


def as_strings(groups):
    return [str(g) for g in groups]


class TestTrivialCoefficients:
    """Test H_* with constant coefficients against known answers"""

    @pytest.mark.parametrize("m,max_degree", [(2, 4), (3, 4), (4, 3)])
    def test_cyclic_groups(self, m, max_degree):
        expected = [Z, cyclic(m), ZERO, cyclic(m), ZERO][: max_degree + 1]
        assert homology(cyclic_group(m), max_degree=max_degree) == expected

    def test_trivial_group(self):
        assert homology(trivial_group(), max_degree=3) == [Z, ZERO, ZERO, ZERO]

    def test_pair_groupoid(self):
        assert as_strings(homology(pair_groupoid(2), max_degree=2)) == ["Z", "0", "0"]

    def test_empty_groupoid(self):
        assert homology(empty_groupoid(), max_degree=2) == [ZERO, ZERO, ZERO]

    def test_disjoint_union_adds(self):
        G = disjoint_union([cyclic_group(2), pair_groupoid(2)])
        assert as_strings(homology(G, max_degree=3)) == ["Z^2", "Z/2", "0", "Z/2"]

    def test_product_with_pair_groupoid(self):
        G = product_groupoid(cyclic_group(2), pair_groupoid(2))
        assert as_strings(homology(G, max_degree=2)) == ["Z", "Z/2", "0"]

    @settings(max_examples=20, deadline=None)
    @given(m=st.integers(2, 3), prefix=st.sampled_from(["a", "g", "x-"]))
    def test_invariant_under_relabeling(self, m, prefix):
        G = cyclic_group(m)
        H = relabel(G, {"*": f"{prefix}pt"}, {g: f"{prefix}{g}" for g in G.arrows})
        assert homology(H, max_degree=2) == homology(G, max_degree=2)


class TestCoefficients:
    """Test the bar complex with module coefficients"""

    def test_sign_coefficients(self):
        G = cyclic_group(2)
        sign = build_module(G, {"*": 1}, {"1": IntMatrix.from_dense([[-1]])})
        assert homology(G, sign, max_degree=2) == [cyclic(2), ZERO, cyclic(2)]

    def test_regular_coefficients_are_acyclic(self):
        G = cyclic_group(3)
        M = gset_module(left_regular_gset(G))
        assert homology(G, M, max_degree=2) == [Z, ZERO, ZERO]

    def test_trivial_module_matches_matui_complex(self):
        G = cyclic_group(3)
        assert homology(G, trivial_module(G), max_degree=3) == homology(G, max_degree=3)

    @pytest.mark.parametrize("G", [cyclic_group(2), pair_groupoid(2), disjoint_union([cyclic_group(2), pair_groupoid(2)])])
    def test_two_paths_agree(self, G):
        assert two_path_check(G, 3) is None

    def test_module_over_other_groupoid(self):
        with pytest.raises(DimensionError):
            bar_complex(cyclic_group(2), trivial_module(pair_groupoid(2)), 2)


class TestShapiro:
    """Test H_*(G; Ind N) against H_*(H; N)"""

    def test_group_over_its_unit_space(self):
        G = cyclic_group(2)
        H = subgroupoid(G, ["*"], [])
        comparison = shapiro_check(G, H, None, 2)
        assert comparison.passed
        assert comparison.left == (Z, ZERO, ZERO)

    def test_corner_of_pair_groupoid(self):
        G = pair_groupoid(2)
        H = full_subgroupoid(G, ["1"])
        assert shapiro_check(G, H, trivial_module(H), 2).passed

    def test_full_subgroupoid_of_product(self):
        G = product_groupoid(cyclic_group(2), pair_groupoid(2))
        H = full_subgroupoid(G, [G.objects[0]])
        comparison = shapiro_check(G, H, None, 2)
        assert comparison.passed
        assert comparison.right[1] == cyclic(2)

    def test_index_two_subgroup_through_degree_three(self):
        G = cyclic_group(4)
        H = subgroupoid(G, G.objects, ["0", "2"])
        comparison = shapiro_check(G, H, None, 3)
        assert comparison.passed
        assert comparison.left == (Z, cyclic(2), ZERO, cyclic(2))
        assert comparison.right == comparison.left

    def test_index_two_subgroup_with_permutation_coefficients(self):
        G = cyclic_group(4)
        H = subgroupoid(G, G.objects, ["0", "2"])
        assert shapiro_check(G, H, gset_module(left_regular_gset(H)), 3).passed


class TestComplexes:
    """Test chain complex construction and degree handling"""

    def test_malformed_complex(self):
        ones = IntMatrix.from_dense([[1]])
        with pytest.raises(MalformedComplexError):
            IntChainComplex(max_degree=2, ranks=(1, 1, 1), boundaries={1: ones, 2: ones})

    def test_rank_count_mismatch(self):
        with pytest.raises(DimensionError):
            IntChainComplex(max_degree=1, ranks=(1,), boundaries={1: IntMatrix.zeros(1, 1)})

    def test_degree_out_of_range(self):
        C = matui_complex(cyclic_group(2), 2)
        assert homology_groups(C, 1).presentation == cyclic(2)
        with pytest.raises(DegreeError):
            homology_groups(C, 2)
        with pytest.raises(DegreeError):
            C.boundary(3)

    def test_negative_max_degree(self):
        with pytest.raises(DegreeError):
            matui_complex(cyclic_group(2), -1)

    def test_bar_basis_lookup(self):
        G = pair_groupoid(2)
        C = bar_complex(G, trivial_module(G), 2)
        assert C.ranks == (2, 4, 8)
        assert C.index(0, (("1",), 0)) == 1


class TestComparison:
    """Test degree-wise comparison reports"""

    def test_mismatch_reported(self):
        comparison = HomologyComparison((Z, cyclic(2)), (Z, ZERO), labels=("a", "b"))
        assert not comparison.passed
        assert comparison.first_mismatch == 1
        assert comparison.to_dict() == {'passed': False, 'a': ["Z", "Z/2"], 'b': ["Z", "0"], 'first_mismatch': 1}

    def test_agreement(self):
        comparison = HomologyComparison((Z,), (Z,))
        assert comparison.passed
        assert comparison.first_mismatch is None
