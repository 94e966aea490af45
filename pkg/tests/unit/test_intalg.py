"""
Unit tests for exact integer linear algebra
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.exceptions import DimensionError, MalformedComplexError, NotACycleMapError
from algebra.intalg import (
    FGAbelianGroup,
    IntMatrix,
    IntegerSolver,
    cokernel,
    homology_of_pair,
    induced_subquotient_map,
    smith_normal_form,
    solve_integer,
)


def small_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


class TestIntMatrix:
    """Test sparse matrix arithmetic"""

    def test_zero_entries_are_dropped(self):
        """Verify explicit zeros never reach the coordinate map"""
        A = IntMatrix(2, 2, {(0, 0): 0, (1, 1): 3})
        assert A.nnz == 1
        assert A.to_dense() == [[0, 0], [0, 3]]

    def test_entry_outside_shape_rejected(self):
        """Verify out-of-range entries raise DimensionError"""
        with pytest.raises(DimensionError):
            IntMatrix(1, 1, {(1, 0): 1})

    def test_matmul_shape_mismatch(self):
        """Verify incompatible products raise DimensionError"""
        with pytest.raises(DimensionError):
            IntMatrix.identity(2) @ IntMatrix.identity(3)

    def test_matmul(self):
        A = IntMatrix.from_dense([[1, 2], [3, 4]])
        B = IntMatrix.from_dense([[0, 1], [1, 0]])
        assert (A @ B).to_dense() == [[2, 1], [4, 3]]

    def test_determinant(self):
        """Verify the fraction-free determinant on small matrices"""
        assert IntMatrix.from_dense([[2, 1], [1, 1]]).determinant() == 1
        assert IntMatrix.from_dense([[0, 1], [1, 0]]).determinant() == -1
        assert IntMatrix.from_dense([[1, 2], [2, 4]]).determinant() == 0


class TestSmithNormalForm:
    """Test the Smith decomposition"""

    def test_textbook_example(self):
        """Verify the invariant factors of a classic 3x3 example"""
        A = IntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        snf = smith_normal_form(A)
        assert snf.diagonal == (2, 6, 12)
        assert snf.verify(A)

    def test_coprime_diagonal(self):
        """Verify diag(2, 3) is canonicalised to diag(1, 6)"""
        snf = smith_normal_form(IntMatrix.diagonal([2, 3]))
        assert snf.diagonal == (1, 6)

    def test_zero_matrix(self):
        snf = smith_normal_form(IntMatrix.zeros(2, 3))
        assert snf.rank == 0
        assert snf.S.is_zero()

    @settings(max_examples=60, deadline=None)
    @given(small_matrices())
    def test_product_identity_and_divisibility(self, data):
        """U·A·V = S with a divisibility chain on the diagonal"""
        A = IntMatrix.from_dense(data)
        snf = smith_normal_form(A)
        assert snf.verify(A)
        assert all(d > 0 for d in snf.diagonal)
        for a, b in zip(snf.diagonal, snf.diagonal[1:]):
            assert b % a == 0
        assert (snf.U @ snf.U_inv).is_identity()
        assert (snf.V @ snf.V_inv).is_identity()


class TestIntegerSolving:
    """Test solve_integer and IntegerSolver"""

    def test_solvable(self):
        A = IntMatrix.from_dense([[2, 0], [0, 3]])
        assert solve_integer(A, [4, 9]) == [2, 3]

    def test_rational_but_not_integral(self):
        """Verify systems solvable only over Q report no solution"""
        assert solve_integer(IntMatrix.from_dense([[2]]), [3]) is None

    def test_inconsistent(self):
        assert solve_integer(IntMatrix.from_dense([[1], [1]]), [1, 2]) is None

    def test_wrong_length(self):
        with pytest.raises(DimensionError):
            solve_integer(IntMatrix.identity(2), [1])

    @settings(max_examples=60, deadline=None)
    @given(small_matrices(), st.data())
    def test_solutions_of_images(self, data, draw):
        """Every image vector A·x is solvable and the solution reproduces it"""
        A = IntMatrix.from_dense(data)
        x = draw.draw(st.lists(st.integers(-4, 4), min_size=A.cols, max_size=A.cols))
        b = A.apply({j: v for j, v in enumerate(x) if v})
        solution = IntegerSolver(A).solve(b)
        assert solution is not None
        assert A.apply(solution) == b


class TestAbelianGroups:
    """Test canonical presentations"""

    def test_from_orders_merges_coprime_parts(self):
        assert FGAbelianGroup.from_orders([2, 3]) == FGAbelianGroup(torsion=(6,))

    def test_from_orders_keeps_free_part(self):
        group = FGAbelianGroup.from_orders([2, 0, 2])
        assert group == FGAbelianGroup(free_rank=1, torsion=(2, 2))

    def test_divisibility_chain_enforced(self):
        with pytest.raises(ValueError):
            FGAbelianGroup(torsion=(2, 3))

    def test_rendering(self):
        assert str(FGAbelianGroup()) == "0"
        assert str(FGAbelianGroup(free_rank=1)) == "Z"
        assert str(FGAbelianGroup(free_rank=2)) == "Z^2"
        assert str(FGAbelianGroup(free_rank=1, torsion=(2,))) == "Z/2 + Z"

    def test_direct_sum(self):
        left = FGAbelianGroup(free_rank=1, torsion=(2,))
        assert left.direct_sum(FGAbelianGroup(torsion=(3,))) == FGAbelianGroup(free_rank=1, torsion=(6,))


class TestSubquotients:
    """Test cokernels, homology of a pair and induced maps"""

    def test_cokernel(self):
        coker = cokernel(IntMatrix.from_dense([[2], [0]]))
        assert coker.group == FGAbelianGroup(free_rank=1, torsion=(2,))
        assert coker.reduce({0: 3}) == (1, 0)

    def test_torsion_homology(self):
        """Verify ker(0)/im(2) = Z/2"""
        H = homology_of_pair(IntMatrix.zeros(0, 1), IntMatrix.from_dense([[2]]))
        assert H.presentation == FGAbelianGroup(torsion=(2,))
        assert H.is_boundary({0: 2})
        assert not H.is_boundary({0: 1})

    def test_free_homology(self):
        """Verify ker([1 -1]) / 0 = Z"""
        H = homology_of_pair(IntMatrix.from_dense([[1, -1]]), IntMatrix.zeros(2, 0))
        assert H.presentation == FGAbelianGroup(free_rank=1)
        assert H.is_cycle({0: 1, 1: 1})
        assert not H.is_cycle({0: 1})

    def test_malformed_complex(self):
        with pytest.raises(MalformedComplexError):
            homology_of_pair(IntMatrix.identity(1), IntMatrix.identity(1))

    def test_identity_map(self):
        H = homology_of_pair(IntMatrix.zeros(0, 1), IntMatrix.from_dense([[2]]))
        f = induced_subquotient_map(IntMatrix.identity(1), H, H)
        assert f.is_identity()
        assert f.is_isomorphism()

    def test_multiplication_by_two_on_z(self):
        H = homology_of_pair(IntMatrix.zeros(0, 1), IntMatrix.zeros(1, 0))
        f = induced_subquotient_map(IntMatrix.from_dense([[2]]), H, H)
        assert not f.is_isomorphism()
        assert f.matrix.to_dense() == [[2]]

    def test_not_a_cycle_map(self):
        """Verify a map sending a cycle off the cycles is rejected"""
        source = homology_of_pair(IntMatrix.zeros(0, 1), IntMatrix.zeros(1, 0))
        target = homology_of_pair(IntMatrix.from_dense([[1]]), IntMatrix.zeros(1, 0))
        with pytest.raises(NotACycleMapError):
            induced_subquotient_map(IntMatrix.identity(1), source, target)
