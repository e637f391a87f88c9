import itertools
import random
from fractions import Fraction

import pytest

from gridperc.exact import (
    EliminationBasis,
    GeneralPositionError,
    build_general_position_matrix,
    dependency_coeffs,
    det,
    matrix_rank,
    verify_general_position,
)


def naive_rank(rows):
    """Plain Fraction-based Gauss-Jordan, kept independent of the library's
    fraction-free path."""
    a = [[Fraction(x) for x in row] for row in rows]
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pivot_row = a[rank]
        inv = pivot_row[col]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col] / inv
                for j in range(col, ncols):
                    a[i][j] -= f * pivot_row[j]
        rank += 1
    return rank


def naive_det(rows):
    """Cofactor expansion; fine for the tiny matrices used here."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        total += sign * rows[0][j] * naive_det(minor)
        sign = -sign
    return total


class TestDeterminant:
    def test_small(self):
        assert det([[2]]) == 2
        assert det([[1, 2], [3, 4]]) == -2
        assert det([[0, 1], [1, 0]]) == -1

    def test_fraction_entries(self):
        assert det([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)
        assert det([[Fraction(1, 2), 1], [1, 2]]) == 0

    def test_against_cofactor_oracle(self):
        rng = random.Random(5150)
        for _ in range(200):
            n = rng.randint(1, 5)
            rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
            assert det(rows) == naive_det(rows)

    def test_requires_square(self):
        with pytest.raises(ValueError):
            det([[1, 2, 3], [4, 5, 6]])


class TestRank:
    def test_identity(self):
        assert matrix_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3

    def test_proportional_rows(self):
        assert matrix_rank([[1, 2], [2, 4]]) == 1

    def test_zero_matrix(self):
        assert matrix_rank([[0, 0], [0, 0], [0, 0]]) == 0

    def test_against_naive_oracle(self):
        rng = random.Random(90125)
        for _ in range(300):
            m = rng.randint(1, 6)
            n = rng.randint(1, 6)
            rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
            assert matrix_rank(rows) == naive_rank(rows)

    def test_fraction_rows(self):
        rows = [[Fraction(1, 3), Fraction(2, 3)], [Fraction(1, 7), Fraction(2, 7)], [0, 1]]
        assert matrix_rank(rows) == naive_rank(rows) == 2


class TestGeneralPositionMatrix:
    def test_smallest(self):
        assert build_general_position_matrix(3, 2) == ((1,), (1,), (1,))

    def test_power_rows(self):
        assert build_general_position_matrix(4, 3) == ((1, 0), (0, 1), (1, 3), (1, 4))

    def test_identity_block_then_powers(self):
        m = build_general_position_matrix(5, 5)
        assert m[:4] == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        assert m[4] == (1, 5, 25, 125)

    def test_bounds(self):
        with pytest.raises(ValueError):
            build_general_position_matrix(3, 4)
        with pytest.raises(ValueError):
            build_general_position_matrix(3, 1)

    def test_entries_nonnegative(self):
        for n in range(2, 9):
            for t in range(2, n + 1):
                assert all(x >= 0 for row in build_general_position_matrix(n, t) for x in row)


class TestVerifyGeneralPosition:
    def test_built_matrices_pass(self):
        assert verify_general_position(build_general_position_matrix(3, 2), 2)
        assert verify_general_position(build_general_position_matrix(8, 4), 4)

    def test_duplicate_rows_fail(self):
        assert not verify_general_position([[1, 0], [1, 0], [0, 1]], 3)

    def test_column_mismatch(self):
        with pytest.raises(ValueError):
            verify_general_position([[1, 0], [0, 1]], 4)


class TestDependencyCoeffs:
    def test_two_point_case(self):
        m = build_general_position_matrix(3, 2)
        assert dependency_coeffs(m, (1, 3)) == (-1, 1)

    def test_identity_plus_power_row(self):
        m = build_general_position_matrix(4, 3)
        assert dependency_coeffs(m, (1, 2, 3)) == (1, 3, -1)

    def test_substitution_is_zero(self):
        m = build_general_position_matrix(4, 3)
        lam = dependency_coeffs(m, (2, 3, 4))
        assert all(lam)
        for j in range(2):
            assert sum(c * m[i - 1][j] for c, i in zip(lam, (2, 3, 4))) == 0

    def test_substitution_exhaustive(self):
        for n in range(2, 7):
            for t in range(2, min(n, 4) + 1):
                m = build_general_position_matrix(n, t)
                for rows in itertools.combinations(range(1, n + 1), t):
                    lam = dependency_coeffs(m, rows)
                    assert all(lam)
                    for j in range(t - 1):
                        assert sum(c * m[i - 1][j] for c, i in zip(lam, rows)) == 0

    def test_two_value_sign_pattern(self):
        # every thickness-2 dependency is (-1, +1)
        for n in range(2, 8):
            m = build_general_position_matrix(n, 2)
            for rows in itertools.combinations(range(1, n + 1), 2):
                assert dependency_coeffs(m, rows) == (-1, 1)

    def test_scaling_preserves_dependency(self):
        m = build_general_position_matrix(5, 3)
        lam = dependency_coeffs(m, (2, 4, 5))
        scaled = [Fraction(3, 7) * c for c in lam]
        for j in range(2):
            assert sum(c * m[i - 1][j] for c, i in zip(scaled, (2, 4, 5))) == 0

    def test_errors(self):
        m = build_general_position_matrix(4, 3)
        with pytest.raises(ValueError):
            dependency_coeffs(m, (1, 2))
        with pytest.raises(ValueError):
            dependency_coeffs(m, (1, 1, 2))
        with pytest.raises(ValueError):
            dependency_coeffs(m, (1, 2, 5))

    def test_zero_coefficient_detected(self):
        # rows 1, 2, 4 of this matrix are dependent with a zero coefficient on
        # row 1, so the matrix is not in general position
        m = [[1, 0], [0, 1], [1, 1], [0, 2]]
        with pytest.raises(GeneralPositionError):
            dependency_coeffs(m, (1, 2, 4))


class TestEliminationBasis:
    def test_insert_and_rank(self):
        basis = EliminationBasis(3)
        assert basis.insert([1, 0, 0])
        assert basis.insert([1, 1, 0])
        assert not basis.insert([2, 1, 0])
        assert basis.rank == 2
        assert basis.insert([0, 0, 5])
        assert basis.rank == 3

    def test_duplicate_insert_leaves_state(self):
        basis = EliminationBasis(4)
        vectors = [[1, 2, 3, 4], [0, 1, 0, 1]]
        for v in vectors:
            assert basis.insert(v)
        for v in vectors:
            assert not basis.insert(v)
        assert basis.rank == 2

    def test_matches_rank_on_random_matrices(self):
        rng = random.Random(314)
        for _ in range(100):
            m = rng.randint(1, 6)
            n = rng.randint(1, 6)
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
            basis = EliminationBasis(n)
            for row in rows:
                basis.insert(row)
            assert basis.rank == naive_rank(rows)

    def test_contains(self):
        basis = EliminationBasis(3)
        basis.insert([1, 1, 0])
        basis.insert([0, 0, 1])
        assert basis.contains([2, 2, 7])
        assert not basis.contains([1, 0, 0])
        assert basis.rank == 2

    def test_fraction_vectors(self):
        basis = EliminationBasis(2)
        assert basis.insert([Fraction(1, 2), Fraction(1, 3)])
        assert not basis.insert([Fraction(3, 2), 1])

    def test_dimension_mismatch(self):
        basis = EliminationBasis(2)
        with pytest.raises(ValueError):
            basis.insert([1, 2, 3])
