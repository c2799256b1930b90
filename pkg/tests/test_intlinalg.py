import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parikh import (
    Vec,
    cramer_solve,
    determinant,
    find_integer_dependency,
    hadamard_bound,
    is_linearly_independent,
    nonneg_integer_solve,
    reduce_multiplicities,
)
from helpers import cofactor_determinant, naive_rank


def vec2(x, y):
    return Vec({"a": x, "b": y})


class TestDeterminant:
    def test_examples(self):
        assert determinant([[1, 0], [0, 1]]) == 1
        assert determinant([[2, 1], [1, 1]]) == cofactor_determinant([[2, 1], [1, 1]]) == 1
        assert determinant([[1, 2], [3, 4]]) == cofactor_determinant([[1, 2], [3, 4]]) == -2
        assert determinant([]) == 1

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            determinant([[1, 2]])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 5), st.data())
    def test_matches_cofactor_expansion(self, n, data):
        m = [
            [data.draw(st.integers(-9, 9)) for _ in range(n)]
            for _ in range(n)
        ]
        assert determinant(m) == cofactor_determinant(m)


class TestHadamard:
    def test_examples(self):
        assert hadamard_bound(2, 3) == 18
        assert hadamard_bound(0, 5) == 1
        assert hadamard_bound(3, 2) == 48

    def test_bounds_determinants(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randint(1, 5)
            m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            assert abs(determinant(m)) <= hadamard_bound(n, 9)


class TestCramer:
    def test_identity(self):
        assert cramer_solve([[1, 0], [0, 1]], [5, 7]) == [5, 7]

    def test_diagonal_fractions(self):
        assert cramer_solve([[2, 0], [0, 3]], [1, 1]) == [Fraction(1, 2), Fraction(1, 3)]

    def test_singular(self):
        assert cramer_solve([[1, 1], [2, 2]], [1, 2]) is None

    def test_substitution_property(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(1, 4)
            m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
            b = [rng.randint(-6, 6) for _ in range(n)]
            x = cramer_solve(m, b)
            if x is None:
                assert determinant(m) == 0
                continue
            for row, rhs in zip(m, b):
                assert sum(c * xi for c, xi in zip(row, x)) == rhs


class TestNonnegSolve:
    def test_diagonal(self):
        assert nonneg_integer_solve([vec2(2, 0), vec2(0, 3)], vec2(4, 6)) == [2, 2]

    def test_parity_obstruction(self):
        assert nonneg_integer_solve([vec2(2, 0), vec2(0, 3)], vec2(3, 0)) is None

    def test_two_by_two(self):
        assert nonneg_integer_solve([vec2(1, 2), vec2(2, 1)], vec2(3, 3)) == [1, 1]

    def test_negative_coefficient_rejected(self):
        assert nonneg_integer_solve([vec2(1, 0), vec2(0, 1)], vec2(-1, 2)) is None

    def test_dependent_rejected(self):
        with pytest.raises(ValueError):
            nonneg_integer_solve([vec2(1, 1), vec2(2, 2)], vec2(3, 3))


class TestIndependence:
    def test_examples(self):
        assert is_linearly_independent([vec2(1, 0), vec2(0, 1)])
        assert not is_linearly_independent([vec2(1, 1), vec2(2, 2)])
        assert is_linearly_independent([])

    def test_matches_naive_rank(self):
        rng = random.Random(13)
        for _ in range(80):
            vs = [vec2(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))]
            assert is_linearly_independent(vs) == (naive_rank(vs) == len(vs))


def check_dependency(vectors, alpha, entry_bound):
    total = Vec.zero()
    for v, a in zip(vectors, alpha):
        total = total + v * a
    assert total.is_zero()
    assert any(a > 0 for a in alpha)
    dims = {s for v in vectors for s in v.support()}
    assert max(abs(a) for a in alpha) <= hadamard_bound(len(dims), max(entry_bound, 1))


class TestIntegerDependency:
    def test_triangle(self):
        vs = [vec2(1, 0), vec2(0, 1), vec2(1, 1)]
        check_dependency(vs, find_integer_dependency(vs), 1)

    def test_scalar_multiple(self):
        vs = [vec2(1, 1), vec2(2, 2)]
        alpha = find_integer_dependency(vs)
        check_dependency(vs, alpha, 2)
        assert alpha[0] * 1 + alpha[1] * 2 == 0

    def test_opposite(self):
        vs = [vec2(1, 0), vec2(-1, 0)]
        alpha = find_integer_dependency(vs)
        check_dependency(vs, alpha, 1)
        assert alpha == [1, 1]

    def test_independent_rejected(self):
        with pytest.raises(ValueError):
            find_integer_dependency([vec2(1, 0), vec2(0, 1)])

    def test_random_dependent_sets(self):
        rng = random.Random(17)
        for _ in range(120):
            vs = [vec2(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(3)]
            if is_linearly_independent(vs):
                continue
            check_dependency(vs, find_integer_dependency(vs), 4)


def check_reduction(vectors, counts, new_counts, kept, entry_bound):
    before = Vec.zero()
    after = Vec.zero()
    for v, c in zip(vectors, counts):
        before = before + v * c
    for v, c in zip(vectors, new_counts):
        after = after + v * c
    assert before == after
    assert all(c >= 0 for c in new_counts)
    assert is_linearly_independent([vectors[i] for i in kept])
    dims = {s for v in vectors for s in v.support()}
    h = max(1, hadamard_bound(len(dims), entry_bound))
    for i, c in enumerate(new_counts):
        if i not in kept:
            assert c < h


class TestReduceMultiplicities:
    def test_triangle_instance(self):
        vs = [vec2(1, 0), vec2(0, 1), vec2(1, 1)]
        new_counts, kept = reduce_multiplicities(vs, [3, 3, 3], entry_bound=1)
        check_reduction(vs, [3, 3, 3], new_counts, kept, 1)
        assert [vs[i] for i in kept] == [vec2(1, 1)]
        assert new_counts == [0, 0, 6]

    def test_small_counts_unchanged(self):
        vs = [vec2(1, 0), vec2(0, 1), vec2(1, 1)]
        new_counts, kept = reduce_multiplicities(vs, [1, 1, 1], entry_bound=1)
        assert new_counts == [1, 1, 1]
        assert kept == ()

    def test_independent_input_unchanged(self):
        vs = [vec2(1, 0), vec2(0, 1)]
        new_counts, kept = reduce_multiplicities(vs, [9, 5], entry_bound=1)
        assert new_counts == [9, 5]
        assert set(kept) == {0, 1}

    def test_random_instances(self):
        rng = random.Random(19)
        for _ in range(150):
            k = rng.randint(1, 4)
            vs = [vec2(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(k)]
            counts = [rng.randint(0, 30) for _ in range(k)]
            new_counts, kept = reduce_multiplicities(vs, counts, entry_bound=3)
            check_reduction(vs, counts, new_counts, kept, 3)
