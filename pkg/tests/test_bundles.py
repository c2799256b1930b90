import random

import pytest

from parikh import (
    Vec,
    normalize,
    oracle_language,
    parse_grammar,
    regular_bundles,
    two_letter_bundles,
)
from parikh.bundles import _sector_period_sets
from helpers import ga, gb, random_grammar
from parikh.hardness import hard_grammar


class TestRegularBundles:
    def test_gb_shape(self):
        result = regular_bundles(gb(), run_cap=34)
        assert len(result.bundles) == 1
        (b,) = result.bundles
        assert set(b.bases) == {Vec.zero()}
        assert set(b.periods) == {Vec.unit("a", 2)}
        assert result.truncated  # 34 is below the theoretical bound

    def test_finite_language_single_base(self):
        g = parse_grammar("alphabet: a\nstart: S\nS -> a : T\nT -> :")
        result = regular_bundles(g, run_cap=10)
        assert len(result.bundles) == 1
        (b,) = result.bundles
        assert set(b.bases) == {Vec.unit("a")} and b.periods == ()
        assert not result.truncated  # enumeration exhausted the language

    def test_window_equality_and_count_random(self):
        rng = random.Random(67)
        done = 0
        while done < 15:
            g = random_grammar(rng, max_nonterminals=3, max_letters=2, regular=True)
            lang = oracle_language(g, 24, 8)
            if lang != oracle_language(g, 48, 8):
                continue
            result = regular_bundles(g, run_cap=40)
            n, a = len(g.nonterminals), len(g.alphabet)
            assert len(result.bundles) <= n ** (a * a) + 1
            for i in range(-8, 9):
                for j in range(-8, 9) if a == 2 else [0]:
                    v = Vec({"a": i, "b": j}) if a == 2 else Vec.unit("a", i)
                    assert result.member(v) == (v in lang)
            done += 1

    def test_rejects_non_regular(self):
        g = parse_grammar("alphabet: a\nstart: S\nS -> : S S\nS -> :")
        with pytest.raises(ValueError):
            regular_bundles(g, run_cap=5)

    def test_count_bound_at_full_cap(self):
        # run_cap at the theoretical bound: at most N**(A*A) bundles
        result = regular_bundles(ga(), run_cap=34)
        assert not result.truncated or result.run_cap >= 34
        assert len(result.bundles) <= 1  # N=1, A=1


class TestSectorPeriodSets:
    def test_quadrant_pair(self):
        assert _sector_period_sets([(2, 0), (0, 2)]) == [((2, 0), (0, 2))]

    def test_single_direction(self):
        assert _sector_period_sets([(1, 1), (2, 2)]) == [((1, 1),)]

    def test_opposite_rays(self):
        assert _sector_period_sets([(1, 0), (-1, 0)]) == [((1, 0),), ((-1, 0),)]

    def test_full_plane_three_sectors(self):
        sets = _sector_period_sets([(1, 0), (0, 1), (-1, -1)])
        assert len(sets) == 3
        assert all(len(s) == 2 for s in sets)

    def test_halfplane_sectors(self):
        sets = _sector_period_sets([(1, 0), (0, 1), (-1, 0)])
        assert sets == [((1, 0), (0, 1)), ((0, 1), (-1, 0))]

    def test_empty(self):
        assert _sector_period_sets([]) == [()]


class TestTwoLetterBundles:
    def test_two_cycle_directions(self):
        g = parse_grammar(
            "alphabet: x y\nstart: S\n"
            "S -> x : T\nT -> x : S\nS -> y : U\nU -> y : S\nS -> :"
        )
        result = two_letter_bundles(g, run_cap=8)
        periods = {frozenset(p.items() for p in b.periods) for b in result.bundles}
        assert periods == {
            frozenset({(("x", 2),), (("y", 2),)})
        }

    def test_single_direction_degenerate(self):
        g = parse_grammar("alphabet: x y\nstart: S\nS -> x : T\nT -> y : S\nS -> :")
        result = two_letter_bundles(g, run_cap=8)
        assert len(result.bundles) == 1
        (b,) = result.bundles
        assert [p.to_dict() for p in b.periods] == [{"x": 1, "y": 1}]

    def test_window_equality_hard_fragment(self):
        g = normalize(hard_grammar(1, "stripped"))
        result = two_letter_bundles(g, run_cap=14)
        lang = oracle_language(g, 40, 10)
        for i in range(0, 11):
            for j in range(0, 11):
                v = Vec({"x": i, "y": j})
                assert result.member(v) == (v in lang)

    def test_window_equality_mixed_sign(self):
        g = parse_grammar(
            "alphabet: x y\nstart: S\n"
            "S -> x : S\nS -> y^-1 : S\nS -> :"
        )
        result = two_letter_bundles(g, run_cap=6)
        lang = oracle_language(g, 20, 6)
        assert lang == oracle_language(g, 40, 6)
        for i in range(-6, 7):
            for j in range(-6, 7):
                v = Vec({"x": i, "y": j})
                assert result.member(v) == (v in lang)

    def test_needs_two_letters(self):
        with pytest.raises(ValueError):
            two_letter_bundles(ga(), run_cap=5)
