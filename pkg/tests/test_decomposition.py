import random

import pytest

from parikh import (
    Vec,
    base_run_bound,
    decompose_run,
    format_multiset,
    is_simple_cycle,
    normalize,
    parse_grammar,
    parse_multiset,
    validate_decomposition,
)
from helpers import brute_force_multisets, ga, gb, random_grammar, random_run


class TestBaseRunBound:
    def test_regular_two_states_unary(self):
        assert base_run_bound(gb()).value == 113

    def test_regular_one_state_unary(self):
        assert base_run_bound(ga()).value == 34

    def test_general_one_state_unary(self):
        g = parse_grammar("alphabet: a\nstart: S\nS -> a : S S\nS -> :")
        assert base_run_bound(g).value == 260

    def test_requires_normal_form(self):
        g = parse_grammar("alphabet: a\nstart: S\nS -> : S S S")
        with pytest.raises(ValueError):
            base_run_bound(g)


class TestDecomposeRun:
    def test_ga_pumped(self):
        m = parse_multiset(ga(), "t1*5 t2*1")
        dec = decompose_run(ga(), m, "S")
        assert format_multiset(dec.base_run) == "t2*1"
        assert [(format_multiset(t.cycle), t.anchor, t.count) for t in dec.cycles] == [
            ("t1*1", "S", 5)
        ]
        validate_decomposition(dec, m, "S")

    def test_skeleton_identity(self):
        m = parse_multiset(ga(), "t2*1")
        dec = decompose_run(ga(), m, "S")
        assert dec.base_run.counts == m.counts and dec.cycles == ()

    def test_gb_loop(self):
        m = parse_multiset(gb(), "t1*2 t2*2 t3*1")
        dec = decompose_run(gb(), m, "S")
        assert format_multiset(dec.base_run) == "t3*1"
        assert [(format_multiset(t.cycle), t.count) for t in dec.cycles] == [("t1*1 t2*1", 2)]
        assert dec.parikh() == Vec({"a": 4})

    def test_rejects_non_run(self):
        with pytest.raises(ValueError):
            decompose_run(ga(), parse_multiset(ga(), "t1*1"), "S")

    def test_random_runs_validate(self):
        rng = random.Random(41)
        done = 0
        while done < 80:
            g = random_grammar(rng)
            m = random_run(rng, g, max_steps=16)
            if m is None:
                continue
            dec = decompose_run(g, m, g.start)
            validate_decomposition(dec, m, g.start)
            assert dec.parikh() == m.parikh()
            done += 1


class TestEnumerationCompleteness:
    corpus = [
        "alphabet: a\nstart: S\nS -> a : S\nS -> :",
        "alphabet: a\nstart: S\nS -> a : T\nT -> a : S\nS -> :",
        "alphabet: a b\nstart: S\nS -> a : T\nT -> b : U\nU -> : S\nS -> :",
        "alphabet: a\nstart: S\nS -> a : S S\nS -> :",
        "alphabet: a b\nstart: S\nS -> a : S T\nT -> b :\nS -> :",
    ]

    def test_no_simple_cycle_missed(self):
        # brute force over all count vectors, library enumeration per anchor
        from parikh import enumerate_simple_cycles, is_cycle, tree_size_bound

        for text in self.corpus:
            g = normalize(parse_grammar(text))
            gamma = tree_size_bound(len(g.nonterminals), g.is_regular())
            for q in g.nonterminals:
                brute = {
                    m.counts
                    for m in brute_force_multisets(g, min(gamma + 1, 9))
                    if is_cycle(m, q) and is_simple_cycle(m, q)
                }
                listed = {m.counts for m in enumerate_simple_cycles(g, q, 9)}
                assert listed == {c for c in brute if sum(k for _, k in c) < gamma}
                # and nothing simple exists at or past the bound
                assert all(sum(k for _, k in c) < gamma for c in brute)
