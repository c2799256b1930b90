"""Shared test utilities: seeded random instance generators and small
independent oracles (written naively on purpose; they cross-check the
library, so they must not reuse its algorithms)."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from parikh import Grammar, TransitionMultiset, Vec, grammar_from_rules, parse_grammar

GA_TEXT = "alphabet: a\nstart: S\nS -> a : S\nS -> :\n"
GB_TEXT = "alphabet: a\nstart: S\nS -> a : T\nT -> a : S\nS -> :\n"
GC_TEXT = "alphabet: a\nstart: S\nS -> a : S S\nS -> :\n"


def ga() -> Grammar:
    return parse_grammar(GA_TEXT)


def gb() -> Grammar:
    return parse_grammar(GB_TEXT)


def gc() -> Grammar:
    return parse_grammar(GC_TEXT)


def random_grammar(
    rng: random.Random,
    max_nonterminals: int = 4,
    max_letters: int = 2,
    regular: bool = False,
    neg_prob: float = 0.15,
    extra_rules: int = 3,
    exact_letters: Optional[int] = None,
) -> Grammar:
    """Random normal-form grammar with at least one final transition."""
    n = rng.randint(1, max_nonterminals)
    a = exact_letters if exact_letters is not None else rng.randint(1, max_letters)
    nts = [f"Q{i}" for i in range(n)]
    letters = ["a", "b", "c"][:a]
    rules = []
    for _ in range(rng.randint(n, n + extra_rules)):
        src = rng.choice(nts)
        if rng.random() < 0.3:
            out = Vec.zero()
        else:
            sign = -1 if rng.random() < neg_prob else 1
            out = Vec.unit(rng.choice(letters), sign)
        roll = rng.random()
        if regular:
            targets = Vec.zero() if roll < 0.35 else Vec.unit(rng.choice(nts))
        elif roll < 0.3:
            targets = Vec.zero()
        elif roll < 0.75:
            targets = Vec.unit(rng.choice(nts))
        else:
            targets = Vec.unit(rng.choice(nts)) + Vec.unit(rng.choice(nts))
        rules.append((src, out, targets))
    if not any(t.is_zero() for _, _, t in rules):
        rules.append((rng.choice(nts), Vec.zero(), Vec.zero()))
    return grammar_from_rules(letters, "Q0", rules)


def random_marking(rng: random.Random, g: Grammar, max_total: int = 2) -> Vec:
    total = rng.randint(1, max_total)
    acc = Vec.zero()
    for _ in range(total):
        acc = acc + Vec.unit(rng.choice(g.nonterminals))
    return acc


def simulate_subrun(
    rng: random.Random, g: Grammar, src: Vec, steps: int
) -> tuple[TransitionMultiset, Vec]:
    """Fire random enabled transitions; valid subrun by construction."""
    marking = src
    counts: dict[str, int] = {}
    for _ in range(steps):
        enabled = [t for t in g.transitions if marking.get(t.source) >= 1]
        if not enabled:
            break
        t = rng.choice(enabled)
        counts[t.tid] = counts.get(t.tid, 0) + 1
        marking = marking - Vec.unit(t.source) + t.targets
    return TransitionMultiset.from_counts(g, counts), marking


def random_run(
    rng: random.Random, g: Grammar, max_steps: int = 24, tries: int = 40
) -> Optional[TransitionMultiset]:
    """Random run from the start symbol: simulate, preferring finals once
    the marking grows, and retry until a derivation terminates."""
    for _ in range(tries):
        marking = Vec.unit(g.start)
        counts: dict[str, int] = {}
        for _ in range(max_steps):
            if marking.is_zero():
                return TransitionMultiset.from_counts(g, counts)
            enabled = [t for t in g.transitions if marking.get(t.source) >= 1]
            if not enabled:
                break
            finals = [t for t in enabled if t.targets.is_zero()]
            shrinking = [t for t in enabled if t.targets.total() <= 1]
            if finals and (marking.total() > 2 or rng.random() < 0.45):
                t = rng.choice(finals)
            elif shrinking and marking.total() > 3:
                t = rng.choice(shrinking)
            else:
                t = rng.choice(enabled)
            counts[t.tid] = counts.get(t.tid, 0) + 1
            marking = marking - Vec.unit(t.source) + t.targets
        if marking.is_zero() and counts:
            return TransitionMultiset.from_counts(g, counts)
    return None


def with_unreachable_cycle(g: Grammar) -> tuple[Grammar, dict[str, int]]:
    """Extend a grammar with a detached two-state cycle; returns the new
    grammar and the cycle's counts (a connectivity-violating addition)."""
    rules = [(t.source, t.output, t.targets) for t in g.transitions]
    rules.append(("Zc0", Vec.zero(), Vec.unit("Zc1")))
    rules.append(("Zc1", Vec.zero(), Vec.unit("Zc0")))
    g2 = grammar_from_rules(g.alphabet, g.start, rules)
    n = len(g.transitions)
    return g2, {f"t{n + 1}": 1, f"t{n + 2}": 1}


# ---------------------------------------------------------------------------
# independent oracles


def cofactor_determinant(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_determinant(minor)
    return total


def naive_rank(vectors: Sequence[Vec]) -> int:
    syms = sorted({s for v in vectors for s in v.support()})
    rows = [[Fraction(v.get(s)) for s in syms] for v in vectors]
    rank = 0
    for col in range(len(syms)):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def enumerate_combinations(base: Vec, periods: Sequence[Vec], coeff_bound: int) -> set[Vec]:
    """All base + sum c_i * periods[i] with 0 <= c_i <= coeff_bound."""
    out = set()
    for combo in product(range(coeff_bound + 1), repeat=len(periods)):
        acc = base
        for c, p in zip(combo, periods):
            if c:
                acc = acc + p * c
        out.add(acc)
    return out


def brute_force_multisets(g: Grammar, max_total: int):
    """Every transition count tuple with total in [1..max_total]."""
    tids = [t.tid for t in g.transitions]

    def rec(i: int, left: int, acc: dict[str, int]):
        if i == len(tids):
            if acc:
                yield TransitionMultiset.from_counts(g, dict(acc))
            return
        for c in range(left + 1):
            if c:
                acc[tids[i]] = c
            yield from rec(i + 1, left - c, acc)
            if c:
                del acc[tids[i]]

    yield from rec(0, max_total, {})
