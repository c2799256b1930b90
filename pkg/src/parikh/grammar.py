"""Commutative grammars: data model, text format, and constructions.

A grammar has a terminal alphabet, a set of nonterminals, a start
nonterminal, and transitions ``source -> output : targets`` where
`output` is an integer letter vector (negative emissions allowed) and
`targets` is a nonterminal multiset.  Word order never matters here;
the language of a grammar is the set of letter-count vectors of its
complete derivations.

File format (UTF-8, line oriented, ``#`` starts a comment)::

    alphabet: a b        # ordered terminal declarations
    start: S
    S -> a : S           # one transition per line
    S -> :               # empty output, empty targets
    T -> a^2 b^-1 : T^2 U

Output and target fields use monomial syntax; target exponents must be
positive.  Nonterminals are not declared, they are inferred from use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .vector import Vec, format_monomial, is_name, parse_monomial


class GrammarError(ValueError):
    """Invalid grammar structure (validation failure)."""


class GrammarParseError(GrammarError):
    """Syntax or reference error in grammar text; carries a line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class Transition:
    """One rewriting rule: consume `source`, emit `output`, spawn `targets`.

    The id is stable bookkeeping (multisets reference it) and is excluded
    from structural equality.
    """

    tid: str = field(compare=False)
    source: str
    output: Vec
    targets: Vec

    def is_final(self) -> bool:
        return self.targets.is_zero()

    def __repr__(self) -> str:
        return (
            f"Transition({self.tid}: {self.source} -> "
            f"{format_monomial(self.output)} : {format_monomial(self.targets)})"
        )


@dataclass(frozen=True)
class Grammar:
    """Immutable commutative grammar.

    `alphabet` keeps declaration order (it fixes coordinate order for
    dense vector encodings); `nonterminals` is sorted.
    """

    alphabet: tuple[str, ...]
    nonterminals: tuple[str, ...]
    start: str
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        terms = set(self.alphabet)
        nts = set(self.nonterminals)
        if len(terms) != len(self.alphabet):
            raise GrammarError("duplicate terminal in alphabet")
        if len(nts) != len(self.nonterminals):
            raise GrammarError("duplicate nonterminal")
        clash = terms & nts
        if clash:
            raise GrammarError(f"terminal/nonterminal name clash: {sorted(clash)}")
        for name in list(terms) + list(nts):
            if not is_name(name):
                raise GrammarError(f"bad symbol name {name!r}")
        if self.start not in nts:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        seen_ids = set()
        for t in self.transitions:
            if t.tid in seen_ids:
                raise GrammarError(f"duplicate transition id {t.tid}")
            seen_ids.add(t.tid)
            if t.source not in nts:
                raise GrammarError(f"transition {t.tid}: unknown source {t.source!r}")
            for sym, _ in t.output:
                if sym not in terms:
                    raise GrammarError(f"transition {t.tid}: undeclared terminal {sym!r}")
            for sym, count in t.targets:
                if sym not in nts:
                    raise GrammarError(f"transition {t.tid}: unknown nonterminal {sym!r}")
                if count < 0:
                    raise GrammarError(f"transition {t.tid}: negative target multiplicity")

    def transition(self, tid: str) -> Transition:
        try:
            return _transition_index(self)[tid]
        except KeyError:
            raise GrammarError(f"no transition with id {tid!r}") from None

    def transitions_from(self, q: str) -> tuple[Transition, ...]:
        return _source_index(self).get(q, ())

    def is_regular(self) -> bool:
        return all(t.targets.total() <= 1 and t.output.norm1() <= 1 for t in self.transitions)

    def is_normal_form(self) -> bool:
        return all(t.targets.total() <= 2 and t.output.norm1() <= 1 for t in self.transitions)

    def is_positive(self) -> bool:
        return all(t.output.nonneg() for t in self.transitions)


@lru_cache(maxsize=None)
def _transition_index(g: Grammar) -> dict[str, Transition]:
    return {t.tid: t for t in g.transitions}


@lru_cache(maxsize=None)
def _source_index(g: Grammar) -> dict[str, tuple[Transition, ...]]:
    by_source: dict[str, list[Transition]] = {}
    for t in g.transitions:
        by_source.setdefault(t.source, []).append(t)
    return {q: tuple(ts) for q, ts in by_source.items()}


def grammar_from_rules(
    alphabet: Sequence[str],
    start: str,
    rules: Iterable[tuple[str, Vec, Vec]],
) -> Grammar:
    """Build a grammar from (source, output, targets) triples.

    Transition ids are assigned t1, t2, ... in rule order; nonterminals
    are inferred from sources, targets, and the start symbol.
    """
    rules = list(rules)
    nts = {start}
    for src, _out, targets in rules:
        nts.add(src)
        nts.update(targets.support())
    transitions = tuple(
        Transition(f"t{i + 1}", src, out, targets) for i, (src, out, targets) in enumerate(rules)
    )
    return Grammar(tuple(alphabet), tuple(sorted(nts)), start, transitions)


def parse_grammar(text: str) -> Grammar:
    """Parse the grammar file format; see the module docstring."""
    alphabet: Optional[tuple[str, ...]] = None
    start: Optional[str] = None
    rules: list[tuple[str, Vec, Vec]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise GrammarParseError("alphabet declared twice", lineno)
            names = line[len("alphabet:"):].split()
            for n in names:
                if not is_name(n):
                    raise GrammarParseError(f"bad terminal name {n!r}", lineno)
            alphabet = tuple(names)
            continue
        if line.startswith("start:"):
            if start is not None:
                raise GrammarParseError("start declared twice", lineno)
            names = line[len("start:"):].split()
            if len(names) != 1 or not is_name(names[0]):
                raise GrammarParseError("start: expects a single nonterminal name", lineno)
            start = names[0]
            continue
        if "->" not in line:
            raise GrammarParseError(f"expected a transition line, got {line!r}", lineno)
        head, _, rhs = line.partition("->")
        src = head.strip()
        if not is_name(src):
            raise GrammarParseError(f"bad source nonterminal {src!r}", lineno)
        if ":" not in rhs:
            raise GrammarParseError("transition is missing the ':' separator", lineno)
        out_text, _, tgt_text = rhs.partition(":")
        try:
            output = parse_monomial(out_text)
            targets = parse_monomial(tgt_text)
        except ValueError as e:
            raise GrammarParseError(str(e), lineno) from None
        for sym, count in targets:
            if count < 1:
                raise GrammarParseError(f"target {sym!r} needs a positive exponent", lineno)
        rules.append((src, output, targets))
    if alphabet is None:
        raise GrammarParseError("missing 'alphabet:' line")
    if start is None:
        raise GrammarParseError("missing 'start:' line")
    return grammar_from_rules(alphabet, start, rules)


def serialize_grammar(g: Grammar) -> str:
    """Canonical text for a grammar; reparses to a structurally equal value."""
    lines = [
        "alphabet: " + " ".join(g.alphabet) if g.alphabet else "alphabet:",
        f"start: {g.start}",
    ]
    for t in g.transitions:
        out = "" if t.output.is_zero() else " " + format_monomial(t.output, g.alphabet)
        tgt = "" if t.targets.is_zero() else " " + format_monomial(t.targets)
        lines.append(f"{t.source} ->{out} :{tgt}")
    return "\n".join(lines) + "\n"


def classify(g: Grammar) -> dict[str, bool]:
    """Classification flags: regular / normal_form / positive."""
    return {
        "regular": g.is_regular(),
        "normal_form": g.is_normal_form(),
        "positive": g.is_positive(),
    }


def _fresh_name(base: str, used: set[str]) -> str:
    k = 1
    while f"{base}__{k}" in used:
        k += 1
    name = f"{base}__{k}"
    used.add(name)
    return name


def normalize(g: Grammar) -> Grammar:
    """Convert to normal form (outputs of 1-norm <= 1, at most 2 targets).

    A violating transition is unrolled into a chain: each link emits at
    most one letter unit and hands at most one spawned nonterminal off,
    carrying the rest in a fresh continuation nonterminal named
    ``<source>__k``.  Already-normal grammars are returned unchanged.
    Fresh transition ids continue after the existing ones.
    """
    if g.is_normal_form():
        return g
    used_names = set(g.nonterminals) | set(g.alphabet)
    next_id = len(g.transitions) + 1
    out_rules: list[Transition] = []

    def fresh_rule(src: str, output: Vec, targets: Vec) -> None:
        nonlocal next_id
        out_rules.append(Transition(f"t{next_id}", src, output, targets))
        next_id += 1

    for t in g.transitions:
        if t.targets.total() <= 2 and t.output.norm1() <= 1:
            out_rules.append(t)
            continue
        # pending unit emissions in alphabet order, pending targets by name
        letters: list[Vec] = []
        for sym in g.alphabet:
            c = t.output.get(sym)
            if c:
                letters.extend([Vec.unit(sym, 1 if c > 0 else -1)] * abs(c))
        pending: list[str] = []
        for sym, count in t.targets:
            pending.extend([sym] * count)
        src = t.source
        while len(letters) > 1 or len(pending) > 2:
            output = letters.pop(0) if letters else Vec.zero()
            carry = _fresh_name(t.source, used_names)
            step = {carry: 1}
            if pending:
                peeled = pending.pop(0)
                step[peeled] = step.get(peeled, 0) + 1
            fresh_rule(src, output, Vec(step))
            src = carry
        counts: dict[str, int] = {}
        for sym in pending:
            counts[sym] = counts.get(sym, 0) + 1
        fresh_rule(src, letters[0] if letters else Vec.zero(), Vec(counts))

    nts = set(g.nonterminals) | {r.source for r in out_rules}
    for r in out_rules:
        nts.update(r.targets.support())
    return Grammar(g.alphabet, tuple(sorted(nts)), g.start, tuple(out_rules))


def negate_grammar(g: Grammar) -> Grammar:
    """Flip the sign of every transition output; structure and ids kept."""
    return Grammar(
        g.alphabet,
        g.nonterminals,
        g.start,
        tuple(Transition(t.tid, t.source, -t.output, t.targets) for t in g.transitions),
    )


def difference_grammar(g1: Grammar, g2: Grammar) -> Grammar:
    """Grammar whose language is {v1 - v2 : v1 in L(g1), v2 in L(g2)}.

    Both inputs must be regular.  g2 is negated and its nonterminals are
    renamed out of the way; every final transition of g1 keeps its output
    but is redirected to the start of the negated copy.
    """
    if not g1.is_regular() or not g2.is_regular():
        raise GrammarError("difference_grammar requires regular grammars")
    neg2 = negate_grammar(g2)
    alphabet = list(g1.alphabet) + [a for a in g2.alphabet if a not in g1.alphabet]
    used = set(alphabet) | set(g1.nonterminals)
    rename: dict[str, str] = {}
    for q in neg2.nonterminals:
        rename[q] = _fresh_name(q, used) if q in used else q
        used.add(rename[q])
    rules: list[tuple[str, Vec, Vec]] = []
    start2 = rename[neg2.start]
    for t in g1.transitions:
        if t.is_final():
            rules.append((t.source, t.output, Vec.unit(start2)))
        else:
            rules.append((t.source, t.output, t.targets))
    for t in neg2.transitions:
        targets = Vec((rename[q], c) for q, c in t.targets)
        rules.append((rename[t.source], t.output, targets))
    return grammar_from_rules(alphabet, g1.start, rules)
