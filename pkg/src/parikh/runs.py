"""Transition multisets, the Euler/connectivity check, orderings, and trees.

A multiset of transitions is a *subrun* from marking `s` to marking `t`
when consumption and production balance per nonterminal
(``source(R) - s = target(R) - t``) and every used nonterminal is
reachable from `s` through the used transitions.  Runs, paths, and
cycles are the special cases (to zero, singleton to singleton, and
singleton back to itself).  Any subrun can be fired in some order that
never consumes a missing nonterminal; that ordering also yields a
derivation tree whose per-vertex free-symbol accounting stays
nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .grammar import Grammar
from .vector import Vec


class SearchCapExceeded(RuntimeError):
    """A bounded combinatorial search outgrew its configured cap."""


DEFAULT_STATE_CAP = 500_000


@dataclass(frozen=True)
class TransitionMultiset:
    """Nonnegative multiplicities over a grammar's transition ids."""

    grammar: Grammar
    counts: Vec

    def __post_init__(self):
        for tid, c in self.counts:
            if c < 0:
                raise ValueError(f"negative multiplicity for transition {tid}")
            self.grammar.transition(tid)  # raises on unknown id

    @staticmethod
    def from_counts(grammar: Grammar, counts) -> "TransitionMultiset":
        return TransitionMultiset(grammar, Vec(counts))

    def size(self) -> int:
        return self.counts.total()

    def is_zero(self) -> bool:
        return self.counts.is_zero()

    def source(self) -> Vec:
        acc: dict[str, int] = {}
        for tid, c in self.counts:
            t = self.grammar.transition(tid)
            acc[t.source] = acc.get(t.source, 0) + c
        return Vec(acc)

    def target(self) -> Vec:
        acc = Vec.zero()
        for tid, c in self.counts:
            acc = acc + self.grammar.transition(tid).targets * c
        return acc

    def parikh(self) -> Vec:
        acc = Vec.zero()
        for tid, c in self.counts:
            acc = acc + self.grammar.transition(tid).output * c
        return acc

    def supp(self) -> frozenset[str]:
        return frozenset(self.grammar.transition(tid).source for tid, c in self.counts if c > 0)

    def __add__(self, other: "TransitionMultiset") -> "TransitionMultiset":
        self._check_same(other)
        return TransitionMultiset(self.grammar, self.counts + other.counts)

    def __sub__(self, other: "TransitionMultiset") -> "TransitionMultiset":
        self._check_same(other)
        return TransitionMultiset(self.grammar, self.counts - other.counts)

    def scaled(self, k: int) -> "TransitionMultiset":
        return TransitionMultiset(self.grammar, self.counts * k)

    def __le__(self, other: "TransitionMultiset") -> bool:
        self._check_same(other)
        return self.counts <= other.counts

    def _check_same(self, other: "TransitionMultiset") -> None:
        if self.grammar is not other.grammar and self.grammar != other.grammar:
            raise ValueError("transition multisets belong to different grammars")


def parse_multiset(g: Grammar, text: str) -> TransitionMultiset:
    """Parse `id*count` pairs, e.g. ``t1*3 t2*1``; `-` is the empty multiset."""
    counts: dict[str, int] = {}
    if text.strip() != "-":
        for tok in text.split():
            tid, star, num = tok.partition("*")
            k = 1
            if star:
                try:
                    k = int(num)
                except ValueError:
                    raise ValueError(f"bad multiplicity in {tok!r}") from None
            counts[tid] = counts.get(tid, 0) + k
    return TransitionMultiset.from_counts(g, counts)


def format_multiset(ms: TransitionMultiset) -> str:
    if ms.is_zero():
        return "-"
    order = {t.tid: i for i, t in enumerate(ms.grammar.transitions)}
    items = sorted(ms.counts.items(), key=lambda kv: order.get(kv[0], len(order)))
    return " ".join(f"{tid}*{c}" for tid, c in items)


@dataclass(frozen=True)
class RunStats:
    source: Vec
    target: Vec
    parikh: Vec
    supp: frozenset[str]
    size: int


def run_stats(ms: TransitionMultiset) -> RunStats:
    """Linear summaries of a transition multiset."""
    return RunStats(ms.source(), ms.target(), ms.parikh(), ms.supp(), ms.size())


@dataclass(frozen=True)
class SubrunCheck:
    ok: bool
    reason: Optional[str] = None  # 'euler' | 'connectivity'

    def __bool__(self) -> bool:
        return self.ok


def is_subrun(ms: TransitionMultiset, src: Vec, dst: Vec) -> SubrunCheck:
    """Check the balance condition and reachability for a subrun src -> dst.

    The balance check is tried first, so an invalid multiset failing both
    conditions reports 'euler'.
    """
    if ms.source() - src != ms.target() - dst:
        return SubrunCheck(False, "euler")
    g = ms.grammar
    edges: dict[str, set[str]] = {}
    used_sources = set()
    for tid, c in ms.counts:
        if c <= 0:
            continue
        t = g.transition(tid)
        used_sources.add(t.source)
        edges.setdefault(t.source, set()).update(t.targets.support())
    seen = {q for q, c in src if c > 0}
    stack = list(seen)
    while stack:
        q = stack.pop()
        for r in edges.get(q, ()):
            if r not in seen:
                seen.add(r)
                stack.append(r)
    if used_sources - seen:
        return SubrunCheck(False, "connectivity")
    return SubrunCheck(True)


@dataclass(frozen=True)
class Subrun:
    """A checked subrun certificate: multiset plus end markings."""

    multiset: TransitionMultiset
    src: Vec
    dst: Vec

    def check(self) -> SubrunCheck:
        return is_subrun(self.multiset, self.src, self.dst)


def is_run(ms: TransitionMultiset, p: str) -> SubrunCheck:
    return is_subrun(ms, Vec.unit(p), Vec.zero())


def is_path(ms: TransitionMultiset, p1: str, p2: str) -> SubrunCheck:
    return is_subrun(ms, Vec.unit(p1), Vec.unit(p2))


def is_cycle(ms: TransitionMultiset, p: str) -> SubrunCheck:
    return is_path(ms, p, p)


def order_subrun(ms: TransitionMultiset, src: Vec, dst: Vec) -> list[str]:
    """A firing order for a valid subrun that never goes negative.

    Greedy: at each step take the first transition (grammar order) with
    a remaining use whose source is available and whose removal leaves a
    valid subrun from the advanced marking.  Such a transition always
    exists for a valid certificate.
    """
    if not is_subrun(ms, src, dst):
        raise ValueError("not a valid subrun certificate")
    g = ms.grammar
    remaining = ms
    marking = src
    seq: list[str] = []
    while not remaining.is_zero():
        counts = remaining.counts
        for t in g.transitions:
            c = counts.get(t.tid)
            if c <= 0 or marking.get(t.source) < 1:
                continue
            rest = TransitionMultiset(g, counts - Vec.unit(t.tid))
            advanced = marking - Vec.unit(t.source) + t.targets
            if is_subrun(rest, advanced, dst):
                seq.append(t.tid)
                remaining = rest
                marking = advanced
                break
        else:  # pragma: no cover - impossible for valid certificates
            raise AssertionError("no firable transition found in a valid subrun")
    return seq


@dataclass(frozen=True)
class DerivationTree:
    """Rooted tree of transition applications with free-symbol accounting.

    `parents[0]` is None and every other parent index precedes its child,
    so ancestry is well founded by construction.  For each vertex the
    free multiset (its targets minus the sources claimed by its children)
    must be nonnegative.
    """

    grammar: Grammar
    labels: tuple[str, ...]
    parents: tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.labels) != len(self.parents):
            raise ValueError("labels and parents disagree in length")
        if self.labels:
            if self.parents[0] is not None:
                raise ValueError("vertex 0 must be the root")
            for i, p in enumerate(self.parents):
                if i == 0:
                    continue
                if p is None or not 0 <= p < i:
                    raise ValueError(f"vertex {i} needs a parent earlier in the order")
        for i in range(len(self.labels)):
            if not self.free(i).nonneg():
                raise ValueError(f"vertex {i} consumes more than its parent produced")

    def children(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parents) if p == v)

    def free(self, v: int) -> Vec:
        t = self.grammar.transition(self.labels[v])
        acc = t.targets
        for w in self.children(v):
            acc = acc - Vec.unit(self.grammar.transition(self.labels[w]).source)
        return acc

    def free_total(self) -> Vec:
        acc = Vec.zero()
        for v in range(len(self.labels)):
            acc = acc + self.free(v)
        return acc

    def depth(self, v: int) -> int:
        d = 0
        while self.parents[v] is not None:
            v = self.parents[v]  # type: ignore[assignment]
            d += 1
        return d

    def max_depth(self) -> int:
        return max((self.depth(v) for v in range(len(self.labels))), default=-1)

    def used(self) -> TransitionMultiset:
        return TransitionMultiset.from_counts(self.grammar, ((tid, 1) for tid in self.labels))

    def root_source(self) -> str:
        return self.grammar.transition(self.labels[0]).source

    def size(self) -> int:
        return len(self.labels)


def subrun_to_tree(ms: TransitionMultiset, p: str, dst: Vec = Vec.zero()) -> DerivationTree:
    """Build a derivation tree using exactly the multiset, starting at `p`.

    Transitions are attached in firing order; each one hangs off the
    earliest-created vertex that still has a free copy of its source.
    The resulting tree satisfies used() == ms and free_total() == dst.
    """
    seq = order_subrun(ms, Vec.unit(p), dst)
    if not seq:
        raise ValueError("cannot build a tree for the empty multiset")
    g = ms.grammar
    labels = [seq[0]]
    parents: list[Optional[int]] = [None]
    free: list[Vec] = [g.transition(seq[0]).targets]
    for tid in seq[1:]:
        t = g.transition(tid)
        for v, f in enumerate(free):
            if f.get(t.source) >= 1:
                free[v] = f - Vec.unit(t.source)
                labels.append(tid)
                parents.append(v)
                free.append(t.targets)
                break
        else:  # pragma: no cover - the firing order always leaves a slot
            raise AssertionError("no vertex offers the required nonterminal")
    return DerivationTree(g, tuple(labels), tuple(parents))


def tree_to_multiset(tree: DerivationTree) -> TransitionMultiset:
    """Count transition uses; the inverse of subrun_to_tree."""
    return tree.used()


def tree_size_bound(depth: int, regular: bool) -> int:
    """Strict bound on vertices of a derivation tree with no vertex at
    the given depth: depth+1 when at most one child per vertex, else
    2**(depth+1)."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    return depth + 1 if regular else 2 ** (depth + 1)


def iter_cycles(
    g: Grammar,
    anchors: Sequence[str],
    max_size: int,
    within: Optional[TransitionMultiset] = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> Iterator[tuple[TransitionMultiset, str]]:
    """Enumerate cycles from the given anchors in (size, multiset) order.

    Yields (multiset, anchor) pairs, deduplicated across anchors (the
    least anchor wins).  `within` restricts the search to sub-multisets
    of the given bound.  Raises SearchCapExceeded when the breadth-first
    state count outgrows `state_cap`.
    """
    anchors = sorted(set(anchors))
    limit = None if within is None else within.counts
    frontiers: dict[str, list[tuple[Vec, Vec]]] = {}
    visited: dict[str, set[tuple[Vec, Vec]]] = {}
    for q in anchors:
        start = (Vec.unit(q), Vec.zero())
        frontiers[q] = [start]
        visited[q] = {start}
    states = len(anchors)
    for _size in range(1, max_size + 1):
        level: dict[Vec, str] = {}
        new_frontiers: dict[str, list[tuple[Vec, Vec]]] = {q: [] for q in anchors}
        for q in anchors:
            unit_q = Vec.unit(q)
            for marking, used in frontiers[q]:
                for t in g.transitions:
                    if marking.get(t.source) < 1:
                        continue
                    new_used = used + Vec.unit(t.tid)
                    if limit is not None and not new_used <= limit:
                        continue
                    new_marking = marking - Vec.unit(t.source) + t.targets
                    state = (new_marking, new_used)
                    if state in visited[q]:
                        continue
                    visited[q].add(state)
                    states += 1
                    if states > state_cap:
                        raise SearchCapExceeded(
                            f"cycle search exceeded {state_cap} states; raise the cap"
                        )
                    new_frontiers[q].append(state)
                    if new_marking == unit_q and not new_used.is_zero():
                        if new_used not in level:
                            level[new_used] = q
        for used in sorted(level, key=Vec.sort_key):
            yield TransitionMultiset(g, used), level[used]
        frontiers = new_frontiers
        if all(not f for f in frontiers.values()):
            return


@dataclass(frozen=True)
class RunSearch:
    """Result of a bounded run enumeration."""

    runs: tuple[TransitionMultiset, ...]
    complete: bool  # the grammar has no runs beyond those listed
    capped: bool  # state cap was hit; listing may be incomplete


def enumerate_runs(
    g: Grammar,
    p: str,
    max_size: int,
    state_cap: int = DEFAULT_STATE_CAP,
) -> RunSearch:
    """All runs from `p` of size <= max_size, by breadth-first firing."""
    start = (Vec.unit(p), Vec.zero())
    frontier = [start]
    visited = {start}
    found: list[TransitionMultiset] = []
    capped = False
    exhausted = False
    states = 1
    for _size in range(1, max_size + 1):
        new_frontier = []
        level: set[Vec] = set()
        for marking, used in frontier:
            for t in g.transitions:
                if marking.get(t.source) < 1:
                    continue
                state = (marking - Vec.unit(t.source) + t.targets, used + Vec.unit(t.tid))
                if state in visited:
                    continue
                visited.add(state)
                states += 1
                if states > state_cap:
                    capped = True
                    break
                new_frontier.append(state)
                if state[0].is_zero():
                    level.add(state[1])
            if capped:
                break
        found.extend(TransitionMultiset(g, u) for u in sorted(level, key=Vec.sort_key))
        frontier = new_frontier
        if capped:
            break
        if not frontier:
            exhausted = True
            break
    return RunSearch(tuple(found), exhausted and not capped, capped)


def is_simple_cycle(
    ms: TransitionMultiset, q: str, state_cap: int = DEFAULT_STATE_CAP
) -> bool:
    """True iff `ms` is a nonzero cycle from q that is not the sum of two
    smaller nonzero cycles from q."""
    if ms.is_zero() or not is_cycle(ms, q):
        return False
    if ms.size() == 1:
        return True
    for part, _anchor in iter_cycles(ms.grammar, [q], ms.size() - 1, within=ms, state_cap=state_cap):
        if is_cycle(ms - part, q):
            return False
    return True


def find_removable_cycle(
    ms: TransitionMultiset, p: str, state_cap: int = DEFAULT_STATE_CAP
) -> Optional[tuple[TransitionMultiset, str]]:
    """Smallest cycle inside the run `ms` whose removal keeps a run from
    `p` with the same support; None when `ms` is a skeleton run.

    Candidates are generated smallest-first with a deterministic
    tie-break, so repeated stripping is reproducible.
    """
    supp = ms.supp()
    for cand, anchor in iter_cycles(ms.grammar, sorted(supp), ms.size(), within=ms, state_cap=state_cap):
        rest = ms - cand
        if rest.supp() == supp and is_run(rest, p):
            return cand, anchor
    return None


def is_skeleton_run(ms: TransitionMultiset, p: str, state_cap: int = DEFAULT_STATE_CAP) -> bool:
    """True iff no cycle can be removed from the run without shrinking
    its support."""
    if not is_run(ms, p):
        raise ValueError("not a run from the given nonterminal")
    return find_removable_cycle(ms, p, state_cap=state_cap) is None


def enumerate_simple_cycles(
    g: Grammar,
    q: str,
    cap: int,
    state_cap: int = DEFAULT_STATE_CAP,
) -> list[TransitionMultiset]:
    """All simple cycles from q of size <= cap, smallest first.

    Simple cycles never reach size tree_size_bound(N, regular), so the
    listing is complete whenever cap >= that bound minus one; a smaller
    cap is an explicit truncation chosen by the caller.
    """
    if not g.is_normal_form():
        raise ValueError("grammar must be in normal form")
    limit = min(cap, tree_size_bound(len(g.nonterminals), g.is_regular()) - 1)
    out = []
    for cand, _anchor in iter_cycles(g, [q], limit, state_cap=state_cap):
        if is_simple_cycle(cand, q, state_cap=state_cap):
            out.append(cand)
    return out


def cycle_enumeration_complete(g: Grammar, cap: int) -> bool:
    """Whether a size cap suffices for a complete simple-cycle listing."""
    return cap >= tree_size_bound(len(g.nonterminals), g.is_regular()) - 1
