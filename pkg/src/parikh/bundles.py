"""Finite bundle representations of commutative languages.

For regular grammars the language is a finite union of simple bundles:
letter vectors of bounded runs as bases, independent anchored cycle
vectors as periods.  Over a two-letter alphabet the cycle vectors of
each support class are split into angular sectors whose boundary pairs
serve as periods (the outermost boundaries are the classic extreme
cycles), with bounded fold-in corrections absorbing interior lattice
offsets.  Both constructions take explicit enumeration caps and report
truncation instead of chasing the theoretical bounds, which are
astronomically large outside toy sizes.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .decomposition import base_run_bound
from .grammar import Grammar
from .intlinalg import hadamard_bound, nonneg_integer_solve
from .membership import RegularMembership
from .runs import (
    DEFAULT_STATE_CAP,
    SearchCapExceeded,
    enumerate_runs,
    enumerate_simple_cycles,
    tree_size_bound,
)
from .semilinear import SimpleBundle
from .vector import Vec


@dataclass(frozen=True)
class BundlesResult:
    bundles: tuple[SimpleBundle, ...]
    truncated: bool
    run_cap: int

    def member(self, v: Vec) -> bool:
        return any(b.member(v) for b in self.bundles)


def _minimize_bases(bases: Sequence[Vec], periods: Sequence[Vec]) -> tuple[Vec, ...]:
    """Drop base vectors generated by another base plus the periods.

    Periods are independent, so "is generated by" is a strict partial
    order on distinct bases and keeping its minimal elements preserves
    the denoted set.
    """
    uniq = sorted(set(bases), key=Vec.sort_key)
    plist = list(periods)
    kept = []
    for w in uniq:
        redundant = any(
            other != w and nonneg_integer_solve(plist, w - other) is not None
            for other in uniq
        )
        if not redundant:
            kept.append(w)
    return tuple(kept)


def _subsumes(a: SimpleBundle, b: SimpleBundle) -> bool:
    """Whether bundle a denotes a superset of bundle b."""
    for z in b.periods:
        if nonneg_integer_solve(list(a.periods), z) is None:
            return False
    return all(a.member(w) for w in b.bases)


def _drop_subsumed(raw: Sequence[SimpleBundle]) -> tuple[SimpleBundle, ...]:
    kept: list[SimpleBundle] = []
    order = sorted(
        raw,
        key=lambda b: (
            -len(b.periods),
            tuple(p.sort_key() for p in b.periods),
            tuple(w.sort_key() for w in b.bases),
        ),
    )
    for b in order:
        if not b.bases:
            continue
        if any(_subsumes(a, b) for a in kept):
            continue
        kept = [a for a in kept if not _subsumes(b, a)]
        kept.append(b)
    return tuple(kept)


def regular_bundles(g: Grammar, run_cap: int, state_cap: int = DEFAULT_STATE_CAP) -> BundlesResult:
    """Bundle decomposition of a regular grammar's language.

    One bundle per (required support, maximal independent cycle-vector
    set): bases are the table run vectors, periods the cycle vectors.
    The union equals the language once run_cap reaches the base-run
    bound; below that the result is marked truncated.  Subsumed bundles
    are removed and base sets minimized.
    """
    if not g.is_regular():
        raise ValueError("regular_bundles needs a regular grammar")
    state = RegularMembership(g, run_cap)
    raw = []
    for _key, zs, _index, bases, _anchors in state._queries:
        base_vecs = [Vec.from_tuple(w, g.alphabet) for w in bases]
        periods = tuple(Vec.from_tuple(z, g.alphabet) for z in zs)
        raw.append(SimpleBundle(_minimize_bases(base_vecs, periods), periods))
    bundles = _drop_subsumed(raw)
    truncated = run_cap < base_run_bound(g).value and not state.runs_exhausted
    return BundlesResult(bundles, truncated, run_cap)


# ---------------------------------------------------------------------------
# two-letter bundles via angular sectors of cycle vectors


def _cross(a: tuple[int, int], b: tuple[int, int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _half(v: tuple[int, int]) -> int:
    x, y = v
    return 0 if y > 0 or (y == 0 and x > 0) else 1


def _angular(a: tuple[int, int], b: tuple[int, int]) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = _cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _direction_reps(vecs: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """One representative per direction (the 1-norm-smallest vector),
    sorted by angle from the positive x axis."""
    groups: dict[tuple[int, int], tuple[int, int]] = {}
    for v in vecs:
        x, y = v
        g = _gcd(abs(x), abs(y))
        key = (x // g, y // g)
        cur = groups.get(key)
        if cur is None or (abs(x) + abs(y), v) < (abs(cur[0]) + abs(cur[1]), cur):
            groups[key] = v
    return sorted(groups.values(), key=functools.cmp_to_key(_angular))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a else 1


def _sector_period_sets(vecs: Sequence[tuple[int, int]]) -> list[tuple[tuple[int, int], ...]]:
    """Period sets covering the cone of the given nonzero 2D vectors.

    Adjacent direction pairs of the angular order; when the cone fits in
    a halfplane only the pairs along the occupied arc appear, and its
    outermost boundaries are the extreme directions.  Opposite-ray and
    single-ray degenerate cases fall back to singletons.
    """
    dirs = _direction_reps(vecs)
    n = len(dirs)
    if n == 0:
        return [()]
    if n == 1:
        return [(dirs[0],)]
    if n == 2 and _cross(dirs[0], dirs[1]) == 0:
        # opposite rays: the union of the two rays is the whole line
        return [(dirs[0],), (dirs[1],)]
    # for distinct directions, the ccw gap from a to b is < pi iff
    # cross(a, b) > 0; at most one cyclic gap can reach pi here
    break_at = None
    for i in range(n):
        if _cross(dirs[i], dirs[(i + 1) % n]) <= 0:
            break_at = i
            break
    if break_at is not None:
        arc = [dirs[(break_at + 1 + j) % n] for j in range(n)]
        return [(arc[j], arc[j + 1]) for j in range(n - 1)]
    # full plane: every adjacent pair, cyclically
    return [(dirs[i], dirs[(i + 1) % n]) for i in range(n)]


def two_letter_bundles(
    g: Grammar,
    run_cap: int,
    cycle_cap: Optional[int] = None,
    fold_cap: Optional[int] = None,
    fold_product_cap: int = 200_000,
    state_cap: int = DEFAULT_STATE_CAP,
) -> BundlesResult:
    """Bundle decomposition over a two-letter alphabet.

    Base runs are enumerated up to run_cap and grouped by support; the
    simple cycles anchored in each support supply the period sets via
    angular sectors.  Interior lattice offsets (cycle directions that are
    not period boundaries) are folded into the base set with coefficients
    up to fold_cap.  Results below the theoretical caps are marked
    truncated.
    """
    if len(g.alphabet) != 2:
        raise ValueError("two_letter_bundles needs an alphabet of exactly two letters")
    if not g.is_normal_form():
        raise ValueError("grammar must be in normal form")
    gamma = tree_size_bound(len(g.nonterminals), g.is_regular())
    full_cycle_cap = gamma - 1
    if cycle_cap is None:
        cycle_cap = min(full_cycle_cap, 8)

    search = enumerate_runs(g, g.start, run_cap, state_cap)
    truncated = (
        search.capped
        or (not search.complete and run_cap < base_run_bound(g).value)
        or cycle_cap < full_cycle_cap
    )
    groups: dict[frozenset, list[Vec]] = {}
    for run in search.runs:
        groups.setdefault(run.supp(), []).append(run.parikh())

    anchors = sorted({q for supp in groups for q in supp})
    cycles_by_anchor = {
        q: enumerate_simple_cycles(g, q, cycle_cap, state_cap=state_cap) for q in anchors
    }

    raw: list[SimpleBundle] = []
    for supp in sorted(groups, key=sorted):
        bases = groups[supp]
        pool_vecs = sorted(
            {
                c.parikh().to_tuple(g.alphabet)
                for q in supp
                for c in cycles_by_anchor.get(q, ())
                if not c.parikh().is_zero()
            }
        )
        if fold_cap is None:
            bound = max((max(abs(x), abs(y)) for x, y in pool_vecs), default=0)
            cap = hadamard_bound(2, bound)
        else:
            cap = fold_cap
        if pool_vecs and (cap + 1) ** len(pool_vecs) > fold_product_cap:
            raise SearchCapExceeded(
                "fold-in enumeration too large; lower fold_cap or simplify the grammar"
            )
        folded: list[Vec] = []
        for combo in product(range(cap + 1), repeat=len(pool_vecs)):
            shift = Vec.zero()
            for c, pv in zip(combo, pool_vecs):
                if c:
                    shift = shift + Vec.from_tuple(pv, g.alphabet) * c
            folded.extend(w + shift for w in bases)
        for period_tuple in _sector_period_sets(pool_vecs):
            periods = tuple(Vec.from_tuple(p, g.alphabet) for p in period_tuple)
            raw.append(SimpleBundle(_minimize_bases(folded, periods), periods))
    return BundlesResult(_drop_subsumed(raw), truncated, run_cap)
