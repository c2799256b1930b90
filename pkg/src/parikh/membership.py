"""Membership deciders and the brute-force enumeration oracle.

For regular grammars, membership is decided from two dynamic-programming
tables: letter vectors of bounded-size runs indexed by (required
support, start nonterminal), and letter vectors of bounded-size paths
between nonterminal pairs.  A vector is accepted when it is a table run
vector plus a nonnegative integer combination of linearly independent
cycle vectors anchored in the run's support.  With the bound at its
theoretical value the procedure is exact; with a smaller desk-scale
bound a yes is still sound (the witness is checkable) while a no only
means "no within bound".

For general normal-form grammars the same scheme runs on explicitly
enumerated base runs and simple cycles under user caps, answering yes or
unknown.

`oracle_language` is the independent cross-check: plain breadth-first
expansion of sentential forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .decomposition import CycleTerm, base_run_bound
from .grammar import Grammar
from .intlinalg import is_linearly_independent, nonneg_integer_solve
from .runs import (
    DEFAULT_STATE_CAP,
    TransitionMultiset,
    cycle_enumeration_complete,
    enumerate_runs,
    enumerate_simple_cycles,
)
from .vector import Vec

Cell = tuple[frozenset, str]
IntTuple = tuple[int, ...]


# ---------------------------------------------------------------------------
# brute-force oracle


def oracle_language(g: Grammar, depth: int, window: int) -> frozenset[Vec]:
    """Letter vectors of all derivations of at most `depth` steps, filtered
    to max-norm <= window.

    Breadth-first over sentential forms (nonterminal multiset plus
    accumulated letter vector).  States whose nonterminal count exceeds
    the remaining step budget are pruned, as are states already out of
    the window on a letter no transition can move back (all-nonnegative
    or all-nonpositive emissions).  Always an under-approximation of the
    language; exact whenever every in-window vector has a derivation
    within `depth` steps.
    """
    order = g.alphabet
    rising = {
        i for i, sym in enumerate(order)
        if all(t.output.get(sym) >= 0 for t in g.transitions)
    }
    falling = {
        i for i, sym in enumerate(order)
        if all(t.output.get(sym) <= 0 for t in g.transitions)
    }

    start = (Vec.unit(g.start), (0,) * len(order))
    visited = {start}
    frontier = [start]
    done: set[IntTuple] = set()
    for level in range(depth):
        budget = depth - level
        new_frontier = []
        for marking, value in frontier:
            # expand one occurrence of the least pending nonterminal; the
            # language of completed derivations is unaffected by the
            # expansion policy
            q = marking.support()[0]
            unit_q = Vec.unit(q)
            for t in g.transitions_from(q):
                new_marking = marking - unit_q + t.targets
                if new_marking.total() > budget - 1:
                    continue
                new_value = tuple(
                    v + t.output.get(sym) for v, sym in zip(value, order)
                ) if not t.output.is_zero() else value
                if any(
                    (i in rising and x > window) or (i in falling and x < -window)
                    for i, x in enumerate(new_value)
                ):
                    continue
                if new_marking.is_zero():
                    done.add(new_value)
                    continue
                state = (new_marking, new_value)
                if state not in visited:
                    visited.add(state)
                    new_frontier.append(state)
        frontier = new_frontier
        if not frontier:
            break
    return frozenset(
        Vec.from_tuple(v, order) for v in done if all(abs(x) <= window for x in v)
    )


# ---------------------------------------------------------------------------
# DP tables for regular grammars


@dataclass(frozen=True)
class RunTable:
    """Vectors of runs of size <= bound, per (required support, start).

    entry(P, q) holds the letter vectors of runs from q of size at most
    `bound` whose support includes P.  Internally the table is stored on
    canonical keys with q removed from P (a run from q always uses q).
    """

    grammar: Grammar
    bound: int
    support_limit: int
    cells: dict[Cell, dict[IntTuple, int]] = field(compare=False)

    def entry(self, support: frozenset, q: str) -> frozenset[Vec]:
        key = (frozenset(support) - {q}, q)
        cell = self.cells.get(key, {})
        return frozenset(Vec.from_tuple(v, self.grammar.alphabet) for v in cell)


@dataclass(frozen=True)
class PathTable:
    """Vectors of paths of size <= bound between nonterminal pairs."""

    grammar: Grammar
    bound: int
    cells: dict[tuple[str, str], dict[IntTuple, int]] = field(compare=False)

    def entry(self, q1: str, q2: str) -> frozenset[Vec]:
        cell = self.cells.get((q1, q2), {})
        return frozenset(Vec.from_tuple(v, self.grammar.alphabet) for v in cell)


def _require_regular_normal(g: Grammar) -> None:
    if not g.is_regular() or not g.is_normal_form():
        raise ValueError("this procedure needs a regular grammar in normal form")


def _run_cells(
    g: Grammar, bound: int, support_limit: int
) -> tuple[dict[Cell, dict[IntTuple, int]], bool]:
    """Breadth-first construction; level n adds vectors of runs of size n.

    Also reports whether the frontier emptied before the bound, i.e. the
    grammar has no runs at all beyond the tabulated ones."""
    order = g.alphabet
    zero = (0,) * len(order)
    finals: dict[str, list[IntTuple]] = {}
    unaries: dict[str, list[tuple[str, IntTuple]]] = {}  # r -> [(q, out)]
    for t in g.transitions:
        out = t.output.to_tuple(order)
        if t.targets.is_zero():
            finals.setdefault(t.source, []).append(out)
        else:
            r = t.targets.support()[0]
            unaries.setdefault(r, []).append((t.source, out))

    cells: dict[Cell, dict[IntTuple, int]] = {}
    frontier: dict[Cell, list[IntTuple]] = {}
    for q, outs in finals.items():
        key = (frozenset(), q)
        cell = cells.setdefault(key, {})
        fresh = []
        for out in outs:
            if out not in cell:
                cell[out] = 1
                fresh.append(out)
        if fresh:
            frontier[key] = fresh

    exhausted = False
    for level in range(2, bound + 1):
        new_frontier: dict[Cell, list[IntTuple]] = {}
        for (p2, r), vecs in frontier.items():
            for q, out in unaries.get(r, ()):
                keys = {(p2 - {q}, q)}
                grown = (p2 | {r}) - {q}
                if len(grown) <= support_limit:
                    keys.add((grown, q))
                for key in keys:
                    cell = cells.setdefault(key, {})
                    bucket = None
                    for vec in vecs:
                        new_vec = tuple(a + b for a, b in zip(vec, out)) if out != zero else vec
                        if new_vec not in cell:
                            cell[new_vec] = level
                            if bucket is None:
                                bucket = new_frontier.setdefault(key, [])
                            bucket.append(new_vec)
        frontier = new_frontier
        if not frontier:
            exhausted = True
            break
    else:
        exhausted = not frontier
    return cells, exhausted


def build_run_table(g: Grammar, bound: int, support_limit: Optional[int] = None) -> RunTable:
    """Tabulate run vectors for all supports of size <= support_limit
    (default: alphabet size)."""
    _require_regular_normal(g)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if support_limit is None:
        support_limit = len(g.alphabet)
    cells, _exhausted = _run_cells(g, bound, support_limit)
    return RunTable(g, bound, support_limit, cells)


def _path_cells(g: Grammar, bound: int) -> dict[tuple[str, str], dict[IntTuple, int]]:
    order = g.alphabet
    cells: dict[tuple[str, str], dict[IntTuple, int]] = {}
    zero = (0,) * len(order)
    frontier: dict[tuple[str, str], list[IntTuple]] = {}
    for q in g.nonterminals:
        cells[(q, q)] = {zero: 0}
        frontier[(q, q)] = [zero]
    steps: dict[str, list[tuple[str, IntTuple]]] = {}  # r -> [(q1, out)]
    for t in g.transitions:
        if not t.targets.is_zero():
            r = t.targets.support()[0]
            steps.setdefault(r, []).append((t.source, t.output.to_tuple(order)))
    for level in range(1, bound + 1):
        new_frontier: dict[tuple[str, str], list[IntTuple]] = {}
        for (r, q2), vecs in frontier.items():
            for q1, out in steps.get(r, ()):
                cell = cells.setdefault((q1, q2), {})
                for vec in vecs:
                    new_vec = tuple(a + b for a, b in zip(vec, out))
                    if new_vec not in cell:
                        cell[new_vec] = level
                        new_frontier.setdefault((q1, q2), []).append(new_vec)
        frontier = new_frontier
        if not frontier:
            break
    return cells


def build_path_table(g: Grammar, bound: int) -> PathTable:
    """Tabulate path vectors between all nonterminal pairs, size <= bound."""
    _require_regular_normal(g)
    return PathTable(g, bound, _path_cells(g, bound))


# ---------------------------------------------------------------------------
# membership results and witnesses


@dataclass(frozen=True)
class Witness:
    """Checkable acceptance certificate: base run plus pumped cycles."""

    base: TransitionMultiset
    cycles: tuple[CycleTerm, ...]

    def expand(self) -> TransitionMultiset:
        total = self.base
        for term in self.cycles:
            total = total + term.cycle.scaled(term.count)
        return total

    def parikh(self) -> Vec:
        acc = self.base.parikh()
        for term in self.cycles:
            acc = acc + term.cycle.parikh() * term.count
        return acc


MEMBER = "member"
NON_MEMBER = "non_member"
NO_WITHIN_BOUND = "no_within_bound"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class MembershipResult:
    status: str
    witness: Optional[Witness] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.status == MEMBER


# ---------------------------------------------------------------------------
# regular decision procedure


class _CosetIndex:
    """Point lookups for {w + N-combinations of Z : w in bases}.

    Bases are grouped by their class modulo the lattice of Z (rational
    coset functionals plus residues of the scaled coordinates); inside a
    class only the Pareto-minimal coordinate tuples are kept, because a
    query succeeds iff some base sits coordinatewise below it.
    """

    def __init__(self, zs: list[IntTuple], bases: dict[IntTuple, int], dim: int):
        self.zs = zs
        k = len(zs)
        rows = _pivot_rows(zs, dim)
        square = [[zs[j][r] for j in range(k)] for r in rows]
        det, adj = _det_adjugate(square)
        if det < 0:
            det = -det
            adj = [[-x for x in row] for row in adj]
        self.rows = rows
        self.det = det
        self.adj = adj
        self.kernel = _kernel_basis(zs, dim)
        groups: dict[tuple, list[tuple[IntTuple, IntTuple]]] = {}
        for w in bases:
            key, coords = self._key_coords(w)
            groups.setdefault(key, []).append((coords, w))
        self.groups = {key: _pareto_min(entries) for key, entries in groups.items()}

    def _key_coords(self, v: IntTuple) -> tuple[tuple, IntTuple]:
        pivot = [v[r] for r in self.rows]
        scaled = tuple(sum(a * x for a, x in zip(row, pivot)) for row in self.adj)
        kern = tuple(sum(u[i] * v[i] for i in range(len(v))) for u in self.kernel)
        return (kern, tuple(c % self.det for c in scaled)), scaled

    def lookup(self, v: IntTuple) -> Optional[tuple[IntTuple, tuple[int, ...]]]:
        """Return (base vector, coefficients) or None."""
        key, coords = self._key_coords(v)
        for base_coords, w in self.groups.get(key, ()):
            if all(b <= c for b, c in zip(base_coords, coords)):
                coeffs = tuple((c - b) // self.det for b, c in zip(base_coords, coords))
                return w, coeffs
        return None


def _pivot_rows(zs: list[IntTuple], dim: int) -> list[int]:
    """Greedy row choice giving a full-rank square submatrix."""
    rows: list[int] = []
    picked: list[list[Fraction]] = []
    for r in range(dim):
        candidate = picked + [[Fraction(z[r]) for z in zs]]
        if _frac_rank(candidate) == len(candidate):
            picked = candidate
            rows.append(r)
            if len(rows) == len(zs):
                break
    return rows


def _frac_rank(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / pr[col]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
        rank += 1
    return rank


def _det_adjugate(square: list[list[int]]) -> tuple[int, list[list[int]]]:
    from .intlinalg import determinant

    n = len(square)
    det = determinant(square)
    adj = [
        [
            (-1) ** (i + j)
            * determinant(
                [
                    [square[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
            )
            for i in range(n)
        ]
        for j in range(n)
    ]
    return det, adj


def _kernel_basis(zs: list[IntTuple], dim: int) -> list[IntTuple]:
    """Integer basis of the functionals vanishing on every z."""
    m = [[Fraction(z[i]) for i in range(dim)] for z in zs]
    rank = 0
    pivots: list[int] = []
    for col in range(dim):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        f = m[rank][col]
        m[rank] = [x / f for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                g = m[i][col]
                m[i] = [x - g * y for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    free = [c for c in range(dim) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for row, pc in zip(m[:rank], pivots):
            vec[pc] = -row[fc]
        lcm = 1
        for x in vec:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        basis.append(tuple(int(x * lcm) for x in vec))
    return basis


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _pareto_min(entries: list[tuple[IntTuple, IntTuple]]) -> list[tuple[IntTuple, IntTuple]]:
    """Antichain of coordinatewise-minimal entries (coords, payload)."""
    if not entries:
        return []
    k = len(entries[0][0])
    entries = sorted(entries)
    if k == 1:
        return [entries[0]]
    if k == 2:
        out: list[tuple[IntTuple, IntTuple]] = []
        best = None
        for coords, w in entries:
            if best is None or coords[1] < best:
                out.append((coords, w))
                best = coords[1]
        return out
    out = []
    for coords, w in entries:
        if not any(all(b <= c for b, c in zip(kept[0], coords)) for kept in out):
            out.append((coords, w))
    return out


class RegularMembership:
    """Shared decision state for one regular grammar and one run bound.

    Building the tables is the expensive part; point queries afterwards
    are cheap, so window sweeps should reuse one instance.
    """

    def __init__(self, g: Grammar, bound: Optional[int] = None):
        _require_regular_normal(g)
        self.grammar = g
        self.complete_bound = base_run_bound(g).value
        self.bound = self.complete_bound if bound is None else bound
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        self.order = g.alphabet
        dim = len(self.order)
        limit = min(dim, len(g.nonterminals))
        self._cells, self.runs_exhausted = _run_cells(g, self.bound, limit)
        self._paths = _path_cells(g, len(g.nonterminals))
        pools: dict[str, list[IntTuple]] = {}
        zero = (0,) * dim
        for q in g.nonterminals:
            vecs = [v for v in self._paths.get((q, q), {}) if v != zero]
            pools[q] = sorted(vecs)
        self._pools = pools
        self._queries = self._prepare_queries(dim)

    def _prepare_queries(self, dim: int):
        g = self.grammar
        start = g.start
        queries = []
        cell_keys = sorted(
            (key for key in self._cells if key[1] == start),
            key=lambda key: (len(key[0]), sorted(key[0])),
        )
        seen: set[tuple] = set()
        for key in cell_keys:
            bases = self._cells[key]
            anchors = sorted(set(key[0]) | {start})
            pool: list[IntTuple] = sorted({v for q in anchors for v in self._pools[q]})
            for zs in _maximal_independent(pool, dim):
                sig = (id(bases), zs)
                if sig in seen:
                    continue
                seen.add(sig)
                if zs:
                    index = _CosetIndex(list(zs), bases, dim)
                else:
                    index = None
                queries.append((key, zs, index, bases, anchors))
        return queries

    def result(self, v: Vec, want_witness: bool = True) -> MembershipResult:
        if any(sym not in self.order for sym in v.support()):
            return MembershipResult(NON_MEMBER, note="letters outside the alphabet")
        tv = v.to_tuple(self.order)
        for key, zs, index, bases, anchors in self._queries:
            if index is None:
                if tv in bases:
                    witness = self._witness(key, tv, zs, (), anchors) if want_witness else None
                    return MembershipResult(MEMBER, witness)
                continue
            hit = index.lookup(tv)
            if hit is not None:
                w, coeffs = hit
                witness = self._witness(key, w, zs, coeffs, anchors) if want_witness else None
                return MembershipResult(MEMBER, witness)
        if self.bound >= self.complete_bound or self.runs_exhausted:
            return MembershipResult(NON_MEMBER)
        return MembershipResult(
            NO_WITHIN_BOUND, note=f"no witness with base runs of size <= {self.bound}"
        )

    def contains(self, v: Vec) -> bool:
        return self.result(v, want_witness=False).status == MEMBER

    def window_members(self, window: int) -> frozenset[Vec]:
        from itertools import product

        members = []
        for values in product(range(-window, window + 1), repeat=len(self.order)):
            v = Vec.from_tuple(values, self.order)
            if self.contains(v):
                members.append(v)
        return frozenset(members)

    # -- witness reconstruction ------------------------------------------

    def _witness(
        self,
        key: Cell,
        w: IntTuple,
        zs: tuple[IntTuple, ...],
        coeffs: Sequence[int],
        anchors: list[str],
    ) -> Witness:
        base = self._reconstruct_run(key, w)
        terms = []
        for z, n in zip(zs, coeffs):
            if n == 0:
                continue
            anchor = next(q for q in anchors if z in self._pools[q])
            cycle = self._reconstruct_cycle(anchor, z)
            terms.append(CycleTerm(cycle, anchor, n))
        return Witness(base, tuple(terms))

    def _reconstruct_run(self, key: Cell, vec: IntTuple) -> TransitionMultiset:
        g = self.grammar
        counts: dict[str, int] = {}
        level = self._cells[key][vec]
        while True:
            if level == 1:
                final = next(
                    t
                    for t in g.transitions
                    if t.source == key[1]
                    and t.targets.is_zero()
                    and t.output.to_tuple(self.order) == vec
                )
                counts[final.tid] = counts.get(final.tid, 0) + 1
                break
            p, q = key
            step = None
            for t in g.transitions:
                if t.source != q or t.targets.is_zero():
                    continue
                r = t.targets.support()[0]
                prev_key = (p - {r}, r)
                prev_vec = tuple(a - b for a, b in zip(vec, t.output.to_tuple(self.order)))
                prev_level = self._cells.get(prev_key, {}).get(prev_vec)
                if prev_level is not None and prev_level <= level - 1:
                    step = (t, prev_key, prev_vec, prev_level)
                    break
            if step is None:  # pragma: no cover - table construction guarantees a parent
                raise AssertionError("run table walk failed")
            t, key, vec, level = step
            counts[t.tid] = counts.get(t.tid, 0) + 1
        return TransitionMultiset.from_counts(g, counts)

    def _reconstruct_cycle(self, q: str, vec: IntTuple) -> TransitionMultiset:
        g = self.grammar
        counts: dict[str, int] = {}
        cur, level = q, self._paths[(q, q)][vec]
        while level > 0:
            step = None
            for t in g.transitions:
                if t.source != cur or t.targets.is_zero():
                    continue
                r = t.targets.support()[0]
                prev_vec = tuple(a - b for a, b in zip(vec, t.output.to_tuple(self.order)))
                prev_level = self._paths.get((r, q), {}).get(prev_vec)
                if prev_level is not None and prev_level <= level - 1:
                    step = (t, r, prev_vec, prev_level)
                    break
            if step is None:  # pragma: no cover
                raise AssertionError("path table walk failed")
            t, cur, vec, level = step
            counts[t.tid] = counts.get(t.tid, 0) + 1
        return TransitionMultiset.from_counts(g, counts)


def _maximal_independent(pool: list[IntTuple], dim: int) -> list[tuple[IntTuple, ...]]:
    """Maximal linearly independent subsets of the pool, in sorted order.

    Nonnegative combinations over a subset are covered by any superset,
    so only maximal subsets need solving; the empty tuple stands in when
    the pool is empty.
    """
    vecs = [Vec.from_tuple(v, [str(i) for i in range(dim)]) for v in pool]
    results: list[tuple[IntTuple, ...]] = []

    def extend(chosen_idx: list[int], start: int) -> None:
        extended = False
        for i in range(start, len(pool)):
            cand = [vecs[j] for j in chosen_idx] + [vecs[i]]
            if is_linearly_independent(cand):
                extended = True
                extend(chosen_idx + [i], i + 1)
        if not extended:
            # maximal w.r.t. forward extension; check no earlier vector fits
            chosen = [vecs[j] for j in chosen_idx]
            for i in range(len(pool)):
                if i in chosen_idx:
                    continue
                if is_linearly_independent(chosen + [vecs[i]]):
                    return
            results.append(tuple(pool[j] for j in chosen_idx))

    extend([], 0)
    out = sorted(set(results))
    return out or [()]


def member_regular(g: Grammar, v: Vec, bound: Optional[int] = None) -> MembershipResult:
    """Decide membership for a regular grammar.

    With the default bound the answer is exact; a smaller bound keeps
    yes answers sound and turns no into NO_WITHIN_BOUND.
    """
    return _regular_state(g, bound).result(v)


@lru_cache(maxsize=32)
def _regular_state(g: Grammar, bound: Optional[int]) -> RegularMembership:
    return RegularMembership(g, bound)


# ---------------------------------------------------------------------------
# general grammars: bounded guessing


class GeneralMembership:
    """Bounded base-run and cycle enumeration for normal-form grammars."""

    def __init__(
        self,
        g: Grammar,
        run_cap: int = 10,
        cycle_cap: int = 8,
        state_cap: int = DEFAULT_STATE_CAP,
    ):
        if not g.is_normal_form():
            raise ValueError("grammar must be in normal form")
        self.grammar = g
        self.run_cap = run_cap
        self.cycle_cap = cycle_cap
        search = enumerate_runs(g, g.start, run_cap, state_cap)
        self.runs_complete = search.complete
        bases: dict[tuple[Vec, frozenset], TransitionMultiset] = {}
        for run in search.runs:
            key = (run.parikh(), run.supp())
            if key not in bases:
                bases[key] = run
        self._bases = sorted(
            bases.items(), key=lambda kv: (kv[1].size(), kv[0][0].sort_key())
        )
        anchors = sorted({q for (_v, supp), _run in self._bases for q in supp})
        cycles: dict[str, list[TransitionMultiset]] = {
            q: enumerate_simple_cycles(g, q, cycle_cap, state_cap=state_cap) for q in anchors
        }
        self._cycles = cycles
        self.cycles_complete = cycle_enumeration_complete(g, cycle_cap)
        self._zs_cache: dict[frozenset, list[tuple[tuple[Vec, ...], tuple]] ] = {}

    def _zs_for_support(self, supp: frozenset):
        if supp in self._zs_cache:
            return self._zs_cache[supp]
        pool: dict[Vec, tuple[TransitionMultiset, str]] = {}
        for q in sorted(supp):
            for cyc in self._cycles.get(q, ()):
                key = cyc.parikh()
                if not key.is_zero() and key not in pool:
                    pool[key] = (cyc, q)
        vec_list = sorted(pool, key=Vec.sort_key)
        dim = len(self.grammar.alphabet)
        tuples = [v.to_tuple(self.grammar.alphabet) for v in vec_list]
        back = dict(zip(tuples, vec_list))
        subsets = []
        for zs in _maximal_independent(tuples, dim):
            vecs = tuple(back[z] for z in zs)
            reps = tuple(pool[v] for v in vecs)
            subsets.append((vecs, reps))
        self._zs_cache[supp] = subsets
        return subsets

    def result(self, v: Vec, want_witness: bool = True) -> MembershipResult:
        for (w, supp), run in self._bases:
            delta = v - w
            for vecs, reps in self._zs_for_support(supp):
                if not vecs:
                    if delta.is_zero():
                        return MembershipResult(MEMBER, Witness(run, ()) if want_witness else None)
                    continue
                coeffs = nonneg_integer_solve(list(vecs), delta)
                if coeffs is None:
                    continue
                terms = tuple(
                    CycleTerm(rep, anchor, n)
                    for (rep, anchor), n in zip(reps, coeffs)
                    if n > 0
                )
                return MembershipResult(MEMBER, Witness(run, terms) if want_witness else None)
        if self.runs_complete:
            return MembershipResult(NON_MEMBER, note="run enumeration was exhaustive")
        if (
            self.run_cap >= base_run_bound(self.grammar).value
            and self.cycles_complete
        ):
            return MembershipResult(NON_MEMBER)
        return MembershipResult(UNKNOWN, note="caps below the completeness thresholds")

    def contains(self, v: Vec) -> Optional[bool]:
        r = self.result(v, want_witness=False)
        if r.status == MEMBER:
            return True
        if r.status == NON_MEMBER:
            return False
        return None


def member_general(
    g: Grammar,
    v: Vec,
    run_cap: int = 10,
    cycle_cap: int = 8,
    state_cap: int = DEFAULT_STATE_CAP,
) -> MembershipResult:
    """Bounded membership for general normal-form grammars: a yes comes
    with a checkable witness, otherwise unknown (or a definite no when
    the enumerations were provably exhaustive)."""
    return _general_state(g, run_cap, cycle_cap, state_cap).result(v)


@lru_cache(maxsize=32)
def _general_state(g: Grammar, run_cap: int, cycle_cap: int, state_cap: int) -> GeneralMembership:
    return GeneralMembership(g, run_cap, cycle_cap, state_cap)
