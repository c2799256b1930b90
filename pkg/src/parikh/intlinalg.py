"""Exact integer and rational linear algebra.

Everything here runs on arbitrary-precision integers and `Fraction`s;
no floating point.  The module provides determinants (fraction-free
elimination), the factorial determinant bound, Cramer solutions,
rank/independence over the rationals, integer dependency discovery for
dependent vector sets, and the coefficient-reduction loop that caps all
multiplicities outside an independent core.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .vector import Vec

Row = Sequence[int]


def _check_square(m: Sequence[Row]) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    return n


def determinant(m: Sequence[Row]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = _check_square(m)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hadamard_bound(n: int, c: int) -> int:
    """n! * c**n, an upper bound for determinants of n x n matrices
    with entries of magnitude at most c."""
    if n < 0 or c < 0:
        raise ValueError("hadamard_bound needs n >= 0 and c >= 0")
    return math.factorial(n) * c**n


def cramer_solve(m: Sequence[Row], b: Row) -> Optional[list[Fraction]]:
    """Unique rational solution of m @ x = b, or None if det(m) == 0."""
    n = _check_square(m)
    if len(b) != n:
        raise ValueError("dimension mismatch between matrix and vector")
    det = determinant(m)
    if det == 0:
        return None
    sol = []
    for col in range(n):
        replaced = [[b[i] if j == col else m[i][j] for j in range(n)] for i in range(n)]
        sol.append(Fraction(determinant(replaced), det))
    return sol


def _column_matrix(vectors: Sequence[Vec], symbols: Sequence[str]) -> list[list[int]]:
    return [[v.get(s) for v in vectors] for s in symbols]


def _union_symbols(vectors: Sequence[Vec], extra: Sequence[Vec] = ()) -> list[str]:
    syms: set[str] = set()
    for v in list(vectors) + list(extra):
        syms.update(v.support())
    return sorted(syms)


def rank(vectors: Sequence[Vec], symbols: Optional[Sequence[str]] = None) -> int:
    """Rank over the rationals."""
    if not vectors:
        return 0
    if symbols is None:
        symbols = _union_symbols(vectors)
    rows = [[Fraction(v.get(s)) for s in symbols] for v in vectors]
    r = 0
    for col in range(len(symbols)):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / pr[col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        r += 1
        if r == len(rows):
            break
    return r


def is_linearly_independent(vectors: Sequence[Vec]) -> bool:
    return rank(vectors) == len(vectors)


def solve_exact(columns: Sequence[Vec], target: Vec) -> Optional[list[Fraction]]:
    """Solve sum_i x_i * columns[i] = target for linearly independent columns.

    Returns the unique rational coefficient list, or None if the system
    is inconsistent.  Raises ValueError on dependent columns.
    """
    if not is_linearly_independent(columns):
        raise ValueError("columns must be linearly independent")
    if not columns:
        return [] if target.is_zero() else None
    symbols = _union_symbols(columns, [target])
    a = [[Fraction(v.get(s)) for v in columns] for s in symbols]
    b = [Fraction(target.get(s)) for s in symbols]
    ncols = len(columns)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        b[r], b[pivot] = b[pivot], b[r]
        f = a[r][col]
        a[r] = [x / f for x in a[r]]
        b[r] = b[r] / f
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                g = a[i][col]
                a[i] = [x - g * y for x, y in zip(a[i], a[r])]
                b[i] = b[i] - g * b[r]
        pivots.append(col)
        r += 1
    # full column rank was checked; rows beyond r must be consistent
    for i in range(r, len(a)):
        if b[i] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row, col in enumerate(pivots):
        x[col] = b[row]
    return x


def nonneg_integer_solve(periods: Sequence[Vec], v: Vec) -> Optional[list[int]]:
    """Coefficients n >= 0 in N with sum n_i * periods[i] = v, or None.

    Periods must be linearly independent, so the rational solution is
    unique; it is accepted only if it is integral and componentwise
    nonnegative.
    """
    sol = solve_exact(list(periods), v)
    if sol is None:
        return None
    out = []
    for f in sol:
        if f.denominator != 1 or f < 0:
            return None
        out.append(int(f))
    return out


def _dependency_on_prefix(vectors: Sequence[Vec], symbols: Sequence[str]) -> Optional[list[Fraction]]:
    """If the last vector depends on the (independent) prefix, return the
    coefficients expressing it; None when the whole list is independent."""
    *prefix, last = vectors
    if not prefix:
        return [] if last.is_zero() else None
    try:
        return solve_exact(prefix, last)
    except ValueError:  # pragma: no cover - caller keeps prefixes independent
        raise


def find_integer_dependency(
    vectors: Sequence[Vec],
    entry_bound: Optional[int] = None,
    symbols: Optional[Sequence[str]] = None,
) -> list[int]:
    """Integer coefficients a with sum a_i * vectors[i] = 0 for a dependent set.

    The dependency is found on the first minimal dependent subset in
    input order and scaled through a unit-extended basis determinant, so
    every coefficient is bounded by hadamard_bound(dim, entry_bound).
    The first nonzero coefficient is normalized positive.
    """
    vectors = list(vectors)
    if symbols is None:
        symbols = _union_symbols(vectors)
    if entry_bound is None:
        entry_bound = max((v.norm_inf() for v in vectors), default=0)
    # locate the first vector dependent on the previous independent ones
    independent: list[Vec] = []
    indep_idx: list[int] = []
    dep_idx = None
    coeffs = None
    for i, v in enumerate(vectors):
        expr = _dependency_on_prefix(independent + [v], symbols)
        if expr is not None:
            dep_idx = i
            coeffs = expr
            break
        independent.append(v)
        indep_idx.append(i)
    if dep_idx is None:
        raise ValueError("vectors are linearly independent")

    # minimal dependent subset: the dependent vector plus the prefix
    # vectors that actually appear in its expression
    subset_idx = [j for j, c in zip(indep_idx, coeffs) if c != 0] + [dep_idx]
    beta = {j: c for j, c in zip(indep_idx, coeffs) if c != 0}
    beta[dep_idx] = Fraction(-1)

    if len(subset_idx) == 1:
        # a zero vector by itself
        alpha = [0] * len(vectors)
        alpha[dep_idx] = 1
        return alpha

    u_idx = max(subset_idx, key=lambda j: abs(beta[j]))
    rest_idx = [j for j in subset_idx if j != u_idx]
    rest = [vectors[j] for j in rest_idx]

    # extend to a basis of the coordinate space with unit vectors
    basis = list(rest)
    basis_syms: list[str] = []
    for s in symbols:
        if len(basis) == len(symbols):
            break
        candidate = Vec.unit(s)
        if is_linearly_independent(basis + [candidate]):
            basis.append(candidate)
            basis_syms.append(s)
    mat = _column_matrix(basis, symbols)
    det = determinant(mat)
    u = vectors[u_idx]
    alpha = [0] * len(vectors)
    alpha[u_idx] = det
    for pos, j in enumerate(rest_idx):
        replaced = list(basis)
        replaced[pos] = u
        alpha[j] = -determinant(_column_matrix(replaced, symbols))
    # sanity: the combination really vanishes
    total = Vec.zero()
    for j, a in enumerate(alpha):
        if a:
            total = total + vectors[j] * a
    if not total.is_zero():  # pragma: no cover - defensive
        raise AssertionError("integer dependency construction failed")
    first = next(a for a in alpha if a != 0)
    if first < 0:
        alpha = [-a for a in alpha]
    return alpha


def reduce_multiplicities(
    vectors: Sequence[Vec],
    counts: Sequence[int],
    entry_bound: Optional[int] = None,
    dim: Optional[int] = None,
) -> tuple[list[int], tuple[int, ...]]:
    """Rewrite nonnegative multiplicities so that only an independent core
    stays above the determinant bound.

    Returns (new_counts, kept_indices) with sum new[i]*vectors[i]
    preserved exactly, new counts nonnegative, vectors[kept_indices]
    linearly independent, and every other count < H where
    H = hadamard_bound(dim, entry_bound).
    """
    vectors = list(vectors)
    counts = [int(c) for c in counts]
    if len(vectors) != len(counts) or any(c < 0 for c in counts):
        raise ValueError("counts must be nonnegative and match vectors")
    symbols = _union_symbols(vectors)
    if dim is None:
        dim = len(symbols)
    if entry_bound is None:
        entry_bound = max((v.norm_inf() for v in vectors), default=0)
    h = max(1, hadamard_bound(dim, entry_bound))
    while True:
        active = [i for i, c in enumerate(counts) if c >= h]
        if is_linearly_independent([vectors[i] for i in active]):
            return counts, tuple(active)
        alpha_local = find_integer_dependency([vectors[i] for i in active], entry_bound, symbols)
        # largest k keeping all active counts nonnegative; at least one
        # coefficient is positive and every |a| <= h <= active counts,
        # so k >= 1 and some count drops below h
        k = min(counts[i] // a for i, a in zip(active, alpha_local) if a > 0)
        if k < 1:  # pragma: no cover - defensive
            raise AssertionError("multiplicity reduction stalled")
        for i, a in zip(active, alpha_local):
            counts[i] -= k * a
        if any(c < 0 for c in counts):  # pragma: no cover - defensive
            raise AssertionError("multiplicity reduction went negative")
