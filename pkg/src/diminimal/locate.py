"""Exact eigenvalue location for tree-structured symmetric matrices.

The engine performs a bottom-up congruence diagonalization of M + x*I over
the rationals.  By Sylvester's law of inertia the signs of the resulting
final values count the eigenvalues of M on either side of -x, and the zeros
count the multiplicity of -x itself.  Everything else in this module
(interval counts, bisection isolation, Parter vertex search) is built on
that single primitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Collection, Sequence

from .matrices import WeightedTreeMatrix, delete_vertex
from .trees import RootedTree


@dataclass(frozen=True)
class DiagOutcome:
    """Result of one diagonalization run of M + x*I.

    final_values maps vertex id to its final diagonal value.  inertia is
    (negative, zero, positive) counts over those values.  removed_edges
    lists the parent edges deactivated by the zero-child rule, and pivots
    the vertices at which that rule fired.
    """

    final_values: dict[int, Fraction]
    inertia: tuple[int, int, int]
    removed_edges: tuple[tuple[int, int], ...]
    pivots: frozenset[int]
    query_shift: Fraction


def _postorder(adj: Callable[[int], Sequence[int]], root: int) -> tuple[list[int], dict[int, int]]:
    """Iterative postorder with children in ascending id order; also returns
    the parent map of the traversal."""
    parent: dict[int, int] = {root: -1}
    out: list[int] = []
    stack: list[tuple[int, bool]] = [(root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            out.append(v)
            continue
        stack.append((v, True))
        for u in sorted(adj(v), reverse=True):
            if u != parent[v]:
                parent[u] = v
                stack.append((u, False))
    return out, parent


def _run(adj: Callable[[int], Sequence[int]],
         diag: Callable[[int], Fraction],
         sq_weight: Callable[[int, int], Fraction],
         root: int, x: Fraction):
    """Core bottom-up elimination of M + x*I on an arbitrary adjacency view.

    Returns (final values, pivots, removed edges, order).  At each non-leaf
    vertex k: if every still-attached child carries a nonzero value, k picks
    up the usual Schur complement; otherwise the smallest-id zero child j is
    paired with k (j's value becomes 2, k's becomes -w2(j,k)/2) and the edge
    from k to its parent is deactivated for the rest of the run.
    """
    order, parent = _postorder(adj, root)
    d: dict[int, Fraction] = {v: diag(v) + x for v in order}
    removed: set[tuple[int, int]] = set()
    pivots: set[int] = set()
    for k in order:
        kids = [c for c in adj(k)
                if c != parent[k] and (min(c, k), max(c, k)) not in removed]
        if not kids:
            continue
        zeros = [c for c in kids if d[c] == 0]
        if not zeros:
            d[k] -= sum(sq_weight(c, k) / d[c] for c in kids)
        else:
            j = min(zeros)
            d[k] = -sq_weight(j, k) / 2
            d[j] = Fraction(2)
            pivots.add(k)
            if parent[k] != -1:
                removed.add((min(k, parent[k]), max(k, parent[k])))
    return d, pivots, removed, order


def _matrix_adj(m: WeightedTreeMatrix) -> Callable[[int], Sequence[int]]:
    return lambda v: m.tree.adjacency[v]


def diagonalize(m: WeightedTreeMatrix, x: Fraction, root: int | None = None) -> DiagOutcome:
    """Congruence-diagonalize M + x*I bottom-up from `root` (default: the
    tree's own root).  Exact; never touches floats."""
    x = Fraction(x)
    r = m.tree.root if root is None else root
    if not (0 <= r < m.n):
        raise ValueError(f"root {r} out of range")
    d, pivots, removed, _ = _run(
        _matrix_adj(m), lambda v: m.diag[v],
        lambda a, b: m.sq_weight[(min(a, b), max(a, b))], r, x)
    neg = sum(1 for q in d.values() if q < 0)
    zero = sum(1 for q in d.values() if q == 0)
    pos = len(d) - neg - zero
    return DiagOutcome(d, (neg, zero, pos), tuple(sorted(removed)),
                       frozenset(pivots), x)


@dataclass(frozen=True)
class CountsAt:
    """Exact eigenvalue counts of a matrix relative to one query point."""

    below: int
    equal: int
    above: int


def counts_at(m: WeightedTreeMatrix, point: Fraction, root: int | None = None) -> CountsAt:
    """How many eigenvalues of m are <, ==, > the query point.  Runs one
    diagonalization of M - point*I; inertia does the rest."""
    out = diagonalize(m, -Fraction(point), root)
    neg, zero, pos = out.inertia
    return CountsAt(below=neg, equal=zero, above=pos)


def multiplicity(m: WeightedTreeMatrix, point: Fraction) -> int:
    return counts_at(m, point).equal


def count_in_interval(m: WeightedTreeMatrix, a: Fraction, b: Fraction,
                      include_a: bool = True, include_b: bool = True) -> int:
    """Number of eigenvalues in the interval from a to b with the given
    endpoint inclusions.  Raises ValueError when a > b."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError(f"empty interval: {a} > {b}")
    at_a = counts_at(m, a)
    at_b = counts_at(m, b)
    n = at_b.below - at_a.below - at_a.equal
    if include_a:
        n += at_a.equal
    if include_b:
        n += at_b.equal
    return n


def counts_within(m: WeightedTreeMatrix, point: Fraction,
                  vertices: Collection[int], root: int) -> CountsAt:
    """Counts for the principal submatrix of m on `vertices` (which must
    induce a subtree containing `root`).  Used to audit sub-blocks of a
    construction in place, without rebuilding matrices."""
    vs = set(vertices)
    if root not in vs:
        raise ValueError("root must belong to the vertex set")
    adj = lambda v: [u for u in m.tree.adjacency[v] if u in vs]
    d, _, _, order = _run(adj, lambda v: m.diag[v],
                          lambda a, b: m.sq_weight[(min(a, b), max(a, b))],
                          root, -Fraction(point))
    if len(order) != len(vs):
        raise ValueError("vertex set does not induce a connected subtree")
    neg = sum(1 for q in d.values() if q < 0)
    zero = sum(1 for q in d.values() if q == 0)
    return CountsAt(below=neg, equal=zero, above=len(d) - neg - zero)


# ---------------------------------------------------------------------------
# Bounds and isolation
# ---------------------------------------------------------------------------

def _sqrt_upper(q: Fraction) -> Fraction:
    """Rational upper bound on sqrt(q), rounded up onto the 10**-6 grid."""
    if q < 0:
        raise ValueError("negative radicand")
    num, den = q.numerator, q.denominator
    # isqrt(num*den) + 1 over den always exceeds sqrt(num/den)
    r = Fraction(isqrt(num * den) + 1, den)
    grid = 10 ** 6
    return Fraction(-(-(r.numerator * grid) // r.denominator), grid)


def gershgorin_bound(m: WeightedTreeMatrix) -> Fraction:
    """Rational B with every eigenvalue in [-B, B]."""
    best = Fraction(0)
    for v in range(m.n):
        row = abs(m.diag[v])
        for u in m.tree.adjacency[v]:
            row += _sqrt_upper(m.sq_weight[(min(u, v), max(u, v))])
        best = max(best, row)
    return best


@dataclass(frozen=True)
class IsolatedInterval:
    """Half-open interval (lo, hi] holding `count` eigenvalues."""

    lo: Fraction
    hi: Fraction
    count: int


def isolate_eigenvalues(m: WeightedTreeMatrix, width: Fraction) -> list[IsolatedInterval]:
    """Cover the spectrum with disjoint half-open intervals of length at most
    `width`, each carrying the exact number of eigenvalues it contains.
    Intervals with zero count are discarded.  Bisection over (lo, hi]
    needs one diagonalization per split point."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    bound = gershgorin_bound(m)
    lo, hi = -bound - 1, bound

    # cumulative counts: cum(q) = number of eigenvalues <= q, memoized since
    # every split point is shared by two intervals
    memo: dict[Fraction, int] = {}

    def cum(q: Fraction) -> int:
        if q not in memo:
            c = counts_at(m, q)
            memo[q] = c.below + c.equal
        return memo[q]

    out: list[IsolatedInterval] = []
    stack: list[tuple[Fraction, Fraction, int]] = [(lo, hi, m.n)]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if b - a <= width:
            out.append(IsolatedInterval(a, b, k))
            continue
        mid = (a + b) / 2
        left = cum(mid) - cum(a)
        stack.append((a, mid, left))
        stack.append((mid, b, k - left))
    out.sort(key=lambda iv: iv.lo)
    return out


# ---------------------------------------------------------------------------
# Structure probes
# ---------------------------------------------------------------------------

def min_zero_depth(m: WeightedTreeMatrix, point: Fraction, root: int) -> int | None:
    """Distance from `root` to the nearest vertex whose final value vanishes
    in the run of M - point*I rooted there, or None when no value vanishes.

    Depth 0 exactly when the run leaves a zero at the root itself.
    """
    out = diagonalize(m, -Fraction(point), root)
    t = reroot_depths(m.tree, root)
    depths = [t[v] for v, q in out.final_values.items() if q == 0]
    return min(depths) if depths else None


def reroot_depths(t: RootedTree, root: int) -> dict[int, int]:
    """BFS distance of every vertex from `root`."""
    depth = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for u in t.adjacency[v]:
                if u not in depth:
                    depth[u] = depth[v] + 1
                    nxt.append(u)
        frontier = nxt
    return depth


def is_parter(m: WeightedTreeMatrix, v: int, point: Fraction) -> bool:
    """True when deleting vertex v raises the multiplicity of `point` by
    exactly one."""
    before = multiplicity(m, point)
    after = sum(multiplicity(c, point) for c in delete_vertex(m, v))
    return after == before + 1


def find_parter_vertex(m: WeightedTreeMatrix, point: Fraction) -> int:
    """For an eigenvalue of multiplicity >= 2, return a vertex v of degree
    >= 3 whose deletion raises the multiplicity and leaves the eigenvalue
    in at least three components.

    The candidate comes from one diagonalization run: the parent of the
    deepest surviving zero.  If that vertex fails the degree or component
    conditions the remaining vertices are scanned in id order; on trees such
    a vertex always exists, so the scan is a fallback, not the common path.
    """
    point = Fraction(point)
    mult = multiplicity(m, point)
    if mult < 2:
        raise ValueError(f"multiplicity of {point} is {mult}; need at least 2")

    def strong(v: int) -> bool:
        if m.tree.degree(v) < 3:
            return False
        comps = delete_vertex(m, v)
        mults = [multiplicity(c, point) for c in comps]
        return sum(mults) == mult + 1 and sum(1 for q in mults if q > 0) >= 3

    root = m.tree.root
    out = diagonalize(m, -point, root)
    depth = reroot_depths(m.tree, root)
    zeros = [v for v, q in out.final_values.items() if q == 0]
    # multiplicity >= 2 leaves at least two zeros, so the deepest zero has a
    # parent on the path toward the root
    deepest = min(zeros, key=lambda v: (-depth[v], v))
    parent_of = {root: -1}
    stack = [root]
    while stack:
        w = stack.pop()
        for u in m.tree.adjacency[w]:
            if u not in parent_of:
                parent_of[u] = w
                stack.append(u)
    cand = parent_of[deepest]
    if cand != -1 and strong(cand):
        return cand
    for v in range(m.n):
        if v != cand and strong(v):
            return v
    raise AssertionError(f"no strong vertex found for {point}; this contradicts "
                         "the multiplicity structure of trees")
