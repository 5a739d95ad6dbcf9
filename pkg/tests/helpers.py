"""Shared test utilities: random trees, random matrices, branch unfoldings."""

from __future__ import annotations

import random
from fractions import Fraction

from diminimal import (
    Family,
    RootedTree,
    WeightedTreeMatrix,
    build_tree,
    duplicate_branch,
    main_roots,
)


def subtree_ids(t: RootedTree, v: int) -> list[int]:
    out, stack = [], [v]
    while stack:
        u = stack.pop()
        out.append(u)
        stack.extend(t.children[u])
    return out


def random_tree(n: int, rng: random.Random) -> RootedTree:
    """Uniform random recursive tree on n vertices rooted at 0."""
    if n == 1:
        return build_tree([], 0)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return build_tree(edges, 0)


def random_matrix(t: RootedTree, rng: random.Random) -> WeightedTreeMatrix:
    diag = tuple(
        Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(t.n)
    )
    sq = tuple(
        Fraction(rng.randint(1, 16), rng.randint(1, 4)) for _ in t.edges
    )
    return WeightedTreeMatrix(t, diag, sq)


def random_unfolding(
    t: RootedTree,
    rng: random.Random,
    rounds: int,
    cap: int = 200,
) -> RootedTree:
    """Apply up to `rounds` random branch duplications that avoid the main
    roots and keep the vertex count at or below cap."""
    for _ in range(rounds):
        roots = set(main_roots(t))
        cands = [
            (v, c)
            for v in range(t.n)
            for c in t.children[v]
            if not roots.intersection(subtree_ids(t, c))
        ]
        if not cands:
            return t
        v, c = rng.choice(cands)
        copies = rng.choice((1, 1, 2))
        if t.n + copies * len(subtree_ids(t, c)) > cap:
            continue
        t = duplicate_branch(t, v, c, copies)
    return t


def generic_d4(p: int, ts: tuple[int, ...]) -> RootedTree:
    """Diameter-4 tree: center 0 with ts[0] pendant leaves and p arms,
    arm i carrying ts[i] leaves.  Requires p >= 2 and every ts[i] >= 1."""
    assert p >= 2 and len(ts) == p + 1 and all(x >= 1 for x in ts)
    edges = []
    nxt = 1
    for _ in range(ts[0]):
        edges.append((0, nxt))
        nxt += 1
    for i in range(1, p + 1):
        arm = nxt
        nxt += 1
        edges.append((0, arm))
        for _ in range(ts[i]):
            edges.append((arm, nxt))
            nxt += 1
    return build_tree(edges, 0)


def ahu(t: RootedTree, v: int | None = None) -> str:
    """AHU canonical string of the rooted tree (children order-insensitive)."""
    if v is None:
        v = t.root
    kids = sorted(ahu(t, c) for c in t.children[v])
    return "(" + "".join(kids) + ")"


def tree_canon(t: RootedTree) -> str:
    """Canonical form of the underlying unrooted tree."""
    return min(ahu(t) if t.root == r else ahu_rerooted(t, r) for r in main_roots(t))


def ahu_rerooted(t: RootedTree, r: int) -> str:
    from diminimal import reroot

    return ahu(reroot(t, r))


CORPUS_CELLS: tuple[tuple[Family, int], ...] = tuple(
    [(Family.UNIFORM, d) for d in range(1, 13) for _ in range(8)]
    + [(Family.SHORT_CORE, d) for d in range(6, 12) for _ in range(10)]
    + [(Family.MIXED, d) for d in (7, 9, 11) for _ in range(16)]
)

CORPUS_WEIGHTS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(0), Fraction(32)),
    (Fraction(-3), Fraction(29)),
    (Fraction(1, 2), Fraction(65, 2)),
    (Fraction(0), Fraction(7)),
    (Fraction(-5), Fraction(3)),
    (Fraction(-7, 3), Fraction(11, 3)),
)
