"""Constructive realization of tree matrices with the minimum number of
distinct eigenvalues.

For a tree of diameter d at least d+1 distinct eigenvalues are unavoidable.
This module builds, for every tree in the three supported families, exact
rational matrices attaining that bound, and certifies the result.

The engine works bottom-up over the decomposition certificate produced by
the recognizer.  Each piece of height L is realized in one of four spectral
shapes over the 2L+2 target values of the level-L ladder:

  * LOW        anchored at the bottom of the slice, pinned at values[2L],
  * HIGH       anchored at the top, pinned at values[1],
  * LOW_SHIFT  a LOW shape whose bottom value is raised by a small shift,
  * HIGH_SHIFT a HIGH shape whose top value is raised by a small shift.

Joining blocks is the single primitive: one shared squared weight attaches
every part root to the core root, chosen so the assembled block gains a
prescribed eigenvalue strictly beyond all block spectra.  The two extreme
block eigenvalues merge into the interior and a new extreme value appears on
the opposite side, with its position forced exactly by the trace.  Every
assembly is verified on the spot by exact counts, so a construction bug
cannot survive to the returned certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .locate import _run, counts_at, diagonalize
from .matrices import WeightedTreeMatrix, make_matrix
from .trees import (Family, PieceCert, RootedTree, _family_analysis,
                    _whole_piece_cert, diameter, join, main_roots, reroot)


class Variant(Enum):
    LOW = "low"
    HIGH = "high"
    LOW_SHIFT = "low-shift"
    HIGH_SHIFT = "high-shift"


@dataclass(frozen=True)
class Ladder:
    """Level-k target spectrum: 2k+2 strictly increasing rationals built
    from the anchor pair (alpha, beta).

    Level 1 is (2a-b, a, b, 2b-a).  Each later level keeps all values but
    the largest, prepends a new bottom value step(k) below the old one, and
    appends two new top values step(k) apart starting step(k) above the
    discarded one, where step(j) = (beta-alpha)/2**j.  alpha and beta always
    sit at indices k and k+1.
    """

    alpha: Fraction
    beta: Fraction
    k: int
    values: tuple[Fraction, ...]

    def step(self, j: int) -> Fraction:
        return (self.beta - self.alpha) / 2 ** j


def ladder(alpha: Fraction, beta: Fraction, k: int) -> Ladder:
    alpha, beta = Fraction(alpha), Fraction(beta)
    if beta <= alpha:
        raise ValueError(f"need alpha < beta, got {alpha} >= {beta}")
    if k < 1:
        raise ValueError("ladder level must be >= 1")
    vals = [2 * alpha - beta, alpha, beta, 2 * beta - alpha]
    for j in range(1, k):
        d = (beta - alpha) / 2 ** j
        vals = [vals[0] - d] + vals[:-1] + [vals[-1] + d, vals[-1] + 2 * d]
    values = tuple(vals)
    assert values[k] == alpha and values[k + 1] == beta
    assert all(x < y for x, y in zip(values, values[1:]))
    return Ladder(alpha, beta, k, values)


# ---------------------------------------------------------------------------
# Joining primitives
# ---------------------------------------------------------------------------

def _delta_squared(core_root_value: Fraction, part_root_values: Sequence[Fraction]) -> Fraction:
    """Shared squared weight that zeroes out the assembled root at the pin
    point: core value divided by the sum of part value reciprocals."""
    s = sum(Fraction(1) / q for q in part_root_values)
    return core_root_value / s


def solve_root_weight(core: WeightedTreeMatrix, part_root_values: Sequence[Fraction],
                      y: Fraction, side: str) -> Fraction:
    """Squared weight to put on every core-root-to-part-root edge so the
    joined matrix has eigenvalue y.

    `part_root_values` are the final diagonalization values at the part
    roots in the runs of part - y*I.  side "max" demands y strictly above
    every block eigenvalue (all final values negative); side "min" demands
    strictly below (all positive).  Raises ValueError when y is not strictly
    beyond the spectra: the construction is only valid outside.
    """
    y = Fraction(y)
    if side not in ("max", "min"):
        raise ValueError(f"side must be 'max' or 'min', not {side!r}")
    out = diagonalize(core, -y)
    finals = list(out.final_values.values()) + [Fraction(q) for q in part_root_values]
    if side == "max" and not all(q < 0 for q in finals):
        raise ValueError(f"pin point {y} is not strictly above every block spectrum")
    if side == "min" and not all(q > 0 for q in finals):
        raise ValueError(f"pin point {y} is not strictly below every block spectrum")
    d2 = _delta_squared(out.final_values[core.tree.root], part_root_values)
    assert d2 > 0
    return d2


def assemble(core: WeightedTreeMatrix, parts: Sequence[WeightedTreeMatrix],
             sq_delta: Fraction) -> WeightedTreeMatrix:
    """Join matrices root-to-root with one shared squared weight on every
    new edge.  Vertex ids are relabeled exactly as trees.join relabels."""
    sq_delta = Fraction(sq_delta)
    if sq_delta <= 0:
        raise ValueError("squared join weight must be positive")
    res = join(core.tree, [p.tree for p in parts])
    n = res.tree.n
    diag: list[Fraction] = [Fraction(0)] * n
    w2: dict[tuple[int, int], Fraction] = {}
    for old, q in enumerate(core.diag):
        diag[res.core_map[old]] = q
    for (u, v), w in zip(core.tree.edges, core.sq_edge):
        a, b = res.core_map[u], res.core_map[v]
        w2[(min(a, b), max(a, b))] = w
    for p, pmap in zip(parts, res.part_maps):
        for old, q in enumerate(p.diag):
            diag[pmap[old]] = q
        for (u, v), w in zip(p.tree.edges, p.sq_edge):
            a, b = pmap[u], pmap[v]
            w2[(min(a, b), max(a, b))] = w
        r0, r1 = res.core_map[core.tree.root], pmap[p.tree.root]
        w2[(min(r0, r1), max(r0, r1))] = sq_delta
    return make_matrix(res.tree, diag, w2)


# ---------------------------------------------------------------------------
# Certified construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssemblyRecord:
    """Audit trail of one internal join: the blocks that went in, the pin
    point, the solved weight, and the multiset bookkeeping (a and b are the
    extreme block values that merged inward, forced = a + b - y)."""

    core_root: int
    core_vertices: tuple[int, ...]
    core_pred: tuple[tuple[Fraction, int], ...]
    parts: tuple[tuple[int, tuple[int, ...], tuple[tuple[Fraction, int], ...]], ...]
    y: Fraction
    side: str
    sq_delta: Fraction
    a: Fraction
    b: Fraction
    forced: Fraction
    pred: tuple[tuple[Fraction, int], ...]


@dataclass(frozen=True)
class RealizationCertificate:
    """A constructed matrix together with its fully verified spectrum.

    dspec lists (eigenvalue, multiplicity) in increasing eigenvalue order;
    the distinct count always equals diameter + 1.  Every claim was checked
    by exact congruence counts before the certificate was issued.
    """

    matrix: WeightedTreeMatrix
    dspec: tuple[tuple[Fraction, int], ...]
    family: Family
    variant: str
    alpha: Fraction
    beta: Fraction
    shift: Fraction | None
    construction_root: int
    assemblies: tuple[AssemblyRecord, ...]

    @property
    def distinct_values(self) -> int:
        return len(self.dspec)

    def to_json(self) -> dict:
        from .matrices import format_rational
        return {
            "family": self.family.value,
            "variant": self.variant,
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "shift": None if self.shift is None else format_rational(self.shift),
            "construction_root": self.construction_root,
            "dspec": [
                {"value": format_rational(v), "multiplicity": m}
                for v, m in self.dspec
            ],
        }


@dataclass
class _Block:
    root: int
    vertices: tuple[int, ...]
    pred: dict[Fraction, int]


class _Builder:
    """Bottom-up constructor over a fixed rooting of the target tree.

    Diagonal entries and squared weights accumulate in dicts keyed by the
    tree's own vertex ids; blocks are plain vertex subsets, so intermediate
    matrices never need to be materialized.
    """

    def __init__(self, tree: RootedTree, root: int, alpha: Fraction,
                 beta: Fraction, max_level: int, deep: bool):
        self.rt = reroot(tree, root)
        self.alpha = alpha
        self.beta = beta
        self.ladders: list[Ladder | None] = [None] + [
            ladder(alpha, beta, j) for j in range(1, max_level + 1)]
        self.deep = deep
        self.diag: dict[int, Fraction] = {}
        self.w2: dict[tuple[int, int], Fraction] = {}
        self.log: list[AssemblyRecord] = []

    def step(self, j: int) -> Fraction:
        return (self.beta - self.alpha) / 2 ** j

    # -- restricted runs over the partially built matrix -------------------

    def _restricted(self, vertices: Sequence[int], root: int, x: Fraction):
        vs = set(vertices)
        adj = lambda v: [u for u in self.rt.adjacency[v] if u in vs]
        return _run(adj, lambda v: self.diag[v],
                    lambda a, b: self.w2[(min(a, b), max(a, b))], root, x)

    def _counts(self, block: _Block, lam: Fraction) -> tuple[int, int, int]:
        d, _, _, _ = self._restricted(block.vertices, block.root, -lam)
        neg = sum(1 for q in d.values() if q < 0)
        zero = sum(1 for q in d.values() if q == 0)
        return neg, zero, len(d) - neg - zero

    def _root_final(self, block: _Block, y: Fraction, side: str) -> Fraction:
        d, _, _, _ = self._restricted(block.vertices, block.root, -y)
        vals = d.values()
        if side == "max" and not all(q < 0 for q in vals):
            raise ValueError(f"pin point {y} is not strictly above a block spectrum")
        if side == "min" and not all(q > 0 for q in vals):
            raise ValueError(f"pin point {y} is not strictly below a block spectrum")
        return d[block.root]

    # -- variant recursion --------------------------------------------------

    def _base_value(self, variant: Variant, shift: Fraction | None) -> Fraction:
        if variant is Variant.LOW:
            return self.alpha
        if variant is Variant.HIGH:
            return self.beta
        if variant is Variant.LOW_SHIFT:
            return self.alpha + shift
        return self.beta + shift

    def _dispatch(self, variant: Variant, shift: Fraction | None, level: int):
        """Sub-variants for the core and the parts, one level down."""
        if level == 1:
            if variant is Variant.LOW:
                return Variant.LOW, None, Variant.LOW, None
            if variant is Variant.HIGH:
                return Variant.HIGH, None, Variant.HIGH, None
            if variant is Variant.LOW_SHIFT:
                return Variant.LOW_SHIFT, shift, Variant.LOW, None
            return Variant.HIGH_SHIFT, shift, Variant.HIGH, None
        s = self.step(level - 1)
        if variant is Variant.LOW:
            return Variant.HIGH, None, Variant.LOW, None
        if variant is Variant.HIGH:
            return Variant.LOW_SHIFT, s, Variant.HIGH_SHIFT, s
        if variant is Variant.LOW_SHIFT:
            return Variant.HIGH_SHIFT, shift, Variant.LOW, None
        return Variant.LOW_SHIFT, s + shift, Variant.HIGH_SHIFT, s

    def _pin(self, variant: Variant, shift: Fraction | None, level: int):
        """(pin point, side, forced opposite extreme) for a level assembly."""
        vals = self.ladders[level].values
        if variant is Variant.LOW:
            return vals[2 * level], "max", vals[0]
        if variant is Variant.HIGH:
            return vals[1], "min", vals[2 * level + 1]
        if variant is Variant.LOW_SHIFT:
            return vals[2 * level], "max", vals[0] + shift
        return vals[1], "min", vals[2 * level + 1] + shift

    def build(self, cert: PieceCert, variant: Variant,
              shift: Fraction | None, level: int) -> _Block:
        if cert.height != level:
            raise ValueError(f"piece at {cert.root} has height {cert.height}, "
                             f"expected {level}")
        if variant in (Variant.LOW_SHIFT, Variant.HIGH_SHIFT):
            if shift is None or shift <= 0:
                raise ValueError("shift variants need a positive shift")
            if level >= 1 and shift >= self.step(level - 1):
                raise ValueError(f"shift {shift} too large at level {level}; "
                                 f"must stay below {self.step(level - 1)}")
        else:
            shift = None
        if level == 0:
            val = self._base_value(variant, shift)
            self.diag[cert.root] = val
            return _Block(cert.root, (cert.root,), {val: 1})
        cv, cs, pv, ps = self._dispatch(variant, shift, level)
        core = self.build(cert.core, cv, cs, level - 1)
        parts = [self.build(p, pv, ps, level - 1) for p in cert.parts]
        y, side, forced = self._pin(variant, shift, level)
        blk = self.join_blocks(core, parts, y, side, expect_forced=forced)
        if self.deep:
            self._deep_checks(blk, variant, shift, level)
        return blk

    # -- assembly ------------------------------------------------------------

    def join_blocks(self, core: _Block, parts: list[_Block], y: Fraction,
                    side: str, expect_forced: Fraction | None = None) -> _Block:
        dc = self._root_final(core, y, side)
        dp = [self._root_final(p, y, side) for p in parts]
        d2 = _delta_squared(dc, dp)
        assert d2 > 0
        for p in parts:
            key = (min(core.root, p.root), max(core.root, p.root))
            assert key not in self.w2
            self.w2[key] = d2

        pred: dict[Fraction, int] = dict(core.pred)
        for p in parts:
            for lam, m in p.pred.items():
                pred[lam] = pred.get(lam, 0) + m
        a, b = min(pred), max(pred)
        pred[a] -= 1
        pred[b] -= 1
        assert pred[a] >= 0 and pred[b] >= 0
        pred = {lam: m for lam, m in pred.items() if m > 0}
        forced = a + b - y
        if expect_forced is not None:
            assert forced == expect_forced, (forced, expect_forced)
        if side == "max":
            assert all(forced < lam < y for lam in pred)
        else:
            assert all(y < lam < forced for lam in pred)
        pred[y] = 1
        pred[forced] = 1

        vertices = tuple(sorted(set(core.vertices).union(*[p.vertices for p in parts])))
        blk = _Block(core.root, vertices, pred)
        self._verify_block(blk)
        self.log.append(AssemblyRecord(
            core_root=core.root, core_vertices=core.vertices,
            core_pred=tuple(sorted(core.pred.items())),
            parts=tuple((p.root, p.vertices, tuple(sorted(p.pred.items())))
                        for p in parts),
            y=y, side=side, sq_delta=d2, a=a, b=b, forced=forced,
            pred=tuple(sorted(pred.items())),
        ))
        return blk

    def _verify_block(self, blk: _Block) -> None:
        """Exact check that the block's spectrum is exactly the predicted
        multiset.  Runs one diagonalization per predicted value."""
        assert sum(blk.pred.values()) == len(blk.vertices)
        lo, hi = min(blk.pred), max(blk.pred)
        for lam, m in blk.pred.items():
            below, equal, above = self._counts(blk, lam)
            assert equal == m, (lam, m, equal)
            if lam == lo:
                assert below == 0
            if lam == hi:
                assert above == 0

    # -- deep structural checks ----------------------------------------------

    def _deep_checks(self, blk: _Block, variant: Variant,
                     shift: Fraction | None, level: int) -> None:
        """Strong-realizability probes on one finished block: the required
        eigenvalues put a zero at the block root, and deleting the root
        raises the multiplicity at the interlacing positions (with the run
        rooted there firing its zero-pairing rule at the root)."""
        vals = self.ladders[level].values
        if variant is Variant.LOW:
            zero_at = [vals[2 * i] for i in range(level + 1)]
            incr_at = [vals[2 * i - 1] for i in range(1, level + 1)]
        elif variant is Variant.HIGH:
            zero_at = [vals[2 * i + 1] for i in range(level + 1)]
            incr_at = [vals[2 * i] for i in range(1, level + 1)]
        elif variant is Variant.LOW_SHIFT:
            zero_at = [vals[0] + shift] + [vals[2 * i] for i in range(1, level + 1)]
            incr_at = [vals[2 * i - 1] for i in range(1, level + 1)]
        else:
            zero_at = [vals[2 * i + 1] for i in range(level)] + [vals[2 * level + 1] + shift]
            incr_at = [vals[2 * i] for i in range(1, level + 1)]

        for lam in zero_at:
            d, _, _, _ = self._restricted(blk.vertices, blk.root, -lam)
            assert d[blk.root] == 0, (lam, "no zero at block root")

        vs = set(blk.vertices)
        kids = [u for u in self.rt.adjacency[blk.root] if u in vs]
        comps: list[tuple[int, list[int]]] = []
        for c in kids:
            comp = [c]
            seen = {blk.root, c}
            i = 0
            while i < len(comp):
                for u in self.rt.adjacency[comp[i]]:
                    if u in vs and u not in seen:
                        seen.add(u)
                        comp.append(u)
                i += 1
            comps.append((c, comp))
        for lam in incr_at:
            _, equal, _ = self._counts(blk, lam)
            after = 0
            for c, comp in comps:
                d, _, _, _ = self._restricted(comp, c, -lam)
                after += sum(1 for q in d.values() if q == 0)
            assert after == equal + 1, (lam, equal, after)
            _, pivots, _, _ = self._restricted(blk.vertices, blk.root, -lam)
            assert blk.root in pivots, (lam, "zero pairing did not reach the root")


# ---------------------------------------------------------------------------
# Public constructors
# ---------------------------------------------------------------------------

def _finish(builder: _Builder, blk: _Block, tree: RootedTree, family: Family,
            variant: str, shift: Fraction | None) -> RealizationCertificate:
    assert set(blk.vertices) == set(range(tree.n))
    diag = tuple(builder.diag[v] for v in range(tree.n))
    w2 = {e: builder.w2[e] for e in tree.edges}
    assert len(builder.w2) == len(tree.edges)
    m = make_matrix(tree, diag, w2)
    dspec = tuple(sorted(blk.pred.items()))
    # closing check on the finished matrix object itself
    total = 0
    for lam, mult in dspec:
        c = counts_at(m, lam)
        assert c.equal == mult, (lam, mult, c)
        total += mult
    assert total == tree.n
    d = diameter(tree)
    assert len(dspec) == d + 1, (len(dspec), d + 1)
    return RealizationCertificate(
        matrix=m, dspec=dspec, family=family, variant=variant,
        alpha=builder.alpha, beta=builder.beta, shift=shift,
        construction_root=builder.rt.root, assemblies=tuple(builder.log))


def realize_variant(t: RootedTree, lad: Ladder, variant: Variant,
                    shift: Fraction | None = None, deep: bool = False) -> RealizationCertificate:
    """Realize a uniformly decomposable tree in one of the four spectral
    shapes over `lad`.  The tree must be rooted at a central vertex (either
    endpoint of the central edge when the diameter is odd) and its height
    from there must equal lad.k."""
    d = diameter(t)
    if d < 1:
        raise ValueError("need at least one edge to realize")
    if t.root not in main_roots(t):
        raise ValueError(f"tree root {t.root} is not a central vertex")
    k = (d + 1) // 2
    if lad.k != k:
        raise ValueError(f"ladder level {lad.k} does not match required level {k}")
    cert = _whole_piece_cert(t, t.root)
    if cert is None or cert.height != k:
        raise ValueError("tree is not uniformly decomposable from its root")
    if shift is not None:
        shift = Fraction(shift)
    builder = _Builder(t, t.root, lad.alpha, lad.beta, k, deep)
    blk = builder.build(cert, variant, shift, k)
    return _finish(builder, blk, t, Family.UNIFORM, variant.value, shift)


def realize_low(t: RootedTree, lad: Ladder, deep: bool = False) -> RealizationCertificate:
    return realize_variant(t, lad, Variant.LOW, deep=deep)


def realize_high(t: RootedTree, lad: Ladder, deep: bool = False) -> RealizationCertificate:
    return realize_variant(t, lad, Variant.HIGH, deep=deep)


def realize_low_shifted(t: RootedTree, lad: Ladder, shift: Fraction,
                        deep: bool = False) -> RealizationCertificate:
    return realize_variant(t, lad, Variant.LOW_SHIFT, shift, deep)


def realize_high_shifted(t: RootedTree, lad: Ladder, shift: Fraction,
                         deep: bool = False) -> RealizationCertificate:
    return realize_variant(t, lad, Variant.HIGH_SHIFT, shift, deep)


def _build_low_side(builder: _Builder, side: PieceCert, k: int) -> _Block:
    """One odd-diameter half in its bottom-anchored shape: short core one
    level down, full-height branches at level k, pinned at the level-k top."""
    vals = builder.ladders[k].values
    core = builder.build(side.core, Variant.LOW, None, k - 1)
    parts = [builder.build(p, Variant.LOW, None, k) for p in side.parts]
    return builder.join_blocks(core, parts, vals[2 * k + 1], "max",
                               expect_forced=vals[0] - builder.step(k - 1))


def realize_family(t: RootedTree, alpha: Fraction, beta: Fraction,
                   deep: bool = False) -> RealizationCertificate:
    """Realize any tree of the three supported families with d+1 distinct
    eigenvalues anchored at (alpha, beta).  Raises ValueError for trees
    outside the families, and for short-core or mixed trees of diameter
    less than 6, where no construction is defined."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if beta <= alpha:
        raise ValueError(f"need alpha < beta, got {alpha} >= {beta}")
    an = _family_analysis(t)
    d = an.diameter
    if an.family is Family.UNSUPPORTED:
        raise ValueError(f"unsupported family (diameter {d}); no construction applies")
    if d < 1:
        raise ValueError("need at least one edge to realize")
    big_k = (d + 1) // 2
    if an.family is Family.UNIFORM:
        lad = ladder(alpha, beta, big_k)
        cert = realize_variant(reroot(t, an.center), lad, Variant.LOW, deep=deep)
        # report on the tree as the caller handed it over
        m = make_matrix(t, cert.matrix.diag, dict(zip(cert.matrix.tree.edges,
                                                      cert.matrix.sq_edge)))
        return RealizationCertificate(
            matrix=m, dspec=cert.dspec, family=Family.UNIFORM, variant=cert.variant,
            alpha=alpha, beta=beta, shift=None,
            construction_root=an.center, assemblies=cert.assemblies)
    if d < 6:
        raise ValueError(f"no construction is defined for {an.family.value} "
                         f"trees of diameter {d} (need >= 6)")
    if d % 2 == 0:
        # short core at the center, full-height branches around it
        k = (d - 2) // 2
        builder = _Builder(t, an.center, alpha, beta, big_k, deep)
        vals = builder.ladders[k].values
        core = builder.build(an.core, Variant.LOW, None, k - 1)
        parts = [builder.build(p, Variant.LOW, None, k) for p in an.parts]
        blk = builder.join_blocks(core, parts, vals[2 * k + 1], "max",
                                  expect_forced=vals[0] - builder.step(k - 1))
        return _finish(builder, blk, t, Family.SHORT_CORE, "short-core-even", None)
    # odd diameter: two halves joined across the central edge
    k = (d - 3) // 2
    if an.family is Family.SHORT_CORE:
        low_side, high_side = an.sides
        variant_name = "short-core-odd"
    else:
        # mixed: the short-core half takes the bottom-anchored shape
        if an.sides[0][1] == "short_core":
            low_side, high_side = an.sides
        else:
            high_side, low_side = an.sides
        variant_name = "mixed"
    builder = _Builder(t, low_side[0], alpha, beta, big_k, deep)
    vals = builder.ladders[k].values
    low_blk = _build_low_side(builder, low_side[2], k)
    hs_cert = high_side[2]
    if an.family is Family.SHORT_CORE:
        core = builder.build(hs_cert.core, Variant.HIGH_SHIFT, builder.step(k - 1), k - 1)
        parts = [builder.build(p, Variant.HIGH, None, k) for p in hs_cert.parts]
        expect = vals[2 * k + 1] + builder.step(k - 1)
    else:
        core = builder.build(hs_cert.core, Variant.LOW_SHIFT, builder.step(k), k)
        parts = [builder.build(p, Variant.HIGH, None, k) for p in hs_cert.parts]
        expect = vals[2 * k + 1] + builder.step(k)
    high_blk = builder.join_blocks(core, parts, vals[0], "min", expect_forced=expect)
    top = max(max(low_blk.pred), max(high_blk.pred))
    y = top + builder.step(k - 1)
    blk = builder.join_blocks(low_blk, [high_blk], y, "max",
                              expect_forced=vals[0] - 2 * builder.step(k - 1))
    return _finish(builder, blk, t, an.family, variant_name, None)


def realize_integral(t: RootedTree, alpha: Fraction,
                     beta: Fraction | None = None, deep: bool = False) -> RealizationCertificate:
    """Realize with an all-integer spectrum.

    alpha must be an integer.  The default beta = alpha + 2**(k-1), where k
    is the top ladder level, makes every ladder step an integer; an override
    is accepted when it satisfies the same divisibility."""
    alpha = Fraction(alpha)
    if alpha.denominator != 1:
        raise ValueError(f"alpha must be an integer, got {alpha}")
    d = diameter(t)
    if d < 1:
        raise ValueError("need at least one edge to realize")
    k = (d + 1) // 2
    grain = 2 ** (k - 1)
    if beta is None:
        beta = alpha + grain
    else:
        beta = Fraction(beta)
        if beta.denominator != 1:
            raise ValueError(f"beta must be an integer, got {beta}")
        if beta <= alpha:
            raise ValueError(f"need alpha < beta, got {alpha} >= {beta}")
        if (beta - alpha) % grain != 0:
            raise ValueError(f"beta - alpha must be divisible by {grain} "
                             f"for an integral spectrum at diameter {d}")
    cert = realize_family(t, alpha, beta, deep)
    assert all(v.denominator == 1 for v, _ in cert.dspec)
    return cert


def verify_certificate(m: WeightedTreeMatrix,
                       dspec: Sequence[tuple[Fraction, int]]) -> list[str]:
    """Re-derive every spectral claim of a certificate from the matrix
    alone.  Returns a list of human-readable failures; empty means the
    certificate holds."""
    problems: list[str] = []
    total = 0
    values = [v for v, _ in dspec]
    if sorted(values) != values or len(set(values)) != len(values):
        problems.append("dspec values are not strictly increasing")
    for lam, mult in dspec:
        c = counts_at(m, lam)
        if c.equal != mult:
            problems.append(f"claimed multiplicity {mult} at {lam}, measured {c.equal}")
        total += mult
    if total != m.n:
        problems.append(f"multiplicities sum to {total}, matrix order is {m.n}")
    d = diameter(m.tree)
    if len(dspec) != d + 1:
        problems.append(f"{len(dspec)} distinct values claimed, diameter {d} "
                        f"needs exactly {d + 1}")
    if values:
        lo, hi = counts_at(m, values[0]), counts_at(m, values[-1])
        if lo.below != 0:
            problems.append(f"{lo.below} eigenvalues below the claimed minimum")
        if hi.above != 0:
            problems.append(f"{hi.above} eigenvalues above the claimed maximum")
    return problems
