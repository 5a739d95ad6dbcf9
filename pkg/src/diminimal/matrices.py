"""Symmetric matrices whose graph is a tree, with exact rational entries.

Off-diagonal entries are stored squared: the algorithms downstream only ever
consume squared edge weights, and keeping them squared means every quantity
in the package stays inside the rationals.  The float expansion used by the
cross-checking oracle takes square roots at the last possible moment.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .trees import RootedTree, build_tree, tree_from_json, tree_to_json

Rational = Fraction


def parse_rational(text: str | int) -> Fraction:
    """Parse "p/q" or a bare integer (string or int) into a Fraction.

    Floats are rejected on purpose: every interface of this package is
    exact, and silently accepting 0.1 would poison that.
    """
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    raise ValueError(f"not a rational: {text!r}")


def format_rational(q: Fraction) -> str:
    """Inverse of parse_rational: "p/q", or "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class WeightedTreeMatrix:
    """Symmetric rational matrix supported on a tree.

    diag[i] is the diagonal entry of vertex i; sq_edge[j] is the squared
    off-diagonal entry of tree.edges[j].  All squared weights are required
    to be strictly positive, so the matrix graph really is the tree.
    """

    tree: RootedTree
    diag: tuple[Fraction, ...]
    sq_edge: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.diag) != self.tree.n:
            raise ValueError("diag length does not match vertex count")
        if len(self.sq_edge) != len(self.tree.edges):
            raise ValueError("sq_edge length does not match edge count")
        for w in self.sq_edge:
            if w <= 0:
                raise ValueError(f"squared edge weight must be positive, got {w}")

    @property
    def n(self) -> int:
        return self.tree.n

    @cached_property
    def sq_weight(self) -> dict[tuple[int, int], Fraction]:
        """Squared weight lookup keyed by normalized (min, max) vertex pair."""
        return dict(zip(self.tree.edges, self.sq_edge))


def make_matrix(tree: RootedTree, diag: Sequence[Fraction | int | str],
                sq_edge: Mapping[tuple[int, int], Fraction | int | str]) -> WeightedTreeMatrix:
    """Convenience constructor taking a squared-weight mapping keyed by edge
    (either orientation) and any rational-like entry values."""
    d = tuple(q if isinstance(q, Fraction) else parse_rational(q) for q in diag)
    w: list[Fraction] = []
    for u, v in tree.edges:
        if (u, v) in sq_edge:
            raw = sq_edge[(u, v)]
        elif (v, u) in sq_edge:
            raw = sq_edge[(v, u)]
        else:
            raise ValueError(f"missing squared weight for edge ({u}, {v})")
        w.append(raw if isinstance(raw, Fraction) else parse_rational(raw))
    if len(sq_edge) != len(tree.edges):
        raise ValueError("squared-weight mapping mentions edges not in the tree")
    return WeightedTreeMatrix(tree, d, tuple(w))


def trace(m: WeightedTreeMatrix) -> Fraction:
    return sum(m.diag, Fraction(0))


def delete_vertex(m: WeightedTreeMatrix, v: int) -> list[WeightedTreeMatrix]:
    """Principal submatrix on T minus v, split into its connected components.

    Each component comes back as a standalone WeightedTreeMatrix whose tree
    is rooted at the former neighbor of v, with ids compacted to 0..m-1 in
    increasing order of the original ids.
    """
    t = m.tree
    if not (0 <= v < t.n):
        raise ValueError(f"vertex {v} out of range")
    out: list[WeightedTreeMatrix] = []
    seen: set[int] = set()
    for nb in t.adjacency[v]:
        if nb in seen:
            continue
        comp = [nb]
        seen.add(nb)
        i = 0
        while i < len(comp):
            for u in t.adjacency[comp[i]]:
                if u != v and u not in seen:
                    seen.add(u)
                    comp.append(u)
            i += 1
        comp_sorted = sorted(comp)
        relabel = {old: new for new, old in enumerate(comp_sorted)}
        comp_set = set(comp_sorted)
        edges = [(relabel[a], relabel[b]) for a, b in t.edges
                 if a in comp_set and b in comp_set]
        sub = build_tree(edges, relabel[nb])
        diag = tuple(m.diag[old] for old in comp_sorted)
        w = {}
        for a, b in t.edges:
            if a in comp_set and b in comp_set:
                key = (min(relabel[a], relabel[b]), max(relabel[a], relabel[b]))
                w[key] = m.sq_weight[(a, b)]
        out.append(make_matrix(sub, diag, w))
    return out


def to_dense_float(m: WeightedTreeMatrix) -> np.ndarray:
    """Float expansion: diagonal as-is, off-diagonals +sqrt of the stored
    squared weights.  Only the oracle should ever need this."""
    a = np.zeros((m.n, m.n), dtype=float)
    for i, q in enumerate(m.diag):
        a[i, i] = float(q)
    for (u, v), w in zip(m.tree.edges, m.sq_edge):
        x = math.sqrt(float(w))
        a[u, v] = x
        a[v, u] = x
    return a


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def matrix_to_json(m: WeightedTreeMatrix) -> dict:
    return {
        "tree": tree_to_json(m.tree),
        "diag": [format_rational(q) for q in m.diag],
        "sq_edge": [
            {"u": u, "v": v, "w2": format_rational(w)}
            for (u, v), w in zip(m.tree.edges, m.sq_edge)
        ],
    }


def matrix_from_json(obj: dict) -> WeightedTreeMatrix:
    try:
        tree = tree_from_json(obj["tree"])
        diag = [parse_rational(q) for q in obj["diag"]]
        sq = {(int(e["u"]), int(e["v"])): parse_rational(e["w2"]) for e in obj["sq_edge"]}
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    return make_matrix(tree, diag, sq)


def matrix_dumps(m: WeightedTreeMatrix) -> str:
    """Canonical single-line JSON text for a matrix."""
    return json.dumps(matrix_to_json(m), sort_keys=True, separators=(",", ":")) + "\n"


def matrix_to_dot(m: WeightedTreeMatrix) -> str:
    lines = ["graph matrix {"]
    for v in range(m.n):
        shape = ", shape=box" if v == m.tree.root else ""
        lines.append(f'  {v} [label="{v}: {format_rational(m.diag[v])}"{shape}];')
    for (u, v), w in zip(m.tree.edges, m.sq_edge):
        approx = math.sqrt(float(w))
        lines.append(f'  {u} -- {v} [label="w2={format_rational(w)}"];  // weight ~ {approx:.6g}')
    lines.append("}")
    return "\n".join(lines) + "\n"
