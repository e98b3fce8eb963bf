"""Canonical forms and automorphism counts for small graphs.

The canonical labeling is found by iterated neighborhood color refinement
followed by a backtracking search over all refinement-respecting orderings,
minimizing the adjacency word sequence.  No hashing shortcuts: equality of
canonical forms is exact isomorphism on the supported range.  Loop marks
participate in the vertex colors and in the canonical encoding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import SmallGraph, bits_of, pair_index

_cache: dict[tuple[int, int, int], tuple["CanonicalForm", int]] = {}


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical edge/loop bitsets plus one relabeling that achieves them."""

    n: int
    edges: int
    loops: int
    relabeling: tuple[int, ...]

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.n, self.edges, self.loops)

    def graph(self) -> SmallGraph:
        return SmallGraph(self.n, self.edges, self.loops)


def _refined_colors(n: int, rows: list[int], loops: int) -> list[int]:
    sig = [((loops >> i) & 1, rows[i].bit_count()) for i in range(n)]
    palette = {s: c for c, s in enumerate(sorted(set(sig)))}
    col = [palette[s] for s in sig]
    while True:
        sig2 = [(col[i], tuple(sorted(col[j] for j in bits_of(rows[i]))))
                for i in range(n)]
        palette2 = {s: c for c, s in enumerate(sorted(set(sig2)))}
        new = [palette2[s] for s in sig2]
        if new == col:
            return col
        col = new


def _canonical_search(n, rows, loops, blocks):
    """Minimize the position-by-position adjacency words over all orderings
    compatible with the refinement blocks.  Returns (order, aut_count)."""
    posblock = []
    for bi, blk in enumerate(blocks):
        posblock.extend([bi] * len(blk))
    used = [False] * n
    order: list[int] = []

    def rec(p):
        if p == n:
            return (), 1, ()
        best_w = None
        cand = []
        for v in blocks[posblock[p]]:
            if used[v]:
                continue
            w = ((loops >> v) & 1) << p
            rv = rows[v]
            for t in range(p):
                if rv >> order[t] & 1:
                    w |= 1 << (p - 1 - t)
            if best_w is None or w < best_w:
                best_w = w
                cand = [v]
            elif w == best_w:
                cand.append(v)
        best_key = None
        best_tail = ()
        total = 0
        for v in cand:
            used[v] = True
            order.append(v)
            key, cnt, tail = rec(p + 1)
            order.pop()
            used[v] = False
            if best_key is None or key < best_key:
                best_key, total, best_tail = key, cnt, (v,) + tail
            elif key == best_key:
                total += cnt
        return (best_w,) + (best_key or ()), total, best_tail

    _, aut, ordering = rec(0)
    return ordering, aut


def _canonical_data(g: SmallGraph) -> tuple[CanonicalForm, int]:
    key = (g.n, g.edges, g.loops)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    n = g.n
    if n == 0:
        result = (CanonicalForm(0, 0, 0, ()), 1)
        _cache[key] = result
        return result
    rows = g.adj_rows()
    colors = _refined_colors(n, rows, g.loops)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        groups.setdefault(c, []).append(v)
    blocks = [groups[c] for c in sorted(groups)]
    ordering, aut = _canonical_search(n, rows, g.loops, blocks)
    rel = [0] * n
    for pos, v in enumerate(ordering):
        rel[v] = pos
    edges = 0
    for i, j in g.edge_pairs():
        edges |= 1 << pair_index(n, rel[i], rel[j])
    loops = 0
    for v in bits_of(g.loops):
        loops |= 1 << rel[v]
    result = (CanonicalForm(n, edges, loops, tuple(rel)), aut)
    _cache[key] = result
    return result


def canonical_form(g: SmallGraph) -> CanonicalForm:
    return _canonical_data(g)[0]


def canon_key(g: SmallGraph) -> tuple[int, int, int]:
    return _canonical_data(g)[0].key


def automorphism_count(g: SmallGraph) -> int:
    return _canonical_data(g)[1]


def is_isomorphic(g1: SmallGraph, g2: SmallGraph) -> bool:
    return canon_key(g1) == canon_key(g2)
