"""Exact homomorphism counting into simple host graphs.

count_hom runs dynamic programming over a tree decomposition of the
pattern, so its host-side cost is n^(tw+1) rather than n^k.  Treewidth is
computed exactly by the elimination-ordering DP over vertex subsets, which
is fine for the pattern sizes this package handles (k <= 8, decomposition
solver capped at 12 vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalConsistencyError
from .graphs import HostGraph, SmallGraph, bits_of

MAX_TREEWIDTH_N = 12


def _reachability_cost(rows, eliminated, v):
    """Q(S, v): neighbors of v outside S reachable through S, as a bitmask."""
    seen = 1 << v
    frontier = rows[v]
    out = 0
    while frontier:
        fresh = frontier & ~seen
        seen |= fresh
        frontier = 0
        for u in bits_of(fresh):
            if eliminated >> u & 1:
                frontier |= rows[u]
            else:
                out |= 1 << u
    return out


def _tw_table(g: SmallGraph) -> list[int]:
    """T[S] = min over orders eliminating exactly S first of the max
    back-degree incurred."""
    n = g.n
    if n > MAX_TREEWIDTH_N:
        raise ValueError(f"treewidth solver handles at most {MAX_TREEWIDTH_N} vertices")
    if g.loops:
        raise ValueError("treewidth is defined here for loop-free graphs")
    rows = g.adj_rows()
    T = [0] * (1 << n)
    for S in range(1, 1 << n):
        best = n
        for v in bits_of(S):
            prev = S & ~(1 << v)
            q = _reachability_cost(rows, prev, v).bit_count()
            cost = T[prev] if T[prev] > q else q
            if cost < best:
                best = cost
        T[S] = best
    return T


def exact_treewidth(g: SmallGraph) -> int:
    if g.n == 0:
        return -1
    return _tw_table(g)[(1 << g.n) - 1]


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted decomposition as a parent-pointer forest of bags."""

    graph: SmallGraph
    bags: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]       # parent[i] = -1 for a root

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def validate(self) -> None:
        g = self.graph
        n = g.n
        covered = [False] * n
        for bag in self.bags:
            for v in bag:
                if not 0 <= v < n:
                    raise InternalConsistencyError("bag vertex out of range")
                covered[v] = True
        if n and not all(covered):
            raise InternalConsistencyError("decomposition misses a vertex")
        for i, j in g.edge_pairs():
            if not any(i in bag and j in bag for bag in self.bags):
                raise InternalConsistencyError(f"edge ({i},{j}) not covered by any bag")
        # the bags holding any fixed vertex must form one subtree: exactly
        # one of them may have its parent outside the holder set
        for v in range(n):
            holders = {b for b, bag in enumerate(self.bags) if v in bag}
            anchors = [b for b in holders
                       if self.parent[b] == -1 or self.parent[b] not in holders]
            if len(anchors) > 1:
                raise InternalConsistencyError(
                    f"bags containing vertex {v} are disconnected")


def tree_decomposition(g: SmallGraph) -> TreeDecomposition:
    """Width-optimal rooted decomposition recovered from the treewidth DP:
    peel an optimal elimination order off the table, simulate fill-in, and
    emit one bag per vertex with its higher fill-neighbors."""
    n = g.n
    if n == 0:
        return TreeDecomposition(g, ((),), (-1,))
    rows = g.adj_rows()
    T = _tw_table(g)
    order = []
    S = (1 << n) - 1
    while S:
        for v in bits_of(S):
            prev = S & ~(1 << v)
            q = _reachability_cost(rows, prev, v).bit_count()
            if max(T[prev], q) == T[S]:
                order.append(v)
                S = prev
                break
    order.reverse()
    pos = {v: i for i, v in enumerate(order)}
    fill = list(rows)
    for v in order:
        higher = [u for u in bits_of(fill[v]) if pos[u] > pos[v]]
        for a in higher:
            for b in higher:
                if a < b:
                    fill[a] |= 1 << b
                    fill[b] |= 1 << a
    # build bags from the last-eliminated vertex down so each bag's anchor
    # (earliest-eliminated higher neighbor) already has a bag index
    bags = []
    parent = []
    index_of_vertex: dict[int, int] = {}
    for i, v in enumerate(reversed(order)):
        higher = sorted(u for u in bits_of(fill[v]) if pos[u] > pos[v])
        bags.append(tuple([v] + higher))
        index_of_vertex[v] = i
        if not higher:
            parent.append(-1)
        else:
            anchor = min(higher, key=lambda u: pos[u])
            parent.append(index_of_vertex[anchor])
    td = TreeDecomposition(g, tuple(bags), tuple(parent))
    td.validate()
    if td.width != max(T[(1 << n) - 1], 0):
        raise InternalConsistencyError(
            f"decomposition width {td.width} != treewidth {T[(1 << n) - 1]}")
    return td


# --------------------------------------------------------- hom counting

def count_hom(pattern: SmallGraph, host: HostGraph, *,
              td: TreeDecomposition | None = None) -> int:
    """Number of homomorphisms pattern -> host.  Loop-marked patterns map
    to 0 because hosts are simple; disconnected patterns factor into the
    product of their components' counts."""
    if pattern.loops:
        return 0
    if pattern.n == 0:
        return 1
    comps = pattern.components()
    if len(comps) > 1:
        total = 1
        for comp in comps:
            total *= count_hom(pattern.induced(comp), host)
            if total == 0:
                return 0
        return total
    if td is None:
        td = tree_decomposition(pattern)
    elif td.graph != pattern:
        raise ValueError("tree decomposition belongs to a different pattern")
    return _count_hom_connected(pattern, host, td)


def _count_hom_connected(pattern: SmallGraph, host: HostGraph,
                         td: TreeDecomposition) -> int:
    n_host = host.n
    if n_host == 0:
        return 0
    adj = host.adj_bits
    prows = pattern.adj_rows()
    children: list[list[int]] = [[] for _ in td.bags]
    root = -1
    for b, p in enumerate(td.parent):
        if p == -1:
            if root != -1:
                raise InternalConsistencyError("connected pattern must give one root")
            root = b
        else:
            children[p].append(b)

    def solve(b: int) -> dict[tuple[int, ...], int]:
        """Table mapping the bag's parent-interface assignment to the
        number of consistent assignments of the whole subtree below."""
        bag = td.bags[b]
        tables = [solve(c) for c in children[b]]
        interfaces = []
        for c in children[b]:
            cbag = td.bags[c]
            interfaces.append(tuple(bag.index(v) for v in cbag if v in bag))
        acc: dict[tuple[int, ...], int] = {}
        p = td.parent[b]
        keep = tuple(i for i, v in enumerate(bag)
                     if p != -1 and v in td.bags[p])
        current: list[int] = []

        def backtrack(i):
            if i == len(bag):
                weight = 1
                for t, iface in zip(tables, interfaces):
                    weight *= t.get(tuple(current[j] for j in iface), 0)
                    if not weight:
                        return
                key = tuple(current[j] for j in keep)
                acc[key] = acc.get(key, 0) + weight
                return
            v = bag[i]
            mask = None
            for j in range(i):
                if prows[v] >> bag[j] & 1:
                    m = adj[current[j]]
                    mask = m if mask is None else mask & m
            candidates = range(n_host) if mask is None else bits_of(mask)
            for x in candidates:
                current.append(x)
                backtrack(i + 1)
                current.pop()

        backtrack(0)
        return acc

    return solve(root).get((), 0)


def avg_degree_tw_bound(h: SmallGraph) -> Fraction:
    """Half the average degree, |E|/|V|: a lower bound on treewidth, since
    a graph of treewidth t has at most t*|V| edges."""
    if h.n == 0:
        return Fraction(0)
    return Fraction(h.edge_count, h.n)
