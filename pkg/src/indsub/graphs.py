"""Bitset-backed graph types shared by every pipeline stage.

Small pattern graphs store their edge set as one integer over the C(n,2)
vertex pairs in lexicographic (i,j), i < j order; a second integer can mark
loops, which only arise from quotient operations.  Host graphs keep sorted
adjacency lists plus per-vertex neighbor bitmasks.

Two text forms are supported: graph6, and a plain edge list whose first
line is "n m" followed by one "u v" pair per line (0-indexed).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from .errors import FormatError

MAX_SMALL_VERTICES = 16


@lru_cache(maxsize=None)
def pair_table(n: int) -> tuple[tuple[int, int], ...]:
    """All vertex pairs of an n-vertex graph in lexicographic order."""
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def _pair_index_map(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(pair_table(n))}


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return _pair_index_map(n)[(i, j)]


def bits_of(mask: int):
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SmallGraph:
    """A graph on at most 16 vertices; `edges` indexes pair_table(n).

    `loops` marks vertices carrying a self-loop.  Plain graphs (inputs,
    catalog members) always have loops == 0; quotients may not.
    """

    n: int
    edges: int = 0
    loops: int = 0

    def __post_init__(self):
        if not 0 <= self.n <= MAX_SMALL_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_SMALL_VERTICES}")
        if not 0 <= self.edges < (1 << pair_count(self.n)):
            raise ValueError("edge bitset out of range")
        if not 0 <= self.loops < (1 << max(self.n, 1)):
            raise ValueError("loop bitset out of range")

    @classmethod
    def from_edges(cls, n: int, pairs) -> "SmallGraph":
        mask = 0
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside 0..{n - 1}")
            mask |= 1 << pair_index(n, u, v)
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "SmallGraph":
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> "SmallGraph":
        return cls(n, (1 << pair_count(n)) - 1)

    @classmethod
    def cycle(cls, n: int) -> "SmallGraph":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "SmallGraph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @property
    def edge_count(self) -> int:
        return self.edges.bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.edges >> pair_index(self.n, i, j) & 1)

    def edge_pairs(self) -> list[tuple[int, int]]:
        pt = pair_table(self.n)
        return [pt[b] for b in bits_of(self.edges)]

    def adj_rows(self) -> list[int]:
        """Neighbor bitmask per vertex (loops not included)."""
        rows = [0] * self.n
        pt = pair_table(self.n)
        for b in bits_of(self.edges):
            i, j = pt[b]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return rows

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj_rows()]

    def with_edge(self, i: int, j: int) -> "SmallGraph":
        return SmallGraph(self.n, self.edges | 1 << pair_index(self.n, i, j), self.loops)

    def without_edge(self, i: int, j: int) -> "SmallGraph":
        return SmallGraph(self.n, self.edges & ~(1 << pair_index(self.n, i, j)), self.loops)

    def complement(self) -> "SmallGraph":
        if self.loops:
            raise ValueError("complement undefined for loop-marked graphs")
        return SmallGraph(self.n, self.edges ^ ((1 << pair_count(self.n)) - 1))

    def relabel(self, perm) -> "SmallGraph":
        """Rename vertex v to perm[v]."""
        n = self.n
        edges = 0
        for i, j in self.edge_pairs():
            edges |= 1 << pair_index(n, perm[i], perm[j])
        loops = 0
        for v in bits_of(self.loops):
            loops |= 1 << perm[v]
        return SmallGraph(n, edges, loops)

    def induced(self, vertices) -> "SmallGraph":
        """Induced subgraph on the given vertices, relabeled in sorted order."""
        vs = sorted(vertices)
        m = len(vs)
        idx = {v: i for i, v in enumerate(vs)}
        edges = 0
        for a, b in combinations(vs, 2):
            if self.has_edge(a, b):
                edges |= 1 << pair_index(m, idx[a], idx[b])
        loops = 0
        for v in vs:
            if self.loops >> v & 1:
                loops |= 1 << idx[v]
        return SmallGraph(m, edges, loops)

    def delete_vertex(self, v: int) -> "SmallGraph":
        return self.induced([u for u in range(self.n) if u != v])

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        rows = self.adj_rows()
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits_of(frontier):
                nxt |= rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def components(self) -> list[list[int]]:
        rows = self.adj_rows()
        unseen = (1 << self.n) - 1
        comps = []
        while unseen:
            start = unseen & -unseen
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                for v in bits_of(frontier):
                    nxt |= rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            comps.append(list(bits_of(comp)))
            unseen &= ~comp
        return comps

    def to_graph6(self) -> str:
        if self.loops:
            raise ValueError("graph6 cannot encode loops")
        return _encode_graph6(self.n, lambda i, j: self.has_edge(i, j))

    @classmethod
    def from_graph6(cls, text: str) -> "SmallGraph":
        n, pairs = _decode_graph6(text)
        if n > MAX_SMALL_VERTICES:
            raise ValueError(f"graph6 graph has {n} > {MAX_SMALL_VERTICES} vertices")
        return cls.from_edges(n, pairs)

    def to_edge_list_text(self) -> str:
        lines = [f"{self.n} {self.edge_count}"]
        lines += [f"{u} {v}" for u, v in self.edge_pairs()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class HostGraph:
    """Host-side graph: sorted neighbor lists; loop-free, no duplicates."""

    n: int
    neighbors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.neighbors) != self.n:
            raise ValueError("neighbor table size mismatch")
        for u, nbrs in enumerate(self.neighbors):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbors of {u} not sorted/unique")
            for v in nbrs:
                if v == u:
                    raise ValueError(f"loop at {u}")
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbor {v} out of range")
                if u not in self.neighbors[v]:
                    raise ValueError(f"edge ({u},{v}) not symmetric")

    @classmethod
    def from_edges(cls, n: int, pairs) -> "HostGraph":
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside 0..{n - 1}")
            sets[u].add(v)
            sets[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in sets))

    @classmethod
    def from_small(cls, g: SmallGraph) -> "HostGraph":
        if g.loops:
            raise ValueError("host graphs are loop-free")
        return cls.from_edges(g.n, g.edge_pairs())

    @classmethod
    def from_graph6(cls, text: str) -> "HostGraph":
        n, pairs = _decode_graph6(text)
        return cls.from_edges(n, pairs)

    @cached_property
    def adj_bits(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in nbrs) for nbrs in self.neighbors)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.neighbors) // 2

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_bits[u] >> v & 1)

    def induced_small(self, vertices) -> SmallGraph:
        vs = sorted(vertices)
        m = len(vs)
        edges = 0
        bit = self.adj_bits
        for a in range(m):
            row = bit[vs[a]]
            for b in range(a + 1, m):
                if row >> vs[b] & 1:
                    edges |= 1 << pair_index(m, a, b)
        return SmallGraph(m, edges)

    def delete_vertices(self, drop) -> "HostGraph":
        dropped = set(drop)
        keep = [v for v in range(self.n) if v not in dropped]
        idx = {v: i for i, v in enumerate(keep)}
        pairs = [(idx[u], idx[v]) for u, v in self.edge_pairs()
                 if u not in dropped and v not in dropped]
        return HostGraph.from_edges(len(keep), pairs)

    def complement(self) -> "HostGraph":
        pairs = [(u, v) for u, v in combinations(range(self.n), 2)
                 if not self.has_edge(u, v)]
        return HostGraph.from_edges(self.n, pairs)

    def to_graph6(self) -> str:
        return _encode_graph6(self.n, self.has_edge)

    def to_edge_list_text(self) -> str:
        lines = [f"{self.n} {self.edge_count}"]
        lines += [f"{u} {v}" for u, v in self.edge_pairs()]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- graph6

def _encode_graph6(n: int, has_edge) -> str:
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    else:
        raise ValueError("graph too large for this graph6 writer")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    chunks = []
    for t in range(0, len(bits), 6):
        val = 0
        for b in bits[t:t + 6]:
            val = val << 1 | b
        chunks.append(chr(val + 63))
    return head + "".join(chunks)


def _decode_graph6(text: str) -> tuple[int, list[tuple[int, int]]]:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise FormatError(f"invalid graph6 characters in {s!r}")
    if data[0] == 63:
        if len(data) < 4:
            raise FormatError("truncated graph6 size")
        n = data[1] << 12 | data[2] << 6 | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (pair_count(n) + 5) // 6
    if len(body) != need:
        raise FormatError(f"graph6 body length {len(body)}, expected {need}")
    bits = []
    for d in body:
        for s6 in (5, 4, 3, 2, 1, 0):
            bits.append(d >> s6 & 1)
    pairs = []
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                pairs.append((i, j))
            t += 1
    return n, pairs


# ------------------------------------------------------------- file text

def parse_graph_text(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse a single graph, either graph6 or "n m" edge-list text."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("no graph data found")
    head = lines[0].split()
    if all(tok.lstrip("-").isdigit() for tok in head):
        if len(head) not in (1, 2):
            raise FormatError(f"bad edge-list header {lines[0]!r}")
        n = int(head[0])
        if n < 0:
            raise FormatError("negative vertex count")
        pairs = []
        for ln in lines[1:]:
            toks = ln.split()
            if len(toks) != 2 or not all(t.lstrip("-").isdigit() for t in toks):
                raise FormatError(f"bad edge line {ln!r}")
            u, v = int(toks[0]), int(toks[1])
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"edge ({u},{v}) invalid for n={n}")
            pairs.append((u, v))
        if len(head) == 2 and int(head[1]) != len(set(frozenset(p) for p in pairs)):
            raise FormatError(f"edge count mismatch: header says {head[1]}")
        return n, pairs
    if len(lines) != 1:
        raise FormatError("expected a single graph6 line")
    return _decode_graph6(lines[0])


def load_host_graph(path) -> HostGraph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    try:
        n, pairs = parse_graph_text(text)
        return HostGraph.from_edges(n, pairs)
    except (FormatError, ValueError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def load_small_graph(path) -> SmallGraph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    try:
        n, pairs = parse_graph_text(text)
        return SmallGraph.from_edges(n, pairs)
    except (FormatError, ValueError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def load_graph_list(path) -> list[SmallGraph]:
    """Read a list of small graphs, one graph6 string per line."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    out = []
    for ln in lines:
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        try:
            out.append(SmallGraph.from_graph6(ln))
        except (FormatError, ValueError) as exc:
            raise FormatError(f"{path}: {exc}") from exc
    if not out:
        raise FormatError(f"{path}: no graphs found")
    return out
