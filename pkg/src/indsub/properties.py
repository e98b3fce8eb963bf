"""Graph properties: predicate plus declared structural flags.

A property is an isomorphism-invariant boolean on loop-free graphs.  The
declared flags (monotone, hereditary, edge-count-only, sparse(s)) are
promises the predicate is supposed to keep; verify_flags checks them
exhaustively on all isomorphism classes up to a size bound and reports
violations with witnesses instead of trusting the declaration.

User properties enter through three constructors: a forbidden induced
subgraph list, a forbidden subgraph list (monotone by construction), or a
truth table over the catalog order of a fixed k.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Callable, Optional

from .canon import canon_key
from .catalog import build_catalog
from .errors import FormatError, PredicateError, UnknownPropertyError
from .graphs import SmallGraph, bits_of, pair_count


@dataclass(frozen=True)
class PropertySpec:
    name: str
    predicate: Callable[[SmallGraph], bool]
    monotone: bool = False
    hereditary: bool = False
    edge_count_only: bool = False
    sparse_bound: Optional[int] = None
    forbidden_induced: Optional[tuple[SmallGraph, ...]] = None
    forbidden_subgraphs: Optional[tuple[SmallGraph, ...]] = None

    @property
    def flags(self) -> tuple[str, ...]:
        out = []
        if self.monotone:
            out.append("monotone")
        if self.hereditary:
            out.append("hereditary")
        if self.edge_count_only:
            out.append("edge-count-only")
        if self.sparse_bound is not None:
            out.append(f"sparse({self.sparse_bound})")
        return tuple(out)

    def __call__(self, g: SmallGraph) -> bool:
        return evaluate(self, g)


def evaluate(phi: PropertySpec, g: SmallGraph) -> bool:
    if g.loops:
        raise ValueError("properties are defined on loop-free graphs")
    try:
        return bool(phi.predicate(g))
    except Exception as exc:  # noqa: BLE001 - echo the offending graph
        raise PredicateError(
            f"property {phi.name!r} failed on {g.to_graph6()!r}: {exc}") from exc


def negate(phi: PropertySpec) -> PropertySpec:
    """Pointwise negation.  Only edge-count-only survives the flip."""
    pred = phi.predicate
    return PropertySpec(
        name=f"not-{phi.name}",
        predicate=lambda g: not pred(g),
        edge_count_only=phi.edge_count_only,
    )


def invert(phi: PropertySpec) -> PropertySpec:
    """Compose with graph complement.  Hereditary and edge-count-only are
    preserved; monotone and sparsity are not."""
    pred = phi.predicate
    forb = None
    if phi.forbidden_induced is not None:
        forb = tuple(h.complement() for h in phi.forbidden_induced)
    return PropertySpec(
        name=f"inv-{phi.name}",
        predicate=lambda g: pred(g.complement()),
        hereditary=phi.hereditary,
        edge_count_only=phi.edge_count_only,
        forbidden_induced=forb,
    )


# ----------------------------------------------------------- predicates

def _always_true(g):
    return True


def _always_false(g):
    return False


def _no_edges(g):
    return g.edges == 0


def _connected(g):
    return g.is_connected()


def _bipartite(g):
    rows = g.adj_rows()
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in bits_of(rows[u]):
                if color[v] < 0:
                    color[v] = color[u] ^ 1
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _triangle_free(g):
    rows = g.adj_rows()
    for i, j in g.edge_pairs():
        if rows[i] & rows[j]:
            return False
    return True


def _planar(g):
    if g.n < 5:
        return True
    if g.edge_count > 3 * g.n - 6:
        return False
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edge_pairs())
    return nx.check_planarity(h, counterexample=False)[0]


def _edge_count_even(g):
    return g.edge_count % 2 == 0


def _chordal(g):
    """Repeatedly strip simplicial vertices; chordal iff nothing is left."""
    rows = list(g.adj_rows())
    alive = (1 << g.n) - 1
    remaining = g.n
    while remaining:
        progress = False
        for v in bits_of(alive):
            nb = rows[v] & alive
            simplicial = True
            for u in bits_of(nb):
                if nb & ~(rows[u] | (1 << u)):
                    simplicial = False
                    break
            if simplicial:
                alive &= ~(1 << v)
                remaining -= 1
                progress = True
        if not progress:
            return False
    return True


def _split(g):
    """Hammer-Simeone degree criterion for split graphs."""
    deg = sorted(g.degrees(), reverse=True)
    n = g.n
    m = 0
    for i in range(1, n + 1):
        if deg[i - 1] >= i - 1:
            m = i
    lhs = sum(deg[:m])
    rhs = m * (m - 1) + sum(deg[m:])
    return lhs == rhs


def _has_odd_hole(n, rows):
    for ell in range(5, n + 1, 2):
        for sub in combinations(range(n), ell):
            inside = 0
            for v in sub:
                inside |= 1 << v
            degs_ok = True
            for v in sub:
                if (rows[v] & inside).bit_count() != 2:
                    degs_ok = False
                    break
            if not degs_ok:
                continue
            seen = 1 << sub[0]
            frontier = seen
            while frontier:
                nxt = 0
                for v in bits_of(frontier):
                    nxt |= rows[v] & inside
                frontier = nxt & ~seen
                seen |= frontier
            if seen == inside:
                return True
    return False


def _perfect(g):
    rows = g.adj_rows()
    if _has_odd_hole(g.n, rows):
        return False
    comp = g.complement()
    return not _has_odd_hole(g.n, comp.adj_rows())


def contains_induced(g: SmallGraph, h: SmallGraph) -> bool:
    if h.n > g.n:
        return False
    target = canon_key(h)
    for sub in combinations(range(g.n), h.n):
        if canon_key(g.induced(sub)) == target:
            return True
    return False


def contains_subgraph(g: SmallGraph, h: SmallGraph) -> bool:
    """Does g contain h as a (not necessarily induced) subgraph?"""
    if h.n > g.n or h.edge_count > g.edge_count:
        return False
    hrows = h.adj_rows()
    grows = g.adj_rows()
    verts = sorted(range(h.n), key=lambda v: -hrows[v].bit_count())
    image = [-1] * h.n
    used = [False] * g.n

    def rec(i):
        if i == len(verts):
            return True
        v = verts[i]
        need = [u for u in bits_of(hrows[v]) if image[u] >= 0]
        for w in range(g.n):
            if used[w]:
                continue
            if any(not grows[w] >> image[u] & 1 for u in need):
                continue
            image[v] = w
            used[w] = True
            if rec(i + 1):
                return True
            image[v] = -1
            used[w] = False
        return False

    return rec(0)


# ------------------------------------------------------------- the zoo

_K2 = SmallGraph.complete(2)
_K3 = SmallGraph.complete(3)
_K5 = SmallGraph.complete(5)
_C4 = SmallGraph.cycle(4)
_C5 = SmallGraph.cycle(5)
_C6 = SmallGraph.cycle(6)
_C7 = SmallGraph.cycle(7)
_2K2 = SmallGraph.cycle(4).complement()

BUILTIN_PROPERTIES: dict[str, PropertySpec] = {
    "true": PropertySpec("true", _always_true, monotone=True, hereditary=True,
                         edge_count_only=True),
    "false": PropertySpec("false", _always_false, monotone=True,
                          hereditary=True, edge_count_only=True),
    "no-edges": PropertySpec("no-edges", _no_edges, monotone=True,
                             hereditary=True, edge_count_only=True,
                             sparse_bound=0, forbidden_induced=(_K2,),
                             forbidden_subgraphs=(_K2,)),
    "connected": PropertySpec("connected", _connected),
    "bipartite": PropertySpec("bipartite", _bipartite, monotone=True,
                              hereditary=True,
                              forbidden_induced=(_K3, _C5, _C7),
                              forbidden_subgraphs=(_K3,)),
    "triangle-free": PropertySpec("triangle-free", _triangle_free,
                                  monotone=True, hereditary=True,
                                  forbidden_induced=(_K3,),
                                  forbidden_subgraphs=(_K3,)),
    "planar": PropertySpec("planar", _planar, monotone=True, hereditary=True,
                           sparse_bound=3, forbidden_subgraphs=(_K5,)),
    "edge-count-even": PropertySpec("edge-count-even", _edge_count_even,
                                    edge_count_only=True),
    "chordal": PropertySpec("chordal", _chordal, hereditary=True,
                            forbidden_induced=(_C4, _C5, _C6)),
    "split": PropertySpec("split", _split, hereditary=True,
                          forbidden_induced=(_2K2, _C4, _C5)),
    "perfect": PropertySpec("perfect", _perfect, hereditary=True,
                            forbidden_induced=(_C5, _C7, _C7.complement())),
}


def get_property(name: str) -> PropertySpec:
    try:
        return BUILTIN_PROPERTIES[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_PROPERTIES))
        raise UnknownPropertyError(f"{name!r} (known: {known})") from None


# ------------------------------------------------- user-defined properties

def h_free_property(h: SmallGraph, name: str | None = None) -> PropertySpec:
    return forbidden_induced_property((h,), name or f"{h.to_graph6()}-free")


def forbidden_induced_property(graphs, name="forbidden-induced") -> PropertySpec:
    gs = tuple(graphs)

    def pred(g):
        return not any(contains_induced(g, h) for h in gs)

    return PropertySpec(name, pred, hereditary=True, forbidden_induced=gs)


def forbidden_subgraph_property(graphs, name="forbidden-subgraph") -> PropertySpec:
    gs = tuple(graphs)

    def pred(g):
        return not any(contains_subgraph(g, h) for h in gs)

    return PropertySpec(name, pred, monotone=True, hereditary=True,
                        forbidden_subgraphs=gs)


def edge_count_in_property(values, name=None) -> PropertySpec:
    vals = frozenset(values)

    def pred(g):
        return g.edge_count in vals

    return PropertySpec(name or f"edge-count-in-{sorted(vals)}", pred,
                        edge_count_only=True)


def truth_table_property(tables: dict[int, str], name="truth-table") -> PropertySpec:
    """tables maps k to a catalog-ordered bit string; graphs of a size with
    no table do not satisfy the property."""
    parsed = {}
    for k, bitstring in tables.items():
        bits = bitstring.strip()
        if set(bits) - {"0", "1"}:
            raise FormatError(f"truth table for k={k} is not a bit string")
        cat = build_catalog(k)
        if len(bits) != cat.class_count:
            raise FormatError(
                f"truth table for k={k} has {len(bits)} bits, catalog has "
                f"{cat.class_count} classes")
        parsed[k] = bits

    def pred(g):
        bits = parsed.get(g.n)
        if bits is None:
            return False
        cat = build_catalog(g.n)
        return bits[cat.index_of(g)] == "1"

    return PropertySpec(name, pred)


def load_truth_table(path) -> dict[int, str]:
    """Parse a truth-table file: "k=<int>" header lines, each followed by
    one bit-string line; several sections allowed."""
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh.read().splitlines()]
    except OSError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    tables: dict[int, str] = {}
    i = 0
    while i < len(lines):
        if not lines[i].startswith("k="):
            raise FormatError(f"{path}: expected 'k=<int>' header, got {lines[i]!r}")
        try:
            k = int(lines[i][2:])
        except ValueError:
            raise FormatError(f"{path}: bad header {lines[i]!r}") from None
        if i + 1 >= len(lines):
            raise FormatError(f"{path}: missing bit string for k={k}")
        tables[k] = lines[i + 1]
        i += 2
    if not tables:
        raise FormatError(f"{path}: no tables found")
    return tables


# ------------------------------------------------------ flag verification

@dataclass(frozen=True)
class FlagViolation:
    flag: str
    witness: str       # graph6 of the offending graph
    detail: str


@dataclass(frozen=True)
class FlagReport:
    property_name: str
    k_max: int
    checked: tuple[str, ...]
    violations: tuple[FlagViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_flags(phi: PropertySpec, k_max: int, *, cache_dir=None) -> FlagReport:
    """Exhaustively check the declared flags on all isomorphism classes with
    at most k_max vertices (k_max <= 6)."""
    if not 1 <= k_max <= 6:
        raise ValueError("verify_flags supports 1 <= k_max <= 6")
    violations: list[FlagViolation] = []

    def check(flag, g, ok, detail):
        if not ok:
            violations.append(FlagViolation(flag, g.to_graph6(), detail))

    for k in range(1, k_max + 1):
        cat = build_catalog(k, cache_dir=cache_dir)
        by_m: dict[int, set[bool]] = {}
        for entry in cat.entries:
            g = entry.graph
            val = evaluate(phi, g)
            by_m.setdefault(g.edge_count, set()).add(val)
            if phi.sparse_bound is not None and val:
                check(f"sparse({phi.sparse_bound})", g,
                      g.edge_count <= phi.sparse_bound * g.n,
                      f"{g.edge_count} edges on {g.n} vertices")
            if not val:
                continue
            if phi.monotone:
                for i, j in g.edge_pairs():
                    check("monotone", g, evaluate(phi, g.without_edge(i, j)),
                          f"fails after deleting edge ({i},{j})")
                for v in range(g.n):
                    check("monotone", g, evaluate(phi, g.delete_vertex(v)),
                          f"fails after deleting vertex {v}")
            if phi.hereditary:
                for v in range(g.n):
                    check("hereditary", g, evaluate(phi, g.delete_vertex(v)),
                          f"fails after deleting vertex {v}")
        if phi.edge_count_only:
            for m, vals in sorted(by_m.items()):
                if len(vals) > 1:
                    wit = next(e.graph for e in cat.entries
                               if e.graph.edge_count == m)
                    violations.append(FlagViolation(
                        "edge-count-only", wit.to_graph6(),
                        f"value not constant on ({k},{m}) classes"))
    checked = phi.flags
    return FlagReport(phi.name, k_max, checked, tuple(violations))


def property_support_at(phi: PropertySpec, k: int, *, cache_dir=None) -> bool:
    """Does any k-vertex graph satisfy phi?"""
    cat = build_catalog(k, cache_dir=cache_dir)
    return any(evaluate(phi, e.graph) for e in cat.entries)
