import itertools
import random

import pytest

from indsub.catalog import build_catalog
from indsub.errors import PredicateError, UnknownPropertyError
from indsub.graphs import SmallGraph
from indsub.properties import (
    BUILTIN_PROPERTIES,
    PropertySpec,
    contains_induced,
    contains_subgraph,
    evaluate,
    forbidden_induced_property,
    forbidden_subgraph_property,
    get_property,
    h_free_property,
    invert,
    load_truth_table,
    negate,
    property_support_at,
    truth_table_property,
    verify_flags,
)
from oracles import brute_planar, random_small_graph


def all_graphs(max_n):
    for k in range(1, max_n + 1):
        for entry in build_catalog(k).entries:
            yield entry.graph


# ------------------------------------------------ reference predicates

def ref_connected(g):
    if g.n == 0:
        return True
    seen = {0}
    frontier = [0]
    adj = g.adj_rows()
    while frontier:
        v = frontier.pop()
        for w in range(g.n):
            if adj[v] >> w & 1 and w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == g.n


def ref_bipartite(g):
    color = {}
    adj = g.adj_rows()
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in range(g.n):
                if adj[v] >> w & 1:
                    if w not in color:
                        color[w] = color[v] ^ 1
                        stack.append(w)
                    elif color[w] == color[v]:
                        return False
    return True


def ref_triangle_free(g):
    return not any(g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
                   for a, b, c in itertools.combinations(range(g.n), 3))


def ref_chordal(g):
    """Every cycle of length >= 4 has a chord: check all vertex subsets
    that induce a cycle."""
    for size in range(4, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            ind = g.induced(sub)
            degs = ind.degrees()
            if all(d == 2 for d in degs) and ind.is_connected():
                return False
    return True


def ref_split(g):
    """Some clique/independent-set bipartition of the vertices exists."""
    verts = range(g.n)
    for r in range(g.n + 1):
        for clique in itertools.combinations(verts, r):
            cs = set(clique)
            if not all(g.has_edge(a, b)
                       for a, b in itertools.combinations(clique, 2)):
                continue
            rest = [v for v in verts if v not in cs]
            if not any(g.has_edge(a, b)
                       for a, b in itertools.combinations(rest, 2)):
                return True
    return False


def ref_perfect(g):
    """No induced odd cycle of length >= 5 in the graph or complement."""
    def has_odd_hole(h):
        for size in range(5, h.n + 1, 2):
            for sub in itertools.combinations(range(h.n), size):
                ind = h.induced(sub)
                if all(d == 2 for d in ind.degrees()) and ind.is_connected():
                    return True
        return False
    return not has_odd_hole(g) and not has_odd_hole(g.complement())


REFERENCES = {
    "connected": ref_connected,
    "bipartite": ref_bipartite,
    "triangle-free": ref_triangle_free,
    "chordal": ref_chordal,
    "split": ref_split,
    "perfect": ref_perfect,
    "no-edges": lambda g: g.edge_count == 0,
    "edge-count-even": lambda g: g.edge_count % 2 == 0,
    "true": lambda g: True,
    "false": lambda g: False,
}


@pytest.mark.parametrize("name", sorted(REFERENCES))
def test_builtin_predicates_match_references(name):
    phi = get_property(name)
    ref = REFERENCES[name]
    for g in all_graphs(6):
        assert evaluate(phi, g) == ref(g), g.to_graph6()


def test_planar_matches_minor_oracle():
    phi = get_property("planar")
    for g in all_graphs(6):
        assert evaluate(phi, g) == brute_planar(g), g.to_graph6()


def test_get_property_unknown_name():
    with pytest.raises(UnknownPropertyError) as err:
        get_property("shiny")
    assert "shiny" in str(err.value)
    assert "connected" in str(err.value)   # lists the known names


def test_flags_verify_for_all_builtins():
    for name in sorted(BUILTIN_PROPERTIES):
        report = verify_flags(get_property(name), 5)
        assert report.ok, (name, report.violations)


def test_verify_flags_catches_lies():
    bogus = PropertySpec(name="bogus-monotone",
                         predicate=lambda g: g.edge_count == 1,
                         monotone=True)
    report = verify_flags(bogus, 4)
    assert not report.ok
    assert any(v.flag == "monotone" for v in report.violations)

    bogus = PropertySpec(name="bogus-hereditary",
                         predicate=lambda g: g.n == 2,
                         hereditary=True)
    report = verify_flags(bogus, 4)
    assert any(v.flag == "hereditary" for v in report.violations)

    bogus = PropertySpec(name="bogus-sparse",
                         predicate=lambda g: True,
                         sparse_bound=0)
    report = verify_flags(bogus, 4)
    assert any(v.flag.startswith("sparse") for v in report.violations)

    # connectivity is not a function of the edge count: at k=4, m=3 both
    # the path and the disjoint triangle occur
    bogus = PropertySpec(name="bogus-eco",
                         predicate=lambda g: g.is_connected(),
                         edge_count_only=True)
    report = verify_flags(bogus, 4)
    assert any(v.flag == "edge-count-only" for v in report.violations)


def test_negate_and_invert():
    rng = random.Random(31)
    conn = get_property("connected")
    for _ in range(25):
        g = random_small_graph(rng, rng.randrange(7))
        assert evaluate(negate(conn), g) == (not evaluate(conn, g))
        assert evaluate(invert(conn), g) == evaluate(conn, g.complement())
    assert negate(get_property("edge-count-even")).edge_count_only
    assert invert(get_property("chordal")).hereditary
    assert not negate(conn).monotone


def test_contains_induced_and_subgraph():
    c4 = SmallGraph.cycle(4)
    k4 = SmallGraph.complete(4)
    p3 = SmallGraph.path(3)
    assert contains_subgraph(k4, c4)          # C4 sits inside K4
    assert not contains_induced(k4, c4)       # but never as induced
    assert contains_induced(c4, p3)
    paw = SmallGraph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert contains_induced(paw, SmallGraph.complete(3))
    assert not contains_induced(SmallGraph.cycle(5), SmallGraph.complete(3))
    # C5 has independence number 2, so no induced empty triple
    assert not contains_induced(SmallGraph.cycle(5), SmallGraph.empty(3))


def test_forbidden_induced_property_matches_definition():
    rng = random.Random(32)
    gamma = (SmallGraph.cycle(4), SmallGraph.complete(3))
    phi = forbidden_induced_property(gamma)
    for _ in range(30):
        g = random_small_graph(rng, rng.randrange(7))
        expected = not any(contains_induced(g, h) for h in gamma)
        assert evaluate(phi, g) == expected
    assert phi.hereditary
    assert phi.forbidden_induced == gamma


def test_forbidden_subgraph_property_matches_definition():
    rng = random.Random(33)
    gamma = (SmallGraph.complete(3),)
    phi = forbidden_subgraph_property(gamma)
    tf = get_property("triangle-free")
    for _ in range(30):
        g = random_small_graph(rng, rng.randrange(7))
        assert evaluate(phi, g) == evaluate(tf, g)
    assert phi.monotone and phi.hereditary


def test_h_free_property_name():
    phi = h_free_property(SmallGraph.cycle(5))
    assert evaluate(phi, SmallGraph.cycle(5)) is False
    assert evaluate(phi, SmallGraph.cycle(6)) is True


def test_truth_table_property(tmp_path):
    cat = build_catalog(3)
    bits = "".join("1" if e.graph.edge_count % 2 == 0 else "0"
                   for e in cat.entries)
    phi = truth_table_property({3: bits}, name="table-even")
    eco = get_property("edge-count-even")
    for e in cat.entries:
        assert evaluate(phi, e.graph) == evaluate(eco, e.graph)
    # relabelings look up through the canonical form
    assert evaluate(phi, SmallGraph.from_edges(3, [(0, 2), (2, 1)]))
    # sizes without a table row never satisfy the property
    assert not evaluate(phi, SmallGraph.complete(2))

    path = tmp_path / "table.txt"
    path.write_text(f"k=3\n{bits}\n")
    assert load_truth_table(path) == {3: bits}
    phi2 = truth_table_property(load_truth_table(path))
    assert evaluate(phi2, SmallGraph.empty(3))

    bad = tmp_path / "bad.txt"
    bad.write_text("k=3\n10\n")
    from indsub.errors import FormatError
    with pytest.raises(FormatError):
        truth_table_property(load_truth_table(bad))


def test_predicate_errors_are_wrapped():
    phi = PropertySpec(name="crashy",
                       predicate=lambda g: 1 // 0)
    with pytest.raises(PredicateError) as err:
        evaluate(phi, SmallGraph.complete(3))
    assert "Bw" in str(err.value)


def test_loops_rejected():
    phi = get_property("true")
    loopy = SmallGraph(2, 0, loops=0b01)
    with pytest.raises(ValueError):
        evaluate(phi, loopy)


def test_property_support_at():
    assert property_support_at(get_property("no-edges"), 4)
    assert not property_support_at(get_property("false"), 4)
    assert property_support_at(get_property("connected"), 1)
