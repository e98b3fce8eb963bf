"""Homomorphism-basis coefficients for induced-subgraph counting.

For a property phi and size k there is a unique finitely supported vector
a with  #IndSub(phi, k, G) = sum_H a(H) * #Hom(H, G)  for every simple
host G.  It is computed here in three exact steps:

  1. a signed subset transform turns the predicate values phi(A), taken
     over all labeled k-vertex graphs A, into s(A) = sum_{L <= A}
     (-1)^(|A|-|L|) phi(L), an isomorphism invariant;
  2. each k-vertex class C receives the coefficient a(C) = s(C)/#Aut(C);
  3. vertex-identification is pushed through every set partition rho of
     the k vertices with Moebius weight prod_B -(-1)^|B| (|B|-1)!, which
     spills weight onto smaller quotient patterns; quotients acquiring a
     loop are dropped because they admit no map into a simple host.

All arithmetic is over Fraction; every denominator divides k!.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .canon import canon_key, canonical_form
from .catalog import build_catalog, extension_counts_by_class
from .errors import InternalConsistencyError
from .graphs import SmallGraph, pair_count
from .partitions import partitions_with_moebius, quotient
from .properties import PropertySpec, evaluate

MAX_HOM_VECTOR_K = 7


@dataclass(frozen=True)
class HomVector:
    property_name: str
    k: int
    entries: tuple[tuple[SmallGraph, Fraction], ...]

    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {canon_key(g): c for g, c in self.entries}
            object.__setattr__(self, "_idx", idx)
        return idx

    def coefficient(self, g: SmallGraph) -> Fraction:
        return self._index().get(canon_key(g), Fraction(0))

    @property
    def support_size(self) -> int:
        return len(self.entries)

    def k_vertex_entries(self) -> tuple[tuple[SmallGraph, Fraction], ...]:
        return tuple((g, c) for g, c in self.entries if g.n == self.k)

    def max_treewidth_entry(self):
        from .homcount import exact_treewidth

        best = None
        for g, _ in self.entries:
            tw = exact_treewidth(g)
            if best is None or tw > best[1]:
                best = (g, tw)
        return best


def _signed_subset_transform(vals: list[int], d: int) -> None:
    """In place: vals[A] <- sum over subsets L of A of (-1)^(|A|-|L|) vals[L]."""
    for b in range(d):
        bit = 1 << b
        step = bit << 1
        for base in range(0, len(vals), step):
            for a in range(base + bit, base + step):
                vals[a] -= vals[a - bit]


def hom_vector(phi: PropertySpec, k: int, *, cache_dir=None) -> HomVector:
    if not 1 <= k <= MAX_HOM_VECTOR_K:
        raise ValueError(f"hom_vector supports 1 <= k <= {MAX_HOM_VECTOR_K}")
    return _hom_vector_cached(phi, k, None if cache_dir is None else str(cache_dir))


@lru_cache(maxsize=64)
def _hom_vector_cached(phi: PropertySpec, k: int, cache_dir: str | None) -> HomVector:
    d = pair_count(k)
    vals = [1 if evaluate(phi, SmallGraph(k, mask)) else 0
            for mask in range(1 << d)]
    _signed_subset_transform(vals, d)
    kfact = factorial(k)
    acc: dict[tuple, Fraction] = {}
    reps: dict[tuple, SmallGraph] = {}
    for entry in build_catalog(k, cache_dir=cache_dir).entries:
        s = vals[entry.graph.edges]
        if s == 0:
            continue
        a = Fraction(s, entry.aut)
        for rho, mu in partitions_with_moebius(k):
            q = quotient(entry.graph, rho)
            if q.loops:
                continue
            form = canonical_form(q)
            key = form.key
            if key not in reps:
                reps[key] = form.graph()
            acc[key] = acc.get(key, Fraction(0)) + a * mu
    entries = []
    for key, coef in acc.items():
        if coef == 0:
            continue
        if kfact % coef.denominator:
            raise InternalConsistencyError(
                f"coefficient denominator {coef.denominator} does not divide {k}!")
        entries.append((reps[key], coef))
    entries.sort(key=lambda e: (e[0].edge_count, e[0].to_graph6()))
    return HomVector(phi.name, k, tuple(entries))


def k_vertex_coefficient(phi: PropertySpec, g: SmallGraph, *,
                         cache_dir=None) -> Fraction:
    """Coefficient of a k-vertex pattern, computed without the subset
    transform: a(K) = sum over satisfying classes H of
    (-1)^(e(K)-e(H)) * ext_H(K) / #Aut(H), where ext_H(K) counts the edge
    supersets of a fixed copy of H that are isomorphic to K."""
    if g.loops:
        raise ValueError("patterns are loop-free")
    k = g.n
    target = canon_key(g)
    m_k = g.edge_count
    total = Fraction(0)
    for entry in build_catalog(k, cache_dir=cache_dir).entries:
        h = entry.graph
        if h.edge_count > m_k or not evaluate(phi, h):
            continue
        ext = extension_counts_by_class(h, m_k).get(target, 0)
        if ext:
            sign = -1 if (m_k - h.edge_count) % 2 else 1
            total += Fraction(sign * ext, entry.aut)
    return total


def h_tilde_vector(hv: HomVector) -> tuple[Fraction, ...]:
    """Edge-count marginals of the k-vertex coefficients; k! times this
    vector equals the h-vector of the property's size-k spectrum."""
    d = pair_count(hv.k)
    out = [Fraction(0)] * (d + 1)
    for g, c in hv.k_vertex_entries():
        out[g.edge_count] += c
    return tuple(out)


def coefficient_sums(hv: HomVector) -> dict[str, Fraction]:
    """Aggregate identities used in reports: the all-pattern sum, the
    k-vertex sum, and the alternating k-vertex sum."""
    total = sum((c for _, c in hv.entries), Fraction(0))
    kv = hv.k_vertex_entries()
    ksum = sum((c for _, c in kv), Fraction(0))
    kalt = sum(((-1) ** g.edge_count * c for g, c in kv), Fraction(0))
    return {"all": total, "k_vertex": ksum, "k_vertex_alternating": kalt}


def witness_dense_graph(hv: HomVector) -> SmallGraph | None:
    """Densest k-vertex pattern carrying a nonzero coefficient, or None
    when the property holds for no k-vertex graph."""
    best = None
    for g, _ in hv.k_vertex_entries():
        if best is None or g.edge_count > best.edge_count:
            best = g
    return best


def expected_support_bound(k: int) -> int:
    """Number of isomorphism classes on at most k vertices; the support of
    any size-k vector is contained in that set."""
    return sum(build_catalog(j).class_count for j in range(1, k + 1))
