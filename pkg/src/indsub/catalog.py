"""Catalogs of isomorphism classes of k-vertex graphs, k <= 8.

For k <= 6 the classes come from canonical-form filtering of all 2^C(k,2)
edge subsets; for k in {7, 8} from one-vertex extensions of the previous
catalog with canonical-form deduplication.  Each entry carries the
automorphism count and the number of labeled copies k!/#Aut; the copies
must sum to 2^C(k,2), which the builder asserts.

Catalogs are cached on disk, one "graph6 aut" line per class under a
versioned header.  The cache directory comes from INDSUB_CACHE_DIR or
defaults to ~/.cache/indsub.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from pathlib import Path

from .canon import _canonical_data, canon_key
from .errors import FormatError, InternalConsistencyError
from .graphs import SmallGraph, pair_count

MAX_CATALOG_K = 8
CACHE_ENV_VAR = "INDSUB_CACHE_DIR"
_CACHE_HEADER = "# indsub catalog v1"


@dataclass(frozen=True)
class CatalogEntry:
    graph: SmallGraph      # canonical representative
    aut: int
    copies: int            # k! / aut = labeled copies inside K_k


@dataclass(frozen=True)
class GraphCatalog:
    k: int
    entries: tuple[CatalogEntry, ...]

    @property
    def class_count(self) -> int:
        return len(self.entries)

    @property
    def labeled_total(self) -> int:
        return sum(e.copies for e in self.entries)

    def index_of(self, g: SmallGraph) -> int:
        return self._index[canon_key(g)]

    @property
    def _index(self) -> dict:
        idx = getattr(self, "_index_cache", None)
        if idx is None:
            idx = {(e.graph.n, e.graph.edges, e.graph.loops): i
                   for i, e in enumerate(self.entries)}
            object.__setattr__(self, "_index_cache", idx)
        return idx

    def by_edge_count(self, m: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.graph.edge_count == m]


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "indsub"


def _sweep_classes(k: int, lo: int, hi: int) -> dict[int, int]:
    """Canonical edge-bitset -> aut over the labeled graphs lo <= edges < hi."""
    found: dict[int, int] = {}
    for mask in range(lo, hi):
        cf, aut = _canonical_data(SmallGraph(k, mask))
        if cf.edges not in found:
            found[cf.edges] = aut
    return found


def _sweep_chunk(args):
    return _sweep_classes(*args)


def _extend_classes(k: int, parent_edges: list[int]) -> dict[int, int]:
    """Extend (k-1)-vertex representatives by one vertex in all ways."""
    found: dict[int, int] = {}
    for pedges in parent_edges:
        parent = SmallGraph(k - 1, pedges)
        epairs = parent.edge_pairs()
        for nbmask in range(1 << (k - 1)):
            pairs = list(epairs)
            for i in range(k - 1):
                if nbmask >> i & 1:
                    pairs.append((i, k - 1))
            cf, aut = _canonical_data(SmallGraph.from_edges(k, pairs))
            if cf.edges not in found:
                found[cf.edges] = aut
    return found


def _extend_chunk(args):
    return _extend_classes(*args)


def _build_classes(k: int, workers: int) -> dict[int, int]:
    if k <= 6:
        total = 1 << pair_count(k)
        if workers > 1 and total >= 1 << 12:
            jobs = _parallel_map(_sweep_chunk, [
                (k, lo, min(lo + (total + workers - 1) // workers, total))
                for lo in range(0, total, (total + workers - 1) // workers)
            ], workers)
        else:
            jobs = [_sweep_classes(k, 0, total)]
    else:
        parents = [e.graph.edges for e in build_catalog(k - 1).entries]
        if workers > 1:
            step = (len(parents) + workers - 1) // workers
            jobs = _parallel_map(_extend_chunk, [
                (k, parents[lo:lo + step]) for lo in range(0, len(parents), step)
            ], workers)
        else:
            jobs = [_extend_classes(k, parents)]
    merged: dict[int, int] = {}
    for job in jobs:
        for edges, aut in job.items():
            merged.setdefault(edges, aut)
    return merged


def _parallel_map(fn, argslist, workers):
    import multiprocessing as mp

    ctx = mp.get_context("fork")
    with ctx.Pool(min(workers, len(argslist))) as pool:
        return pool.map(fn, argslist)


@lru_cache(maxsize=None)
def _catalog_cached(k: int, cache_dir_str: str | None, use_cache: bool,
                    workers: int) -> GraphCatalog:
    cache_dir = Path(cache_dir_str) if cache_dir_str else default_cache_dir()
    path = cache_dir / f"k{k}.catalog"
    if use_cache and path.exists():
        try:
            return _read_cache(k, path)
        except FormatError:
            pass  # stale or corrupt: rebuild below
    classes = _build_classes(k, workers)
    kfact = factorial(k)
    entries = tuple(
        CatalogEntry(SmallGraph(k, edges), aut, kfact // aut)
        for edges, aut in sorted(classes.items(),
                                 key=lambda it: (it[0].bit_count(), it[0]))
    )
    cat = GraphCatalog(k, entries)
    if cat.labeled_total != 1 << pair_count(k):
        raise InternalConsistencyError(
            f"catalog k={k}: labeled copies sum to {cat.labeled_total}, "
            f"expected 2^{pair_count(k)}")
    if use_cache:
        try:
            _write_cache(cat, path)
        except OSError:
            pass
    return cat


def build_catalog(k: int, *, cache_dir=None, use_cache: bool = True,
                  workers: int = 1) -> GraphCatalog:
    if not 1 <= k <= MAX_CATALOG_K:
        raise ValueError(f"catalog supports 1 <= k <= {MAX_CATALOG_K}")
    return _catalog_cached(k, str(cache_dir) if cache_dir else None,
                           use_cache, workers)


def _write_cache(cat: GraphCatalog, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        fh.write(f"{_CACHE_HEADER} k={cat.k} classes={cat.class_count}\n")
        for e in cat.entries:
            fh.write(f"{e.graph.to_graph6()} {e.aut}\n")
    tmp.replace(path)


def _read_cache(k: int, path: Path) -> GraphCatalog:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(_CACHE_HEADER):
        raise FormatError(f"{path}: bad header")
    head = dict(tok.split("=") for tok in lines[0].split() if "=" in tok)
    if int(head.get("k", -1)) != k:
        raise FormatError(f"{path}: header k mismatch")
    kfact = factorial(k)
    entries = []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        try:
            g6, aut_s = ln.split()
            g = SmallGraph.from_graph6(g6)
            aut = int(aut_s)
        except (ValueError, FormatError) as exc:
            raise FormatError(f"{path}: bad line {ln!r}") from exc
        if g.n != k:
            raise FormatError(f"{path}: entry on {g.n} vertices")
        entries.append(CatalogEntry(g, aut, kfact // aut))
    if len(entries) != int(head.get("classes", -1)):
        raise FormatError(f"{path}: class count mismatch")
    cat = GraphCatalog(k, tuple(entries))
    if cat.labeled_total != 1 << pair_count(k):
        raise FormatError(f"{path}: labeled total mismatch")
    return cat


def extension_counts_by_class(h: SmallGraph, ell: int) -> dict[tuple, int]:
    """How often each isomorphism class arises by adding edges to h until
    it has ell edges, keyed by canonical key.  Counts labeled supersets of
    the given labeled graph, so the values sum to C(d - #E(h), ell - #E(h))."""
    if h.loops:
        raise ValueError("loop-marked graph in extension count")
    d = pair_count(h.n)
    m = h.edge_count
    if ell < m or ell > d:
        return {}
    free = [b for b in range(d) if not h.edges >> b & 1]
    if comb(len(free), ell - m) > 10 ** 6:
        raise ValueError("extension enumeration too large")
    out: dict[tuple, int] = {}
    for extra in combinations(free, ell - m):
        mask = h.edges
        for b in extra:
            mask |= 1 << b
        key = canon_key(SmallGraph(h.n, mask))
        out[key] = out.get(key, 0) + 1
    return out


def extension_count(h: SmallGraph, ell: int) -> int:
    """Total count of ell-edge supersets of h inside K_n, summed over the
    classes they land in; equals C(d - #E(h), ell - #E(h))."""
    return sum(extension_counts_by_class(h, ell).values())
