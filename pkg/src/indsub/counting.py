"""Induced-subgraph counting: direct enumeration and basis evaluation.

count_brute enumerates the C(n,k) vertex subsets and applies the
predicate; count_basis evaluates the homomorphism-basis vector against
exact per-pattern homomorphism counts.  The two must agree on every
input, and count_basis insists on an integral, nonnegative total before
returning.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .canon import canon_key
from .errors import BudgetExceededError, InternalConsistencyError
from .graphs import HostGraph
from .hombasis import HomVector, hom_vector
from .homcount import count_hom
from .properties import PropertySpec, evaluate, negate

DEFAULT_SUBSET_BUDGET = 10 ** 8


def count_brute(phi: PropertySpec, k: int, host: HostGraph, *,
                budget: int = DEFAULT_SUBSET_BUDGET) -> int:
    """#IndSub(phi, k, host) by enumerating every k-subset of the host."""
    if k < 0:
        raise ValueError("k must be >= 0")
    n = host.n
    if k > n:
        return 0
    work = comb(n, k)
    if work > budget:
        raise BudgetExceededError(
            f"C({n},{k}) = {work} subsets exceeds budget {budget}")
    total = 0
    for subset in combinations(range(n), k):
        if evaluate(phi, host.induced_small(subset)):
            total += 1
    return total


def count_basis(phi: PropertySpec, k: int, host: HostGraph, *,
                hv: HomVector | None = None,
                hom_cache: dict | None = None,
                cache_dir=None) -> int:
    """#IndSub(phi, k, host) as sum_H a(H) * #Hom(H, host).

    hom_cache, when given, must be dedicated to this host; it maps the
    canonical key of a pattern to its homomorphism count and lets repeated
    calls against one host share the expensive part.
    """
    if hv is None:
        hv = hom_vector(phi, k, cache_dir=cache_dir)
    elif hv.k != k:
        raise ValueError(f"vector is for k={hv.k}, requested k={k}")
    total = Fraction(0)
    for g, coef in hv.entries:
        if hom_cache is None:
            homs = count_hom(g, host)
        else:
            key = canon_key(g)
            homs = hom_cache.get(key)
            if homs is None:
                homs = count_hom(g, host)
                hom_cache[key] = homs
        total += coef * homs
    if total.denominator != 1 or total < 0:
        raise InternalConsistencyError(
            f"basis evaluation produced {total}, not a count")
    return int(total)


def negation_identity(phi: PropertySpec, k: int, host: HostGraph, *,
                      budget: int = DEFAULT_SUBSET_BUDGET) -> tuple[int, int, int]:
    """Returns (#IndSub(phi), #IndSub(not phi), C(n,k)); the first two must
    sum to the third."""
    a = count_brute(phi, k, host, budget=budget)
    b = count_brute(negate(phi), k, host, budget=budget)
    return a, b, comb(host.n, k)


def inversion_identity(phi: PropertySpec, k: int, host: HostGraph, *,
                       budget: int = DEFAULT_SUBSET_BUDGET) -> tuple[int, int]:
    """Returns (#IndSub(phi o complement, k, host), #IndSub(phi, k, host
    complement)); the two must be equal."""
    from .properties import invert

    a = count_brute(invert(phi), k, host, budget=budget)
    b = count_brute(phi, k, host.complement(), budget=budget)
    return a, b
