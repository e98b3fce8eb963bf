#!/usr/bin/env python3
"""Precompute and cache the small-graph catalogs.

The catalog of isomorphism classes on k vertices backs every f-vector,
coefficient vector, and truth-table lookup.  Building k=8 from scratch
takes a few minutes; this script warms the on-disk cache once so later
runs (and the test suite, when pointed at the same cache directory) start
instantly.

Usage:
    python3 scripts/build_catalogs.py [--kmax K] [--cache-dir DIR] [--workers N]
"""

import argparse
import sys
import time

from indsub.catalog import MAX_CATALOG_K, build_catalog


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kmax", type=int, default=MAX_CATALOG_K,
                        help=f"build catalogs for 1..K (max {MAX_CATALOG_K})")
    parser.add_argument("--cache-dir", metavar="DIR", default=None,
                        help="cache directory (default: the package's "
                             "standard location, or $INDSUB_CACHE_DIR)")
    parser.add_argument("--workers", type=int, default=None,
                        help="parallel canonicalization workers")
    args = parser.parse_args(argv)

    if not 1 <= args.kmax <= MAX_CATALOG_K:
        parser.error(f"--kmax must be between 1 and {MAX_CATALOG_K}")

    for k in range(1, args.kmax + 1):
        start = time.monotonic()
        cat = build_catalog(k, cache_dir=args.cache_dir,
                            workers=args.workers)
        elapsed = time.monotonic() - start
        print(f"k={k}: {cat.class_count} classes, "
              f"{cat.labeled_total} labeled graphs [{elapsed:.2f}s]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
