#!/usr/bin/env python3
"""Run the hardness diagnosis across the built-in property zoo.

Prints one block per property: the per-size spectrum summary (d, Hamming
weight, beta, densest-witness statistics) followed by the classification
lines.  Useful as a quick overview of which structural route, if any,
applies to each property.

Usage:
    python3 scripts/diagnose_zoo.py [--kmax K] [--properties a,b,c] [--json]
"""

import argparse
import json
import sys
from fractions import Fraction

from indsub.hardness import MAX_DIAGNOSE_K, diagnose
from indsub.properties import BUILTIN_PROPERTIES, get_property


def encode(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    raise TypeError(f"cannot encode {type(value)!r}")


def text_block(report) -> str:
    lines = [f"== {report.property_name} =="]
    flags = ", ".join(report.flags_declared) or "none"
    lines.append(f"   flags: {flags} (verified to "
                 f"{report.flags_verified_to} vertices, "
                 f"{len(report.flag_violations)} violations)")
    for rec in report.records:
        line = (f"   k={rec.k}: d={rec.d} hw={rec.hamming_weight} "
                f"beta={rec.beta} poised={'yes' if rec.poised else 'no'}")
        if rec.witness is not None:
            line += (f" witness={rec.witness} ({rec.witness_edges} edges, "
                     f"tw {rec.witness_treewidth})")
        lines.append(line)
    lines.append(f"   support prefix: {list(report.support_prefix)}")
    for text in report.classification:
        lines.append(f"   * {text}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kmax", type=int, default=5,
                        help=f"largest size to examine (1..{MAX_DIAGNOSE_K})")
    parser.add_argument("--properties", metavar="NAMES",
                        help="comma-separated subset of the zoo "
                             "(default: every built-in)")
    parser.add_argument("--json", action="store_true",
                        help="emit one JSON object instead of text")
    args = parser.parse_args(argv)

    names = (args.properties.split(",") if args.properties
             else sorted(BUILTIN_PROPERTIES))
    reports = []
    for name in names:
        reports.append(diagnose(get_property(name.strip()), args.kmax))

    if args.json:
        payload = []
        for rep in reports:
            payload.append({
                "property": rep.property_name,
                "k_max": encode(rep.k_max),
                "flags": list(rep.flags_declared),
                "flag_violations": encode(
                    [v.flag for v in rep.flag_violations]),
                "records": [
                    {
                        "k": encode(rec.k),
                        "d": encode(rec.d),
                        "hw": encode(rec.hamming_weight),
                        "beta": encode(rec.beta),
                        "poised": rec.poised,
                        "witness": rec.witness,
                        "witness_edges": encode(rec.witness_edges),
                        "witness_treewidth": encode(rec.witness_treewidth),
                    }
                    for rec in rep.records
                ],
                "support_prefix": encode(list(rep.support_prefix)),
                "classification": list(rep.classification),
            })
        json.dump(payload, sys.stdout, indent=2)
        print()
    else:
        print("\n\n".join(text_block(rep) for rep in reports))
    return 0


if __name__ == "__main__":
    sys.exit(main())
