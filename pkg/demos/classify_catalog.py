"""Classify every catalog algebra and print one markdown table per algebra.

Same as `polarfol classify <name> --format md` looped over the catalog.
"""

import sys

from polarfol.catalog import CATALOG, build
from polarfol.foliations import enumerate_candidates
from polarfol.geometry import verify
from polarfol.roots import decompose

bad = 0
for name in CATALOG:
    g, a = build(name)
    rs = decompose(g, a)
    reports = [verify(g, rs, spec) for spec in enumerate_candidates(rs)]
    cases = "".join(sorted({r.spec.case for r in reports}))
    ok = all(r.certified for r in reports)
    bad += not ok
    print(f"{name:>14}  {rs.dynkin_label():>4}  {len(reports):2d} candidates  cases {cases:<5}  {'ok' if ok else 'FAILED'}")
sys.exit(1 if bad else 0)
