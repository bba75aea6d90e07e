"""Compare the limit construction with brute-force search over diagram families.

For every fixture lattice, build the family of small diagrams (discrete shapes,
arrows, parallel pairs and the height-two loop shape), then construct the limit
from products and equalizers and search for it directly. One CSV row per
diagram, plus a per-fixture summary on stdout.

    python3 scripts/run_limits_sweep.py --fixtures L4 chain3 --out sweep.csv
"""
import argparse
import csv
import sys
import time
from collections import Counter
from dataclasses import dataclass, field

from gencat import fixtures as fx
from gencat.invertibles import isomorphic
from gencat.limits import construct_limit, find_limits

FIXTURES = {
    "L4": fx.L4,
    "L4dup": fx.L4_dup,
    "P2": fx.P2,
    "V3": fx.V3,
    "chain3": lambda: fx.chain(3),
}


@dataclass
class SweepConfig:
    fixtures: list = field(default_factory=lambda: ["L4", "chain3", "V3"])
    max_discrete: int = 3
    out: str = "-"


def classify(d, r, found) -> str:
    if not r.ok and not found:
        return "no-limit"
    if r.ok and found and all(isomorphic(d.target, r.cone.vertex, c.vertex) for c in found):
        return "agree"
    return "disagree"


def sweep(cfg: SweepConfig):
    rows = []
    for name in cfg.fixtures:
        C = FIXTURES[name]()
        for k, d in enumerate(fx.diagram_family(C, cfg.max_discrete)):
            t0 = time.perf_counter()
            r = construct_limit(d)
            t1 = time.perf_counter()
            found = find_limits(d)
            t2 = time.perf_counter()
            rows.append({
                "fixture": name,
                "diagram": k,
                "shape": d.kind,
                "keys": len(d.keys()),
                "constructed": str(r.cone.vertex) if r.ok else "",
                "found": " ".join(str(c.vertex) for c in found),
                "outcome": classify(d, r, found),
                "construct_ms": round(1000 * (t1 - t0), 3),
                "search_ms": round(1000 * (t2 - t1), 3),
            })
    return rows


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--fixtures", nargs="+", default=SweepConfig().fixtures,
                   choices=sorted(FIXTURES))
    p.add_argument("--max-discrete", type=int, default=SweepConfig.max_discrete)
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    a = p.parse_args(argv)
    cfg = SweepConfig(a.fixtures, a.max_discrete, a.out)

    rows = sweep(cfg)
    if rows:
        fh = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
        if fh is not sys.stdout:
            fh.close()

    for name in cfg.fixtures:
        mine = [r for r in rows if r["fixture"] == name]
        counts = Counter(r["outcome"] for r in mine)
        total = sum(r["construct_ms"] + r["search_ms"] for r in mine)
        print(f"# {name}: {len(mine)} diagrams, {dict(counts)}, {total:.0f} ms",
              file=sys.stderr)
    return 1 if any(r["outcome"] == "disagree" for r in rows) else 0


if __name__ == "__main__":
    sys.exit(main())
