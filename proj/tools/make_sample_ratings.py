#!/usr/bin/env python3
"""Regenerates data/sample_ratings.csv from the model similarity matrix.

    vizsim sim --format csv | python3 tools/make_sample_ratings.py > data/sample_ratings.csv

Anchor pairs carry fixed ratings (see data/README.md); every other rating
is synthetic: the model score, lowered by 1.5 when exactly one technique of
the pair belongs to the spatial cluster, shifted per expert and rounded to
the 1-5 scale.
"""
import csv
import math
import sys

SPATIAL = {"CM", "SM", "STC", "NM"}
EXPERT_OFFSETS = [("e1", 0.0), ("e2", -0.6), ("e3", 0.3)]
ANCHORS = {
    ("PC", "NLD"): (1, 1, 4),
    ("SP", "PC"): (4, 4, 5),
    ("SP", "SD"): (4, 4, 3),
    ("PC", "TW"): (5, 5, 4),
    ("BT", "SP"): (1, 2, 1),
}


def main():
    rows = list(csv.reader(sys.stdin))
    ids = rows[0][1:]
    score = {(r[0], ids[j]): float(v) for r in rows[1:] for j, v in enumerate(r[1:])}
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["technique_a", "technique_b", "expert_id", "rating"])
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            fixed = ANCHORS.get((a, b)) or ANCHORS.get((b, a))
            base = score[(a, b)]
            if (a in SPATIAL) != (b in SPATIAL):
                base -= 1.5
            for k, (expert, offset) in enumerate(EXPERT_OFFSETS):
                value = fixed[k] if fixed else min(5, max(1, math.floor(base + offset + 0.5)))
                out.writerow([a, b, expert, value])


if __name__ == "__main__":
    main()
