"""Writes covers_max48.json from the closed-form families of covering actions.

Independent of the Rust enumerator: rows come from explicit formulas, not
from a subgroup search.
"""
import json
from pathlib import Path

MAX_INDEX = 48
FAMILY_ORDER = {"Cyclic": 0, "CyclicTimesZ2": 1, "Dihedral": 2}
BASE_ORDER = {b: i for i, b in enumerate(["RP2n", "S1xS2n", "S1twistS2n", "S1xRP2n", "RPsharpRP"])}


def cyc(k):
    return ("Cyclic", k)


def cyc_z2(k):
    # Z/k + Z/2 is cyclic for odd k.
    return ("Cyclic", 2 * k) if k % 2 else ("CyclicTimesZ2", k)


def dihedral(k):
    if k == 1:
        return ("Cyclic", 2)
    if k == 2:
        return ("CyclicTimesZ2", 2)
    return ("Dihedral", k)


def rows_for(cover):
    rows = set()

    def add(group, base, index):
        if 2 <= index <= MAX_INDEX:
            rows.add((index, group, base))

    for m in range(1, MAX_INDEX + 1):
        if cover == "S1xS2n":
            add(cyc(m), "S1xS2n", m)
            if m % 2 == 0:
                add(cyc(m), "S1twistS2n", m)
            add(cyc_z2(m), "S1xRP2n", 2 * m)
            add(dihedral(m), "RPsharpRP", 2 * m)
        elif cover == "S1twistS2n":
            if m % 2 == 1:
                add(cyc(m), "S1twistS2n", m)
            add(cyc(2 * m), "S1xRP2n", 2 * m)
        elif cover == "S1xRP2n":
            add(cyc(m), "S1xRP2n", m)
        elif cover == "RPsharpRP":
            add(cyc(2), "RPsharpRP", 2)
    ordered = sorted(rows, key=lambda r: (r[0], FAMILY_ORDER[r[1][0]], r[1][1], BASE_ORDER[r[2]]))
    return [{"group": {"family": g[0], "k": g[1]}, "base": b, "index": i} for i, g, b in ordered]


def main():
    covers = {c: rows_for(c) for c in ["S1xS2n", "S1twistS2n", "S1xRP2n", "RPsharpRP"]}
    out = {"max_index": MAX_INDEX, "covers": covers}
    path = Path(__file__).with_name("covers_max48.json")
    path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
