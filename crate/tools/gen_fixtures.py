#!/usr/bin/env python3
"""Write OEIS-style b-files for A000073, A001644 and A073145 into fixtures/.

Each entry is generated from its OEIS definition (offset and initial terms
as listed on the entry), independently of the Rust code.
"""
import pathlib
import sys

ENTRIES = {
    # id: (name, initial terms from a(0), coefficients of a(n-1), a(n-2), a(n-3))
    "A000073": ("Tribonacci numbers", [0, 0, 1], (1, 1, 1)),
    "A001644": ("a(n) = a(n-1) + a(n-2) + a(n-3), a(0)=3, a(1)=1, a(2)=3", [3, 1, 3], (1, 1, 1)),
    "A073145": ("a(n) = -a(n-1) - a(n-2) + a(n-3), a(0)=3, a(1)=-1, a(2)=-1", [3, -1, -1], (-1, -1, 1)),
}


def terms(seeds, coeffs, count):
    out = list(seeds)
    while len(out) < count:
        out.append(coeffs[0] * out[-1] + coeffs[1] * out[-2] + coeffs[2] * out[-3])
    return out[:count]


def main(rows=501):
    root = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
    root.mkdir(exist_ok=True)
    for oeis_id, (name, seeds, coeffs) in ENTRIES.items():
        path = root / f"b{oeis_id[1:]}.txt"
        with path.open("w") as f:
            f.write(f"# {oeis_id}: {name}\n")
            f.write(f"# b-file for n = 0..{rows - 1}\n")
            for n, v in enumerate(terms(seeds, coeffs, rows)):
                f.write(f"{n} {v}\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 501)
