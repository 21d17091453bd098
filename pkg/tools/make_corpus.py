"""Regenerate src/twotone/data/corpus.tsv from generators and table PD codes."""
from pathlib import Path

from twotone.diagram import braid_closure, format_fixture, generate_pretzel, generate_torus_two_strand, parse_link_text

# P(6,6,6) at n=8 with one rotation-toned component using b3 and b5 only
P666_COLORING = "n=8 tones=TRR exps=5,3,5,3,5,3,6,0,6,0,2,4,7,5,3,1,7,1"

pd = parse_link_text
FIXTURES = [
    ("unknot", pd("O[1]"), generate_pretzel([1]), None),
    ("unknot-kink", pd("X[1,1,2,2]"), None, None),
    ("hopf", pd("X[4,1,3,2] X[2,3,1,4]"), generate_torus_two_strand(2), None),
    ("trefoil", pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"), generate_pretzel([1, 1, 1]), None),
    ("figure-8", pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"), generate_pretzel([2, 1, 1]), None),
    ("T(2,4)", generate_torus_two_strand(4), pd("X[6,1,7,2] X[8,3,5,4] X[2,5,3,6] X[4,7,1,8]"), None),
    ("T(2,5)", generate_torus_two_strand(5), generate_pretzel([1] * 5), None),
    ("T(2,6)", generate_torus_two_strand(6), generate_pretzel([3, 3]), None),
    ("T(2,8)", generate_torus_two_strand(8), generate_pretzel([4, 4]), None),
    ("whitehead", pd("X[6,1,7,2] X[10,7,5,8] X[4,5,1,6] X[2,10,3,9] X[8,4,9,3]"), generate_pretzel([1, 2, 2]), None),
    ("borromean", braid_closure([1, -2] * 3, 3), braid_closure([-1, 2] * 3, 3), None),
    ("T(3,3)", braid_closure([1, 2] * 3, 3), None, None),
    ("P(2,2,2)", generate_pretzel([2, 2, 2]), None, None),
    ("P(3,2,3,2)", generate_pretzel([3, 2, 3, 2]), generate_pretzel([2, 3, 2, 3]), None),
    ("P(6,6,6)", generate_pretzel([6, 6, 6]), None, P666_COLORING),
    ("split-pair", pd("O[1] O[2]"), pd("X[1,3,2,4] X[2,3,1,4]"), None),
    ("trefoil+circle", pd("O[7] X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"), None, None),
    ("hopf+circle", pd("O[5] X[4,1,3,2] X[2,3,1,4]"), None, None),
]


def main():
    lines = ["# name\tpd\talternative pd (- if none)\tcoloring (optional)"]
    for name, d, alt, col in FIXTURES:
        lines.append(format_fixture(name, d, alt, col))
    out = Path(__file__).resolve().parents[1] / "src" / "twotone" / "data" / "corpus.tsv"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(FIXTURES)} fixtures to {out}")


if __name__ == "__main__":
    main()
