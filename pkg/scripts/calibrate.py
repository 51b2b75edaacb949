"""Recompute the frozen conventions and write data/calibration.json.

Run from the repository root: python3 scripts/calibrate.py
"""
import json
import pathlib

from vkparity.cli import corpus_load
from vkparity.gauss import emit_gauss_code
from vkparity.moves import _CORNER_EPS
from vkparity.parity import match_based_matrix

T_BLOCK = [[0, 1, -1, -1, 1], [-1, 0, -1, 1, 1], [1, 1, 0, -1, -1],
           [1, -1, 1, 0, -1], [-1, -1, 1, 1, 0]]

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "vkparity" / "data" / "calibration.json"


def main():
    corpus = corpus_load()
    d = corpus["5.2012"]
    hits = match_based_matrix(d, T_BLOCK)
    perm, sign = hits[0]
    data = {
        "half_pairing_5.2012": {
            "code": emit_gauss_code(d),
            "table": "R[v][w] = D^r_v . D^r_w",
            "block": T_BLOCK,
            "permutation": [d.labels[i] for i in perm],
            "sign": sign,
            "all_matches": [[[d.labels[i] for i in p], s] for p, s in hits],
        },
        "halves": {
            "right_half": "from the tail endpoint to the head endpoint",
            "chord_orientation": "head to tail",
            "chord_coefficient": {"right": 1, "left": -1},
            "tail": "over strand if sign +, under strand if sign -",
        },
        "rotation": "(A in, B in, A out, B out) at every chord, A the tail strand",
        "corner_epsilon": {f"{'tail' if k[0] else 'head'}-{k[1]}": v
                           for k, v in sorted(_CORNER_EPS.items())},
        "self_r2_potential": {"order": "interleaved", "tail1": "b", "over": "a"},
        "colouring": {
            "known": "arc out of the tail and arc into the head",
            "positive": "(x, y) = (tail out, head in); tail in = x o y, head out = y * x",
            "negative": "(x, y) = (head in, tail out); head out = x o y, tail in = y * x",
        },
        "remainder_transport": {"R1+": "-pi(v') k", "R1-": "+pi(v) k", "R2+": "-pi(v'1)",
                                "R2-": "+pi(v1)", "R3": "-lambda k"},
    }
    OUT.write_text(json.dumps(data, indent=2) + "\n")
    print(f"wrote {OUT} ({len(hits)} matches, first {perm} sign {sign})")


if __name__ == "__main__":
    main()
