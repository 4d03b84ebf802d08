"""Regenerate src/chinburg/data/fixtures.json from the literal rows below.

Rows are written with coefficients in descending order (as they are usually
printed); the stored wire format is ascending.
"""

import json
from pathlib import Path


def asc(desc: str) -> str:
    return ",".join(reversed(desc.split(",")))


Q, L = "quadratic", "linear"
ROWS = [
    # label, kind, first, second (descending), conductors, ratios, group, proven
    ("strong-43", Q, "1,1,0,0,0,0,0,1,1", "2,2,-39,-16,110,-16,-39,2,2", [43], {43: "2/7"}, "strong", False),
    ("strong-52", Q, "1,-2,3,-3,3,-3,3,-2,1", "2,-4,-10,6,14,6,-10,-4,2", [52], {52: "2/21"}, "strong", False),
    ("strong-56", Q, "1,-1,0,0,1,0,0,-1,1", "2,-2,-15,4,24,4,-15,-2,2", [56], {56: "1/15"}, "strong", False),
    ("strong-68", Q, "1,-1,1,-1,1,-1,1,-1,1", "2,-2,-17,6,24,6,-17,-2,2", [68], {68: "1/18"}, "strong", False),
    ("strong-111", Q, "1,-1,1,1,-1,1,1,-1,1", "1,8,-11,-8,26,-8,-11,8,1", [111], {111: "1/54"}, "strong", False),
    ("strong-132", Q, "1,0,0,1,0,1,0,0,1", "2,0,-32,-2,72,-2,-32,0,2", [132], {132: "1/30"}, "strong", False),
    ("strong-228", Q, "1,2,1,-1,-2,-1,1,2,1", "2,4,-46,-38,164,-38,-46,4,2", [228], {228: "1/54"}, "strong", False),
    ("strong-696", Q, "1,0,2,0,2,0,2,0,2,0,2,0,1", "1,-54,245,54,-967,0,1466,0,-967,54,245,-54,1", [696], {696: "1/252"}, "strong", False),
    ("known-3", L, "1", "1,1", [3], {3: "1"}, "known", True),
    ("known-4", L, "-1,1", "1,1", [4], {4: "1"}, "known", True),
    ("known-7", Q, "1,1,1,1,1,1,1", "2,2,-5,-12,-5,2,2", [7], {7: "8/7"}, "known", True),
    ("known-8", Q, "1,0,0,0,1", "2,0,-8,0,2", [8], {8: "1"}, "known", True),
    ("known-3-shifted", L, "1,0", "1,0,1", [3], {3: "1"}, "known", True),
    ("known-11", L, "1,3,4,3,1", "-1,2,-3,2,-1", [11], {11: "2/3"}, "known", False),
    ("known-15", L, "1,2,1", "-1,1,-1", [15], {15: "1/6"}, "known", False),
    ("known-19", Q, "1,1,1,1,1,0", "1,6,2,-8,2,6,1", [19], {19: "2/5"}, "known", False),
    ("known-20", Q, "1,0,-1,0,1,0,-1,0,1", "2,0,-22,0,42,0,-22,0,2", [20], {20: "2/5"}, "known", True),
    ("known-23", Q, "1,0,-1,0,1,0", "1,-6,0,12,0,-6,1", [23], {23: "1/6"}, "known", False),
    ("known-24", Q, "1,0,0,0,-1,0,0,0,1", "2,0,-24,0,46,0,-24,0,2", [24], {24: "1/3"}, "known", True),
    ("known-35", L, "1,2,3,2,1", "-1,1,-2,1,-1", [35], {35: "1/12"}, "known", False),
    ("known-39", L, "1,4,6,4,1", "-1,0,-1,0,-1", [39], {39: "1/18"}, "known", False),
    ("known-40", Q, "1,-1,2,-1,1", "14,-32,14,0", [40], {40: "1/6"}, "known", False),
    ("known-55", L, "1,3,4,3,1", "-1,1,-1,1,-1", [55], {55: "1/30"}, "known", False),
    ("known-84", L, "1,4,6,4,1", "-1,1,-2,1,-1", [84], {84: "1/36"}, "known", False),
    ("known-120", Q, "1,1,2,1,1", "2,2,-20,2,2", [120], {120: "1/36"}, "known", False),
    ("known-303", Q, "1,1,1,0,0,0,1,1,1", "2,2,-49,2,98,2,-49,2,2", [303], {303: "1/132"}, "known", False),
    ("known-755", Q, "1,0,1,0,1,0,1,0,1", "2,0,-37,5,70,5,-37,0,2", [755], {755: "1/410"}, "known", False),
    ("example-3-35", Q, "1,-2,3,-4,5,-4,3,-2,1", "2,-4,-3,16,-24,16,-3,-4,2", [3, 35], {35: "1/10", 3: "7/5"}, "example", False),
    ("example-3", Q, "1,0,4,0,6,0,4,0,1", "2,-16,-8,16,44,16,-8,-16,2", [3], {3: "10"}, "example", False),
    ("zero-measure", Q, "1,0,0", "1,0,0,0,1", [], {3: "0"}, "example", True),
]
# (label, a, b, failing condition)
COUNTEREXAMPLES = [
    ("counterexample-6", "1,0,0", "1,4,4,4,1", 6),
]


def main():
    out = []
    for label, kind, first, second, conds, ratios, group, proven in ROWS:
        e = {"label": label, "kind": kind, "group": group, "proven": proven,
             "conductors": conds, "ratios": {str(k): v for k, v in ratios.items()}}
        if kind == Q:
            e["a"], e["b"] = asc(first), asc(second)
        else:
            e["p"], e["q"] = asc(first), asc(second)
            # p and q need a common shift for the quadratic form to exist
            e["brv_permissible"] = label not in ("known-3", "known-4")
        out.append(e)
    for label, a, b, cond in COUNTEREXAMPLES:
        out.append({"label": label, "kind": Q, "group": "counterexample", "proven": True,
                    "a": asc(a), "b": asc(b), "fails": cond, "conductors": [], "ratios": {}})
    path = Path(__file__).resolve().parents[1] / "src" / "chinburg" / "data" / "fixtures.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {len(out)} fixtures to {path}")


if __name__ == "__main__":
    main()
