"""Standalone re-audit of a certificate document.

Uses nothing but the recorded counts: every inequality is recomputed here
independently of the tracer, and the verdict is compared with the one the
certificate claims.  Run as ``python -m twolevel.audit certificate.json``
(either a bare certificate or a CLI report wrapping one).
"""
import json
import sys


def _level_problems(lv):
    c = lv["counts"]
    d, k = lv["level_dim"], c["dimU0"]
    A, B, A0, A1 = c["A"], c["B"], c["A0"], c["A1"]
    piB, Bs, Br, tpb = c["piB"], c["Bstar"], c["Brest"], c["tauPiB"]
    B0, B1 = c["B0"], c["B1"]
    obs = lv["observed"]
    AB = A * B
    rules = {
        "partition": A == A0 + A1 and B == Bs + Br,
        "claim1": obs["claim1"] and A0 >= A1,
        "claim2": obs["claim2"] and Br == 2 * (piB - Bs),
        "fiber_count": AB <= 2 * A0 * piB + A1 * Br,
        "subspace_bound": A0 * tpb <= (k + 1) * 2 ** k,
        "claim3": 0 <= k <= d - 1 and piB <= 2 ** (d - 1 - k) * tpb,
        "projected_bound": AB <= (k + 1) * 2 ** d + A1 * Br,
        "claim4": obs["claim4"] and B0 + B1 == Br,
        "partition_bound": AB <= (k + 1) * 2 ** d + A0 * B0 + A1 * B1,
        "claim5": A0 * B0 <= 2 ** d and A1 * B1 <= 2 ** d,
        "final_case": k != d - 1 or B0 == 0,
        "bound": AB <= (d + 1) * 2 ** d,
    }
    if lv.get("child") is not None:
        ch = lv["child"]
        rules["reduction"] = (obs["reduction_pairing"]
                              and A0 * tpb <= ch["product"] <= ch["bound"])
    return [name for name, ok in rules.items() if not ok]


def audit(doc):
    """Return (verdict, problems) recomputed from the counts alone."""
    if "levels" not in doc and "result" in doc:
        doc = doc["result"]
    problems = []
    levels = doc["levels"]
    for i, lv in enumerate(levels):
        if lv.get("base"):
            if lv["counts"]["A"] * lv["counts"]["B"] > 1:
                problems.append(f"level {i}: base product exceeds 1")
            if i != len(levels) - 1:
                problems.append(f"level {i}: base level is not last")
            continue
        for name in _level_problems(lv):
            problems.append(f"level {i} (d={lv['level_dim']}): {name} fails")
        nxt = levels[i + 1] if i + 1 < len(levels) else None
        if nxt is None:
            problems.append(f"level {i}: chain ends without a base level")
            continue
        if nxt["level_dim"] != lv["counts"]["dimU0"]:
            problems.append(f"level {i}: next level has dimension {nxt['level_dim']}, "
                            f"expected {lv['counts']['dimU0']}")
        if lv.get("child") is not None:
            nc = nxt["counts"]
            if nc["A"] * nc["B"] != lv["child"]["product"]:
                problems.append(f"level {i}: recorded child product does not match next level")
    if levels and not levels[0].get("base"):
        top = levels[0]
        if top["counts"]["A"] * top["counts"]["B"] != doc.get("product"):
            problems.append("top-level product mismatch")
    return not problems, problems


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: python -m twolevel.audit CERTIFICATE.json", file=sys.stderr)
        return 2
    with open(argv[0], encoding="utf-8") as fh:
        doc = json.load(fh)
    verdict, problems = audit(doc)
    inner = doc.get("result", doc)
    claimed = inner.get("passed")
    for p in problems:
        print(p)
    print(f"audit verdict: {'PASS' if verdict else 'FAIL'}; "
          f"certificate claims: {'PASS' if claimed else 'FAIL'}; "
          f"{'agree' if verdict == claimed else 'DISAGREE'}")
    return 0 if verdict and verdict == claimed else 1


if __name__ == "__main__":
    sys.exit(main())
