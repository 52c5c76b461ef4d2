import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
from oracle_util import *  # noqa: E402,F401,F403

from fractions import Fraction


def expected(case_dir):
    ents = json.loads((case_dir / "input.json").read_text())
    rs = [Fraction(e["r"]) for e in ents]
    tags = [e.get("tag") for e in ents]
    # within a class the exponents relative to its first member must become integers
    base = {}
    for i, t in enumerate(tags):
        base.setdefault(t, i)
    rel = [rs[i] - (rs[base[t]] if t is not None else 0) for i, t in enumerate(tags)]
    m = 1
    for x in rel:
        m = m * x.denominator // math.gcd(m, x.denominator)
    phi = [int(x * m) for x in rel]
    assert all(Fraction(p, m) == x for p, x in zip(phi, rel))
    out = [{"tag": t, "t_tau": str(Fraction(e["r"]) % 1), "t_one": str(Fraction(e["r1"]) % 1), "size": 1}
           for t, e in zip(tags, ents)]
    out.sort(key=lambda d: (d["tag"] or "", Fraction(d["t_tau"]), Fraction(d["t_one"])))
    return {"mode": "exact", "rank": len(ents), "m": m, "phi": phi, "entries": out}


if __name__ == "__main__":
    print(json.dumps(expected(Path(__file__).resolve().parent), indent=1))
