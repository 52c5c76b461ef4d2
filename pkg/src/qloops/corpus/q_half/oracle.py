import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
from oracle_util import *  # noqa: E402,F401,F403

def expected(case_dir):
    a = constant(case_dir / "input.json")[0, 0]
    # h(z) = z^(-1/2) on the double cover: h(qz) a h(z)^-1 = q^(-1/2) a
    c = qpow(-0.5) * a
    assert abs(c - 1) < 1e-12
    m, phi = 2, [1]
    theta = cmath.exp(2j * math.pi * phi[0] / m)  # a-cycle monodromy, here -1
    j = round(m * cmath.phase(theta) / (2 * math.pi)) % m
    pt = torus(c * qpow(j / m))
    return {"rank": 1, "entries": entries([(pt, 1)]), "descent": {"m": m, "phi": phi}}


if __name__ == "__main__":
    print(json.dumps(expected(Path(__file__).resolve().parent), indent=1))
