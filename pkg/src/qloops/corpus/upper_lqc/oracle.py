import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
from oracle_util import *  # noqa: E402,F401,F403

def _mul(P, R):
    out = {}
    for i, X in P.items():
        for j, Y in R.items():
            out[i + j] = out.get(i + j, 0) + X @ Y
    return out


def _qshift(P):
    return {k: Q ** k * X for k, X in P.items()}


def expected(case_dir):
    a = load_loop(case_dir / "input.json")
    lam = a[0][0, 0]
    # kill the z entry with u(z) = c z: need 1 + c lam (q^2 - 1) = 0
    c = 1 / (lam * (1 - Q * Q))
    g = {0: np.eye(2), 1: np.array([[0, c], [0, 0]])}
    g_inv = {0: np.eye(2), 1: np.array([[0, -c], [0, 0]])}
    b = _mul(_mul(_qshift(g), a), g_inv)
    assert all(np.abs(X).max() < 1e-12 for k, X in b.items() if k != 0)
    assert np.abs(b[0] - np.diag([lam, Q * lam])).max() < 1e-12
    # diag(lam, q lam) ~ diag(lam, lam): both points are lam mod q^Z
    pt = torus(lam)
    return {"rank": 2, "entries": entries([(pt, 1), (pt, 1)])}


if __name__ == "__main__":
    print(json.dumps(expected(Path(__file__).resolve().parent), indent=1))
