import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
from oracle_util import *  # noqa: E402,F401,F403

def expected(case_dir):
    A = constant(case_dir / "input_1.json")
    B = constant(case_dir / "input_2.json")
    # hand certificate g = diag(1, z^-1): g(qz) A g(z)^-1 = diag(A11, q^-1 A22)
    conj = np.diag([A[0, 0], A[1, 1] / Q])
    assert np.abs(conj - B).max() < 1e-12 * np.abs(B).max()
    return {"equivalent": True, "certificate": "<present>"}


if __name__ == "__main__":
    print(json.dumps(expected(Path(__file__).resolve().parent), indent=1))
