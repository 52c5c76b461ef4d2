import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
from oracle_util import *  # noqa: E402,F401,F403

def expected(case_dir):
    a = load_loop(case_dir / "input_1.json")
    lam = a[0][0, 0]
    b = constant(case_dir / "input_2.json")
    assert np.abs(b - lam * np.eye(2)).max() < 1e-15
    # an explicit certificate exists: diag(1, z^-1) . [[1, c z], [0, 1]]
    return {"equivalent": True, "certificate": "<present>",
            "invariants": [{"rank": 2}, {"rank": 2}]}


if __name__ == "__main__":
    print(json.dumps(expected(Path(__file__).resolve().parent), indent=1))
