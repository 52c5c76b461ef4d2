import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
from oracle_util import *  # noqa: E402,F401,F403

def expected(case_dir):
    A = constant(case_dir / "input.json")
    return {"rank": 2, "entries": entries([(torus(1.0), s) for s in jordan_sizes(A - np.eye(2))])}


if __name__ == "__main__":
    print(json.dumps(expected(Path(__file__).resolve().parent), indent=1))
