import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
from oracle_util import *  # noqa: E402,F401,F403

def expected(case_dir):
    J = np.array([[1.0, 1.0], [0.0, 1.0]])
    sizes = jordan_sizes(np.kron(J, J) - np.eye(4))
    return {"rank": 4, "entries": entries([((0.0, 0.0), s) for s in sizes])}


if __name__ == "__main__":
    print(json.dumps(expected(Path(__file__).resolve().parent), indent=1))
