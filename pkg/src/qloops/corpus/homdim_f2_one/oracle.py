import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
from oracle_util import *  # noqa: E402,F401,F403

def expected(case_dir):
    A = constant(case_dir / "input_1.json")
    B = constant(case_dir / "input_2.json")
    d = hom_constants(A, B)
    return {"measured": d, "formula": d}


if __name__ == "__main__":
    print(json.dumps(expected(Path(__file__).resolve().parent), indent=1))
