"""Worked-example corpus: input documents plus frozen expected outputs.

Each case directory holds ``input*.json``, ``expected.json`` and
``PROVENANCE.md``.  Cases tagged DERIVED also ship an ``oracle.py`` whose
``expected(case_dir)`` recomputes the frozen values without using qloops.

``expected.json`` fields: ``provenance``, ``command`` (CLI argv; file names
are resolved inside the case directory), ``exit_code``, ``stream`` (which
output to compare), ``tolerance`` and ``expect``, a partial document: only
keys present there are compared.  The string ``"<present>"`` matches any
non-null value.
"""

from __future__ import annotations

import importlib.util
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .cli import main as cli_main

CORPUS_DIR = Path(__file__).with_name("corpus")
PROVENANCE_TAGS = ("PAPER", "TRIVIAL", "DERIVED")
_TORUS_KEYS = ("t_tau", "t_one")


@dataclass(frozen=True)
class ExampleCase:
    name: str
    path: Path
    inputs: tuple
    expected: dict

    @property
    def provenance(self):
        return self.expected["provenance"]

    def argv(self):
        out = []
        for a in self.expected["command"]:
            p = self.path / a
            out.append(str(p) if p.is_file() else a)
        return out


def load_cases(root=None):
    root = Path(root) if root else CORPUS_DIR
    cases = []
    for d in sorted(p for p in root.iterdir() if p.is_dir() and not p.name.startswith("_")):
        exp = d / "expected.json"
        if not exp.is_file():
            continue
        cases.append(ExampleCase(d.name, d, tuple(sorted(x.name for x in d.glob("input*.json"))),
                                 json.loads(exp.read_text())))
    return cases


def _diff(exp, got, tol, path="$", key=None):
    """List of mismatch descriptions (empty when ``got`` matches ``exp``)."""
    if exp == "<present>":
        return [] if got is not None else [f"{path}: expected a value, got null"]
    if isinstance(exp, dict):
        if not isinstance(got, dict):
            return [f"{path}: expected object"]
        out = []
        for k, v in exp.items():
            if k not in got:
                out.append(f"{path}.{k}: missing")
            else:
                out += _diff(v, got[k], tol, f"{path}.{k}", k)
        return out
    if isinstance(exp, list):
        if not isinstance(got, list) or len(got) != len(exp):
            return [f"{path}: expected list of length {len(exp)}"]
        out = []
        for i, (e, g) in enumerate(zip(exp, got)):
            out += _diff(e, g, tol, f"{path}[{i}]", key)
        return out
    if isinstance(exp, bool) or exp is None or isinstance(exp, str):
        return [] if exp == got else [f"{path}: expected {exp!r}, got {got!r}"]
    if isinstance(exp, int) and isinstance(got, int) and not isinstance(got, bool):
        return [] if exp == got else [f"{path}: expected {exp}, got {got}"]
    if isinstance(exp, (int, float)) and isinstance(got, (int, float)):
        d = abs(exp - got)
        if key in _TORUS_KEYS:
            d = min(d % 1.0, 1.0 - d % 1.0)
        return [] if d <= tol else [f"{path}: expected {exp}, got {got} (|diff| {d:.2e})"]
    return [f"{path}: type mismatch {exp!r} vs {got!r}"]


def run_case(case: ExampleCase):
    out, err = io.StringIO(), io.StringIO()
    code = cli_main(case.argv(), stdout=out, stderr=err)
    exp = case.expected
    problems = []
    if code != exp.get("exit_code", 0):
        problems.append(f"exit code {code}, expected {exp.get('exit_code', 0)}")
    text = (err if exp.get("stream", "stdout") == "stderr" else out).getvalue()
    try:
        doc = json.loads(text) if text.strip() else None
    except json.JSONDecodeError as exc:
        doc = None
        problems.append(f"output is not JSON: {exc}")
    if doc is not None or "expect" in exp:
        problems += _diff(exp.get("expect", {}), doc, float(exp.get("tolerance", 1e-9)))
    return {"case": case.name, "provenance": case.provenance, "pass": not problems,
            "detail": "; ".join(problems)}


def run_corpus(root=None):
    """Execute every case through the CLI; failures are report entries."""
    report = []
    for case in load_cases(root):
        try:
            report.append(run_case(case))
        except Exception as exc:  # a crash is a failed entry, not an abort
            report.append({"case": case.name, "provenance": case.provenance, "pass": False,
                           "detail": f"{type(exc).__name__}: {exc}"})
    return report


def load_oracle(case: ExampleCase):
    path = case.path / "oracle.py"
    if not path.is_file():
        return None
    spec = importlib.util.spec_from_file_location(f"_qloops_oracle_{case.name}", path)
    mod = importlib.util.module_from_spec(spec)
    sys.path.insert(0, str(case.path.parent))
    try:
        spec.loader.exec_module(mod)
    finally:
        sys.path.remove(str(case.path.parent))
    return mod


def check_oracle(case: ExampleCase):
    """Recompute a DERIVED case's expectation and diff it with the frozen one."""
    mod = load_oracle(case)
    if mod is None:
        return ["no oracle.py"]
    return _diff(case.expected["expect"], mod.expected(case.path),
                 float(case.expected.get("tolerance", 1e-9)))


def summary(report):
    ok = sum(1 for r in report if r["pass"])
    return f"{ok}/{len(report)} corpus cases pass"
