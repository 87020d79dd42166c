"""JSON and Markdown emitters, plus atomic file writes."""

from __future__ import annotations

import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

TIMESTAMP = "generated_at"


def stamp(payload: dict) -> dict:
    return {**payload, TIMESTAMP: datetime.now(timezone.utc).isoformat(timespec="seconds")}


def without_timestamp(payload: dict) -> dict:
    return {k: v for k, v in payload.items() if k != TIMESTAMP}


def to_json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=list) + "\n"


def atomic_write(path, text: str) -> Path:
    """Write to a temp file in the target directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


# --- markdown ----------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        if not v:
            return "-"
        if all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            return "(" + ", ".join(map(str, v)) + ")"
        return ", ".join(_cell(x) for x in v)
    if v is None:
        return "-"
    return str(v)


def md_table(header, rows) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(_cell(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def _flatten(d: dict, prefix: str = "") -> list:
    out = []
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out += _flatten(v, key + ".")
        else:
            out.append((key, v))
    return out


def md_reproduce(report: dict) -> str:
    computed = dict(_flatten(report["computed"]))
    rows = [(k, want, computed.get(k), computed.get(k) == want)
            for k, want in _flatten(report["expected"])]
    parts = [f"# {report['tag']}", "", report.get("describes", ""), "",
             f"prime {report['prime']}, seed {report['seed']}", "",
             md_table(["quantity", "expected", "computed", "match"], rows), ""]
    if "prime_agreement" in report:
        parts += [f"second prime {report['second_prime']}: "
                  f"{'agrees' if report['prime_agreement'] else 'DISAGREES'}", ""]
    parts.append(f"**{'PASS' if report['ok'] else 'FAIL'}**")
    return "\n".join(parts) + "\n"


def md_analysis(run: dict) -> str:
    dims, socle = run["profile"]["dims"], run["profile"]["socle"]
    parts = [f"## {run['recipe']} {run['params']} (p = {run['prime']}, seed = {run['seed']})", "",
             md_table(["t", "dim M_t", "socle"], [(t, d, socle.get(t)) for t, d in dims.items()]), ""]
    for rep in run["verdicts"]:
        parts += [f"### x L^{rep['m']}: {rep['verdict']}"
                  + (f" ({rep['caveat']})" if rep["caveat"] else ""), "",
                  md_table(["t", "dim source", "dim target", "rank", "maximal"],
                           [(r["t"], r["dim_src"], r["dim_tgt"], r["rank"], r["maximal"])
                            for r in rep["rows"]]), ""]
    return "\n".join(parts)


def md_analyze(report: dict) -> str:
    parts = ["# analysis", ""] + [md_analysis(r) for r in report["runs"]]
    if "agreement" in report:
        parts.append(f"primes agree: {_cell(report['agreement'])}")
    return "\n".join(parts) + "\n"


def md_audit(report: dict) -> str:
    parts = ["# cross-engine audit", "", f"checks: {report['checks']}",
             f"discrepancies: {len(report['discrepancies'])}", ""]
    if report["discrepancies"]:
        keys = sorted({k for d in report["discrepancies"] for k in d})
        parts.append(md_table(keys, [[d.get(k) for k in keys] for d in report["discrepancies"]]))
    return "\n".join(parts) + "\n"


def md_scan(report: dict) -> str:
    table = report["table"]
    keys = [k for k in ("r", "s", "m", "verdict", "failing", "observed", "expected", "error")
            if any(k in c for c in table)]
    return "\n".join([f"# scan: {report['kind']}", "", md_table(keys, [[c.get(k) for k in keys]
                                                                     for c in table]), ""])
