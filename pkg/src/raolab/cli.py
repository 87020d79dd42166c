"""Command-line front end.

Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage error,
3 Gröbner budget exceeded.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import report as rpt
from . import reproduce as rp
from .audit import cross_engine_audit
from .configs import UnsupportedRecipe, build
from .gf import DEFAULT_PRIME
from .groebner import BudgetExceeded
from .lefschetz import DEFAULT_TRIALS, conjecture_scan, slp_range_verdict
from .restriction import rao_profile

OK, MISMATCH, USAGE, BUDGET = 0, 1, 2, 3


@dataclass
class Settings:
    prime: int
    second_prime: int | None
    seed: int
    trials: int
    budget: int | None
    out: Path | None
    fmt: str


def emit(settings: Settings, name: str, payload: dict, md) -> None:
    """Print the report, or write it under --out when given."""
    text = rpt.to_json_text(payload) if settings.fmt == "json" else md(payload)
    if settings.out is None:
        click.echo(text, nl=False)
        return
    path = rpt.atomic_write(settings.out / f"{name}.{settings.fmt}", text)
    click.echo(f"wrote {path}", err=True)


def _load_json(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise click.UsageError(f"cannot read {path}: {e}") from None
    if not isinstance(data, dict):
        raise click.UsageError(f"{path}: expected a JSON object")
    return data


@click.group()
@click.option("--prime", type=int, default=DEFAULT_PRIME, envvar="RAOLAB_PRIME",
              show_default=True, help="Field characteristic (env RAOLAB_PRIME).")
@click.option("--second-prime", type=int, default=None,
              help="Repeat the run over this prime and flag any disagreement.")
@click.option("--seed", type=int, default=0, envvar="RAOLAB_SEED", show_default=True,
              help="Master seed (env RAOLAB_SEED).")
@click.option("--trials", type=click.IntRange(min=1), default=DEFAULT_TRIALS,
              show_default=True, help="Random linear forms per verdict.")
@click.option("--budget", type=click.IntRange(min=1), default=None,
              help="S-pair budget for Gröbner computations.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Directory for report files; stdout when omitted.")
@click.option("--format", "fmt", type=click.Choice(["json", "md"]), default="json",
              show_default=True)
@click.pass_context
def cli(ctx, prime, second_prime, seed, trials, budget, out, fmt):
    """Hartshorne-Rao module workbench."""
    ctx.obj = Settings(prime, second_prime, seed, trials, budget, out, fmt)


# --- reproduce ---------------------------------------------------------------


def reproduce_report(tag: str, s: Settings) -> dict:
    want = rp.expected(tag)
    got = rp.run(tag, s.prime, s.seed, s.trials, s.budget)
    diffs = rp.compare(got, want)
    report = {"tag": tag, "describes": rp.goldens()[tag].get("describes", ""),
              "prime": s.prime, "seed": s.seed, "trials": s.trials,
              "expected": want, "computed": got,
              "mismatches": [{"key": k, "expected": w, "computed": g} for k, w, g in diffs]}
    ok = not diffs
    if s.second_prime:
        other = rp.run(tag, s.second_prime, s.seed, s.trials, s.budget)
        report.update(second_prime=s.second_prime, computed_second=other,
                      prime_agreement=other == got)
        ok = ok and other == got
    report["ok"] = ok
    return report


@cli.command()
@click.argument("tag")
@click.pass_obj
def reproduce(s: Settings, tag):
    """Recompute a reference table and diff it against the shipped goldens.

    Use TAG "list" to show the known tags, or "all" to run every one.
    """
    if tag == "list":
        for t in rp.PIPELINES:
            click.echo(f"{t:24s} {rp.goldens()[t].get('describes', '')}")
        return
    tags = list(rp.PIPELINES) if tag == "all" else [tag]
    unknown = [t for t in tags if t not in rp.PIPELINES]
    if unknown:
        raise click.UsageError(f"unknown tag {unknown[0]!r}; try 'reproduce list'")
    failed = False
    for t in tags:
        report = rpt.stamp(reproduce_report(t, s))
        emit(s, t, report, rpt.md_reproduce)
        for d in report["mismatches"]:
            click.echo(f"{t}: {d['key']}: expected {d['expected']}, computed {d['computed']}",
                       err=True)
        if report.get("prime_agreement") is False:
            click.echo(f"{t}: results differ between p={s.prime} and p={s.second_prime}",
                       err=True)
        failed |= not report["ok"]
    sys.exit(MISMATCH if failed else OK)


# --- analyze -----------------------------------------------------------------


def _int_list(value, name: str) -> list:
    if isinstance(value, int):
        return [value]
    if isinstance(value, list) and value and all(isinstance(v, int) for v in value):
        return value
    raise click.UsageError(f"manifest field {name!r} must be an integer or a list of integers")


def analyze_run(manifest: dict, p: int, trials: int) -> dict:
    cfg = build(manifest["recipe"], manifest.get("params", {}), manifest.get("seed", 0), p)
    profile = rao_profile(cfg)
    seed = manifest.get("seed", 0)
    verdicts = [slp_range_verdict(cfg, m, trials, seed, profile).to_json()
                for m in _int_list(manifest.get("powers", [1]), "powers")]
    return {"recipe": manifest["recipe"], "params": manifest.get("params", {}), "seed": seed,
            "prime": p, "profile": profile.to_json(), "verdicts": verdicts}


def _comparable(run: dict) -> dict:
    return {"dims": run["profile"]["dims"], "socle": run["profile"]["socle"],
            "verdicts": [(v["m"], v["verdict"], v["failing_degrees"]) for v in run["verdicts"]]}


def analyze_report(manifest: dict, s: Settings) -> dict:
    if "recipe" not in manifest:
        raise click.UsageError("manifest needs a 'recipe' field")
    if not isinstance(manifest.get("params", {}), dict):
        raise click.UsageError("manifest field 'params' must be an object")
    primes = _int_list(manifest.get("primes", manifest.get("prime", s.prime)), "primes")
    if s.second_prime and len(primes) == 1:
        primes.append(s.second_prime)
    trials = int(manifest.get("trials", s.trials))
    try:
        runs = [analyze_run(manifest, p, trials) for p in primes]
    except (UnsupportedRecipe, ValueError) as e:
        raise click.UsageError(str(e)) from None
    report = {"manifest": manifest, "runs": runs}
    if len(runs) > 1:
        report["agreement"] = all(_comparable(r) == _comparable(runs[0]) for r in runs)
    return report


@cli.command()
@click.argument("manifest", type=click.Path(dir_okay=False))
@click.pass_obj
def analyze(s: Settings, manifest):
    """Build a configuration from a recipe manifest and tabulate its Rao module.

    Manifest fields: recipe, params, seed, powers (list of m), prime or primes,
    trials.
    """
    data = _load_json(manifest)
    report = rpt.stamp(analyze_report(data, s))
    emit(s, Path(manifest).stem, report, rpt.md_analyze)
    sys.exit(MISMATCH if report.get("agreement") is False else OK)


# --- audit -------------------------------------------------------------------


@cli.command()
@click.option("--max-r", type=click.IntRange(0, 6), default=6, show_default=True)
@click.option("--max-t", type=click.IntRange(0, 8), default=8, show_default=True)
@click.option("--m-max", type=click.IntRange(0, 3), default=3, show_default=True)
@click.option("--points/--no-points", default=True, show_default=True,
              help="Also audit four flat fat points of multiplicity 3 in the plane.")
@click.pass_obj
def audit(s: Settings, max_r, max_t, m_max, points):
    """Compare restriction-engine dimensions with the Gröbner route."""
    rep = cross_engine_audit(max_r, max_t, m_max, s.seed, ((4, 3),) if points else (), s.prime)
    payload = rpt.stamp({"prime": s.prime, "seed": s.seed, "max_r": max_r, "max_t": max_t,
                         "m_max": m_max, **rep.to_json()})
    emit(s, "audit", payload, rpt.md_audit)
    sys.exit(OK if rep.ok else MISMATCH)


# --- scan --------------------------------------------------------------------


def _values(spec) -> list:
    if isinstance(spec, dict) and "range" in spec:
        lo, hi = spec["range"]
        return list(range(int(lo), int(hi) + 1))
    if isinstance(spec, list):
        return spec
    raise click.UsageError("scan 'values' must be a list or {\"range\": [lo, hi]}")


@cli.command()
@click.argument("scanspec", type=click.Path(dir_okay=False))
@click.pass_obj
def scan(s: Settings, scanspec):
    """Tabulate verdicts over a parameter grid (evidence only, never a claim).

    Spec fields: kind ("lines" or "flatfat"); for lines, values (r) and powers;
    for flatfat, s and m (each a list or a range).
    """
    spec = _load_json(scanspec)
    kind = spec.get("kind")
    trials = int(spec.get("trials", s.trials))
    seed = spec.get("seed", s.seed)
    p = int(spec.get("prime", s.prime))
    if kind == "lines":
        values, powers = _values(spec.get("values")), _values(spec.get("powers", [1]))
        table = conjecture_scan("lines", values, powers, trials, seed, p)
    elif kind == "flatfat":
        pairs = [(a, b) for b in _values(spec.get("m")) for a in _values(spec.get("s"))]
        table = conjecture_scan("flatfat", pairs, (), trials, seed, p)
    else:
        raise click.UsageError("scan 'kind' must be 'lines' or 'flatfat'")
    payload = rpt.stamp({"kind": kind, "prime": p, "seed": seed, "trials": trials,
                         "table": table})
    emit(s, Path(scanspec).stem, payload, rpt.md_scan)
    sys.exit(OK)


def main(argv=None) -> None:
    try:
        cli.main(args=argv, prog_name="raolab", standalone_mode=False)
    except click.exceptions.Exit as e:
        sys.exit(e.exit_code)
    except click.ClickException as e:
        e.show()
        sys.exit(USAGE)
    except click.Abort:
        sys.exit(USAGE)
    except BudgetExceeded as e:
        click.echo(f"budget exceeded: {e}", err=True)
        sys.exit(BUDGET)
    sys.exit(OK)


if __name__ == "__main__":
    main()
