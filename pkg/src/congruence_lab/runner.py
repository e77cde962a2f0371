"""Suite orchestration: expand config grids into row tasks, run them (optionally
across a worker pool), and collect rows in canonical order.

Tasks are independent at the row level and are merged in task order, so the
worker count never changes the output.  A row that fails (for example by
exceeding a budget) becomes a row-level error record, not a process failure.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from random import Random
from typing import Any

from . import charsums, coverage, prime_congruence
from .characters import build_group
from .config import ExperimentConfig
from .errors import CongruenceLabError
from .primes import sieve
from .residue import floor_nth_root

__all__ = ["SUITE_COLUMNS", "run_suite", "SuiteResult"]

log = logging.getLogger("congruence_lab")


# -- row functions (module level so tasks pickle cleanly) --------------------


def _coverage_row(m: int, bounds: list[int], epsilon: float | None, max_work: int) -> list[dict]:
    rep = coverage.coverage_report(m, bounds, epsilon=epsilon, max_work=max_work)
    row: dict[str, Any] = {
        "m": rep.m,
        "k": rep.k,
        "epsilon": rep.epsilon,
        "covered_total": rep.covered_total,
        "deficiency": rep.deficiency,
        "deficiency_fraction": rep.deficiency_fraction,
        "missing_units": rep.missing_units,
        "cubefree_flag": rep.cubefree,
    }
    for i, n in enumerate(rep.bounds, start=1):
        row[f"N{i}"] = n
    return [row]


def _collision_row(m: int, bounds: list[int], max_triples: int) -> list[dict]:
    count = coverage.collision_count(m, bounds, max_triples=max_triples)
    n1, n2, n3 = bounds
    return [
        {
            "m": m,
            "N1": n1,
            "N2": n2,
            "N3": n3,
            "I": count,
            "ratio": count * m / (n1 * n2 * n3) ** 2,
        }
    ]


def _counterexample_row(q: int, n: int, bound: int) -> list[dict]:
    verified = coverage.verify_missing_multiples(q, n, bound)
    return [{"q": q, "n": n, "m": q * n, "bound": bound, "verified": verified}]


def _burgess_rows(m: int, n_grid: list[int]) -> list[dict]:
    group = build_group(m)
    return [
        {
            "m": rec.m,
            "N": rec.bound,
            "chi_index_of_max": rec.chi_index,
            "max_magnitude": rec.magnitude,
            "reference_value": rec.reference_value,
            "ratio": rec.ratio,
            "delta_eff": rec.delta_eff,
        }
        for rec in charsums.burgess_report(group, n_grid)
    ]


def _vinogradov_rows(p: int, n_grid: list[int], k: int) -> list[dict]:
    group = build_group(p)
    return [
        {
            "m": rec.m,
            "N": rec.bound,
            "k": rec.shift,
            "chi_index_of_max": rec.chi_index,
            "max_magnitude": rec.magnitude,
            "reference_value": rec.reference_value,
            "ratio": rec.ratio,
            "delta_eff": rec.delta_eff,
        }
        for rec in charsums.vinogradov_report(group, n_grid, k)
    ]


def _moment_row(m: int, n: int, u: int, max_tuples: int) -> list[dict]:
    check = charsums.moment_identity(build_group(m), u, n, max_tuples=max_tuples)
    return [
        {
            "m": check.m,
            "n": check.n,
            "U": check.interval,
            "lhs": check.lhs,
            "rhs_congruence": check.congruence_count,
            "rhs_equation": check.equation_count,
        }
    ]


def _parseval_row(m: int, set_index: int, values: list[int]) -> list[dict]:
    lhs, rhs = charsums.parseval_identity(build_group(m), values)
    return [{"m": m, "set_index": set_index, "set_size": len(values), "lhs": lhs, "rhs": rhs}]


def _largevalue_rows(p: int, prime_limit: int, v_grid: list[float]) -> list[dict]:
    group = build_group(p)
    values = sieve(prime_limit).primes if prime_limit >= 2 else ()
    census = charsums.large_value_census(group, values, v_grid)
    return [
        {
            "m": census.m,
            "interval_length": census.interval_length,
            "V": v,
            "R": r,
            "huxley_rhs": curve,
            "parseval_total": census.parseval_total,
        }
        for v, r, curve in zip(census.thresholds, census.counts, census.reference_curve)
    ]


def _primecong_row(p: int, n: int, k: int, lam: int, epsilon: float, max_pairs: int) -> list[dict]:
    inst = prime_congruence.CongruenceInstance(p=p, n=n, k=k, lam=lam)
    rep = prime_congruence.solution_report(inst, epsilon=epsilon, max_pairs=max_pairs)
    return [
        {
            "p": p,
            "N": n,
            "k": k,
            "lambda": lam,
            "J": rep.solutions,
            "main_term": rep.main_term,
            "ratio": rep.ratio,
            "threshold_ok": rep.threshold_ok,
        }
    ]


def _theta_row(alpha: str, beta: str) -> list[dict]:
    value = prime_congruence.exponent_threshold(Fraction(alpha), Fraction(beta))
    return [
        {
            "alpha": alpha,
            "beta": beta,
            "theta": value,
            "theta_float": float(value),
        }
    ]


_ROW_FUNCS = {
    "coverage": _coverage_row,
    "collisions": _collision_row,
    "counterexample": _counterexample_row,
    "burgess": _burgess_rows,
    "vinogradov": _vinogradov_rows,
    "moments": _moment_row,
    "parseval": _parseval_row,
    "largevalues": _largevalue_rows,
    "primecong": _primecong_row,
    "theta": _theta_row,
}


def _execute(task: tuple[str, str, dict]) -> dict:
    key, fn_name, kwargs = task
    start = time.perf_counter()
    try:
        rows = _ROW_FUNCS[fn_name](**kwargs)
        return {
            "key": key,
            "ok": True,
            "rows": rows,
            "elapsed_ms": (time.perf_counter() - start) * 1000.0,
        }
    except CongruenceLabError as exc:
        return {
            "key": key,
            "ok": False,
            "error": f"{type(exc).__name__}: {exc}",
            "elapsed_ms": (time.perf_counter() - start) * 1000.0,
        }


# -- task expansion per suite -------------------------------------------------


def _tasks_coverage(cfg: ExperimentConfig) -> list[tuple[str, str, dict]]:
    sect = cfg.suite("coverage")
    k = sect["k"]
    max_work = cfg.budget("coverage.max_work")
    tasks = []
    for m in sorted(sect["m_grid"]):
        if sect.get("bounds"):
            bounds = [int(b) for b in sect["bounds"]]
            epsilon = None
        else:
            if k == 4 and not coverage.as_modulus(m).is_cubefree:
                continue
            bounds = list(coverage.bounds_from_exponent(m, sect["epsilon"], k))
            epsilon = sect["epsilon"]
        tasks.append(
            (
                f"m={m}",
                "coverage",
                {"m": m, "bounds": bounds, "epsilon": epsilon, "max_work": max_work},
            )
        )
    return tasks


def _tasks_collisions(cfg: ExperimentConfig) -> list[tuple[str, str, dict]]:
    max_triples = cfg.budget("collisions.max_triples")
    tasks = []
    for case in cfg.suite("collisions")["cases"]:
        m, *bounds = (int(v) for v in case)
        tasks.append(
            (
                f"m={m} bounds={bounds}",
                "collisions",
                {"m": m, "bounds": bounds, "max_triples": max_triples},
            )
        )
    return tasks


def _tasks_counterexample(cfg: ExperimentConfig) -> list[tuple[str, str, dict]]:
    tasks = []
    for q, n, bound in cfg.suite("counterexample")["cases"]:
        tasks.append(
            (
                f"q={q} n={n} B={bound}",
                "counterexample",
                {"q": int(q), "n": int(n), "bound": int(bound)},
            )
        )
    return tasks


def _tasks_charsum(cfg: ExperimentConfig) -> dict[str, list[tuple[str, str, dict]]]:
    sect = cfg.suite("charsum")
    burgess = [
        (f"m={m}", "burgess", {"m": int(m), "n_grid": [int(n) for n in sub["n_grid"]]})
        for sub in [sect["burgess"]]
        for m in sorted(sub["m_grid"])
    ]
    vin = [
        (
            f"p={p}",
            "vinogradov",
            {"p": int(p), "n_grid": [int(n) for n in sub["n_grid"]], "k": int(sub["k"])},
        )
        for sub in [sect["vinogradov"]]
        for p in sorted(sub["p_grid"])
    ]
    return {"charsum_burgess": burgess, "charsum_vinogradov": vin}


def _tasks_moments(cfg: ExperimentConfig) -> list[tuple[str, str, dict]]:
    sect = cfg.suite("moments")
    max_tuples = cfg.budget("moments.max_tuples")
    tasks = []
    for m in sorted(sect["m_grid"]):
        for n in sect["n_values"]:
            u = sect.get("u") or floor_nth_root(m, n)
            tasks.append(
                (
                    f"m={m} n={n}",
                    "moments",
                    {"m": int(m), "n": int(n), "u": int(u), "max_tuples": max_tuples},
                )
            )
    return tasks


def _tasks_parseval(cfg: ExperimentConfig) -> list[tuple[str, str, dict]]:
    sect = cfg.suite("parseval")
    tasks = []
    for m in sorted(sect["m_grid"]):
        for i in range(sect["sets_per_m"]):
            rng = Random(f"{cfg.seed}:parseval:{m}:{i}")
            values = [rng.randrange(1, sect["value_max"] + 1) for _ in range(sect["set_size"])]
            tasks.append(
                (
                    f"m={m} set={i}",
                    "parseval",
                    {"m": int(m), "set_index": i, "values": values},
                )
            )
    return tasks


def _tasks_largevalues(cfg: ExperimentConfig) -> list[tuple[str, str, dict]]:
    sect = cfg.suite("largevalues")
    return [
        (
            f"p={p}",
            "largevalues",
            {
                "p": int(p),
                "prime_limit": int(sect["prime_limit"]),
                "v_grid": [float(v) for v in sect["v_grid"]],
            },
        )
        for p in sorted(sect["p_grid"])
    ]


def _tasks_primecong(cfg: ExperimentConfig) -> list[tuple[str, str, dict]]:
    sect = cfg.suite("primecong")
    max_pairs = cfg.budget("primecong.max_pairs")
    n_rule = sect["n_rule"]
    tasks = []
    for p in sorted(sect["p_grid"]):
        n = prime_congruence.resolve_bound(int(p), n_rule)
        rng = Random(f"{cfg.seed}:primecong:{p}")
        lams = prime_congruence.resolve_lambdas(
            int(p), sect["lambda_rule"], sect["lambdas_per_p"], rng
        )
        for lam in lams:
            tasks.append(
                (
                    f"p={p} lambda={lam}",
                    "primecong",
                    {
                        "p": int(p),
                        "n": n,
                        "k": int(sect["k"]),
                        "lam": int(lam),
                        "epsilon": float(sect["epsilon"]),
                        "max_pairs": max_pairs,
                    },
                )
            )
    return tasks


def _tasks_theta(cfg: ExperimentConfig) -> list[tuple[str, str, dict]]:
    return [
        (f"alpha={a} beta={b}", "theta", {"alpha": str(a), "beta": str(b)})
        for a, b in cfg.suite("theta")["pairs"]
    ]


SUITE_COLUMNS: dict[str, list[str]] = {
    "collisions": ["m", "N1", "N2", "N3", "I", "ratio"],
    "counterexample": ["q", "n", "m", "bound", "verified"],
    "charsum_burgess": [
        "m", "N", "chi_index_of_max", "max_magnitude", "reference_value", "ratio", "delta_eff",
    ],
    "charsum_vinogradov": [
        "m", "N", "k", "chi_index_of_max", "max_magnitude", "reference_value", "ratio",
        "delta_eff",
    ],
    "moments": ["m", "n", "U", "lhs", "rhs_congruence", "rhs_equation"],
    "parseval": ["m", "set_index", "set_size", "lhs", "rhs"],
    "largevalues": ["m", "interval_length", "V", "R", "huxley_rhs", "parseval_total"],
    "primecong": ["p", "N", "k", "lambda", "J", "main_term", "ratio", "threshold_ok"],
    "theta": ["alpha", "beta", "theta", "theta_float"],
}


def _coverage_columns(cfg: ExperimentConfig) -> list[str]:
    sect = cfg.suite("coverage")
    k = len(sect["bounds"]) if sect.get("bounds") else sect["k"]
    bound_cols = [f"N{i}" for i in range(1, k + 1)]
    return (
        ["m", "k", "epsilon"]
        + bound_cols
        + ["covered_total", "deficiency", "deficiency_fraction", "missing_units", "cubefree_flag"]
    )


class SuiteResult:
    """Rows, errors, timings, and stdout lines for one artifact (one CSV)."""

    def __init__(self, name: str, columns: list[str]):
        self.name = name
        self.columns = columns
        self.rows: list[dict] = []
        self.row_errors: list[dict] = []
        self.timings: list[dict] = []
        self.stdout_lines: list[str] = []


def _run_tasks(tasks: list[tuple[str, str, dict]], workers: int) -> list[dict]:
    if workers <= 1 or len(tasks) <= 1:
        return [_execute(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_execute, tasks))


def run_suite(name: str, cfg: ExperimentConfig) -> list[SuiteResult]:
    """Run one suite; returns one SuiteResult per output artifact."""
    if name == "charsum":
        artifact_tasks = _tasks_charsum(cfg)
    elif name == "coverage":
        artifact_tasks = {"coverage": _tasks_coverage(cfg)}
    else:
        builder = {
            "collisions": _tasks_collisions,
            "counterexample": _tasks_counterexample,
            "moments": _tasks_moments,
            "parseval": _tasks_parseval,
            "largevalues": _tasks_largevalues,
            "primecong": _tasks_primecong,
            "theta": _tasks_theta,
        }[name]
        artifact_tasks = {name: builder(cfg)}

    results = []
    for artifact, tasks in artifact_tasks.items():
        columns = _coverage_columns(cfg) if artifact == "coverage" else SUITE_COLUMNS[artifact]
        result = SuiteResult(artifact, columns)
        for outcome in _run_tasks(tasks, cfg.workers):
            result.timings.append({"key": outcome["key"], "ms": round(outcome["elapsed_ms"], 3)})
            if outcome["ok"]:
                result.rows.extend(outcome["rows"])
                log.info("%s: %s done in %.1f ms", artifact, outcome["key"], outcome["elapsed_ms"])
            else:
                result.row_errors.append({"key": outcome["key"], "error": outcome["error"]})
                log.warning("%s: %s failed: %s", artifact, outcome["key"], outcome["error"])
        if artifact == "theta":
            for row in result.rows:
                result.stdout_lines.append(f"{format_fraction(row['theta'])} = {row['theta_float']!r}")
        results.append(result)
    return results


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"
