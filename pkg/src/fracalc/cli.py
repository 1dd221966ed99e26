"""Command-line front end.

Exit codes: 0 success, 1 a verified identity failed, 2 malformed
configuration, 3 a numerical precondition failed.
"""

from __future__ import annotations

import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import click
import numpy as np

from fracalc.core import Direction, Family, SampledFunction, reciprocal_gamma
from fracalc.dsl import FunctionSpec, parse_domain
from fracalc.errors import ConfigError, FracalcError
from fracalc.operators import FracSpec, OperatorResult, apply, rl_integral
from fracalc.oracle import NO_CLOSED_FORM
from fracalc.sobolev import (
    Side,
    SobolevSpec,
    fourier_seminorm,
    frac_sobolev_norm,
    gagliardo_seminorm,
    poincare_ratio,
    trace,
)
from fracalc.suites import Suite, SuiteSettings, WeakCase, run_suites

EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3

OPERATORS = {
    "rl-int": None,
    "rl-deriv": Family.RiemannLiouville,
    "caputo": Family.Caputo,
    "weak-caputo": Family.WeakCaputo,
    "gl": Family.GrunwaldLetnikov,
    "fourier": Family.Fourier,
}

NORMS = ("sobolev", "gagliardo", "fourier", "trace", "poincare")

DEFAULT_LADDER = "256,512,1024,2048,4096,8192"

#: relative start of the window on which convergence errors are measured
CONVERGENCE_OFFSET = 0.05
# relative errors below this are roundoff, so no order is estimated
ROUNDOFF_FLOOR = 1e-12


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on; embedded in every JSON output."""

    command: str
    params: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"command": self.command, "params": dict(sorted(self.params.items()))}


# {{{ helpers


def _dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write *text* to a temporary file next to *path*, then rename it."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, output: str | None) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        write_atomic(output, text)


def _merge_config(params: dict[str, Any], config_path: str | None) -> dict[str, Any]:
    """Overlay the keys of a JSON config file on the command-line values."""
    params = {k: v for k, v in params.items() if k != "config"}
    if config_path is None:
        return params
    try:
        data = json.loads(Path(config_path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config '{config_path}': {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")

    unknown = set(data) - set(params)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    params.update(data)
    return params


def _float(params: dict, key: str) -> float:
    try:
        value = float(params[key])
    except (TypeError, ValueError):
        raise ConfigError(f"'{key}' must be a number (got {params[key]!r})") from None
    if not math.isfinite(value):
        raise ConfigError(f"'{key}' must be finite")
    return value


def _int(params: dict, key: str) -> int:
    value = params[key]
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ConfigError(f"'{key}' must be an integer (got {value!r})")
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"'{key}' must be an integer (got {value!r})") from None


def _choice(params: dict, key: str, choices) -> str:
    value = params[key]
    if value not in choices:
        raise ConfigError(f"'{key}' must be one of {', '.join(choices)} (got {value!r})")
    return value


def _direction(params: dict) -> Direction:
    return Direction(_choice(params, "dir", [d.value for d in Direction]))


def _function(params: dict) -> FunctionSpec:
    if params.get("f") is None:
        raise ConfigError("a function spec is required (--f)")
    return FunctionSpec.parse(str(params["f"]))


def _compute_operator(f: SampledFunction, op: str, alpha: float,
                      direction: Direction) -> OperatorResult:
    family = OPERATORS[op]
    if family is None:
        return rl_integral(f, alpha, direction)
    return apply(f, FracSpec(alpha, direction, family))


def _rows_to_csv(header: list[str], rows: list[list[Any]]) -> str:
    def cell(v: Any) -> str:
        if isinstance(v, float):
            return repr(float(v))
        return str(v)

    lines = [",".join(header)] + [",".join(cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


# }}}


# {{{ commands


_common = [
    click.option("--config", "config", type=click.Path(dir_okay=False),
                 help="JSON file whose keys override the flags."),
    click.option("-o", "--output", default=None, help="Output path (stdout if omitted)."),
    click.option("--format", "format", default="csv", help="csv or json."),
]


def common_options(func):
    for option in reversed(_common):
        func = option(func)
    return func


@click.group()
@click.version_option(package_name="artifact", prog_name="fracalc")
def cli():
    """Fractional calculus operators and identity checks."""


@cli.command()
@click.option("--f", "f", default=None, help="Function spec, e.g. 'power:0.5'.")
@click.option("--domain", default="0,1,4096", help="a,b,n[,finite|line].")
@click.option("--op", default="rl-deriv", help=f"One of {', '.join(OPERATORS)}.")
@click.option("--alpha", default="0.5", help="Operator order.")
@click.option("--dir", "dir", default="left", help="left or right.")
@common_options
def compute(**params):
    """Apply one operator to a sampled function."""
    params = _merge_config(params, params.get("config"))
    fmt = _choice(params, "format", ["csv", "json"])
    op = _choice(params, "op", list(OPERATORS))
    alpha = _float(params, "alpha")
    direction = _direction(params)
    spec = _function(params)
    grid = parse_domain(str(params["domain"]))

    result = _compute_operator(spec.evaluate(grid), op, alpha, direction)
    if fmt == "csv":
        text = result.output.to_csv()
    else:
        data = result.to_json_dict()
        data["config"] = RunConfig("compute", params).to_json_dict()
        text = _dumps(data)
    _emit(text, params["output"])


@cli.command()
@click.option("--suite", default="all",
              help=f"One of {', '.join(s.value for s in Suite)} or all.")
@click.option("--alpha", default="0.5", help="Order used by the suites.")
@click.option("--n", "n", default="4096", help="Grid intervals.")
@click.option("--case", default="all",
              help=f"Weak-derivative case: {', '.join(c.value for c in WeakCase)} or all.")
@click.option("--seed", default="0", help="Seed for randomized test pairs.")
@click.option("--tolerances", default=None, help="JSON object of tolerance overrides.")
@common_options
def verify(**params):
    """Run verification suites; exit 1 if any identity fails."""
    params = _merge_config(params, params.get("config"))
    fmt = _choice(params, "format", ["csv", "json"])
    suite = _choice(params, "suite", [s.value for s in Suite] + ["all"])
    case = _choice(params, "case", [c.value for c in WeakCase] + ["all"])

    tolerances = params["tolerances"] or {}
    if isinstance(tolerances, str):
        try:
            tolerances = json.loads(tolerances)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--tolerances is not valid JSON: {exc}") from None
    if not isinstance(tolerances, dict):
        raise ConfigError("tolerances must be a JSON object")

    settings = SuiteSettings(
        alpha=_float(params, "alpha"),
        n=_int(params, "n"),
        seed=_int(params, "seed"),
        cases=tuple(WeakCase) if case == "all" else (WeakCase(case),),
        tolerances={k: float(v) for k, v in tolerances.items()},
    )
    suites = list(Suite) if suite == "all" else [Suite(suite)]
    results = run_suites(suites, settings)

    passed = all(r.passed for reports in results.values() for r in reports)
    for name, reports in results.items():
        for r in reports:
            verdict = "PASS" if r.passed else "FAIL"
            note = f" ({r.message})" if r.message else ""
            click.echo(f"{verdict} {name} {r.identity_name} "
                       f"residual={r.residual_norm:.3e} tolerance={r.tolerance:g}{note}",
                       err=True)

    if fmt == "json":
        text = _dumps({
            "config": RunConfig("verify", params).to_json_dict(),
            "pass": passed,
            "suites": {name: [r.to_json_dict() for r in reports]
                       for name, reports in results.items()},
        })
    else:
        rows = [[name, r.identity_name, r.residual_norm, r.tolerance,
                 "true" if r.passed else "false"]
                for name, reports in results.items() for r in reports]
        text = _rows_to_csv(["suite", "identity", "residual", "tolerance", "pass"], rows)
    if params["output"] is not None:
        _emit(text, params["output"])

    if not passed:
        raise SystemExit(EXIT_IDENTITY_FAILED)


def _exact(spec: FunctionSpec, grid, op: str, alpha: float, direction: Direction):
    case = spec.oracle(grid)
    if case is None or case.direction is not direction:
        raise ConfigError(
            "convergence needs a single-term power, constant, kernel or step spec "
            "whose direction matches --dir")
    x = grid.x
    if op == "rl-int":
        return case.rl_integral(x, alpha)
    if op in ("rl-deriv", "gl"):
        return case.rl_derivative(x, alpha)
    if op == "caputo":
        start = grid.a if direction is Direction.Left else grid.b
        f_start = float(case.value(start))
        if not math.isfinite(f_start):
            raise ConfigError("Caputo needs a function finite at the initial endpoint")
        exact = case.rl_derivative(x, alpha)
        if exact is NO_CLOSED_FORM:
            return exact
        t = x - grid.a if direction is Direction.Left else grid.b - x
        with np.errstate(divide="ignore"):
            return exact - f_start * t ** (-alpha) * reciprocal_gamma(1.0 - alpha)
    raise ConfigError(f"convergence does not support --op {op}")


@cli.command()
@click.option("--f", "f", default=None, help="Single-term function spec with an oracle.")
@click.option("--domain", default="0,1", help="a,b (the ladder sets n).")
@click.option("--op", default="rl-int", help="rl-int, rl-deriv, caputo or gl.")
@click.option("--alpha", default="0.5", help="Operator order.")
@click.option("--dir", "dir", default="left", help="left or right.")
@click.option("--ns", default=DEFAULT_LADDER, help="Comma-separated grid sizes.")
@common_options
def convergence(**params):
    """Error against the closed form along a refinement ladder."""
    params = _merge_config(params, params.get("config"))
    fmt = _choice(params, "format", ["csv", "json"])
    op = _choice(params, "op", ["rl-int", "rl-deriv", "caputo", "gl"])
    alpha = _float(params, "alpha")
    direction = _direction(params)
    spec = _function(params)

    ends = str(params["domain"]).split(",")
    if len(ends) < 2:
        raise ConfigError("convergence --domain must be 'a,b'")
    try:
        sizes = [int(v) for v in str(params["ns"]).split(",")]
    except ValueError:
        raise ConfigError(f"--ns must be comma-separated integers (got {params['ns']!r})") from None
    if len(sizes) < 2 or sorted(sizes) != sizes:
        raise ConfigError("--ns needs at least two increasing sizes")

    errors = []
    for n in sizes:
        grid = parse_domain(f"{ends[0]},{ends[1]},{n}")
        exact = _exact(spec, grid, op, alpha, direction)
        if exact is NO_CLOSED_FORM:
            raise ConfigError("no closed form for this operator and function")
        numeric = _compute_operator(spec.evaluate(grid), op, alpha, direction).output
        t = grid.x - grid.a if direction is Direction.Left else grid.b - grid.x
        sel = numeric.mask & (t >= CONVERGENCE_OFFSET * grid.length) & np.isfinite(exact)
        scale = float(np.max(np.abs(exact[sel])))
        diff = float(np.max(np.abs(numeric.values[sel] - exact[sel])))
        errors.append(diff / scale if scale > 0.0 else diff)

    rows = []
    for k, (n, err) in enumerate(zip(sizes, errors)):
        if k == 0:
            order: Any = ""
        elif err <= ROUNDOFF_FLOOR and errors[k - 1] <= ROUNDOFF_FLOOR:
            order = "exact"
        elif err <= ROUNDOFF_FLOOR or errors[k - 1] <= ROUNDOFF_FLOOR:
            order = ""
        else:
            order = math.log2(errors[k - 1] / err) / math.log2(n / sizes[k - 1])
        rows.append([n, err, order])

    if fmt == "csv":
        text = _rows_to_csv(["n", "error", "order"], rows)
    else:
        text = _dumps({
            "config": RunConfig("convergence", params).to_json_dict(),
            "rows": [{"n": n, "error": e, "order": o if o != "" else None}
                     for n, e, o in rows],
        })
    _emit(text, params["output"])


@cli.command()
@click.option("--f", "f", default=None, help="Function spec.")
@click.option("--domain", default="0,1,4096", help="a,b,n[,finite|line].")
@click.option("--alpha", default="0.5", help="Order (σ for gagliardo, s for fourier).")
@click.option("--p", "p", default="2", help="Integrability exponent (inf allowed).")
@click.option("--side", default="left", help="left, right or symmetric.")
@click.option("--norm", default="sobolev", help=f"One of {', '.join(NORMS)}.")
@common_options
def norm(**params):
    """Fractional Sobolev norms, seminorms, traces and Poincaré ratios."""
    params = _merge_config(params, params.get("config"))
    fmt = _choice(params, "format", ["csv", "json"])
    kind = _choice(params, "norm", list(NORMS))
    side = Side(_choice(params, "side", [s.value for s in Side]))
    alpha = _float(params, "alpha")
    try:
        p = float(params["p"])
    except (TypeError, ValueError):
        raise ConfigError(f"'p' must be a number or inf (got {params['p']!r})") from None
    u = _function(params).evaluate(parse_domain(str(params["domain"])))

    values: dict[str, Any] = {}
    if kind == "sobolev":
        values["value"] = frac_sobolev_norm(u, SobolevSpec(alpha, p, side))
    elif kind == "gagliardo":
        values["value"] = gagliardo_seminorm(u, alpha, p)
    elif kind == "fourier":
        values["value"] = fourier_seminorm(u, alpha)
    elif kind == "trace":
        result = trace(u, SobolevSpec(alpha, p, side))
        values["value"], values["ratio"] = result.value, result.ratio
    else:
        if side is Side.Symmetric:
            raise ConfigError("the Poincaré ratio needs --side left or right")
        result = poincare_ratio(u, alpha, p, Direction(side.value))
        values.update(result.to_json_dict())
        values["value"] = values.pop("ratio")

    if fmt == "csv":
        text = _rows_to_csv(["quantity", "value"],
                            [[k, "" if v is None else v] for k, v in sorted(values.items())])
    else:
        text = _dumps({"config": RunConfig("norm", params).to_json_dict(),
                       "norm": kind, **values})
    _emit(text, params["output"])


# }}}


def main(argv: list[str] | None = None) -> int:
    """Entry point mapping every failure onto the documented exit codes."""
    try:
        cli.main(args=argv, prog_name="fracalc", standalone_mode=False)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_OK
        if argv is not None:
            return code
        sys.exit(code)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return _finish(EXIT_CONFIG, argv)
    except click.ClickException as exc:
        exc.show()
        return _finish(EXIT_CONFIG, argv)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return _finish(EXIT_CONFIG, argv)
    except (FracalcError, OverflowError, ValueError, ArithmeticError) as exc:
        click.echo(f"precondition failed: {exc}", err=True)
        return _finish(EXIT_PRECONDITION, argv)
    return _finish(EXIT_OK, argv)


def _finish(code: int, argv: list[str] | None) -> int:
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
