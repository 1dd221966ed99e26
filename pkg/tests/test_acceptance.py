"""Acceptance criteria, one check per criterion.

Each check returns ``(passed, detail)``. Under pytest every criterion is a
test and the verdict lines are printed in the terminal summary; run as a
script it prints the lines and exits non-zero on any failure.
"""

from __future__ import annotations

import sys
import time
from collections.abc import Callable

import numpy as np
import pytest

from fracalc import (
    Direction,
    Grid,
    exterior_extension,
    ftfc_constant,
    h_alpha_equivalence_ratio,
    kernel_function,
    rl_derivative,
    rl_integral,
    sample,
)
from fracalc.calculus import ResidualReport, bump
from fracalc.errors import ExtensionConditionError
from fracalc.oracle import power_law_derivative, power_law_integral
from fracalc.sobolev import (
    DIVERGENCE_GROWTH,
    pollution_slope,
    poincare_bound,
    poincare_ratio,
    sobolev_conjugate_check,
    step_norm_regime,
)
from fracalc.suites import (
    LINE_BUMPS,
    SMOOTH_FAMILY,
    VANISHING_FAMILY,
    Suite,
    SuiteSettings,
    _line_bump,
    _subcritical_p,
    run_suite,
)

ALPHAS = (0.25, 0.5, 0.75)
N = 4096

#: verdict lines collected for the terminal summary
RESULTS: dict[int, str] = {}


def _reports(suite: Suite, prefixes: tuple[str, ...] = ("",)) -> list[ResidualReport]:
    out = []
    for alpha in ALPHAS:
        out += [r for r in run_suite(suite, SuiteSettings(alpha=alpha, n=N))
                if r.identity_name.startswith(prefixes)]
    return out


def _summarise(reports: list[ResidualReport]) -> tuple[bool, str]:
    failed = [r.identity_name for r in reports if not r.passed]
    # rejection checks pass on a large residual, so they do not rank as worst
    ranked = [r for r in reports if "expect_rejection" not in r.diagnostics] or reports
    worst = max(ranked, key=lambda r: r.residual_norm / r.tolerance if r.tolerance else 0.0)
    detail = (f"{len(reports)} checks, worst {worst.identity_name} "
              f"residual={worst.residual_norm:.2e} tol={worst.tolerance:g}")
    if failed:
        detail += f"; failed: {', '.join(failed)}"
    return not failed, detail


def oracle_agreement() -> tuple[bool, str]:
    start = time.perf_counter()
    grid = Grid(0.0, 1.0, N)
    sel = grid.x >= 0.05
    worst = 0.0
    for alpha in ALPHAS:
        for mu in (0.0, 0.5, 1.0, 2.0):
            f = sample(lambda x, mu=mu: x**mu, grid)
            pairs = (
                (rl_integral(f, alpha).output, power_law_integral(mu, alpha)(grid.x)),
                (rl_derivative(f, alpha).output, power_law_derivative(mu, alpha)(grid.x)),
            )
            for numeric, exact in pairs:
                rel = np.abs(numeric.values[sel] - exact[sel]) / np.abs(exact[sel])
                worst = max(worst, float(np.max(rel)))
    elapsed = time.perf_counter() - start
    return worst <= 1e-3 and elapsed <= 60.0, \
        f"max relative error {worst:.2e} (tol 1e-3), {elapsed:.1f} s (limit 60 s)"


def null_space() -> tuple[bool, str]:
    return _summarise(_reports(Suite.Ftfc, ("null-space",)))


def ftfc_round_trip() -> tuple[bool, str]:
    return _summarise(_reports(Suite.Ftfc, ("ftfc-round-trip", "ftfc-reconstruction")))


def ftfc_kernel_constant() -> tuple[bool, str]:
    grid = Grid(0.0, 1.0, N)
    constants = [ftfc_constant(kernel_function(grid, a), a, Direction.Left) for a in ALPHAS]
    worst = max(abs(c - 1.0) for c in constants)
    return worst <= 1e-2, "c = " + ", ".join(f"{c:.6f}" for c in constants) + " (tol 1e-2)"


def equivalences() -> tuple[bool, str]:
    return _summarise(_reports(Suite.Equivalences))


def calculus_rules() -> tuple[bool, str]:
    return _summarise(_reports(Suite.Product) + _reports(Suite.Chain) + _reports(Suite.Ibp))


def weak_battery() -> tuple[bool, str]:
    return _summarise(_reports(Suite.Weak))


def mollifier() -> tuple[bool, str]:
    return _summarise(_reports(Suite.Mollify))


def plancherel() -> tuple[bool, str]:
    line = SuiteSettings(n=N).line_grid()
    ratios = [h_alpha_equivalence_ratio(_line_bump(line, name), a)
              for a in ALPHAS for name in LINE_BUMPS]
    worst = max(abs(r - 1.0) for r in ratios)
    return worst <= 0.02, \
        f"{len(LINE_BUMPS)} profiles x {len(ALPHAS)} orders, worst |ratio-1| {worst:.2e} (tol 2e-2)"


def regime_dichotomy() -> tuple[bool, str]:
    ok = True
    parts = []
    for alpha in ALPHAS:
        stable = step_norm_regime(alpha, max(1.0, 0.5 / alpha))
        diverging = step_norm_regime(alpha, 4.0 / alpha)
        ok &= (not stable.divergent and max(stable.growth) < DIVERGENCE_GROWTH
               and min(diverging.growth) >= DIVERGENCE_GROWTH)
        parts.append(f"a={alpha}: stable growth {max(stable.growth):.3f}, "
                     f"divergent growth {min(diverging.growth):.3f}")
    return ok, "; ".join(parts)


def poincare() -> tuple[bool, str]:
    grid = Grid(0.0, 1.0, N)
    worst = 0.0
    for alpha in ALPHAS:
        bound = poincare_bound(grid, alpha)
        # a nonzero start value puts t^-α in the derivative, so p must keep αp < 1
        cases = [(func, _subcritical_p(alpha)) for func in SMOOTH_FAMILY.values()]
        cases += [(func, 2.0) for func in VANISHING_FAMILY.values()]
        for func, p in cases:
            worst = max(worst, poincare_ratio(sample(func, grid), alpha, p).ratio / bound)
    return worst <= 1.05, f"worst ratio/bound {worst:.3f} (limit 1.05)"


def pollution() -> tuple[bool, str]:
    grid = Grid(0.0, 1.0, N)
    phi = sample(lambda x: bump(x, 0.5, 0.25), grid)
    distances = np.geomspace(2.0, 100.0, 40)
    worst = 0.0
    for alpha in ALPHAS:
        for direction in Direction:
            source = phi if direction is Direction.Left else phi.mirrored()
            slope = pollution_slope(source, alpha, direction, distances)
            worst = max(worst, abs(slope / -(1.0 + alpha) - 1.0))
    return worst <= 0.05, f"worst relative slope error {worst:.2e} (tol 5e-2)"


def sobolev_conjugate() -> tuple[bool, str]:
    line = SuiteSettings(n=N).line_grid()
    reports = [sobolev_conjugate_check(_line_bump(line, "narrow"), a, _subcritical_p(a))
               for a in ALPHAS]
    return _summarise(reports)


def exterior_gate() -> tuple[bool, str]:
    one = sample(lambda x: 1.0 + 0.0 * x, Grid(0.0, 1.0, 1024))
    accepted = exterior_extension(one, 0.25, 2.0, 8.0)
    codes = []
    for args in ((0.5, 2.0, 8.0), (0.25, 2.0, 4.0)):
        try:
            exterior_extension(one, *args)
            codes.append(None)
        except ExtensionConditionError as exc:
            codes.append(exc.code)
    ok = np.isfinite(accepted.norm_ratio) and codes == ["ALPHA_P", "MU_TOO_SMALL"]
    return ok, f"accepted with norm ratio {accepted.norm_ratio:.3f}; rejection codes {codes}"


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]]]] = {
    1: ("oracle agreement", oracle_agreement),
    2: ("kernel null space", null_space),
    3: ("round trip and reconstruction", ftfc_round_trip),
    4: ("kernel constant calibration", ftfc_kernel_constant),
    5: ("operator equivalences", equivalences),
    6: ("product, chain and parts residuals", calculus_rules),
    7: ("weak derivative battery", weak_battery),
    8: ("mollifier commutation", mollifier),
    9: ("Plancherel equivalence", plancherel),
    10: ("step regime dichotomy", regime_dichotomy),
    11: ("Poincare bound", poincare),
    12: ("pollution far field", pollution),
    13: ("Sobolev conjugate scaling", sobolev_conjugate),
    14: ("exterior extension gate", exterior_gate),
}


def _run(number: int) -> bool:
    name, check = CRITERIA[number]
    try:
        passed, detail = check()
    except Exception as exc:  # a crash is a failure with its reason
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    line = f"{'PASS' if passed else 'FAIL'} criterion {number:2d} {name}: {detail}"
    RESULTS[number] = line
    print(line)
    return passed


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number: int) -> None:
    assert _run(number), RESULTS[number]


if __name__ == "__main__":
    sys.exit(0 if all([_run(k) for k in sorted(CRITERIA)]) else 1)
