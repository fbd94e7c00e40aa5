"""Sweep equity risk aversion and locate the Sharpe-maximizing tangency.

Each feasible alpha_e contributes one (sigma_e, R_e) point; together they
trace how the priced return moves against its volatility.  The tangency
is the point whose ray from the riskless anchor (0, R_f) has maximal
slope.  Alphas without an equilibrium are recorded, not dropped silently,
so a curve can have gaps at the low-alpha end.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .economy import MarkovEconomy
from .errors import (
    AllInfeasibleError,
    NoEquilibriumError,
    UnattainableReturnError,
    ValidationError,
)
from .pricing import equity_return_stdev, equity_returns, solve_equity_prices

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_REFINE_TOL = 1e-4
_MATCH_TOL = 1e-6


@dataclass(frozen=True)
class FrontierPoint:
    alpha_e: float
    sigma_e: float
    R_e: float
    sharpe: float


@dataclass(frozen=True, eq=False)
class FrontierCurve:
    """Feasible sweep points plus the riskless anchor.

    points are sorted by alpha_e and all carry sigma_e > 0.  infeasible
    lists every swept alpha_e that had no equilibrium.  The economy and
    beta used for the sweep ride along so the tangency search can
    re-price between grid points; curves assembled by hand leave them
    None and get grid-resolution answers.
    """

    points: tuple[FrontierPoint, ...]
    anchor: tuple[float, float]
    infeasible: tuple[float, ...] = ()
    econ: MarkovEconomy | None = None
    beta: float | None = None
    step: float | None = None
    alpha_range: tuple[float, float] | None = None

    def to_csv(self) -> str:
        lines = ["alpha_e,sigma_e,R_e,sharpe"]
        for p in self.points:
            lines.append(",".join(format(v, ".10g")
                                  for v in (p.alpha_e, p.sigma_e, p.R_e, p.sharpe)))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TangencyResult:
    """Sharpe-maximizing point and how well it satisfies tangency.

    tangency_residual is |dR/dsigma - (R - R_f)/sigma| from a central
    finite difference along the curve; at_boundary flags an optimum
    pinned to an end of the swept range, where the true maximum may lie
    outside it.
    """

    alpha_star: float
    sigma_star: float
    R_star: float
    sharpe: float
    tangency_residual: float
    at_boundary: bool

    def to_dict(self) -> dict:
        return {
            "alpha_star": self.alpha_star,
            "sigma_star": self.sigma_star,
            "R_star": self.R_star,
            "sharpe": self.sharpe,
            "tangency_residual": self.tangency_residual,
            "at_boundary": self.at_boundary,
        }


def _price_point(econ: MarkovEconomy, beta: float, alpha: float):
    """(sigma_e, R_e) at one alpha; NoEquilibriumError passes through."""
    w = solve_equity_prices(econ, alpha, beta)
    r_e, _, r_e_mean = equity_returns(econ, w)
    return equity_return_stdev(econ, r_e, r_e_mean), r_e_mean


def sweep_frontier(econ: MarkovEconomy, beta: float, r_f: float,
                   alpha_range: tuple[float, float] = (0.0, 12.0),
                   step: float = 0.01) -> FrontierCurve:
    """Evaluate the curve on a uniform alpha grid.

    The grid runs from alpha_range[0] in increments of step for as many
    whole steps as fit; a zero-width range yields a single point.  Points
    with no equilibrium (or zero volatility) land in infeasible.  Raises
    AllInfeasibleError when nothing on the grid prices.
    """
    lo, hi = float(alpha_range[0]), float(alpha_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0.0 or hi < lo:
        raise ValidationError(f"bad alpha range {alpha_range!r}")
    if not (step > 0.0 and math.isfinite(step)):
        raise ValidationError(f"step must be > 0, got {step!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    points: list[FrontierPoint] = []
    infeasible: list[float] = []
    for k in range(count):
        alpha = lo + k * step
        try:
            sigma_e, r_e_mean = _price_point(econ, beta, alpha)
        except NoEquilibriumError:
            infeasible.append(alpha)
            continue
        if sigma_e <= 0.0:
            infeasible.append(alpha)
            continue
        points.append(FrontierPoint(alpha, sigma_e, r_e_mean,
                                    (r_e_mean - r_f) / sigma_e))
    if not points:
        raise AllInfeasibleError(
            f"no alpha in [{lo:g}, {hi:g}] admits an equilibrium at beta = {beta:g}"
        )
    return FrontierCurve(points=tuple(points), anchor=(0.0, r_f),
                         infeasible=tuple(infeasible), econ=econ, beta=beta,
                         step=step, alpha_range=(lo, hi))


def _golden_max(fn, lo: float, hi: float, tol: float) -> float:
    """Abscissa of the maximum of a unimodal fn on [lo, hi]."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fn(x1)
    return 0.5 * (a + b)


def find_tangency(curve: FrontierCurve, r_f: float) -> TangencyResult:
    """Locate the point of maximal Sharpe ratio (R_e - r_f) / sigma_e.

    Starts from the best grid point (ties resolve to the smallest alpha),
    then refines by golden-section between its neighbors to 1e-4 in alpha
    when the curve can re-price itself.  The refined point never loses to
    a grid point on Sharpe; if refinement regresses, the grid point is
    kept.
    """
    pts = curve.points
    if not pts:
        raise ValidationError("cannot search an empty curve")
    sharpes = [(p.R_e - r_f) / p.sigma_e for p in pts]
    best = max(range(len(pts)), key=lambda i: (sharpes[i], -pts[i].alpha_e))
    at_boundary = best == 0 or best == len(pts) - 1
    alpha_star = pts[best].alpha_e
    sigma_star, r_star = pts[best].sigma_e, pts[best].R_e
    sharpe_star = sharpes[best]

    can_refine = curve.econ is not None and curve.beta is not None
    spacing = curve.step if curve.step else None

    def adjacent(i: int, j: int) -> bool:
        if spacing is None:
            return True
        return abs(pts[j].alpha_e - pts[i].alpha_e) <= 1.5 * spacing

    if can_refine and not at_boundary:
        lo = pts[best - 1].alpha_e if adjacent(best - 1, best) else alpha_star
        hi = pts[best + 1].alpha_e if adjacent(best, best + 1) else alpha_star
        if hi > lo:
            def sharpe_at(alpha: float) -> float:
                try:
                    sigma, mean = _price_point(curve.econ, curve.beta, alpha)
                except NoEquilibriumError:
                    return -math.inf
                return (mean - r_f) / sigma if sigma > 0.0 else -math.inf

            candidate = _golden_max(sharpe_at, lo, hi, _REFINE_TOL)
            try:
                sigma_c, mean_c = _price_point(curve.econ, curve.beta, candidate)
                sharpe_c = (mean_c - r_f) / sigma_c
            except NoEquilibriumError:
                sharpe_c = -math.inf
            if sharpe_c >= sharpe_star:
                alpha_star, sigma_star, r_star = candidate, sigma_c, mean_c
                sharpe_star = sharpe_c

    residual = _tangency_residual(curve, r_f, best, alpha_star,
                                  sigma_star, r_star)
    return TangencyResult(alpha_star=alpha_star, sigma_star=sigma_star,
                          R_star=r_star, sharpe=sharpe_star,
                          tangency_residual=residual, at_boundary=at_boundary)


def _tangency_residual(curve: FrontierCurve, r_f: float, best: int,
                       alpha_star: float, sigma_star: float,
                       r_star: float) -> float:
    """|dR/dsigma - ray slope| by central differences along the curve."""
    ray = (r_star - r_f) / sigma_star
    h = curve.step if curve.step else 0.01
    if curve.econ is not None and curve.beta is not None:
        try:
            s_minus, r_minus = _price_point(curve.econ, curve.beta,
                                            max(alpha_star - h, 0.0))
            s_plus, r_plus = _price_point(curve.econ, curve.beta, alpha_star + h)
            if s_plus != s_minus:
                return abs((r_plus - r_minus) / (s_plus - s_minus) - ray)
        except NoEquilibriumError:
            pass
    pts = curve.points
    lo, hi = max(best - 1, 0), min(best + 1, len(pts) - 1)
    if pts[hi].sigma_e == pts[lo].sigma_e:
        return math.nan
    slope = (pts[hi].R_e - pts[lo].R_e) / (pts[hi].sigma_e - pts[lo].sigma_e)
    return abs(slope - ray)


def match_actual_return(econ: MarkovEconomy, beta: float, target_r_e: float,
                        alpha_range: tuple[float, float] = (0.0, 12.0),
                        step: float = 0.01, tol: float = _MATCH_TOL) -> float:
    """Smallest alpha_e whose priced mean return equals target_r_e.

    Scans the grid for sign changes of R_e - target and bisects the first
    bracketing interval to |R_e - target| < tol.  Warns when several
    disjoint brackets exist, returning the one at smallest alpha.  Raises
    UnattainableReturnError when the target is never attained on the
    feasible range.
    """
    lo, hi = float(alpha_range[0]), float(alpha_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0.0 or hi < lo:
        raise ValidationError(f"bad alpha range {alpha_range!r}")
    if not (step > 0.0 and math.isfinite(step)):
        raise ValidationError(f"step must be > 0, got {step!r}")
    if not math.isfinite(target_r_e):
        raise ValidationError("target return must be finite")

    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    grid: list[tuple[float, float]] = []
    for k in range(count):
        alpha = lo + k * step
        try:
            _, r_e_mean = _price_point(econ, beta, alpha)
        except NoEquilibriumError:
            continue
        grid.append((alpha, r_e_mean))
    if not grid:
        raise AllInfeasibleError(
            f"no alpha in [{lo:g}, {hi:g}] admits an equilibrium at beta = {beta:g}"
        )

    roots: list[tuple[float, float] | float] = []
    for idx, (alpha, value) in enumerate(grid):
        if abs(value - target_r_e) < tol:
            if roots and isinstance(roots[-1], float) \
                    and abs(roots[-1] - alpha) <= 1.5 * step:
                continue
            roots.append(alpha)
        elif idx + 1 < len(grid):
            alpha_next, value_next = grid[idx + 1]
            if alpha_next - alpha > 1.5 * step:
                continue
            if (value - target_r_e) * (value_next - target_r_e) < 0.0:
                roots.append((alpha, alpha_next))
    if not roots:
        attained = [v for _, v in grid]
        raise UnattainableReturnError(
            f"return {target_r_e:g} is not attained; feasible range covers "
            f"[{min(attained):g}, {max(attained):g}]"
        )
    if len(roots) > 1:
        warnings.warn(
            f"{len(roots)} alpha intervals attain return {target_r_e:g}; "
            "returning the smallest",
            stacklevel=2,
        )
    first = roots[0]
    if isinstance(first, float):
        return first
    return _bisect_return(econ, beta, target_r_e, first[0], first[1], tol)


def _bisect_return(econ: MarkovEconomy, beta: float, target: float,
                   lo: float, hi: float, tol: float) -> float:
    def f(alpha: float) -> float:
        return _price_point(econ, beta, alpha)[1] - target

    f_lo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) < tol or hi - lo < 1e-13:
            return mid
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def tangent_line(tangency: TangencyResult, r_f: float, sigma: float) -> float:
    """Expected return on the ray from (0, r_f) through the tangency."""
    if sigma < 0.0:
        raise ValidationError(f"volatility must be >= 0, got {sigma!r}")
    slope = (tangency.R_star - r_f) / tangency.sigma_star
    return r_f + slope * sigma
