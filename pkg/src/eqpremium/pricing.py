"""Asset pricing on the Markov economy.

Equity is a claim on the consumption stream, so its state price is quoted
as a price-dividend ratio w_i.  The riskless bond pays one unit of
consumption next period.  Separate risk-aversion coefficients price the
two assets: alpha_e for equity, alpha_f for the bond.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .economy import MarkovEconomy, Preferences
from .errors import NoEquilibriumError, ValidationError

_RESIDUAL_TOL = 1e-10


def _check_coefficients(alpha: float, beta: float) -> None:
    if not (alpha >= 0.0 and math.isfinite(alpha)):
        raise ValidationError(f"risk aversion must be >= 0, got {alpha!r}")
    if not (0.0 < beta <= 1.0):
        raise ValidationError(f"beta must lie in (0, 1], got {beta!r}")


def discounted_payoff_matrix(econ: MarkovEconomy, alpha_e: float) -> np.ndarray:
    """A_ij = phi_ij * lam_j**(1 - alpha_e), the growth-adjusted kernel."""
    return econ.phi * econ.lam[None, :] ** (1.0 - alpha_e)


def solve_equity_prices(econ: MarkovEconomy, alpha_e: float, beta: float) -> np.ndarray:
    """Price-dividend ratios w solving w = beta * A (w + 1).

    Parameters
    ----------
    econ : MarkovEconomy
    alpha_e : float
        Risk aversion applied to equity payoffs.
    beta : float
        Subjective discount factor in (0, 1].

    Returns
    -------
    numpy.ndarray
        Strictly positive w, one entry per state.

    Raises
    ------
    NoEquilibriumError
        When beta * rho(A) >= 1 (the price series diverges) or the
        algebraic solution is not strictly positive.  The error carries
        beta * rho(A) as a diagnostic.
    """
    _check_coefficients(alpha_e, beta)
    a = discounted_payoff_matrix(econ, alpha_e)
    beta_rho = beta * float(np.max(np.abs(np.linalg.eigvals(a))))
    if beta_rho >= 1.0 - 1e-14:
        raise NoEquilibriumError(
            f"no equilibrium: beta * rho(A) = {beta_rho:.6f} >= 1 "
            f"at alpha_e = {alpha_e:g}",
            beta_rho=beta_rho,
        )
    n = econ.n
    rhs = beta * a @ np.ones(n)
    try:
        w = np.linalg.solve(np.eye(n) - beta * a, rhs)
    except np.linalg.LinAlgError:
        raise NoEquilibriumError(
            f"equity price system is singular, beta * rho(A) = {beta_rho:.6f}",
            beta_rho=beta_rho,
        ) from None
    if not np.all(w > 0.0):
        raise NoEquilibriumError(
            f"equity price system has a non-positive solution, "
            f"beta * rho(A) = {beta_rho:.6f}",
            beta_rho=beta_rho,
        )
    residual = np.max(np.abs(w - beta * a @ (w + 1.0)))
    if residual > _RESIDUAL_TOL:
        raise NoEquilibriumError(
            f"equity price residual {residual:.3e} exceeds tolerance",
            beta_rho=beta_rho,
        )
    return w


def equity_returns(econ: MarkovEconomy, w: np.ndarray):
    """Per-transition, per-state, and stationary expected equity returns.

    r_e[i, j] = lam_j * (w_j + 1) / w_i - 1 realizes on the move i -> j.
    Returns the matrix r_e, the conditional means per departure state,
    and the pi-weighted overall mean.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (econ.n,):
        raise ValidationError(f"w has shape {w.shape}, expected ({econ.n},)")
    if np.any(w <= 0.0):
        raise ValidationError("price-dividend ratios must be strictly positive")
    r_e = econ.lam[None, :] * (w[None, :] + 1.0) / w[:, None] - 1.0
    r_e_state = (econ.phi * r_e).sum(axis=1)
    return r_e, r_e_state, float(econ.pi @ r_e_state)


def equity_return_stdev(econ: MarkovEconomy, r_e: np.ndarray, r_e_mean: float) -> float:
    """Stationary stddev of the realized return, weights pi_i * phi_ij."""
    r_e = np.asarray(r_e, dtype=float)
    if r_e.shape != (econ.n, econ.n):
        raise ValidationError(f"r_e has shape {r_e.shape}, expected square of n")
    var = float((econ.pi[:, None] * econ.phi * (r_e - r_e_mean) ** 2).sum())
    return math.sqrt(max(var, 0.0))


def bond_prices(econ: MarkovEconomy, alpha_f: float, beta: float) -> np.ndarray:
    """p_i = beta * sum_j phi_ij * lam_j**(-alpha_f).

    At alpha_f = 0 the weights sum to one, so the price is beta in every
    state; that case is returned exactly rather than through the product,
    keeping the riskless benchmark free of rounding noise.
    """
    _check_coefficients(alpha_f, beta)
    if alpha_f == 0.0:
        return np.full(econ.n, beta)
    return beta * econ.phi @ econ.lam ** (-alpha_f)


def bond_returns(econ: MarkovEconomy, p_f: np.ndarray):
    """Per-state yields 1/p_i - 1 and their stationary mean."""
    p_f = np.asarray(p_f, dtype=float)
    if p_f.shape != (econ.n,):
        raise ValidationError(f"p_f has shape {p_f.shape}, expected ({econ.n},)")
    if np.any(p_f <= 0.0):
        raise ValidationError("bond prices must be strictly positive")
    r_f_state = 1.0 / p_f - 1.0
    return r_f_state, float(econ.pi @ r_f_state)


@dataclass(frozen=True, eq=False)
class PricingSolution:
    """Everything priced at one preference triple."""

    w: np.ndarray
    r_e: np.ndarray
    R_e_state: np.ndarray
    R_e: float
    sigma_e: float
    p_f: np.ndarray
    R_f_state: np.ndarray
    R_f: float

    def to_dict(self) -> dict:
        return {
            "w": self.w.tolist(),
            "r_e": self.r_e.tolist(),
            "R_e_state": self.R_e_state.tolist(),
            "R_e": self.R_e,
            "sigma_e": self.sigma_e,
            "p_f": self.p_f.tolist(),
            "R_f_state": self.R_f_state.tolist(),
            "R_f": self.R_f,
        }


def price_assets(econ: MarkovEconomy, prefs: Preferences) -> PricingSolution:
    """Solve equity and bond prices jointly and bundle the results."""
    w = solve_equity_prices(econ, prefs.alpha_e, prefs.beta)
    r_e, r_e_state, r_e_mean = equity_returns(econ, w)
    sigma_e = equity_return_stdev(econ, r_e, r_e_mean)
    p_f = bond_prices(econ, prefs.alpha_f, prefs.beta)
    r_f_state, r_f_mean = bond_returns(econ, p_f)
    return PricingSolution(
        w=w,
        r_e=r_e,
        R_e_state=r_e_state,
        R_e=r_e_mean,
        sigma_e=sigma_e,
        p_f=p_f,
        R_f_state=r_f_state,
        R_f=r_f_mean,
    )
