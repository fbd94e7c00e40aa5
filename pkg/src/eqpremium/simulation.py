"""Monte Carlo check of the analytic moments.

A long sampled path of the chain carries realized growth, equity, and
bond returns; their empirical statistics must agree with the stationary
formulas up to sampling noise.  The engine reports i.i.d.-formula
standard errors and flags them as such, since serial dependence in the
chain widens the true errors somewhat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .economy import ConsumptionStats, MarkovEconomy, Preferences
from .errors import DegenerateMomentsError, ValidationError
from .pricing import price_assets

GENERATOR_NAME = "numpy.random.default_rng (PCG64)"


@dataclass(frozen=True, eq=False)
class SimulationResult:
    """Empirical statistics of one simulated path.

    standard_errors holds i.i.d.-formula estimates, and
    standard_errors_iid stays True to flag that simplification: positive
    serial correlation in the chain makes the true errors larger by a
    modest constant factor, so consistency checks should use a generous
    multiple.
    """

    steps: int
    seed: int
    generator: str
    initial_state: int | None
    empirical_pi: np.ndarray
    empirical_stats: ConsumptionStats
    empirical_R_e: float
    empirical_sigma_e: float
    empirical_R_f: float
    standard_errors: dict
    standard_errors_iid: bool = True

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "seed": self.seed,
            "generator": self.generator,
            "initial_state": self.initial_state,
            "empirical_pi": self.empirical_pi.tolist(),
            "empirical_stats": self.empirical_stats.to_dict(),
            "empirical_R_e": self.empirical_R_e,
            "empirical_sigma_e": self.empirical_sigma_e,
            "empirical_R_f": self.empirical_R_f,
            "standard_errors": dict(self.standard_errors),
            "standard_errors_iid": self.standard_errors_iid,
        }


def sample_path(econ: MarkovEconomy, steps: int, seed: int,
                initial_state: int | None = None) -> np.ndarray:
    """States s_0 .. s_steps as an int array of length steps + 1.

    s_0 is drawn from pi unless initial_state pins it (useful when
    isolating the transition kernel from the initial draw).  The uniform
    stream is consumed in a fixed order, one draw per transition, so a
    given seed always yields the same path.
    """
    if steps < 1:
        raise ValidationError(f"steps must be >= 1, got {steps!r}")
    n = econ.n
    rng = np.random.default_rng(seed)
    if initial_state is None:
        start = int(np.searchsorted(np.cumsum(econ.pi), rng.random(), side="right"))
        start = min(start, n - 1)
    else:
        if not (0 <= int(initial_state) < n):
            raise ValidationError(
                f"initial_state must lie in [0, {n - 1}], got {initial_state!r}"
            )
        start = int(initial_state)
    uniforms = rng.random(steps)
    cum_rows = tuple(tuple(np.cumsum(row)) for row in econ.phi)
    states = np.empty(steps + 1, dtype=np.int64)
    states[0] = start
    s = start
    last = n - 1
    out = states
    for t in range(steps):
        u = uniforms[t]
        row = cum_rows[s]
        j = 0
        while j < last and u > row[j]:
            j += 1
        s = j
        out[t + 1] = s
    return states


def _path_stats(values: np.ndarray) -> tuple[float, float, float]:
    """Mean, population stddev, and lag-1 autocorrelation of a series."""
    mean = float(values.mean())
    dev = values - mean
    denom = float(dev @ dev)
    if denom <= 0.0:
        raise DegenerateMomentsError(
            "simulated growth is constant, empirical correlation undefined"
        )
    std = math.sqrt(denom / values.size)
    corr = float(dev[:-1] @ dev[1:]) / denom
    return mean, std, corr


def simulate(econ: MarkovEconomy, prefs: Preferences, steps: int, seed: int,
             initial_state: int | None = None) -> SimulationResult:
    """Simulate the chain and score realized moments against pricing.

    Prices are solved once up front (propagating any no-equilibrium
    failure); realized returns then replay the per-transition formulas
    along the path.  Standard errors use the i.i.d. formulas and are
    flagged as such on the result.
    """
    pricing = price_assets(econ, prefs)
    states = sample_path(econ, steps, seed, initial_state)
    depart, arrive = states[:-1], states[1:]

    growth = econ.lam[arrive] - 1.0
    xi_hat, delta_hat, sigma_c_hat = _path_stats(growth)

    counts = np.bincount(arrive, minlength=econ.n).astype(float)
    pi_hat = counts / steps

    re_path = pricing.r_e[depart, arrive]
    re_hat = float(re_path.mean())
    re_dev = re_path - re_hat
    sigma_e_hat = math.sqrt(float(re_dev @ re_dev) / steps)

    rf_path = pricing.R_f_state[depart]
    rf_hat = float(rf_path.mean())

    root_n = math.sqrt(steps)
    growth_dev_sq = (growth - xi_hat) ** 2
    se = {
        "pi": list(np.sqrt(pi_hat * (1.0 - pi_hat) / steps)),
        "xi": delta_hat / root_n,
        "delta": float(np.std(growth_dev_sq)) / (2.0 * delta_hat * root_n),
        "sigma_c": 1.0 / root_n,
        "R_e": float(np.std(re_path)) / root_n,
        "sigma_e": float(np.std(re_dev**2)) / (2.0 * sigma_e_hat * root_n)
        if sigma_e_hat > 0.0 else 0.0,
        "R_f": float(np.std(rf_path)) / root_n,
    }

    return SimulationResult(
        steps=steps,
        seed=seed,
        generator=GENERATOR_NAME,
        initial_state=None if initial_state is None else int(initial_state),
        empirical_pi=pi_hat,
        empirical_stats=ConsumptionStats(xi=xi_hat, delta=delta_hat,
                                         sigma_c=sigma_c_hat),
        empirical_R_e=re_hat,
        empirical_sigma_e=sigma_e_hat,
        empirical_R_f=rf_hat,
        standard_errors=se,
    )
