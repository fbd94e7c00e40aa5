"""Markov consumption economy: chain primitives, CRRA utility, moments.

The economy is a finite-state Markov chain whose states pay gross
consumption growth factors.  Everything downstream (pricing, calibration,
simulation) consumes the three objects defined here: the economy itself,
the preference triple, and the stationary moments of the growth process.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateMomentsError,
    NoUniqueStationaryError,
    ValidationError,
)

_ROW_SUM_TOL = 1e-12
_FIXED_POINT_TOL = 1e-10
_EIGENVALUE_TOL = 1e-9


def validate_transition_matrix(phi) -> np.ndarray:
    """Return phi as a float matrix, enforcing row-stochastic structure."""
    phi = np.asarray(phi, dtype=float)
    if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
        raise ValidationError(f"transition matrix must be square, got shape {phi.shape}")
    if phi.shape[0] < 1:
        raise ValidationError("transition matrix must have at least one state")
    if not np.all(np.isfinite(phi)):
        raise ValidationError("transition matrix contains non-finite entries")
    if np.any(phi < 0.0) or np.any(phi > 1.0):
        raise ValidationError("transition probabilities must lie in [0, 1]")
    row_sums = phi.sum(axis=1)
    bad = np.abs(row_sums - 1.0) > _ROW_SUM_TOL
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ValidationError(
            f"row {i} of the transition matrix sums to {row_sums[i]!r}, not 1"
        )
    return phi


def stationary_distribution(phi) -> np.ndarray:
    """Stationary distribution pi with pi = Phi^T pi, sum(pi) = 1.

    For two states the balance equations give pi in closed form.  Larger
    chains go through the eigenvector of Phi^T at eigenvalue 1; a repeated
    unit eigenvalue or a zero entry in the candidate vector marks the
    chain as reducible and is rejected, since no unique strictly positive
    stationary vector exists there.  Periodic irreducible chains (single
    unit eigenvalue, positive vector) are accepted.
    """
    phi = validate_transition_matrix(phi)
    n = phi.shape[0]
    if n == 1:
        return np.array([1.0])
    if n == 2:
        leave_0, leave_1 = phi[0, 1], phi[1, 0]
        if leave_0 <= 0.0 or leave_1 <= 0.0:
            raise NoUniqueStationaryError(
                "chain is reducible: at least one state never transitions out"
            )
        total = leave_0 + leave_1
        return np.array([leave_1 / total, leave_0 / total])

    values, vectors = np.linalg.eig(phi.T)
    unit = np.abs(values - 1.0) < _EIGENVALUE_TOL
    if int(unit.sum()) != 1:
        raise NoUniqueStationaryError(
            f"found {int(unit.sum())} unit eigenvalues, need exactly 1 "
            "for a unique stationary distribution"
        )
    vec = np.real(vectors[:, unit][:, 0])
    vec = vec / vec.sum()
    if np.any(vec < _EIGENVALUE_TOL):
        raise NoUniqueStationaryError(
            "chain is reducible: stationary weight vanishes on some state"
        )
    residual = np.max(np.abs(phi.T @ vec - vec))
    if residual > _FIXED_POINT_TOL:
        raise NoUniqueStationaryError(
            f"stationary fixed point residual {residual:.3e} exceeds tolerance"
        )
    return vec / vec.sum()


@dataclass(frozen=True, eq=False)
class MarkovEconomy:
    """An n-state chain paying gross growth factor lam[i] in state i.

    phi[i, j] is the probability of moving from state i to state j.  The
    stationary distribution pi is recomputed from phi when not supplied;
    a supplied pi must satisfy the fixed-point equation.  For two-state
    economies state 0 is the expansion state, so lam[0] > lam[1].
    """

    phi: np.ndarray
    lam: np.ndarray
    pi: np.ndarray | None = None

    def __post_init__(self):
        phi = validate_transition_matrix(self.phi)
        lam = np.array(self.lam, dtype=float)
        n = phi.shape[0]
        if lam.shape != (n,):
            raise ValidationError(
                f"growth factors have shape {lam.shape}, expected ({n},)"
            )
        if not np.all(np.isfinite(lam)) or np.any(lam <= 0.0):
            raise ValidationError("growth factors must be finite and positive")
        if n == 2 and lam[0] <= lam[1]:
            raise ValidationError(
                "state 0 must carry the larger growth factor (lam[0] > lam[1])"
            )
        if self.pi is None:
            pi = stationary_distribution(phi)
        else:
            pi = np.array(self.pi, dtype=float)
            if pi.shape != (n,):
                raise ValidationError(f"pi has shape {pi.shape}, expected ({n},)")
            if np.any(pi < 0.0) or abs(pi.sum() - 1.0) > _FIXED_POINT_TOL:
                raise ValidationError("pi must be a probability vector summing to 1")
            if np.max(np.abs(phi.T @ pi - pi)) > _FIXED_POINT_TOL:
                raise ValidationError("supplied pi is not stationary for phi")
        for name, arr in (("phi", phi), ("lam", lam), ("pi", pi)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.phi.shape[0]


@dataclass(frozen=True)
class Preferences:
    """CRRA coefficients for equity (alpha_e) and bond (alpha_f) pricing,
    plus the subjective discount factor beta."""

    alpha_e: float
    alpha_f: float
    beta: float

    def __post_init__(self):
        if not (self.alpha_e >= 0.0 and math.isfinite(self.alpha_e)):
            raise ValidationError(f"alpha_e must be >= 0, got {self.alpha_e!r}")
        if not (self.alpha_f >= 0.0 and math.isfinite(self.alpha_f)):
            raise ValidationError(f"alpha_f must be >= 0, got {self.alpha_f!r}")
        if not (0.0 < self.beta <= 1.0):
            raise ValidationError(f"beta must lie in (0, 1], got {self.beta!r}")


@dataclass(frozen=True)
class ConsumptionStats:
    """Stationary moments of net consumption growth.

    xi is the mean, delta the standard deviation, sigma_c the first-order
    serial correlation.  delta must be strictly positive: a degenerate
    growth process has no well-defined correlation and cannot anchor a
    calibration.
    """

    xi: float
    delta: float
    sigma_c: float

    def __post_init__(self):
        for name in ("xi", "delta", "sigma_c"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.delta <= 0.0:
            raise ValidationError(f"delta must be > 0, got {self.delta!r}")
        if abs(self.sigma_c) >= 1.0:
            raise ValidationError(f"|sigma_c| must be < 1, got {self.sigma_c!r}")

    def to_dict(self) -> dict:
        return {"xi": self.xi, "delta": self.delta, "sigma_c": self.sigma_c}


def consumption_moments(econ: MarkovEconomy) -> ConsumptionStats:
    """Mean, stddev, and lag-1 autocorrelation of net growth under pi.

    The correlation weights each transition (i, j) by pi_i * phi_ij, so
    for a two-state symmetric chain it collapses to det(phi).  Raises
    DegenerateMomentsError when all states share one growth factor, since
    the correlation is then 0/0.
    """
    net = econ.lam - 1.0
    xi = float(econ.pi @ net)
    dev = net - xi
    var = float(econ.pi @ dev**2)
    if var <= 0.0:
        raise DegenerateMomentsError(
            "growth is constant across states, serial correlation undefined"
        )
    delta = math.sqrt(var)
    cov = float((econ.pi[:, None] * econ.phi * np.outer(dev, dev) / var).sum())
    return ConsumptionStats(xi=xi, delta=delta, sigma_c=cov)


def crra_utility(c: float, alpha: float) -> float:
    """U(c) = (c**(1 - alpha) - 1) / (1 - alpha), log at alpha = 1.

    Computed through expm1 so the value stays accurate as alpha
    approaches 1 from either side.
    """
    if not (c > 0.0 and math.isfinite(c)):
        raise ValidationError(f"consumption must be > 0, got {c!r}")
    if not (alpha >= 0.0 and math.isfinite(alpha)):
        raise ValidationError(f"alpha must be >= 0, got {alpha!r}")
    if alpha == 1.0:
        return math.log(c)
    return math.expm1((1.0 - alpha) * math.log(c)) / (1.0 - alpha)


def crra_discount_ratio(c: float, alpha: float) -> float:
    """Marginal utility ratio (1 + 1/c)**(-alpha), i.e. U'(c + 1) / U'(c)."""
    if not (c > 0.0 and math.isfinite(c)):
        raise ValidationError(f"consumption must be > 0, got {c!r}")
    if not (alpha >= 0.0 and math.isfinite(alpha)):
        raise ValidationError(f"alpha must be >= 0, got {alpha!r}")
    return (1.0 + 1.0 / c) ** (-alpha)


def economy_to_dict(econ: MarkovEconomy) -> dict:
    return {
        "n": econ.n,
        "phi": econ.phi.tolist(),
        "lambda": econ.lam.tolist(),
        "pi": econ.pi.tolist(),
    }


def economy_from_dict(doc: dict) -> MarkovEconomy:
    """Build an economy from a JSON document; pi is optional."""
    try:
        phi = doc["phi"]
        lam = doc["lambda"]
    except KeyError as exc:
        raise ValidationError(f"economy document is missing field {exc}") from None
    pi = doc.get("pi")
    econ = MarkovEconomy(phi=np.asarray(phi, dtype=float),
                         lam=np.asarray(lam, dtype=float),
                         pi=None if pi is None else np.asarray(pi, dtype=float))
    if "n" in doc and int(doc["n"]) != econ.n:
        raise ValidationError(
            f"economy document says n={doc['n']} but phi is {econ.n}x{econ.n}"
        )
    return econ


def preferences_to_dict(prefs: Preferences) -> dict:
    return {"alpha_e": prefs.alpha_e, "alpha_f": prefs.alpha_f, "beta": prefs.beta}


def preferences_from_dict(doc: dict) -> Preferences:
    try:
        return Preferences(
            alpha_e=float(doc["alpha_e"]),
            alpha_f=float(doc.get("alpha_f", 0.0)),
            beta=float(doc["beta"]),
        )
    except KeyError as exc:
        raise ValidationError(f"preferences document is missing field {exc}") from None
