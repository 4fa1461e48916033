"""L1-penalized logistic regression by cyclic coordinate descent, plus post-selection standard errors."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)

TOL = 1e-7
MAX_SWEEPS = 10_000
_ARMIJO = 1e-3
_MAX_HALVINGS = 60
_NOISE_FLOOR = 1e-12


class FitError(RuntimeError):
    pass


class DegenerateFitError(FitError):
    """Labels contain a single class."""


class ConvergenceError(FitError):
    def __init__(self, message: str, model: "FittedModel", residual: float):
        super().__init__(message)
        self.model = model
        self.residual = residual


def sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def mean_nll(eta: np.ndarray, y: np.ndarray) -> float:
    return float(np.mean(np.logaddexp(0.0, eta) - y * eta))


def objective(eta: np.ndarray, y: np.ndarray, w: np.ndarray, lam: float) -> float:
    return mean_nll(eta, y) + lam * float(np.abs(w).sum())


@dataclass
class FittedModel:
    feature_names: List[str]
    intercept: float
    coefficients: np.ndarray
    lam: float
    std_errors: Dict[str, float] = field(default_factory=dict)
    intercept_stderr: Optional[float] = None
    means: Optional[Dict[str, float]] = None
    stds: Optional[Dict[str, float]] = None
    sector: Optional[str] = None
    n_train: int = 0
    sweeps: int = 0
    history: List[float] = field(default_factory=list, repr=False)

    @property
    def active(self) -> List[str]:
        return [n for n, c in zip(self.feature_names, self.coefficients) if c != 0.0]

    def coef(self, name: str) -> float:
        return float(self.coefficients[self.feature_names.index(name)])

    def decision(self, X: np.ndarray) -> np.ndarray:
        return self.intercept + X @ self.coefficients

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return sigmoid(self.decision(X))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_proba(X) >= 0.5).astype(int)


def soft_threshold(x: float, t: float) -> float:
    if x > t:
        return x - t
    if x < -t:
        return x + t
    return 0.0


def _line_search(eta, y, x, w_old, d, g, lam, nll):
    """Armijo backtracking on the 1-D composite objective along direction ``d``.

    ``nll`` is the current mean loss; returns (step, new eta, new mean loss).
    """
    base = nll + lam * abs(w_old)
    decrease = g * d + lam * (abs(w_old + d) - abs(w_old))
    if -decrease < _NOISE_FLOOR:
        # predicted change is below what mean_nll can resolve; the quadratic model is exact here
        new_eta = eta + d * x if x is not None else eta + d
        return 1.0, new_eta, mean_nll(new_eta, y)
    t = 1.0
    for _ in range(_MAX_HALVINGS):
        new_eta = eta + (t * d) * x if x is not None else eta + t * d
        new_nll = mean_nll(new_eta, y)
        if new_nll + lam * abs(w_old + t * d) <= base + _ARMIJO * t * decrease:
            return t, new_eta, new_nll
        t *= 0.5
    return 0.0, eta, nll


def fit_l1_logistic(
    X: np.ndarray,
    y: np.ndarray,
    lam: float,
    feature_names: Optional[Sequence[str]] = None,
    tol: float = TOL,
    max_sweeps: int = MAX_SWEEPS,
    warm_start: Optional["FittedModel"] = None,
    track_objective: bool = False,
) -> FittedModel:
    """Minimize mean logistic loss + lam * ||w||_1 with an unpenalized intercept.

    Each coordinate takes a proximal Newton step (soft-thresholded at the local
    curvature) guarded by Armijo backtracking, so the objective never increases.
    Converged when a full sweep moves no coordinate by more than ``tol``.
    """
    X = np.ascontiguousarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, d = X.shape
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    if n == 0:
        raise DegenerateFitError("no rows")
    if not ((y == 0) | (y == 1)).all():
        raise ValueError("labels must be 0/1")
    ybar = float(y.mean())
    if ybar in (0.0, 1.0):
        raise DegenerateFitError("labels contain a single class")
    names = list(feature_names) if feature_names is not None else [f"x{j}" for j in range(d)]

    if warm_start is not None:
        b = float(warm_start.intercept)
        w = np.array(warm_start.coefficients, dtype=float)
    else:
        b = math.log(ybar / (1.0 - ybar))
        w = np.zeros(d)
    cols = [X[:, j].copy() for j in range(d)]
    sq = [c * c for c in cols]
    eta = b + X @ w
    p = sigmoid(eta)
    nll = mean_nll(eta, y)
    history = [objective(eta, y, w, lam)] if track_objective else []

    sweeps = 0
    max_delta = math.inf
    while sweeps < max_sweeps:
        sweeps += 1
        max_delta = 0.0
        # intercept: unpenalized Newton step
        r = p - y
        g = float(r.mean())
        h = float((p * (1.0 - p)).mean())
        if h > 0 and g != 0.0:
            step = -g / h
            t, eta, nll = _line_search(eta, y, None, b, step, g, 0.0, nll)
            if t:
                b += t * step
                max_delta = max(max_delta, abs(t * step))
                p = sigmoid(eta)
        for j in range(d):
            xj = cols[j]
            r = p - y
            g = float(xj @ r) / n
            wj = w[j]
            if wj == 0.0 and abs(g) <= lam:
                continue
            h = float(sq[j] @ (p * (1.0 - p))) / n
            if h <= 0.0:
                if wj != 0.0:
                    eta = eta - wj * xj
                    w[j] = 0.0
                    p = sigmoid(eta)
                    nll = mean_nll(eta, y)
                continue
            z = soft_threshold(wj - g / h, lam / h)
            step = z - wj
            if step == 0.0:
                continue
            t, eta_new, nll_new = _line_search(eta, y, xj, wj, step, g, lam, nll)
            if t == 0.0:
                continue
            new = z if t == 1.0 else wj + t * step
            eta, nll = eta_new, nll_new
            w[j] = new
            p = sigmoid(eta)
            max_delta = max(max_delta, abs(new - wj))
        if track_objective:
            history.append(objective(eta, y, w, lam))
        if max_delta < tol:
            break

    model = FittedModel(
        feature_names=names, intercept=b, coefficients=w, lam=lam, n_train=n, sweeps=sweeps, history=history
    )
    if max_delta >= tol:
        raise ConvergenceError(
            f"no convergence after {sweeps} sweeps (max step {max_delta:.3g})", model, max_delta
        )
    return model


def subgradient_residual(model: FittedModel, X: np.ndarray, y: np.ndarray) -> float:
    """Largest violation of the L1 optimality conditions (0 at an exact optimum)."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    p = model.predict_proba(X)
    g = X.T @ (p - y) / n
    worst = abs(float(np.mean(p - y)))
    for gj, wj in zip(g, model.coefficients):
        if wj != 0.0:
            worst = max(worst, abs(gj + model.lam * math.copysign(1.0, wj)))
        else:
            worst = max(worst, max(0.0, abs(gj) - model.lam))
    return worst


def std_errors_active_set(model: FittedModel, X: np.ndarray, y: Optional[np.ndarray] = None) -> Dict[str, float]:
    """Standard errors from the unpenalized observed information on {intercept} + nonzero features.

    Sets ``model.intercept_stderr`` and ``model.std_errors`` and returns the latter.
    Features tied up in a singular direction of the information matrix get NaN.
    """
    X = np.asarray(X, dtype=float)
    active = [j for j, c in enumerate(model.coefficients) if c != 0.0]
    Xa = np.column_stack([np.ones(X.shape[0])] + [X[:, j] for j in active])
    p = model.predict_proba(X)
    wts = p * (1.0 - p)
    info = Xa.T @ (Xa * wts[:, None])
    evals, evecs = np.linalg.eigh(info)
    cutoff = max(float(evals.max()), 1.0) * 1e-10
    null = evals <= cutoff
    if null.any():
        affected = (np.abs(evecs[:, null]) > 1e-8).any(axis=1)
        inv = (evecs[:, ~null] / evals[~null]) @ evecs[:, ~null].T
        se = np.sqrt(np.clip(np.diag(inv), 0.0, None))
        se[affected] = np.nan
        logger.warning("singular information matrix; %d standard errors undefined", int(affected.sum()))
    else:
        inv = (evecs / evals) @ evecs.T
        se = np.sqrt(np.diag(inv))
    model.intercept_stderr = float(se[0])
    model.std_errors = {model.feature_names[j]: float(s) for j, s in zip(active, se[1:])}
    return model.std_errors
