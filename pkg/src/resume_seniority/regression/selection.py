"""Stratified splits and cross-validated choice of the L1 strength."""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .logistic import ConvergenceError, FitError, fit_l1_logistic
from .metrics import confusion, macro_f1

logger = logging.getLogger(__name__)

LAMBDA_GRID = tuple(np.logspace(-4, 1, 20).tolist())
DEFAULT_LAMBDA = 1e-2
N_FOLDS = 5


def stratified_folds(y: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Fold id per row; each class is shuffled then dealt round-robin."""
    y = np.asarray(y).astype(int)
    fold = np.empty(len(y), dtype=int)
    offset = 0
    for cls in (0, 1):
        idx = np.nonzero(y == cls)[0]
        idx = idx[rng.permutation(len(idx))]
        fold[idx] = (np.arange(len(idx)) + offset) % k
        offset += len(idx)
    return fold


def stratified_split(y: np.ndarray, test_fraction: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Boolean train/test masks holding out ``test_fraction`` of each class."""
    y = np.asarray(y).astype(int)
    test = np.zeros(len(y), dtype=bool)
    for cls in (0, 1):
        idx = np.nonzero(y == cls)[0]
        idx = idx[rng.permutation(len(idx))]
        n_test = int(round(test_fraction * len(idx)))
        test[idx[:n_test]] = True
    return ~test, test


def select_lambda(
    X: np.ndarray,
    y: np.ndarray,
    seed: int = 0,
    grid: Sequence[float] = LAMBDA_GRID,
    n_folds: int = N_FOLDS,
) -> Tuple[float, List[float]]:
    """Grid value with the best mean held-out macro-F1 (ties -> larger lambda).

    Returns (lambda, mean score per grid point in ascending-lambda order). Falls back
    to DEFAULT_LAMBDA when stratified folds cannot hold both classes.
    """
    y = np.asarray(y).astype(int)
    grid = sorted(grid)
    counts = np.bincount(y, minlength=2)
    if counts.min() < n_folds or n_folds < 2:
        logger.warning("degenerate folds (class counts %s); using lambda=%g", counts.tolist(), DEFAULT_LAMBDA)
        return DEFAULT_LAMBDA, []
    rng = np.random.default_rng(seed)
    fold = stratified_folds(y, n_folds, rng)
    scores = np.zeros((n_folds, len(grid)))
    for f in range(n_folds):
        train, test = fold != f, fold == f
        yt = y[train]
        if yt.min() == yt.max():
            logger.warning("fold %d has a single class; using lambda=%g", f, DEFAULT_LAMBDA)
            return DEFAULT_LAMBDA, []
        warm = None
        # descending lambda with warm starts
        for g in range(len(grid) - 1, -1, -1):
            try:
                warm = fit_l1_logistic(X[train], yt, grid[g], warm_start=warm)
            except ConvergenceError as exc:
                warm = exc.model
            except FitError:
                logger.warning("fold %d fit failed; using lambda=%g", f, DEFAULT_LAMBDA)
                return DEFAULT_LAMBDA, []
            scores[f, g] = macro_f1(confusion(y[test], warm.predict(X[test])))
    mean = scores.mean(axis=0)
    best = mean.max()
    # largest lambda among the (numerically) tied best
    chosen = max(g for g in range(len(grid)) if mean[g] >= best - 1e-12)
    return float(grid[chosen]), mean.tolist()
