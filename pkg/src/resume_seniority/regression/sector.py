"""One sector's model: stratified split, standardization, lambda choice, fit, evaluation."""

from __future__ import annotations

import json
import logging
import math
import zlib
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from .design import FEATURE_COLUMNS, FeatureRow, Standardizer, matrix
from .logistic import ConvergenceError, FitError, FittedModel, fit_l1_logistic, std_errors_active_set
from .metrics import EvalReport, evaluate
from .selection import select_lambda, stratified_split

logger = logging.getLogger(__name__)

MIN_ROWS = 50
TEST_FRACTION = 0.2

STATUS_OK = "ok"
STATUS_INSUFFICIENT = "insufficient-data"
STATUS_DEGENERATE = "degenerate"
STATUS_NOT_CONVERGED = "not-converged"


@dataclass
class SectorResult:
    sector: str
    status: str
    n_rows: int
    n_train: int = 0
    n_test: int = 0
    lam: Optional[float] = None
    model: Optional[FittedModel] = None
    report: Optional[EvalReport] = None
    cv_scores: Optional[List[float]] = None
    message: str = ""


def sector_seed(seed: int, sector: str) -> np.random.SeedSequence:
    # stable across processes (str hash is salted, crc32 is not)
    return np.random.SeedSequence([seed, zlib.crc32(sector.encode("utf-8"))])


def fit_sector(
    sector: str,
    rows: Sequence[FeatureRow],
    seed: int = 0,
    lam: Optional[float] = None,
    min_rows: int = MIN_ROWS,
) -> SectorResult:
    n = len(rows)
    if n < min_rows:
        logger.info("%s: %d rows < %d, skipped", sector, n, min_rows)
        return SectorResult(sector, STATUS_INSUFFICIENT, n, message=f"{n} usable rows (< {min_rows})")
    X, y = matrix(rows)
    if y.min() == y.max():
        return SectorResult(sector, STATUS_DEGENERATE, n, message="single-class labels")
    split_seq, cv_seq = sector_seed(seed, sector).spawn(2)
    train, test = stratified_split(y, TEST_FRACTION, np.random.default_rng(split_seq))
    if y[train].min() == y[train].max() or not test.any():
        return SectorResult(sector, STATUS_DEGENERATE, n, message="split left a single class")
    scaler = Standardizer.fit(X[train])
    Xtr, Xte = scaler.transform(X[train]), scaler.transform(X[test])
    cv_scores = None
    if lam is None:
        cv_seed = int(cv_seq.generate_state(1)[0])
        lam, cv_scores = select_lambda(Xtr, y[train], seed=cv_seed)
    status, message = STATUS_OK, ""
    try:
        model = fit_l1_logistic(Xtr, y[train], lam, feature_names=FEATURE_COLUMNS)
    except ConvergenceError as exc:
        model = exc.model
        status, message = STATUS_NOT_CONVERGED, str(exc)
        logger.warning("%s: %s", sector, exc)
    except FitError as exc:
        return SectorResult(sector, STATUS_DEGENERATE, n, message=str(exc))
    std_errors_active_set(model, Xtr, y[train])
    means, stds = scaler.to_dicts()
    model.means, model.stds, model.sector = means, stds, sector
    report = evaluate(model, Xte, y[test])
    return SectorResult(
        sector, status, n, int(train.sum()), int(test.sum()), lam, model, report, cv_scores, message
    )


def _num(x: Optional[float]):
    return None if x is None or math.isnan(x) else x


def model_to_dict(model: FittedModel) -> Dict[str, object]:
    return {
        "sector": model.sector,
        "lambda": model.lam,
        # key order is not preserved by sorted JSON output; this list fixes the column order
        "features": list(model.feature_names),
        "intercept": model.intercept,
        "intercept_stderr": _num(model.intercept_stderr),
        "coefficients": dict(zip(model.feature_names, (float(c) for c in model.coefficients))),
        "std_errors": {k: _num(v) for k, v in model.std_errors.items()},
        "standardization": {"mean": model.means, "std": model.stds},
        "n_train": model.n_train,
        "sweeps": model.sweeps,
    }


def model_from_dict(d: Dict[str, object]) -> FittedModel:
    coefs = d["coefficients"]
    names = list(d.get("features") or coefs)
    return FittedModel(
        feature_names=names,
        intercept=float(d["intercept"]),
        coefficients=np.array([coefs[k] for k in names], dtype=float),
        lam=float(d["lambda"]),
        std_errors={k: (math.nan if v is None else float(v)) for k, v in d["std_errors"].items()},
        intercept_stderr=None if d.get("intercept_stderr") is None else float(d["intercept_stderr"]),
        means=d["standardization"]["mean"],
        stds=d["standardization"]["std"],
        sector=d.get("sector"),
        n_train=int(d.get("n_train", 0)),
        sweeps=int(d.get("sweeps", 0)),
    )


def standardize_with(model: FittedModel, X: np.ndarray) -> np.ndarray:
    mu = np.array([model.means[k] for k in model.feature_names])
    sd = np.array([model.stds[k] for k in model.feature_names])
    return (X - mu) / sd


def model_json(model: FittedModel, extra: Optional[Dict[str, object]] = None) -> str:
    d = model_to_dict(model)
    if extra:
        d.update(extra)
    return json.dumps(d, indent=2, sort_keys=True) + "\n"
