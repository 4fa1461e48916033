"""Accuracy / macro-F1 evaluation and the majority-class baseline."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Dict

import numpy as np


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    macro_f1: float
    baseline_accuracy: float
    baseline_macro_f1: float
    confusion: Confusion

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


def confusion(y_true: np.ndarray, y_pred: np.ndarray) -> Confusion:
    y_true = np.asarray(y_true).astype(int)
    y_pred = np.asarray(y_pred).astype(int)
    return Confusion(
        tp=int(((y_true == 1) & (y_pred == 1)).sum()),
        fp=int(((y_true == 0) & (y_pred == 1)).sum()),
        tn=int(((y_true == 0) & (y_pred == 0)).sum()),
        fn=int(((y_true == 1) & (y_pred == 0)).sum()),
    )


def _f1(tp: int, fp: int, fn: int) -> float:
    denom = 2 * tp + fp + fn
    return 0.0 if tp == 0 else 2 * tp / denom


def macro_f1(c: Confusion) -> float:
    """Unweighted mean of the positive- and negative-class F1; a class never predicted scores 0."""
    return 0.5 * (_f1(c.tp, c.fp, c.fn) + _f1(c.tn, c.fn, c.fp))


def accuracy(c: Confusion) -> float:
    return (c.tp + c.tn) / c.n if c.n else 0.0


def majority_class(y: np.ndarray) -> int:
    # ties go to non-senior
    y = np.asarray(y)
    return int(y.sum() * 2 > len(y))


def _baseline(y: np.ndarray):
    pred = np.full(len(y), majority_class(y))
    c = confusion(y, pred)
    return accuracy(c), macro_f1(c), c


def naive_baseline(y: np.ndarray) -> EvalReport:
    if len(y) == 0:
        raise ValueError("no rows")
    acc, f1, c = _baseline(y)
    return EvalReport(acc, f1, acc, f1, c)


def evaluate_predictions(y: np.ndarray, pred: np.ndarray) -> EvalReport:
    if len(y) == 0:
        raise ValueError("no rows")
    c = confusion(y, pred)
    b_acc, b_f1, _ = _baseline(y)
    return EvalReport(accuracy(c), macro_f1(c), b_acc, b_f1, c)


def evaluate(model, X: np.ndarray, y: np.ndarray) -> EvalReport:
    return evaluate_predictions(y, model.predict(X))


def baseline_macro_f1_from_accuracy(p: float) -> float:
    """Macro-F1 of always predicting the majority class when it makes up a fraction ``p`` of rows."""
    return 0.5 * (2 * p / (1 + p))
