"""Feature rows for the seniority regression and their CSV form."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..education import DegreeLevel
from ..language.features import REGRESSED_FEATURES

EDUCATION_ORDER = (
    DegreeLevel.ASSOCIATES,
    DegreeLevel.BACHELORS,
    DegreeLevel.CERTIFICATE,
    DegreeLevel.DOCTORATE,
    DegreeLevel.HIGH_SCHOOL,
    DegreeLevel.MASTERS,
    DegreeLevel.NONE,
    DegreeLevel.OTHER,
)
EDUCATION_COLUMNS = tuple(f"education_{lvl.value}" for lvl in EDUCATION_ORDER)
JOB_COLUMNS = ("num_jobs", "total_months", "largest_gap_months")
CAPITAL_COLUMNS = ("num_skills", "num_awards", "num_certifications", "num_publications", "num_patents")

FEATURE_COLUMNS: Tuple[str, ...] = (
    ("previous_seniority",) + JOB_COLUMNS + EDUCATION_COLUMNS + CAPITAL_COLUMNS + tuple(REGRESSED_FEATURES)
)
BINARY_COLUMNS = frozenset(("previous_seniority",) + EDUCATION_COLUMNS)
CONTINUOUS_COLUMNS = tuple(c for c in FEATURE_COLUMNS if c not in BINARY_COLUMNS)
ID_COLUMNS = ("id", "sector", "current_seniority")
CSV_HEADER = ID_COLUMNS + FEATURE_COLUMNS


@dataclass(frozen=True)
class FeatureRow:
    id: str
    sector: str
    current_seniority: int
    values: Tuple[float, ...]  # aligned with FEATURE_COLUMNS

    def __getitem__(self, name: str) -> float:
        return self.values[FEATURE_COLUMNS.index(name)]

    def as_dict(self) -> Dict[str, object]:
        d: Dict[str, object] = {"id": self.id, "sector": self.sector, "current_seniority": self.current_seniority}
        d.update(zip(FEATURE_COLUMNS, self.values))
        return d


def education_indicators(level: DegreeLevel) -> Tuple[float, ...]:
    return tuple(1.0 if lvl is level else 0.0 for lvl in EDUCATION_ORDER)


def matrix(rows: Sequence[FeatureRow]) -> Tuple[np.ndarray, np.ndarray]:
    X = np.array([r.values for r in rows], dtype=float).reshape(len(rows), len(FEATURE_COLUMNS))
    y = np.array([r.current_seniority for r in rows], dtype=float)
    return X, y


def group_by_sector(rows: Iterable[FeatureRow]) -> Dict[str, List[FeatureRow]]:
    out: Dict[str, List[FeatureRow]] = {}
    for r in rows:
        out.setdefault(r.sector, []).append(r)
    return out


class Standardizer:
    """z-scores the continuous columns; binary columns pass through untouched."""

    def __init__(self, means: np.ndarray, stds: np.ndarray):
        self.means = means
        self.stds = stds

    @classmethod
    def fit(cls, X: np.ndarray, columns: Sequence[str] = FEATURE_COLUMNS) -> "Standardizer":
        means = np.zeros(X.shape[1])
        stds = np.ones(X.shape[1])
        for j, name in enumerate(columns):
            if name in BINARY_COLUMNS:
                continue
            means[j] = X[:, j].mean()
            sd = X[:, j].std()
            # constant columns are centred only
            stds[j] = sd if sd > 0 else 1.0
        return cls(means, stds)

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self.means) / self.stds

    def to_dicts(self, columns: Sequence[str] = FEATURE_COLUMNS):
        return dict(zip(columns, self.means.tolist())), dict(zip(columns, self.stds.tolist()))


def _fmt(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def write_features_csv(rows: Iterable[FeatureRow], fh, preamble: Optional[str] = None) -> int:
    if preamble:
        fh.write(preamble)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    n = 0
    for r in rows:
        w.writerow([r.id, r.sector, r.current_seniority] + [_fmt(v) for v in r.values])
        n += 1
    return n


def read_features_csv(fh) -> List[FeatureRow]:
    lines = (line for line in fh if not line.startswith("#"))
    reader = csv.reader(lines)
    header = tuple(next(reader))
    if header != CSV_HEADER:
        missing = set(CSV_HEADER) - set(header)
        raise ValueError(f"unexpected feature header; missing {sorted(missing)}")
    rows = []
    for rec in reader:
        rows.append(FeatureRow(rec[0], rec[1], int(rec[2]), tuple(float(v) for v in rec[3:])))
    return rows


def features_csv_text(rows: Iterable[FeatureRow], preamble: Optional[str] = None) -> str:
    buf = io.StringIO()
    write_features_csv(rows, buf, preamble)
    return buf.getvalue()
