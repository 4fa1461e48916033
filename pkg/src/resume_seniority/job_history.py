"""Job-history measures: job count, summed tenure and largest employment gap (all in months)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .resume import SNAPSHOT, DateRange, JobEntry, YearMonth


@dataclass(frozen=True)
class JobHistoryFeatures:
    num_jobs: int
    total_months: int
    largest_gap_months: int
    undated_jobs: int = 0


def months_between(a: YearMonth, b: YearMonth) -> int:
    """Signed month difference b - a; the same month gives 0."""
    return b.index - a.index


def _resolved(jobs: Sequence[JobEntry], snapshot: YearMonth) -> List[Tuple[YearMonth, YearMonth, int]]:
    out = []
    for pos, job in enumerate(jobs):
        dr: DateRange = job.date_range
        if dr is None:
            continue
        end = dr.resolved_end(snapshot)
        if end < dr.start:  # ongoing job that starts after the snapshot
            continue
        out.append((dr.start, end, pos))
    return out


def chronological(jobs: Sequence[JobEntry], snapshot: YearMonth = SNAPSHOT) -> List[int]:
    """Indices of dated jobs ordered by (start, end, list position)."""
    return [pos for _, _, pos in sorted(_resolved(jobs, snapshot))]


def total_job_time(jobs: Sequence[JobEntry], snapshot: YearMonth = SNAPSHOT) -> int:
    # overlapping jobs each contribute their full duration
    return sum(months_between(start, end) for start, end, _ in _resolved(jobs, snapshot))


def largest_gap(jobs: Sequence[JobEntry], snapshot: YearMonth = SNAPSHOT) -> int:
    """Largest positive distance from the latest end seen so far to the next job's start.

    Measuring against the running latest end (not just the previous job's end)
    keeps a job nested inside a longer one from opening a spurious gap.
    """
    spans = sorted(_resolved(jobs, snapshot))
    gap = 0
    latest_end = None
    for start, end, _ in spans:
        if latest_end is not None:
            gap = max(gap, months_between(latest_end, start))
        latest_end = end if latest_end is None else max(latest_end, end)
    return gap


def job_history_features(jobs: Sequence[JobEntry], snapshot: YearMonth = SNAPSHOT) -> JobHistoryFeatures:
    undated = sum(1 for j in jobs if j.date_range is None)
    return JobHistoryFeatures(
        num_jobs=len(jobs),
        total_months=total_job_time(jobs, snapshot),
        largest_gap_months=largest_gap(jobs, snapshot),
        undated_jobs=undated,
    )
