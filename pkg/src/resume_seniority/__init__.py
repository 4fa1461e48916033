"""Resume feature extraction and per-sector seniority regression."""

__version__ = "0.1.0"
