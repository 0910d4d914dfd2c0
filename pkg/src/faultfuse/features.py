"""Per-statement fault features.

Three families are extracted from a dataset and concatenated into one
min-max-normalized matrix:

  sbfl  raw spectrum counts plus Tarantula / Ochiai / Jaccard / DStar(2)
  mbfl  mutant-kill aggregates (Ochiai-style per-mutant suspiciousness)
  tbfl  text metrics from the statement source

Degenerate 0/0 suspiciousness cells resolve to 0, so the matrix never holds
NaN or infinities.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import toylang
from .corpus.model import FaultDataset
from .errors import DimensionMismatchError, NoFailingTestsError

SBFL = "sbfl"
MBFL = "mbfl"
TBFL = "tbfl"


@dataclass(frozen=True)
class SpectrumCounts:
    ef: np.ndarray  # failing tests covering the statement
    ep: np.ndarray  # passing tests covering
    nf: np.ndarray  # failing tests not covering
    np: np.ndarray  # passing tests not covering
    total_failed: int
    total_passed: int


def spectrum_counts(ds: FaultDataset) -> SpectrumCounts:
    failed = ds.failed.astype(np.float64)
    passed = 1.0 - failed
    total_failed = int(failed.sum())
    total_passed = int(passed.sum())
    if total_failed == 0:
        raise NoFailingTestsError("spectrum counts need at least one failing test")
    cov = ds.coverage.astype(np.float64)
    ef = failed @ cov
    ep = passed @ cov
    return SpectrumCounts(ef, ep, total_failed - ef, total_passed - ep,
                          total_failed, total_passed)


def _safe_div(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.zeros_like(num, dtype=np.float64)
    nz = den > 0
    out[nz] = num[nz] / den[nz]
    return out


def tarantula(c: SpectrumCounts) -> np.ndarray:
    fail_rate = c.ef / c.total_failed
    pass_rate = c.ep / c.total_passed if c.total_passed > 0 else np.zeros_like(c.ep)
    return _safe_div(fail_rate, fail_rate + pass_rate)


def ochiai(c: SpectrumCounts) -> np.ndarray:
    return _safe_div(c.ef, np.sqrt(c.total_failed * (c.ef + c.ep)))


def jaccard(c: SpectrumCounts) -> np.ndarray:
    return _safe_div(c.ef, c.total_failed + c.ep)


def dstar(c: SpectrumCounts, star: int = 2) -> np.ndarray:
    num = c.ef**star
    den = c.ep + c.nf
    # x/0 with x > 0 degrades to x (unit epsilon denominator)
    out = num.copy().astype(np.float64)
    nz = den > 0
    out[nz] = num[nz] / den[nz]
    return out


def sbfl_features(c: SpectrumCounts) -> tuple[list[str], np.ndarray]:
    cols = [
        ("ef", c.ef),
        ("ep", c.ep),
        ("nf", c.nf),
        ("np", c.np),
        ("tarantula", tarantula(c)),
        ("ochiai", ochiai(c)),
        ("jaccard", jaccard(c)),
        ("dstar2", dstar(c, 2)),
    ]
    return [n for n, _ in cols], np.column_stack([v for _, v in cols])


def mbfl_features(ds: FaultDataset) -> tuple[list[str], np.ndarray]:
    """Mutant-kill aggregates per statement; statements without mutants get zeros."""
    n = ds.n_statements
    failed = ds.failed.astype(np.float64)
    passed = 1.0 - failed
    total_failed = float(failed.sum())

    max_susp = np.zeros(n)
    mean_susp = np.zeros(n)
    count = np.zeros(n)
    fail_kills = np.zeros(n)
    all_kills = np.zeros(n)
    susp_sum = np.zeros(n)
    for m in ds.mutants:
        kills = m.kills.astype(np.float64)
        akf = float(kills @ failed)
        akp = float(kills @ passed)
        denom = np.sqrt(total_failed * (akf + akp))
        susp = akf / denom if denom > 0 else 0.0
        s = m.statement_id
        count[s] += 1
        susp_sum[s] += susp
        max_susp[s] = max(max_susp[s], susp)
        fail_kills[s] += akf
        all_kills[s] += akf + akp
    has = count > 0
    mean_susp[has] = susp_sum[has] / count[has]
    fail_ratio = _safe_div(fail_kills, all_kills)
    names = ["max_mutant_susp", "mean_mutant_susp", "mutant_count", "fail_kill_ratio"]
    return names, np.column_stack([max_susp, mean_susp, count, fail_ratio])


def tbfl_features(ds: FaultDataset) -> tuple[list[str], np.ndarray]:
    tf = toylang.text_features(ds.source_lines())
    values = np.array(
        [
            [m.loc_weight, 1.0, m.variable_count, m.symbol_count, m.branch_paths]
            for m in tf.statements
        ],
        dtype=np.float64,
    )
    return ["line_length", "line_count", "variable_count", "symbol_count", "branch_paths"], values


def normalize_minmax(values: np.ndarray) -> np.ndarray:
    """Column-wise min-max to [0, 1]; constant columns map to all zeros."""
    lo = values.min(axis=0)
    hi = values.max(axis=0)
    span = hi - lo
    out = np.zeros_like(values, dtype=np.float64)
    nz = span > 0
    out[:, nz] = (values[:, nz] - lo[nz]) / span[nz]
    return out


@dataclass(frozen=True)
class FeatureMatrix:
    values: np.ndarray     # (statements, columns), normalized to [0, 1]
    names: tuple[str, ...]
    families: tuple[str, ...]

    def __post_init__(self):
        self.values.setflags(write=False)
        if self.values.shape[1] != len(self.names) or len(self.names) != len(self.families):
            raise DimensionMismatchError("feature metadata does not match value columns")
        assert np.isfinite(self.values).all(), "feature matrix holds non-finite entries"

    @property
    def n_columns(self) -> int:
        return self.values.shape[1]

    def family_columns(self, family: str) -> list[int]:
        return [i for i, f in enumerate(self.families) if f == family]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.names.index(name)]


def assemble_features(ds: FaultDataset) -> FeatureMatrix:
    counts = spectrum_counts(ds)
    sb_names, sb = sbfl_features(counts)
    mb_names, mb = mbfl_features(ds)
    tb_names, tb = tbfl_features(ds)
    values = normalize_minmax(np.hstack([sb, mb, tb]))
    names = tuple(sb_names + mb_names + tb_names)
    families = tuple([SBFL] * len(sb_names) + [MBFL] * len(mb_names) + [TBFL] * len(tb_names))
    return FeatureMatrix(values, names, families)


def save_features(matrix: FeatureMatrix, path) -> Path:
    out = Path(path)
    lines = [
        "statement_id," + ",".join(f"{fam}:{name}" for fam, name in zip(matrix.families, matrix.names))
    ]
    for i, row in enumerate(matrix.values):
        lines.append(f"{i}," + ",".join(repr(float(v)) for v in row))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return out


def load_features(path) -> FeatureMatrix:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")[1:]
    families = tuple(h.split(":", 1)[0] for h in header)
    names = tuple(h.split(":", 1)[1] for h in header)
    values = np.array(
        [[float(v) for v in line.split(",")[1:]] for line in lines[1:]], dtype=np.float64
    )
    return FeatureMatrix(values, names, families)
