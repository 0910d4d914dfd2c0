"""Ranking metrics and evaluation reports.

Ranks are midranks over descending suspiciousness (tied scores share the mean
of their occupied positions), which keeps Top-N, MAR/MFR, and the
Mann-Whitney AUC mutually consistent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus.model import FaultDataset
from .errors import NoFaultsError, SingleClassError
from .features import dstar, spectrum_counts, tarantula

BASELINES = ("tarantula", "dstar")


def rank_statements(scores) -> np.ndarray:
    """Midranks, rank 1 = highest score."""
    s = np.asarray(scores, dtype=np.float64)
    order = np.argsort(-s, kind="stable")
    ranks = np.empty(s.shape[0], dtype=np.float64)
    i = 0
    while i < s.shape[0]:
        j = i
        while j + 1 < s.shape[0] and s[order[j + 1]] == s[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def auc(scores, labels) -> float:
    """Mann-Whitney statistic: P(score(pos) > score(neg)), ties count half."""
    s = np.asarray(scores, dtype=np.float64)
    y = np.asarray(labels)
    pos = s[y == 1]
    neg = s[y != 1]
    if pos.size == 0 or neg.size == 0:
        raise SingleClassError("AUC needs both classes")
    ranks = rank_statements(-s)  # ascending midranks
    r_pos = ranks[np.asarray(y) == 1].sum()
    u = r_pos - pos.size * (pos.size + 1) / 2.0
    return float(u / (pos.size * neg.size))


def accuracy_stability(fold_accuracies) -> tuple[float, float]:
    """(mean accuracy, population standard deviation)."""
    accs = np.asarray(fold_accuracies, dtype=np.float64)
    mean = float(accs.mean())
    return mean, float(np.sqrt(np.mean((accs - mean) ** 2)))


@dataclass
class RankingReport:
    model: str
    scores: list[float]
    ranks: list[float]
    fault_ids: list[int]
    first_rank: float           # best rank among faulty statements
    average_rank: float         # mean rank of faulty statements
    top1: int
    top3: int
    top5: int
    auc: float
    clf_acc: float | None = None
    stability: float | None = None
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "scores": self.scores,
            "ranks": self.ranks,
            "fault_ids": self.fault_ids,
            "first_rank": self.first_rank,
            "average_rank": self.average_rank,
            "top1": self.top1,
            "top3": self.top3,
            "top5": self.top5,
            "auc": self.auc,
            "clf_acc": self.clf_acc,
            "stability": self.stability,
            "metadata": self.metadata,
        }


def build_report(model: str, scores, ds: FaultDataset, metadata: dict | None = None,
                 clf_acc: float | None = None, stability: float | None = None) -> RankingReport:
    if not ds.faults:
        raise NoFaultsError(f"dataset has no labeled faults ({metadata or ''})")
    s = np.asarray(scores, dtype=np.float64)
    ranks = rank_statements(s)
    fault_ranks = ranks[list(ds.faults)]
    first = float(fault_ranks.min())
    average = float(fault_ranks.mean())
    return RankingReport(
        model=model,
        scores=[float(v) for v in s],
        ranks=[float(v) for v in ranks],
        fault_ids=list(ds.faults),
        first_rank=first,
        average_rank=average,
        top1=int(first <= 1),
        top3=int(first <= 3),
        top5=int(first <= 5),
        auc=auc(s, ds.labels),
        clf_acc=clf_acc,
        stability=stability,
        metadata=metadata or {},
    )


def baseline_rankers(ds: FaultDataset) -> dict[str, RankingReport]:
    """Tarantula and DStar reports through the shared metric pipeline."""
    counts = spectrum_counts(ds)
    scores = {"tarantula": tarantula(counts), "dstar": dstar(counts, 2)}
    return {name: build_report(name, s, ds) for name, s in scores.items()}


def aggregate_reports(reports: list[RankingReport]) -> dict:
    """Fault-level aggregates across datasets: Top-N counts, MFR, MAR, mean AUC."""
    if not reports:
        raise NoFaultsError("no reports to aggregate")
    n = len(reports)
    top1 = sum(r.top1 for r in reports)
    return {
        "faults": n,
        "top1": top1,
        "top3": sum(r.top3 for r in reports),
        "top5": sum(r.top5 for r in reports),
        "mfr": sum(r.first_rank for r in reports) / n,
        "mar": sum(r.average_rank for r in reports) / n,
        "auc": sum(r.auc for r in reports) / n,
        "loc_acc@1": top1 / n,
    }


def time_accounting(optimizer: str, evaluation_count: int, generations: int,
                    n_instances: int, avg_instance_seconds: float | None = None) -> dict:
    """Evaluation-count accounting, plus total time = avg * instances when measured."""
    out = {
        "optimizer": optimizer,
        "evaluation_count": evaluation_count,
        "generations": generations,
        "n_instances": n_instances,
    }
    if avg_instance_seconds is not None:
        out["avg_instance_seconds"] = avg_instance_seconds
        out["total_seconds"] = avg_instance_seconds * n_instances
    return out


def save_report_json(reports: list[RankingReport], path) -> Path:
    out = Path(path)
    payload = [r.to_dict() for r in reports]
    out.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8", newline="\n")
    return out


def save_report_tsv(reports: list[RankingReport], path) -> Path:
    out = Path(path)
    lines = ["model\ttop1\ttop3\ttop5\tmar\tmfr\tauc"]
    for r in reports:
        lines.append(
            f"{r.model}\t{r.top1}\t{r.top3}\t{r.top5}"
            f"\t{repr(r.average_rank)}\t{repr(r.first_rank)}\t{repr(r.auc)}"
        )
    out.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return out
