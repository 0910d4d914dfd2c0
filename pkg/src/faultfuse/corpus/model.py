"""Fault dataset data model.

One dataset describes a single faulty program version: its statements, a
binary tests-by-statements coverage matrix, per-test verdicts, an optional
mutant kill matrix, and the ground-truth faulty statement ids. Datasets are
immutable after construction and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import (
    DanglingReferenceError,
    DimensionMismatchError,
    InvalidCellValueError,
    NoFailingTestsError,
)


@dataclass(frozen=True)
class StatementRecord:
    id: int
    file: str
    line: int
    text: str


@dataclass(frozen=True)
class MutantRecord:
    id: int
    statement_id: int
    kills: np.ndarray  # uint8, one entry per test


@dataclass(frozen=True)
class FaultDataset:
    statements: tuple[StatementRecord, ...]
    coverage: np.ndarray          # (tests, statements) uint8
    test_ids: tuple[str, ...]
    failed: np.ndarray            # (tests,) bool, True = failing verdict
    mutants: tuple[MutantRecord, ...]
    faults: tuple[int, ...]       # sorted faulty statement ids; empty = unlabeled

    def __post_init__(self):
        self.coverage.setflags(write=False)
        self.failed.setflags(write=False)
        for m in self.mutants:
            m.kills.setflags(write=False)
        validate_dataset(self)

    @property
    def n_statements(self) -> int:
        return len(self.statements)

    @property
    def n_tests(self) -> int:
        return len(self.test_ids)

    @property
    def labels(self) -> np.ndarray:
        """Per-statement 0/1 faulty labels."""
        y = np.zeros(self.n_statements, dtype=np.float64)
        y[list(self.faults)] = 1.0
        return y

    def source_lines(self) -> list[str]:
        return [s.text for s in self.statements]


def _require_binary(arr: np.ndarray, what: str) -> None:
    bad = ~np.isin(arr, (0, 1))
    if bad.any():
        pos = np.argwhere(bad)[0]
        raise InvalidCellValueError(f"non-binary {what} entry at {tuple(int(v) for v in pos)}")


def validate_dataset(ds: FaultDataset) -> None:
    n_stmt = len(ds.statements)
    n_test = len(ds.test_ids)
    if n_test == 0:
        raise DimensionMismatchError("dataset has no tests")
    if n_stmt == 0:
        raise DimensionMismatchError("dataset has no statements")
    if ds.coverage.shape != (n_test, n_stmt):
        raise DimensionMismatchError(
            f"coverage is {ds.coverage.shape}, expected ({n_test}, {n_stmt})"
        )
    if ds.failed.shape != (n_test,):
        raise DimensionMismatchError("outcomes length does not match coverage rows")
    _require_binary(ds.coverage, "coverage")
    for i, s in enumerate(ds.statements):
        if s.id != i:
            raise DanglingReferenceError(f"statement ids must be 0..{n_stmt - 1} in order")
    for m in ds.mutants:
        if not 0 <= m.statement_id < n_stmt:
            raise DanglingReferenceError(
                f"mutant {m.id} targets unknown statement {m.statement_id}"
            )
        if m.kills.shape != (n_test,):
            raise DimensionMismatchError(f"mutant {m.id} kill vector length mismatch")
        _require_binary(m.kills, "kill")
    for f in ds.faults:
        if not 0 <= f < n_stmt:
            raise DanglingReferenceError(f"fault id {f} out of range")
    if ds.faults and not ds.failed.any():
        raise NoFailingTestsError("labeled dataset has no failing test")


def make_dataset(
    statements,
    coverage,
    test_ids,
    failed,
    mutants=(),
    faults=(),
) -> FaultDataset:
    return FaultDataset(
        statements=tuple(statements),
        coverage=np.ascontiguousarray(coverage, dtype=np.uint8),
        test_ids=tuple(test_ids),
        failed=np.ascontiguousarray(failed, dtype=bool),
        mutants=tuple(mutants),
        faults=tuple(sorted(set(int(f) for f in faults))),
    )
