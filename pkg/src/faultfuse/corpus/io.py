"""Dataset directory reader/writer.

Layout (all UTF-8 text, LF line endings):
  statements.tsv  id<TAB>file<TAB>line<TAB>source-text
  coverage.csv    header of statement ids; one 0/1 row per test
  outcomes.csv    test_id,pass|fail (same order as coverage rows)
  mutants.csv     mutant_id,statement_id,<0/1 kill vector>
  faults.txt      one faulty statement id per line

save(load(dir)) is byte-identical for canonically written directories.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import (
    DanglingReferenceError,
    DimensionMismatchError,
    InvalidCellValueError,
    MissingFileError,
)
from .model import FaultDataset, MutantRecord, StatementRecord, make_dataset

FILES = ("statements.tsv", "coverage.csv", "outcomes.csv", "mutants.csv", "faults.txt")


def _read(path: Path) -> list[str]:
    if not path.is_file():
        raise MissingFileError(str(path))
    return path.read_text(encoding="utf-8").splitlines()


def _parse_bits(cells: list[str], where: str) -> np.ndarray:
    row = np.empty(len(cells), dtype=np.uint8)
    for i, c in enumerate(cells):
        if c == "0":
            row[i] = 0
        elif c == "1":
            row[i] = 1
        else:
            raise InvalidCellValueError(f"non-binary value {c!r} in {where}")
    return row


def load_dataset(path) -> FaultDataset:
    root = Path(path)
    if not root.is_dir():
        raise MissingFileError(f"dataset directory not found: {root}")

    statements = []
    for lineno, line in enumerate(_read(root / "statements.tsv")):
        parts = line.split("\t", 3)
        if len(parts) != 4:
            raise InvalidCellValueError(f"statements.tsv line {lineno + 1}: expected 4 fields")
        sid, fname, srcline, text = parts
        statements.append(StatementRecord(int(sid), fname, int(srcline), text))
    n_stmt = len(statements)

    cov_lines = _read(root / "coverage.csv")
    if not cov_lines:
        raise DimensionMismatchError("coverage.csv is empty")
    header = cov_lines[0].split(",")
    if header != [str(s.id) for s in statements]:
        raise DimensionMismatchError("coverage.csv header does not match statements.tsv")
    rows = []
    for line in cov_lines[1:]:
        cells = line.split(",")
        if len(cells) != n_stmt:
            raise DimensionMismatchError("coverage.csv row width does not match statement count")
        rows.append(_parse_bits(cells, "coverage.csv"))
    coverage = np.vstack(rows) if rows else np.zeros((0, n_stmt), dtype=np.uint8)
    n_test = coverage.shape[0]

    test_ids = []
    failed = []
    for line in _read(root / "outcomes.csv"):
        tid, _, verdict = line.partition(",")
        if verdict == "pass":
            failed.append(False)
        elif verdict == "fail":
            failed.append(True)
        else:
            raise InvalidCellValueError(f"outcomes.csv: unknown verdict {verdict!r}")
        test_ids.append(tid)
    if len(test_ids) != n_test:
        raise DimensionMismatchError(
            f"outcomes.csv has {len(test_ids)} rows but coverage has {n_test}"
        )

    mutants = []
    for line in _read(root / "mutants.csv"):
        cells = line.split(",")
        if len(cells) != 2 + n_test:
            raise DimensionMismatchError("mutants.csv row width does not match test count")
        mutants.append(
            MutantRecord(int(cells[0]), int(cells[1]), _parse_bits(cells[2:], "mutants.csv"))
        )

    faults = []
    for line in _read(root / "faults.txt"):
        if line.strip():
            faults.append(int(line.strip()))
    for f in faults:
        if not 0 <= f < n_stmt:
            raise DanglingReferenceError(f"faults.txt id {f} out of range")

    return make_dataset(statements, coverage, test_ids, np.array(failed, dtype=bool),
                        mutants, faults)


def save_dataset(ds: FaultDataset, path) -> Path:
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)

    def write(name: str, lines: list[str]) -> None:
        body = "\n".join(lines)
        if lines:
            body += "\n"
        (root / name).write_text(body, encoding="utf-8", newline="\n")

    write("statements.tsv", [f"{s.id}\t{s.file}\t{s.line}\t{s.text}" for s in ds.statements])
    cov = [",".join(str(s.id) for s in ds.statements)]
    cov.extend(",".join(str(int(v)) for v in row) for row in ds.coverage)
    write("coverage.csv", cov)
    write(
        "outcomes.csv",
        [f"{tid},{'fail' if bad else 'pass'}" for tid, bad in zip(ds.test_ids, ds.failed)],
    )
    write(
        "mutants.csv",
        [
            f"{m.id},{m.statement_id}," + ",".join(str(int(v)) for v in m.kills)
            for m in ds.mutants
        ],
    )
    write("faults.txt", [str(f) for f in ds.faults])
    return root
