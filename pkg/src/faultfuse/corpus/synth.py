"""Synthetic desk-scale fault datasets with one known injected fault.

A template supplies a correct toy-language program; the generator corrupts a
single statement, runs both versions on seeded random inputs, and derives
coverage, verdicts, and a mutant kill matrix from interpreter runs. The same
seed always reproduces the same dataset byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import toylang
from ..errors import InfeasibleSpecError
from .model import FaultDataset, MutantRecord, StatementRecord, make_dataset

_FLIP = {"<": ">=", ">": "<=", "<=": ">", ">=": "<", "==": "!=", "!=": "=="}
_COMPARISON_ORDER = ("<", "<=", ">", ">=", "==", "!=")
_RETRY_ROUNDS = 8


@dataclass(frozen=True)
class SyntheticSpec:
    template: str
    n_tests: int
    seed: int
    n_statements: int = 0          # 0 = template's natural size
    fault_statement: int = -1      # -1 = template default
    fault_rule: str = "default"


@dataclass(frozen=True)
class Template:
    name: str
    lines: tuple[str, ...]
    n_inputs: int
    input_range: tuple[int, int]
    default_fault: int
    default_rule: str


def _median3() -> Template:
    lines = (
        "int x, y, z, m;",
        "input x, y, z;",
        "m = z;",
        "if (y < z)",
        "    if (x < y)",
        "        m = y;",
        "    else if (x < z)",
        "        m = x;",
        "else",
        "    if (x > y)",
        "        m = y;",
        "    else if (x > z)",
        "        m = x;",
        'print("Median:", m);',
    )
    return Template("median3", lines, 3, (0, 9), 7, "operand-swap")


def _triangle() -> Template:
    lines = (
        "int a, b, c, kind;",
        "input a, b, c;",
        "kind = 0;",
        "if (a == b)",
        "    if (b == c)",
        "        kind = 3;",
        "    else",
        "        kind = 2;",
        "else if (b == c)",
        "    kind = 2;",
        "else if (a == c)",
        "    kind = 2;",
        "else",
        "    kind = 1;",
        'print("Kind:", kind);',
    )
    return Template("triangle", lines, 3, (0, 5), 4, "relational-op-flip")


def _max_array(n_statements: int) -> Template:
    # statement count is 2k + 2 for k inputs
    k = max(3, (n_statements - 2) // 2) if n_statements else 4
    names = [f"a{i + 1}" for i in range(k)]
    lines = [
        "int " + ", ".join(names + ["best"]) + ";",
        "input " + ", ".join(names) + ";",
        "best = a1;",
    ]
    for name in names[1:]:
        lines.append(f"if ({name} > best)")
        lines.append(f"    best = {name};")
    lines.append('print("Max:", best);')
    return Template("max_array", tuple(lines), k, (0, 9), 3, "relational-op-flip")


def _build_template(name: str, n_statements: int) -> Template:
    if name == "median3":
        return _median3()
    if name == "triangle":
        return _triangle()
    if name == "max_array":
        return _max_array(n_statements)
    raise InfeasibleSpecError(f"unknown template {name!r}")


TEMPLATES = ("median3", "triangle", "max_array")


# ---------------------------------------------------------------------------
# statement rewriting
# ---------------------------------------------------------------------------

def _indent_of(line: str) -> str:
    return line[: len(line) - len(line.lstrip(" "))]


def _declared_vars(program: toylang.Program) -> list[str]:
    for item in program.block.items:
        if isinstance(item, toylang.Simple) and item.kind == "decl":
            return list(item.names)
    return []


def _statement_node(program: toylang.Program, index: int):
    """Return ('simple', Simple) or ('arm', Arm) for the statement index."""
    found = []

    def walk(block):
        for item in block.items:
            if isinstance(item, toylang.Simple):
                if item.index == index:
                    found.append(("simple", item))
            else:
                for arm in item.arms:
                    if arm.header_index == index:
                        found.append(("arm", arm))
                    walk(arm.body)

    walk(program.block)
    if not found:
        raise InfeasibleSpecError(f"statement {index} not found")
    return found[0]


def _render_condition(line: str, arm: toylang.Arm, op: str) -> str:
    head = "if" if arm.kind == "if" else "else if"
    return f"{_indent_of(line)}{head} ({arm.cond.lhs} {op} {arm.cond.rhs})"


def _render_assign(line: str, stmt: toylang.Simple, value: str) -> str:
    return f"{_indent_of(line)}{stmt.target} = {value};"


def _swap_candidates(stmt: toylang.Simple, decl: list[str]) -> list[str]:
    current = stmt.value
    start = decl.index(current) if current in decl else -1
    rotated = decl[start + 1 :] + decl[: start + 1]
    return [v for v in rotated if v not in (stmt.target, current)]


def apply_fault(lines: list[str], index: int, rule: str) -> list[str]:
    """Corrupt one statement; returns the faulty program's lines."""
    program = toylang.parse_statements(lines)
    kind, node = _statement_node(program, index)
    decl = _declared_vars(program)
    out = list(lines)
    if rule == "default":
        rule = "relational-op-flip" if kind == "arm" else "operand-swap"
    if rule == "relational-op-flip":
        if kind != "arm" or node.cond is None:
            raise InfeasibleSpecError(
                f"relational-op-flip needs a condition at statement {index}"
            )
        out[index] = _render_condition(lines[index], node, _FLIP[node.cond.op])
    elif rule == "operand-swap":
        if kind != "simple" or node.kind != "assign" or node.value.startswith("#"):
            raise InfeasibleSpecError(
                f"operand-swap needs a variable assignment at statement {index}"
            )
        candidates = _swap_candidates(node, decl)
        if not candidates:
            raise InfeasibleSpecError(f"no swap candidate at statement {index}")
        out[index] = _render_assign(lines[index], node, candidates[0])
    elif rule == "constant-perturb":
        if kind != "simple" or node.kind != "assign" or not node.value.startswith("#"):
            raise InfeasibleSpecError(
                f"constant-perturb needs a literal assignment at statement {index}"
            )
        out[index] = _render_assign(lines[index], node, str(int(node.value[1:]) + 1))
    else:
        raise InfeasibleSpecError(f"unknown fault rule {rule!r}")
    return out


def enumerate_mutants(lines: list[str]) -> list[tuple[int, list[str]]]:
    """All single-statement mutants of a program, as (statement_id, lines) pairs."""
    program = toylang.parse_statements(lines)
    decl = _declared_vars(program)
    mutants = []

    def emit(index: int, new_line: str) -> None:
        if new_line != lines[index]:
            patched = list(lines)
            patched[index] = new_line
            mutants.append((index, patched))

    def walk(block):
        for item in block.items:
            if isinstance(item, toylang.Simple):
                if item.kind != "assign":
                    continue
                if item.value.startswith("#"):
                    base = int(item.value[1:])
                    emit(item.index, _render_assign(lines[item.index], item, str(base + 1)))
                    if base > 0:
                        emit(item.index, _render_assign(lines[item.index], item, str(base - 1)))
                else:
                    for v in _swap_candidates(item, decl):
                        emit(item.index, _render_assign(lines[item.index], item, v))
            else:
                for arm in item.arms:
                    if arm.cond is not None:
                        for op in _COMPARISON_ORDER:
                            if op != arm.cond.op:
                                emit(
                                    arm.header_index,
                                    _render_condition(lines[arm.header_index], arm, op),
                                )
                    walk(arm.body)

    walk(program.block)
    return mutants


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def generate_test_inputs(template: Template, n_tests: int, rng) -> list[tuple[int, ...]]:
    lo, hi = template.input_range
    return [
        tuple(int(v) for v in rng.integers(lo, hi + 1, size=template.n_inputs))
        for _ in range(n_tests)
    ]


def _outputs(program: toylang.Program, inputs) -> list[list[tuple]]:
    return [toylang.execute(program, tup).outputs for tup in inputs]


@dataclass(frozen=True)
class SynthesisResult:
    dataset: FaultDataset
    inputs: list[tuple[int, ...]]
    correct_lines: list[str]
    faulty_lines: list[str]


def synthesize(spec: SyntheticSpec) -> SynthesisResult:
    if spec.n_tests < 4:
        raise InfeasibleSpecError(f"need at least 4 tests, got {spec.n_tests}")
    if spec.n_statements and spec.n_statements < 5:
        raise InfeasibleSpecError(f"need at least 5 statements, got {spec.n_statements}")
    template = _build_template(spec.template, spec.n_statements)
    correct = list(template.lines)
    fault_at = spec.fault_statement if spec.fault_statement >= 0 else template.default_fault
    if fault_at >= len(correct):
        raise InfeasibleSpecError(f"fault statement {fault_at} out of range")
    faulty = apply_fault(correct, fault_at, spec.fault_rule)

    correct_prog = toylang.parse_statements(correct)
    faulty_prog = toylang.parse_statements(faulty)
    rng = np.random.Generator(np.random.PCG64(spec.seed))

    inputs: list[tuple[int, ...]] = []
    failed = np.zeros(0, dtype=bool)
    for _ in range(_RETRY_ROUNDS):
        inputs = generate_test_inputs(template, spec.n_tests, rng)
        expected = _outputs(correct_prog, inputs)
        traces = [toylang.execute(faulty_prog, tup) for tup in inputs]
        failed = np.array(
            [t.outputs != exp for t, exp in zip(traces, expected)], dtype=bool
        )
        if failed.any():
            break
    else:
        raise InfeasibleSpecError(
            f"fault at statement {fault_at} never produced a failing test"
        )

    n_stmt = len(faulty)
    coverage = np.zeros((spec.n_tests, n_stmt), dtype=np.uint8)
    for row, trace in enumerate(traces):
        coverage[row, sorted(trace.covered)] = 1

    mutants = []
    for mid, (target, patched) in enumerate(enumerate_mutants(faulty)):
        mutant_prog = toylang.parse_statements(patched)
        kills = np.zeros(spec.n_tests, dtype=np.uint8)
        for t, tup in enumerate(inputs):
            mutant_pass = toylang.execute(mutant_prog, tup).outputs == expected[t]
            kills[t] = 1 if mutant_pass == failed[t] else 0
        mutants.append(MutantRecord(mid, target, kills))

    statements = [
        StatementRecord(i, f"{template.name}.toy", i + 1, text)
        for i, text in enumerate(faulty)
    ]
    test_ids = [f"t{idx:04d}" for idx in range(spec.n_tests)]
    dataset = make_dataset(statements, coverage, test_ids, failed, mutants, [fault_at])
    return SynthesisResult(dataset, inputs, correct, faulty)


def generate_synthetic(spec: SyntheticSpec) -> FaultDataset:
    return synthesize(spec).dataset
