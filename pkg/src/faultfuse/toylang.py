"""Lexer, parser, control-flow graph, text metrics, and interpreter for the
statement-oriented toy language used by the synthetic corpora.

The language is a loop-free C-like subset: declarations, assignments,
``input``/``print`` statements, and ``if``/``else if``/``else`` chains.
Nesting is expressed by indentation with one statement per line, so a flat
list of statement texts (as stored in ``statements.tsv``) reconstructs the
program unambiguously.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LexError, ParseError

KEYWORDS = {"int", "input", "if", "else", "print"}

IDENTIFIER = "identifier"
KEYWORD = "keyword"
OPERATOR = "operator"
LITERAL = "literal"
STRING_FRAGMENT = "string"

_TWO_CHAR_OPS = {"==", "!=", "<=", ">="}
_ONE_CHAR_OPS = set("=<>!(),;:+-*%.[]{}&|")
_COMPARISONS = {"<", ">", "<=", ">=", "==", "!="}


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int


def tokenize(source: str) -> list[Token]:
    """Tokenize program text. ``//`` starts a comment running to end of line."""
    tokens: list[Token] = []
    for lineno, line in enumerate(source.splitlines(), start=1):
        i = 0
        n = len(line)
        while i < n:
            ch = line[i]
            if ch in " \t":
                i += 1
                continue
            if ch == "/" and i + 1 < n and line[i + 1] == "/":
                break
            if ch.isalpha() or ch == "_":
                j = i
                while j < n and (line[j].isalnum() or line[j] == "_"):
                    j += 1
                word = line[i:j]
                kind = KEYWORD if word in KEYWORDS else IDENTIFIER
                tokens.append(Token(kind, word, lineno))
                i = j
                continue
            if ch.isdigit():
                j = i
                while j < n and line[j].isdigit():
                    j += 1
                tokens.append(Token(LITERAL, line[i:j], lineno))
                i = j
                continue
            if ch == '"':
                tokens.append(Token(OPERATOR, '"', lineno))
                i += 1
                closed = False
                while i < n:
                    c = line[i]
                    if c == '"':
                        tokens.append(Token(OPERATOR, '"', lineno))
                        i += 1
                        closed = True
                        break
                    if c in " \t":
                        i += 1
                        continue
                    if c.isalnum() or c == "_":
                        j = i
                        while j < n and (line[j].isalnum() or line[j] == "_"):
                            j += 1
                        tokens.append(Token(STRING_FRAGMENT, line[i:j], lineno))
                        i = j
                    else:
                        # punctuation inside string literals counts one
                        # token per character
                        tokens.append(Token(OPERATOR, c, lineno))
                        i += 1
                if not closed:
                    raise LexError("unterminated string literal", lineno)
                continue
            if line[i : i + 2] in _TWO_CHAR_OPS:
                tokens.append(Token(OPERATOR, line[i : i + 2], lineno))
                i += 2
                continue
            if ch in _ONE_CHAR_OPS:
                tokens.append(Token(OPERATOR, ch, lineno))
                i += 1
                continue
            raise LexError(f"illegal character {ch!r}", lineno)
    return tokens


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Condition:
    lhs: str
    op: str
    rhs: str  # identifier or integer literal


@dataclass(frozen=True)
class Simple:
    """A non-branching statement."""

    index: int
    kind: str  # decl | input | assign | print
    names: tuple[str, ...] = ()       # decl/input variable list
    target: str = ""                  # assign LHS
    value: str = ""                   # assign RHS (identifier or literal)
    args: tuple[tuple[str, str], ...] = ()  # print args as (kind, text)


@dataclass
class Arm:
    header_index: int
    kind: str  # if | elif | else
    cond: Condition | None
    body: "Block"


@dataclass
class IfChain:
    arms: list[Arm]


@dataclass
class Block:
    items: list = field(default_factory=list)


@dataclass
class Program:
    lines: list[str]
    block: Block


@dataclass
class _Row:
    index: int
    line: int
    indent: int
    tokens: list[Token]
    text: str


def parse_statements(lines: list[str]) -> Program:
    """Parse one statement per list entry; entry position is the statement index."""
    rows = []
    for idx, text in enumerate(lines):
        lineno = idx + 1
        stripped = text.lstrip(" \t")
        if not stripped or stripped.startswith("//"):
            raise ParseError("blank statement", lineno)
        indent = 0
        for ch in text[: len(text) - len(stripped)]:
            indent += 4 if ch == "\t" else 1
        try:
            toks = tokenize(stripped)
        except LexError as exc:
            raise LexError(str(exc).split(": ", 1)[1], lineno) from None
        if not toks:
            raise ParseError("blank statement", lineno)
        rows.append(_Row(idx, lineno, indent, toks, text))
    block, pos = _parse_block(rows, 0, 0)
    if pos != len(rows):
        raise ParseError("unexpected indentation", rows[pos].line)
    return Program([r.text for r in rows], block)


def parse(source: str) -> Program:
    """Parse program text, ignoring blank lines."""
    lines = [ln for ln in source.splitlines() if ln.strip()]
    return parse_statements(lines)


def _parse_block(rows: list[_Row], pos: int, indent: int) -> tuple[Block, int]:
    items: list = []
    while pos < len(rows):
        row = rows[pos]
        if row.indent < indent:
            break
        if row.indent > indent:
            raise ParseError("unexpected indentation", row.line)
        first = row.tokens[0]
        if first.kind == KEYWORD and first.lexeme == "if":
            chain, pos = _parse_chain(rows, pos, indent)
            items.append(chain)
        elif first.kind == KEYWORD and first.lexeme == "else":
            raise ParseError("'else' without matching 'if'", row.line)
        else:
            items.append(_parse_simple(row))
            pos += 1
    if not items:
        raise ParseError("empty block", rows[pos - 1].line if pos else 1)
    return Block(items), pos


def _parse_chain(rows: list[_Row], pos: int, indent: int) -> tuple[IfChain, int]:
    arms: list[Arm] = []
    row = rows[pos]
    cond = _parse_condition(row, skip=1)
    body, pos = _parse_arm_body(rows, pos, indent)
    arms.append(Arm(row.index, "if", cond, body))
    while pos < len(rows):
        row = rows[pos]
        first = row.tokens[0]
        if row.indent != indent or not (first.kind == KEYWORD and first.lexeme == "else"):
            break
        if len(row.tokens) >= 2 and row.tokens[1].kind == KEYWORD and row.tokens[1].lexeme == "if":
            cond = _parse_condition(row, skip=2)
            body, pos = _parse_arm_body(rows, pos, indent)
            arms.append(Arm(row.index, "elif", cond, body))
        else:
            if len(row.tokens) != 1:
                raise ParseError("malformed 'else'", row.line)
            body, pos = _parse_arm_body(rows, pos, indent)
            arms.append(Arm(row.index, "else", None, body))
            break
    return IfChain(arms), pos


def _parse_arm_body(rows: list[_Row], header_pos: int, indent: int) -> tuple[Block, int]:
    nxt = header_pos + 1
    if nxt >= len(rows) or rows[nxt].indent <= indent:
        raise ParseError("conditional arm has no body", rows[header_pos].line)
    return _parse_block(rows, nxt, rows[nxt].indent)


def _parse_condition(row: _Row, skip: int) -> Condition:
    toks = row.tokens[skip:]
    ok = (
        len(toks) == 5
        and toks[0].lexeme == "("
        and toks[1].kind in (IDENTIFIER, LITERAL)
        and toks[2].kind == OPERATOR
        and toks[2].lexeme in _COMPARISONS
        and toks[3].kind in (IDENTIFIER, LITERAL)
        and toks[4].lexeme == ")"
    )
    if not ok:
        raise ParseError("malformed condition", row.line)
    return Condition(toks[1].lexeme, toks[2].lexeme, toks[3].lexeme)


def _expect_name_list(row: _Row, toks: list[Token]) -> tuple[str, ...]:
    names = []
    expect_name = True
    for t in toks:
        if expect_name:
            if t.kind != IDENTIFIER:
                raise ParseError("expected identifier", row.line)
            names.append(t.lexeme)
            expect_name = False
        else:
            if t.lexeme == ",":
                expect_name = True
            elif t.lexeme == ";":
                return tuple(names)
            else:
                raise ParseError("expected ',' or ';'", row.line)
    raise ParseError("missing ';'", row.line)


def _parse_simple(row: _Row) -> Simple:
    toks = row.tokens
    first = toks[0]
    if first.kind == KEYWORD and first.lexeme == "int":
        return Simple(row.index, "decl", names=_expect_name_list(row, toks[1:]))
    if first.kind == KEYWORD and first.lexeme == "input":
        return Simple(row.index, "input", names=_expect_name_list(row, toks[1:]))
    if first.kind == KEYWORD and first.lexeme == "print":
        return Simple(row.index, "print", args=_parse_print_args(row, toks[1:]))
    if first.kind == IDENTIFIER:
        ok = (
            len(toks) == 4
            and toks[1].lexeme == "="
            and toks[2].kind in (IDENTIFIER, LITERAL)
            and toks[3].lexeme == ";"
        )
        if not ok:
            raise ParseError("malformed assignment", row.line)
        return Simple(row.index, "assign", target=first.lexeme,
                      value=toks[2].lexeme if toks[2].kind == IDENTIFIER else "#" + toks[2].lexeme)
    raise ParseError("unrecognized statement", row.line)


def _parse_print_args(row: _Row, toks: list[Token]) -> tuple[tuple[str, str], ...]:
    if not toks or toks[0].lexeme != "(" or toks[-1].lexeme != ";" or toks[-2].lexeme != ")":
        raise ParseError("malformed print statement", row.line)
    args: list[tuple[str, str]] = []
    inner = toks[1:-2]
    i = 0
    while i < len(inner):
        t = inner[i]
        if t.lexeme == '"':
            frags = []
            i += 1
            while i < len(inner) and inner[i].lexeme != '"':
                frags.append(inner[i].lexeme)
                i += 1
            if i >= len(inner):
                raise ParseError("malformed print statement", row.line)
            args.append(("str", "".join(frags)))
            i += 1
        elif t.kind == IDENTIFIER:
            args.append(("var", t.lexeme))
            i += 1
        elif t.kind == LITERAL:
            args.append(("lit", t.lexeme))
            i += 1
        elif t.lexeme == ",":
            i += 1
        else:
            raise ParseError("malformed print statement", row.line)
    return tuple(args)


# ---------------------------------------------------------------------------
# control-flow graph
# ---------------------------------------------------------------------------

@dataclass
class Cfg:
    blocks: list[list[int]]       # statement indices per basic block
    successors: list[list[int]]
    entry: int
    exit: int
    conditional: set[int]         # block ids with a 2-way branch

    def predecessors(self) -> list[list[int]]:
        preds: list[list[int]] = [[] for _ in self.blocks]
        for u, vs in enumerate(self.successors):
            for v in vs:
                preds[v].append(u)
        return preds


class _CfgBuilder:
    def __init__(self) -> None:
        self.blocks: list[list[int]] = []
        self.successors: list[list[int]] = []
        self.conditional: set[int] = set()

    def new_block(self) -> int:
        self.blocks.append([])
        self.successors.append([])
        return len(self.blocks) - 1

    def connect(self, sources: list[int], target: int) -> None:
        for s in sources:
            self.successors[s].append(target)

    def emit_block(self, block: Block, incoming: list[int], seed: int | None = None) -> list[int]:
        """Emit a statement block; returns the dangling block ids that fall through."""
        current = seed
        for item in block.items:
            if isinstance(item, Simple):
                if current is None:
                    current = self.new_block()
                    self.connect(incoming, current)
                    incoming = []
                self.blocks[current].append(item.index)
            else:
                prev = [current] if current is not None else incoming
                incoming = self.emit_chain(item, prev)
                current = None
        if current is not None:
            return [current]
        return incoming

    def emit_chain(self, chain: IfChain, incoming: list[int]) -> list[int]:
        outs: list[int] = []
        link = incoming
        for arm in chain.arms:
            if arm.kind in ("if", "elif"):
                header = self.new_block()
                self.blocks[header].append(arm.header_index)
                self.conditional.add(header)
                self.connect(link, header)
                outs.extend(self.emit_block(arm.body, [header]))
                link = [header]  # false edge continues the chain
            else:
                header = self.new_block()
                self.blocks[header].append(arm.header_index)
                self.connect(link, header)
                outs.extend(self.emit_block(arm.body, [], seed=header))
                link = []
        outs.extend(link)
        return outs


def build_cfg(program: Program) -> Cfg:
    builder = _CfgBuilder()
    outs = builder.emit_block(program.block, [])
    if len(outs) == 1 and not builder.successors[outs[0]]:
        exit_block = outs[0]
    else:
        exit_block = builder.new_block()
        builder.connect(outs, exit_block)
    cfg = Cfg(builder.blocks, builder.successors, 0, exit_block, builder.conditional)
    _check_cfg(cfg)
    return cfg


def _check_cfg(cfg: Cfg) -> None:
    n = len(cfg.blocks)
    seen = {cfg.entry}
    stack = [cfg.entry]
    while stack:
        u = stack.pop()
        for v in cfg.successors[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    assert seen == set(range(n)), "unreachable basic block"
    for b in cfg.conditional:
        assert len(cfg.successors[b]) == 2
    for b in range(n):
        if b not in cfg.conditional:
            assert len(cfg.successors[b]) <= 1


# ---------------------------------------------------------------------------
# text metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StatementMetrics:
    index: int
    loc_weight: int       # character length of the line
    variable_count: int
    symbol_count: int
    branch_paths: int


@dataclass(frozen=True)
class TextFeatures:
    statements: list[StatementMetrics]
    total_length: int
    line_count: int
    total_variables: int
    total_symbols: int


def _block_paths(block: Block) -> int:
    paths = 1
    for item in block.items:
        if isinstance(item, IfChain):
            paths *= _chain_paths(item)
    return paths


def _chain_paths(chain: IfChain) -> int:
    total = sum(_block_paths(arm.body) for arm in chain.arms)
    if chain.arms[-1].kind != "else":
        total += 1  # fall-through path when every condition is false
    return total


def branch_path_counts(program: Program) -> list[int]:
    """Per-statement branch-path feature.

    Statements at top level (and top-level if/elif headers) score the leaf-path
    count of the first arm of the first top-level chain; nested if/elif headers
    score 2 (taken vs not); an else header scores the leaf-path count of its
    own arm; everything else scores 1.
    """
    top = 1
    for item in program.block.items:
        if isinstance(item, IfChain):
            top = _block_paths(item.arms[0].body)
            break
    counts = [0] * len(program.lines)

    def walk(block: Block, depth: int) -> None:
        for item in block.items:
            if isinstance(item, Simple):
                counts[item.index] = top if depth == 0 else 1
            else:
                for arm in item.arms:
                    if arm.kind == "else":
                        counts[arm.header_index] = _block_paths(arm.body)
                    else:
                        counts[arm.header_index] = top if depth == 0 else 2
                    walk(arm.body, depth + 1)

    walk(program.block, 0)
    return counts


def text_features(lines: list[str]) -> TextFeatures:
    """Compute per-statement and program-level text metrics."""
    program = parse_statements(lines)
    branches = branch_path_counts(program)
    per_stmt = []
    for idx, line in enumerate(lines):
        toks = tokenize(line)
        variables = sum(1 for t in toks if t.kind == IDENTIFIER)
        symbols = sum(1 for t in toks if t.kind == OPERATOR)
        per_stmt.append(
            StatementMetrics(idx, len(line), variables, symbols, branches[idx])
        )
    return TextFeatures(
        statements=per_stmt,
        total_length=sum(m.loc_weight for m in per_stmt),
        line_count=len(per_stmt),
        total_variables=sum(m.variable_count for m in per_stmt),
        total_symbols=sum(m.symbol_count for m in per_stmt),
    )


# ---------------------------------------------------------------------------
# interpreter
# ---------------------------------------------------------------------------

@dataclass
class ExecutionTrace:
    outputs: list[tuple]
    covered: set[int]


def execute(program: Program, inputs: tuple[int, ...]) -> ExecutionTrace:
    """Run the program on one input tuple, recording statement coverage."""
    env: dict[str, int] = {}
    feed = iter(inputs)
    outputs: list[tuple] = []
    covered: set[int] = set()

    def value_of(ref: str) -> int:
        if ref.startswith("#"):
            return int(ref[1:])
        if ref.isdigit():
            return int(ref)
        return env[ref]

    def run_simple(stmt: Simple) -> None:
        covered.add(stmt.index)
        if stmt.kind == "decl":
            for name in stmt.names:
                env[name] = 0
        elif stmt.kind == "input":
            for name in stmt.names:
                env[name] = next(feed)
        elif stmt.kind == "assign":
            env[stmt.target] = value_of(stmt.value)
        elif stmt.kind == "print":
            rendered = tuple(
                text if kind == "str" else value_of(text) for kind, text in stmt.args
            )
            outputs.append(rendered)

    def test(cond: Condition) -> bool:
        a = value_of(cond.lhs)
        b = value_of(cond.rhs)
        return {
            "<": a < b,
            ">": a > b,
            "<=": a <= b,
            ">=": a >= b,
            "==": a == b,
            "!=": a != b,
        }[cond.op]

    def run_block(block: Block) -> None:
        for item in block.items:
            if isinstance(item, Simple):
                run_simple(item)
            else:
                for arm in item.arms:
                    covered.add(arm.header_index)
                    if arm.cond is None or test(arm.cond):
                        run_block(arm.body)
                        break

    run_block(program.block)
    return ExecutionTrace(outputs, covered)
