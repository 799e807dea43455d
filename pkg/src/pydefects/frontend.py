"""Parsing front-end: source decoding, syntax trees and effective line counts.

The front-end wraps the interpreter's own :mod:`ast` parser. A file either
parses completely or is reported as a failed :class:`ParseOutcome`; there is
no error recovery.
"""

from __future__ import annotations

import ast
import bisect
import io
import logging
import tokenize
import warnings
from dataclasses import dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)

_NON_CODE_TOKENS = frozenset(
    {
        tokenize.COMMENT,
        tokenize.NL,
        tokenize.NEWLINE,
        tokenize.INDENT,
        tokenize.DEDENT,
        tokenize.ENDMARKER,
        tokenize.ENCODING,
    }
)


class SourceDecodeError(ValueError):
    """Raised when a file's bytes cannot be decoded to text."""


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str
    physical_lines: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "physical_lines", count_lines(self.text))


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    message: str


@dataclass
class SyntaxTree:
    """A parsed module plus its per-line code/non-code classification.

    ``code_lines`` is the sorted list of 1-based line numbers holding at least
    one token that is not a comment or whitespace.
    """

    root: ast.Module
    code_lines: list[int]
    physical_lines: int

    def loc(self, first: int, last: int) -> int:
        lo = bisect.bisect_left(self.code_lines, first)
        hi = bisect.bisect_right(self.code_lines, last)
        return hi - lo


@dataclass
class ParseOutcome:
    file: SourceFile
    status: str  # "parsed" | "failed"
    error: ParseError | None = None
    tree: SyntaxTree | None = None

    def __post_init__(self) -> None:
        if (self.status == "failed") != (self.error is not None):
            raise ValueError("failed outcomes carry an error, parsed ones do not")

    @property
    def parsed(self) -> bool:
        return self.status == "parsed"


def count_lines(text: str) -> int:
    if not text:
        return 0
    n = text.count("\n")
    return n if text.endswith("\n") else n + 1


def decode_source(data: bytes) -> str:
    """Decode module bytes: UTF-8 first, then a coding declaration on line 1-2."""
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError:
        try:
            encoding, _ = tokenize.detect_encoding(io.BytesIO(data).readline)
            text = data.decode(encoding)
        except (SyntaxError, LookupError, UnicodeDecodeError) as exc:
            raise SourceDecodeError(str(exc)) from exc
    return text.replace("\r\n", "\n").replace("\r", "\n")


def read_source(path: str | Path, display_path: str | None = None) -> SourceFile:
    data = Path(path).read_bytes()
    return SourceFile(display_path or str(path), decode_source(data))


def classify_lines(text: str) -> list[int]:
    """Return sorted line numbers containing a non-comment, non-blank token.

    A token spanning several lines (a triple-quoted string, for instance)
    marks every line it covers.
    """
    lines: set[int] = set()
    for tok in tokenize.generate_tokens(io.StringIO(text).readline):
        if tok.type in _NON_CODE_TOKENS:
            continue
        lines.update(range(tok.start[0], tok.end[0] + 1))
    return sorted(lines)


def parse_file(file: SourceFile) -> ParseOutcome:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            root = ast.parse(file.text, filename=file.path)
        code_lines = classify_lines(file.text)
    except SyntaxError as exc:
        err = ParseError(exc.lineno or 0, exc.offset or 0, exc.msg or str(exc))
        return ParseOutcome(file, "failed", err)
    except (ValueError, tokenize.TokenError, RecursionError, MemoryError) as exc:
        # null bytes, pathological nesting and similar parser faults
        log.warning("parser fault in %s: %s", file.path, exc)
        return ParseOutcome(file, "failed", ParseError(0, 0, f"{type(exc).__name__}: {exc}"))
    return ParseOutcome(file, "parsed", tree=SyntaxTree(root, code_lines, file.physical_lines))


def load_and_parse(path: str | Path, display_path: str | None = None) -> ParseOutcome:
    """Read, decode and parse one file; decoding problems become failed outcomes."""
    shown = display_path or str(path)
    try:
        source = read_source(path, shown)
    except (OSError, SourceDecodeError) as exc:
        log.warning("cannot read %s: %s", shown, exc)
        return ParseOutcome(SourceFile(shown, ""), "failed", ParseError(0, 0, f"unreadable: {exc}"))
    return parse_file(source)


def effective_loc(item: SyntaxTree | ParseOutcome | ast.AST, tree: SyntaxTree | None = None) -> int:
    """Count non-blank, non-comment lines of a whole tree or of one node's span.

    Pass a node together with the tree it belongs to.
    """
    if isinstance(item, ParseOutcome):
        return 0 if item.tree is None else len(item.tree.code_lines)
    if isinstance(item, SyntaxTree):
        return len(item.code_lines)
    if tree is None:
        raise TypeError("effective_loc of a node needs its SyntaxTree")
    return tree.loc(item.lineno, item.end_lineno or item.lineno)


def parse_stats(outcomes: list[ParseOutcome]) -> tuple[int, int, float]:
    total = len(outcomes)
    parsed = sum(1 for o in outcomes if o.parsed)
    if total == 0:
        log.warning("parse ratio of an empty file set is taken as 1.0")
        return 0, 0, 1.0
    return parsed, total, parsed / total
