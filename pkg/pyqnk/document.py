"""
Reader for the structured-text format used by reports, suite configs and
matrix lists.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from lark import Lark, Transformer, Token, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .errors import ConfigError, InvalidMatrix
from .modcore import SL2Z

GRAMMAR_FILE = Path(__file__).parent / "document.lark"


@dataclass
class Block:
    """Ordered key/value entries of one `{ ... }` block; keys may repeat."""
    entries: list[tuple[str, Any]] = field(default_factory=list)
    lines: list[Optional[int]] = field(default_factory=list)

    def get(self, key: str, default: Any = None) -> Any:
        for name, value in reversed(self.entries):
            if name == key:
                return value
        return default

    def get_all(self, key: str) -> list[Any]:
        return [value for name, value in self.entries if name == key]

    def line_of(self, key: str) -> Optional[int]:
        for (name, _), line in zip(reversed(self.entries), reversed(self.lines)):
            if name == key:
                return line
        return None

    def keys(self) -> list[str]:
        return list(dict.fromkeys(name for name, _ in self.entries))

    def __contains__(self, key: str) -> bool:
        return any(name == key for name, _ in self.entries)

    def to_dict(self) -> dict:
        """Plain dict; repeated keys collect into lists."""
        result: dict[str, Any] = {}
        for name in self.keys():
            values = [v.to_dict() if isinstance(v, Block) else v for v in self.get_all(name)]
            result[name] = values[0] if len(values) == 1 else values
        return result


class DocumentTransformer(Transformer):
    """Transforms the parse tree to nested Blocks and Python values."""

    def start(self, items):
        block = Block()
        for (key, value), line in items:
            block.entries.append((key, value))
            block.lines.append(line)
        return block

    @v_args(meta=True)
    def assignment(self, meta, items):
        key, value = items
        return (str(key), value), getattr(meta, "line", None)

    @v_args(meta=True)
    def block(self, meta, items):
        key, *children = items
        return (str(key), self.start(children)), getattr(meta, "line", None)

    def number(self, items):
        token: Token = items[0]
        text = str(token)
        if token.type == "NAN":
            return math.nan
        if token.type == "INF":
            return -math.inf if text.startswith("-") else math.inf
        if any(ch in text for ch in ".eE"):
            return float(text)
        return int(text)

    def string(self, items):
        return json.loads(str(items[0]))

    def true(self, items):
        return True

    def false(self, items):
        return False

    def null(self, items):
        return None

    def array(self, items):
        return list(items)


class DocumentParser:
    """Parser for structured-text documents."""

    def __init__(self):
        grammar = GRAMMAR_FILE.read_text()
        self._parser = Lark(
            grammar,
            parser="lalr",
            propagate_positions=True,
            maybe_placeholders=False,
        )
        self._transformer = DocumentTransformer()

    def parse(self, text: str) -> Block:
        try:
            tree = self._parser.parse(text)
        except UnexpectedInput as e:
            raise ConfigError(f"syntax error at column {e.column}", line=e.line) from e
        try:
            return self._transformer.transform(tree)
        except VisitError as e:
            raise ConfigError(str(e.orig_exc)) from e

    def parse_file(self, path: str) -> Block:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read {path}: {e.strerror}") from e
        return self.parse(text)


def read_matrices(path: str, parser: Optional[DocumentParser] = None) -> list[SL2Z]:
    """`matrix = [a, b, c, d]` entries of a document, in file order."""
    parser = parser or DocumentParser()
    doc = parser.parse_file(path)
    matrices = []
    for (key, value), line in zip(doc.entries, doc.lines):
        if key != "matrix":
            continue
        if not isinstance(value, list) or len(value) != 4 or not all(isinstance(x, int) for x in value):
            raise ConfigError("expected four integers", field="matrix", line=line)
        try:
            matrices.append(SL2Z(*value))
        except InvalidMatrix as e:
            raise ConfigError(str(e), field="matrix", line=line) from e
    if not matrices:
        raise ConfigError(f"no matrix entries in {path}", field="matrix")
    return matrices


def read_report(path: str, parser: Optional[DocumentParser] = None) -> Block:
    parser = parser or DocumentParser()
    doc = parser.parse_file(path)
    report = doc.get("report")
    if not isinstance(report, Block):
        raise ConfigError(f"{path} has no report block", field="report")
    return report
