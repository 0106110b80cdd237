"""
Exception hierarchy for adhesive-egg.

Every error raised on purpose by the library derives from EggError; the CLI
maps all of them to exit code 1.
"""

from typing import Optional, Tuple


class EggError(Exception):
    """Base class for all adhesive-egg errors."""

    hint: Optional[str] = None


class CarrierMismatch(EggError):
    """Domains, codomains or carriers that should agree do not."""


class InvalidMorphism(EggError):
    """A component triple breaks one of the commuting squares."""


class LabelError(EggError):
    """Unknown symbol, arity mismatch, label clash or multi-node target."""


class NotATermGraph(EggError):
    """A term graph was required (single targets, injective target map)."""


class CyclicGraph(EggError):
    """An acyclic graph was required."""

    hint = "maximal sharing and extraction only accept acyclic e-graphs"


class DanglingCondition(EggError):
    """Deleting the matched items would leave a kept edge without a node."""


class IdentificationCondition(EggError):
    """The match identifies a deleted item with a kept one."""


class ExtractionError(EggError):
    """No finite-cost term can be read off the requested class."""


class SignatureMismatch(EggError):
    """Objects built over different signatures were combined."""


class SchemaError(EggError):
    """A JSON document, text file or configuration value is malformed."""


class ParseError(SchemaError):
    """Syntax error in an s-expression based file, with its position."""

    def __init__(self, message: str, line: int, column: int, opened: Optional[Tuple[int, int]] = None):
        self.message = message
        self.line = line
        self.column = column
        self.opened = opened
        where = "" if opened is None else f"; '(' opened at {opened[0]}:{opened[1]}"
        super().__init__(f"{message} at {line}:{column}{where}")


class ClosureViolation(EggError):
    """Edges with the same symbol and classwise-equal sources have targets in different classes."""

    hint = "run rebuild to restore the closure of the equivalence"
