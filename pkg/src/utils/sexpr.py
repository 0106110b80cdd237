"""
S-expression reader for term and rule files.

Atoms are maximal runs of characters other than whitespace and parentheses;
``;`` starts a comment running to the end of the line. Every node remembers
its 1-based line and column for error reporting.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from ..core.dpo import Rule
from ..core.errors import LabelError, ParseError
from ..core.termgraph import Signature, Term


@dataclass(frozen=True)
class Atom:
    name: str
    line: int
    column: int


@dataclass(frozen=True)
class SList:
    items: Tuple['SExpr', ...]
    line: int
    column: int


SExpr = Union[Atom, SList]


def read_all(text: str) -> List[SExpr]:
    """
    Read every top-level expression of a text.

    Raises:
        ParseError: unclosed list (reported just past the last token, naming
            the innermost open ``(``), stray ``)``
    """
    stack: List[Tuple[List[SExpr], int, int]] = []
    top: List[SExpr] = []
    line, column = 1, 1
    end = (1, 1)
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == '\n':
            line, column = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i, column = i + 1, column + 1
            continue
        if ch == ';':
            while i < len(text) and text[i] != '\n':
                i += 1
            continue
        if ch == '(':
            stack.append(([], line, column))
            i, column = i + 1, column + 1
            end = (line, column)
            continue
        if ch == ')':
            if not stack:
                raise ParseError("unexpected ')'", line, column)
            items, l0, c0 = stack.pop()
            (stack[-1][0] if stack else top).append(SList(tuple(items), l0, c0))
            i, column = i + 1, column + 1
            end = (line, column)
            continue
        start = i
        while i < len(text) and not text[i].isspace() and text[i] not in '();':
            i += 1
        (stack[-1][0] if stack else top).append(Atom(text[start:i], line, column))
        column += i - start
        end = (line, column)
    if stack:
        _, l0, c0 = stack[-1]
        raise ParseError("unclosed list", end[0], end[1], opened=(l0, c0))
    return top


def read_one(text: str) -> SExpr:
    exprs = read_all(text)
    if len(exprs) != 1:
        raise ParseError(f"expected exactly one expression, found {len(exprs)}", 1, 1)
    return exprs[0]


def to_term(expr: SExpr, sig: Optional[Signature] = None, allow_variables: bool = False) -> Term:
    """
    Convert an expression into a term; ``(op a b)`` applies op, a bare atom
    is a constant (or a variable when allowed and absent from Σ).

    Raises:
        ParseError: empty list or a list headed by a list
        LabelError: unknown symbol or arity mismatch (with position)
    """
    if isinstance(expr, Atom):
        if sig is not None and expr.name not in sig:
            if allow_variables:
                return Term(expr.name)
            raise LabelError(f"unknown symbol {expr.name!r} at {expr.line}:{expr.column}")
        if sig is not None and sig.arity(expr.name) != 0:
            raise LabelError(f"{expr.name!r} expects {sig.arity(expr.name)} arguments, "
                             f"got 0 at {expr.line}:{expr.column}")
        return Term(expr.name)
    if not expr.items:
        raise ParseError("empty list", expr.line, expr.column)
    head = expr.items[0]
    if not isinstance(head, Atom):
        raise ParseError("operator must be a symbol", head.line, head.column)
    args = tuple(to_term(a, sig, allow_variables) for a in expr.items[1:])
    if sig is not None:
        if head.name not in sig:
            raise LabelError(f"unknown symbol {head.name!r} at {head.line}:{head.column}")
        if sig.arity(head.name) != len(args):
            raise LabelError(f"{head.name!r} expects {sig.arity(head.name)} arguments, "
                             f"got {len(args)} at {head.line}:{head.column}")
    return Term(head.name, args)


def parse_term(text: str, sig: Optional[Signature] = None) -> Term:
    """Parse a single closed term, e.g. ``(/ (* a 2) 2)``."""
    return to_term(read_one(text), sig)


def parse_pattern(text: str, sig: Signature) -> Term:
    return to_term(read_one(text), sig, allow_variables=True)


def parse_rules(text: str, sig: Signature) -> List[Rule]:
    """
    Parse a rule file: ``(rule NAME LHS RHS [:nac PATTERN]...)`` per rule.

    Raises:
        ParseError: malformed rule form or duplicate rule name
        LabelError: pattern errors
    """
    rules: List[Rule] = []
    for expr in read_all(text):
        items = expr.items if isinstance(expr, SList) else ()
        if (len(items) < 4 or not isinstance(items[0], Atom) or items[0].name != 'rule'
                or not isinstance(items[1], Atom)):
            raise ParseError("expected (rule NAME LHS RHS [:nac PATTERN])", expr.line, expr.column)
        name = items[1].name
        if any(r.name == name for r in rules):
            raise ParseError(f"rule {name!r} defined twice", items[1].line, items[1].column)
        lhs = to_term(items[2], sig, allow_variables=True)
        rhs = to_term(items[3], sig, allow_variables=True)
        nacs: Optional[List[Term]] = None
        rest: Sequence[SExpr] = items[4:]
        while rest:
            key = rest[0]
            if not isinstance(key, Atom) or key.name != ':nac' or len(rest) < 2:
                raise ParseError("expected ':nac PATTERN'", key.line, key.column)
            nacs = (nacs or []) + [to_term(rest[1], sig, allow_variables=True)]
            rest = rest[2:]
        try:
            rules.append(Rule.from_patterns(name, lhs, rhs, sig, nacs))
        except LabelError as e:
            raise LabelError(f"{e} (rule at {expr.line}:{expr.column})") from e
    return rules
