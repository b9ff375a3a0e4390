"""S-expression reader and writer for the PDDL subset."""

from __future__ import annotations

import logging
from typing import Any

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from ..exceptions import PddlSyntaxError

_LOGGER = logging.getLogger(__name__)

type SExpr = str | list[SExpr]

_GRAMMAR = r"""
start: _expr*
_expr: group | SYMBOL
group: "(" _expr* ")"

SYMBOL: /[^\s();]+/
COMMENT: /;[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


class _ToLists(Transformer[Any, list[SExpr]]):
    """Turn the parse tree into nested lists of lower-cased symbols."""

    def start(self, items: list[SExpr]) -> list[SExpr]:
        return list(items)

    def group(self, items: list[SExpr]) -> list[SExpr]:
        return list(items)

    def SYMBOL(self, token: Any) -> str:  # noqa: N802
        return str(token).lower()


_PARSER = Lark(_GRAMMAR, parser="lalr", transformer=_ToLists())


def parse_sexprs(text: str) -> list[SExpr]:
    """Parse every top-level expression in `text`.

    Symbols are lower-cased; whitespace and `;` comments are ignored.

    Raises:
        PddlSyntaxError: for unbalanced parentheses or stray characters.
    """
    try:
        result: list[SExpr] = _PARSER.parse(text)
    except UnexpectedInput as err:
        position = getattr(err, "pos_in_stream", None)
        if position is None or position < 0:
            position = len(text)
        raise PddlSyntaxError("Malformed s-expression", position) from err
    return result


def parse_sexpr(text: str) -> list[SExpr]:
    """Parse text holding exactly one parenthesized expression."""
    expressions = parse_sexprs(text)
    if len(expressions) != 1 or not isinstance(expressions[0], list):
        raise PddlSyntaxError(f"Expected one parenthesized expression, found {len(expressions)}")
    return expressions[0]


def format_sexpr(expr: SExpr) -> str:
    """Write an expression on a single line."""
    if isinstance(expr, str):
        return expr
    return "(" + " ".join(format_sexpr(item) for item in expr) + ")"


def symbol(expr: SExpr, what: str) -> str:
    """Return `expr` as a symbol or raise a syntax error naming `what`."""
    if not isinstance(expr, str):
        raise PddlSyntaxError(f"Expected {what}, found {format_sexpr(expr)}")
    return expr


def group(expr: SExpr, what: str) -> list[SExpr]:
    """Return `expr` as a list or raise a syntax error naming `what`."""
    if not isinstance(expr, list):
        raise PddlSyntaxError(f"Expected {what}, found {expr!r}")
    return expr
