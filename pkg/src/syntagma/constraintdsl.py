"""The RESTR/VRESTR constraint language.

A constraint is a sequence of blocks joined by ``AND``/``OR``::

    {Context(TAG=NP) Target(TAG=N) Restriction(NUM=pl.)}
    {Target(TAG=N)} OR {Target(TAG=ADJ)} AND {Context(TAG=NP)}

Grammar (``AND`` binds tighter than ``OR``, both left-associative)::

    expr   := and ("OR" and)*
    and    := term ("AND" term)*
    term   := block | "(" expr ")"
    block  := "{" clause+ "}"
    clause := IDENT "(" pair ("," pair)* ")"
    pair   := IDENT "=" (ATOM | block)

Parentheses are only emitted by the serializer when a tree cannot be
written without them (e.g. an OR under an AND).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

__all__ = [
    "And",
    "Block",
    "Clause",
    "ConstraintEvaluationError",
    "ConstraintSyntaxError",
    "DEFAULT_KEYWORDS",
    "Or",
    "eval_constraint",
    "parse_constraint",
    "serialize_constraint",
]

# Which feature map a clause keyword is checked against.
DEFAULT_KEYWORDS: Mapping[str, str] = {
    "Context": "context",
    "Target": "target",
    "Restriction": "target",
}


class ConstraintSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ConstraintEvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Clause:
    keyword: str
    pairs: tuple[tuple[str, Union[str, "Block"]], ...]


@dataclass(frozen=True)
class Block:
    clauses: tuple[Clause, ...]


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Union[Block, And, Or]

_TOKEN = re.compile(
    r"\s*(?:(?P<punct>[{}()=,])|(?P<word>[^\s{}()=,]+))"
)
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ConstraintSyntaxError("unexpected character", pos)
                break
            self.tokens.append((m.group("punct") or m.group("word"), m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            want = f"{expected!r}" if expected else "more input"
            raise ConstraintSyntaxError(f"unexpected end of constraint, expected {want}", self.pos())
        if expected is not None and tok != expected:
            raise ConstraintSyntaxError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def parse(self) -> Expr:
        if self.peek() is None:
            raise ConstraintSyntaxError("empty constraint", 0)
        expr = self.expr()
        if self.peek() is not None:
            raise ConstraintSyntaxError(f"unexpected {self.peek()!r}", self.pos())
        return expr

    def expr(self) -> Expr:
        node = self.conj()
        while self.peek() == "OR":
            self.take()
            node = Or(node, self.conj())
        return node

    def conj(self) -> Expr:
        node = self.term()
        while self.peek() == "AND":
            self.take()
            node = And(node, self.term())
        return node

    def term(self) -> Expr:
        if self.peek() == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        return self.block()

    def block(self) -> Block:
        start = self.pos()
        self.take("{")
        clauses = []
        while self.peek() not in ("}", None):
            clauses.append(self.clause())
        if self.peek() is None:
            raise ConstraintSyntaxError("unterminated block", start)
        self.take("}")
        if not clauses:
            raise ConstraintSyntaxError("empty block", start)
        return Block(tuple(clauses))

    def ident(self, what: str) -> str:
        pos = self.pos()
        tok = self.take()
        if not _IDENT.fullmatch(tok) or tok in ("AND", "OR"):
            raise ConstraintSyntaxError(f"expected {what}, found {tok!r}", pos)
        return tok

    def clause(self) -> Clause:
        start = self.pos()
        keyword = self.ident("clause keyword")
        if self.peek() != "(":
            raise ConstraintSyntaxError(f"expected '(' after {keyword}", self.pos())
        self.take("(")
        pairs = []
        seen = set()
        while True:
            attr_pos = self.pos()
            attr = self.ident("attribute name")
            if attr in seen:
                raise ConstraintSyntaxError(f"duplicate attribute {attr!r} in {keyword}", attr_pos)
            seen.add(attr)
            self.take("=")
            if self.peek() == "{":
                value: str | Block = self.block()
            else:
                value_pos = self.pos()
                value = self.take()
                if value in ("{", "}", "(", ")", "=", ","):
                    raise ConstraintSyntaxError(f"expected a value, found {value!r}", value_pos)
            pairs.append((attr, value))
            if self.peek() == ",":
                self.take()
                continue
            if self.peek() is None:
                raise ConstraintSyntaxError(f"unterminated clause {keyword}", start)
            self.take(")")
            break
        return Clause(keyword, tuple(pairs))


def parse_constraint(text: str) -> Expr:
    return _Parser(text).parse()


def _serialize_block(block: Block) -> str:
    parts = []
    for clause in block.clauses:
        pairs = ", ".join(
            f"{attr}={_serialize_block(value) if isinstance(value, Block) else value}"
            for attr, value in clause.pairs
        )
        parts.append(f"{clause.keyword}({pairs})")
    return "{" + " ".join(parts) + "}"


def serialize_constraint(expr: Expr) -> str:
    if isinstance(expr, Block):
        return _serialize_block(expr)
    if isinstance(expr, Or):
        # right operand of a left-associative OR needs parens when it is itself an OR
        right = serialize_constraint(expr.right)
        if isinstance(expr.right, Or):
            right = f"({right})"
        return f"{serialize_constraint(expr.left)} OR {right}"
    if isinstance(expr, And):
        left = serialize_constraint(expr.left)
        right = serialize_constraint(expr.right)
        if isinstance(expr.left, Or):
            left = f"({left})"
        if not isinstance(expr.right, Block):
            right = f"({right})"
        return f"{left} AND {right}"
    raise TypeError(f"not a constraint node: {expr!r}")


def _check_keywords(expr: Expr, keywords: Mapping[str, str]) -> None:
    if isinstance(expr, (And, Or)):
        _check_keywords(expr.left, keywords)
        _check_keywords(expr.right, keywords)
        return
    for clause in expr.clauses:
        if clause.keyword not in keywords:
            raise ConstraintEvaluationError(f"unregistered clause keyword {clause.keyword!r}")
        for _, value in clause.pairs:
            if isinstance(value, Block):
                _check_keywords(value, keywords)


def _eval(expr: Expr, target: Mapping[str, str], context: Mapping[str, str], keywords) -> bool:
    if isinstance(expr, And):
        return _eval(expr.left, target, context, keywords) and _eval(expr.right, target, context, keywords)
    if isinstance(expr, Or):
        return _eval(expr.left, target, context, keywords) or _eval(expr.right, target, context, keywords)
    for clause in expr.clauses:
        features = context if keywords[clause.keyword] == "context" else target
        for attr, value in clause.pairs:
            if isinstance(value, Block):
                if not _eval(value, target, context, keywords):
                    return False
            elif features.get(attr) != value:
                return False
    return True


def eval_constraint(
    expr: Expr,
    target: Mapping[str, str],
    context: Mapping[str, str],
    keywords: Mapping[str, str] | None = None,
) -> bool:
    """Evaluate a constraint against the target node and its context node.

    A pair holds iff the routed feature map has the attribute with exactly
    that atom; a block-valued pair holds iff the nested block does. Every
    clause keyword must be registered in ``keywords``.
    """
    keywords = DEFAULT_KEYWORDS if keywords is None else keywords
    _check_keywords(expr, keywords)
    return _eval(expr, target, context, keywords)
