"""Infix policy language.

Grammar:
    policy   :: or_expr END
    or_expr  :: and_expr ('or' and_expr)*
    and_expr :: primary ('and' primary)*
    primary  :: ATTRIBUTE
              | NUMBER 'of' '(' or_expr (',' or_expr)* ')'
              | '(' or_expr ')'

'and' binds tighter than 'or'; both fold to the left, so ``a and b and c``
is ``(a and b) and c``. Parentheses and gates nest at most MAX_DEPTH levels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from aben.errors import PolicySyntaxError, ThresholdOutOfRange
from aben.policy.tree import KEYWORDS, AccessNode, AccessTree, Gate, Leaf

ATTRIBUTE = "attribute"
NUMBER = "threshold"
END = "end of input"

# bounds both parenthesis nesting and the height of the built tree
MAX_DEPTH = 64

_PRIMARY_START = frozenset({ATTRIBUTE, NUMBER, "("})

_TOKEN = re.compile(
    r"\s*(?:(?P<number>[0-9]+)(?![A-Za-z0-9_])"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[(),]))"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def parse_policy(text: str) -> AccessTree:
    parser = _Parser(text)
    root = parser.parse()
    return AccessTree(root)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    position = 0
    while True:
        while position < len(text) and text[position].isspace():
            position += 1
        if position >= len(text):
            tokens.append(Token(END, "", position))
            return tokens

        match = _TOKEN.match(text, position)
        if match is None:
            tokens.append(Token("invalid", text[position], position))
            tokens.append(Token(END, "", len(text)))
            return tokens

        start = match.start(match.lastgroup)
        value = match.group(match.lastgroup)
        if match.lastgroup == "number":
            tokens.append(Token(NUMBER, value, start))
        elif match.lastgroup == "word":
            kind = value if value in KEYWORDS else ATTRIBUTE
            tokens.append(Token(kind, value, start))
        else:
            tokens.append(Token(value, value, start))
        position = match.end()


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0
        self.nesting = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.token
        if token.kind != END:
            self.index += 1
        return token

    def accept(self, kind: str) -> bool:
        if self.token.kind == kind:
            self.advance()
            return True
        return False

    def expect(self, kind: str, expected: frozenset[str]) -> Token:
        if self.token.kind != kind:
            self.fail(expected)
        return self.advance()

    def fail(self, expected: frozenset[str]) -> None:
        token = self.token
        found = "end of input" if token.kind == END else repr(token.text)
        raise PolicySyntaxError(
            f"unexpected {found}",
            position=token.position,
            expected=expected,
        )

    def parse(self) -> AccessNode:
        node, _ = self.parse_or()
        self.expect(END, frozenset({"and", "or", END}))
        return node

    # the parse_* methods return the node and its height, a leaf being 0

    def parse_or(self) -> tuple[AccessNode, int]:
        node, height = self.parse_and()
        while self.token.kind == "or":
            operator = self.advance()
            right, right_height = self.parse_and()
            node = Gate(1, (node, right))
            height = self.grow(max(height, right_height), operator)
        return node, height

    def parse_and(self) -> tuple[AccessNode, int]:
        node, height = self.parse_primary()
        while self.token.kind == "and":
            operator = self.advance()
            right, right_height = self.parse_primary()
            node = Gate(2, (node, right))
            height = self.grow(max(height, right_height), operator)
        return node, height

    def parse_primary(self) -> tuple[AccessNode, int]:
        token = self.token

        if token.kind == ATTRIBUTE:
            self.advance()
            return Leaf(token.text), 0

        if token.kind == NUMBER:
            self.advance()
            return self.parse_threshold(token)

        if token.kind == "(":
            self.advance()
            self.enter(token)
            result = self.parse_or()
            self.expect(")", frozenset({"and", "or", ")"}))
            self.nesting -= 1
            return result

        self.fail(_PRIMARY_START)
        raise AssertionError("unreachable")

    def parse_threshold(self, count: Token) -> tuple[AccessNode, int]:
        self.expect("of", frozenset({"of"}))
        self.enter(self.expect("(", frozenset({"("})))

        children, heights = zip(*self.parse_operands())
        self.expect(")", frozenset({"and", "or", ",", ")"}))
        self.nesting -= 1

        threshold = int(count.text)
        if not 1 <= threshold <= len(children):
            raise ThresholdOutOfRange(
                f"threshold {threshold} at position {count.position} "
                f"outside 1..{len(children)}"
            )
        return Gate(threshold, tuple(children)), self.grow(max(heights), count)

    def parse_operands(self) -> list[tuple[AccessNode, int]]:
        operands = [self.parse_or()]
        while self.accept(","):
            operands.append(self.parse_or())
        return operands

    def enter(self, token: Token) -> None:
        self.nesting += 1
        if self.nesting > MAX_DEPTH:
            self.too_deep(token)

    def grow(self, height: int, token: Token) -> int:
        if height + 1 > MAX_DEPTH:
            self.too_deep(token)
        return height + 1

    def too_deep(self, token: Token) -> None:
        raise PolicySyntaxError(
            f"policy nests deeper than {MAX_DEPTH} levels",
            position=token.position,
            expected=frozenset(),
        )
