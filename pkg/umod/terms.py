"""Terms over ``∧``, ``→``, ``1``, ``j`` and ``0``, and their text syntax.

Grammar::

    term  := imp
    imp   := conj ("->" imp)?
    conj  := unary ("&" unary)*
    unary := "j" "(" term ")" | "~" unary | "1" | "0" | "x" digits | "(" term ")"
"""
from typing import Dict, FrozenSet, List, Tuple
import re

from attr import dataclass

from .errors import TermSyntaxError


class Term:
    def variables(self) -> FrozenSet[int]:
        raise NotImplementedError()

    @property
    def uses_nucleus(self) -> bool:
        raise NotImplementedError()

    @property
    def uses_bottom(self) -> bool:
        raise NotImplementedError()

    def rename(self, mapping: Dict[int, int]) -> "Term":
        raise NotImplementedError()


@dataclass(frozen=True)
class Var(Term):
    index: int

    def variables(self) -> FrozenSet[int]:
        return frozenset([self.index])

    @property
    def uses_nucleus(self) -> bool:
        return False

    @property
    def uses_bottom(self) -> bool:
        return False

    def rename(self, mapping: Dict[int, int]) -> Term:
        return Var(mapping.get(self.index, self.index))

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Top(Term):
    def variables(self) -> FrozenSet[int]:
        return frozenset()

    @property
    def uses_nucleus(self) -> bool:
        return False

    @property
    def uses_bottom(self) -> bool:
        return False

    def rename(self, mapping: Dict[int, int]) -> Term:
        return self

    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Bot(Term):
    def variables(self) -> FrozenSet[int]:
        return frozenset()

    @property
    def uses_nucleus(self) -> bool:
        return False

    @property
    def uses_bottom(self) -> bool:
        return True

    def rename(self, mapping: Dict[int, int]) -> Term:
        return self

    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class J(Term):
    body: Term

    def variables(self) -> FrozenSet[int]:
        return self.body.variables()

    @property
    def uses_nucleus(self) -> bool:
        return True

    @property
    def uses_bottom(self) -> bool:
        return self.body.uses_bottom

    def rename(self, mapping: Dict[int, int]) -> Term:
        return J(self.body.rename(mapping))

    def __str__(self) -> str:
        return f"j({self.body})"


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term

    def variables(self) -> FrozenSet[int]:
        return self.left.variables() | self.right.variables()

    @property
    def uses_nucleus(self) -> bool:
        return self.left.uses_nucleus or self.right.uses_nucleus

    @property
    def uses_bottom(self) -> bool:
        return self.left.uses_bottom or self.right.uses_bottom

    def rename(self, mapping: Dict[int, int]) -> Term:
        return Meet(self.left.rename(mapping), self.right.rename(mapping))

    def __str__(self) -> str:
        left = f"({self.left})" if isinstance(self.left, Imp) else str(self.left)
        right = f"({self.right})" if isinstance(self.right, (Imp, Meet)) else str(self.right)
        return f"{left} & {right}"


@dataclass(frozen=True)
class Imp(Term):
    left: Term
    right: Term

    def variables(self) -> FrozenSet[int]:
        return self.left.variables() | self.right.variables()

    @property
    def uses_nucleus(self) -> bool:
        return self.left.uses_nucleus or self.right.uses_nucleus

    @property
    def uses_bottom(self) -> bool:
        return self.left.uses_bottom or self.right.uses_bottom

    def rename(self, mapping: Dict[int, int]) -> Term:
        return Imp(self.left.rename(mapping), self.right.rename(mapping))

    def __str__(self) -> str:
        left = f"({self.left})" if isinstance(self.left, Imp) else str(self.left)
        return f"{left} -> {self.right}"


def iff(left: Term, right: Term) -> Term:
    return Meet(Imp(left, right), Imp(right, left))


def neg(term: Term) -> Term:
    return Imp(term, Bot())


_TOKEN = re.compile(r"\s*(?:(->)|(&)|(\()|(\))|(~)|(j)(?=\s*\()|(x\d+)|([01]))")


class _Parser:
    def __init__(self, text: str, bounded: bool) -> None:
        self.text = text
        self.bounded = bounded
        self.tokens: List[Tuple[str, int]] = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = _TOKEN.match(text, position)
            if not match:
                start = len(text) - len(text[position:].lstrip())
                raise TermSyntaxError(f"Unexpected character {text[start]!r}", start)
            start = match.start(match.lastindex)
            self.tokens.append((match.group(match.lastindex), start))
            position = match.end()
        self.index = 0

    def peek(self) -> Tuple[str, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return "", len(self.text)

    def take(self, expected: str = None) -> Tuple[str, int]:
        token, position = self.peek()
        if not token:
            raise TermSyntaxError("Unexpected end of input", position)
        if expected is not None and token != expected:
            raise TermSyntaxError(f"Expected {expected!r}, found {token!r}", position)
        self.index += 1
        return token, position

    def parse(self) -> Term:
        term = self.implication()
        token, position = self.peek()
        if token:
            raise TermSyntaxError(f"Unexpected {token!r}", position)
        return term

    def implication(self) -> Term:
        left = self.conjunction()
        if self.peek()[0] == "->":
            self.take()
            return Imp(left, self.implication())
        return left

    def conjunction(self) -> Term:
        term = self.unary()
        while self.peek()[0] == "&":
            self.take()
            term = Meet(term, self.unary())
        return term

    def unary(self) -> Term:
        token, position = self.take()
        if token == "j":
            self.take("(")
            body = self.implication()
            self.take(")")
            return J(body)
        elif token == "~":
            if not self.bounded:
                raise TermSyntaxError("Negation needs a bounded variety", position)
            return neg(self.unary())
        elif token == "1":
            return Top()
        elif token == "0":
            if not self.bounded:
                raise TermSyntaxError("Constant 0 needs a bounded variety", position)
            return Bot()
        elif token.startswith("x"):
            index = int(token[1:])
            if index < 1:
                raise TermSyntaxError("Variables are numbered from x1", position)
            return Var(index)
        elif token == "(":
            term = self.implication()
            self.take(")")
            return term
        raise TermSyntaxError(f"Unexpected {token!r}", position)


def parse_term(text: str, bounded: bool = True) -> Term:
    """Parse ``text``; ``~`` and ``0`` are syntax errors unless ``bounded``."""
    return _Parser(text, bounded).parse()
