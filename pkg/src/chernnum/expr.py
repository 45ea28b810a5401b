"""Bundle expressions for the command line.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := atom ("x" atom)*                  external product
    atom   := "T(" INT ")" ["@" INT]            tangent bundle of a factor
            | "O(" SIGNED_INT ")" ["@" INT]     line bundle O(a) of a factor
            | "C" ["^" INT]                     trivial bundle of rank r
            | "conj(" expr ")"
            | "(" expr ")"

Factor indices after ``@`` are 1-based. In ``A x B`` the operands take
consecutive blocks of factors; each operand's block has as many factors as
the largest index it mentions (at least one).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .bundles import VirtualBundle, conjugate, external, line, tangent_cp, trivial
from .cohomology import ProductSpace


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", or the punctuation character itself
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            word = text[i:j]
            # "xT(1)" style: a leading x is the product operator
            if word not in ("T", "O", "C", "conj", "x") and word.startswith("x"):
                tokens.append(Token("name", "x", i))
                i += 1
                continue
            tokens.append(Token("name", word, i))
            i = j
        elif ch in "()+-^@":
            tokens.append(Token(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", text, i)
    tokens.append(Token("end", "", len(text)))
    return tokens


@dataclass(frozen=True)
class Tangent:
    k: int
    factor: int | None
    pos: int


@dataclass(frozen=True)
class Line:
    degree: int
    factor: int | None
    pos: int


@dataclass(frozen=True)
class Trivial:
    rank: int
    pos: int


@dataclass(frozen=True)
class Conj:
    arg: "Node"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Product:
    operands: tuple["Node", ...]
    pos: int


Node = Union[Tangent, Line, Trivial, Conj, BinOp, Product]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, self.text, tok.pos)

    def accept(self, kind: str, value: str | None = None) -> Token | None:
        t = self.tok
        if t.kind == kind and (value is None or t.value == value):
            self.i += 1
            return t
        return None

    def expect(self, kind: str, value: str | None = None, what: str | None = None) -> Token:
        t = self.accept(kind, value)
        if t is None:
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.value)
            self.error(f"expected {what or value or kind}, found {found}")
        return t

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.value!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.tok
            self.i += 1
            node = BinOp(op.kind, node, self.term(), op.pos)
        return node

    def term(self) -> Node:
        start = self.tok.pos
        operands = [self.atom()]
        while self.accept("name", "x"):
            operands.append(self.atom())
        return operands[0] if len(operands) == 1 else Product(tuple(operands), start)

    def integer(self, signed: bool = False) -> int:
        sign = 1
        if signed:
            if self.accept("-"):
                sign = -1
            else:
                self.accept("+")
        return sign * int(self.expect("int", what="an integer").value)

    def factor_suffix(self) -> int | None:
        if self.accept("@"):
            tok = self.tok
            j = self.integer()
            if j < 1:
                self.error("factor indices start at 1", tok)
            return j
        return None

    def atom(self) -> Node:
        t = self.tok
        if self.accept("name", "T"):
            self.expect("(")
            k = self.integer()
            self.expect(")")
            return Tangent(k, self.factor_suffix(), t.pos)
        if self.accept("name", "O"):
            self.expect("(")
            a = self.integer(signed=True)
            self.expect(")")
            return Line(a, self.factor_suffix(), t.pos)
        if self.accept("name", "C"):
            rank = self.integer() if self.accept("^") else 1
            return Trivial(rank, t.pos)
        if self.accept("name", "conj"):
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Conj(inner, t.pos)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        found = "end of input" if t.kind == "end" else repr(t.value)
        self.error(f"expected a bundle (T(k), O(a), C^r, conj(...) or parentheses), found {found}")


def parse_bundle(text: str) -> Node:
    return _Parser(text).parse()


def _width(node: Node) -> int:
    if isinstance(node, (Tangent, Line)):
        return node.factor or 1
    if isinstance(node, Trivial):
        return 1
    if isinstance(node, Conj):
        return _width(node.arg)
    if isinstance(node, BinOp):
        return max(_width(node.left), _width(node.right))
    return sum(_width(op) for op in node.operands)


def evaluate(node: Node, space: ProductSpace, text: str = "") -> VirtualBundle:
    """Build the bundle described by ``node`` over ``space``."""

    def fail(message, n):
        raise ParseError(message, text, n.pos)

    def factor_index(n, base):
        j = (n.factor or 1) - 1
        if j >= len(base.factors):
            fail(f"factor @{j + 1} does not exist on {base}", n)
        return j

    def walk(n: Node, base: ProductSpace) -> VirtualBundle:
        if isinstance(n, Tangent):
            j = factor_index(n, base)
            if base.factors[j] != n.k:
                fail(f"T({n.k}) needs factor {j + 1} to be CP^{n.k}, but it is CP^{base.factors[j]}", n)
            return tangent_cp(base, j)
        if isinstance(n, Line):
            return line(base, n.degree, factor_index(n, base))
        if isinstance(n, Trivial):
            return trivial(base, n.rank)
        if isinstance(n, Conj):
            return conjugate(walk(n.arg, base))
        if isinstance(n, BinOp):
            left, right = walk(n.left, base), walk(n.right, base)
            return left + right if n.op == "+" else left - right
        widths = [_width(op) for op in n.operands]
        if sum(widths) != len(base.factors):
            fail(f"external product needs {sum(widths)} factors, {base} has {len(base.factors)}", n)
        result = None
        start = 0
        for op, w in zip(n.operands, widths):
            block = ProductSpace(base.factors[start:start + w], base.orientation if start == 0 else 1)
            piece = walk(op, block)
            result = piece if result is None else external(result, piece)
            start += w
        return result

    return walk(node, space)


def bundle_from_text(text: str, space: ProductSpace) -> VirtualBundle:
    return evaluate(parse_bundle(text), space, text)
