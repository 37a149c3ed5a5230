"""Tiny recursive-descent parser shared by the scalar and polynomial text formats.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' '-'? INT)?
    atom   := INT | NAME | NAME '[' INT (',' INT)* ']' | '(' expr ')'
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Callable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        num, name, op = mt.groups()
        if num is not None:
            out.append(("int", num))
        elif name is not None:
            out.append(("name", name))
        elif op is not None:
            if op not in "+-*/^()[],":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
        pos = mt.end()
    return out


class _Parser:
    def __init__(self, text: str, const: Callable[[Fraction], Any],
                 atom: Callable[[str, tuple[int, ...]], Any]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.const = const
        self.atom_cb = atom

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "")

    def take(self, kind=None, val=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (val and tok[1] != val):
            raise ParseError(f"expected {val or kind} at token {self.i} in {self.text!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        v = self.expr()
        if self.peek()[0] != "eof":
            raise ParseError(f"trailing input at token {self.i} in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            e = sign * int(self.take("int")[1])
            v = v ** e
        return v

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return self.const(Fraction(int(val)))
        if kind == "name":
            self.take()
            args: list[int] = []
            if self.peek() == ("op", "["):
                self.take()
                while True:
                    sign = 1
                    if self.peek() == ("op", "-"):
                        self.take()
                        sign = -1
                    args.append(sign * int(self.take("int")[1]))
                    if self.peek() == ("op", ","):
                        self.take()
                        continue
                    self.take("op", "]")
                    break
            return self.atom_cb(val, tuple(args))
        if (kind, val) == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_expression(text: str, const: Callable[[Fraction], Any],
                     atom: Callable[[str, tuple[int, ...]], Any]) -> Any:
    """Evaluate ``text`` using ``const`` for integer literals and ``atom`` for names."""
    return _Parser(text, const, atom).parse()
