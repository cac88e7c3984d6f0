"""Edge-density schedules ``p(n)`` written as small arithmetic expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | 'n' | 'log' '(' expr ')' | '(' expr ')'

``log`` is the natural logarithm.  Examples: ``10*log(n)/n``,
``n^(-0.9)``, ``1 - 2/n^2``, ``0.5``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

_TOKEN = re.compile(r"\s*(?:((?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)|(log|n)|(\*\*|[-+*/^()]))")


class DensityError(ValueError):
    def __init__(self, message: str, token: str | None = None):
        self.token = token
        super().__init__(message)


def _tokenize(text: str) -> list[tuple[str, str]]:
    text = text.replace("−", "-")
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:].lstrip()
            bad = re.match(r"[A-Za-z_]\w*|\S", rest).group(0)
            raise DensityError(f"unexpected token {bad!r} in density expression", bad)
        num, word, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif word is not None:
            out.append((word, word))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "")

    def take(self, value=None):
        tok = self.peek()
        if value is not None and tok[1] != value:
            raise DensityError(f"expected {value!r}, got {tok[1] or 'end of input'!r}", tok[1])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = (op, node, self.unary())
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return ("^", base, self.unary())
        return base

    def atom(self):
        kind, text = self.peek()
        if kind == "num":
            self.take()
            return ("num", float(text))
        if kind == "n":
            self.take()
            return ("n",)
        if kind == "log":
            self.take()
            self.take("(")
            inner = self.expr()
            self.take(")")
            return ("log", inner)
        if text == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise DensityError(f"unexpected token {text or 'end of input'!r}", text)


def _eval(node, n: float) -> float:
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "n":
        return n
    if tag == "neg":
        return -_eval(node[1], n)
    if tag == "log":
        return math.log(_eval(node[1], n))
    a, b = _eval(node[1], n), _eval(node[2], n)
    if tag == "+":
        return a + b
    if tag == "-":
        return a - b
    if tag == "*":
        return a * b
    if tag == "/":
        return a / b
    return a ** b


@dataclass(frozen=True)
class DensitySchedule:
    text: str

    def __post_init__(self):
        p = _Parser(_tokenize(self.text))
        tree = p.expr()
        if p.peek()[0] != "eof":
            raise DensityError(f"unexpected token {p.peek()[1]!r}", p.peek()[1])
        object.__setattr__(self, "_tree", tree)

    def raw(self, n: int) -> float:
        return float(_eval(self._tree, float(n)))

    def __call__(self, n: int) -> float:
        try:
            p = self.raw(n)
        except (ValueError, ZeroDivisionError) as exc:
            raise DensityError(f"density {self.text!r} undefined at n={n}: {exc}") from None
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise DensityError(f"density {self.text!r} evaluates to {p} outside [0, 1] at n={n}")
        return p
