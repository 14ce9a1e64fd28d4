"""Parser for the expression language used in JSON payloads and on the CLI.

Grammar (integer exponents only, no implicit multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | NAME | "(" expr ")"

Names are ``zeta``, ``t``, ``u`` and the declared variables of the field the
expression is parsed into.  Printing goes through ``field.format`` and parses
back to the same element.
"""

import re

from .errors import AlgebraError, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            j = pos
            while j < n and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", j, text)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, field, names):
        self.text = text
        self.field = field
        self.names = names
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self.error(f"expected {op!r}, found {what}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}", tok)
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                val = val * rhs
            else:
                if self.field.is_zero(rhs):
                    raise self.error("division by zero", tok)
                val = val * self.field.inv(rhs)
        return val

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.unary()
            return -val if tok[1] == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be an integer", tok)
            n = tok[1]
            if neg:
                if self.field.is_zero(base):
                    raise self.error("negative power of zero", tok)
                base = self.field.inv(base)
            result = self.field.one
            while n:
                if n & 1:
                    result = result * base
                base = base * base
                n >>= 1
            return result
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return self.field.convert(val)
        if kind == "name":
            if val not in self.names:
                raise self.error(f"unknown identifier {val!r}", tok)
            try:
                return self.field.gen(val)
            except (AlgebraError, ValueError, IndexError) as exc:
                raise self.error(f"identifier {val!r} is not available here: {exc}", tok) from None
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        what = "end of input" if kind == "end" else repr(val)
        raise self.error(f"unexpected {what}", tok)


def field_names(field):
    names = set(field.variables)
    if field.constants.order >= 2:
        names.add("zeta")
    from .algebra.extension import Extension

    if isinstance(field, Extension):
        names.add("u")
    return names


def parse_expression(text, field):
    """Parse ``text`` into an element of ``field`` (constant, base, extension or K(t))."""
    if not isinstance(text, str):
        if isinstance(text, int):
            return field.convert(text)
        raise ParseError(f"expected an expression string, got {type(text).__name__}", 0, str(text))
    return _Parser(text, field, field_names(field)).parse()


def identifiers(text):
    """Identifier names appearing in an expression (for inferring a field)."""
    return {tok[1] for tok in tokenize(text) if tok[0] == "name"}
