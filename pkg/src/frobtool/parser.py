"""Text input: ring specifications and polynomial expressions.

Ring files are ``key=value`` lines (``p``, ``vars``, ``order`` and the
optional named polynomials ``f``, ``eps``, ``c``) with ``#`` comments. The
same keys may also be given on one line separated by spaces, which is how the
command line's ``--ring`` flag is written.

Polynomial grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | NAME | '(' expr ')'

Multiplication must be written explicitly; ``x1x2`` is a single identifier.
"""

from __future__ import annotations

import re
from math import comb
from dataclasses import dataclass, field

from .errors import BadExponent, BadOrder, DuplicateVar, NotPrime, Overflow, ParseError, UnknownVar
from .poly import Polynomial
from .ring import MAX_EXP, ORDERS, RingSpec, is_prime

POLY_KEYS = ("f", "eps", "c")
_KEY = re.compile(r"(?:^|(?<=\s))(p|vars|order|f|eps|c)\s*=")
_MAX_TERMS = 10**6
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass
class RingFile:
    ring: RingSpec
    polys: dict = field(default_factory=dict)


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _split_entries(text):
    """Yield (key, value, value_offset) triples in source order."""
    entries = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if stripped:
            matches = list(_KEY.finditer(line))
            first = len(line) - len(line.lstrip())
            if not matches or matches[0].start() != first:
                line_no, col = _line_col(text, offset + first)
                raise ParseError(f"expected key=value, got {stripped!r}", line_no, col)
            for i, m in enumerate(matches):
                end = matches[i + 1].start() if i + 1 < len(matches) else len(line)
                value = line[m.end():end]
                lead = len(value) - len(value.lstrip())
                entries.append((m.group(1), value.strip(), offset + m.end() + lead))
        offset += len(raw)
    return entries


def parse_ring_file(text: str) -> RingFile:
    entries = _split_entries(text)
    seen = {}
    for key, value, pos in entries:
        if key in seen:
            raise ParseError(f"key {key!r} given twice", *_line_col(text, pos))
        seen[key] = (value, pos)
    for key in ("p", "vars"):
        if key not in seen:
            raise ParseError(f"missing required key {key!r}", *_line_col(text, len(text)))

    value, pos = seen["p"]
    if not re.fullmatch(r"\d+", value):
        raise ParseError(f"p must be an integer literal, got {value!r}", *_line_col(text, pos))
    p = int(value)
    if not is_prime(p) or p > 1 << 16:
        raise NotPrime(f"p={p} is not a prime <= 2^16")

    value, pos = seen["vars"]
    names = value.split()
    if not names:
        raise ParseError("vars is empty", *_line_col(text, pos))
    for name in names:
        if not _IDENT.fullmatch(name):
            raise ParseError(f"bad variable name {name!r}", *_line_col(text, pos + value.find(name)))
    dup = [n for i, n in enumerate(names) if n in names[:i]]
    if dup:
        raise DuplicateVar(f"duplicate variable {dup[0]!r}")

    order = "grevlex"
    if "order" in seen:
        order = seen["order"][0]
        if order not in ORDERS:
            raise BadOrder(f"unknown order {order!r}; expected one of {', '.join(ORDERS)}")

    ring = RingSpec(p, tuple(names), order)
    polys = {}
    for key in POLY_KEYS:
        if key in seen:
            value, pos = seen[key]
            polys[key] = _parse_poly_at(value, ring, text, pos)
    return RingFile(ring, polys)


def parse_ring_spec(text: str) -> RingSpec:
    return parse_ring_file(text).ring


# polynomial expressions

_TOKEN = re.compile(r"\s*(?:([0-9]+)|([A-Za-z][A-Za-z0-9_]*)|(.)|$)", re.DOTALL)


def _tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.lastindex is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                tokens.append(("bad", ch, start))
            else:
                tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _PolyParser:
    def __init__(self, src, ring, text, base):
        self.src = src
        self.ring = ring
        self.text = text
        self.base = base
        self.tokens = _tokenize(src)
        self.i = 0
        self.vars = {name: i for i, name in enumerate(ring.variables)}

    def error(self, cls, message, tok=None):
        tok = tok or self.tokens[self.i]
        raise cls(message, *_line_col(self.text, self.base + tok[2]))

    def peek(self):
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek() == "end":
            self.error(ParseError, "empty expression")
        value = self.expr()
        if self.peek() != "end":
            tok = self.tokens[self.i]
            self.error(ParseError, f"unexpected {tok[1]!r}; multiplication needs an explicit '*'")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() == "-":
                self.error(BadExponent, "negative exponent")
            tok = self.take()
            if tok[0] != "int":
                self.error(ParseError, "exponent must be a non-negative integer literal", tok)
            k = int(tok[1])
            if k >= MAX_EXP:
                self.error(BadExponent, "exponent too large", tok)
            if self.peek() == "^":
                self.error(ParseError, "chained exponents need parentheses")
            try:
                return _power(base, k)
            except Overflow as exc:
                self.error(BadExponent, str(exc), tok)
        return base

    def atom(self):
        tok = self.take()
        kind = tok[0]
        if kind == "int":
            return Polynomial.constant(self.ring, int(tok[1]))
        if kind == "name":
            if tok[1] not in self.vars:
                self.error(UnknownVar, f"unknown variable {tok[1]!r}", tok)
            return Polynomial.var(self.ring, self.vars[tok[1]])
        if kind == "(":
            value = self.expr()
            if self.peek() != ")":
                self.error(ParseError, "expected ')'")
            self.take()
            return value
        if kind == "end":
            self.error(ParseError, "unexpected end of input", tok)
        self.error(ParseError, f"unexpected {tok[1]!r}", tok)


def _power(base, k):
    # monomials are raised directly so that large literal exponents stay cheap
    if len(base) <= 1:
        if not base:
            return base if k else Polynomial.constant(base.ring, 1)
        (m, c), = base.terms.items()
        if k * max(m) >= MAX_EXP:
            raise Overflow("exponent overflow")
        return Polynomial(base.ring, {tuple(k * e for e in m): pow(c, k, base.ring.p)})
    # bound the number of terms of base^k digit by digit before expanding
    t = len(base)
    bound, kk = 1, k
    while kk:
        kk, d = divmod(kk, base.ring.p)
        bound *= comb(d + t - 1, t - 1)
        if bound > _MAX_TERMS:
            raise Overflow(f"expansion of a {t}-term power {k} is too large")
    return base ** k


def _parse_poly_at(src, ring, text, base):
    return _PolyParser(src, ring, text, base).parse()


def parse_poly(text: str, ring: RingSpec) -> Polynomial:
    return _parse_poly_at(text, ring, text, 0)
