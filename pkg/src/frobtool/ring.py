"""Ring specifications over prime fields, with their monomial orders."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadIndex, BadOrder, DivisionByZero, DuplicateVar, NotPrime, TooManyVars

ORDERS = ("lex", "grlex", "grevlex")
# Block orders used internally for elimination: the first variable is
# compared first, the remaining ones by the named base order.
ELIM_ORDERS = tuple("elim-" + o for o in ORDERS)

MAX_VARS = 8
MAX_PRIME = 1 << 16
MAX_EXP = 1 << 31

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def ff_inv(a: int, p: int) -> int:
    """Inverse of ``a`` modulo the prime ``p``."""
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


@lru_cache(maxsize=None)
def order_key(order: str):
    """Sort key for exponent tuples; a larger key is a larger monomial."""
    if order == "lex":
        return tuple
    if order == "grlex":
        return lambda m: (sum(m), m)
    if order == "grevlex":
        return _grevlex_key
    if order in ELIM_ORDERS:
        base = order_key(order[5:])
        return lambda m: (m[0], base(m[1:]))
    raise BadOrder(f"unknown monomial order {order!r}")


def monomial_compare(a, b, order: str = "grevlex") -> int:
    """Three-way comparison of two exponent vectors: -1, 0 or 1."""
    if len(a) != len(b):
        raise BadIndex(f"monomials of different lengths {len(a)} and {len(b)}")
    key = order_key(order)
    ka, kb = key(tuple(a)), key(tuple(b))
    return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class RingSpec:
    """The polynomial ring F_p[variables] with a fixed monomial order."""

    p: int
    variables: tuple
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p > MAX_PRIME:
            raise NotPrime(f"characteristic must be a prime <= 2^16, got {self.p}")
        if not 1 <= len(self.variables) <= MAX_VARS:
            raise TooManyVars(f"need 1 to {MAX_VARS} variables, got {len(self.variables)}")
        seen = set()
        for v in self.variables:
            if not _NAME.match(v):
                raise BadIndex(f"bad variable name {v!r}")
            if v in seen:
                raise DuplicateVar(f"duplicate variable {v!r}")
            seen.add(v)
        if self.order not in ORDERS + ELIM_ORDERS:
            raise BadOrder(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self):
        return order_key(self.order)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def to_text(self) -> str:
        return f"p={self.p}\nvars={' '.join(self.variables)}\norder={self.order}\n"

    def inline(self) -> str:
        return f"p={self.p} vars={' '.join(self.variables)} order={self.order}"

    def with_order(self, order: str) -> "RingSpec":
        return RingSpec(self.p, self.variables, order)

    def adjoin(self, name: str = "t") -> "RingSpec":
        """Ring with one extra variable placed first, under an elimination order for it."""
        if self.nvars >= MAX_VARS:
            raise TooManyVars(f"cannot adjoin a variable to a ring with {self.nvars} variables")
        while name in self.variables:
            name += "_"
        base = self.order[5:] if self.order.startswith("elim-") else self.order
        return RingSpec(self.p, (name,) + self.variables, "elim-" + base)
