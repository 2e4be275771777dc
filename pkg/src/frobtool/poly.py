"""Sparse multivariate polynomials over F_p.

A polynomial is a map from exponent tuples to nonzero residues. Instances are
treated as immutable values: every operation returns a new polynomial.
"""

from __future__ import annotations

from .errors import BadIndex, DivisionByZero, Overflow, RingMismatch
from .ring import MAX_EXP, RingSpec, ff_inv


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms=None, *, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            p = ring.p
            n = ring.nvars
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != n:
                    raise BadIndex(f"monomial {m} has {len(m)} exponents, ring has {n} variables")
                c %= p
                if c:
                    clean[m] = c
            self.terms = clean
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, ring):
        return cls(ring, {}, _clean=True)

    @classmethod
    def constant(cls, ring, c):
        c %= ring.p
        return cls(ring, {(0,) * ring.nvars: c} if c else {}, _clean=True)

    @classmethod
    def monomial(cls, ring, exps, c=1):
        return cls(ring, {tuple(exps): c})

    @classmethod
    def var(cls, ring, i):
        if isinstance(i, str):
            i = ring.index(i)
        if not 0 <= i < ring.nvars:
            raise BadIndex(f"variable index {i} out of range")
        e = [0] * ring.nvars
        e[i] = 1
        return cls(ring, {tuple(e): 1}, _clean=True)

    @classmethod
    def gens(cls, ring):
        return [cls.var(ring, i) for i in range(ring.nvars)]

    # basic queries

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def support_vars(self):
        """Indices of the variables that occur in some term."""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def sorted_terms(self):
        """Terms in descending monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self):
        if not self.terms:
            return self
        inv = ff_inv(self.leading_coefficient(), self.ring.p)
        return self.scale(inv)

    # arithmetic

    def _check(self, other):
        if isinstance(other, int):
            return Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        p = self.ring.p
        c %= p
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial(self.ring, {m: (v * c) % p for m, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        # f^k = prod_i (f^(d_i))^(p^i) over the base-p digits d_i of k
        p = self.ring.p
        result = Polynomial.constant(self.ring, 1)
        i = 0
        while k:
            k, d = divmod(k, p)
            if d:
                result = result * poly_pow_charp(_small_power(self, d), i)
            i += 1
        return result

    def mul_monomial(self, exps, c=1):
        p = self.ring.p
        c %= p
        if not c:
            return Polynomial.zero(self.ring)
        out = {}
        for m, v in self.terms.items():
            out[tuple(a + b for a, b in zip(m, exps))] = (v * c) % p
        return Polynomial(self.ring, out, _clean=True)

    # comparisons

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # printing

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def format_poly(f: Polynomial) -> str:
    """Render ``f`` in the input syntax accepted by the parser, leading term first.

    Coefficients are printed as symmetric residues so that ``-x`` reads as
    such instead of ``(p-1)*x``.
    """
    if not f.terms:
        return "0"
    p = f.ring.p
    names = f.ring.variables
    parts = []
    for m, c in f.sorted_terms():
        neg = c > p // 2 and p > 2
        a = p - c if neg else c
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if a != 1 or not factors:
            factors.insert(0, str(a))
        body = "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _small_power(f, d):
    result = f
    for _ in range(d - 1):
        result = poly_mul(result, f)
    return result


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatch("polynomials live in different rings")
    p = a.ring.p
    if len(a.terms) < len(b.terms):
        a, b = b, a
    out = {}
    get = out.get
    for mb, cb in b.terms.items():
        for ma, ca in a.terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = (get(m, 0) + ca * cb) % p
    return Polynomial(a.ring, {m: c for m, c in out.items() if c}, _clean=True)


def poly_pow_charp(f: Polynomial, e: int) -> Polynomial:
    """``f ** (p ** e)`` computed by scaling exponents, since c^(p^e) = c in F_p."""
    if e < 0:
        raise ValueError("e must be non-negative")
    q = f.ring.p ** e
    out = {}
    for m, c in f.terms.items():
        nm = tuple(q * x for x in m)
        if any(x >= MAX_EXP for x in nm):
            raise Overflow(f"exponent overflow computing a {q}-th power")
        out[nm] = c
    return Polynomial(f.ring, out, _clean=True)


def power_q_minus_1(f: Polynomial, e: int) -> Polynomial:
    """``f ** (p**e - 1)`` as the product of the Frobenius twists of ``f ** (p-1)``."""
    base = f ** (f.ring.p - 1)
    result = base
    for i in range(1, e):
        result = result * poly_pow_charp(base, i)
    return result


def power_q_minus_1_mod_bracket(f: Polynomial, e: int) -> Polynomial:
    """``f ** (p**e - 1)`` with every term lying in ``m^[p^e]`` discarded.

    Terms only grow under multiplication, so truncating after each factor
    gives the same result as truncating the full power, at a fraction of the
    cost.
    """
    p = f.ring.p
    q = p ** e
    base = f ** (p - 1)
    terms = {m: c for m, c in base.terms.items() if max(m) < q}
    for i in range(1, e):
        out = {}
        get = out.get
        for mb, cb in poly_pow_charp(base, i).terms.items():
            if max(mb) >= q:
                continue
            for ma, ca in terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                if max(m) < q:
                    out[m] = (get(m, 0) + ca * cb) % p
        terms = {m: c for m, c in out.items() if c}
    return Polynomial(f.ring, terms, _clean=True)


def partial_derivative(f: Polynomial, var_index: int) -> Polynomial:
    n = f.ring.nvars
    if not 0 <= var_index < n:
        raise BadIndex(f"variable index {var_index} out of range for {n} variables")
    p = f.ring.p
    out = {}
    for m, c in f.terms.items():
        k = m[var_index]
        v = (c * k) % p
        if v:
            nm = list(m)
            nm[var_index] -= 1
            out[tuple(nm)] = v
    return Polynomial(f.ring, out, _clean=True)


def pe_decompose(f: Polynomial, e: int) -> dict:
    """Split ``f`` as a sum of ``g_a ** (p**e) * x**a`` with every a_i < p**e.

    Returns the map ``a -> g_a`` holding the nonzero pieces only.
    """
    if e < 1:
        raise ValueError("e must be at least 1")
    q = f.ring.p ** e
    buckets = {}
    for m, c in f.terms.items():
        a = tuple(x % q for x in m)
        b = tuple(x // q for x in m)
        buckets.setdefault(a, {})[b] = c
    return {a: Polynomial(f.ring, t, _clean=True) for a, t in buckets.items()}


def exact_divide(h: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``h / g``; raises ValueError when ``g`` does not divide ``h``."""
    if not g.terms:
        raise DivisionByZero("division by the zero polynomial")
    key = h.ring.key
    p = h.ring.p
    lg = g.leading_monomial()
    inv = ff_inv(g.terms[lg], p)
    rem = dict(h.terms)
    quot = {}
    while rem:
        lm = max(rem, key=key)
        d = tuple(x - y for x, y in zip(lm, lg))
        if any(x < 0 for x in d):
            raise ValueError("divisor does not divide the polynomial")
        c = (rem[lm] * inv) % p
        quot[d] = c
        for m, v in g.terms.items():
            nm = tuple(x + y for x, y in zip(m, d))
            r = (rem.get(nm, 0) - c * v) % p
            if r:
                rem[nm] = r
            else:
                rem.pop(nm, None)
    return Polynomial(h.ring, quot, _clean=True)


def substitute_linear(f: Polynomial, images: dict) -> Polynomial:
    """Replace variable ``i`` by ``images[i]`` for each key; other variables stay."""
    ring = f.ring
    result = Polynomial.zero(ring)
    powers = {}
    for m, c in f.terms.items():
        term = Polynomial.constant(ring, c)
        rest = list(m)
        for i, img in images.items():
            k = m[i]
            if k:
                rest[i] = 0
                if (i, k) not in powers:
                    powers[(i, k)] = img ** k
                term = term * powers[(i, k)]
        result = result + term.mul_monomial(rest)
    return result
