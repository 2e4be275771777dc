"""Ideals of F_p[x_1..x_n]: Groebner bases and the operations built on them."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from . import cache as _cache
from .errors import DivisionByZero, NeedsGB, NotZeroDim, RingMismatch, UnitIdeal
from .groebner import buchberger, reduce_full
from .linalg import (DEFAULT_CAP, _enumerate, box_rank, kernel_mod_p, minimal_monomials, mult_columns, pure_powers,
                     quotient_basis, rank_mod_p, staircase_size)
from .poly import Polynomial, exact_divide
from .ring import RingSpec


class Ideal:
    """Generators plus, once computed, the reduced Groebner basis for the ring's order."""

    __slots__ = ("ring", "gens", "gb")

    def __init__(self, ring: RingSpec, gens=(), gb=None):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("generator from a different ring")
        self.ring = ring
        self.gens = gens
        self.gb = gb

    @classmethod
    def maximal(cls, ring):
        return cls(ring, Polynomial.gens(ring))

    @classmethod
    def unit(cls, ring):
        one = Polynomial.constant(ring, 1)
        return cls(ring, [one], gb=(one,))

    def groebner(self) -> "Ideal":
        if self.gb is not None:
            return self
        return Ideal(self.ring, self.gens, gb=_reduced_gb(self.ring, frozenset(self.gens)))

    def is_monomial(self):
        return all(g.is_monomial() for g in self.gens)

    def is_unit(self):
        gb = self.groebner().gb
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self):
        return not self.gens

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.groebner().gb]

    def contains(self, g: Polynomial) -> bool:
        return ideal_member(g, self)

    def __le__(self, other: "Ideal") -> bool:
        other = other.groebner()
        return all(ideal_member(g, other) for g in self.gens)

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner().gb == other.groebner().gb

    def __hash__(self):
        return hash((self.ring, self.groebner().gb))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.gens])
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __str__(self):
        gens = self.gb if self.gb is not None else self.gens
        return "(" + ", ".join(str(g) for g in gens) + ")" if gens else "(0)"

    def __repr__(self):
        return f"Ideal{self}"


@lru_cache(maxsize=4096)
def _reduced_gb(ring, gens):
    key = ring.key
    cached = _cache.lookup(ring, gens)
    if cached is not None:
        return cached
    raw = buchberger([g.terms for g in gens], ring.p, key)
    gb = tuple(Polynomial(ring, f, _clean=True) for f in raw)
    _cache.store(ring, gens, gb)
    return gb


def groebner_basis(I: Ideal) -> Ideal:
    return I.groebner()


def normal_form(g: Polynomial, I: Ideal) -> Polynomial:
    """Remainder of ``g`` modulo the cached reduced Groebner basis of ``I``."""
    if I.gb is None:
        raise NeedsGB("normal_form needs an ideal with a computed Groebner basis")
    if g.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    ring = I.ring
    rem = reduce_full(g.terms, [h.terms for h in I.gb], [h.leading_monomial() for h in I.gb],
                      ring.p, ring.key)
    return Polynomial(ring, rem, _clean=True)


def ideal_member(g: Polynomial, I: Ideal) -> bool:
    if not g:
        return True
    if I.is_monomial() and I.gens:
        # monomial ideals: a polynomial is inside iff each of its terms is
        gens = [next(iter(h.terms)) for h in I.gens]
        return all(any(all(a >= b for a, b in zip(m, h)) for h in gens) for m in g.terms)
    return not normal_form(g, I.groebner())


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1-t)*J."""
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [], gb=())
    if I.is_monomial() and J.is_monomial():
        gens = set()
        for a in I.gens:
            (ma, _), = a.terms.items()
            for b in J.gens:
                (mb, _), = b.terms.items()
                gens.add(tuple(max(x, y) for x, y in zip(ma, mb)))
        return Ideal(ring, [Polynomial.monomial(ring, m) for m in gens]).groebner()
    ext = ring.adjoin("t")
    t = Polynomial.var(ext, 0)
    one = Polynomial.constant(ext, 1)
    gens = [t * _lift(g, ext) for g in I.gens] + [(one - t) * _lift(g, ext) for g in J.gens]
    gb = Ideal(ext, gens).groebner().gb
    kept = tuple(_drop(g, ring) for g in gb if not any(m[0] for m in g.terms))
    return Ideal(ring, kept, gb=kept)


def _lift(g, ext):
    return Polynomial(ext, {(0,) + m: c for m, c in g.terms.items()}, _clean=True)


def _drop(g, ring):
    return Polynomial(ring, {m[1:]: c for m, c in g.terms.items()}, _clean=True)


def is_monomial_m_primary(I: Ideal) -> bool:
    if not I.gens or not I.is_monomial():
        return False
    n = I.ring.nvars
    found = [False] * n
    for g in I.gens:
        (m, _), = g.terms.items()
        support = [i for i, e in enumerate(m) if e]
        if not support:
            return True
        if len(support) == 1:
            found[support[0]] = True
    return all(found)


def ideal_colon(I: Ideal, g: Polynomial, method: str = "auto", cap: int = DEFAULT_CAP) -> Ideal:
    """The ideal (I : g) = {h : h*g in I}.

    ``method`` is ``"auto"``, ``"linear"`` (multiplication-map kernel on R/I,
    monomial m-primary I only) or ``"groebner"`` (intersection with (g)).
    """
    if not g:
        raise DivisionByZero("colon by the zero polynomial")
    if g.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    if method == "auto":
        method = "groebner"
        if is_monomial_m_primary(I):
            n = I.ring.nvars
            size = staircase_size([next(iter(h.terms)) for h in I.gens], n)
            if size is not None and size <= cap:
                method = "linear"
    if method == "linear":
        return _colon_linear(I, g, cap)
    if method != "groebner":
        raise ValueError(f"unknown colon method {method!r}")
    ring = I.ring
    if I.is_zero():
        return Ideal(ring, [], gb=())
    meet = ideal_intersect(I, Ideal(ring, [g]))
    quots = [exact_divide(h, g) for h in meet.gens]
    return Ideal(ring, quots).groebner()


def quotient_mult_kernel(M: Ideal, g: Polynomial, cap: int = DEFAULT_CAP):
    """Kernel of multiplication by ``g`` on R/M and the rank of that map.

    Returns ``(kernel, image_rank)`` where ``kernel`` is a list of polynomials
    whose classes form a basis of (M : g)/M, each monic with a distinct
    leading monomial and no other leading monomial among its terms.
    """
    if not is_monomial_m_primary(M):
        raise ValueError("modulus must be a monomial ideal containing a power of every variable")
    ring = M.ring
    qb = quotient_basis([next(iter(h.terms)) for h in M.gens], ring.nvars, ring.key, cap)
    cols = mult_columns(qb, g.terms, ring.p)
    independent, kernel = kernel_mod_p(cols, ring.p)
    monos = qb.monomials
    polys = [Polynomial(ring, {monos[k]: c for k, c in combo.items()}, _clean=True)
             for _, combo in kernel]
    return polys, len(independent)


def multiplication_rank(M: Ideal, g: Polynomial, cap: int = DEFAULT_CAP, sparse: bool = True):
    """Rank of multiplication by ``g`` on R/M, i.e. the length of R/(M : g).

    Variables absent from ``g`` whose only generator in M is a pure power
    split off as a tensor factor and multiply the rank by that power.
    """
    if not is_monomial_m_primary(M):
        raise ValueError("modulus must be a monomial ideal containing a power of every variable")
    ring = M.ring
    gens = [next(iter(h.terms)) for h in M.gens]
    used = set(g.support_vars())
    factor = 1
    keep = list(range(ring.nvars))
    for i in range(ring.nvars):
        if i in used:
            continue
        mixed = [m for m in gens if m[i] and any(m[j] for j in range(ring.nvars) if j != i)]
        if mixed:
            continue
        powers = [m[i] for m in gens if m[i]]
        factor *= min(powers)
        keep.remove(i)
    if not g:
        return 0
    if not keep:
        return factor
    sub_gens = [tuple(m[i] for i in keep) for m in gens
                if not any(m[j] for j in range(ring.nvars) if j not in keep)]
    sub_terms = {tuple(m[i] for i in keep): c for m, c in g.terms.items()}
    if all(sum(1 for x in m if x) == 1 for m in sub_gens):
        bounds = pure_powers(sub_gens, len(keep))
        rank = box_rank(bounds, sub_terms, ring.p, cap)
        if rank is not None:
            return factor * rank
        if not sparse:
            return None
    key = ring.key if len(keep) == ring.nvars else _sub_key(ring, keep)
    qb = quotient_basis(sub_gens, len(keep), key, cap)
    return factor * rank_mod_p(mult_columns(qb, sub_terms, ring.p), ring.p)


def zero_dim_mult_kernel(I: Ideal, g: Polynomial, cap: int = DEFAULT_CAP, kernel: bool = True):
    """Multiplication by ``g`` on R/I for any zero-dimensional I.

    The quotient basis is the staircase of the Groebner basis and columns are
    normal forms. Returns ``(kernel polys or None, rank)``; I plus the kernel
    polynomials generates (I : g).
    """
    ring = I.ring
    I = I.groebner()
    if I.is_unit():
        return [], 0
    key = ring.key
    basis = [dict(h.terms) for h in I.gb]
    leads = [h.leading_monomial() for h in I.gb]
    if any(b is None for b in pure_powers(minimal_monomials(leads), ring.nvars)):
        raise NotZeroDim("R/I is not finite dimensional")
    qb = quotient_basis(leads, ring.nvars, key, cap)
    g_nf = reduce_full(g.terms, basis, leads, ring.p, key)
    cols = []
    for b in qb.monomials:
        shifted = {tuple(x + y for x, y in zip(m, b)): c for m, c in g_nf.items()}
        nf = reduce_full(shifted, basis, leads, ring.p, key)
        cols.append({qb.index[m]: c for m, c in nf.items()})
    if not kernel:
        return None, rank_mod_p(cols, ring.p)
    independent, ker = kernel_mod_p(cols, ring.p)
    monos = qb.monomials
    polys = [Polynomial(ring, {monos[k]: c for k, c in combo.items()}, _clean=True) for _, combo in ker]
    return polys, len(independent)


def _sub_key(ring, keep):
    sub = RingSpec(ring.p, tuple(ring.variables[i] for i in keep), ring.order)
    return sub.key


def _colon_linear(I, g, cap):
    ring = I.ring
    kernel, _ = quotient_mult_kernel(I, g, cap)
    gens = minimal_monomials(next(iter(h.terms)) for h in I.gens)
    # reduced GB read off the echelon form: minimal kernel leads plus surviving pure powers
    leads = [(k.leading_monomial(), k) for k in kernel]
    lead_set = [m for m, _ in leads]

    def divisible_by_other(m, pool):
        return any(o != m and all(a <= b for a, b in zip(o, m)) for o in pool)

    basis = []
    for m, k in leads:
        if not divisible_by_other(m, lead_set):
            basis.append(k)
    for m in gens:
        if not divisible_by_other(m, lead_set) and not divisible_by_other(m, gens):
            basis.append(Polynomial.monomial(ring, m))
    if any(b.is_constant() for b in basis):
        one = Polynomial.constant(ring, 1)
        return Ideal(ring, [one], gb=(one,))
    basis.sort(key=lambda h: ring.key(h.leading_monomial()), reverse=True)
    gb = tuple(basis)
    return Ideal(ring, gb, gb=gb)


def standard_monomials(I: Ideal):
    I = I.groebner()
    n = I.ring.nvars
    leads = [h.leading_monomial() for h in I.gb]
    gens = minimal_monomials(leads)
    bounds = pure_powers(gens, n)
    if any(b is None for b in bounds):
        raise NotZeroDim("R/I is not finite dimensional")
    return _enumerate(gens, bounds, n)


def zero_dim_length(I: Ideal) -> int:
    """Dimension of R/I over F_p, counted from the staircase of the Groebner basis."""
    I = I.groebner()
    n = I.ring.nvars
    leads = [h.leading_monomial() for h in I.gb]
    size = staircase_size(leads, n) if leads else None
    if size is None:
        raise NotZeroDim("R/I is not finite dimensional")
    return size


def krull_dimension(I: Ideal) -> int:
    """Largest set of variables independent modulo the leading-term ideal."""
    I = I.groebner()
    n = I.ring.nvars
    if I.is_unit():
        raise UnitIdeal("the unit ideal has no dimension")
    supports = [frozenset(i for i, e in enumerate(h.leading_monomial()) if e) for h in I.gb]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def radical_member(g: Polynomial, I: Ideal) -> bool:
    """g in sqrt(I), via 1 in I + (1 - t*g) over the ring with t adjoined."""
    ring = I.ring
    if not g:
        return True
    ext = ring.adjoin("t")
    t = Polynomial.var(ext, 0)
    gens = [_lift(h, ext) for h in I.gens] + [Polynomial.constant(ext, 1) - t * _lift(g, ext)]
    return Ideal(ext, gens).is_unit()

