"""Frobenius splitting invariants of hypersurfaces R/(f), R = F_p[x_1..x_n].

With the ambient ring regular and the socle representative u = 1, the e-th
splitting ideal of R/(f) lifts to ``(m^[q] : f^(q-1))`` for ``q = p^e`` and
the splitting number is the length of R modulo that ideal.

The splitting prime is found as the largest ideal ``J`` inside ``m`` that is
compatible with the map ``phi(F_* r) = Tr(F_* f^(p-1) r)``, i.e. with
``root(f^(p-1) * J) ⊆ J``. The descending chain of splitting ideals only
reaches it in the limit, so instead lower bounds are grown from below by
compatible closures of elements known to lie in it, and the result is
certified by one of:

* ``"maximal"``: every variable is in the splitting prime;
* ``"quotient"``: after a linear change of coordinates the candidate is
  generated by variables and the induced map on the polynomial quotient has
  no proper compatible ideal through the origin;
* ``"glassbrenner"``: the quotient is a hypersurface in the remaining
  variables, some element ``c`` cuts out its singular and degenerate locus
  and ``c`` is outside the splitting prime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadWitness, Inconsistent, NoStabilize, NotFPure, TooLarge
from .ideal import (Ideal, ideal_colon, ideal_member, is_monomial_m_primary, krull_dimension,
                    multiplication_rank, radical_member, zero_dim_length,
                    zero_dim_mult_kernel)
from .linalg import DEFAULT_CAP, box_columns, rank_mod_p
from .poly import (Polynomial, exact_divide, partial_derivative, pe_decompose, poly_pow_charp,
                   power_q_minus_1, power_q_minus_1_mod_bracket, substitute_linear)
from .ring import RingSpec


@dataclass(frozen=True)
class HypersurfaceContext:
    """The hypersurface f in R, a system of parameters and a socle representative.

    Defaults: the parameters are the variables and u = 1.
    """

    ring: RingSpec
    f: Polynomial
    sop: Ideal = None
    u: Polynomial = None

    def __post_init__(self):
        if not self.f:
            raise ValueError("f must be nonzero")
        if self.f.ring != self.ring:
            raise ValueError("f lives in a different ring")
        if any(not any(m) for m in self.f.terms):
            raise ValueError("f must lie in the maximal ideal (no constant term)")
        if self.sop is None:
            object.__setattr__(self, "sop", Ideal.maximal(self.ring))
        else:
            zero_dim_length(self.sop)  # raises NotZeroDim when not m-primary
        if self.u is None:
            object.__setattr__(self, "u", Polynomial.constant(self.ring, 1))

    @property
    def default(self):
        return self.u == 1 and self.sop == Ideal.maximal(self.ring)

    def with_f(self, f):
        return HypersurfaceContext(self.ring, f, self.sop, self.u)


def bracket_power(I: Ideal, e: int) -> Ideal:
    """I^[p^e], generated by the p^e-th powers of the generators."""
    if e < 1:
        raise ValueError("e must be at least 1")
    return Ideal(I.ring, [poly_pow_charp(g, e) for g in I.gens])


def frobenius_root(I: Ideal, e: int) -> Ideal:
    """Smallest J with I inside J^[p^e]: all the p^e-th root pieces of the generators."""
    if e < 1:
        raise ValueError("e must be at least 1")
    gens = []
    for g in I.gens:
        gens.extend(pe_decompose(g, e).values())
    return Ideal(I.ring, gens)


def jacobian_ideal(f: Polynomial) -> Ideal:
    parts = [partial_derivative(f, i) for i in range(f.ring.nvars)]
    return Ideal(f.ring, [d for d in parts if d])


def _in_bracket_m(g: Polynomial, q: int) -> bool:
    """g in m^[q] = (x_1^q, ..., x_n^q)."""
    return all(any(x >= q for x in m) for m in g.terms)


def fedder_fpure(ctx: HypersurfaceContext) -> bool:
    """Fedder's criterion: R/(f) is F-pure iff f^(p-1) is not in m^[p]."""
    ring = ctx.ring
    m_p = bracket_power(Ideal.maximal(ring), 1)
    return not ideal_member(ctx.f ** (ring.p - 1), m_p)


def _colon_data(ctx, e):
    """Modulus (x)^[q] and multiplier u^q f^(q-1) whose colon is the lifted I_e."""
    M = bracket_power(ctx.sop, e)
    g = power_q_minus_1(ctx.f, e)
    if ctx.u != 1:
        g = poly_pow_charp(ctx.u, e) * g
    return M, g


def _frobenius_gb(J: Ideal) -> Ideal:
    """J^[p] with its reduced Groebner basis: the p-th powers of J's, since Frobenius is flat."""
    J = J.groebner()
    gb = tuple(poly_pow_charp(h, 1) for h in J.gb)
    return Ideal(J.ring, gb, gb=gb)


def _next_level(ctx, e, cap, kernel):
    """Multiplication by f^(p-1) on R/I_(e-1)^[p]; its kernel lifts I_e."""
    prev = splitting_ideal(ctx, e - 1, cap)
    if prev.is_unit():
        return prev, None, 0
    bracket = _frobenius_gb(prev)
    ker, rank = zero_dim_mult_kernel(bracket, ctx.f ** (ctx.ring.p - 1), cap, kernel)
    return bracket, ker, rank


def splitting_ideal(ctx: HypersurfaceContext, e: int, cap: int = DEFAULT_CAP) -> Ideal:
    """Lift to R of the e-th splitting ideal of R/(f): ((x)^[q] : u^q f^(q-1)).

    For the default context and e >= 2 this uses I_e = (I_(e-1)^[p] : f^(p-1)),
    which works in a quotient of dimension p^n a_(e-1) instead of q^n.
    """
    if e >= 2 and ctx.default:
        bracket, ker, rank = _next_level(ctx, e, cap, True)
        if ker is None:
            return bracket
        return Ideal(ctx.ring, list(bracket.gb) + ker).groebner()
    M, g = _colon_data(ctx, e)
    if not g:
        return Ideal.unit(ctx.ring)
    return ideal_colon(M, g, cap=cap)


def splitting_number(ctx: HypersurfaceContext, e: int, cap: int = DEFAULT_CAP) -> int:
    """a_e = length of R/I_e; 0 when I_e is the unit ideal (not F-pure at level e)."""
    M, g = _colon_data(ctx, e)
    if is_monomial_m_primary(M):
        try:
            rank = multiplication_rank(M, g, cap, sparse=not (e >= 2 and ctx.default))
        except TooLarge:
            if not (e >= 2 and ctx.default):
                raise
            rank = None
        if rank is not None:
            return rank
    if e >= 2 and ctx.default:
        return _next_level(ctx, e, cap, False)[2]
    J = splitting_ideal(ctx, e, cap)
    return 0 if J.is_unit() else zero_dim_length(J)


def splitting_number_bounded(ctx: HypersurfaceContext, e: int, bound: int) -> int:
    """min(a_e, bound), stopping the rank count early when the modulus is a box."""
    M, g = _colon_data(ctx, e)
    gens = [next(iter(h.terms)) for h in M.gens] if M.is_monomial() else None
    if gens and all(sum(1 for x in m if x) == 1 for m in gens):
        bounds = [None] * ctx.ring.nvars
        for m in gens:
            i = next(k for k, x in enumerate(m) if x)
            bounds[i] = m[i] if bounds[i] is None else min(bounds[i], m[i])
        if None not in bounds:
            return rank_mod_p(box_columns(bounds, g.terms, ctx.ring.p), ctx.ring.p, stop=bound)
    return min(splitting_number(ctx, e), bound)


def level_is_maximal(ctx: HypersurfaceContext, e: int) -> bool:
    """I_e = m, checked directly: f^(q-1) outside m^[q] but x_i f^(q-1) inside."""
    if not ctx.default:
        return splitting_ideal(ctx, e) == Ideal.maximal(ctx.ring)
    q = ctx.ring.p ** e
    g = power_q_minus_1_mod_bracket(ctx.f, e)
    if _in_bracket_m(g, q):
        return False
    return all(_in_bracket_m(g * x, q) for x in Polynomial.gens(ctx.ring))


# splitting prime

def _in_max(J: Ideal) -> bool:
    return all(g.constant_term() == 0 for g in J.gens)


def compatible_closure(gens, u: Polynomial, max_rounds: int = 200):
    """Smallest ideal J containing ``gens`` with root(u * J) inside J.

    Returns None as soon as the ascending chain leaves the maximal ideal,
    which happens exactly when one of ``gens`` is outside the splitting
    prime of the map attached to ``u``.
    """
    ring = u.ring
    J = Ideal(ring, gens)
    if not _in_max(J):
        return None
    J = J.groebner()
    for _ in range(max_rounds):
        fresh = []
        for g in J.gb:
            for piece in pe_decompose(u * g, 1).values():
                if piece.constant_term():
                    return None
                if not ideal_member(piece, J):
                    fresh.append(piece)
        if not fresh:
            return J
        J = (J + Ideal(ring, fresh)).groebner()
        if not _in_max(Ideal(ring, J.gb)):
            return None
    raise NoStabilize(f"compatible closure did not stabilize in {max_rounds} rounds")


def in_splitting_prime(ctx: HypersurfaceContext, c: Polynomial) -> bool:
    """Exact membership test c ∈ P(R/(f)) (lifted to R)."""
    return compatible_closure([c], ctx.f ** (ctx.ring.p - 1)) is not None


@dataclass
class SplittingPrime:
    """Lift to R of the splitting prime and how it was certified."""

    ideal: Ideal
    certificate: str  # maximal | quotient | glassbrenner | unverified
    rounds: int
    f: Polynomial

    @property
    def certified(self):
        return self.certificate != "unverified"

    @property
    def is_zero(self):
        """True when the lift is (f), i.e. the splitting prime of R/(f) is zero."""
        return self.ideal == Ideal(self.ideal.ring, [self.f])

    @property
    def is_maximal(self):
        return self.certificate == "maximal"

    @property
    def dimension(self):
        return krull_dimension(self.ideal)

    @property
    def dimension_exact(self):
        # a proper prime strictly inside m has dimension >= 1
        return self.certified or self.dimension <= 1


def _leading_var(g):
    (m,) = [m for m in g.terms if sum(m) == 1 and m == g.leading_monomial()]
    return m.index(1)


def _certify(K: Ideal, u: Polynomial):
    """Try to show K is the whole splitting prime; otherwise return new members.

    Returns ``(certificate or None, new elements of the splitting prime)``.
    """
    ring = K.ring
    p = ring.p
    gb = K.groebner().gb
    n = ring.nvars
    linear = [g for g in gb if g.degree() == 1]
    lead_vars = [_leading_var(g) for g in linear]
    if len(lead_vars) == n:
        return "maximal", []
    rest = [g for g in gb if g.degree() != 1]
    rest_vars = [i for i in range(n) if i not in lead_vars]

    if linear:
        # coordinates in which K's linear part is spanned by variables
        images = {}
        for g, i in zip(linear, lead_vars):
            x = Polynomial.var(ring, i)
            images[i] = x + x - g
        u_new = substitute_linear(u, images)
        v_terms = {}
        for m, c in u_new.terms.items():
            if all(m[i] == p - 1 for i in lead_vars):
                v_terms[tuple(0 if i in lead_vars else m[i] for i in range(n))] = c
        v = Polynomial(ring, v_terms, _clean=True)
    else:
        v = u
    if not v:
        return None, []

    if not rest:
        if compatible_closure([v], v) is None:
            return "quotient", []
        return None, [v]
    if len(rest) == 1:
        h = rest[0]
        try:
            w = exact_divide(v, h ** (p - 1))
        except ValueError:
            return None, []
        cands = [partial_derivative(h, i) * w for i in rest_vars]
        cands = [c for c in cands if c]
        for c in cands:
            if compatible_closure([c], v) is None:
                return "glassbrenner", []
        return None, cands
    return None, []


def find_splitting_prime(ctx: HypersurfaceContext, max_iter: int = 20, cross_check_E: int = 3,
                         candidate_E: int = 1, cap: int = DEFAULT_CAP) -> SplittingPrime:
    """Compute and certify the lift of the splitting prime of R/(f)."""
    if not fedder_fpure(ctx):
        raise NotFPure("R/(f) is not F-pure; the splitting prime is undefined")
    ring = ctx.ring
    f = ctx.f
    u = f ** (ring.p - 1)

    pool = [f] + Polynomial.gens(ring)
    levels = list(range(1, candidate_E + 1))
    pool += _level_candidates(ctx, levels.pop(0), cap) if levels else []

    K = Ideal(ring, [f]).groebner()
    certificate = "unverified"
    rounds = 0
    while True:
        rounds += 1
        if rounds > max_iter:
            raise NoStabilize(f"splitting prime not certified within {max_iter} rounds")
        passing = [c for c in pool if not ideal_member(c, K)
                   and compatible_closure([c], u) is not None]
        pool = []
        if passing:
            closed = compatible_closure(list(K.gb) + passing, u)
            if closed is None:
                raise Inconsistent("sum of splitting-prime members left the maximal ideal")
            K = closed
        cert, fresh = _certify(K, u)
        if cert is not None:
            certificate = cert
            break
        fresh = [c for c in fresh if not ideal_member(c, K)]
        if fresh:
            pool = fresh
            continue
        if levels:
            pool = _level_candidates(ctx, levels.pop(0), cap)
            continue
        break

    result = SplittingPrime(K, certificate, rounds, f)
    _cross_check(ctx, K, cross_check_E)
    return result


def _level_candidates(ctx, e, cap):
    try:
        return list(splitting_ideal(ctx, e, cap).groebner().gb)
    except TooLarge:
        return []


def in_splitting_ideal(ctx: HypersurfaceContext, c: Polynomial, e: int) -> bool:
    """c in I_e, tested as root_e(c f^(q-1)) inside m via iterated p-th roots.

    root_1(a b^p) = root_1(a) b, so root_e(c f^(q-1)) is reached by applying
    J -> root_1(f^(p-1) J) e times to (c); no power of f beyond p-1 is formed.
    """
    u = ctx.f ** (ctx.ring.p - 1)
    J = Ideal(ctx.ring, [c])
    for _ in range(e):
        J = frobenius_root(Ideal(ctx.ring, [u * h for h in J.groebner().gb]), 1)
        if not _in_max(J):
            return False
    return True


def _cross_check(ctx, K, E):
    """The splitting prime sits inside every splitting ideal."""
    for c in K.groebner().gb:
        for e in range(1, E + 1):
            if not in_splitting_ideal(ctx, c, e):
                raise Inconsistent(f"splitting prime candidate {c} is not in I_{e}")


def splitting_prime(ctx: HypersurfaceContext, max_iter: int = 20, cross_check_E: int = 3) -> Ideal:
    return find_splitting_prime(ctx, max_iter, cross_check_E).ideal


def splitting_dimension(ctx: HypersurfaceContext, prime: SplittingPrime = None) -> int:
    """dim R/P for the lifted splitting prime P (an upper bound if uncertified)."""
    prime = prime or find_splitting_prime(ctx)
    return prime.dimension


def splitting_ratio_estimate(ctx: HypersurfaceContext, e: int, prime: SplittingPrime = None) -> Fraction:
    n = splitting_dimension(ctx, prime)
    return Fraction(splitting_number(ctx, e), ctx.ring.p ** (e * n))


def glassbrenner_witness(ctx: HypersurfaceContext, c: Polynomial, max_e: int = 1):
    """Strong F-regularity certificate with test element ``c``.

    True with the smallest witnessing e when c f^(q-1) is outside m^[q] for
    some e <= max_e and c lies in the radical of Jac(f) + (f), so that the
    hypersurface is regular away from V(c).
    """
    if not c:
        raise BadWitness("the test element must be nonzero")
    ring = ctx.ring
    witness = None
    for e in range(1, max_e + 1):
        M = bracket_power(ctx.sop, e)
        g = c * power_q_minus_1(ctx.f, e)
        if ctx.u != 1:
            g = g * poly_pow_charp(ctx.u, e)
        if not ideal_member(g, M):
            witness = e
            break
    if witness is None:
        return False, None
    singular = jacobian_ideal(ctx.f) + Ideal(ring, [ctx.f])
    if not radical_member(c, singular):
        return False, None
    return True, witness


@dataclass
class Battery:
    """The equivalent conditions for P = m, evaluated for e = 1..E."""

    a_is_one: list
    ideal_is_max: list
    prime_is_max: bool
    predicates: dict = field(default_factory=dict)

    @property
    def consistent(self):
        values = set(self.predicates.values())
        return len(values) == 1

    def as_dict(self):
        return {"a_is_one": self.a_is_one, "ideal_is_max": self.ideal_is_max,
                "prime_is_max": self.prime_is_max, "predicates": self.predicates,
                "consistent": self.consistent}


def theoremC_battery(ctx: HypersurfaceContext, E: int = 2, cap: int = DEFAULT_CAP) -> Battery:
    """Evaluate a_e = 1, I_e = m (e = 1..E) and P = m, which must agree."""
    if not fedder_fpure(ctx):
        raise NotFPure("the battery applies to F-pure hypersurfaces only")
    a_one = [splitting_number_bounded(ctx, e, 2) == 1 for e in range(1, E + 1)]
    i_max = [level_is_maximal(ctx, e) for e in range(1, E + 1)]
    u = ctx.f ** (ctx.ring.p - 1)
    p_max = all(compatible_closure([x], u) is not None for x in Polynomial.gens(ctx.ring))
    preds = {
        "a1_trivial": a_one[0],
        "some_a_trivial": any(a_one),
        "all_a_trivial": all(a_one),
        "I1_max": i_max[0],
        "some_I_max": any(i_max),
        "all_I_max": all(i_max),
        "P_max": p_max,
    }
    return Battery(a_one, i_max, p_max, preds)


@dataclass
class SplittingLevel:
    e: int
    ideal: Ideal
    a: int
    is_max: bool


@dataclass
class SplittingReport:
    fpure: bool
    levels: list
    prime: SplittingPrime = None
    dimension: int = None
    ratios: list = field(default_factory=list)


def splitting_report(ctx: HypersurfaceContext, E: int = 1, cap: int = DEFAULT_CAP) -> SplittingReport:
    fpure = fedder_fpure(ctx)
    levels = []
    for e in range(1, E + 1):
        J = splitting_ideal(ctx, e, cap)
        a = 0 if J.is_unit() else zero_dim_length(J)
        levels.append(SplittingLevel(e, J, a, J == Ideal.maximal(ctx.ring)))
    report = SplittingReport(fpure, levels)
    if fpure:
        report.prime = find_splitting_prime(ctx)
        report.dimension = report.prime.dimension
        n = report.dimension
        report.ratios = [Fraction(lv.a, ctx.ring.p ** (lv.e * n)) for lv in levels]
    return report
