"""Perturbation harnesses and the experiments built on them.

Reports are plain dicts of JSON-safe values. Polynomials are stored as
their printed form and ideals as the list of reduced Groebner basis
elements, so two reports can be compared with ``==`` or byte for byte
after :func:`dump_report`.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import FrobError, NoStabilize, NotFPure, Overflow, TooLarge
from .frobenius import (HypersurfaceContext, bracket_power, fedder_fpure, find_splitting_prime,
                        glassbrenner_witness, jacobian_ideal, splitting_ideal, splitting_number,
                        splitting_ratio_estimate, theoremC_battery)
from .ideal import Ideal, radical_member
from .parser import parse_poly, parse_ring_spec
from .poly import Polynomial
from .ring import RingSpec

REPORT_VERSION = 1

# effective variable count above which a_2 is not attempted
A2_MAX_VARS = 3


class GoldenFailure(FrobError):
    """A golden report disagreed with its expected value."""

    code = "golden"

    def __init__(self, field_name, got, expected):
        super().__init__(f"{field_name}: got {got!r}, expected {expected!r}")
        self.field = field_name


def ideal_json(I: Ideal):
    return [str(g) for g in I.groebner().gb]


def skip_reason(exc):
    if isinstance(exc, NotFPure):
        return "not-F-pure"
    if isinstance(exc, TooLarge):
        return "budget"
    if isinstance(exc, (Overflow, OverflowError)):
        return "overflow"
    if isinstance(exc, NoStabilize):
        return "unverified"
    return getattr(exc, "code", "error")


@dataclass
class PerturbationOutcome:
    f: Polynomial
    eps: Polynomial
    e_range: tuple
    a_before: list = field(default_factory=list)
    a_after: list = field(default_factory=list)
    P_before: Ideal = None
    P_after: Ideal = None
    dim_before: int = None
    dim_after: int = None
    verdict_A: bool = None
    verdict_B: bool = None
    strict_B: bool = None
    skipped: str = None

    def __post_init__(self):
        if not self.eps:
            raise ValueError("the perturbation must be nonzero")
        if not (self.f + self.eps):
            raise ValueError("f + eps must be nonzero")

    @property
    def completed(self):
        return self.skipped is None

    def as_dict(self):
        return {
            "f": str(self.f), "eps": str(self.eps), "e_range": list(self.e_range),
            "a_before": self.a_before, "a_after": self.a_after,
            "P_before": None if self.P_before is None else ideal_json(self.P_before),
            "P_after": None if self.P_after is None else ideal_json(self.P_after),
            "dim_before": self.dim_before, "dim_after": self.dim_after,
            "verdict_A": self.verdict_A, "verdict_B": self.verdict_B,
            "strict_B": self.strict_B, "skipped": self.skipped,
        }


def random_poly(ring: RingSpec, rng: random.Random, degree: int, terms: int = None,
                constant: bool = True) -> Polynomial:
    """Random polynomial of total degree <= degree with up to ``terms`` terms."""
    n = ring.nvars
    if terms is None:
        terms = rng.randint(1, 4)
    out = {}
    for _ in range(terms):
        d = rng.randint(0 if constant else 1, degree)
        m = [0] * n
        for _ in range(d):
            m[rng.randrange(n)] += 1
        out[tuple(m)] = rng.randrange(1, ring.p)
    return Polynomial(ring, out)


def _eps_from(gens, ring, rng, e0=1):
    """Random R-combination of the p^e0-th powers of ``gens``, never zero."""
    q_gens = [g ** (ring.p ** e0) for g in gens]
    for _ in range(100):
        eps = Polynomial.zero(ring)
        for g in q_gens:
            if rng.random() < 0.7:
                eps = eps + g * random_poly(ring, rng, 3)
        if eps:
            return eps
    return q_gens[0]


def _prime_dim(ctx):
    prime = find_splitting_prime(ctx)
    if not prime.dimension_exact:
        raise NoStabilize("splitting prime could not be certified")
    return prime, prime.dimension


def perturb_theorem_A(ctx: HypersurfaceContext, eps_samples: int = 3, e_range=(1,), seed: int = 0,
                      *, eps=None, prime=None, with_prime: bool = True):
    """Compare a_e(f) and a_e(f + eps) for eps in P^[p], P the splitting prime.

    ``eps`` overrides the random samples. Any certified or uncertified lower
    bound for P yields admissible perturbations, so the prime need not be
    certified here.
    """
    ring = ctx.ring
    if prime is None:
        prime = find_splitting_prime(ctx)
    gens = [g for g in prime.ideal.groebner().gb]
    rng = random.Random(seed)
    samples = list(eps) if eps is not None else [_eps_from(gens, ring, rng) for _ in range(eps_samples)]
    a_before = [splitting_number(ctx, e) for e in e_range]
    out = []
    for eps_i in samples:
        g = ctx.f + eps_i
        oc = PerturbationOutcome(ctx.f, eps_i, tuple(e_range), a_before=a_before, P_before=prime.ideal)
        oc.dim_before = prime.dimension if prime.dimension_exact else None
        try:
            ctx2 = ctx.with_f(g)
            oc.a_after = [splitting_number(ctx2, e) for e in e_range]
            oc.verdict_A = oc.a_after == a_before
            if with_prime and fedder_fpure(ctx2):
                p2 = find_splitting_prime(ctx2)
                oc.P_after = p2.ideal
                if p2.dimension_exact and oc.dim_before is not None:
                    oc.dim_after = p2.dimension
                    oc.verdict_B = oc.dim_before <= oc.dim_after
                    oc.strict_B = oc.dim_before < oc.dim_after
        except (FrobError, OverflowError) as exc:
            oc.skipped = skip_reason(exc)
        out.append(oc)
    return out


def perturb_theorem_B(ctx: HypersurfaceContext, eps_samples: int = 3, e0: int = 1, seed: int = 0,
                      *, eps=None, prime=None, e_range=(1,)):
    """Compare splitting dimensions of f and f + eps for eps in m^[p^e0]."""
    ring = ctx.ring
    rng = random.Random(seed)
    samples = (list(eps) if eps is not None else
               [_eps_from(Polynomial.gens(ring), ring, rng, e0) for _ in range(eps_samples)])
    if prime is None:
        prime = find_splitting_prime(ctx)
    a_before = [splitting_number(ctx, e) for e in e_range]
    out = []
    for eps_i in samples:
        oc = PerturbationOutcome(ctx.f, eps_i, tuple(e_range), a_before=a_before, P_before=prime.ideal)
        try:
            if not prime.dimension_exact:
                raise NoStabilize("splitting prime of f could not be certified")
            oc.dim_before = prime.dimension
            ctx2 = ctx.with_f(ctx.f + eps_i)
            if not fedder_fpure(ctx2):
                raise NotFPure("f + eps is not F-pure")
            oc.a_after = [splitting_number(ctx2, e) for e in e_range]
            oc.verdict_A = oc.a_after == a_before
            p2, oc.dim_after = _prime_dim(ctx2)
            oc.P_after = p2.ideal
            oc.verdict_B = oc.dim_before <= oc.dim_after
            oc.strict_B = oc.dim_before < oc.dim_after
        except (FrobError, OverflowError) as exc:
            oc.skipped = skip_reason(exc)
        out.append(oc)
    return out


# worked examples

EX41_RING = "p=7 vars=x0 x1 x2 x3 order=grevlex"
EX41_F = "x0^2 - x1^6*x2^2 + x3^3"
EX42_RING = "p=7 vars=x y z w order=grevlex"
EX42_F = "x^3 + y^3 + z^3"


def _ctx(ring_text, f_text):
    ring = parse_ring_spec(ring_text)
    return HypersurfaceContext(ring, parse_poly(f_text, ring))


def run_example_4_1():
    """Full pipeline on x0^2 - x1^6 x2^2 + x3^3 over F_7."""
    ctx = _ctx(EX41_RING, EX41_F)
    ring = ctx.ring
    P = lambda s: parse_poly(s, ring)
    I1 = splitting_ideal(ctx, 1)
    jac = jacobian_ideal(ctx.f)
    prime = find_splitting_prime(ctx)
    a1 = splitting_number(ctx, 1)
    a1_pert = {n: splitting_number(ctx.with_f(ctx.f + P(f"x1^{n}")), 1) for n in (7, 8)}
    jac8 = jacobian_ideal(ctx.f + P("x1^8"))
    return {
        "v": REPORT_VERSION,
        "example": "4.1",
        "ring": ring.inline(),
        "f": str(ctx.f),
        "fpure": fedder_fpure(ctx),
        "x2_in_I1": I1.contains(P("x2")),
        "I1": ideal_json(I1),
        "jacobian": [str(g) for g in jac.gens],
        "radical_jacobian": {v: radical_member(P(v), jac) for v in ("x0", "x1", "x2", "x3", "x1*x2")},
        "radical_jacobian_eps8": {v: radical_member(P(v), jac8) for v in ("x0", "x1", "x2", "x3")},
        "splitting_prime": ideal_json(prime.ideal),
        "certificate": prime.certificate,
        "splitting_dimension": prime.dimension,
        "a1": a1,
        "a1_f_plus_x1^7": a1_pert[7],
        "a1_f_plus_x1^8": a1_pert[8],
    }


def run_example_4_2(with_a2: bool = False):
    """Full pipeline on x^3 + y^3 + z^3 in F_7[x,y,z,w] and its perturbation by w^8."""
    ctx = _ctx(EX42_RING, EX42_F)
    ring = ctx.ring
    w = parse_poly("w", ring)
    prime = find_splitting_prime(ctx)
    eps = w ** 8
    ctx2 = ctx.with_f(ctx.f + eps)
    ok, e_w = glassbrenner_witness(ctx2, w, 1)
    (outcome,) = perturb_theorem_B(ctx, eps=[eps], prime=prime)
    report = {
        "v": REPORT_VERSION,
        "example": "4.2",
        "ring": ring.inline(),
        "f": str(ctx.f),
        "fpure": fedder_fpure(ctx),
        "a1": splitting_number(ctx, 1),
        "a2": splitting_number(ctx, 2) if with_a2 else None,
        "splitting_prime": ideal_json(prime.ideal),
        "splitting_dimension": prime.dimension,
        "ratio_e1": str(splitting_ratio_estimate(ctx, 1, prime)),
        "eps": str(eps),
        "witness_w": [ok, e_w],
        "perturbed_prime": ideal_json(outcome.P_after),
        "perturbed_prime_is_principal": outcome.P_after == Ideal(ring, [ctx2.f]),
        "perturbed_dimension": outcome.dim_after,
        "strict_B": outcome.strict_B,
    }
    return report


EXPECTED_4_1 = {
    "fpure": True,
    "x2_in_I1": False,
    "jacobian": ["2*x0", "x1^5*x2^2", "-2*x1^6*x2", "3*x3^2"],
    "radical_jacobian": {"x0": True, "x1": False, "x2": False, "x3": True, "x1*x2": True},
    "radical_jacobian_eps8": {"x0": True, "x1": True, "x2": False, "x3": True},
    "splitting_prime": ["x0", "x1", "x3"],
    "splitting_dimension": 1,
}

EXPECTED_4_2 = {
    "fpure": True,
    "a1": 7,
    "splitting_prime": ["x", "y", "z"],
    "splitting_dimension": 1,
    "ratio_e1": "1",
    "witness_w": [True, 1],
    "perturbed_prime_is_principal": True,
    "perturbed_dimension": 3,
    "strict_B": True,
}


def check_golden(report: dict, expected: dict):
    """Raise GoldenFailure naming the first field that differs."""
    for key, value in expected.items():
        if report.get(key) != value:
            raise GoldenFailure(key, report.get(key), value)
    if report.get("example") == "4.1":
        if not report["a1"] == report["a1_f_plus_x1^7"] == report["a1_f_plus_x1^8"]:
            raise GoldenFailure("a1", [report["a1"], report["a1_f_plus_x1^7"],
                                       report["a1_f_plus_x1^8"]], "all equal")
    if report.get("a2") is not None and report["a2"] != 49:
        raise GoldenFailure("a2", report["a2"], 49)


# campaigns

@dataclass(frozen=True)
class CampaignConfig:
    p: int
    n_vars: int
    degree: int = 4
    trials: int = 50
    seed: int = 0
    e_range: tuple = (1,)
    eps_samples: int = 3
    e0: int = 1
    battery_E: int = 2
    budget_seconds: float = None
    workers: int = 1
    record_timings: bool = False

    def __post_init__(self):
        if self.n_vars < 1 or self.degree < 1 or self.trials < 0 or self.eps_samples < 1:
            raise ValueError("campaign sizes must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if any(e < 1 for e in self.e_range) or self.e0 < 1 or self.battery_E < 1:
            raise ValueError("levels must be at least 1")
        if self.budget_seconds is not None and self.budget_seconds <= 0:
            raise ValueError("budget must be positive")
        RingSpec(self.p, self.variables)

    @property
    def variables(self):
        return tuple("xyzwuvst"[: self.n_vars]) if self.n_vars <= 8 else ()

    @property
    def ring(self):
        return RingSpec(self.p, self.variables)

    def as_dict(self):
        return {"p": self.p, "n_vars": self.n_vars, "degree": self.degree, "trials": self.trials,
                "seed": self.seed, "e_range": list(self.e_range), "eps_samples": self.eps_samples,
                "e0": self.e0, "battery_E": self.battery_E}


class _Budget:
    def __init__(self, seconds):
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise TooLarge("trial exceeded its time budget")


def random_f(ring: RingSpec, rng: random.Random, degree: int) -> Polynomial:
    while True:
        f = random_poly(ring, rng, degree, terms=rng.randint(1, 5), constant=False)
        if f:
            return f


def run_trial(config: CampaignConfig, index: int) -> dict:
    """One campaign trial; failures are recorded, never raised."""
    start = time.perf_counter()
    rng = random.Random(f"{config.seed}:{index}")
    ring = config.ring
    f = random_f(ring, rng, config.degree)
    ctx = HypersurfaceContext(ring, f)
    seed_A, seed_B = rng.getrandbits(63), rng.getrandbits(63)
    trial = {"index": index, "f": str(f), "fpure": None, "skipped": None, "prime": None,
             "certificate": None, "dimension": None, "battery": None, "A": [], "B": []}
    budget = _Budget(config.budget_seconds)
    try:
        trial["fpure"] = fedder_fpure(ctx)
        if not trial["fpure"]:
            raise NotFPure("f is not F-pure")
        prime = find_splitting_prime(ctx)
        trial["prime"] = ideal_json(prime.ideal)
        trial["certificate"] = prime.certificate
        trial["dimension"] = prime.dimension if prime.dimension_exact else None
        budget.check()
        E = config.battery_E
        if E > 1 and len(f.support_vars()) > A2_MAX_VARS:
            E = 1
        trial["battery"] = theoremC_battery(ctx, E).as_dict()
        budget.check()
        outs = perturb_theorem_A(ctx, config.eps_samples, config.e_range, seed_A, prime=prime,
                                 with_prime=False)
        trial["A"] = [o.as_dict() for o in outs]
        budget.check()
        outs = perturb_theorem_B(ctx, config.eps_samples, config.e0, seed_B, prime=prime)
        trial["B"] = [o.as_dict() for o in outs]
    except (FrobError, OverflowError) as exc:
        trial["skipped"] = skip_reason(exc)
    if config.record_timings:
        trial["seconds"] = round(time.perf_counter() - start, 6)
    return trial


def _aggregate(config, trials):
    agg = {"trials": len(trials), "fpure": 0, "skipped": {},
           "A": {"completed": 0, "passed": 0, "failed": 0, "skipped": {}},
           "B": {"completed": 0, "passed": 0, "strict": 0, "failed": 0, "skipped": {}},
           "C": {"instances": 0, "consistent": 0, "inconsistent": 0},
           "violations": []}

    def bump(d, key):
        d[key] = d.get(key, 0) + 1

    ring = config.ring
    for t in trials:
        if t["fpure"]:
            agg["fpure"] += 1
        if t["skipped"]:
            bump(agg["skipped"], t["skipped"])
        if t["battery"] is not None:
            agg["C"]["instances"] += 1
            if t["battery"]["consistent"]:
                agg["C"]["consistent"] += 1
            else:
                agg["C"]["inconsistent"] += 1
                agg["violations"].append({"theorem": "C", "ring": ring.inline(), "f": t["f"],
                                          "eps": None, "seed": config.seed, "trial": t["index"]})
        for name, verdict in (("A", "verdict_A"), ("B", "verdict_B")):
            for o in t[name]:
                bucket = agg[name]
                if o["skipped"]:
                    bump(bucket["skipped"], o["skipped"])
                    continue
                bucket["completed"] += 1
                if o[verdict]:
                    bucket["passed"] += 1
                    if name == "B" and o["strict_B"]:
                        bucket["strict"] += 1
                else:
                    bucket["failed"] += 1
                    agg["violations"].append({"theorem": name, "ring": ring.inline(), "f": o["f"],
                                              "eps": o["eps"], "seed": config.seed,
                                              "trial": t["index"]})
    return agg


def _trial_job(args):
    return run_trial(*args)


def random_campaign(config: CampaignConfig) -> dict:
    """Randomized Theorem A/B/C campaign; identical configs give identical reports."""
    start = time.perf_counter()
    jobs = [(config, i) for i in range(config.trials)]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            trials = list(pool.map(_trial_job, jobs))  # map keeps index order
    else:
        trials = [run_trial(*job) for job in jobs]
    return {
        "v": REPORT_VERSION,
        "ring": config.ring.inline(),
        "f": None,
        "config": config.as_dict(),
        "trials": trials,
        "aggregates": _aggregate(config, trials),
        "seed": config.seed,
        "timings": ({"total_seconds": round(time.perf_counter() - start, 6)}
                    if config.record_timings else None),
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
