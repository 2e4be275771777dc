# Splitting invariants of x0^2 - x1^6 x2^2 + x3^3 over F_7, step by step.

from frobtool import parse_poly, parse_ring_spec
from frobtool.frobenius import (HypersurfaceContext, bracket_power, fedder_fpure,
                                find_splitting_prime, jacobian_ideal, splitting_ideal,
                                splitting_number)
from frobtool.ideal import Ideal, ideal_member, radical_member

ring = parse_ring_spec("p=7 vars=x0 x1 x2 x3 order=grevlex")
P = lambda s: parse_poly(s, ring)
ctx = HypersurfaceContext(ring, P("x0^2 - x1^6*x2^2 + x3^3"))

# Fedder: R/(f) is F-pure iff f^(p-1) escapes m^[p]
m7 = bracket_power(Ideal.maximal(ring), 1)
print("m^[7] =", m7)
print("F-pure:", fedder_fpure(ctx))
f6 = ctx.f ** 6
print("coefficient of x0^6 x1^6 x2^2 x3^6 in f^6:", f6.terms.get((6, 6, 2, 6)))

# the first splitting ideal, lifted to R, and its colength a_1
I1 = splitting_ideal(ctx, 1)
print("I_1 =", I1)
print("x2 in I_1:", ideal_member(P("x2"), I1))
print("a_1 =", splitting_number(ctx, 1))

# the singular locus has two components, and the splitting prime picks the x2-line
jac = jacobian_ideal(ctx.f)
print("Jac(f) =", jac)
for v in ("x0", "x1", "x2", "x3", "x1*x2"):
    print(f"  {v} in rad Jac(f):", radical_member(P(v), jac))

prime = find_splitting_prime(ctx)
print("splitting prime:", prime.ideal, f"({prime.certificate} certificate)")
print("splitting dimension:", prime.dimension)

# perturbing by x1^n for n >= 7 leaves a_1 alone
for n in (7, 8, 9, 14):
    g = ctx.with_f(ctx.f + P(f"x1^{n}"))
    print(f"a_1(f + x1^{n}) =", splitting_number(g, 1))
