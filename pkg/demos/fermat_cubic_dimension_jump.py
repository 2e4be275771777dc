# The cone over the Fermat cubic in F_7[x,y,z,w], and what w^8 does to it.

from frobtool import parse_poly, parse_ring_spec
from frobtool.experiments import perturb_theorem_B
from frobtool.frobenius import (HypersurfaceContext, find_splitting_prime, glassbrenner_witness,
                                splitting_number, splitting_ratio_estimate)

ring = parse_ring_spec("p=7 vars=x y z w order=grevlex")
P = lambda s: parse_poly(s, ring)
ctx = HypersurfaceContext(ring, P("x^3 + y^3 + z^3"))

# a_e = p^e: the w direction is free, everything else is killed
for e in (1, 2):
    print(f"a_{e} =", splitting_number(ctx, e))

prime = find_splitting_prime(ctx)
print("splitting prime:", prime.ideal, "dimension", prime.dimension)
print("ratio a_1 / p^n =", splitting_ratio_estimate(ctx, 1, prime))

# w alone is not a test element: it does not cut out the singular locus
print("witness w for f:", glassbrenner_witness(ctx, P("w")))

# w^8 = w * w^7 lies in m^[7]; f + w^8 has an isolated singularity and w works
g = ctx.with_f(ctx.f + P("w^8"))
print("witness w for f + w^8:", glassbrenner_witness(g, P("w")))

(out,) = perturb_theorem_B(ctx, eps=[P("w^8")], prime=prime)
print("splitting prime of f + w^8:", out.P_after)
print(f"dimension {out.dim_before} -> {out.dim_after}, strict: {out.strict_B}")
