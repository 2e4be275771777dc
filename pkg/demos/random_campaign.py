# A small randomized campaign, and a perturbation that lowers the splitting dimension.

import json

from frobtool import parse_poly, parse_ring_spec
from frobtool.experiments import CampaignConfig, perturb_theorem_B, random_campaign
from frobtool.frobenius import HypersurfaceContext

config = CampaignConfig(p=3, n_vars=2, degree=4, trials=30, seed=42)
report = random_campaign(config)
agg = report["aggregates"]
print(json.dumps({k: agg[k] for k in ("trials", "fpure", "skipped", "A", "B", "C")}, indent=1))

# the first F-pure trial; any trial is reproducible from the seed and its index
t = next(t for t in report["trials"] if t["fpure"])
print(f"trial {t['index']}:", t["f"], "->", t["prime"], "dim", t["dimension"])

# f below is strongly F-regular, so its splitting dimension is 2. Adding z^3,
# which lies in m^[3], cancels the z^3 term and leaves two sheets crossing
# along the z-axis, so perturbations from m^[p] alone can lower the dimension.
# Perturbations from m^[p^2] do not.
ring = parse_ring_spec("p=3 vars=x y z order=grevlex")
ctx = HypersurfaceContext(ring, parse_poly("x^2 + x*y - x^2*y - x^2*y^2 - z^3", ring))
for eps in ("z^3", "z^9"):
    (out,) = perturb_theorem_B(ctx, eps=[parse_poly(eps, ring)])
    print(f"eps = {eps}: dimension {out.dim_before} -> {out.dim_after}")
