"""Seeded Monte Carlo volumes against the exact ones.

The CP-divisible region is not a polytope, so sampling is the only way
to get its volume; everything else doubles as a cross-check of the
exact engine.
"""

from paulivol import (
    RegionExpr,
    SamplerConfig,
    hs_volume_mc,
    ratio_mc,
    region_volume,
)

cfg = SamplerConfig(samples=10**6, seed=7)

for name in ("CPT", "CPT,EBC", "CPT,TLG", "CPT,PDIV"):
    expr = RegionExpr.parse(name)
    est = hs_volume_mc(expr, cfg)
    exact = region_volume(expr)
    dev = abs(est.value - float(exact)) / est.std_error
    print(
        f"V({name}): mc {est.value:.5f} +- {est.std_error:.5f}"
        f"  exact {float(exact):.5f}  ({dev:.2f} sigma)"
    )

print()

# the two quantities with no exact counterpart
for num, den in (("CPDIV", "CPT"), ("CPDIV", "CPT,TLG")):
    est = ratio_mc(RegionExpr.parse(num), RegionExpr.parse(den), cfg)
    print(f"V({num} & {den}) / V({den}) = {est.value:.5f} +- {est.std_error:.5f}")

# same seed, same answer, bit for bit
again = ratio_mc(RegionExpr.parse("CPDIV"), RegionExpr.parse("CPT"), cfg)
assert again.value == ratio_mc(RegionExpr.parse("CPDIV"), RegionExpr.parse("CPT"), cfg).value
print("\nrerun with the same seed reproduces the estimate exactly")
