# Fisher-Rao volumes.  The metric lives on the channel tetrahedron
# (its density diverges at the faces), so every region expression must
# include CPT.  The full tetrahedron integrates to 2 pi^2 in closed
# form, which the importance sampler hits with zero variance.

import math

from paulivol import FR_TOTAL, RegionExpr, SamplerConfig, fr_volume_mc

cfg = SamplerConfig(samples=10**6, seed=3)

full = fr_volume_mc(RegionExpr.parse("CPT"), cfg)
print(f"FR volume of all channels: {full.value:.6f}  (2 pi^2 = {2 * math.pi**2:.6f})")
assert full.value == FR_TOTAL

for name in ("CPT,EBC", "CPT,TLG", "CPT,TLG,EBC"):
    est = fr_volume_mc(RegionExpr.parse(name), cfg)
    share = est.value / FR_TOTAL
    print(
        f"FR volume of {name:<12}: {est.value:8.4f} +- {est.std_error:.4f}"
        f"   share {share:.4f}"
    )

# compare with the flat Hilbert-Schmidt shares: the Fisher-Rao metric
# piles weight near the tetrahedron faces, so the centrally placed
# octahedron loses share while the face-touching pyramid gains some
from paulivol import hs_volume_mc, region_volume

print()
for name in ("CPT,EBC", "CPT,TLG"):
    hs_share = float(region_volume(RegionExpr.parse(name)) / region_volume(RegionExpr.parse("CPT")))
    fr_share = fr_volume_mc(RegionExpr.parse(name), cfg).value / FR_TOTAL
    print(f"{name}: HS share {hs_share:.4f}  vs  FR share {fr_share:.4f}")
