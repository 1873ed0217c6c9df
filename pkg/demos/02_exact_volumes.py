# Exact Hilbert-Schmidt volumes of the polytopal regions, by rational
# vertex enumeration.  The unit of volume is the whole positivity cube.

from fractions import Fraction

from paulivol import RegionExpr, region_volume

REGIONS = [
    "PT",
    "CPT",
    "EBC",
    "CPT,EBC",
    "PT,TLG",
    "CPT,TLG",
    "CPT,PDIV",
    "CPT,TLG,EBC",
    "CPT,TLG,PDIV",
]

for name in REGIONS:
    v = region_volume(RegionExpr.parse(name))
    print(f"V({name}) = {v}  (= {float(v):.6f})")

print()

def ratio(num, den):
    return region_volume(RegionExpr.parse(num)) / region_volume(RegionExpr.parse(den))

print("channels reachable by a time-local generator:", ratio("CPT,TLG", "CPT"))
print("channels needing a memory kernel:            ", 1 - ratio("CPT,TLG", "CPT"))
print("P-divisible fraction of channels:            ", ratio("CPT,PDIV", "CPT"))
print("entanglement breaking fraction:              ", ratio("CPT,EBC", "CPT"))
print("EBC fraction among TLG channels:             ", ratio("CPT,TLG,EBC", "CPT,TLG"))
assert ratio("CPT,TLG", "CPT") == Fraction(3, 16)
