# Exact rational meshes of the polytopal regions, ready for JSON
# export or rendering.

import json
from fractions import Fraction

from paulivol import RegionExpr, build_polytope, halfspace_description, mesh_document

for name in ("CPT", "CPT,EBC", "CPT,TLG"):
    expr = RegionExpr.parse(name)
    pieces = [build_polytope(s) for s in halfspace_description(expr)]
    for poly in pieces:
        print(f"{name}: {len(poly.vertices)} vertices, {len(poly.facets)} facets,"
              f" euclidean volume {poly.euclidean_volume()}")
        for v in poly.vertices:
            print("   ", tuple(str(c) for c in v))

# the P-divisible region is a union of four orthant pieces; three of
# its intersections with the time-local cone are flat and contribute
# nothing
expr = RegionExpr.parse("CPT,TLG,PDIV")
volumes = [build_polytope(s).euclidean_volume() for s in halfspace_description(expr)]
print("\npiece volumes of CPT,TLG,PDIV:", [str(v) for v in volumes])
assert sum(volumes) == Fraction(1, 2)

doc = mesh_document(RegionExpr.parse("CPT"))
print("\nmesh document for CPT:")
print(json.dumps(doc, indent=2)[:400], "...")
