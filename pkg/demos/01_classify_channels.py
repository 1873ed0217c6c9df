#
# Classify a handful of Pauli maps by eigenvalue triple.
#
from paulivol import (
    EigenvalueTriple,
    choi_matrix,
    is_cp,
    is_cp_divisible,
    is_ebc,
    is_p_divisible,
    is_positive,
    is_tlg,
    lambda_to_p,
)

CASES = [
    ("identity", (1.0, 1.0, 1.0)),
    ("depolarizing t=0.3", (0.5488, 0.5488, 0.5488)),
    ("pure dephasing", (0.2, 0.2, 1.0)),
    ("bit flip heavy", (1.0, -0.5, -0.5)),
    ("not a channel", (0.9, 0.9, -0.9)),
    ("deep inside EBC", (0.1, 0.1, 0.1)),
]

header = f"{'name':<20} {'PT':>3} {'CPT':>4} {'EBC':>4} {'TLG':>4} {'PDIV':>5} {'CPDIV':>6}"
print(header)
print("-" * len(header))
for name, triple in CASES:
    lam = EigenvalueTriple(*triple)
    flags = [
        is_positive(lam), is_cp(lam), is_ebc(lam),
        is_tlg(lam), is_p_divisible(lam), is_cp_divisible(lam),
    ]
    cells = " ".join(f"{'x' if f else '.':>{w}}" for f, w in zip(flags, (3, 4, 4, 4, 5, 6)))
    print(f"{name:<20} {cells}")

# the Pauli weights are the Choi spectrum; negative entries mean the
# map is not completely positive
print()
lam = EigenvalueTriple(0.9, 0.9, -0.9)
p = lambda_to_p(lam)
print(f"weights of {tuple(lam)}: ({p.p0:+.3f}, {p.p1:+.3f}, {p.p2:+.3f}, {p.p3:+.3f})")
print("choi eigenvalues:", [round(float(x), 3) for x in choi_matrix(lam).eigenvalues()])
