"""
Randomized irreducibility probes
================================

The probe closes random sparse vectors.  A proper closure is a witness of
reducibility; finding none is evidence, not proof.
"""

from lcworkbench import build_KB_quotient, build_module, irreducibility_probe

A = build_KB_quotient(2, 2)

for family, params in [("V1", {"delta": 0, "alpha": 1}),
                       ("V2", {"delta": 0, "alpha": 1}),
                       ("V1", {"delta": "2/3", "alpha": 1}),
                       ("V22", {"delta": 1, "lam": 2, "alpha": 0})]:
    M = build_module(family, params, A)
    res = irreducibility_probe(M, degree_bound=3, trials=50, seed=0)
    print(f"{M.label():24s} {res['verdict']:18s} witnesses={res['witness_count']}"
          f" distinct closures={len(res.get('distinct_closures', []))}")

###############################################################################
# At the reducible points every witness closes to the same submodule.

M = build_module("V1", {"delta": 0, "alpha": 1}, A)
res = irreducibility_probe(M, 3, 50, 0)
print("witness:", res["witness"])
print("closures seen:", {str(b.to_strings(["v0", "v1"])) for b in res["_bases"]})
