"""
Composition factors at the degenerate parameters
================================================

At 2 Delta + Lambda = 0 or 2 Delta - Lambda = 0 the rank (2+2) module is
reducible.  The pipeline finds a submodule by closure, puts it in Hermite
form, forms the quotient and matches each piece against a catalog model with
an explicit isomorphism.  It recurses until every piece is irreducible.
"""

from lcworkbench import build_K2, build_KB_quotient, build_module, composition_factors
from lcworkbench.submodules import closure

A = build_KB_quotient(2, 1)

M = build_module("V22", {"delta": 1, "lam": -2, "alpha": 1}, A)
print(M.label())
B = closure(M, ["v1_2"])
print("closure of v1_2:", B.to_strings([g.name for g in M.generators]))

labels, steps = composition_factors(M)
print("factors:", labels)
for s in steps:
    ok = s.get("pass", s.get("matches", s.get("full")))
    print("  ", s["step"], s.get("target", s.get("module")), ok)

###############################################################################
# Delta = Lambda = 0 is degenerate both ways.  The pipeline runs both routes
# and checks they agree.  A trivial one-dimensional factor appears.

for delta in (0, "-1/2"):
    lam = 0 if delta == 0 else 1
    labels, _ = composition_factors(build_module("V22", {"delta": delta, "lam": lam, "alpha": 1}, A))
    print(f"delta = {delta}:", labels)

###############################################################################
# Same lists over K2, with K in place of V.

print(composition_factors(build_module("V22", {"delta": 0, "lam": 0, "alpha": 1}, build_K2()))[0])
