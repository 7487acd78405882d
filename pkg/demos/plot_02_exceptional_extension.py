"""
The p = -1 extension of the rank (2+2) module
=============================================

The beta block couples the two halves of V[Delta, Lambda, alpha].  It
satisfies the module axioms over KB(-1) and over k(1) only.
"""

from lcworkbench import build_KB_quotient, build_k, build_module

params = {"delta": "1/3", "lam": "2", "alpha": "0", "beta": "5"}

for A in (build_KB_quotient(-1, 2), build_k(1)):
    M = build_module("V22", params, A)
    rep = M.check_module_axioms()
    print(M.label(), "over", A.name, "->", rep.passed, f"({rep.checked} cells)")

###############################################################################
# Away from p = -1 the same action table fails.  ``force=True`` skips the guard
# so the failure can be observed.

for p in (-2, 1, 2):
    M = build_module("V22", params, build_KB_quotient(p, 2), force=True)
    rep = M.check_module_axioms()
    print(f"p = {p}:", rep.passed, len(rep.failures), "failing cells; first", rep.failures[0]["cell"])

###############################################################################
# Without force the builder refuses.

try:
    build_module("V22", params, build_KB_quotient(2, 2))
except ValueError as exc:
    print("refused:", exc)
