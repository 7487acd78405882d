"""
Checking the axioms of a conformal superalgebra
===============================================

Build KB(p) truncated at a cutoff, look at a few lambda-brackets, and run
the skew-symmetry and Jacobi checks.  Then break one bracket on purpose.
"""

from lcworkbench import build_KB_quotient, build_k

A = build_KB_quotient(-1, 2)
print(A)
for left, right in [("L_0", "L_0"), ("G+_0", "G-_0"), ("L_1", "J_1")]:
    print(f"[{left} lambda {right}] =", A.bracket(left, right))

###############################################################################
# Every pair and every triple of basis symbols is checked; a pass means the
# residual polynomial is identically zero.

for name, rep in A.check_axioms().items():
    print(name, rep.passed, rep.checked, "cells")

###############################################################################
# k(n) is KB(-n) cut off at n.

print(build_k(2).name, all(r.passed for r in build_k(2).check_axioms().values()))

###############################################################################
# Sabotage: change one structure constant and the Jacobi check names the triple.

from lcworkbench.conformal import Combination

B = build_KB_quotient(2, 1)
a, b = B.symbol("G+_0"), B.symbol("G-_0")
B.table[(a, b)] = Combination({k: v.scale(3) if k.name == "J_0" else v
                               for k, v in B.table[(a, b)].items()})
rep = B.check_axioms()["jacobi"]
print("jacobi passed:", rep.passed)
print("first failure:", rep.failures[0])
