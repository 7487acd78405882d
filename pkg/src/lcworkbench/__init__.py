"""Exact verification engine for Block type Lie conformal superalgebras.

Layers, bottom up: :mod:`scalars` (Q(i, sqrt p)), :mod:`polys` (D, L, M),
:mod:`conformal` (algebras and axiom checks), :mod:`catalog` (KB(p)_[n],
k(n), K2), :mod:`annihilation` (modes and g(k, N)), :mod:`modules` and
:mod:`submodules` (conformal modules, Hermite forms, composition factors),
:mod:`documents` and :mod:`cli`.
"""

from .scalars import FieldContext, Scalar, make_field
from .polys import Poly
from .conformal import BasisSymbol, Combination, ConformalSuperalgebra, Report
from .catalog import build_K2, build_KB_quotient, build_k
from .modules import ConformalModule, Generator, build_module, reverse_parity
from .submodules import (closure, composition_factors, hermite_form, irreducibility_probe,
                         membership, quotient_module, check_iso)

__version__ = "0.1.0"

__all__ = [
    "FieldContext", "Scalar", "make_field", "Poly",
    "BasisSymbol", "Combination", "ConformalSuperalgebra", "Report",
    "build_KB_quotient", "build_k", "build_K2",
    "ConformalModule", "Generator", "build_module", "reverse_parity",
    "hermite_form", "membership", "closure", "quotient_module", "check_iso",
    "composition_factors", "irreducibility_probe",
]
