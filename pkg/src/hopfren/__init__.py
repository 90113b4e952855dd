"""Exact Hopf-algebraic renormalization toolkit for massless phi^3 in six dimensions.

Submodules
----------
series   truncated power and Laurent series over exact coefficient algebras
hopf     graded Hopf algebras given as coproduct tables, characters, Birkhoff
graphs   phi^3 graph generation, canonical keys, symmetry factors, coproduct
groups   G_diff, G_pow, their semi-direct product and the morphism checks
io       character, catalog and report files
"""

__version__ = "0.1.0"

from .series import (LAURENT, QQ, LaurentSeries, TruncatedSeries,  # noqa: F401
                     series_comp_inverse, series_compose, series_rational_power,
                     series_recip)
from .hopf import (POLY, Character, GraphPoly, HopfPresentation,  # noqa: F401
                   birkhoff_decompose, check_axioms, convolve, coproduct)
from .graphs import (FeynmanGraph, build_presentation, catalog,  # noqa: F401
                     generate_graphs, symmetry_factor)
from .groups import (FROZEN_FLAGS, ConventionFlags, build_hdiff,  # noqa: F401
                     build_z_series, effective_coupling, scheme_morphism,
                     zeta_gamma)
