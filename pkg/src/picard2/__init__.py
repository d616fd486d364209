"""Symmetric 2-groups as two-term complexes, and projective presentations.

Submodules:

- ``abgroup``: finitely generated abelian groups, Smith normal form based.
- ``sgp2``: Picard complexes, chain maps, homotopies, 2-exactness, lifts.
- ``ring2mod``: finite table rings and modules, strict 2-rings, 2-modules.
- ``oracle``: brute-force groupoid tables used to cross-check ``sgp2``.
"""

from .abgroup import AbHom, FinGenAbGroup, GroupElement
from .errors import NoSolution, SearchOverflow, ValidationError
from .intmatrix import IntMatrix, smith_normal_form
from .sgp2 import ChainHom, Homotopy, PicardComplex

__all__ = [
    "AbHom", "ChainHom", "FinGenAbGroup", "GroupElement", "Homotopy", "IntMatrix",
    "NoSolution", "PicardComplex", "SearchOverflow", "ValidationError", "smith_normal_form",
]
__version__ = "0.1.0"
