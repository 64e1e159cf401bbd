"""knotgenus: exact concordance-genus machinery for knots.

Submodules
----------
laurent    Integer Laurent polynomials, factorization, Fox-Milnor test.
seifert    Seifert-matrix invariants: Alexander polynomial, signatures,
           isometric structures, double-branched-cover homology.
bounds     Lower bounds for the 4-ball and concordance genus.
linkform   Linking forms on finite groups and metabolizer enumeration.
metsplit   Metabolizer splitting under direct sums, with exhaustive
           verification sweeps.
cgmodel    Symbolic model of character-indexed signature invariants on a
           genus-N slice knot; non-constancy verification.
knotdb     The bundled prime-knot table and its classification.
cli        Command-line front end.
"""

from .errors import DataIntegrityError, DomainError, OnJumpError

__all__ = ["DataIntegrityError", "DomainError", "OnJumpError"]

__version__ = "0.1.0"
