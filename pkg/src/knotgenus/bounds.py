"""Lower bounds on the 4-ball genus and the concordance genus, and their
combination into a per-knot verdict.

Two concordance-genus bounds are computed: the polynomial bound (half the
total degree of symmetric irreducible Alexander factors of odd multiplicity)
and the Milnor-signature bound (half of sum |sigma_theta/2| * deg over
symmetric factors).  The 4-ball genus is bounded below by half the absolute
classical signature.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DataIntegrityError, DomainError
from .laurent import NormalizedAlexander, factor, is_symmetric
from .seifert import (
    SeifertMatrix,
    classical_signature,
    milnor_theta_signature,
    symmetric_factor_roots,
    alexander_polynomial,
    witt_reduce,
)


def gc_polynomial_bound(delta: NormalizedAlexander) -> int:
    """Half the summed degree of symmetric irreducible factors appearing
    with odd multiplicity."""
    if abs(delta.evaluate(1)) != 1:
        raise DomainError("not a knot polynomial: |p(1)| != 1")
    total = 0
    for fac, mult in factor(delta).factors:
        if fac.max_exp == 0:
            continue
        if mult % 2 == 1 and is_symmetric(fac):
            total += fac.max_exp
    assert total % 2 == 0
    return total // 2


def gc_milnor_bound(v: SeifertMatrix, strict: bool = False) -> int:
    """Half of sum |sigma_theta / 2| * deg(p) over distinct symmetric
    irreducible factors p of the Alexander polynomial.

    The theorem allows one root angle theta per factor; the default takes
    the angle of maximal magnitude (always a safe reading).  ``strict``
    instead sums the contribution of every root angle of every factor.
    """
    reduced = witt_reduce(v)
    delta = alexander_polynomial(reduced)
    doubled = 0  # accumulates |sigma_theta/2| * deg, to halve at the end
    for fac, _mult, roots in symmetric_factor_roots(delta):
        values = [abs(milnor_theta_signature(reduced, fac, root)) // 2
                  for root in roots]
        if not values:
            continue
        if strict:
            doubled += sum(values) * fac.max_exp
        else:
            doubled += max(values) * fac.max_exp
    assert doubled % 2 == 0
    return doubled // 2


def g4_signature_bound(v: SeifertMatrix) -> int:
    """ceil(|signature| / 2)."""
    sigma = classical_signature(v)
    return (abs(sigma) + 1) // 2


@dataclass(frozen=True)
class GenusBounds:
    """Combined verdict for one knot.

    ``status`` is one of "slice", "polynomial", "milnor", "concordance",
    "unresolved"; the first four mean the concordance genus is pinned and
    ``resolved_gc`` carries its value.
    """

    genus: int | None
    g4_lower: int
    g4_upper: int | None
    gc_lower: int
    gc_upper: int | None
    provenance: tuple
    status: str

    @property
    def resolved_gc(self):
        if self.status == "slice":
            return 0
        if self.status in ("polynomial", "milnor"):
            return self.genus
        if self.status == "concordance":
            return self.gc_upper
        return None


def combine_bounds(delta: NormalizedAlexander,
                   seifert: SeifertMatrix | None = None,
                   genus: int | None = None,
                   abs_signature: int | None = None,
                   slice_flag: bool = False,
                   concordance_gc: int | None = None,
                   g4_upper: int | None = None,
                   strict_milnor: bool = False) -> GenusBounds:
    """Combine every applicable rule into a GenusBounds verdict.

    ``abs_signature`` substitutes for the signature bound when no Seifert
    matrix is available (as for most table records); ``concordance_gc`` is
    the known concordance genus of a concordant knot, table-sourced.
    """
    provenance = []
    poly = gc_polynomial_bound(delta)
    if poly:
        provenance.append("polynomial-bound")
    milnor = None
    if seifert is not None:
        milnor = gc_milnor_bound(seifert, strict=strict_milnor)
        if milnor:
            provenance.append("milnor-bound")

    g4_lower = 0
    if seifert is not None:
        g4_lower = g4_signature_bound(seifert)
    elif abs_signature is not None:
        g4_lower = (abs(abs_signature) + 1) // 2
    if g4_lower:
        provenance.append("signature-bound")

    gc_lower = max(poly, milnor or 0)
    gc_upper = genus

    if slice_flag:
        if gc_lower or g4_lower:
            raise DataIntegrityError(
                "slice knot with a nonzero lower bound: "
                f"gc_lower={gc_lower}, g4_lower={g4_lower}")
        return GenusBounds(genus, 0, 0, 0, 0, ("slice",), "slice")

    if genus is not None and gc_lower > genus:
        raise DataIntegrityError(
            f"concordance-genus lower bound {gc_lower} exceeds genus {genus}")

    if genus is not None and poly == genus:
        status = "polynomial"
        gc_upper = genus
    elif genus is not None and milnor is not None and milnor == genus:
        status = "milnor"
        gc_upper = genus
    elif concordance_gc is not None:
        if gc_lower > concordance_gc:
            raise DataIntegrityError(
                f"lower bound {gc_lower} exceeds the concordance target's "
                f"genus {concordance_gc}")
        status = "concordance"
        gc_upper = concordance_gc
        provenance.append("concordance")
    else:
        status = "unresolved"

    return GenusBounds(genus, g4_lower, g4_upper, gc_lower, gc_upper,
                       tuple(provenance), status)
