"""Metabolizer splitting under direct sums.

Given a metabolizer M# of the orthogonal difference form on H_K + H_J and
a metabolizer M_J of H_J, the derived subgroups are

    M_K  = { m in H_K : (m, m') in M# for some m' in M_J }
    M_0  = { m in H_K : (m, 0) in M# }
    M_J0 = { m' in H_J : (0, m') in M# }

together with the fibers M_{m'} = { m : (m, m') in M# }.  The verification
operations machine-check, exhaustively at small rank, that M_K is a
metabolizer, that nonempty fibers are cosets of M_0, that the fiber map
induces an injection M_K/M_0 -> M_J/M_J0, and that M_0 is forced to be
nontrivial whenever rank(H_K) exceeds twice the metabolizer rank available
on the J side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainError
from .fp import Subspace, vec_add
from .linkform import (
    FiniteLinkingForm,
    Metabolizer,
    enumerate_metabolizers,
    hyperbolic_form,
    is_metabolizer,
)


@dataclass(frozen=True)
class SplitData:
    """Everything derived from one (M#, M_J) pair."""

    form_k: FiniteLinkingForm
    form_j: FiniteLinkingForm
    m_sharp: Metabolizer
    m_j: Metabolizer
    m_k: Subspace
    m_0: Subspace
    m_j0: Subspace
    fibers: dict  # m' in M_J -> frozenset of m in H_K, nonempty fibers only

    def describe(self):
        lines = [
            f"M#   basis: {list(self.m_sharp.basis)}",
            f"M_J  basis: {list(self.m_j.basis)}",
            f"M_K  basis: {list(self.m_k.basis)}",
            f"M_0  basis: {list(self.m_0.basis)}",
            f"M_J0 basis: {list(self.m_j0.basis)}",
        ]
        return "\n".join(lines)


def split(form_k: FiniteLinkingForm, form_j: FiniteLinkingForm,
          m_sharp: Metabolizer, m_j: Metabolizer) -> SplitData:
    """Compute all derived subgroups by exhaustive membership scans."""
    ambient = form_k.direct_sum(form_j.negate())
    if not is_metabolizer(ambient, m_sharp):
        raise DomainError("M# is not a metabolizer of the difference form")
    if not is_metabolizer(form_j, m_j):
        raise DomainError("M_J is not a metabolizer of H_J")
    rk = form_k.rank
    p = form_k.prime
    fibers = {}
    m_0_elements = []
    m_j0_elements = []
    mj_set = m_j.element_set()
    for el in m_sharp.element_list():
        left, right = el[:rk], el[rk:]
        if right in mj_set:
            fibers.setdefault(right, set()).add(left)
        if not any(right):
            m_0_elements.append(left)
        if not any(left):
            m_j0_elements.append(right)
    m_k_elements = sorted(set().union(*fibers.values())) if fibers else []
    return SplitData(
        form_k=form_k,
        form_j=form_j,
        m_sharp=m_sharp,
        m_j=m_j,
        m_k=Subspace.spanned_by(m_k_elements, p, rk),
        m_0=Subspace.spanned_by(m_0_elements, p, rk),
        m_j0=Subspace.spanned_by(m_j0_elements, p, form_j.rank),
        fibers={k: frozenset(v) for k, v in fibers.items()},
    )


def verify_split_membership(s: SplitData) -> bool:
    """M_K as a set equals the union of the fibers, and M_0, M_J0 are
    genuinely subgroups (the raw element sets are closed)."""
    p = s.form_k.prime
    union = set()
    for fiber in s.fibers.values():
        union |= fiber
    if union != set(s.m_k.elements()):
        return False
    raw_m0 = s.fibers.get(tuple([0] * s.form_j.rank), frozenset())
    return raw_m0 == frozenset(s.m_0.elements())


def verify_metabolizer_theorem(s: SplitData) -> bool:
    """M_K is a metabolizer of H_K."""
    return is_metabolizer(s.form_k, s.m_k)


def verify_coset_lemma(s: SplitData) -> bool:
    """Every nonempty fiber M_{m'} is a coset of M_0 in M_K."""
    p = s.form_k.prime
    m0 = list(s.m_0.elements())
    for fiber in s.fibers.values():
        member = next(iter(fiber))
        coset = {vec_add(member, w, p) for w in m0}
        if fiber != coset:
            return False
        if not all(s.m_k.contains(x) for x in fiber):
            return False
    return True


def verify_injection_lemma(s: SplitData) -> bool:
    """The fiber map M_{m'} -> m' is well-defined, homomorphic, and
    injective from M_K/M_0 to M_J/M_J0."""
    p = s.form_k.prime
    # well-defined: equal fibers force m' - m'' in M_J0
    items = list(s.fibers.items())
    for (y1, f1), (y2, f2) in itertools.combinations(items, 2):
        if f1 == f2:
            if not s.m_j0.contains(vec_add(y1, tuple(-c for c in y2), p)):
                return False
    # homomorphic: the fiber containing x1 + x2 maps to y1 + y2 mod M_J0
    for (y1, f1), (y2, f2) in itertools.product(items, repeat=2):
        x1, x2 = next(iter(f1)), next(iter(f2))
        total = vec_add(x1, x2, p)
        target = vec_add(y1, y2, p)
        for y3, f3 in items:
            if total in f3:
                diff = vec_add(y3, tuple(-c for c in target), p)
                if not s.m_j0.contains(diff):
                    return False
                break
        else:
            return False
    # injective: m' in M_J0 forces the fiber to be M_0 itself
    m0_set = frozenset(s.m_0.elements())
    for y, fiber in items:
        if s.m_j0.contains(y) and fiber != m0_set:
            return False
    # the quotient comparison the injection implies
    return s.m_k.dim - s.m_0.dim <= s.m_j.subspace.dim - s.m_j0.dim


@dataclass(frozen=True)
class SweepReport:
    prime: int
    cases: tuple  # (g, g_j, instance count) triples
    instances: int
    failures: tuple  # (label, SplitData) pairs
    m0_nontrivial: int  # count over rank-gap instances
    m0_applicable: int  # number of rank-gap instances

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        lines = [f"p = {self.prime}: {self.instances} (M#, M_J) instances"]
        for g, gj, count in self.cases:
            lines.append(f"  g = {g}, g' = {gj}: {count} instances")
        if self.m0_applicable:
            lines.append(
                f"  M_0 nontrivial in {self.m0_nontrivial} of "
                f"{self.m0_applicable} rank-gap instances")
        lines.append("  no counterexamples" if self.ok
                     else f"  {len(self.failures)} counterexamples")
        return "\n".join(lines)


def sweep(p: int, genus_pairs) -> SweepReport:
    """Exhaustively verify the splitting theorems over every (M#, M_J)
    instance for each (g, g_j) pair, with H_K and H_J hyperbolic."""
    failures = []
    cases = []
    instances = 0
    m0_nontrivial = 0
    m0_applicable = 0
    for g, gj in genus_pairs:
        form_k = hyperbolic_form(p, g)
        form_j = hyperbolic_form(p, gj)
        ambient = form_k.direct_sum(form_j.negate())
        sharps = enumerate_metabolizers(ambient)
        m_js = enumerate_metabolizers(form_j)
        count = 0
        for m_sharp in sharps:
            for m_j in m_js:
                s = split(form_k, form_j, m_sharp, m_j)
                count += 1
                for label, check in (
                    ("membership", verify_split_membership),
                    ("metabolizer", verify_metabolizer_theorem),
                    ("coset", verify_coset_lemma),
                    ("injection", verify_injection_lemma),
                ):
                    if not check(s):
                        failures.append((label, s))
                if gj < g:
                    m0_applicable += 1
                    if s.m_0.dim > 0:
                        m0_nontrivial += 1
                    else:
                        failures.append(("m0-nontrivial", s))
        cases.append((g, gj, count))
        instances += count
    return SweepReport(p, tuple(cases), instances, tuple(failures),
                       m0_nontrivial, m0_applicable)


@dataclass(frozen=True)
class NontrivialM0Report:
    applicable: bool
    instances: int
    nontrivial: int

    @property
    def ok(self):
        return self.applicable and self.nontrivial == self.instances


def verify_nontrivial_m0(p: int, g: int, g_j: int) -> NontrivialM0Report:
    """Check M_0 != 0 over every (M#, M_J) instance with the rank gap
    g_j < g; inapplicable without the gap.

    The theorem quantifies over some M#; the sweep tests the stronger
    for-all reading and reports the tally.
    """
    if g_j >= g:
        return NontrivialM0Report(False, 0, 0)
    report = sweep(p, [(g, g_j)])
    return NontrivialM0Report(True, report.m0_applicable, report.m0_nontrivial)
