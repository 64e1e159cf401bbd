"""Symbolic model of character-indexed signature invariants on a genus-N
algebraically slice knot.

The underlying group is H = (Z_3)^(2N) with the hyperbolic linking form on
interleaved basis pairs (a_1, b_1, ..., a_N, b_N).  A configuration fixes

* the link index set: one entry targeting a_N, one entry per b_i, and
  N^2 - 1 ordered pair entries (a_k, b_l) for k < N, l <= N and (a_k, a_N)
  for k < N;
* a super-increasing signature schedule starting above twice the base
  bound, each later value more than double the previous;
* a bounded even base function f with f(0) = 0, modeling the inaccessible
  character-indexed invariants of the starting knot.

The value attached to a character chi_m is then

    f(m) + 2 C sigma' + 2 sum_i D_i sigma''_i + 2 sum_i E_i sigma'''_i

with the C, D, E coefficients read off from the vanishing pattern of
chi_m on the basis duals, exactly as the companionship formula dictates.
Characters are encoded by group elements m via chi_m = beta(., m).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import DomainError
from .fp import Subspace, all_subspaces_of, vec_add, vec_zero
from .linkform import FiniteLinkingForm, enumerate_metabolizers, hyperbolic_form


@dataclass(frozen=True)
class CGConfiguration:
    n: int
    bound: int
    form: FiniteLinkingForm
    pair_entries: tuple  # ((k, target_vector), ...) for the E coefficients
    sigma_prime: int
    sigma_dd: tuple
    sigma_ddd: tuple
    base: dict  # element -> int, even, zero at 0, bounded by ``bound``

    @property
    def rank(self):
        return 2 * self.n

    def a_vec(self, i):
        """Basis vector for a_i (1-based)."""
        return tuple(1 if c == 2 * (i - 1) else 0 for c in range(self.rank))

    def b_vec(self, i):
        return tuple(1 if c == 2 * (i - 1) + 1 else 0 for c in range(self.rank))

    def elements(self):
        return itertools.product(range(3), repeat=self.rank)

    def pair_labels(self):
        labels = []
        for k, target in self.pair_entries:
            name = _vector_label(self, target)
            labels.append(f"(a{k}, {name})")
        return tuple(labels)

    def base_value(self, m):
        return self.base.get(tuple(x % 3 for x in m), 0)


def _vector_label(cfg, vector):
    for i in range(1, cfg.n + 1):
        if vector == cfg.a_vec(i):
            return f"a{i}"
        if vector == cfg.b_vec(i):
            return f"b{i}"
    return str(vector)


def configuration(n: int, bound: int = 0, base_function=None,
                  schedule=None) -> CGConfiguration:
    """Build a configuration for genus parameter n >= 2.

    ``base_function`` maps group elements to integers (missing entries are
    0); it must be even, vanish at 0, and respect ``bound``.  ``schedule``
    overrides the derived super-increasing schedule and is validated; pass
    schedules violating the doubling condition only through
    ``separation_witness``, which does not require validity.
    """
    if n < 2:
        raise DomainError("the construction needs genus parameter N >= 2")
    form = hyperbolic_form(3, n)
    pair_entries = []
    for k in range(1, n):
        for l in range(1, n + 1):
            pair_entries.append((k, _basis_vector(2 * n, 2 * (l - 1) + 1)))
        pair_entries.append((k, _basis_vector(2 * n, 2 * (n - 1))))
    assert len(pair_entries) == n * n - 1
    if schedule is None:
        chain = _schedule_chain(bound, 1 + n + (n * n - 1))
    else:
        chain = list(schedule)
        _validate_schedule(chain, bound, 1 + n + (n * n - 1))
    sigma_prime = chain[0]
    sigma_dd = tuple(chain[1:1 + n])
    sigma_ddd = tuple(chain[1 + n:])
    base = _validate_base(base_function or {}, n, bound)
    return CGConfiguration(n, bound, form, tuple(pair_entries),
                           sigma_prime, sigma_dd, sigma_ddd, base)


def _basis_vector(rank, index):
    return tuple(1 if c == index else 0 for c in range(rank))


def _schedule_chain(bound, length):
    """sigma' = 2*bound + 1, then each value 5*previous + 1.

    Plain doubling is not enough: E-coefficient differences reach
    magnitude 2, and with s_(k+1) = 2 s_k + 1 realized patterns at N = 3
    produce exact cancellations (for instance
    -6 - 252 - 254 - 510 + 1022 = 0).  With growth factor 5 every nonzero
    signed combination with weights up to 2 has magnitude at least
    (s_0 + 1)/2 = bound + 1, so pattern differences always beat the base
    function, for every admissible base function at once.
    """
    chain = [2 * bound + 1]
    for _ in range(length - 1):
        chain.append(5 * chain[-1] + 1)
    return chain


def _validate_schedule(chain, bound, length):
    if len(chain) != length:
        raise DomainError(f"schedule needs exactly {length} values")
    if chain[0] <= 2 * bound:
        raise DomainError("first schedule value must exceed twice the bound")
    for a, b in zip(chain, chain[1:]):
        if b <= 2 * a:
            raise DomainError("schedule must more than double at each step")
    if any(x <= 0 for x in chain):
        raise DomainError("schedule values must be positive")


def _validate_base(base_function, n, bound):
    rank = 2 * n
    base = {}
    for m, value in base_function.items():
        key = tuple(x % 3 for x in m)
        if len(key) != rank:
            raise DomainError("base function key has the wrong rank")
        if value:
            base[key] = value
    zero = vec_zero(rank)
    if base.get(zero, 0) != 0:
        raise DomainError("base function must vanish on the trivial character")
    for m, value in base.items():
        if abs(value) > bound:
            raise DomainError("base function exceeds its bound")
        minus = tuple((-x) % 3 for x in m)
        if base.get(minus, 0) != value:
            raise DomainError("base function must be even")
    return base


def random_even_base_function(n: int, bound: int, rng: random.Random):
    """A random even bounded function vanishing at 0."""
    rank = 2 * n
    base = {}
    for m in itertools.product(range(3), repeat=rank):
        if not any(m):
            continue
        minus = tuple((-x) % 3 for x in m)
        if minus < m:
            continue
        value = rng.randint(-bound, bound)
        if value:
            base[m] = value
            base[minus] = value
    return base


# ---------------------------------------------------------------------------
# coefficients and values


@dataclass(frozen=True)
class Coefficients:
    c: int
    d: tuple
    e: tuple

    def as_tuple(self):
        return (self.c, self.d, self.e)

    def first_difference(self, other):
        """Label of the first coefficient where the two patterns differ."""
        if self.c != other.c:
            return "C"
        for i, (x, y) in enumerate(zip(self.d, other.d), start=1):
            if x != y:
                return f"D{i}"
        for i, (x, y) in enumerate(zip(self.e, other.e), start=1):
            if x != y:
                return f"E{i}"
        return None


def coefficients(cfg: CGConfiguration, m) -> Coefficients:
    """The C/D/E vanishing-pattern coefficients of chi_m."""
    beta = cfg.form.beta
    c = int(beta(cfg.a_vec(cfg.n), m) != 0)
    d = tuple(int(beta(cfg.b_vec(i), m) != 0) for i in range(1, cfg.n + 1))
    e = []
    for k, target in cfg.pair_entries:
        first = int(beta(cfg.a_vec(k), m) != 0)
        second = int(beta(vec_add(cfg.a_vec(k), target, 3), m) != 0)
        e.append(first - second)
    return Coefficients(c, d, tuple(e))


def cg_value(cfg: CGConfiguration, m):
    """f(m) plus twice the scheduled signature contributions."""
    co = coefficients(cfg, m)
    return (cfg.base_value(m)
            + 2 * co.c * cfg.sigma_prime
            + 2 * sum(di * si for di, si in zip(co.d, cfg.sigma_dd))
            + 2 * sum(ei * si for ei, si in zip(co.e, cfg.sigma_ddd)))


_PATTERN_CACHE = {}


def _signature_part_table(cfg):
    """Patterns and scheduled contributions for every element: these do not
    depend on the base function, so they are cached per (n, schedule)."""
    key = (cfg.n, cfg.sigma_prime, cfg.sigma_dd, cfg.sigma_ddd)
    cached = _PATTERN_CACHE.get(key)
    if cached is not None:
        return cached
    table = {}
    patterns = {}
    for m in cfg.elements():
        co = coefficients(cfg, m)
        patterns[m] = co
        table[m] = (2 * co.c * cfg.sigma_prime
                    + 2 * sum(d * s for d, s in zip(co.d, cfg.sigma_dd))
                    + 2 * sum(e * s for e, s in zip(co.e, cfg.sigma_ddd)))
    _PATTERN_CACHE[key] = (table, patterns)
    return table, patterns


def connected_sum_value(cfg1: CGConfiguration, cfg2: CGConfiguration,
                        m1, m2):
    """Value of the connected-sum model at the character chi_m1 + chi_m2,
    evaluated against the joint form on H_1 + H_2 (not as a shortcut sum;
    additivity is a theorem about this computation, tested as such)."""
    joint = cfg1.form.direct_sum(cfg2.form)
    m = tuple(m1) + tuple(m2)
    r1 = cfg1.rank
    total = cfg1.base_value(m1) + cfg2.base_value(m2)

    def embed(vector, left):
        if left:
            return tuple(vector) + vec_zero(cfg2.rank)
        return vec_zero(r1) + tuple(vector)

    for cfg, left in ((cfg1, True), (cfg2, False)):
        c = int(joint.beta(embed(cfg.a_vec(cfg.n), left), m) != 0)
        total += 2 * c * cfg.sigma_prime
        for i in range(1, cfg.n + 1):
            di = int(joint.beta(embed(cfg.b_vec(i), left), m) != 0)
            total += 2 * di * cfg.sigma_dd[i - 1]
        for idx, (k, target) in enumerate(cfg.pair_entries):
            first = int(joint.beta(embed(cfg.a_vec(k), left), m) != 0)
            pair_vec = vec_add(cfg.a_vec(k), target, 3)
            second = int(joint.beta(embed(pair_vec, left), m) != 0)
            total += 2 * (first - second) * cfg.sigma_ddd[idx]
    return total


# ---------------------------------------------------------------------------
# verification sweeps


def separation_witness(cfg: CGConfiguration):
    """A pair (m1, m2) with equal values but different coefficient
    patterns, or None when values separate patterns exactly.  Makes no
    assumption on the schedule, so it can exhibit failures of bad ones."""
    values, patterns = _value_tables(cfg)
    by_value = {}
    for m in cfg.elements():
        by_value.setdefault(values[m], []).append(m)
    for group in by_value.values():
        first = group[0]
        for other in group[1:]:
            if patterns[other].as_tuple() != patterns[first].as_tuple():
                return (first, other)
    return None


def _value_tables(cfg):
    table, patterns = _signature_part_table(cfg)
    values = {m: table[m] + cfg.base_value(m) for m in table}
    return values, patterns


def separation_property(cfg: CGConfiguration) -> bool:
    """Whether cg_value(m1) = cg_value(m2) iff the coefficient patterns
    agree, over all pairs.  Exhaustive."""
    values, patterns = _value_tables(cfg)
    by_pattern = {}
    for m in cfg.elements():
        by_pattern.setdefault(patterns[m].as_tuple(), set()).add(values[m])
    # same pattern must give same value ...
    if any(len(vals) != 1 for vals in by_pattern.values()):
        return False
    # ... and distinct patterns distinct values
    all_values = [next(iter(vals)) for vals in by_pattern.values()]
    return len(set(all_values)) == len(all_values)


def b_support_span(cfg: CGConfiguration) -> Subspace:
    """span(b_1, ..., b_(N-1)) inside H."""
    return Subspace.spanned_by(
        [cfg.b_vec(i) for i in range(1, cfg.n)], 3, cfg.rank)


def verify_m0_support(cfg: CGConfiguration) -> bool:
    """Every subgroup of a metabolizer on whose cosets the value is
    constant lies inside span(b_1 .. b_(N-1)).  Exhaustive over all
    metabolizers and all their subgroups."""
    values, _ = _value_tables(cfg)
    support = b_support_span(cfg)
    for met in enumerate_metabolizers(cfg.form):
        m_k = met.subspace
        for dim in range(1, m_k.dim + 1):
            for m_0 in all_subspaces_of(m_k, dim):
                if _constant_on_cosets(values, m_k, m_0):
                    if not m_0.is_subspace_of(support):
                        return False
    return True


def _constant_on_cosets(values, m_k, m_0):
    m0_elements = list(m_0.elements())
    for rep in m_k.coset_representatives(m_0):
        vals = {values[vec_add(rep, w, 3)] for w in m0_elements}
        if len(vals) > 1:
            return False
    return True


@dataclass(frozen=True)
class NonconstancyCase:
    metabolizer_basis: tuple
    m0_basis: tuple
    coset_representative: tuple  # None on failure
    link_index: str  # coefficient label; None if only the base differs
    values: tuple  # the two differing values

    @property
    def ok(self):
        return self.coset_representative is not None


@dataclass(frozen=True)
class NonconstancyReport:
    applicable: bool
    n: int
    cases: tuple
    failures: tuple

    @property
    def ok(self):
        return self.applicable and not self.failures

    def summary(self):
        if not self.applicable:
            return f"N = {self.n}: inapplicable (no rank gap possible)"
        lines = [f"N = {self.n}: {len(self.cases)} (M_K, M_0) cases checked"]
        lines.append("  all cosets witnessed non-constancy" if self.ok else
                     f"  {len(self.failures)} FAILURES")
        return "\n".join(lines)


def verify_nonconstancy(cfg_or_n, bound: int = 0,
                        base_function=None) -> NonconstancyReport:
    """For every metabolizer M_K and every nontrivial subgroup M_0 of
    M_K inside span(b_1..b_(N-1)): find a coset of M_0 in M_K carrying two
    elements with different values.  Exhaustive.

    Accepts an int (configuration built with the given bound and base
    function) or a prebuilt configuration.  N < 2 is flagged inapplicable.
    """
    if isinstance(cfg_or_n, int):
        if cfg_or_n < 2:
            return NonconstancyReport(False, cfg_or_n, (), ())
        cfg = configuration(cfg_or_n, bound, base_function)
    else:
        cfg = cfg_or_n
    values, patterns = _value_tables(cfg)
    support = b_support_span(cfg)
    cases = []
    failures = []
    for met in enumerate_metabolizers(cfg.form):
        m_k = met.subspace
        inter = m_k.intersection(support)
        for dim in range(1, inter.dim + 1):
            for m_0 in all_subspaces_of(inter, dim):
                case = _nonconstancy_case(cfg, values, patterns, m_k, m_0)
                cases.append(case)
                if not case.ok:
                    failures.append(case)
    return NonconstancyReport(True, cfg.n, tuple(cases), tuple(failures))


def _nonconstancy_case(cfg, values, patterns, m_k, m_0):
    m0_elements = [w for w in m_0.elements() if any(w)]
    for rep in m_k.coset_representatives(m_0):
        coset = [vec_add(rep, w, 3) for w in m_0.elements()]
        for m1, m2 in itertools.combinations(coset, 2):
            if values[m1] != values[m2]:
                label = patterns[m1].first_difference(patterns[m2])
                return NonconstancyCase(m_k.basis, m_0.basis, rep,
                                        label, (values[m1], values[m2]))
    return NonconstancyCase(m_k.basis, m_0.basis, None, None, ())


@dataclass(frozen=True)
class TrialReport:
    n: int
    bound: int
    trials: int
    seed: int
    reports: tuple

    @property
    def applicable(self):
        return all(r.applicable for r in self.reports)

    @property
    def ok(self):
        return all(r.ok for r in self.reports)

    def summary(self):
        status = "all cases pass" if self.ok else "FAILURES"
        total = sum(len(r.cases) for r in self.reports)
        return (f"N = {self.n}: {len(self.reports)} base functions "
                f"(bound {self.bound}, seed {self.seed}), "
                f"{total} cases: {status}")


def nonconstancy_trials(n: int, bound: int, trials: int,
                        seed: int = 0) -> TrialReport:
    """The zero base function plus ``trials`` random even base functions,
    all swept exhaustively.  The RNG is seeded once with ``seed`` and the
    trial functions are drawn in sequence from it."""
    if n < 2:
        return TrialReport(n, bound, trials, seed,
                           (NonconstancyReport(False, n, (), ()),))
    rng = random.Random(seed)
    reports = [verify_nonconstancy(n, bound=bound)]
    for _ in range(trials):
        base = random_even_base_function(n, bound, rng)
        reports.append(verify_nonconstancy(n, bound=bound,
                                           base_function=base))
    return TrialReport(n, bound, trials, seed, tuple(reports))
