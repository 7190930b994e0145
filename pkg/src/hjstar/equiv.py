"""Validity of moduli data and the four equivalent conditions on the model.

For moduli data ``(g, k, chains)`` with dual chains ``l^i``:

1. ``D∞`` carries a divisor ``a σ∞ + sum a^i_j τ^i_j`` with positive
   integer coefficients meeting every component of ``D∞`` positively;
2. the intersection form of ``D0`` is negative definite;
3. ``sum 1/[k^i_1..k^i_n] < k``;
4. ``sum 1/[l^i_1..l^i_m] > s - k``.

The inequalities behind (1): for every branch and ``j = 1..m``,
``-l_j a_j + a_{j-1} + a_{j+1} > 0`` with ``a_0 = a`` and ``a_{m+1} = 0``,
and ``a (k - s) + sum_i a^i_1 > 0``.  ``τ^i_1`` is the curve that meets
``σ∞``, which is why the last inequality uses ``a^i_1``.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import lcm
from typing import List, Optional, Tuple

from gmpy2 import mpq

from .blowup import Bamboo, build_fiber_bamboo, build_model, contract_to_base, reversal_check
from .cfrac import Rational, all_chains, cf_eval, cf_eval_reversed, dual_chain
from .quadform import (elimination_pivots, is_negative_definite, model_cs_check,
                       star_diagonal, star_elimination_order)
from .stargraph import ModuliData, intersection_matrix

__all__ = [
    "ModuliData", "AmpleCertificate", "ModuliReport", "EquivalenceReport",
    "validate_moduli", "cond2_negdef", "cond3_sum", "cond3_sums", "cond4_sum",
    "solve_ample", "search_certificate", "verify_certificate",
    "equivalence_report", "enumerate_moduli", "enumerate_and_crosscheck",
]


@lru_cache(maxsize=None)
def _cf(chain) -> Rational:
    return cf_eval(chain)


@lru_cache(maxsize=None)
def _cf_rev(chain) -> Rational:
    return cf_eval_reversed(chain)


@lru_cache(maxsize=None)
def _dual(chain):
    return dual_chain(chain)


@lru_cache(maxsize=None)
def _suffix_values(chain):
    """``([l_1..l_m], [l_2..l_m], ..., [l_m])``."""
    return tuple(cf_eval(chain[j:]) for j in range(len(chain)))


@dataclass(frozen=True)
class AmpleCertificate:
    a: int
    coeffs: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(tuple(c) for c in self.coeffs))

    def scaled(self, t: int) -> "AmpleCertificate":
        return AmpleCertificate(self.a * t, tuple(tuple(x * t for x in c) for c in self.coeffs))


@dataclass(frozen=True)
class ModuliReport:
    md: ModuliData
    total: Rational
    valid: bool


def validate_moduli(md: ModuliData) -> ModuliReport:
    """Structural checks happen in :class:`ModuliData`; here the sum test."""
    total = sum((1 / _cf(c) for c in md.chains), mpq(0))
    return ModuliReport(md, total, total < md.k)


def cond2_negdef(md: ModuliData) -> bool:
    return is_negative_definite(intersection_matrix(md.star()))


def cond3_sums(md: ModuliData) -> Tuple[Rational, Rational]:
    """``(sum 1/[k_1..k_n], sum 1/[k_n..k_1])`` over all chains."""
    fwd = sum((1 / _cf(c) for c in md.chains), mpq(0))
    rev = sum((1 / _cf_rev(c) for c in md.chains), mpq(0))
    return fwd, rev


def cond3_sum(md: ModuliData) -> bool:
    return cond3_sums(md)[0] < md.k


def cond3_reversed(md: ModuliData) -> bool:
    """The same inequality with every chain read from its outer end."""
    return cond3_sums(md)[1] < md.k


def cond4_total(md: ModuliData) -> Rational:
    return sum((1 / _cf(_dual(c)) for c in md.chains), mpq(0))


def cond4_sum(md: ModuliData) -> bool:
    return cond4_total(md) > md.s - md.k


def verify_certificate(md: ModuliData, cert: AmpleCertificate) -> bool:
    """Check every strict inequality in exact integer arithmetic."""
    duals = [_dual(c) for c in md.chains]
    coeffs = cert.coeffs
    if len(coeffs) != len(duals) or any(
            len(a) != len(l) for a, l in zip(coeffs, duals)):
        raise ValueError("certificate shape does not match the dual chains")
    a = cert.a
    if a < 1 or any(min(c) < 1 for c in coeffs):
        return False
    for l_chain, c in zip(duals, coeffs):
        prev = a
        m = len(c)
        for j in range(m):
            after = c[j + 1] if j + 1 < m else 0
            if prev + after <= l_chain[j] * c[j]:
                return False
            prev = c[j]
    return a * (md.k - md.s) + sum(c[0] for c in coeffs) > 0


def _between(lo: Rational, hi: Optional[Rational]) -> Rational:
    return lo + 1 if hi is None else (lo + hi) / 2


def solve_ample(md: ModuliData) -> Optional[AmpleCertificate]:
    """Build a certificate from continued-fraction bounds, or ``None``.

    Ratios ``x_j = a_{j-1}/a_j`` must satisfy ``x_j > l_j - 1/x_{j+1}`` and
    ``x_m > l_m``; each is picked at the midpoint of its admissible interval
    ``([l_j..l_m], 1/(l_{j-1} - x_{j-1}))`` and the coefficients are scaled to
    integers at the end.
    """
    duals = [_dual(c) for c in md.chains]
    if not duals:
        return AmpleCertificate(1, ())
    bounds = [_suffix_values(l)[0] for l in duals]
    weight = sum((1 / b for b in bounds), mpq(0))
    need = md.s - md.k
    if weight <= need:
        return None
    # shrink every 1/x_1 by the same factor t while keeping sum 1/x_1 > s - k
    t = mpq(1, 2) if need < 0 else _between(need / weight, mpq(1))
    branches = []
    for l_chain, bound in zip(duals, bounds):
        x = bound / t
        cur = 1 / x
        coeffs = [cur]
        for l_prev, lower in zip(l_chain, _suffix_values(l_chain)[1:]):
            gap = l_prev - x
            x = _between(lower, 1 / gap if gap > 0 else None)
            cur = cur / x
            coeffs.append(cur)
        branches.append(coeffs)
    scale = lcm(*(int(c.denominator) for b in branches for c in b))
    cert = AmpleCertificate(scale, tuple(tuple(int(c * scale) for c in b) for b in branches))
    if not verify_certificate(md, cert):
        raise RuntimeError(f"constructed certificate {cert} fails verification")
    return cert


@lru_cache(maxsize=None)
def _branch_table(l_chain: Tuple[int, ...], bound: int):
    """For each ``a`` in ``1..bound``: the best branch coefficients or ``None``.

    "Best" means largest ``a_1``; the branch inequalities are searched
    exhaustively over ``1..bound`` by dynamic programming on consecutive pairs.
    """
    m = len(l_chain)
    rng = range(1, bound + 1)
    # (a_{j-1}, a_j) -> some feasible tail (a_{j+1}, ..., a_m)
    nxt = {}
    for prev in rng:
        for cur in rng:
            if -l_chain[m - 1] * cur + prev > 0:
                nxt[(prev, cur)] = ()
    for j in range(m - 2, -1, -1):
        level = {}
        for prev in rng:
            for cur in rng:
                for after in rng:
                    tail = nxt.get((cur, after))
                    if tail is not None and -l_chain[j] * cur + prev + after > 0:
                        level[(prev, cur)] = (after,) + tail
                        break
        nxt = level
    table = {}
    for a in rng:
        best = None
        for a1 in range(bound, 0, -1):
            tail = nxt.get((a, a1))
            if tail is not None:
                best = (a1,) + tail
                break
        table[a] = best
    return table


def search_certificate(md: ModuliData, bound: int) -> Optional[AmpleCertificate]:
    """Exhaustive search for a certificate with every coefficient ``<= bound``.

    Branches only interact through the ``σ∞`` inequality, which increases with
    each ``a^i_1``, so per ``a`` it is enough to take every branch's largest
    feasible ``a^i_1``.
    """
    if bound < 1:
        raise ValueError("search bound must be >= 1")
    duals = [_dual(c) for c in md.chains]
    tables = [_branch_table(l, bound) for l in duals]
    for a in range(1, bound + 1):
        picks = [t[a] for t in tables]
        if any(p is None for p in picks):
            continue
        if a * (md.k - md.s) + sum(p[0] for p in picks) > 0:
            return AmpleCertificate(a, tuple(picks))
    return None


@dataclass(frozen=True)
class EquivalenceReport:
    md: ModuliData
    cond1_found: bool
    cond2: bool
    cond3: bool
    cond4: bool
    certificate: Optional[AmpleCertificate]
    certificate_source: str  # "construction", "search" or "none"
    center_pivot: Rational
    cond3_total: Rational
    cond3_reversed_total: Rational
    cond4_total: Rational
    search_bound: int

    @property
    def agreement(self) -> bool:
        return self.cond2 == self.cond3 == self.cond4 == self.cond1_found

    @property
    def cond3_reversed(self) -> bool:
        return self.cond3_reversed_total < self.md.k


def equivalence_report(md: ModuliData, search_bound: int = 12) -> EquivalenceReport:
    if search_bound < 1:
        raise ValueError("search bound must be >= 1")
    cert = solve_ample(md)
    source = "construction"
    if cert is None:
        cert = search_certificate(md, search_bound)
        source = "search" if cert is not None else "none"
    fwd, rev = cond3_sums(md)
    c4 = cond4_total(md)
    return EquivalenceReport(
        md=md,
        cond1_found=cert is not None,
        cond2=cond2_negdef(md),
        cond3=fwd < md.k,
        cond4=c4 > md.s - md.k,
        certificate=cert,
        certificate_source=source,
        center_pivot=star_diagonal(md.star()).entries[-1],
        cond3_total=fwd,
        cond3_reversed_total=rev,
        cond4_total=c4,
        search_bound=search_bound,
    )


def enumerate_moduli(k_max: int, s_max: int, n_max: int, w_max: int, genus: int = 0):
    """Every moduli datum inside the bounds, chains as sorted multisets."""
    chains = sorted(all_chains(n_max, w_max))
    for k in range(1, k_max + 1):
        for s in range(0, s_max + 1):
            for combo in combinations_with_replacement(chains, s):
                yield ModuliData(genus, k, combo)


@dataclass
class CrosscheckSummary:
    bounds: dict
    instances: int = 0
    valid: int = 0
    invalid: int = 0
    # failures of checks that must always hold, as (moduli data, check name)
    failures: List[Tuple[ModuliData, str]] = field(default_factory=list)
    # instances where cond3 read with reversed chains disagrees with cond3
    order_mismatches: int = 0
    first_order_mismatch: Optional[ModuliData] = None

    @property
    def disagreements(self) -> int:
        return len(self.failures)

    def merge(self, other: "CrosscheckSummary"):
        self.instances += other.instances
        self.valid += other.valid
        self.invalid += other.invalid
        self.failures.extend(other.failures)
        if self.first_order_mismatch is None:
            self.first_order_mismatch = other.first_order_mismatch
        self.order_mismatches += other.order_mismatches


@lru_cache(maxsize=None)
def _branch_checks(k: int, chain) -> Tuple[str, ...]:
    """Per-(k, chain) checks; names of the ones that fail."""
    bad = []
    if 1 / _cf_rev(chain) + 1 / _cf_rev(_dual(chain)) != 1:
        bad.append("dual identity")
    try:
        bamboo = build_fiber_bamboo(k, chain)
    except RuntimeError:
        return tuple(bad + ["contraction"])
    left = contract_to_base(Bamboo(bamboo.weights), "leftmost")
    right = contract_to_base(Bamboo(bamboo.weights), "rightmost")
    if not (left.success and right.success and left.k == right.k == k):
        bad.append("contraction order")
    if len(left.trace) != len(chain) + len(_dual(chain)) + 1:
        bad.append("trace length")
    if not reversal_check(k, chain):
        bad.append("reversal")
    return tuple(bad)


def crosscheck(md: ModuliData, search_bound: int = 12) -> Tuple[EquivalenceReport, List[str]]:
    """Full report for one datum plus the names of every failed check."""
    rep = equivalence_report(md, search_bound)
    bad = []
    if not rep.agreement:
        bad.append("condition agreement")
    if rep.cond1_found and not verify_certificate(md, rep.certificate):
        bad.append("certificate")
    if validate_moduli(md).valid != rep.cond3:
        bad.append("validity vs cond3")
    star = md.star()
    mat = intersection_matrix(star)
    diag = star_diagonal(star)
    if diag.negative_definite != rep.cond2:
        bad.append("star diagonal verdict")
    pivots = elimination_pivots(mat, star_elimination_order(star))
    if len(pivots) != len(diag) or tuple(pivots) != diag.entries:
        bad.append("star diagonal pivots")
    for chain in md.chains:
        bad.extend(_branch_checks(md.k, chain))
    if not bad:
        model = build_model(md)
        if not model_cs_check(model):
            bad.append("index theorem")
    return rep, bad


def _run_chunk(args) -> CrosscheckSummary:
    items, search_bound, bounds = args
    out = CrosscheckSummary(bounds)
    for md in items:
        rep, bad = crosscheck(md, search_bound)
        out.instances += 1
        if rep.cond3:
            out.valid += 1
        else:
            out.invalid += 1
        out.failures.extend((md, name) for name in bad)
        if rep.cond3_reversed != rep.cond3:
            out.order_mismatches += 1
            if out.first_order_mismatch is None:
                out.first_order_mismatch = md
    return out


def enumerate_and_crosscheck(k_max: int, s_max: int, n_max: int, w_max: int,
                             search_bound: int = 12, workers: int = 1,
                             chunk: int = 4000) -> CrosscheckSummary:
    """Run :func:`crosscheck` on every datum from :func:`enumerate_moduli`.

    With ``workers > 1`` chunks are evaluated in separate processes; the
    aggregate only adds counts so the result does not depend on scheduling.
    """
    for name, v in (("k_max", k_max), ("s_max", s_max), ("n_max", n_max),
                    ("w_max", w_max), ("search_bound", search_bound)):
        if v < 1:
            raise ValueError(f"{name} must be >= 1")
    bounds = dict(k_max=k_max, s_max=s_max, n_max=n_max, w_max=w_max,
                  search_bound=search_bound)
    items = list(enumerate_moduli(k_max, s_max, n_max, w_max))
    chunks = [(items[i:i + chunk], search_bound, bounds)
              for i in range(0, len(items), chunk)]
    total = CrosscheckSummary(bounds)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    else:
        parts = [_run_chunk(c) for c in chunks]
    for part in parts:
        total.merge(part)
    return total
