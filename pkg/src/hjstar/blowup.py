"""Blow-up / blow-down calculus on bamboos (paths of rational curves).

A bamboo is a weight tuple whose first entry is the center ``σ0`` and whose
last entry is the section at infinity ``σ∞``.  Every fiber bamboo of the
linear model is produced from ``(-k, 0, k)`` by blowing up points that never
lie on ``σ0``; so the center keeps weight ``-k`` and the curve next to it is
always the strict transform of the original fiber.  Contraction therefore
never touches endpoints and never removes the curve adjacent to ``σ0``.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from .cfrac import as_chain, dual_chain
from .stargraph import FiberBranch, ModelGraph, ModuliData

Weights = Tuple[int, ...]


@dataclass(frozen=True)
class Bamboo:
    weights: Weights
    trace: Tuple[Weights, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "trace", tuple(tuple(t) for t in self.trace))
        if len(self.weights) < 2:
            raise ValueError("a bamboo needs both endpoint sections")

    def forward_trace(self) -> Tuple[Weights, ...]:
        """Construction history followed by the current weights."""
        return self.trace + (self.weights,)


@dataclass(frozen=True)
class Contraction:
    success: bool
    k: Optional[int]
    trace: Tuple[Weights, ...]

    @property
    def final(self) -> Weights:
        return self.trace[-1]


def base_bamboo(k: int) -> Bamboo:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return Bamboo((-k, 0, k))


def blow_up_edge(b: Bamboo, i: int) -> Bamboo:
    """Blow up the point joining vertices ``i`` and ``i + 1``."""
    w = b.weights
    if not 0 <= i < len(w) - 1:
        raise IndexError(f"edge {i} does not exist in a bamboo of {len(w)} vertices")
    new = w[:i] + (w[i] - 1, -1, w[i + 1] - 1) + w[i + 2:]
    return Bamboo(new, b.trace + (w,))


def blow_down(b: Bamboo, i: int) -> Bamboo:
    w = b.weights
    if not 0 < i < len(w) - 1 or w[i] != -1:
        raise ValueError("only interior (-1)-curves contract")
    new = w[:i - 1] + (w[i - 1] + 1, w[i + 1] + 1) + w[i + 2:]
    return Bamboo(new, b.trace + (w,))


def _contractible(w: Weights):
    # index 1 is the fiber's strict transform; endpoints are the sections
    return [i for i in range(2, len(w) - 1) if w[i] == -1]


def contract_to_base(b: Bamboo, rule: str = "leftmost") -> Contraction:
    """Blow down (-1)-curves until none is left and compare with ``(-k, 0, k)``.

    ``rule`` picks among several contractible curves: ``"leftmost"`` or
    ``"rightmost"``.  Failure is reported, not raised.
    """
    if rule not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown contraction rule {rule!r}")
    w = b.weights
    trace = [w]
    while True:
        cands = _contractible(w)
        if not cands:
            break
        i = cands[0] if rule == "leftmost" else cands[-1]
        w = w[:i - 1] + (w[i - 1] + 1, w[i + 1] + 1) + w[i + 2:]
        trace.append(w)
    ok = len(w) == 3 and w[0] <= -1 and w[1] == 0 and w[2] == -w[0]
    return Contraction(ok, -w[0] if ok else None, tuple(trace))


def fiber_weights(k: int, k_chain: Sequence[int], l_chain: Sequence[int]) -> Weights:
    return ((-k,) + tuple(-w for w in k_chain) + (-1,)
            + tuple(-w for w in reversed(l_chain)) + (k - 1,))


def build_fiber_bamboo(k: int, k_chain: Sequence[int]) -> Bamboo:
    """The bamboo ``(-k, -k_1..-k_n, -1, -l_m..-l_1, k-1)`` with its blow-up history.

    The history is the contraction trace read backwards, starting at
    ``(-k, 0, k)``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _fiber_bamboo(k, as_chain(k_chain))


@lru_cache(maxsize=4096)
def _fiber_bamboo(k: int, k_chain) -> Bamboo:
    weights = fiber_weights(k, k_chain, dual_chain(k_chain))
    c = contract_to_base(Bamboo(weights))
    if not c.success or c.k != k:
        raise RuntimeError(f"{weights} does not contract to (-{k},0,{k}): stuck at {c.final}")
    history = tuple(reversed(c.trace))
    return Bamboo(weights, history[:-1])


def reversed_fiber_weights(k: int, k_chain: Sequence[int]) -> Weights:
    """``(-k, -k_n..-k_1, -1, -l_1..-l_m, k-1)``: both chains read backwards."""
    k_chain = as_chain(k_chain)
    return fiber_weights(k, tuple(reversed(k_chain)), tuple(reversed(dual_chain(k_chain))))


def reversal_check(k: int, k_chain: Sequence[int]) -> bool:
    return _reversal_check(k, as_chain(k_chain))


@lru_cache(maxsize=4096)
def _reversal_check(k: int, k_chain) -> bool:
    c = contract_to_base(Bamboo(reversed_fiber_weights(k, k_chain)))
    return c.success and c.k == k


def build_model(md: ModuliData) -> ModelGraph:
    """Glue one fiber bamboo per chain onto ``σ0`` and ``σ∞``.

    Each bamboo is checked to contract back to ``(-k, 0, k)``; the first
    blow-up of every branch lowers ``σ∞`` by one, giving weight ``k - s``.
    """
    branches = []
    inf_weight = md.k
    for chain in md.chains:
        bamboo = build_fiber_bamboo(md.k, chain)
        inf_weight -= md.k - bamboo.weights[-1]
        branches.append(FiberBranch(chain, dual_chain(chain)))
    m = ModelGraph(md.genus, md.k, tuple(branches))
    assert m.center_inf_weight == inf_weight
    return m
