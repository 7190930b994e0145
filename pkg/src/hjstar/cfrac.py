"""Hirzebruch-Jung continued fractions over exact rationals.

A chain is stored as a tuple of integers ``(k_1, ..., k_n)`` with every entry
``>= 2``; ``k_1`` is the curve adjacent to the center of the star.  The value

    [k_1, ..., k_n] = k_1 - 1/(k_2 - 1/(... - 1/k_n))

is always a rational number ``> 1``, and chains are in bijection with such
rationals.  Reversal is never implicit: use :func:`cf_eval_reversed` when the
outer end of the chain should be read first.
"""

from functools import lru_cache
from itertools import product
from typing import Sequence, Tuple

from gmpy2 import mpq

# exact, always reduced, positive denominator; compares equal to Fraction
Rational = mpq
Chain = Tuple[int, ...]


def as_chain(weights: Sequence[int]) -> Chain:
    """Validate ``weights`` and return them as a chain tuple."""
    chain = tuple(weights)
    if not chain:
        raise ValueError("empty chain has no continued-fraction value")
    for w in chain:
        if isinstance(w, bool) or not isinstance(w, int):
            raise TypeError(f"chain entries must be integers, got {w!r}")
        if w < 2:
            raise ValueError(f"chain entry must be >= 2, got {w}")
    return chain


def cf_eval(chain: Sequence[int]) -> Rational:
    """Exact value of ``[k_1, ..., k_n]``.

    >>> cf_eval((2, 3))
    mpq(5,3)
    """
    return cf_value(as_chain(chain))


@lru_cache(maxsize=65536)
def cf_value(chain: Chain) -> Rational:
    """:func:`cf_eval` without validation, for chains already checked."""
    value = mpq(chain[-1])
    for w in reversed(chain[:-1]):
        value = w - 1 / value
    return value


def cf_eval_reversed(chain: Sequence[int]) -> Rational:
    """Exact value of ``[k_n, ..., k_1]``, the chain read from its outer end."""
    return cf_eval(tuple(reversed(as_chain(chain))))


def hj_expand(r) -> Chain:
    """Inverse of :func:`cf_eval`: the unique chain whose value is ``r``.

    Uses ceiling steps ``r = c - 1/r'``; numerators strictly decrease so the
    loop terminates.
    """
    r = mpq(r)
    if r <= 1:
        raise ValueError("expansion requires value > 1")
    out = []
    while True:
        c = int(-((-r.numerator) // r.denominator))  # ceil
        out.append(c)
        if c == r:
            return tuple(out)
        r = 1 / (c - r)


def dual_chain(k_chain: Sequence[int]) -> Chain:
    """The chain ``(l_1, ..., l_m)`` on the far side of the (-1)-curve.

    ``l_1`` sits next to the section at infinity.  The pair satisfies
    ``1/[k_n, ..., k_1] + 1/[l_m, ..., l_1] == 1`` exactly.
    """
    return _dual(as_chain(k_chain))


@lru_cache(maxsize=4096)
def _dual(k_chain: Chain) -> Chain:
    r = cf_eval_reversed(k_chain)
    return tuple(reversed(hj_expand(r / (r - 1))))


def all_chains(max_len: int, max_weight: int):
    """Every chain of length ``1..max_len`` with entries in ``2..max_weight``.

    Ordered by length, then lexicographically.
    """
    for n in range(1, max_len + 1):
        yield from product(range(2, max_weight + 1), repeat=n)
