"""Negative-definiteness of intersection forms and Camacho-Sad indices.

Two independent definiteness tests live here: symmetric elimination with
exact pivots (:func:`is_negative_definite`) and leading principal minors
computed by fraction-free Bareiss elimination (:func:`leading_minor_oracle`).

Index conventions.  Along a chain ``s1, ..., sn`` hanging off the dicritical
center, ``p_j`` is the point ``s_j & s_{j+1}`` (``p_n`` is the terminal fixed
point on ``s_n``).  The point ``s0 & s1`` is foliation-regular: the center is
transverse to the foliation, so that point has index 0 on ``s1`` and is left
out of the assignment.  At every other point the two indices are reciprocal
(a simple singularity), which is what drives ``index(p_j, s_j) = -[k_j..k_1]``.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from operator import itemgetter
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .cfrac import Rational, as_chain, cf_value


@dataclass(frozen=True)
class DiagonalForm:
    entries: Tuple[Rational, ...]

    @property
    def negative_definite(self) -> bool:
        return all(e < 0 for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _running_values(chain):
    """Yield ``[k_1], [k_2, k_1], ..., [k_n, ..., k_1]``."""
    value = None
    for w in chain:
        value = mpq(w) if value is None else w - 1 / value
        yield value


def chain_diagonal(chain: Sequence[int]) -> DiagonalForm:
    """Pivots ``-k_1, -[k_2, k_1], ..., -[k_n, ..., k_1]`` of a single chain."""
    return DiagonalForm(tuple(-v for v in _running_values(as_chain(chain))))


@lru_cache(maxsize=65536)
def _outer_pivots(chain) -> Tuple[Rational, ...]:
    return tuple(-v for v in _running_values(reversed(chain)))


def star_diagonal(g) -> DiagonalForm:
    """Pivots of a star graph, each chain eliminated from its outer end.

    The last entry is the center pivot ``-k + sum 1/[k_1, ..., k_n]``.
    """
    entries: List[Rational] = []
    center = mpq(g.center_weight)
    for chain in g.chains:
        entries.extend(_outer_pivots(chain))
        center += 1 / cf_value(chain)
    entries.append(center)
    return DiagonalForm(tuple(entries))


def star_elimination_order(g) -> List[int]:
    """Row order (into ``intersection_matrix(g)``) used by :func:`star_diagonal`."""
    order = []
    row = 1
    for chain in g.chains:
        order.extend(range(row + len(chain) - 1, row - 1, -1))
        row += len(chain)
    order.append(0)
    return order


def _check_symmetric(m):
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if [list(r) for r in zip(*m)] != [list(r) for r in m]:
        raise ValueError("matrix is not symmetric")


def _sparse_rows(m):
    return [dict(filter(itemgetter(1), enumerate(row))) for row in m]


def _eliminate(rows, order, stop_nonnegative=False) -> List[Rational]:
    """Symmetric elimination on sparse rows (consumed in place).

    Stops after a zero pivot, or after any pivot ``>= 0`` when
    ``stop_nonnegative`` is set.
    """
    pivots = []
    for p in order:
        row_p = rows[p]
        piv = mpq(row_p.pop(p, 0))
        pivots.append(piv)
        if piv == 0 or (stop_nonnegative and piv > 0):
            break
        rest = list(row_p.items())
        for i, x_ip in rest:
            row_i = rows[i]
            del row_i[p]
            f = x_ip / piv
            for j, x_pj in rest:
                v = row_i.get(j, 0) - f * x_pj
                if v:
                    row_i[j] = v
                else:
                    row_i.pop(j, None)
    return pivots


def elimination_pivots(m, order: Optional[Sequence[int]] = None) -> List[Rational]:
    """Pivots of symmetric Gaussian elimination taken in ``order``.

    Stops early at the first zero pivot (the zero is included), since the
    elimination cannot continue past it.
    """
    _check_symmetric(m)
    n = len(m)
    order = list(range(n) if order is None else order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the rows")
    return _eliminate(_sparse_rows(m), order)


def _reverse_bfs_order(rows) -> List[int]:
    """Breadth-first order from row 0, reversed; on a tree every vertex is
    eliminated while only its parent is left, so nothing fills in."""
    n = len(rows)
    seen = [False] * n
    order = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        for v in queue:
            for u in rows[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        order.extend(queue)
    order.reverse()
    return order


def is_negative_definite(m) -> bool:
    """Exact test: every elimination pivot is strictly negative.

    The pivots of any elimination order are ratios of nested principal
    minors, so the order is free; reversed BFS keeps trees fill-free.
    """
    if not m:
        return True
    _check_symmetric(m)
    rows = _sparse_rows(m)
    pivots = _eliminate(rows, _reverse_bfs_order(rows), stop_nonnegative=True)
    return len(pivots) == len(m) and all(p < 0 for p in pivots)


def _bareiss_det(a: List[List[int]]) -> int:
    a = [list(row) for row in a]
    n = len(a)
    sign = 1
    prev = 1
    for p in range(n - 1):
        if a[p][p] == 0:
            for r in range(p + 1, n):
                if a[r][p] != 0:
                    a[p], a[r] = a[r], a[p]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(p + 1, n):
            for j in range(p + 1, n):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) // prev
        prev = a[p][p]
    return sign * a[n - 1][n - 1]


def leading_minors(m) -> List[int]:
    """Every leading principal minor, each by its own determinant."""
    return [_bareiss_det([row[:j] for row in m[:j]]) for j in range(1, len(m) + 1)]


def leading_minor_oracle(m) -> bool:
    """Negative definite iff ``(-1)^j det(M_j) > 0`` for every leading minor.

    One fraction-free Bareiss pass without row exchanges: after step ``p``
    the diagonal entry ``p`` is ``det(M_{p+1})``.  A zero minor already fails
    the test, so the pass may stop there.
    """
    _check_symmetric(m)
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    prev = 1
    for p in range(n):
        d = a[p][p]
        if d == 0 or (d > 0) == (p % 2 == 0):
            return False
        for i in range(p + 1, n):
            for j in range(p + 1, n):
                a[i][j] = (a[i][j] * d - a[i][p] * a[p][j]) // prev
        prev = d
    return True


# -- Camacho-Sad indices ------------------------------------------------------

@dataclass
class IndexAssignment:
    """Index of each singular point relative to each invariant curve through it.

    ``points`` maps a point name to the curves through it (the second entry is
    ``None`` when the other separatrix is not part of the divisor).
    ``self_intersection`` records the weight each curve must sum to.
    """

    points: Dict[str, Tuple[str, Optional[str]]] = field(default_factory=dict)
    index: Dict[Tuple[str, str], Rational] = field(default_factory=dict)
    self_intersection: Dict[str, int] = field(default_factory=dict)

    def curve_sums(self) -> Dict[str, Rational]:
        sums = {c: mpq(0) for c in self.self_intersection}
        for (_, curve), value in self.index.items():
            sums[curve] = sums.get(curve, mpq(0)) + value
        return sums

    def reciprocity_holds(self) -> bool:
        for name, (u, v) in self.points.items():
            if v is None:
                continue
            if self.index[(name, u)] * self.index[(name, v)] != 1:
                return False
        return True

    def nonzero(self) -> bool:
        return all(v != 0 for v in self.index.values())

    def rows(self):
        """``(point, curve, index)`` triples in insertion order."""
        return [(p, c, v) for (p, c), v in self.index.items()]


def _propagate(a: IndexAssignment, curves, weights, last_partner, prefix):
    """Fill indices along curves leaving a dicritical end.

    ``curves[j]`` has self-intersection ``weights[j]``; point ``j`` joins
    ``curves[j]`` with ``curves[j+1]`` or, for the last one, ``last_partner``.
    """
    for j, (curve, value) in enumerate(zip(curves, _running_values(-w for w in weights))):
        name = f"{prefix}{j + 1}"
        partner = curves[j + 1] if j + 1 < len(curves) else last_partner
        a.points[name] = (curve, partner)
        a.index[(name, curve)] = -value
        if partner is not None:
            a.index[(name, partner)] = 1 / -value


def assign_indices(chain: Sequence[int]) -> IndexAssignment:
    chain = as_chain(chain)
    curves = [f"σ{j}" for j in range(1, len(chain) + 1)]
    a = IndexAssignment(self_intersection={c: -k for c, k in zip(curves, chain)})
    _propagate(a, curves, [-k for k in chain], None, "p")
    return a


def cs_check(chain: Sequence[int], a: IndexAssignment) -> bool:
    """Index theorem on every sphere of the chain: indices sum to ``-k_j``."""
    chain = as_chain(chain)
    sums = {f"σ{j}": mpq(0) for j in range(1, len(chain) + 1)}
    for (_, curve), value in a.index.items():
        if curve in sums:
            sums[curve] += value
    return all(sums[f"σ{j}"] == -k for j, k in enumerate(chain, 1))


def branch_indices(branch, i: int = 1) -> IndexAssignment:
    """Indices along one model bamboo, propagated in from both sections.

    Points ``p<i>_j`` come from the center side (the last one lies on the
    (-1)-curve ``σ~<i>``), points ``q<i>_j`` from the section at infinity.
    """
    k_curves = [f"σ{i}_{j}" for j in range(1, len(branch.k_chain) + 1)]
    l_curves = [f"τ{i}_{j}" for j in range(1, len(branch.l_chain) + 1)]
    middle = f"σ~{i}"
    a = IndexAssignment()
    a.self_intersection.update({c: -w for c, w in zip(k_curves, branch.k_chain)})
    a.self_intersection[middle] = branch.exceptional_weight
    a.self_intersection.update({c: -w for c, w in zip(l_curves, branch.l_chain)})
    _propagate(a, k_curves, [-w for w in branch.k_chain], middle, f"p{i}_")
    _propagate(a, l_curves, [-w for w in branch.l_chain], middle, f"q{i}_")
    return a


def model_indices(m) -> IndexAssignment:
    a = IndexAssignment()
    for i, branch in enumerate(m.branches, 1):
        b = branch_indices(branch, i)
        a.points.update(b.points)
        a.index.update(b.index)
        a.self_intersection.update(b.self_intersection)
    return a


def _cs_ok(a: IndexAssignment) -> bool:
    sums = a.curve_sums()
    return (a.nonzero() and a.reciprocity_holds()
            and all(sums[c] == w for c, w in a.self_intersection.items()))


@lru_cache(maxsize=None)
def branch_cs_check(branch) -> bool:
    return _cs_ok(branch_indices(branch))


def model_cs_check(m) -> bool:
    """Index theorem on every invariant sphere of the model, plus reciprocity.

    On ``σ~`` this is exactly ``1/[k_n..k_1] + 1/[l_m..l_1] == 1``.  Branches
    share no invariant curve, so the check splits per branch.
    """
    return all(branch_cs_check(b) for b in m.branches)
