"""Star-shaped resolution graphs and the double-star linear model.

Vertex ordering is fixed so that every matrix is reproducible:

* star graph: ``s0`` first, then each chain in input order, center-outward;
* model graph, ``full``: ``s0``, then per bamboo the path
  ``c<i>_1 .. c<i>_n, e<i>, t<i>_m .. t<i>_1``, and ``sinf`` last;
* model graph, ``Dinf``: ``sinf`` first, then per bamboo ``t<i>_1 .. t<i>_m``.

Indices ``i`` and ``j`` in vertex ids are 1-based.

The section at infinity gets weight ``k - s``: the first blow-up of every
branch happens on it, so it loses one unit per branch, while the center keeps
its weight ``-k``.  Genus is metadata only and never enters a matrix.
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .cfrac import Chain, as_chain, dual_chain

IntersectionMatrix = List[List[int]]

PARTS = ("D0", "Dinf", "full")


def _chains(chains) -> Tuple[Chain, ...]:
    return tuple(c if _is_chain(c) else as_chain(c) for c in chains)


def _is_chain(c) -> bool:
    return type(c) is tuple and c != () and all(type(w) is int and w >= 2 for w in c)


def _check_genus(genus):
    if isinstance(genus, bool) or not isinstance(genus, int) or genus < 0:
        raise ValueError(f"genus must be an integer >= 0, got {genus!r}")


@dataclass(frozen=True)
class ModuliData:
    """Genus ``g``, Chern class ``-k`` and the chains of a star resolution."""

    genus: int
    k: int
    chains: Tuple[Chain, ...] = ()

    def __post_init__(self):
        _check_genus(self.genus)
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be an integer >= 1, got {self.k!r}")
        object.__setattr__(self, "chains", _chains(self.chains))

    @property
    def s(self) -> int:
        return len(self.chains)

    def star(self) -> "StarGraph":
        return StarGraph(self.genus, -self.k, self.chains)


@dataclass(frozen=True)
class StarGraph:
    genus: int
    center_weight: int
    chains: Tuple[Chain, ...] = ()

    def __post_init__(self):
        _check_genus(self.genus)
        if not isinstance(self.center_weight, int) or self.center_weight > -1:
            raise ValueError(
                f"center weight must be <= -1, got {self.center_weight!r}")
        object.__setattr__(self, "chains", _chains(self.chains))

    @property
    def k(self) -> int:
        return -self.center_weight

    def vertex_labels(self) -> List[str]:
        labels = ["s0"]
        for i, chain in enumerate(self.chains, 1):
            labels.extend(f"c{i}_{j}" for j in range(1, len(chain) + 1))
        return labels


@dataclass(frozen=True)
class FiberBranch:
    """One bamboo of the model: k-chain, the (-1)-curve, then the l-chain.

    ``l_chain`` is stored with ``l_1`` next to the section at infinity.
    """

    k_chain: Chain
    l_chain: Chain
    exceptional_weight: int = -1

    def path_weights(self) -> Tuple[int, ...]:
        """Interior weights from the center outward."""
        return (tuple(-w for w in self.k_chain) + (self.exceptional_weight,)
                + tuple(-w for w in reversed(self.l_chain)))


@dataclass(frozen=True)
class ModelGraph:
    genus: int
    k: int
    branches: Tuple[FiberBranch, ...] = field(default=())

    def __post_init__(self):
        _check_genus(self.genus)
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        object.__setattr__(self, "branches", tuple(
            FiberBranch(as_chain(b.k_chain), as_chain(b.l_chain),
                        b.exceptional_weight)
            for b in self.branches))

    @property
    def s(self) -> int:
        return len(self.branches)

    @property
    def center_0_weight(self) -> int:
        return -self.k

    @property
    def center_inf_weight(self) -> int:
        return self.k - self.s

    def star(self) -> StarGraph:
        return StarGraph(self.genus, -self.k,
                         tuple(b.k_chain for b in self.branches))

    def is_dual(self) -> bool:
        return all(b.l_chain == dual_chain(b.k_chain) and b.exceptional_weight == -1
                   for b in self.branches)

    def vertex_labels(self, part: str = "full") -> List[str]:
        if part == "D0":
            return self.star().vertex_labels()
        if part == "Dinf":
            labels = ["sinf"]
            for i, b in enumerate(self.branches, 1):
                labels.extend(f"t{i}_{j}" for j in range(1, len(b.l_chain) + 1))
            return labels
        if part == "full":
            labels = ["s0"]
            for i, b in enumerate(self.branches, 1):
                labels.extend(f"c{i}_{j}" for j in range(1, len(b.k_chain) + 1))
                labels.append(f"e{i}")
                labels.extend(f"t{i}_{j}" for j in range(len(b.l_chain), 0, -1))
            labels.append("sinf")
            return labels
        raise ValueError(f"unknown part {part!r}; expected one of {PARTS}")

    def weights(self) -> dict:
        w = {"s0": -self.k, "sinf": self.k - self.s}
        for i, b in enumerate(self.branches, 1):
            for j, kj in enumerate(b.k_chain, 1):
                w[f"c{i}_{j}"] = -kj
            w[f"e{i}"] = b.exceptional_weight
            for j, lj in enumerate(b.l_chain, 1):
                w[f"t{i}_{j}"] = -lj
        return w

    def edges(self) -> List[Tuple[str, str]]:
        out = []
        for i, b in enumerate(self.branches, 1):
            path = (["s0"]
                    + [f"c{i}_{j}" for j in range(1, len(b.k_chain) + 1)]
                    + [f"e{i}"]
                    + [f"t{i}_{j}" for j in range(len(b.l_chain), 0, -1)]
                    + ["sinf"])
            out.extend(zip(path, path[1:]))
        return out


def _star_edges(g: StarGraph) -> List[Tuple[str, str]]:
    out = []
    for i, chain in enumerate(g.chains, 1):
        path = ["s0"] + [f"c{i}_{j}" for j in range(1, len(chain) + 1)]
        out.extend(zip(path, path[1:]))
    return out


def _matrix(labels: Sequence[str], weights: dict, edges) -> IntersectionMatrix:
    pos = {v: n for n, v in enumerate(labels)}
    m = [[0] * len(labels) for _ in labels]
    for v, n in pos.items():
        m[n][n] = weights[v]
    for u, v in edges:
        if u in pos and v in pos:
            m[pos[u]][pos[v]] = m[pos[v]][pos[u]] = 1
    return m


def intersection_matrix(g: StarGraph) -> IntersectionMatrix:
    n = 1 + sum(len(c) for c in g.chains)
    m = [[0] * n for _ in range(n)]
    m[0][0] = g.center_weight
    row = 1
    for chain in g.chains:
        prev = 0
        for w in chain:
            m[row][row] = -w
            m[row][prev] = m[prev][row] = 1
            prev = row
            row += 1
    return m


def model_intersection_matrix(m: ModelGraph, part: str = "full") -> IntersectionMatrix:
    """Intersection form of the model restricted to ``D0``, ``Dinf`` or all of it."""
    return _matrix(m.vertex_labels(part), m.weights(), m.edges())


def _dot_node(node_id: str, label: str) -> str:
    return f'  {node_id} [label="{label}"];'


def to_dot(g) -> str:
    """DOT text for a :class:`StarGraph` or :class:`ModelGraph`."""
    lines = ["graph resolution {"]
    if isinstance(g, StarGraph):
        lines.append(_dot_node("s0", f"σ0 [{g.center_weight}, g={g.genus}]"))
        for i, chain in enumerate(g.chains, 1):
            for j, kj in enumerate(chain, 1):
                lines.append(_dot_node(f"c{i}_{j}", f"σ{i}_{j} [{-kj}]"))
        edges = _star_edges(g)
    elif isinstance(g, ModelGraph):
        w = g.weights()
        lines.append(_dot_node("s0", f"σ0 [{-g.k}, g={g.genus}]"))
        for i, b in enumerate(g.branches, 1):
            for j in range(1, len(b.k_chain) + 1):
                lines.append(_dot_node(f"c{i}_{j}", f"σ{i}_{j} [{w[f'c{i}_{j}']}]"))
            lines.append(_dot_node(f"e{i}", f"σ~{i} [{w[f'e{i}']}]"))
            for j in range(len(b.l_chain), 0, -1):
                lines.append(_dot_node(f"t{i}_{j}", f"τ{i}_{j} [{w[f't{i}_{j}']}]"))
        lines.append(_dot_node("sinf", f"σ∞ [{g.center_inf_weight}, g={g.genus}]"))
        edges = g.edges()
    else:
        raise TypeError(f"cannot export {type(g).__name__} to DOT")
    lines.extend(f"  {u} -- {v};" for u, v in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
