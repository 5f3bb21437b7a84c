"""Undirected social graph with mandatory self-loops.

Nodes are integers 0..n_nodes-1.  Every node is adjacent to itself, so a
node's neighborhood always contains the node.  Graphs are immutable after
construction and safe to share across concurrent simulations.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Graph:
    n_nodes: int
    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        adj = np.asarray(self.adjacency, dtype=bool)
        if self.n_nodes < 1:
            raise ValueError("graph needs at least one node")
        if adj.shape != (self.n_nodes, self.n_nodes):
            raise ValueError(f"adjacency must be ({self.n_nodes}, {self.n_nodes})")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj = adj.copy()
        np.fill_diagonal(adj, True)  # self-loops are never configurable
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @property
    def cross_edges(self) -> list[tuple[int, int]]:
        """Sorted (i, j) pairs with i < j, self-loops excluded."""
        ii, jj = np.nonzero(np.triu(self.adjacency, k=1))
        return list(zip(ii.tolist(), jj.tolist()))

    def to_json(self) -> str:
        return json.dumps({"n": self.n_nodes, "edges": [list(e) for e in self.cross_edges]})

    @classmethod
    def from_json(cls, text: str) -> Graph:
        payload = json.loads(text)
        return from_edges(int(payload["n"]), payload["edges"])


def from_edges(n: int, edges) -> Graph:
    """Build a graph from a list of cross edges (self-loops implicit)."""
    adj = np.eye(n, dtype=bool)
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        adj[i, j] = adj[j, i] = True
    return Graph(n, adj)


def complete(n: int) -> Graph:
    return Graph(n, np.ones((n, n), dtype=bool))


def self_loops_only(n: int) -> Graph:
    return Graph(n, np.eye(n, dtype=bool))


def neighbors(graph: Graph, node: int) -> np.ndarray:
    """Sorted neighbor ids of ``node``, always including the node itself."""
    if not 0 <= node < graph.n_nodes:
        raise ValueError(f"node {node} out of range [0, {graph.n_nodes})")
    return np.flatnonzero(graph.adjacency[node])


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p) on the cross pairs; self-loops always present.

    Each unordered pair is included independently with probability ``p``.
    Deterministic for a fixed generator state.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    adj = np.eye(n, dtype=bool)
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < p
    adj[iu[mask], ju[mask]] = True
    adj[ju[mask], iu[mask]] = True
    return Graph(n, adj)


def is_dominating(graph: Graph, candidate) -> bool:
    """True iff every node is in ``candidate`` or adjacent to a member of it."""
    chosen = sorted(set(int(c) for c in candidate))
    if any(not 0 <= c < graph.n_nodes for c in chosen):
        raise ValueError("candidate contains out-of-range node ids")
    if not chosen:
        return False
    return bool(graph.adjacency[chosen].any(axis=0).all())


def _neighborhood_masks(graph: Graph) -> list[int]:
    masks = []
    for i in range(graph.n_nodes):
        m = 0
        for j in np.flatnonzero(graph.adjacency[i]):
            m |= 1 << int(j)
        masks.append(m)
    return masks


def _greedy_dominating(graph: Graph) -> list[int]:
    masks = _neighborhood_masks(graph)
    full = (1 << graph.n_nodes) - 1
    covered = 0
    chosen: list[int] = []
    while covered != full:
        best, best_gain = -1, -1
        for i in range(graph.n_nodes):
            gain = bin(masks[i] & ~covered).count("1")
            if gain > best_gain:
                best, best_gain = i, gain
        chosen.append(best)
        covered |= masks[best]
    return sorted(chosen)


def _exact_dominating(graph: Graph) -> list[int]:
    """Branch-and-bound minimum dominating set; intended for n <= 20."""
    masks = _neighborhood_masks(graph)
    n = graph.n_nodes
    full = (1 << n) - 1
    best = _greedy_dominating(graph)
    max_gain = max(bin(m).count("1") for m in masks)

    def search(covered: int, chosen: list[int]) -> None:
        nonlocal best
        if covered == full:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        uncovered = bin(full & ~covered).count("1")
        if len(chosen) + -(-uncovered // max_gain) >= len(best):
            return
        v = (full & ~covered).bit_length() - 1  # branch on one uncovered node
        candidates = [u for u in range(n) if masks[u] >> v & 1]
        candidates.sort(key=lambda u: -bin(masks[u] & ~covered).count("1"))
        for u in candidates:
            chosen.append(u)
            search(covered | masks[u], chosen)
            chosen.pop()

    search(0, [])
    return best


def dominating_set(graph: Graph) -> list[int]:
    """A dominating set: exact minimum for n <= 20, greedy max-coverage above."""
    if graph.n_nodes <= 20:
        return _exact_dominating(graph)
    return _greedy_dominating(graph)


def brute_force_domination_number(graph: Graph) -> int:
    """Exhaustive minimum by direct subset enumeration (test oracle)."""
    n = graph.n_nodes
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            if is_dominating(graph, combo):
                return k
    raise AssertionError("unreachable: full node set always dominates")
