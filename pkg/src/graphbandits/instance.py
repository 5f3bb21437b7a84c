"""Ground-truth bandit instances and the stochastic observation oracle.

An instance holds the graph, a shared catalog of K context vectors (every
node offers every context as an arm), one hidden coefficient vector per
node, and the noise level.  Rewards and side-observations are Gaussian
around ``context . theta``.

Arm ids are dense: arm (node i, catalog slot k) has id ``i * K + k``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInstanceError
from .graph import Graph, erdos_renyi
from .graph import from_edges as _graph_from_edges

RESAMPLE_CAP = 1000


@dataclass(frozen=True)
class Arm:
    node: int
    context: np.ndarray
    arm_id: int


@dataclass(frozen=True)
class Instance:
    graph: Graph
    contexts: np.ndarray = field(repr=False)  # (K, d)
    thetas: np.ndarray = field(repr=False)    # (N, d)
    noise_sigma: float = 0.1

    def __post_init__(self) -> None:
        contexts = np.array(self.contexts, dtype=float)
        thetas = np.array(self.thetas, dtype=float)
        if contexts.ndim != 2 or contexts.shape[0] < 1 or contexts.shape[1] < 1:
            raise ValueError("contexts must be a nonempty (K, d) matrix")
        if thetas.shape != (self.graph.n_nodes, contexts.shape[1]):
            raise ValueError("thetas must be (n_nodes, d)")
        if not (np.isfinite(contexts).all() and np.isfinite(thetas).all()):
            raise ValueError("contexts and thetas must be finite")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be nonnegative")
        means = thetas @ contexts.T  # (N, K)
        top = means.max(axis=1)
        if contexts.shape[0] > 1 and ((means == top[:, None]).sum(axis=1) > 1).any():
            raise DegenerateInstanceError("some node has a tied optimal arm")
        contexts.setflags(write=False)
        thetas.setflags(write=False)
        object.__setattr__(self, "contexts", contexts)
        object.__setattr__(self, "thetas", thetas)

    @property
    def n_nodes(self) -> int:
        return self.graph.n_nodes

    @property
    def n_contexts(self) -> int:
        return self.contexts.shape[0]

    @property
    def dim(self) -> int:
        return self.contexts.shape[1]

    @property
    def n_arms(self) -> int:
        return self.n_nodes * self.n_contexts

    def arm(self, arm_id: int) -> Arm:
        if not 0 <= arm_id < self.n_arms:
            raise ValueError(f"arm id {arm_id} out of range")
        node, k = divmod(arm_id, self.n_contexts)
        return Arm(node=node, context=self.contexts[k], arm_id=arm_id)

    def arms_at(self, node: int) -> list[Arm]:
        if not 0 <= node < self.n_nodes:
            raise ValueError(f"node {node} out of range")
        base = node * self.n_contexts
        return [Arm(node, self.contexts[k], base + k) for k in range(self.n_contexts)]

    @property
    def arms(self) -> list[Arm]:
        return [a for i in range(self.n_nodes) for a in self.arms_at(i)]

    def mean_matrix(self) -> np.ndarray:
        """(N, K) matrix of expected rewards: entry (i, k) = contexts[k] . thetas[i]."""
        return self.thetas @ self.contexts.T

    def with_graph(self, graph: Graph) -> Instance:
        return Instance(graph, self.contexts, self.thetas, self.noise_sigma)

    def to_json(self) -> str:
        return json.dumps(
            {
                "graph": {"n": self.graph.n_nodes, "edges": [list(e) for e in self.graph.cross_edges]},
                "contexts": self.contexts.tolist(),
                "thetas": self.thetas.tolist(),
                "sigma": self.noise_sigma,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> Instance:
        payload = json.loads(text)
        graph = _graph_from_edges(int(payload["graph"]["n"]), payload["graph"]["edges"])
        return cls(graph, np.array(payload["contexts"]), np.array(payload["thetas"]), float(payload["sigma"]))


@dataclass(frozen=True)
class GapTable:
    """Per-arm suboptimality gaps and their per-node / global extrema.

    ``node_min``/``node_max`` are NaN for nodes with no suboptimal arm
    (single-arm catalogs); the global extrema are NaN when no arm anywhere
    is suboptimal.
    """

    gap: np.ndarray         # (N, K)
    suboptimal: np.ndarray  # (N, K) bool
    node_min: np.ndarray    # (N,)
    node_max: np.ndarray    # (N,)
    min_gap: float
    max_gap: float

    def gap_of(self, arm_id: int) -> float:
        return float(self.gap.ravel()[arm_id])


def gaps(instance: Instance) -> GapTable:
    """Gap of each arm against the best arm of its own node."""
    means = instance.mean_matrix()
    gap = means.max(axis=1, keepdims=True) - means
    sub = gap > 0.0
    n = instance.n_nodes
    node_min = np.full(n, np.nan)
    node_max = np.full(n, np.nan)
    for i in range(n):
        if sub[i].any():
            node_min[i] = gap[i, sub[i]].min()
            node_max[i] = gap[i, sub[i]].max()
    min_gap = float(gap[sub].min()) if sub.any() else float("nan")
    max_gap = float(gap[sub].max()) if sub.any() else float("nan")
    return GapTable(gap, sub, node_min, node_max, min_gap, max_gap)


def mean_reward(instance: Instance, arm: Arm) -> float:
    if not 0 <= arm.node < instance.n_nodes:
        raise ValueError("arm does not belong to this instance")
    return float(np.asarray(arm.context, dtype=float) @ instance.thetas[arm.node])


@dataclass(frozen=True)
class RoundObservations:
    """All observations of one round, as directed (player, observer) pairs.

    Pair (i, j) carries the response of node j to the context played at
    node i.  The pair (i, i) is node i's own reward and is drawn once.
    Pairs are sorted lexicographically, one entry per edge direction.
    """

    players: np.ndarray
    observers: np.ndarray
    values: np.ndarray

    @property
    def rewards(self) -> np.ndarray:
        """Own rewards r_i in node order."""
        own = self.players == self.observers
        order = np.argsort(self.players[own])
        return self.values[own][order]

    def value(self, player: int, observer: int) -> float:
        hit = (self.players == player) & (self.observers == observer)
        if not hit.any():
            raise KeyError(f"no observation for pair ({player}, {observer})")
        return float(self.values[hit][0])

    def __len__(self) -> int:
        return self.values.size


def _played_context_indices(instance: Instance, played) -> np.ndarray:
    """Normalize a node->Arm map (or index array) to (N,) catalog indices."""
    n, k_all = instance.n_nodes, instance.n_contexts
    if isinstance(played, dict):
        if sorted(played) != list(range(n)):
            raise ValueError("play map must contain exactly one arm per node")
        ks = np.empty(n, dtype=int)
        for i in range(n):
            arm = played[i]
            if arm.node != i:
                raise ValueError(f"arm {arm.arm_id} does not belong to node {i}")
            ks[i] = arm.arm_id - i * k_all
        return ks
    ks = np.asarray(played, dtype=int)
    if ks.shape != (n,) or (ks < 0).any() or (ks >= k_all).any():
        raise ValueError("play vector must give one catalog index per node")
    return ks


def observe(instance: Instance, played, rng: np.random.Generator) -> RoundObservations:
    """Draw one round of rewards and side-observations.

    ``played`` is either a dict {node: Arm} or an (N,) array of catalog
    indices.  One Gaussian draw per directed pair; (i, i) is drawn once and
    serves as the reward.
    """
    ks = _played_context_indices(instance, played)
    players, observers = np.nonzero(instance.graph.adjacency)
    u = instance.contexts[ks][players]
    means = np.einsum("ed,ed->e", u, instance.thetas[observers])
    noise = rng.standard_normal(players.size)
    return RoundObservations(players, observers, means + instance.noise_sigma * noise)


def sample_instance(
    d: int,
    n_users: int,
    k_contexts: int,
    edge_prob: float,
    noise_sigma: float,
    rng: np.random.Generator,
) -> Instance:
    """Random instance: uniform [0,1]^d contexts and coefficients, G(n, p) graph.

    Contexts and coefficients are redrawn (up to RESAMPLE_CAP times) until
    every node has a strictly unique optimal arm.
    """
    if d < 1 or n_users < 1 or k_contexts < 1:
        raise ValueError("d, n_users and k_contexts must be >= 1")
    graph = erdos_renyi(n_users, edge_prob, rng)
    for _ in range(RESAMPLE_CAP):
        contexts = rng.random((k_contexts, d))
        thetas = rng.random((n_users, d))
        try:
            return Instance(graph, contexts, thetas, noise_sigma)
        except DegenerateInstanceError:
            continue
    raise DegenerateInstanceError(
        f"no instance with unique optimal arms after {RESAMPLE_CAP} resamples"
    )
