"""
Graph families used in the experiments and the message-probability
matrices derived from them.

All random generators take an integer ``seed`` (or a ready
``numpy.random.Generator``) and are pure functions of their arguments:
identical seeds give identical graphs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from os import PathLike
from typing import Iterable

import numpy as np

from .errors import GenerationFailure, InvalidGraph, InvalidInput, InvalidParameters
from .rng import as_generator

__all__ = [
    "Graph",
    "RowStochastic",
    "gen_barabasi_albert",
    "gen_random_regular",
    "gen_cayley_sym",
    "cayley_graph",
    "gen_complete",
    "gen_cycle",
    "gen_directed_ring",
    "uniform_transition",
    "gamma_diag",
    "is_connected",
    "write_graph",
    "read_graph",
    "format_graph",
    "parse_graph",
]

ROW_SUM_TOL = 1e-12
DEFAULT_MAX_TRIES = 1000


# ---------------------------------------------------------------------------
# Containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """
    Finite graph on vertices ``0..n-1``.

    Attributes
    ----------
    n : int
        Vertex count.
    edges : ndarray of int, shape (E, 2)
        Canonical, lexicographically sorted edge list. Undirected graphs
        store each edge once with ``u <= v``; directed graphs store arcs.
    directed : bool
    """

    n: int
    edges: np.ndarray
    directed: bool = False
    _degrees: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise InvalidGraph(f"vertex count must be positive, got {n}")
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise InvalidGraph("vertex index out of range [0, n)")
        if not self.directed:
            e = np.sort(e, axis=1)
        if len(e):
            e = e[np.lexsort((e[:, 1], e[:, 0]))]
            if np.any(np.all(e[1:] == e[:-1], axis=1)):
                raise InvalidGraph("duplicate edge")
        e.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", e)

        deg = np.bincount(e[:, 0], minlength=n) if len(e) else np.zeros(n, int)
        if not self.directed and len(e):
            off = e[:, 0] != e[:, 1]
            deg = deg + np.bincount(e[off, 1], minlength=n)
        deg.setflags(write=False)
        object.__setattr__(self, "_degrees", deg)
        if np.any(deg < 1):
            bad = int(np.flatnonzero(deg < 1)[0])
            raise InvalidGraph(f"vertex {bad} has no recipient (degree 0)")

    @property
    def degrees(self) -> np.ndarray:
        """Out-degree per vertex (degree, for undirected graphs)."""
        return self._degrees

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def arcs(self) -> np.ndarray:
        """All ordered pairs (i, j) with an arc i -> j."""
        if self.directed:
            return self.edges
        e = self.edges
        rev = e[e[:, 0] != e[:, 1]][:, ::-1]
        return np.concatenate([e, rev])

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        a = self.arcs()
        A[a[:, 0], a[:, 1]] = 1.0
        return A

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.directed == other.directed
            and np.array_equal(self.edges, other.edges)
        )

    def __hash__(self):
        return hash((self.n, self.directed, self.edges.tobytes()))


@dataclass(frozen=True)
class RowStochastic:
    """
    Message-probability matrix: row i is the distribution of the recipient
    chosen by vertex i.

    The lazy form ``(1-q) I + q P`` is available through :meth:`lazy`.
    """

    matrix: np.ndarray
    q: float | None = None

    def __post_init__(self):
        P = np.array(self.matrix, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise InvalidInput(f"expected a square matrix, got shape {P.shape}")
        if not np.all(np.isfinite(P)):
            raise InvalidInput("non-finite transition probability")
        if np.any(P < 0):
            raise InvalidInput("negative transition probability")
        dev = np.abs(P.sum(axis=1) - 1.0).max()
        if dev > ROW_SUM_TOL:
            raise InvalidInput(f"rows must sum to 1 (max deviation {dev:.3e})")
        if self.q is not None and not 0.0 <= self.q <= 1.0:
            raise InvalidParameters(f"q must lie in [0, 1], got {self.q}")
        P.setflags(write=False)
        object.__setattr__(self, "matrix", P)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def lazy(self, q: float | None = None) -> np.ndarray:
        q = self.q if q is None else q
        if q is None:
            raise InvalidParameters("no mixing weight q given")
        return (1.0 - q) * np.eye(self.n) + q * self.matrix

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return bool(np.abs(self.matrix - self.matrix.T).max() <= tol)

    def compatible_with(self, graph: Graph) -> bool:
        """True when every positive entry sits on an arc of ``graph``."""
        if graph.n != self.n:
            return False
        return not np.any((self.matrix > 0) & (graph.adjacency() == 0))


def as_matrix(P) -> np.ndarray:
    """Validated dense matrix from a RowStochastic or anything array-like."""
    if isinstance(P, RowStochastic):
        return P.matrix
    return RowStochastic(P).matrix


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def gen_barabasi_albert(n: int, m: int, seed=None) -> Graph:
    """
    Preferential-attachment graph seeded with a clique on ``m + 1`` vertices.

    Each new vertex attaches ``m`` distinct edges, picking targets with
    probability proportional to current degree.
    """
    if m < 1 or n <= m:
        raise InvalidParameters(f"need n > m >= 1, got n={n}, m={m}")
    rng = as_generator(seed)
    edges = list(itertools.combinations(range(m + 1), 2))
    # every endpoint occurrence once: sampling from it is degree-proportional
    repeated = [v for e in edges for v in e]
    for v in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(repeated[rng.integers(len(repeated))])
        for u in sorted(targets):
            edges.append((u, v))
            repeated.extend((u, v))
    return Graph(n, np.array(edges), directed=False)


def gen_random_regular(n: int, d: int, seed=None, max_tries: int = DEFAULT_MAX_TRIES) -> Graph:
    """
    Uniform-ish simple connected ``d``-regular graph from the pairing model.

    Stubs are paired one at a time; a pairing that would create a loop or a
    repeated edge is rejected and redrawn. A pairing that gets stuck, or a
    disconnected result, restarts from scratch and counts against
    ``max_tries``.
    """
    if n * d % 2:
        raise InvalidParameters(f"n*d must be even, got n={n}, d={d}")
    if not 0 < d < n:
        raise InvalidParameters(f"need 0 < d < n, got n={n}, d={d}")
    rng = as_generator(seed)
    for _ in range(max_tries):
        edges = _pair_stubs(n, d, rng)
        if edges is None:
            continue
        g = Graph(n, np.array(edges), directed=False)
        if is_connected(g):
            return g
    raise GenerationFailure(f"no simple connected {d}-regular graph on {n} vertices in {max_tries} tries")


def _pair_stubs(n, d, rng):
    stubs = np.repeat(np.arange(n), d)
    rng.shuffle(stubs)
    free = list(stubs)
    seen: set[tuple[int, int]] = set()
    edges = []
    while free:
        u = free.pop()
        # a bounded number of redraws keeps stuck configurations from looping
        for _ in range(4 * len(free) + 4):
            k = int(rng.integers(len(free)))
            v = free[k]
            e = (min(u, v), max(u, v))
            if u != v and e not in seen:
                break
        else:
            return None
        free[k] = free[-1]
        free.pop()
        seen.add(e)
        edges.append(e)
    return edges


def cayley_graph(k: int, generators: Iterable[tuple[int, ...]]) -> Graph:
    """
    Cayley graph of the symmetric group on ``k`` letters.

    Vertices are the ``k!`` permutations in lexicographic order; ``pi`` is
    joined to ``s∘pi`` for each ``s`` in the inverse closure of
    ``generators``. The result may be disconnected.
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    gens = _inverse_closure(generators)
    if not gens:
        raise InvalidParameters("need at least one non-identity generator")
    table = np.array(perms)
    edges = set()
    for s in gens:
        s = np.asarray(s)
        images = s[table]  # (s∘pi)(x) = s[pi[x]]
        for i, img in enumerate(images):
            j = index[tuple(img)]
            edges.add((min(i, j), max(i, j)))
    return Graph(len(perms), np.array(sorted(edges)), directed=False)


def _inverse_closure(generators):
    out = set()
    for s in generators:
        s = tuple(int(x) for x in s)
        if s == tuple(range(len(s))):
            continue
        inv = [0] * len(s)
        for i, x in enumerate(s):
            inv[x] = i
        out.add(s)
        out.add(tuple(inv))
    return sorted(out)


def gen_cayley_sym(k: int, g: int, seed=None, max_tries: int = DEFAULT_MAX_TRIES) -> Graph:
    """
    Random connected Cayley graph of S_k.

    Draws ``g`` distinct uniformly random non-identity permutations, closes
    the set under inversion and redraws until the graph is connected. The
    degree equals the size of the inverse-closed generator set.
    """
    if k < 3 or g < 1:
        raise InvalidParameters(f"need k >= 3 and g >= 1, got k={k}, g={g}")
    if g > math.factorial(k) - 1:
        raise InvalidParameters(f"S_{k} has only {math.factorial(k) - 1} non-identity elements")
    rng = as_generator(seed)
    identity = tuple(range(k))
    for _ in range(max_tries):
        gens: list[tuple[int, ...]] = []
        while len(gens) < g:
            s = tuple(int(x) for x in rng.permutation(k))
            if s != identity and s not in gens:
                gens.append(s)
        graph = cayley_graph(k, gens)
        if is_connected(graph):
            return graph
    raise GenerationFailure(f"no connected Cayley graph of S_{k} with {g} generators in {max_tries} tries")


def gen_complete(n: int, include_self_loops: bool = False) -> Graph:
    """Complete graph; with self-loops it is the directed graph of all n^2 ordered pairs."""
    if n < 2:
        raise InvalidParameters(f"need n >= 2, got {n}")
    if include_self_loops:
        pairs = np.array([(i, j) for i in range(n) for j in range(n)])
        return Graph(n, pairs, directed=True)
    return Graph(n, np.array(list(itertools.combinations(range(n), 2))), directed=False)


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameters(f"need n >= 3, got {n}")
    return Graph(n, np.array([(i, (i + 1) % n) for i in range(n)]), directed=False)


def gen_directed_ring(n: int) -> Graph:
    if n < 2:
        raise InvalidParameters(f"need n >= 2, got {n}")
    return Graph(n, np.array([(i, (i + 1) % n) for i in range(n)]), directed=True)


def is_connected(graph: Graph) -> bool:
    """Weak connectivity (arc directions ignored)."""
    n = graph.n
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in graph.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = np.zeros(n, bool)
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for v in nbrs[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return bool(seen.all())


# ---------------------------------------------------------------------------
# Transition matrices
# ---------------------------------------------------------------------------


def uniform_transition(graph: Graph) -> RowStochastic:
    """P = D^{-1} A: each vertex picks a recipient uniformly among its out-neighbours."""
    A = graph.adjacency()
    deg = A.sum(axis=1)
    if np.any(deg == 0):
        raise InvalidGraph("isolated vertex")
    return RowStochastic(A / deg[:, None])


def gamma_diag(P) -> np.ndarray:
    """Column sums of P, i.e. the expected number of messages each vertex receives."""
    return as_matrix(P).sum(axis=0)


# ---------------------------------------------------------------------------
# Edge-list file format
# ---------------------------------------------------------------------------


def format_graph(graph: Graph) -> str:
    lines = [f"n {graph.n} directed {int(graph.directed)}"]
    lines += [f"{u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise InvalidInput("empty graph file")
    head = rows[0]
    if len(head) != 4 or head[0] != "n" or head[2] != "directed" or head[3] not in ("0", "1"):
        raise InvalidInput(f"bad header line: {' '.join(head)!r}")
    try:
        n = int(head[1])
        edges = np.array([(int(u), int(v)) for u, v in rows[1:]], dtype=np.int64).reshape(-1, 2)
    except ValueError as exc:
        raise InvalidInput(f"malformed edge line: {exc}") from exc
    return Graph(n, edges, directed=head[3] == "1")


def write_graph(graph: Graph, path: str | PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_graph(graph))


def read_graph(path: str | PathLike) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_graph(fh.read())
