import itertools

import numpy as np
import pytest

from pushsum_rates.errors import GenerationFailure, InvalidGraph, InvalidInput, InvalidParameters
from pushsum_rates.graphgen import (
    Graph,
    RowStochastic,
    cayley_graph,
    format_graph,
    gamma_diag,
    gen_barabasi_albert,
    gen_cayley_sym,
    gen_complete,
    gen_cycle,
    gen_directed_ring,
    gen_random_regular,
    is_connected,
    parse_graph,
    read_graph,
    uniform_transition,
    write_graph,
)
from pushsum_rates.rng import make_rng

from conftest import star_graph


def test_graph_rejects_duplicates_and_isolated_vertices():
    with pytest.raises(InvalidGraph):
        Graph(3, np.array([(0, 1), (1, 0), (1, 2)]))
    with pytest.raises(InvalidGraph):
        Graph(3, np.array([(0, 1)]))
    with pytest.raises(InvalidGraph):
        Graph(2, np.array([(0, 2)]))


def test_undirected_arcs_are_symmetric():
    g = gen_barabasi_albert(30, 2, seed=3)
    A = g.adjacency()
    np.testing.assert_array_equal(A, A.T)
    np.testing.assert_array_equal(A.sum(axis=1), g.degrees)


# -- Barabasi-Albert --------------------------------------------------------


def test_ba_degenerate_is_complete():
    g = gen_barabasi_albert(4, 3, seed=11)
    assert g == gen_complete(4)


def test_ba_edge_count():
    # clique on m+1 vertices plus m edges for each later vertex
    n, m = 24, 2
    g = gen_barabasi_albert(n, m, seed=7)
    assert g.num_edges == (m + 1) * m // 2 + m * (n - m - 1) == 45


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_ba_paper_size(seed):
    g = gen_barabasi_albert(100, 2, seed=seed)
    assert g.degrees.min() == 2
    assert is_connected(g)


def test_ba_invalid():
    with pytest.raises(InvalidParameters):
        gen_barabasi_albert(2, 2)
    with pytest.raises(InvalidParameters):
        gen_barabasi_albert(5, 0)


# -- random regular ---------------------------------------------------------


def test_regular_k4_unique():
    assert gen_random_regular(4, 3, seed=5) == gen_complete(4)


@pytest.mark.parametrize("seed", range(5))
def test_regular_degrees(seed):
    g = gen_random_regular(24, 4, seed=seed)
    assert np.all(g.degrees == 4)
    assert is_connected(g)


def _two_regular_graphs_on_6():
    # brute force: every simple 2-regular graph on 6 labelled vertices
    pairs = list(itertools.combinations(range(6), 2))
    out = []
    for es in itertools.combinations(pairs, 6):
        deg = np.bincount(np.array(es).ravel(), minlength=6)
        if np.all(deg == 2):
            out.append(Graph(6, np.array(es)))
    return out


def test_regular_6_2_is_hexagon():
    all_graphs = _two_regular_graphs_on_6()
    connected = [g for g in all_graphs if is_connected(g)]
    # 6-cycles: 5!/2 = 60; two triangles: C(6,3)/2 = 10
    assert len(all_graphs) == 70 and len(connected) == 60
    for seed in range(10):
        g = gen_random_regular(6, 2, seed=seed)
        assert g in connected


def test_regular_invalid():
    with pytest.raises(InvalidParameters):
        gen_random_regular(5, 3)
    with pytest.raises(InvalidParameters):
        gen_random_regular(4, 4)


def test_regular_retry_cap():
    with pytest.raises(GenerationFailure):
        gen_random_regular(6, 2, seed=0, max_tries=0)


# -- Cayley graphs ----------------------------------------------------------


def test_cayley_single_transposition_disconnected():
    g = cayley_graph(3, [(1, 0, 2)])
    assert g.n == 6
    assert not is_connected(g)
    # the orbit of each vertex under <(0 1)> has size 2: three components of one edge
    assert g.num_edges == 3


def test_cayley_s3_generated_by_transposition_and_cycle():
    g = cayley_graph(3, [(1, 0, 2), (1, 2, 0)])
    assert is_connected(g)
    # inverse-closed set {(0 1), c, c^-1} -> degree 3
    assert np.all(g.degrees == 3)


@pytest.mark.parametrize("k,gens,n", [(4, 2, 24), (5, 3, 120)])
def test_cayley_sizes(k, gens, n):
    g = gen_cayley_sym(k, gens, seed=3)
    assert g.n == n
    assert is_connected(g)
    assert len(set(g.degrees.tolist())) == 1
    assert g.degrees[0] <= 2 * gens


def _compose(a, b):
    return tuple(a[x] for x in b)


@pytest.mark.parametrize("seed", [0, 1])
def test_cayley_vertex_transitive(seed):
    k = 4
    g = gen_cayley_sym(k, 2, seed=seed)
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    edges = {tuple(e) for e in g.edges.tolist()}
    rng = make_rng(seed, 9)
    for _ in range(10):
        tau = perms[rng.integers(len(perms))]
        # right multiplication pi -> pi o tau commutes with s o pi
        mapped = set()
        for u, v in edges:
            a = index[_compose(perms[u], tau)]
            b = index[_compose(perms[v], tau)]
            mapped.add((min(a, b), max(a, b)))
        assert mapped == edges


def test_cayley_invalid():
    with pytest.raises(InvalidParameters):
        gen_cayley_sym(2, 1)
    with pytest.raises(InvalidParameters):
        gen_cayley_sym(3, 0)


# -- complete, cycle --------------------------------------------------------


def test_complete_variants():
    tri = gen_complete(3)
    assert tri.degrees.tolist() == [2, 2, 2]
    assert gen_complete(2).num_edges == 1
    loops = gen_complete(5, include_self_loops=True)
    assert loops.directed and np.all(loops.degrees == 5) and loops.num_edges == 25


def test_cycle_and_ring():
    assert np.all(gen_cycle(8).degrees == 2)
    ring = gen_directed_ring(4)
    P = uniform_transition(ring).matrix
    np.testing.assert_array_equal(P, np.roll(np.eye(4), 1, axis=1))


# -- transition matrices ----------------------------------------------------


def test_uniform_transition_triangle():
    P = uniform_transition(gen_complete(3)).matrix
    np.testing.assert_allclose(P, (np.ones((3, 3)) - np.eye(3)) / 2)


def test_uniform_transition_self_loops_is_J():
    P = uniform_transition(gen_complete(6, include_self_loops=True)).matrix
    np.testing.assert_allclose(P, np.full((6, 6), 1 / 6))


def test_uniform_transition_star():
    P = uniform_transition(star_graph()).matrix
    expected = np.zeros((4, 4))
    expected[0, 1:] = 1 / 3
    expected[1:, 0] = 1.0
    np.testing.assert_allclose(P, expected)
    assert RowStochastic(P).compatible_with(star_graph())


def test_gamma_star_matches_degree_formula():
    g = star_graph()
    deg = g.degrees
    # Gamma_ii = sum over in-neighbours j of 1/d_j
    expected = np.array([sum(1 / deg[j] for j in range(4) if g.adjacency()[j, i]) for i in range(4)])
    got = gamma_diag(uniform_transition(g))
    np.testing.assert_allclose(got, expected)
    np.testing.assert_allclose(got, [3, 1 / 3, 1 / 3, 1 / 3])


@pytest.mark.parametrize(
    "graph",
    [gen_cycle(7), gen_complete(5), gen_random_regular(12, 3, seed=1), gen_cayley_sym(4, 2, seed=2)],
    ids=["cycle", "complete", "regular", "cayley"],
)
def test_gamma_symmetric_is_ones(graph):
    np.testing.assert_allclose(gamma_diag(uniform_transition(graph)), 1.0, atol=1e-12)


@pytest.mark.parametrize(
    "graph",
    [
        gen_barabasi_albert(40, 2, seed=4),
        gen_random_regular(24, 4, seed=4),
        gen_cayley_sym(4, 2, seed=4),
        gen_complete(6, include_self_loops=True),
        star_graph(),
    ],
)
def test_row_and_column_mass(graph):
    P = uniform_transition(graph)
    np.testing.assert_allclose(P.matrix.sum(axis=1), 1.0, atol=1e-12)
    assert abs(gamma_diag(P).sum() - graph.n) <= 1e-12 * graph.n


def test_uniform_transition_uniform_on_neighbours():
    g = gen_barabasi_albert(30, 2, seed=9)
    P = uniform_transition(g).matrix
    A = g.adjacency()
    np.testing.assert_allclose(P[A > 0], np.repeat(1 / g.degrees, g.degrees))


def test_row_stochastic_validation():
    with pytest.raises(InvalidInput):
        RowStochastic([[0.5, 0.4], [0.5, 0.5]])
    with pytest.raises(InvalidInput):
        RowStochastic([[1.5, -0.5], [0.5, 0.5]])
    R = RowStochastic([[0.0, 1.0], [1.0, 0.0]], q=0.5)
    np.testing.assert_allclose(R.lazy(), np.full((2, 2), 0.5))


# -- determinism and file format --------------------------------------------


@pytest.mark.parametrize(
    "make",
    [
        lambda s: gen_barabasi_albert(50, 2, seed=s),
        lambda s: gen_random_regular(30, 4, seed=s),
        lambda s: gen_cayley_sym(4, 2, seed=s),
    ],
)
def test_same_seed_same_graph(make):
    assert make(17) == make(17)
    assert format_graph(make(17)) == format_graph(make(17))


def test_file_roundtrip(tmp_path):
    for g in [gen_barabasi_albert(24, 2, seed=7), gen_complete(5, include_self_loops=True), gen_directed_ring(5)]:
        path = tmp_path / "g.txt"
        write_graph(g, path)
        assert read_graph(path) == g
        lines = path.read_text().splitlines()
        assert lines[0] == f"n {g.n} directed {int(g.directed)}"
        pairs = [tuple(map(int, ln.split())) for ln in lines[1:]]
        assert pairs == sorted(pairs)


def test_parse_errors():
    with pytest.raises(InvalidInput):
        parse_graph("")
    with pytest.raises(InvalidInput):
        parse_graph("n 3 undirected 0\n0 1\n")
    with pytest.raises(InvalidInput):
        parse_graph("n 3 directed 0\n0 1 2\n")
