import numpy as np
import pytest

from pushsum_rates.graphgen import Graph, is_connected, uniform_transition
from pushsum_rates.rng import make_rng


def random_connected_graph(n, rng, p=0.5):
    """Erdos-Renyi G(n, p), redrawn until connected."""
    while True:
        mask = np.triu(rng.random((n, n)) < p, 1)
        edges = np.argwhere(mask)
        try:
            g = Graph(n, edges)
        except Exception:
            continue
        if is_connected(g):
            return g


def random_uniform_P(n, rng):
    return uniform_transition(random_connected_graph(n, rng)).matrix


def star_graph():
    return Graph(4, np.array([(0, 1), (0, 2), (0, 3)]))


def swap_P():
    return np.array([[0.0, 1.0], [1.0, 0.0]])


def psd(n, rng):
    A = rng.standard_normal((n, n))
    return A @ A.T


def skew(n, rng):
    A = rng.standard_normal((n, n))
    return (A - A.T) / 2


@pytest.fixture
def rng():
    return make_rng(12345, 0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
