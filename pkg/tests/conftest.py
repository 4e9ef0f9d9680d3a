import numpy as np
import pytest

from sgwt.graph import build_from_edge_list


def path_graph(n, weight=1.0):
    return build_from_edge_list([(i, i + 1, weight) for i in range(n - 1)], n)


def complete_graph(n):
    return build_from_edge_list([(i, j, 1.0) for i in range(n) for j in range(i + 1, n)], n)


def random_graph(rng, n, p=0.2, connected=True, w_range=(0.1, 2.0)):
    """Erdos-Renyi graph with uniform random weights.

    With ``connected=True`` a random spanning path is added first so the
    graph is always connected.
    """
    edges = {}
    if connected:
        perm = rng.permutation(n)
        for a, b in zip(perm[:-1], perm[1:]):
            edges[(min(a, b), max(a, b))] = rng.uniform(*w_range)
    mask = np.triu(rng.random((n, n)) < p, 1)
    for i, j in zip(*np.nonzero(mask)):
        edges.setdefault((int(i), int(j)), rng.uniform(*w_range))
    return build_from_edge_list([(int(i), int(j), w) for (i, j), w in edges.items()], n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# acceptance criteria append (number, passed, detail) here; printed at the end
ACCEPTANCE_RESULTS = []


def _order(result):
    label = result[0].strip()
    return int(label.rstrip("b")), label


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_RESULTS, key=_order):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
