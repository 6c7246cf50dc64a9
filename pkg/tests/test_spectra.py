import math

import numpy as np
import pytest
from hypothesis import given, settings

from graphspec import graph as gc
from graphspec import spectra
from graphspec.errors import ConvergenceError
from graphspec.graph import Graph
from graphspec.sampling import random_graph, rng_for
from graphspec.spectra import (
    audit_solves,
    batch_eigenvalues,
    eigenvalues,
    labeled_spectra,
    matrix_eigenvalues,
    mu,
    mu_tail,
)

from conftest import graphs


def lapack(G):
    return np.linalg.eigvalsh(G.matrix())[::-1]


def test_triangle():
    S = eigenvalues(gc.complete(3))
    assert np.allclose(S.values, [2, -1, -1], atol=1e-9)
    assert S.to_list() == [2, -1, -1]


def test_star_k12():
    S = eigenvalues(gc.join(gc.empty(1), gc.empty(2)))
    r2 = math.sqrt(2)
    assert np.allclose(S.values, [r2, 0, -r2], atol=1e-9)


def test_c4(c4):
    assert np.allclose(eigenvalues(c4).values, [2, 0, 0, -2], atol=1e-9)
    assert mu_tail(eigenvalues(c4), 1) == pytest.approx(-2, abs=1e-9)


def test_mu_indexing():
    S = eigenvalues(gc.complete(4))
    assert mu(S, 1) == pytest.approx(3)
    assert mu(S, 2) == pytest.approx(-1)
    assert S.mu(4) == mu_tail(S, 1)
    for bad in (0, 5):
        with pytest.raises(IndexError):
            mu(S, bad)
        with pytest.raises(IndexError):
            mu_tail(S, bad)


def test_empty_graph_spectrum_is_undefined():
    with pytest.raises(ValueError):
        eigenvalues(gc.empty(0))


def test_single_vertex():
    S = eigenvalues(gc.empty(1))
    assert S.values.tolist() == [0.0]


def test_values_are_read_only_and_sorted():
    S = eigenvalues(random_graph(30, rng_for(1, "t")))
    assert (np.diff(S.values) <= 0).all()
    with pytest.raises(ValueError):
        S.values[0] = 1.0


@pytest.mark.parametrize("n", [2, 5, 17, 50, 120])
def test_agrees_with_lapack_on_random_graphs(n):
    rng = rng_for(n, "lapack")
    for p in (0.1, 0.5, 0.9):
        G = random_graph(n, rng, p)
        S = eigenvalues(G)
        assert np.max(np.abs(S.values - lapack(G))) <= max(S.tol, 1e-10)


def test_known_closed_form_spectra():
    # cycle C_n: 2 cos(2 pi j / n); complete bipartite K_{a,b}: +-sqrt(ab), zeros
    n = 11
    C = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    expected = np.sort(2 * np.cos(2 * np.pi * np.arange(n) / n))[::-1]
    assert np.allclose(eigenvalues(C).values, expected, atol=1e-10)
    K = gc.join(gc.empty(3), gc.empty(5))
    assert np.allclose(eigenvalues(K).values, [math.sqrt(15)] + [0] * 6 + [-math.sqrt(15)], atol=1e-10)


def test_general_symmetric_matrices():
    rng = np.random.default_rng(3)
    for n in (1, 4, 33):
        a = rng.normal(size=(n, n))
        a = a + a.T
        vals, tols, sweeps = matrix_eigenvalues(a[None])
        assert np.allclose(vals[0], np.linalg.eigvalsh(a)[::-1], atol=1e-10)
        assert sweeps[0] <= spectra.MAX_SWEEPS


def test_matrix_eigenvalues_rejects_bad_shapes():
    with pytest.raises(ValueError):
        matrix_eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        matrix_eigenvalues(np.zeros((1, 0, 0)))


def test_non_convergence_raises(monkeypatch):
    monkeypatch.setattr(spectra, "MAX_SWEEPS", 1)
    G = random_graph(40, rng_for(0, "nc"))
    with pytest.raises(ConvergenceError):
        eigenvalues(G)


def test_batch_matches_single():
    rng = rng_for(2, "batch")
    Gs = [random_graph(9, rng) for _ in range(20)]
    vals, tols = batch_eigenvalues(np.stack([G.matrix() for G in Gs]))
    for G, v in zip(Gs, vals):
        assert np.array_equal(v, eigenvalues(G).values)


def test_labeled_spectra_rows_follow_masks():
    vals, tols = labeled_spectra(4)
    assert vals.shape == (64, 4)
    for mask in (0, 5, 63):
        assert np.allclose(vals[mask], lapack(gc.from_edge_mask(4, mask)), atol=1e-12)


def test_audit_tracks_trace_and_energy():
    with audit_solves() as audit:
        eigenvalues(gc.complete(5))
        batch_eigenvalues(gc.adjacency_batch(4, range(64)))
    assert audit.count == 65
    assert audit.ok
    assert audit.as_dict()["solves"] == 65
    # outside the block nothing is recorded
    eigenvalues(gc.complete(3))
    assert audit.count == 65


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1, max_n=14))
def test_trace_energy_and_determinism(G):
    S = eigenvalues(G)
    n, m = G.n, G.edge_count
    assert abs(S.values.sum()) <= spectra.TRACE_TOL * n
    assert abs((S.values**2).sum() - 2 * m) <= spectra.ENERGY_TOL * n * n
    again = eigenvalues(Graph(G.adj.copy()))
    assert again.values.tobytes() == S.values.tobytes()
    assert again == S


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=2, max_n=14))
def test_complement_coupling(G):
    # Weyl: mu_2(G) + mu_n(complement) <= mu_2(K_n) = -1 whenever n >= 2
    S, C = eigenvalues(G), eigenvalues(gc.complement(G))
    assert S.mu(2) + C.mu(G.n) <= -1 + S.tol + C.tol + 1e-8


def test_complement_coupling_random_large():
    rng = rng_for(0, "coupling")
    for _ in range(40):
        n = int(rng.integers(2, 80))
        G = random_graph(n, rng, float(rng.uniform(0.05, 0.95)))
        S, C = eigenvalues(G), eigenvalues(gc.complement(G))
        assert S.mu(2) + C.mu(n) <= -1 + S.tol + C.tol + 1e-8
