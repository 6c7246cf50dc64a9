import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphspec import graph as gc
from graphspec.errors import OrderTooSmallError
from graphspec.functional import (
    All,
    FamilyPredicate,
    KrFree,
    LinearForm,
    RPartite,
    coefficient_norm,
    evaluate,
    evaluate_spectra,
    evaluation_tol,
    member,
    member_after_flip,
    preset,
)
from graphspec.graph import pair_list
from graphspec.sampling import random_member, rng_for
from graphspec.spectra import eigenvalues

from conftest import graphs


def coeffs(k):
    return st.lists(st.floats(-3, 3, allow_nan=False), min_size=k, max_size=k)


@st.composite
def forms(draw, max_k=3):
    k = draw(st.integers(1, max_k))
    return LinearForm(k, *(draw(coeffs(k)) for _ in range(4)))


def lapack_form(F, G):
    """Evaluate with LAPACK spectra as an independent route."""
    n = G.n
    a = np.linalg.eigvalsh(G.matrix())[::-1]
    c = np.linalg.eigvalsh(gc.complement(G).matrix())[::-1]
    total = 0.0
    for i in range(F.k):
        total += F.alpha[i] * a[i] + F.beta[i] * a[n - 1 - i]
        total += F.gamma[i] * c[i] + F.delta[i] * c[n - 1 - i]
    return total


# --- examples ---------------------------------------------------------------------------

def test_mu1_plus_mun_on_k4():
    assert evaluate(LinearForm(1, [1], [1], [0], [0]), gc.complete(4)) == pytest.approx(2, abs=1e-9)


def test_mu1_plus_mu2_on_star():
    F = LinearForm.make(alpha=[1, 1])
    assert evaluate(F, gc.join(gc.empty(1), gc.empty(2))) == pytest.approx(math.sqrt(2), abs=1e-9)


def test_nosal_objective_on_empty_graph():
    assert evaluate(LinearForm.make(alpha=[1], gamma=[1]), gc.empty(5)) == pytest.approx(4, abs=1e-9)


def test_coefficient_norm_examples():
    assert coefficient_norm(LinearForm.make(alpha=[1, 1])) == 2
    assert coefficient_norm(LinearForm.make(alpha=[1], beta=[-1])) == 2


def test_member_examples(c4):
    assert member(KrFree(3), c4)
    assert member(All(), gc.complete(9))
    assert not member(RPartite(2), gc.complete(3))


def test_order_at_least_k():
    F = LinearForm.make(alpha=[1, 1, 1])
    assert evaluate(F, gc.complete(3)) == pytest.approx(0, abs=1e-9)
    with pytest.raises(OrderTooSmallError):
        evaluate(F, gc.complete(2))


# --- validation and serialization ----------------------------------------------------------

def test_form_validation():
    with pytest.raises(ValueError):
        LinearForm(0, [], [], [], [])
    with pytest.raises(ValueError):
        LinearForm(2, [1], [0, 0], [0, 0], [0, 0])
    with pytest.raises(ValueError):
        LinearForm(1, [float("nan")], [0], [0], [0])


def test_form_json_roundtrip():
    F = LinearForm(2, [1, -0.5], [0, 2], [0.25, 0], [0, 0])
    assert LinearForm.from_json(F.to_json()) == F
    assert LinearForm.from_dict(F.to_dict()) == F


def test_make_zero_fills():
    F = LinearForm.make(alpha=[1, 2], delta=[3, 4])
    assert F.beta == (0.0, 0.0) and F.gamma == (0.0, 0.0)
    assert F.uses_complement
    assert not LinearForm.make(alpha=[1]).uses_complement


def test_form_arithmetic():
    F = LinearForm.make(alpha=[1, 1])
    G = LinearForm.make(beta=[1, 0])
    H = 2 * F + G
    assert H.alpha == (2.0, 2.0) and H.beta == (1.0, 0.0)
    assert (-F).alpha == (-1.0, -1.0)
    with pytest.raises(ValueError):
        F + LinearForm.make(alpha=[1])


def test_presets():
    assert preset("mu1+mu2") == LinearForm.make(alpha=[1, 1])
    assert preset("mu1-mun") == LinearForm.make(alpha=[1], beta=[-1])
    assert preset("mui+cmui", 3).alpha == (0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        preset("mui+cmui")
    with pytest.raises(ValueError):
        preset("nope")


def test_family_parse_and_str():
    for text in ("all", "krfree:3", "rpartite:2", "KrFree:5"):
        P = FamilyPredicate.parse(text)
        assert FamilyPredicate.parse(str(P)) == P
    for bad in ("krfree", "krfree:2", "rpartite:0", "bipartite", "all:3", "krfree:x"):
        with pytest.raises(ValueError):
            FamilyPredicate.parse(bad)


# --- properties ---------------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=10), forms())
def test_matches_lapack_oracle(G, F):
    assert evaluate(F, G) == pytest.approx(lapack_form(F, G), abs=1e-8)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=10), st.integers(1, 3), st.data())
def test_linearity(G, k, data):
    F1 = LinearForm(k, *(data.draw(coeffs(k)) for _ in range(4)))
    F2 = LinearForm(k, *(data.draw(coeffs(k)) for _ in range(4)))
    a, b = data.draw(st.floats(-2, 2)), data.draw(st.floats(-2, 2))
    assert evaluate(a * F1 + b * F2, G) == pytest.approx(a * evaluate(F1, G) + b * evaluate(F2, G), abs=1e-8)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=10), forms())
def test_complement_duality(G, F):
    S, C = eigenvalues(G), eigenvalues(gc.complement(G))
    lhs = evaluate_spectra(F, S, C)
    rhs = evaluate_spectra(F.swap_complement(), C, S)
    assert abs(lhs - rhs) <= evaluation_tol(F, S, C) + 1e-12
    assert evaluate(F.swap_complement(), gc.complement(G)) == pytest.approx(evaluate(F, G), abs=1e-9)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=10), forms())
def test_value_bounded_by_norm_times_order(G, F):
    assert abs(evaluate(F, G)) <= coefficient_norm(F) * G.n + 1e-9


@pytest.mark.parametrize("P", [All(), KrFree(3), KrFree(4), RPartite(2), RPartite(3)], ids=str)
def test_multiplicativity(P):
    rng = rng_for(0, f"mult:{P}")
    for _ in range(100):
        G = random_member(P, int(rng.integers(1, 10)), rng)
        assert member(P, G)
        for t in (2, 3):
            assert member(P, gc.blowup_independent(G, t))
        assert member(P, gc.add_isolated(G, 5))


@pytest.mark.parametrize("P", [All(), KrFree(3), RPartite(2)], ids=str)
def test_member_after_flip_agrees_with_member(P):
    rng = rng_for(1, f"flip:{P}")
    for _ in range(30):
        G = random_member(P, int(rng.integers(2, 9)), rng)
        for u, v in pair_list(G.n):
            assert member_after_flip(P, G, u, v) == member(P, G.flip(u, v))
