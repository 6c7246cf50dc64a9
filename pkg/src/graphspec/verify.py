"""Numerical certificates for the blow-up, deletion and amplification inequalities.

Each check returns a :class:`CheckReport` listing every sub-inequality as
``lhs <= rhs`` together with its slack ``rhs - lhs``. A report passes when the
smallest slack (its *margin*) is at least ``-numerical_slack``, where the
numerical slack is the combined solver tolerance of the spectra involved,
floored at ``1e-8``. Strict inequalities are checked in their non-strict form;
a strict one whose slack lies within ``+-numerical_slack`` sets ``warning``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import graph as gc
from .functional import (
    FamilyPredicate,
    KrFree,
    LinearForm,
    RPartite,
    All,
    coefficient_norm,
    evaluate_spectra,
    evaluation_tol,
    member,
)
from .graph import Graph, VertexSet
from .sampling import random_graph, random_member, rng_for
from .spectra import eigenvalues, labeled_spectra

SLACK_FLOOR = 1e-8
BLOWUP_TOL = 1e-7  # multiset equality, scaled by t * n


@dataclass(frozen=True)
class Inequality:
    """One sub-inequality ``lhs <= rhs`` (``lhs < rhs`` when ``strict``)."""

    label: str
    index: int | None
    lhs: float
    rhs: float
    strict: bool = False

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "index": self.index,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "strict": self.strict,
        }


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    margin: float
    numerical_slack: float
    warning: bool
    details: tuple[Inequality, ...]
    info: dict = field(default_factory=dict)

    def to_dict(self, details: bool = True) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "warning": self.warning,
            "margin": self.margin,
            "numerical_slack": self.numerical_slack,
            "info": self.info,
        }
        if details:
            out["details"] = [d.to_dict() for d in self.details]
        return out


def make_report(name: str, details: Iterable[Inequality], numerical_slack: float, info=None) -> CheckReport:
    details = tuple(details)
    if not details:
        raise ValueError(f"{name}: no inequalities to check")
    slack = max(float(numerical_slack), SLACK_FLOOR)
    margin = min(d.slack for d in details)
    warning = any(d.strict and abs(d.slack) <= slack for d in details)
    return CheckReport(name, margin >= -slack, margin, slack, warning, details, dict(info or {}))


def _f(x) -> float:
    return float(x)


# --- blow-up spectra ------------------------------------------------------------

def _multiset_report(name, measured: np.ndarray, predicted: np.ndarray, tol: float, info) -> CheckReport:
    predicted = np.sort(predicted)[::-1]
    details = [
        Inequality("|measured - predicted|", i + 1, _f(abs(a - b)), 0.0)
        for i, (a, b) in enumerate(zip(measured, predicted))
    ]
    return make_report(name, details, tol, info)


def check_blowup_spectrum_independent(G: Graph, t: int) -> CheckReport:
    """Spectrum of the independent blow-up is ``t * spec(G)`` plus ``n(t-1)`` zeros."""
    if t < 1 or G.n < 1:
        raise ValueError("need t >= 1 and a non-empty graph")
    base = eigenvalues(G).values
    measured = eigenvalues(gc.blowup_independent(G, t)).values
    predicted = np.concatenate([t * base, np.zeros(G.n * (t - 1))])
    return _multiset_report(
        "blowup_spectrum_independent", measured, predicted, BLOWUP_TOL * t * G.n, {"n": G.n, "t": t}
    )


def check_blowup_spectrum_clique(G: Graph, t: int) -> CheckReport:
    """Spectrum of the clique blow-up is ``t * spec(G) + t - 1`` plus ``n(t-1)`` copies of -1."""
    if t < 1 or G.n < 1:
        raise ValueError("need t >= 1 and a non-empty graph")
    base = eigenvalues(G).values
    measured = eigenvalues(gc.blowup_clique(G, t)).values
    predicted = np.concatenate([t * base + (t - 1), -np.ones(G.n * (t - 1))])
    return _multiset_report(
        "blowup_spectrum_clique", measured, predicted, BLOWUP_TOL * t * G.n, {"n": G.n, "t": t}
    )


# --- extremal eigenvalues of blow-ups ---------------------------------------------

def check_lemma_blowup_bounds(G: Graph, t: int, k: int) -> CheckReport:
    """Sandwich bounds on the top and bottom ``k`` eigenvalues of both blow-ups.

    With ``B = t n / sqrt(n - k)`` and ``s = 1..k``:

    * ``0 <= mu_s(G^(t)) - t mu_s(G) < B``
    * ``-B < mu^s(G^(t)) - t mu^s(G) <= 0``
    * ``0 <= mu_s(G^[t]) - (t mu_s(G) + t - 1) < t + B``
    * ``-t - B < mu^s(G^[t]) - (t mu^s(G) + t - 1) <= 0``

    where ``mu^s`` is the s-th smallest eigenvalue of the graph it is applied
    to (position ``t n - s + 1`` in a blow-up).
    """
    n = G.n
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    sg = eigenvalues(G)
    si = eigenvalues(gc.blowup_independent(G, t))
    sc = eigenvalues(gc.blowup_clique(G, t))
    B = t * n / math.sqrt(n - k)
    details = []
    for s in range(1, k + 1):
        top, bot = sg.mu(s), sg.mu_tail(s)
        d1 = si.mu(s) - t * top
        d2 = si.mu_tail(s) - t * bot
        d3 = sc.mu(s) - (t * top + t - 1)
        d4 = sc.mu_tail(s) - (t * bot + t - 1)
        details += [
            Inequality("i1.lower", s, 0.0, d1),
            Inequality("i1.upper", s, d1, B, strict=True),
            Inequality("i2.upper", s, d2, 0.0),
            Inequality("i2.lower", s, -B, d2, strict=True),
            Inequality("i3.lower", s, 0.0, d3),
            Inequality("i3.upper", s, d3, t + B, strict=True),
            Inequality("i4.upper", s, d4, 0.0),
            Inequality("i4.lower", s, -t - B, d4, strict=True),
        ]
    slack = t * sg.tol + si.tol + sc.tol
    return make_report("blowup_extremal_bounds", details, slack, {"n": n, "t": t, "k": k})


# --- vertex and subset deletion -------------------------------------------------

def admissible_s(order: int) -> range:
    """``s`` values allowed by the deletion bounds: ``1 <= s <= floor(3 order / 4)``."""
    return range(1, (3 * order) // 4 + 1)


def _check_s_values(s_values, order: int, what: str) -> list[int]:
    allowed = admissible_s(order)
    s_values = list(allowed) if s_values is None else [int(s) for s in s_values]
    if not s_values:
        raise ValueError(f"no admissible s for {what} (order {order})")
    for s in s_values:
        if s not in allowed:
            raise ValueError(f"s={s} outside 1..{allowed.stop - 1} for {what}")
    return s_values


def check_vertex_deletion_bounds(G: Graph, v: int, s_values=None) -> CheckReport:
    """Eigenvalue shifts from deleting vertex ``v``; ``s_values`` defaults to all admissible.

    ``0 <= mu_s(G) - mu_s(H) < 3 sqrt(n)`` and
    ``-3 sqrt(n) < mu_{n-s+1}(G) - mu_{n-s}(H) <= 0``.
    """
    n = G.n
    if n < 2:
        raise ValueError("vertex deletion needs n >= 2")
    if not 0 <= v < n:
        raise IndexError(f"vertex {v} out of range for order {n}")
    s_values = _check_s_values(s_values, n, "vertex deletion")
    sg = eigenvalues(G)
    sh = eigenvalues(gc.delete_vertices(G, [v]))
    B = 3 * math.sqrt(n)
    details = []
    for s in s_values:
        w1 = sg.mu(s) - sh.mu(s)
        w2 = sg.mu_tail(s) - sh.mu_tail(s)
        details += [
            Inequality("win1.lower", s, 0.0, w1),
            Inequality("win1.upper", s, w1, B, strict=True),
            Inequality("win2.upper", s, w2, 0.0),
            Inequality("win2.lower", s, -B, w2, strict=True),
        ]
    return make_report("vertex_deletion_bounds", details, sg.tol + sh.tol, {"n": n, "v": v})


def check_subset_deletion_bounds(G: Graph, S, s_values=None) -> CheckReport:
    """Eigenvalue shifts from deleting the ``l`` vertices of ``S``.

    ``|mu_s(G) - mu_s(G - S)| < 3 l sqrt(n)`` and the same for the s-th
    smallest eigenvalues, for ``1 <= s <= floor(3 (n - l) / 4)``.
    """
    S = S if isinstance(S, VertexSet) else VertexSet.of(S)
    n, l = G.n, len(S)
    if l < 1:
        raise ValueError("subset deletion needs at least one vertex")
    s_values = _check_s_values(s_values, n - l, "subset deletion")
    s1 = eigenvalues(G)
    s2 = eigenvalues(gc.delete_vertices(G, S))
    B = 3 * l * math.sqrt(n)
    details = []
    for s in s_values:
        details += [
            Inequality("top", s, abs(s1.mu(s) - s2.mu(s)), B, strict=True),
            Inequality("bottom", s, abs(s1.mu_tail(s) - s2.mu_tail(s)), B, strict=True),
        ]
    info = {"n": n, "l": l, "deleted": list(S.members)}
    return make_report("subset_deletion_bounds", details, s1.tol + s2.tol, info)


def check_interlacing(G: Graph, v: int) -> CheckReport:
    """Cauchy interlacing for ``H = G - v``: ``mu_{s+1}(G) <= mu_s(H) <= mu_s(G)``."""
    n = G.n
    if n < 2:
        raise ValueError("interlacing needs n >= 2")
    if not 0 <= v < n:
        raise IndexError(f"vertex {v} out of range for order {n}")
    sg = eigenvalues(G)
    sh = eigenvalues(gc.delete_vertices(G, [v]))
    details = []
    for s in range(1, n):
        details += [
            Inequality("lower", s, sg.mu(s + 1), sh.mu(s)),
            Inequality("upper", s, sh.mu(s), sg.mu(s)),
        ]
    return make_report("interlacing", details, sg.tol + sh.tol, {"n": n, "v": v})


# --- mu_1 + mu_2 upper bound ---------------------------------------------------------

CHAIN_LABELS = ("energy", "complement_coupling", "squared_coupling", "headline")


def upper_bound_chain_sides(mu1, mu2, co_mun, m, n):
    """``(lhs, rhs)`` pairs of the four inequalities behind ``mu1 + mu2 <= 2n/sqrt(3)``.

    Works elementwise on arrays. In order: ``mu1^2 + mu2^2 <= 2m``;
    ``mu2(G) + mu_n(co-G) <= -1``; ``mu2^2 <= mu_n(co-G)^2 + 1``;
    ``mu1 + mu2 <= 2n / sqrt(3)``.
    """
    return (
        (mu1 * mu1 + mu2 * mu2, 2.0 * m),
        (mu2 + co_mun, -1.0 + 0.0 * mu2),
        (mu2 * mu2, co_mun * co_mun + 1.0),
        (mu1 + mu2, 2.0 * n / math.sqrt(3.0) + 0.0 * mu1),
    )


def chain_slack(n: int, tol) -> float:
    # squared terms amplify eigenvalue errors by up to 2n
    return np.maximum(SLACK_FLOOR, (2 * n + 1) * tol)


def check_prop1_chain(G: Graph) -> CheckReport:
    n = G.n
    if n < 2:
        raise ValueError("needs n >= 2")
    sg = eigenvalues(G)
    sc = eigenvalues(gc.complement(G))
    mu1, mu2, co_mun = sg.mu(1), sg.mu(2), sc.mu(n)
    m = G.edge_count
    details = [
        Inequality(label, None, _f(lhs), _f(rhs))
        for label, (lhs, rhs) in zip(CHAIN_LABELS, upper_bound_chain_sides(mu1, mu2, co_mun, m, n))
    ]
    info = {"n": n, "m": m, "mu1": mu1, "mu2": mu2, "co_mun": co_mun}
    return make_report("upper_bound_chain", details, float(chain_slack(n, sg.tol + sc.tol)), info)


def upper_bound_chain_exhaustive(n: int) -> dict:
    """The four inequalities of :func:`check_prop1_chain` on every labeled graph of order ``n``.

    Complement spectra are looked up by mask, since the complement of mask
    ``b`` is ``full ^ b``. Returns violation counts and worst slacks per
    inequality.
    """
    if n < 2:
        raise ValueError("needs n >= 2")
    values, tols = labeled_spectra(n)
    npairs = n * (n - 1) // 2
    masks = np.arange(1 << npairs, dtype=np.int64)
    co = ((1 << npairs) - 1) ^ masks
    m = np.zeros(len(masks))
    for b in range(npairs):
        m += (masks >> b) & 1
    slack = chain_slack(n, tols + tols[co])
    sides = upper_bound_chain_sides(values[:, 0], values[:, 1], values[co, -1], m, n)
    violations, worst = {}, {}
    for label, (lhs, rhs) in zip(CHAIN_LABELS, sides):
        gap = rhs - lhs
        violations[label] = int(np.count_nonzero(gap < -slack))
        worst[label] = float(gap.min())
    return {
        "n": n,
        "graphs": len(masks),
        "violations": violations,
        "worst_slack": worst,
        "max_mu1_plus_mu2": float((values[:, 0] + values[:, 1]).max()),
        "passed": not any(violations.values()),
    }


# --- amplification -------------------------------------------------------------------

@dataclass(frozen=True)
class AmplificationReport:
    """Outcome of blowing ``G`` up to order ``N`` and padding with isolated vertices.

    ``chain_holds`` iff ``f1_over_N >= f_over_n - sum(error_terms) - numerical_slack``.
    ``premise_holds`` records whether ``|f_over_n| <= |c_ref| + |eps|``, the
    bound on the base ratio that the error terms assume.
    """

    n: int
    N: int
    t: int
    padding: int
    f_over_n: float
    f1_over_N: float
    error_terms: tuple[float, float, float]
    margin: float
    numerical_slack: float
    chain_holds: bool
    amplified_member: bool
    premise_holds: bool
    family: str
    form: dict

    def to_dict(self) -> dict:
        return {
            "name": "amplify",
            "passed": self.passed,
            "n": self.n,
            "N": self.N,
            "t": self.t,
            "padding": self.padding,
            "family": self.family,
            "form": self.form,
            "f_over_n": self.f_over_n,
            "f1_over_N": self.f1_over_N,
            "error_terms": list(self.error_terms),
            "margin": self.margin,
            "numerical_slack": self.numerical_slack,
            "chain_holds": self.chain_holds,
            "amplified_member": self.amplified_member,
            "premise_holds": self.premise_holds,
        }

    @property
    def passed(self) -> bool:
        return self.chain_holds and self.amplified_member


def amplify(G: Graph, F: LinearForm, P: FamilyPredicate, N: int, c_ref: float, eps: float) -> AmplificationReport:
    n = G.n
    if not member(P, G):
        raise ValueError(f"base graph is not in family {P}")
    if N < 2 * n:
        raise ValueError(f"need N >= 2n, got N={N}, n={n}")
    if 3 * n <= 4 * F.k:
        raise ValueError(f"need n > 4k/3, got n={n}, k={F.k}")
    t = N // n
    G1 = gc.add_isolated(gc.blowup_independent(G, t), N - t * n)
    in_family = member(P, G1)

    sg, sg1 = eigenvalues(G), eigenvalues(G1)
    if F.uses_complement:
        cg, cg1 = eigenvalues(gc.complement(G)), eigenvalues(gc.complement(G1))
    else:
        cg = cg1 = None
    f_over_n = evaluate_spectra(F, sg, cg) / n
    f1_over_N = evaluate_spectra(F, sg1, cg1) / N
    M = coefficient_norm(F)
    errors = (
        n * (abs(c_ref) + abs(eps)) / t,
        3 * M / math.sqrt(n),
        3 * M * math.sqrt(n / t),
    )
    slack = max(SLACK_FLOOR, evaluation_tol(F, sg, cg) / n + evaluation_tol(F, sg1, cg1) / N)
    margin = f1_over_N - (f_over_n - sum(errors))
    return AmplificationReport(
        n=n,
        N=N,
        t=t,
        padding=N - t * n,
        f_over_n=f_over_n,
        f1_over_N=f1_over_N,
        error_terms=errors,
        margin=margin,
        numerical_slack=slack,
        chain_holds=margin >= -slack,
        amplified_member=in_family,
        premise_holds=abs(f_over_n) <= abs(c_ref) + abs(eps),
        family=str(P),
        form=F.to_dict(),
    )


# --- seeded suites ---------------------------------------------------------------------

def _random_order_graph(rng, lo: int, hi: int) -> Graph:
    n = int(rng.integers(lo, hi + 1))
    return random_graph(n, rng, p=float(rng.uniform(0.05, 0.95)))


def suite_blowup(trials: int, rng) -> list[CheckReport]:
    out = []
    for _ in range(trials):
        G = _random_order_graph(rng, 1, 12)
        t = int(rng.integers(2, 5))
        out.append(check_blowup_spectrum_independent(G, t))
        out.append(check_blowup_spectrum_clique(G, t))
    return out


def suite_blowup_bounds(trials: int, rng) -> list[CheckReport]:
    out = []
    for _ in range(trials):
        G = _random_order_graph(rng, 2, 12)
        t = int(rng.integers(2, 4))
        k = int(rng.integers(1, min(4, G.n - 1) + 1))
        out.append(check_lemma_blowup_bounds(G, t, k))
    return out


def suite_vertex_deletion(trials: int, rng) -> list[CheckReport]:
    out = []
    for _ in range(trials):
        G = _random_order_graph(rng, 2, 40)
        out.append(check_vertex_deletion_bounds(G, int(rng.integers(G.n))))
    return out


def suite_subset_deletion(trials: int, rng) -> list[CheckReport]:
    out = []
    for _ in range(trials):
        G = _random_order_graph(rng, 3, 40)
        l = int(rng.integers(1, min(4, G.n - 2) + 1))
        S = rng.choice(G.n, size=l, replace=False)
        out.append(check_subset_deletion_bounds(G, S))
    return out


def suite_interlacing(trials: int, rng) -> list[CheckReport]:
    out = []
    for _ in range(trials):
        G = _random_order_graph(rng, 2, 60)
        out.append(check_interlacing(G, int(rng.integers(G.n))))
    return out


def suite_upper_bound_chain(trials: int, rng, max_order: int = 100) -> list[CheckReport]:
    return [check_prop1_chain(_random_order_graph(rng, 2, max_order)) for _ in range(trials)]


AMPLIFY_FAMILIES = (All(), KrFree(3), RPartite(2))


def random_form(rng, k: int) -> LinearForm:
    coef = np.round(rng.uniform(-2, 2, size=(4, k)), 3)
    return LinearForm(k, *coef)


def suite_amplify(trials: int, rng) -> list[AmplificationReport]:
    """Random base graphs and forms across the three families.

    ``c_ref`` is the base ratio ``F(G)/n`` itself and ``eps = 0.01``, which
    satisfies the premise of the error terms.
    """
    out = []
    for i in range(trials):
        P = AMPLIFY_FAMILIES[i % len(AMPLIFY_FAMILIES)]
        n = int(rng.integers(3, 9))
        k = int(rng.integers(1, 3))
        while 3 * n <= 4 * k:
            k -= 1
        F = random_form(rng, k)
        G = random_member(P, n, rng)
        N = int(rng.integers(2 * n, 64 + 1))
        c_ref = evaluate_spectra(
            F, eigenvalues(G), eigenvalues(gc.complement(G)) if F.uses_complement else None
        ) / n
        out.append(amplify(G, F, P, N, c_ref, 0.01))
    return out


SUITES: dict[str, Callable] = {
    "blowup": suite_blowup,
    "blowup_bounds": suite_blowup_bounds,
    "vertex": suite_vertex_deletion,
    "subset": suite_subset_deletion,
    "interlacing": suite_interlacing,
    "upper_bound": suite_upper_bound_chain,
    "amplify": suite_amplify,
}


def run_suite(name: str, trials: int, seed: int) -> list:
    """Run one named suite (or ``"all"``) with the stream derived from ``seed``."""
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for nm in names:
        if nm not in SUITES:
            raise ValueError(f"unknown suite {nm!r}; choose from all, {', '.join(SUITES)}")
        reports.extend(SUITES[nm](trials, rng_for(seed, f"verify:{nm}")))
    return reports
