"""Closed-form bounds on max mu_1 + mu_2 and the explicit family beating ``n``.

For ``k >= 1`` the core graph is ``K_{5k}`` joined to two disjoint copies of
``K_{8k}`` (order ``21k``). Its two largest eigenvalues are the positive root
of ``(x - 5k + 1)(x - 8k + 1) - 80 k^2 = 0`` and ``8k - 1``, so

    mu_1 + mu_2 = (29k - 4 + k sqrt(329)) / 2 > 21k.

Vertex layout of :func:`gernert_graph`: the ``K_{5k}`` block first, then the
two ``K_{8k}`` blocks, then the isolated padding vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import graph as gc
from .errors import BudgetExceededError
from .graph import Graph
from .spectra import eigenvalues
from .verify import CheckReport, Inequality, make_report

SQRT329 = math.sqrt(329.0)
LIMIT_RATIO = (29.0 + SQRT329) / 42.0  # ~1.1223418
UPPER_RATIO = 2.0 / math.sqrt(3.0)  # ~1.1547005
SOLVER_BUDGET = 2000  # largest order certified


@dataclass(frozen=True)
class GernertParams:
    k: int
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.n < 21 * self.k:
            raise ValueError(f"n must be >= 21k = {21 * self.k}, got {self.n}")

    @classmethod
    def for_order(cls, n: int) -> GernertParams:
        """Largest core that fits: ``k = floor(n / 21)``."""
        if n < 21:
            raise ValueError(f"the construction needs n >= 21, got {n}")
        return cls(n // 21, n)


def gernert_graph(p: GernertParams) -> Graph:
    k = p.k
    core = gc.join(gc.complete(5 * k), gc.disjoint_union(gc.complete(8 * k), gc.complete(8 * k)))
    return gc.add_isolated(core, p.n - 21 * k)


def gernert_quadratic(k: int, x: float) -> float:
    return (x - 5 * k + 1) * (x - 8 * k + 1) - 80 * k * k


def gernert_top_root(k: int) -> float:
    """Positive root of the quadratic: the largest eigenvalue of the core."""
    return (13 * k - 2 + k * SQRT329) / 2


def gernert_predicted_value(k: int) -> float:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return (29 * k - 4 + k * SQRT329) / 2


def lower_bound(n: int) -> float:
    return LIMIT_RATIO * n - 25


def upper_bound(n: int) -> float:
    return UPPER_RATIO * n


def gernert_certificate(k: int, n: int | None = None) -> CheckReport:
    """Solve the construction's spectrum and check it against the closed forms.

    Sub-inequalities: the measured ``mu_1 + mu_2`` reaches the predicted
    value; ``mu_2 >= 8k - 1``; ``mu_1 + mu_2 > 21k``; ``mu_1 + mu_2`` stays
    under ``2 (21k) / sqrt(3)``; and it exceeds ``lower_bound(n)``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = 21 * k if n is None else n
    p = GernertParams(k, n)
    if n > SOLVER_BUDGET:
        raise BudgetExceededError(f"order {n} exceeds the solver budget of {SOLVER_BUDGET}")
    G = gernert_graph(p)
    spec = eigenvalues(G)
    mu1, mu2 = spec.mu(1), spec.mu(2)
    value = mu1 + mu2
    predicted = gernert_predicted_value(k)
    slack = 2 * spec.tol
    details = (
        Inequality("reaches_predicted", None, predicted, value),
        Inequality("mu2_at_least_8k-1", None, 8 * k - 1.0, mu2),
        Inequality("exceeds_21k", None, 21.0 * k, value, strict=True),
        Inequality("below_upper_bound", None, value, upper_bound(21 * k)),
        Inequality("exceeds_lower_bound", None, lower_bound(n), value, strict=True),
    )
    info = {
        "k": k,
        "n": n,
        "mu1": mu1,
        "mu2": mu2,
        "value": value,
        "predicted": predicted,
        "abs_error": abs(value - predicted),
        "mu2_equals_8k-1": abs(mu2 - (8 * k - 1)) <= max(slack, 1e-8),
        "exceeds_order": value > n,
        "tol": spec.tol,
    }
    return make_report("gernert_certificate", details, slack, info)
