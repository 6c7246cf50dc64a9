"""Maximizing a linear form over a graph family at fixed order.

Two methods, both producing an :class:`ExtremalRecord`:

* ``exhaustive`` walks every labeled graph on ``n`` vertices as an edge mask
  ``0 .. 2^(n(n-1)/2) - 1`` (bit ``b`` is pair ``b`` in graph6 order) and
  keeps the best member; among values within ``TIE_TOL`` of the maximum the
  smallest mask wins.
* ``stochastic`` runs seeded first-improvement hill climbing over single
  edge flips, with restarts.

Neither method is a published algorithm; records carry the method name.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import graph as gc
from .constructions import GernertParams, gernert_graph
from .errors import BudgetExceededError, OrderTooSmallError
from .formats import to_graph6
from .functional import (
    FamilyPredicate,
    LinearForm,
    evaluate,
    evaluate_values,
    member,
    member_after_flip,
)
from .graph import Graph, adjacency_batch, from_edge_mask, pair_list
from .sampling import derive_seed, random_member
from .spectra import batch_eigenvalues, eigenvalues

EXHAUSTIVE_CAP = 7
IMPROVE_TOL = 1e-10
TIE_TOL = 1e-10
CHUNK = 1 << 15
CSV_COLUMNS = ("n", "value", "phi", "method", "seed", "witness_graph6")


@dataclass(frozen=True)
class ExtremalRecord:
    n: int
    family: FamilyPredicate
    form: LinearForm
    value: float
    witness: Graph
    method: str
    seed: int | None
    evaluations: int

    @property
    def phi(self) -> float:
        return self.value / self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family": str(self.family),
            "form": self.form.to_dict(),
            "value": self.value,
            "phi": self.phi,
            "method": self.method,
            "seed": self.seed,
            "evaluations": self.evaluations,
            "witness_graph6": to_graph6(self.witness),
        }

    def csv_row(self) -> list[str]:
        seed = "" if self.seed is None else str(self.seed)
        return [str(self.n), repr(self.value), repr(self.phi), self.method, seed, to_graph6(self.witness)]


def validate_record(rec: ExtremalRecord, tol: float = 1e-8) -> None:
    """Re-check membership, order and value of a record's witness."""
    if rec.witness.n != rec.n:
        raise AssertionError(f"witness has order {rec.witness.n}, record says {rec.n}")
    if not member(rec.family, rec.witness):
        raise AssertionError(f"witness is not in family {rec.family}")
    again = evaluate(rec.form, rec.witness)
    if abs(again - rec.value) > tol:
        raise AssertionError(f"witness re-evaluates to {again}, record says {rec.value}")


def write_csv(records: Iterable[ExtremalRecord], out=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow(rec.csv_row())
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


# --- exhaustive -------------------------------------------------------------------

def _full_mask(n: int) -> int:
    return (1 << (n * (n - 1) // 2)) - 1


def _chunk_values(F: LinearForm, n: int, masks: np.ndarray) -> np.ndarray:
    vals, _ = batch_eigenvalues(adjacency_batch(n, masks))
    co = None
    if F.uses_complement:
        co, _ = batch_eigenvalues(adjacency_batch(n, _full_mask(n) ^ masks))
    return evaluate_values(F, vals, co)


def exhaustive(n: int, F: LinearForm, P: FamilyPredicate, cap: int = EXHAUSTIVE_CAP) -> ExtremalRecord:
    """True maximum of ``F`` over all labeled members of order ``n``."""
    if n > cap:
        raise BudgetExceededError(f"exhaustive search capped at n <= {cap}, got n={n}")
    if n < F.k:
        raise OrderTooSmallError(f"form needs order >= {F.k}, got n={n}")
    if n > EXHAUSTIVE_CAP:
        warnings.warn(
            f"exhaustive search on n={n} solves {2 ** (n * (n - 1) // 2)} spectra",
            RuntimeWarning,
            stacklevel=2,
        )
    total = 1 << (n * (n - 1) // 2)
    best_val, best_mask, evals = -np.inf, -1, 0
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        if P.kind != "all":
            keep = [member(P, from_edge_mask(n, int(m))) for m in masks]
            masks = masks[np.array(keep, dtype=bool)]
            if not len(masks):
                continue
        vals = _chunk_values(F, n, masks)
        evals += len(masks)
        top = vals.max()
        if top > best_val + TIE_TOL:
            # a new clear maximum; earliest near-tie inside this chunk wins
            i = int(np.argmax(vals >= top - TIE_TOL))
            best_val, best_mask = float(vals[i]), int(masks[i])
    if best_mask < 0:
        raise ValueError(f"family {P} has no member of order {n}")
    return ExtremalRecord(n, P, F, best_val, from_edge_mask(n, best_mask), "exhaustive", None, evals)


# --- stochastic -------------------------------------------------------------------------

def _objective(F: LinearForm) -> Callable[[Graph], float]:
    def f(G: Graph) -> float:
        vals = eigenvalues(G).values
        co = eigenvalues(gc.complement(G)).values if F.uses_complement else None
        return float(evaluate_values(F, vals, co))

    return f


def _better(value, g6, best_value, best_g6) -> bool:
    if value > best_value + TIE_TOL:
        return True
    return value >= best_value - TIE_TOL and best_g6 is not None and g6 < best_g6


def stochastic(
    n: int,
    F: LinearForm,
    P: FamilyPredicate,
    seed: int,
    restarts: int,
    steps: int,
    initial: Graph | None = None,
    callback: Callable[[int, float], None] | None = None,
) -> ExtremalRecord:
    """First-improvement hill climbing over edge flips.

    Each restart draws a random member (the first restart uses ``initial``
    when given), then repeatedly scans all pairs in a fresh random order and
    takes the first membership-preserving flip that improves ``F`` by more
    than ``IMPROVE_TOL``. A restart ends after a scan without improvement or
    after ``steps`` accepted flips. ``callback(restart, value)`` is called on
    every accepted flip.
    """
    if n < F.k:
        raise OrderTooSmallError(f"form needs order >= {F.k}, got n={n}")
    if restarts < 1 or steps < 1:
        raise ValueError("restarts and steps must be >= 1")
    if initial is not None:
        if initial.n != n:
            raise ValueError(f"initial graph has order {initial.n}, expected {n}")
        if not member(P, initial):
            raise ValueError(f"initial graph is not in family {P}")
    f = _objective(F)
    pairs = pair_list(n)
    root = np.random.SeedSequence(derive_seed(seed, "stochastic"))
    best, best_val, best_g6 = None, -np.inf, None
    evals = 0
    for r, child in enumerate(root.spawn(restarts)):
        rng = np.random.default_rng(child)
        G = initial if (r == 0 and initial is not None) else random_member(P, n, rng)
        val = f(G)
        evals += 1
        accepted = 0
        while accepted < steps:
            improved = False
            for idx in rng.permutation(len(pairs)):
                u, v = pairs[idx]
                if not member_after_flip(P, G, u, v):
                    continue
                H = G.flip(u, v)
                hv = f(H)
                evals += 1
                if hv > val + IMPROVE_TOL:
                    G, val = H, hv
                    accepted += 1
                    improved = True
                    if callback is not None:
                        callback(r, val)
                    break
            if not improved:
                break
        g6 = to_graph6(G)
        if _better(val, g6, best_val, best_g6):
            best, best_val, best_g6 = G, val, g6
    return ExtremalRecord(n, P, F, best_val, best, "stochastic", int(seed), evals)


# --- phi tables -------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchPolicy:
    """How :func:`phi_table` picks a method per order.

    Orders up to ``exhaustive_cap`` are enumerated; larger ones use
    ``stochastic`` with a per-order seed derived from ``seed``. With
    ``seed_with_gernert`` the first restart at ``n >= 21`` starts from the
    ``K_{5k}`` + ``2 K_{8k}`` construction when it belongs to the family.
    """

    exhaustive_cap: int = EXHAUSTIVE_CAP
    restarts: int = 16
    steps: int = 10_000
    seed: int = 0
    seed_with_gernert: bool = False


def phi_table(F: LinearForm, P: FamilyPredicate, n_range: Iterable[int], policy: SearchPolicy = SearchPolicy()):
    n_range = list(n_range)
    if not n_range:
        raise ValueError("n_range is empty")
    records = []
    for n in n_range:
        if n <= policy.exhaustive_cap:
            rec = exhaustive(n, F, P, cap=policy.exhaustive_cap)
        else:
            initial = None
            if policy.seed_with_gernert and n >= 21:
                cand = gernert_graph(GernertParams.for_order(n))
                if member(P, cand):
                    initial = cand
            rec = stochastic(
                n, F, P, derive_seed(policy.seed, f"phi:{n}"), policy.restarts, policy.steps, initial
            )
        validate_record(rec)
        records.append(rec)
    return records
