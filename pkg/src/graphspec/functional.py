"""Linear forms in the extremal eigenvalues of a graph and of its complement.

A :class:`LinearForm` with coefficient vectors ``alpha, beta, gamma, delta`` of
length ``k`` evaluates, on a graph ``G`` of order ``n >= k``, to::

    sum_i alpha[i] mu_i(G) + beta[i] mu_{n-i+1}(G)
        + gamma[i] mu_i(co-G) + delta[i] mu_{n-i+1}(co-G)

with ``i = 1..k``: ``alpha``/``gamma`` weight the top eigenvalues and
``beta``/``delta`` the bottom ones. Minimization is maximization of ``-F``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import graph as gc
from .errors import OrderTooSmallError
from .graph import Graph
from .spectra import Spectrum, eigenvalues

_FIELDS = ("alpha", "beta", "gamma", "delta")


def _vec(x) -> tuple[float, ...]:
    return tuple(float(v) for v in x)


@dataclass(frozen=True)
class LinearForm:
    k: int
    alpha: tuple[float, ...]
    beta: tuple[float, ...]
    gamma: tuple[float, ...]
    delta: tuple[float, ...]

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        for name in _FIELDS:
            v = _vec(getattr(self, name))
            if len(v) != self.k:
                raise ValueError(f"{name} has length {len(v)}, expected k={self.k}")
            if not all(np.isfinite(v)):
                raise ValueError(f"{name} contains a non-finite coefficient")
            object.__setattr__(self, name, v)

    @classmethod
    def make(cls, alpha=(), beta=(), gamma=(), delta=(), k: int | None = None) -> LinearForm:
        """Build a form, zero-filling omitted vectors to the common length."""
        vecs = {name: _vec(v) for name, v in zip(_FIELDS, (alpha, beta, gamma, delta))}
        if k is None:
            k = max(len(v) for v in vecs.values())
        filled = {name: v if v else (0.0,) * k for name, v in vecs.items()}
        return cls(k, **filled)

    @property
    def M(self) -> float:
        return coefficient_norm(self)

    @property
    def uses_complement(self) -> bool:
        return any(self.gamma) or any(self.delta)

    def __add__(self, other: LinearForm) -> LinearForm:
        if not isinstance(other, LinearForm):
            return NotImplemented
        if other.k != self.k:
            raise ValueError("forms must have equal k to be added")
        return LinearForm(
            self.k,
            *(tuple(a + b for a, b in zip(getattr(self, f), getattr(other, f))) for f in _FIELDS),
        )

    def __mul__(self, c: float) -> LinearForm:
        return LinearForm(self.k, *(tuple(c * a for a in getattr(self, f)) for f in _FIELDS))

    __rmul__ = __mul__

    def __neg__(self) -> LinearForm:
        return self * -1.0

    def swap_complement(self) -> LinearForm:
        """The form that reads ``G`` where this one reads the complement, and vice versa."""
        return LinearForm(self.k, self.gamma, self.delta, self.alpha, self.beta)

    def to_dict(self) -> dict:
        return {"k": self.k, **{f: list(getattr(self, f)) for f in _FIELDS}}

    @classmethod
    def from_dict(cls, d: dict) -> LinearForm:
        unknown = set(d) - {"k", *_FIELDS}
        if unknown:
            raise ValueError(f"unknown linear form keys: {sorted(unknown)}")
        return cls.make(*(d.get(f, ()) for f in _FIELDS), k=d.get("k"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> LinearForm:
        return cls.from_dict(json.loads(text))


def coefficient_norm(F: LinearForm) -> float:
    """Sum of absolute values of all coefficients; ``|F(G)| <= M n``."""
    return float(sum(abs(x) for f in _FIELDS for x in getattr(F, f)))


def _weighted(F: LinearForm, values: np.ndarray, top, bottom) -> np.ndarray:
    k = F.k
    head = values[..., :k]
    tail = values[..., ::-1][..., :k]
    return head @ np.asarray(top) + tail @ np.asarray(bottom)


def evaluate_values(F: LinearForm, values: np.ndarray, co_values: np.ndarray | None = None):
    """Evaluate on descending spectra arrays of shape ``(..., n)``.

    ``co_values`` may be omitted when the form ignores the complement.
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[-1]
    if n < F.k:
        raise OrderTooSmallError(f"form needs order >= {F.k}, graph has {n} vertices")
    out = _weighted(F, values, F.alpha, F.beta)
    if F.uses_complement:
        if co_values is None:
            raise ValueError("form has complement coefficients but no complement spectrum given")
        out = out + _weighted(F, np.asarray(co_values, dtype=np.float64), F.gamma, F.delta)
    return out


def evaluate_spectra(F: LinearForm, spec: Spectrum, co_spec: Spectrum | None = None) -> float:
    co = None if co_spec is None else co_spec.values
    return float(evaluate_values(F, spec.values, co))


def evaluate(F: LinearForm, G: Graph) -> float:
    """``F(G)``; requires ``G.n >= F.k``."""
    if G.n < F.k:
        raise OrderTooSmallError(f"form needs order >= {F.k}, graph has {G.n} vertices")
    spec = eigenvalues(G)
    co_spec = eigenvalues(gc.complement(G)) if F.uses_complement else None
    return evaluate_spectra(F, spec, co_spec)


def evaluation_tol(F: LinearForm, spec: Spectrum, co_spec: Spectrum | None = None) -> float:
    """Error bound on ``evaluate_spectra`` from the spectrum tolerances."""
    tol = spec.tol * float(sum(abs(x) for x in F.alpha + F.beta))
    if co_spec is not None:
        tol += co_spec.tol * float(sum(abs(x) for x in F.gamma + F.delta))
    return tol


# --- presets -------------------------------------------------------------------

PRESETS = ("mu1+mun", "mu1-mun", "mu1+mu2", "mu1+cmu1", "mui+cmui")


def preset(name: str, i: int | None = None) -> LinearForm:
    """Named objectives from the classical extremal problems.

    ``mu1+mun``, ``mu1-mun``, ``mu1+mu2``, ``mu1+cmu1`` (largest eigenvalue of
    G plus that of its complement) and ``mui+cmui`` (needs ``i``).
    """
    if name == "mu1+mun":
        return LinearForm.make(alpha=[1], beta=[1])
    if name == "mu1-mun":
        return LinearForm.make(alpha=[1], beta=[-1])
    if name == "mu1+mu2":
        return LinearForm.make(alpha=[1, 1])
    if name == "mu1+cmu1":
        return LinearForm.make(alpha=[1], gamma=[1])
    if name == "mui+cmui":
        if i is None or i < 1:
            raise ValueError("preset 'mui+cmui' needs a positive index i")
        e = [0.0] * i
        e[-1] = 1.0
        return LinearForm.make(alpha=e, gamma=e)
    raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


# --- families -----------------------------------------------------------------

@dataclass(frozen=True)
class FamilyPredicate:
    """A multiplicative graph family: ``all``, ``krfree`` (r >= 3) or ``rpartite`` (r >= 1)."""

    kind: str = "all"
    r: int | None = None

    def __post_init__(self):
        if self.kind == "all":
            if self.r is not None:
                raise ValueError("family 'all' takes no parameter")
        elif self.kind == "krfree":
            if self.r is None or self.r < 3:
                raise ValueError("krfree needs r >= 3")
        elif self.kind == "rpartite":
            if self.r is None or self.r < 1:
                raise ValueError("rpartite needs r >= 1")
        else:
            raise ValueError(f"unknown family kind {self.kind!r}")

    def __str__(self):
        return self.kind if self.r is None else f"{self.kind}:{self.r}"

    @classmethod
    def parse(cls, text: str) -> FamilyPredicate:
        """Parse ``all``, ``krfree:3`` or ``rpartite:2``."""
        kind, _, arg = text.strip().lower().partition(":")
        if kind == "all" and not arg:
            return cls()
        if kind in ("krfree", "rpartite") and arg:
            try:
                return cls(kind, int(arg))
            except ValueError as exc:
                raise ValueError(f"bad family {text!r}: {exc}") from None
        raise ValueError(f"bad family {text!r}; expected all, krfree:R or rpartite:R")


def All() -> FamilyPredicate:
    return FamilyPredicate()


def KrFree(r: int) -> FamilyPredicate:
    return FamilyPredicate("krfree", r)


def RPartite(r: int) -> FamilyPredicate:
    return FamilyPredicate("rpartite", r)


def member(P: FamilyPredicate, G: Graph) -> bool:
    if P.kind == "all":
        return True
    if P.kind == "krfree":
        return gc.is_kr_free(G, P.r)
    return gc.is_r_partite(G, P.r)


def member_after_flip(P: FamilyPredicate, G: Graph, u: int, v: int) -> bool:
    """Whether ``G`` with pair ``uv`` toggled is in ``P``, given ``G`` is.

    All three families are closed under edge deletion, so only additions
    need a check; K_r-freeness is checked locally around the new edge.
    """
    if P.kind == "all" or G.adj[u, v]:
        return True
    if P.kind == "krfree":
        return gc.clique_free_after_adding(G, u, v, P.r)
    return gc.is_r_partite(G.flip(u, v), P.r)

