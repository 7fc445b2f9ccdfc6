"""Shared numeric plumbing: precision contexts, arithmetic backends and the
:class:`Evaluation` record returned by every non-trivial operation.

Two precision modes exist.  ``"standard"`` is IEEE double arithmetic.
``"extended"`` runs the same formulas through a private :mod:`mpmath`
context with at least 34 significant digits; callers that need more (the
cancellation guards) request a larger ``dps`` explicitly.  The default mode
is read from the ``LOMMEL_PRECISION`` environment variable.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Literal, Sequence

import mpmath

Precision = Literal["standard", "extended"]

EXTENDED_DPS = 34
EPS = 2.0 ** -52

METHODS = ("closed-form", "series", "asymptotic", "oracle")


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class UnsupportedOrderError(ValueError):
    """A Lommel order outside the implemented closed-form families."""


class ConvergenceError(RuntimeError):
    """A series, quadrature or acceleration failed to meet its tolerance."""


def resolve_precision(precision: str | None) -> Precision:
    if precision is None:
        precision = os.environ.get("LOMMEL_PRECISION", "standard")
    precision = precision.strip().lower()
    if precision not in ("standard", "extended"):
        raise ValueError(f"unknown precision mode {precision!r}")
    return precision  # type: ignore[return-value]


@dataclass(frozen=True)
class Evaluation:
    """A numeric result together with its provenance.

    ``method`` is one of :data:`METHODS`.  ``notes`` carries qualifiers such
    as ``"extended"`` (the cancellation guard promoted the computation) or
    ``"divergent"`` (an asymptotic truncation passed its smallest term).
    """

    value: float
    abs_error_estimate: float = 0.0
    method: str = "closed-form"
    truncation_used: int = 0
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not self.abs_error_estimate >= 0.0:
            raise ValueError("abs_error_estimate must be >= 0")

    def __float__(self) -> float:
        return float(self.value)

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "abs_error_estimate": self.abs_error_estimate,
            "method": self.method,
            "truncation_used": self.truncation_used,
            "notes": list(self.notes),
        }


class FloatBackend:
    """Double-precision arithmetic with the subset of the mpmath context API
    used by the closed-form evaluators."""

    name = "standard"
    pi = math.pi
    eps = EPS
    dps = 15
    mpf = float
    mpc = complex
    sin = staticmethod(math.sin)
    cos = staticmethod(math.cos)
    sqrt = staticmethod(math.sqrt)
    gamma = staticmethod(math.gamma)
    factorial = staticmethod(math.factorial)
    fabs = staticmethod(abs)

    @staticmethod
    def fsum(terms: Iterable[float]) -> float:
        return math.fsum(terms)

    @staticmethod
    def cexp_quarter() -> complex:
        return complex(math.sqrt(0.5), -math.sqrt(0.5))


FLOAT = FloatBackend()


def mp_backend(dps: int = EXTENDED_DPS) -> mpmath.ctx_mp.MPContext:
    """A private mpmath context (thread-safe: no shared ``mp.dps``)."""
    ctx = mpmath.MPContext()
    ctx.dps = max(int(dps), EXTENDED_DPS)
    return ctx


def backend_eps(X) -> float:
    return X.eps if X is FLOAT else float(X.mpf(10) ** (-X.dps))


def guarded_sum(
    build: Callable[[object], tuple[object, Sequence[object]]],
    *,
    precision: str | None = None,
    rel_target: float = 1e-11,
    slack: float = 16.0,
    max_dps: int = 400,
) -> tuple[float, float, bool]:
    """Evaluate ``prefactor * sum(terms)`` with an a priori cancellation guard.

    ``build(X)`` returns the prefactor and the list of summands computed with
    backend ``X``.  The relative error is estimated as
    ``slack * eps * sum|t| / |sum t|``; when that exceeds ``rel_target`` (or
    extended precision was requested) the build is repeated in mpmath with
    enough digits to absorb the measured condition number.

    Returns ``(value, abs_error_estimate, promoted)``.
    """
    mode = resolve_precision(precision)
    if mode == "standard":
        pref, terms = build(FLOAT)
        total = math.fsum(terms)
        scale = math.fsum(abs(t) for t in terms)
        cond = scale / abs(total) if total != 0.0 else math.inf
        rel = slack * EPS * cond
        if rel <= rel_target and math.isfinite(pref * total):
            value = pref * total
            return value, abs(value) * rel, False
        dps = EXTENDED_DPS + (int(math.log10(cond)) + 1 if math.isfinite(cond) else 20)
    else:
        dps = EXTENDED_DPS

    while True:
        X = mp_backend(dps)
        pref, terms = build(X)
        total = X.fsum(terms)
        scale = X.fsum(abs(t) for t in terms)
        if total == 0:
            cond = X.mpf("inf")
        else:
            cond = scale / abs(total)
        rel = slack * cond * X.mpf(10) ** (-dps)
        # 1e-20 keeps the rounded double result exact to the last bit.
        if rel <= 1e-20 or dps >= max_dps:
            break
        extra = int(X.log10(cond)) + 1 if X.isfinite(cond) else dps
        dps = min(max_dps, EXTENDED_DPS + extra + 6)
    value = float(pref * total)
    err = abs(value) * float(rel) + abs(value) * EPS
    return value, err, True


def standard_loss(build: Callable[[object], tuple[object, Sequence[object]]],
                  slack: float = 16.0) -> float:
    """The relative error :func:`guarded_sum` would predict in double precision."""
    _, terms = build(FLOAT)
    total = math.fsum(terms)
    if total == 0.0:
        return math.inf
    return slack * EPS * math.fsum(abs(t) for t in terms) / abs(total)
