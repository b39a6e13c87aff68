"""
Witt vector arithmetic with interchangeable strategies.
Sprint: S2

    polynomial     evaluate the universal polynomials (src.witt.polys)
    ghost          lift to Z/p^{K+n}, add / multiply ghost components,
                   recover by exact division, reduce back to Z/p^K
    differential   run both and raise ConsistencyError on disagreement

The default comes from settings.strategy; use_strategy() overrides it for a
block of code (per thread / task, via a ContextVar).
"""

from __future__ import annotations

import contextlib
import logging
from contextvars import ContextVar
from typing import Any, Iterator, Literal, Optional, Sequence

from src.config.loader import load_settings
from src.errors import (
    ConsistencyError,
    DegreeError,
    DivisibilityError,
    IncompatibleOperandsError,
    NotAUnitError,
    PrecisionError,
)
from src.rings import Element, Ring
from src.witt.ghost import ghost_raw, recover_raw
from src.witt.polys import universal_polys
from src.witt.vector import WittVector

logger = logging.getLogger(__name__)

Strategy = Literal["polynomial", "ghost", "differential"]
WittOp = Literal["add", "mul", "neg", "sub"]
Raw = Any

_STRATEGY: ContextVar[Optional[str]] = ContextVar("witt_strategy", default=None)


# ---------------------------------------------------------------------------
# Strategy selection
# ---------------------------------------------------------------------------

def current_strategy() -> str:
    """The strategy in force: a use_strategy() block, else settings.strategy."""
    override = _STRATEGY.get()
    if override is not None:
        return override
    return load_settings().strategy


@contextlib.contextmanager
def use_strategy(strategy: Strategy) -> Iterator[None]:
    """
    Run a block with a fixed Witt arithmetic strategy.

    Usage:
        with use_strategy("ghost"):
            z = x * y
    """
    if strategy not in ("polynomial", "ghost", "differential"):
        raise ValueError(f"unknown strategy {strategy!r}")
    token = _STRATEGY.set(strategy)
    try:
        yield
    finally:
        _STRATEGY.reset(token)


def _resolve(strategy: Optional[str]) -> str:
    if strategy is not None:
        return strategy
    # read the override first so hot loops inside use_strategy() skip the settings file
    return _STRATEGY.get() or load_settings().strategy


# ---------------------------------------------------------------------------
# Strategy implementations
# ---------------------------------------------------------------------------

def _poly_op(op: str, x: WittVector, y: Optional[WittVector]) -> tuple[Raw, ...]:
    ring, p, n = x.ring, x.p, x.n
    if op == "add":
        return universal_polys(p, n, "S").evaluate(ring, x.comps, y.comps)
    if op == "mul":
        return universal_polys(p, n, "P").evaluate(ring, x.comps, y.comps)
    if op == "neg":
        if p != 2:
            return tuple(ring.neg_raw(c) for c in x.comps)
        return universal_polys(p, n, "N").evaluate(ring, x.comps)
    if op == "frob":
        if ring.is_char_p:
            return tuple(ring.pow_raw(c, p) for c in x.comps[:-1])
        return universal_polys(p, n - 1, "F").evaluate(ring, x.comps)
    raise ValueError(f"unknown Witt operation {op!r}")


def _lift_comps(ring: Ring, lifted: Ring, comps: Sequence[Raw]) -> tuple[Raw, ...]:
    return tuple(lifted.from_coeffs_raw(ring.coeffs_raw(c)) for c in comps)


def _ghost_op(op: str, x: WittVector, y: Optional[WittVector]) -> tuple[Raw, ...]:
    ring, n = x.ring, x.n
    lifted = ring.lifted(n)
    gx = ghost_raw(lifted, _lift_comps(ring, lifted, x.comps))
    if op == "add":
        gy = ghost_raw(lifted, _lift_comps(ring, lifted, y.comps))
        gz = tuple(lifted.add_raw(a, b) for a, b in zip(gx, gy))
    elif op == "mul":
        gy = ghost_raw(lifted, _lift_comps(ring, lifted, y.comps))
        gz = tuple(lifted.mul_raw(a, b) for a, b in zip(gx, gy))
    elif op == "neg":
        gz = tuple(lifted.neg_raw(a) for a in gx)
    elif op == "frob":
        gz = gx[1:]
    else:
        raise ValueError(f"unknown Witt operation {op!r}")
    try:
        zs = recover_raw(lifted, gz)
    except DivisibilityError as exc:
        raise PrecisionError(f"ghost transport over {ring} ran out of precision: {exc}") from exc
    return tuple(ring.reduce_raw(z, lifted) for z in zs)


def _dispatch(op: str, x: WittVector, y: Optional[WittVector], strategy: Optional[str]) -> tuple[Raw, ...]:
    chosen = _resolve(strategy)
    if chosen == "polynomial":
        return _poly_op(op, x, y)
    if chosen == "ghost":
        return _ghost_op(op, x, y)
    if chosen == "differential":
        a = _poly_op(op, x, y)
        b = _ghost_op(op, x, y)
        if a != b:
            fmt = x.ring.format_raw
            raise ConsistencyError(
                f"strategies disagree on {op} over {x.ring} at x={x}"
                + (f", y={y}" if y is not None else "")
                + f": polynomial {[fmt(c) for c in a]} vs ghost {[fmt(c) for c in b]}"
            )
        return a
    raise ValueError(f"unknown strategy {chosen!r}")


# ---------------------------------------------------------------------------
# Ring operations
# ---------------------------------------------------------------------------

def witt_arith(op: WittOp, x: WittVector, y: Optional[WittVector] = None, *,
               strategy: Optional[Strategy] = None) -> WittVector:
    """
    add, sub, mul or neg on W_n(R).

    add / sub need equal degrees; mul adds degrees.
    """
    if op == "neg":
        return WittVector(x.ring, _dispatch("neg", x, None, strategy), x.degree)
    if y is None:
        raise ValueError(f"Witt operation {op!r} needs two operands")
    x.require_shape(y)
    if op in ("add", "sub"):
        if x.degree != y.degree:
            raise IncompatibleOperandsError(f"cannot {op} degrees {x.degree} and {y.degree}")
        if op == "sub":
            y = WittVector(y.ring, _dispatch("neg", y, None, strategy), y.degree)
        if y.is_zero():
            return x
        if x.is_zero():
            return y
        return WittVector(x.ring, _dispatch("add", x, y, strategy), x.degree)
    if op == "mul":
        degree = x.degree + y.degree
        if x.is_zero() or y.is_zero():
            return WittVector.zero(x.ring, x.n, degree)
        if x.is_one():
            return y.with_degree(degree)
        if y.is_one():
            return x.with_degree(degree)
        return WittVector(x.ring, _dispatch("mul", x, y, strategy), degree)
    raise ValueError(f"unknown Witt operation {op!r}")


def frobenius(x: WittVector, *, strategy: Optional[Strategy] = None) -> WittVector:
    """F: W_n → W_{n-1} (drops one component); degree multiplied by p."""
    if x.n < 2:
        raise IncompatibleOperandsError("Frobenius needs length n >= 2 (F: W_n -> W_{n-1})")
    return WittVector(x.ring, _dispatch("frob", x, None, strategy), x.degree * x.p)


def verschiebung(x: WittVector) -> WittVector:
    """V: W_n → W_{n+1}, (x_0, …) ↦ (0, x_0, …); degree divided by p."""
    if x.degree % x.p:
        raise DegreeError(f"V needs a degree divisible by p={x.p}, got {x.degree}")
    return WittVector(x.ring, (x.ring.zero_raw,) + x.comps, x.degree // x.p)


def teichmuller(a: Element, n: int, degree: int = 0) -> WittVector:
    """[a] = (a, 0, …, 0) in W_n."""
    return WittVector.teichmuller(a, n, degree)


def mul_int(k: int, x: WittVector) -> WittVector:
    """k·x by double-and-add."""
    if k < 0:
        return witt_arith("neg", mul_int(-k, x))
    result = WittVector.zero(x.ring, x.n, x.degree)
    addend = x
    while k:
        if k & 1:
            result = witt_arith("add", result, addend)
        k >>= 1
        if k:
            addend = witt_arith("add", addend, addend)
    return result


def witt_pow(x: WittVector, k: int) -> WittVector:
    if k < 0:
        raise ValueError("negative exponent; invert first")
    result = WittVector.one(x.ring, x.n)
    base = x
    while k:
        if k & 1:
            result = witt_arith("mul", result, base)
        k >>= 1
        if k:
            base = witt_arith("mul", base, base)
    return result


def witt_invert(x: WittVector) -> WittVector:
    """
    Inverse of x in W_n(R) (x_0 must be a unit).

    y ← [x_0^{-1}], then y ← y + y(1 - xy) until xy = 1; p is nilpotent so
    1 - xy lies in a nilpotent ideal and the Newton step terminates.
    """
    ring = x.ring
    if not ring.is_unit_raw(x.comps[0]):
        raise NotAUnitError(f"{x} is not a unit: x_0 = {ring.format_raw(x.comps[0])}")
    one = WittVector.one(ring, x.n)
    y = WittVector(ring, (ring.inverse_raw(x.comps[0]),) + (ring.zero_raw,) * (x.n - 1), -x.degree)
    bound = x.n + max(f.K * f.e for f in ring.spec.factors)
    for _ in range(bound + 1):
        r = witt_arith("sub", one, witt_arith("mul", x, y))
        if r.is_zero():
            return y
        y = witt_arith("add", y, witt_arith("mul", y, r))
    raise ConsistencyError(f"inversion of {x} did not converge in {bound} steps")


# ---------------------------------------------------------------------------
# Supplements
# ---------------------------------------------------------------------------

def witt_frobenius_perfect(x: WittVector) -> WittVector:
    """Length-preserving Frobenius x_i ↦ x_i^p on characteristic-p rings."""
    if not x.ring.is_char_p:
        raise IncompatibleOperandsError(f"length-preserving Frobenius needs characteristic p, got {x.ring}")
    ring = x.ring
    return WittVector(ring, tuple(ring.pow_raw(c, x.p) for c in x.comps), x.degree * x.p)


def teichmuller_expansion(lams: Sequence[Element], n: Optional[int] = None) -> WittVector:
    """Σ p^i [λ_i] in W_n."""
    if not lams:
        raise ValueError("need at least one Teichmüller digit")
    n = n or len(lams)
    ring = lams[0].ring
    total = WittVector.zero(ring, n)
    for i, lam in enumerate(lams):
        total = witt_arith("add", total, mul_int(ring.p ** i, WittVector.teichmuller(lam, n)))
    return total


def iterate_verschiebung(x: WittVector, k: int) -> WittVector:
    for _ in range(k):
        x = verschiebung(x)
    return x
