"""
Counters and domain selection shared by every check.
Sprint: S2

A check walks a finite domain (exhaustively when it fits under the
enumeration bound, otherwise by seeded sampling), records every comparison
in a Tally, and finally turns the Tally into a Report.
"""

from __future__ import annotations

import contextlib
import logging
import random
import time
from collections import Counter
from contextvars import ContextVar
from typing import Any, Callable, Iterable, Iterator, Optional, TypeVar

from src.config.loader import load_settings
from src.models.schemas import Counterexample, Report

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Witness keys that combine across sub-reports by maximum.
_MAX_WITNESS_KEYS = frozenset({"max_n"})

_SEED: ContextVar[Optional[int]] = ContextVar("check_seed", default=None)


def current_seed() -> int:
    """The seed in force: a use_seed() block, else settings.seed."""
    override = _SEED.get()
    return load_settings().seed if override is None else override


@contextlib.contextmanager
def use_seed(seed: Optional[int]) -> Iterator[None]:
    """Run a block with a fixed sampling seed (None keeps the current one)."""
    token = _SEED.set(seed if seed is not None else _SEED.get())
    try:
        yield
    finally:
        _SEED.reset(token)


class Tally:
    """
    Running record of one check.

    Usage:
        tally = Tally("frobenius_verschiebung")
        for x in domain:
            tally.check(F(V(x)) == p * x, x=x)
        return tally.report()
    """

    def __init__(self, name: str, seed: Optional[int] = None) -> None:
        settings = load_settings()
        self.name = name
        self.seed = current_seed() if seed is None else seed
        self._limit = settings.max_counterexamples
        self.counts: Counter[str] = Counter(checked=0, failed=0)
        self.counterexamples: list[Counterexample] = []
        self.witness: dict[str, str] = {}
        self._start = time.perf_counter()

    def check(self, ok: bool, detail: str = "", **inputs: Any) -> bool:
        """Record one comparison; on failure keep the inputs as a counterexample."""
        self.counts["checked"] += 1
        if not ok:
            self.fail(detail, **inputs)
        return ok

    def fail(self, detail: str = "", **inputs: Any) -> None:
        self.counts["failed"] += 1
        if len(self.counterexamples) < self._limit:
            self.counterexamples.append(
                Counterexample(inputs={k: str(v) for k, v in inputs.items()}, detail=detail)
            )

    def count(self, key: str, n: int = 1) -> None:
        self.counts[key] += n

    def note(self, key: str, value: Any) -> None:
        self.witness[key] = str(value)

    @property
    def ok(self) -> bool:
        return self.counts["failed"] == 0

    def merge(self, other: Report) -> None:
        """Fold a sub-report (from a library-level check) into this tally."""
        for key, value in other.counts.items():
            self.counts[key] += value
        for ce in other.counterexamples:
            if len(self.counterexamples) < self._limit:
                self.counterexamples.append(ce)
        for key, value in other.witness.items():
            current = self.witness.get(key)
            if current is None:
                self.witness[key] = value
            elif key in _MAX_WITNESS_KEYS:
                self.witness[key] = str(max(int(current), int(value)))
            elif key == "mode" and value == "sampled":
                self.witness[key] = value

    def report(self) -> Report:
        elapsed = (time.perf_counter() - self._start) * 1000
        return Report(
            check_id=self.name,
            status="pass" if self.ok else "fail",
            counts=dict(sorted(self.counts.items())),
            counterexamples=self.counterexamples,
            witness=dict(sorted(self.witness.items())),
            wall_time_ms=round(elapsed, 3),
            seed=self.seed,
        )


def error_report(check_id: str, exc: BaseException, seed: int) -> Report:
    """Report for a check that raised instead of finishing."""
    return Report(
        check_id=check_id,
        status="error",
        counts={"checked": 0, "failed": 0},
        seed=seed,
        message=f"{type(exc).__name__}: {exc}",
    )


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

def exhaustive_or_sampled(
    size: int,
    enumerate_all: Callable[[], Iterable[T]],
    sample_one: Callable[[random.Random], T],
    *,
    tally: Optional[Tally] = None,
    sample_count: Optional[int] = None,
) -> Iterator[T]:
    """
    Iterate the whole domain when size fits the enumeration bound,
    otherwise draw seeded samples.
    """
    settings = load_settings()
    if size <= settings.enumeration_bound:
        if tally is not None:
            tally.note("mode", "exhaustive")
        yield from enumerate_all()
        return
    count = sample_count or settings.sample_count
    seed = tally.seed if tally is not None else current_seed()
    logger.warning("domain of size %d exceeds enumeration bound %d; sampling %d",
                   size, settings.enumeration_bound, count)
    if tally is not None:
        tally.note("mode", "sampled")
    rng = random.Random(seed)
    for _ in range(count):
        yield sample_one(rng)
