"""Work-unit instrumentation and duplicate removal for small-delay enumeration.

Delay is measured in abstract work units rather than wall-clock time: code
under measurement calls :meth:`DelayMeter.tick` at comparisons, hash probes
and yields, and the consumer records an output with :meth:`DelayMeter.emit`.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Callable, Hashable, Iterable, Iterator, TypeVar

T = TypeVar("T")


def log_cost(size: int) -> int:
    """Cost charged for a binary search over ``size`` items: ``1 + floor(log2 size)``."""
    return max(1, int(size).bit_length())


class DelayMeter:
    """Monotone work counter plus the log of work between consecutive outputs.

    ``gaps`` has one entry per output and a final one for the stretch between
    the last output (or the start) and termination, so after :meth:`finish`
    ``len(gaps) == outputs + 1``.
    """

    __slots__ = ("work", "gaps", "_mark", "finished")

    def __init__(self):
        self.work = 0
        self.gaps: list[int] = []
        self._mark = 0
        self.finished = False

    def tick(self, units: int = 1) -> None:
        self.work += units

    def emit(self) -> None:
        self.gaps.append(self.work - self._mark)
        self._mark = self.work

    def finish(self) -> None:
        if not self.finished:
            self.emit()
            self.finished = True

    @property
    def outputs(self) -> int:
        return len(self.gaps) - (1 if self.finished else 0)

    @property
    def max_gap(self) -> int:
        return max(self.gaps, default=0)

    @property
    def mean_gap(self) -> float:
        return sum(self.gaps) / len(self.gaps) if self.gaps else 0.0

    def __repr__(self):
        return f"DelayMeter(work={self.work}, outputs={self.outputs}, max_gap={self.max_gap})"


def metered(source: Iterable[T], meter: DelayMeter) -> Iterator[T]:
    """Pass items through, logging one gap per item and a terminal gap."""
    for item in source:
        meter.tick()
        meter.emit()
        yield item
    meter.finish()


def run_metered(make: Callable[[DelayMeter], Iterable[T]]) -> tuple[list[T], DelayMeter]:
    """Drain ``make(meter)`` under a fresh meter; return outputs and the meter."""
    meter = DelayMeter()
    out = list(metered(make(meter), meter))
    return out, meter


class DuplicateBoundError(RuntimeError):
    """A source broke its promised duplicate bound or delay."""


class DedupBuffer:
    """Turns an enumerator with at most ``alpha`` copies per element into a
    distinct-element enumerator.

    The source's own work is timed on ``meter`` (work done inside
    ``next(source)``); every ``alpha * delta`` units of that clock closes an
    epoch, and the oldest buffered element is released.  Provided the source
    really keeps its inter-output work at most ``delta``, the buffer is
    non-empty at every epoch end.

    With ``delta=None`` an epoch instead closes after every ``alpha`` source
    outputs.  The same counting argument keeps the buffer non-empty without
    knowing the source's delay, and the output delay is still at most
    ``alpha`` source gaps plus the probes.

    ``strict`` turns a broken promise (an element seen more than ``alpha``
    times, or an empty buffer at an epoch end) into
    :class:`DuplicateBoundError`.
    """

    def __init__(self, alpha: int, delta: float | None, meter: DelayMeter,
                 key: Callable[[T], Hashable] | None = None, strict: bool = True):
        if alpha < 1 or (delta is not None and delta <= 0):
            raise ValueError("alpha must be >= 1 and delta > 0")
        self.alpha = alpha
        self.delta = delta
        self.epoch_len = alpha * delta if delta is not None else None
        self.meter = meter
        self.key = key or (lambda x: x)
        self.strict = strict
        self.pending: deque = deque()
        self.seen: Counter = Counter()
        self.emitted = 0
        self.epochs = 0
        self.source_work = 0
        self.source_outputs = 0
        self.empty_epochs = 0

    def _found(self, item) -> None:
        k = self.key(item)
        self.meter.tick(log_cost(len(self.seen) + 1))
        c = self.seen[k] = self.seen[k] + 1
        if c == 1:
            self.pending.append(item)
        elif c > self.alpha and self.strict:
            raise DuplicateBoundError(f"element {k!r} produced {c} > alpha={self.alpha} times")

    def epochs_of(self, source: Iterable[T]) -> Iterator[T]:
        """Run ``source`` to completion, yielding one element per closed epoch.

        Elements still buffered afterwards stay in :attr:`pending`.
        """
        it = iter(source)
        meter = self.meter
        while True:
            before = meter.work
            try:
                item = next(it)
            except StopIteration:
                self.source_work += meter.work - before
                break
            self.source_work += meter.work - before
            self.source_outputs += 1
            self._found(item)
            while self._epoch_over():
                self.epochs += 1
                if self.pending:
                    self.emitted += 1
                    yield self.pending.popleft()
                else:
                    self.empty_epochs += 1
                    if self.strict:
                        raise DuplicateBoundError(
                            f"buffer empty at end of epoch {self.epochs}; source slower than delta")

    def _epoch_over(self) -> bool:
        if self.epoch_len is None:
            return self.source_outputs >= (self.epochs + 1) * self.alpha
        return self.source_work >= (self.epochs + 1) * self.epoch_len

    def flush(self) -> Iterator[T]:
        while self.pending:
            self.meter.tick()
            self.emitted += 1
            yield self.pending.popleft()

    @property
    def distinct(self) -> int:
        return len(self.seen)


def dedup_enumerate(source: Iterable[T], alpha: int, delta: float | None, meter: DelayMeter,
                    key: Callable[[T], Hashable] | None = None,
                    strict: bool = True) -> Iterator[T]:
    """Distinct elements of ``source``, each exactly once, with bounded delay."""
    buf = DedupBuffer(alpha, delta, meter, key=key, strict=strict)
    yield from buf.epochs_of(source)
    yield from buf.flush()


def delay_bound(alpha: int, delta: float, size: int, c: float) -> float:
    """``c * alpha * delta * (1 + log2 size)`` -- the dedup output delay budget."""
    return c * alpha * delta * log_cost(size)
