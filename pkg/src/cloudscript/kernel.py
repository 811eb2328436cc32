"""Single-clock discrete-event engine.

Entities exchange timestamped events through a future-event list (FEL) ordered
by ``(time, seq)``, where ``seq`` is a global insertion counter. The clock only
ever jumps forward to the timestamp of the next event.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Protocol

from .errors import LifecycleError, UnknownEntityError


class SimState(enum.Enum):
    CREATED = "created"
    RUNNING = "running"
    FINISHED = "finished"


@dataclass(order=True, frozen=True)
class Event:
    time: float
    seq: int
    source: int = field(compare=False)
    target: int = field(compare=False)
    tag: int = field(compare=False)
    payload: Any = field(default=None, compare=False)


class Entity(Protocol):
    def process(self, event: Event, sim: "Simulation") -> None: ...


class SimEntity:
    """Convenience base class for entities.

    ``start`` is called once, in registration order, when the run begins.
    """

    entity_id: int = -1
    name: str = ""

    def start(self, sim: "Simulation") -> None:
        pass

    def process(self, event: Event, sim: "Simulation") -> None:
        raise NotImplementedError


class Simulation:
    """One simulation instance: clock, FEL and entity table.

    Not thread-safe; separate instances share nothing and can run in
    parallel threads.
    """

    def __init__(self) -> None:
        self.clock = 0.0
        self.state = SimState.CREATED
        self._fel: list[tuple[float, int, Event]] = []
        self._seq = itertools.count()
        self._ids = itertools.count()
        self.entities: dict[int, Entity] = {}
        self.dispatched = 0
        self._cancelled: set[int] = set()
        # Optional observer called with every event right before delivery.
        self.on_dispatch: Callable[[Event], None] | None = None

    def register_entity(self, entity: Entity) -> int:
        if self.state is not SimState.CREATED:
            raise LifecycleError(f"cannot register entities in state {self.state.value}")
        eid = next(self._ids)
        self.entities[eid] = entity
        try:
            entity.entity_id = eid  # type: ignore[attr-defined]
        except AttributeError:
            pass
        return eid

    def schedule(self, source: int, target: int, delay: float, tag: int, payload: Any = None) -> Event:
        if not delay >= 0:
            raise ValueError(f"delay must be non-negative, got {delay!r}")
        return self.schedule_at(source, target, self.clock + delay, tag, payload)

    def schedule_at(self, source: int, target: int, time: float, tag: int, payload: Any = None) -> Event:
        """Schedule at an absolute time, avoiding ``clock + (t - clock)`` rounding."""
        if not time >= self.clock:
            raise ValueError(f"cannot schedule in the past: {time!r} < clock {self.clock!r}")
        if target not in self.entities:
            raise UnknownEntityError(f"unknown target entity {target}")
        seq = next(self._seq)
        ev = Event(time, seq, source, target, tag, payload)
        # Plain tuples keep heap comparisons cheap.
        heapq.heappush(self._fel, (time, seq, ev))
        return ev

    def send_self(self, entity_id: int, delay: float, tag: int, payload: Any = None) -> Event:
        return self.schedule(entity_id, entity_id, delay, tag, payload)

    def cancel(self, event: Event) -> None:
        """Withdraw a scheduled event; it is discarded without touching the clock."""
        self._cancelled.add(event.seq)

    @property
    def pending(self) -> int:
        return len(self._fel) - len(self._cancelled)

    def run(self) -> float:
        """Dispatch events until the FEL is empty; return the final clock."""
        if self.state is not SimState.CREATED:
            raise LifecycleError(f"run() called in state {self.state.value}")
        self.state = SimState.RUNNING
        try:
            for entity in list(self.entities.values()):
                start = getattr(entity, "start", None)
                if start is not None:
                    start(self)
            while self._fel:
                _, _, ev = heapq.heappop(self._fel)
                if ev.seq in self._cancelled:
                    self._cancelled.discard(ev.seq)
                    continue
                self.clock = ev.time
                if self.on_dispatch is not None:
                    self.on_dispatch(ev)
                self.dispatched += 1
                self.entities[ev.target].process(ev, self)
        finally:
            self.state = SimState.FINISHED
        return self.clock
