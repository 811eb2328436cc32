"""Per-VM cloudlet schedulers."""

from __future__ import annotations

from .resources import Cloudlet, CloudletStatus
from ..errors import ConfigurationError

# A cloudlet within this fraction of its length counts as complete.
_REL_EPS = 1e-9


class CloudletScheduler:
    """Extension point: how a VM's capacity is shared among its cloudlets."""

    def submit(self, cloudlet: Cloudlet, now: float) -> None:
        raise NotImplementedError

    def update(self, now: float, vm_total_mips: float) -> float | None:
        """Advance work to ``now``; return the next completion estimate or None."""
        raise NotImplementedError

    def pop_finished(self) -> list[Cloudlet]:
        raise NotImplementedError

    @property
    def running(self) -> list[Cloudlet]:
        raise NotImplementedError


class CloudletSchedulerTimeShared(CloudletScheduler):
    """Every running cloudlet receives ``vm_total_mips / n`` MIPS.

    Progress is anchored at the last time the running set changed, so the
    completion estimate stays bit-identical across intermediate updates
    (periodic ticks do not accumulate rounding error).
    """

    def __init__(self) -> None:
        self._running: list[Cloudlet] = []
        self._anchor_time = 0.0
        self._anchor_remaining: dict[int, float] = {}
        self._finished: list[Cloudlet] = []
        self._mips: float | None = None

    @property
    def running(self) -> list[Cloudlet]:
        return list(self._running)

    def rate(self, vm_total_mips: float) -> float:
        return vm_total_mips / len(self._running) if self._running else 0.0

    def submit(self, cloudlet: Cloudlet, now: float) -> None:
        if self._mips is not None:
            self.update(now, self._mips)
        self._reanchor(now)
        cloudlet.status = CloudletStatus.RUNNING
        cloudlet.start_time = now
        self._running.append(cloudlet)
        self._anchor_remaining[id(cloudlet)] = cloudlet.remaining_mi

    def _reanchor(self, now: float) -> None:
        self._anchor_time = now
        self._anchor_remaining = {id(c): c.remaining_mi for c in self._running}

    def _completion(self, cl: Cloudlet, rate: float) -> float:
        return self._anchor_time + self._anchor_remaining[id(cl)] / rate

    def update(self, now: float, vm_total_mips: float) -> float | None:
        if not vm_total_mips > 0:
            raise ConfigurationError(f"VM capacity must be positive, got {vm_total_mips}")
        self._mips = vm_total_mips
        if not self._running:
            self._anchor_time = now
            return None
        rate = self.rate(vm_total_mips)
        elapsed = now - self._anchor_time
        done = []
        for cl in self._running:
            remaining = self._anchor_remaining[id(cl)] - rate * elapsed
            if self._completion(cl, rate) <= now or remaining <= _REL_EPS * cl.length_mi:
                remaining = 0.0
                done.append(cl)
            cl.remaining_mi = min(cl.remaining_mi, max(0.0, remaining))
        if done:
            for cl in done:
                self._running.remove(cl)
                cl.status = CloudletStatus.SUCCESS
                cl.finish_time = now
                self._finished.append(cl)
            self._reanchor(now)
        if not self._running:
            return None
        rate = self.rate(vm_total_mips)
        return min(self._completion(cl, rate) for cl in self._running)

    def pop_finished(self) -> list[Cloudlet]:
        out, self._finished = self._finished, []
        return out


def scheduler_update_time_shared(running: list[Cloudlet], vm_total_mips: float, now: float,
                                 since: float = 0.0) -> float | None:
    """Functional form: advance ``running`` from ``since`` to ``now`` under equal sharing.

    Finished cloudlets are marked in place and removed from ``running``.
    """
    sched = CloudletSchedulerTimeShared()
    sched._running = list(running)
    sched._anchor_time = since
    sched._anchor_remaining = {id(c): c.remaining_mi for c in running}
    nxt = sched.update(now, vm_total_mips)
    running[:] = sched.running
    return nxt
