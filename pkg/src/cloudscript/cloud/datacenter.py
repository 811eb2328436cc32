"""Datacenter entity: VM placement and cloudlet progress."""

from __future__ import annotations

import math
from typing import Callable

from ..errors import ConfigurationError, ProtocolError
from ..kernel import Event, SimEntity, Simulation
from .allocation import VmAllocationPolicy, VmAllocationPolicySimple
from .resources import Cloudlet, CloudletStatus, DatacenterCharacteristics, Host, Vm
from .scheduler import CloudletScheduler, CloudletSchedulerTimeShared
from .tags import Tag


class Datacenter(SimEntity):
    """A set of hosts behind one VM allocation policy.

    Subclasses may override :meth:`update_cloudlet_processing`, which runs on
    every cloudlet submission, every completion estimate and, when
    ``scheduling_interval > 0``, on a periodic grid while work remains.
    """

    def __init__(
        self,
        characteristics: DatacenterCharacteristics | None = None,
        hosts: list[Host] | None = None,
        vm_allocation_policy: VmAllocationPolicy | None = None,
        scheduling_interval: float = 0.0,
        storage: str = "",
        name: str = "",
        properties: dict | None = None,
    ):
        if scheduling_interval < 0:
            raise ValueError("schedulingInterval must be non-negative")
        self.characteristics = characteristics or DatacenterCharacteristics()
        self.hosts = list(hosts or [])
        ids = [h.id for h in self.hosts]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate host ids in datacenter {name!r}: {ids}")
        self.vm_allocation_policy = vm_allocation_policy or VmAllocationPolicySimple()
        self.scheduling_interval = float(scheduling_interval)
        self.storage = storage
        self.name = name
        self.properties = dict(properties or {})
        self.datacenter_id: int | None = None
        self.scheduler_factory: Callable[[], CloudletScheduler] = CloudletSchedulerTimeShared
        self.vms: dict[int, Vm] = {}
        self.sim: Simulation | None = None
        self._schedulers: dict[int, CloudletScheduler] = {}
        self._owners: dict[int, int] = {}
        self._next_update: Event | None = None
        self.update_times: list[float] = []
        # (vm_id, host_id or None) for every placement attempt, kept after VMs are destroyed.
        self.placements: list[tuple[int, int | None]] = []

    @property
    def report_id(self) -> int:
        return self.datacenter_id if self.datacenter_id is not None else self.entity_id

    def host(self, host_id: int) -> Host:
        for h in self.hosts:
            if h.id == host_id:
                return h
        raise KeyError(host_id)

    def running_cloudlets(self, vm_id: int) -> list[Cloudlet]:
        sched = self._schedulers.get(vm_id)
        return sched.running if sched is not None else []

    def monitoring_samples(self) -> list[tuple[float, int, int]]:
        """(time, vm_id, running_cloudlets) samples; empty unless a variant records them."""
        return []

    def start(self, sim: Simulation) -> None:
        self.sim = sim

    def process(self, event: Event, sim: Simulation) -> None:
        self.sim = sim
        if event.tag == Tag.VM_CREATE:
            self._create_vm(event)
        elif event.tag == Tag.CLOUDLET_SUBMIT:
            self._submit_cloudlet(event)
        elif event.tag == Tag.DC_UPDATE:
            self._next_update = None
            self.update_cloudlet_processing(sim.clock)
        elif event.tag == Tag.VM_DESTROY:
            self._destroy_vm(event.payload)
        else:
            raise ProtocolError(f"datacenter {self.name!r} got unexpected tag {event.tag}")

    def process_vm_create(self, vm: Vm) -> int | None:
        """Place ``vm`` through the policy; return the host id or None."""
        if vm.id in self.vms:
            raise ProtocolError(f"duplicate VM id {vm.id} in datacenter {self.name!r}")
        host_id = self.vm_allocation_policy.allocate(vm, self.hosts)
        if host_id is None:
            self.placements.append((vm.id, None))
            return None
        try:
            host = self.host(host_id)
        except KeyError:
            raise ConfigurationError(
                f"{type(self.vm_allocation_policy).__name__} returned unknown host {host_id}"
            ) from None
        if not host.is_suitable_for(vm):
            raise ConfigurationError(
                f"{type(self.vm_allocation_policy).__name__} placed VM {vm.id} "
                f"on host {host_id} which cannot fit it"
            )
        host.reserve(vm)
        self.placements.append((vm.id, host_id))
        vm.datacenter_id = self.report_id
        self.vms[vm.id] = vm
        self._schedulers[vm.id] = self.scheduler_factory()
        return host_id

    def _create_vm(self, event: Event) -> None:
        vm = event.payload
        host_id = self.process_vm_create(vm)
        self.sim.schedule(
            self.entity_id,
            event.source,
            0.0,
            Tag.VM_CREATE_ACK,
            {"vm": vm, "success": host_id is not None, "host_id": host_id,
             "datacenter_id": self.report_id},
        )

    def _destroy_vm(self, vm: Vm) -> None:
        if self.vms.pop(vm.id, None) is None:
            return
        sched = self._schedulers.pop(vm.id)
        for cl in sched.running:
            cl.status = CloudletStatus.FAILED
        self.host(vm.bound_host).release(vm)
        self.vm_allocation_policy.deallocate(vm)

    def _submit_cloudlet(self, event: Event) -> None:
        cl: Cloudlet = event.payload
        now = self.sim.clock
        cl.datacenter_id = self.report_id
        sched = self._schedulers.get(cl.vm_id)
        if sched is None:
            cl.status = CloudletStatus.FAILED
            self.sim.schedule(self.entity_id, event.source, 0.0, Tag.CLOUDLET_RETURN, cl)
            return
        self._owners[id(cl)] = event.source
        sched.submit(cl, now)
        self.update_cloudlet_processing(now)

    def update_cloudlet_processing(self, now: float) -> None:
        """Advance every VM's cloudlets to ``now`` and schedule the next update."""
        self.update_times.append(now)
        next_time = None
        busy = False
        for vm_id, vm in self.vms.items():
            sched = self._schedulers[vm_id]
            estimate = sched.update(now, vm.total_mips)
            for cl in sched.pop_finished():
                owner = self._owners.pop(id(cl))
                self.sim.schedule(self.entity_id, owner, 0.0, Tag.CLOUDLET_RETURN, cl)
            if estimate is not None:
                busy = True
                next_time = estimate if next_time is None else min(next_time, estimate)
        if busy and self.scheduling_interval > 0:
            tick = self._next_tick(now)
            next_time = tick if next_time is None else min(next_time, tick)
        self._schedule_update(now, next_time)

    def _next_tick(self, now: float) -> float:
        # Ticks sit on a k * interval grid so they never drift.
        k = math.floor(now / self.scheduling_interval) + 1
        while k * self.scheduling_interval <= now:
            k += 1
        return k * self.scheduling_interval

    def _schedule_update(self, now: float, when: float | None) -> None:
        pending = self._next_update
        if when is None:
            if pending is not None:
                self.sim.cancel(pending)
                self._next_update = None
            return
        if pending is not None:
            if pending.time <= when:
                return
            self.sim.cancel(pending)
        self._next_update = self.sim.schedule_at(self.entity_id, self.entity_id, when, Tag.DC_UPDATE)
