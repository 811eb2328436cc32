"""VM placement policies."""

from __future__ import annotations

from typing import Sequence

from .resources import Host, Vm


def worst_fit_allocate(vm: Vm, hosts: Sequence[Host]) -> int | None:
    """Pick the feasible host with the most unreserved PEs.

    Ties go to the lowest host id. Returns ``None`` when no host can take
    the VM's PEs, RAM, bandwidth and storage.
    """
    best = None
    for host in hosts:
        if not host.is_suitable_for(vm):
            continue
        if best is None or host.free_pes > best.free_pes or (
            host.free_pes == best.free_pes and host.id < best.id
        ):
            best = host
    return None if best is None else best.id


class VmAllocationPolicy:
    """Extension point for VM placement.

    Subclasses implement :meth:`allocate`. The datacenter performs the actual
    reservation and rejects any host choice that cannot fit the VM.
    """

    def __init__(self, properties: dict | None = None):
        self.properties = dict(properties or {})

    def allocate(self, vm: Vm, hosts: Sequence[Host]) -> int | None:
        raise NotImplementedError

    def deallocate(self, vm: Vm) -> None:
        pass


class VmAllocationPolicySimple(VmAllocationPolicy):
    """Default worst-fit policy."""

    def allocate(self, vm, hosts):
        return worst_fit_allocate(vm, hosts)
