"""Broker entity: submits a workload on behalf of a user and collects results."""

from __future__ import annotations

from collections import defaultdict

from ..errors import ProtocolError, WorkloadError
from ..kernel import Event, SimEntity, Simulation
from .resources import Cloudlet, CloudletStatus, Vm
from .tags import Tag


class Broker(SimEntity):
    """Requests VMs at t=0, then dispatches each VM's cloudlets once it is placed.

    Datacenters are tried in order; a VM rejected by all of them fails its
    cloudlets (no retry, no queuing).
    """

    def __init__(self, name: str = "", properties: dict | None = None):
        self.name = name
        self.properties = dict(properties or {})
        self.vms: list[Vm] = []
        self.cloudlets: list[Cloudlet] = []
        self.datacenter_ids: list[int] = []
        self.results: list[Cloudlet] = []
        self._attempt: dict[int, int] = {}
        self._by_vm: dict[int, list[Cloudlet]] = defaultdict(list)
        self._created: dict[int, tuple[Vm, int]] = {}
        self._acks = 0

    def submit(self, vms: list[Vm], cloudlets: list[Cloudlet], datacenter_ids: list[int]) -> None:
        ids = [vm.id for vm in vms]
        if len(set(ids)) != len(ids):
            raise WorkloadError(f"broker {self.name!r}: duplicate VM ids {ids}")
        cl_ids = [cl.id for cl in cloudlets]
        if len(set(cl_ids)) != len(cl_ids):
            raise WorkloadError(f"broker {self.name!r}: duplicate cloudlet ids {cl_ids}")
        for cl in cloudlets:
            if cl.vm_id not in ids:
                raise WorkloadError(f"cloudlet {cl.id} references unknown VM {cl.vm_id}")
        if vms and not datacenter_ids:
            raise WorkloadError(f"broker {self.name!r} has VMs but no datacenter")
        self.vms = list(vms)
        self.cloudlets = list(cloudlets)
        self.datacenter_ids = list(datacenter_ids)
        for cl in cloudlets:
            self._by_vm[cl.vm_id].append(cl)

    @property
    def done(self) -> bool:
        return len(self.results) == len(self.cloudlets)

    def start(self, sim: Simulation) -> None:
        if self.vms:
            sim.send_self(self.entity_id, 0.0, Tag.BROKER_START)

    def process(self, event: Event, sim: Simulation) -> None:
        if event.tag == Tag.BROKER_START:
            for vm in self.vms:
                self._attempt[vm.id] = 0
                sim.schedule(self.entity_id, self.datacenter_ids[0], 0.0, Tag.VM_CREATE, vm)
        elif event.tag == Tag.VM_CREATE_ACK:
            self._on_ack(event, sim)
        elif event.tag == Tag.CLOUDLET_RETURN:
            self._resolve(event.payload, sim)
        else:
            raise ProtocolError(f"broker {self.name!r} got unexpected tag {event.tag}")

    def _on_ack(self, event: Event, sim: Simulation) -> None:
        ack = event.payload
        vm: Vm = ack["vm"]
        if ack["success"]:
            self._created[vm.id] = (vm, event.source)
            for cl in self._by_vm[vm.id]:
                sim.schedule(self.entity_id, event.source, 0.0, Tag.CLOUDLET_SUBMIT, cl)
            return
        nxt = self._attempt[vm.id] + 1
        if nxt < len(self.datacenter_ids):
            self._attempt[vm.id] = nxt
            sim.schedule(self.entity_id, self.datacenter_ids[nxt], 0.0, Tag.VM_CREATE, vm)
            return
        for cl in self._by_vm[vm.id]:
            cl.status = CloudletStatus.FAILED
            self._resolve(cl, sim)

    def _resolve(self, cl: Cloudlet, sim: Simulation) -> None:
        self.results.append(cl)
        if self.done:
            for vm, dc in self._created.values():
                sim.schedule(self.entity_id, dc, 0.0, Tag.VM_DESTROY, vm)
            self._created.clear()


def broker_run(datacenter, vms: list[Vm], cloudlets: list[Cloudlet]) -> list[Cloudlet]:
    """Run one broker against one datacenter in a fresh simulation."""
    sim = Simulation()
    dc_id = sim.register_entity(datacenter)
    broker = Broker("broker")
    sim.register_entity(broker)
    broker.submit(vms, cloudlets, [dc_id])
    sim.run()
    return broker.results
