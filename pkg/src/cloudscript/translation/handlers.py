"""Default element handlers, one per canonical script component."""

from __future__ import annotations

from dataclasses import dataclass

from ..cloud import Cloudlet, DatacenterCharacteristics, Host, Vm
from .registry import ElementHandler

DEFAULT_DATACENTER = "org.cloudbus.cloudsim.Datacenter"
DEFAULT_ALLOCATION_POLICY = "org.cloudbus.cloudsim.VmAllocationPolicySimple"
DEFAULT_BROKER = "org.cloudbus.cloudsim.DatacenterBroker"


@dataclass
class BuiltZone:
    name: str
    datacenter: object
    broker: object


class GlobalZoneHandler(ElementHandler):
    schemas = ("GlobalDatacenterNetwork",)

    def handle(self):
        return [self.handle_child(zone) for zone in self.node["zones"]]


class RegionalZoneHandler(ElementHandler):
    schemas = ("Zone",)

    def handle(self):
        node = self.node
        datacenter = self.handle_child(node["datacenter"])
        dc_id = self.ctx.add_datacenter(datacenter)
        broker = self.handle_child(node["broker"])
        self.ctx.add_broker(broker)
        vms, cloudlets = ([], [])
        if node.get("workload") is not None:
            vms, cloudlets = self.handle_child(node["workload"])
        broker.submit(vms, cloudlets, [dc_id])
        return BuiltZone(node["name"], datacenter, broker)


class DatacenterHandler(ElementHandler):
    schemas = ("Datacenter",)

    def handle(self):
        node = self.node
        chars = node.get("characteristics")
        characteristics = DatacenterCharacteristics(
            arch=chars.get("arch", "x86"),
            os=chars.get("os", "Linux"),
            vmm=chars.get("vmm", "Xen"),
            timezone=chars.get("timezone", 0.0),
            cost_per_sec=chars.get("costPerSec", 0.0),
            cost_per_mem=chars.get("costPerMem", 0.0),
            cost_per_storage=chars.get("costPerStorage", 0.0),
            cost_per_bw=chars.get("costPerBw", 0.0),
        ) if chars is not None else DatacenterCharacteristics()

        self.ctx.next_host_id = 0
        hosts = []
        for host_node in node["hosts"]:
            hosts.extend(self.handle_child(host_node))

        policy = self.materialize(node.get("vmAllocationPolicy"), DEFAULT_ALLOCATION_POLICY)
        return self.materialize(
            node.get("variant"),
            DEFAULT_DATACENTER,
            [characteristics, hosts, policy, node.get("schedulingInterval", 0.0),
             node.get("storage", ""), node.get("name", "")],
        )


class HostHandler(ElementHandler):
    """Expands one host entry into ``copies`` identical hosts.

    Hosts without an explicit ``id`` are numbered sequentially within their
    datacenter; an explicit id numbers its copies ``id, id+1, ...``.
    """

    schemas = ("Host",)

    def handle(self):
        node = self.node
        copies = node.get("copies", 1)
        if copies < 1:
            raise ValueError(f"copies must be >= 1, got {copies}")
        base = node.get("id", self.ctx.next_host_id)
        self.ctx.next_host_id = max(self.ctx.next_host_id, base + copies)
        return [
            Host.uniform(
                base + k,
                node["pes"],
                node["mips"],
                ram_mb=node.get("ramMb", 0),
                bw_mbps=node.get("bwMbps", 0),
                storage_mb=node.get("storageMb", 0),
            )
            for k in range(copies)
        ]


class BrokerHandler(ElementHandler):
    schemas = ("Broker",)

    def handle(self):
        return self.materialize(self.node.get("variant"), DEFAULT_BROKER, [self.node["name"]])


class WorkloadHandler(ElementHandler):
    schemas = ("Workload",)

    def handle(self):
        vms = [
            Vm(v["id"], v["mips"], v.get("pes", 1), v.get("ramMb", 0), v.get("bwMbps", 0), v.get("sizeMb", 0))
            for v in self.node.get("vms") or []
        ]
        cloudlets = [
            Cloudlet(c["id"], c["lengthMi"], c.get("pes", 1), vm_id=c["vmId"])
            for c in self.node.get("cloudlets") or []
        ]
        return vms, cloudlets


DEFAULT_HANDLERS = {
    "cloudscript.handlers.GlobalZoneHandler": GlobalZoneHandler,
    "cloudscript.handlers.RegionalZoneHandler": RegionalZoneHandler,
    "cloudscript.handlers.DatacenterHandler": DatacenterHandler,
    "cloudscript.handlers.HostHandler": HostHandler,
    "cloudscript.handlers.BrokerHandler": BrokerHandler,
    "cloudscript.handlers.WorkloadHandler": WorkloadHandler,
}
