"""Capacity-bearing resources: PEs, hosts, VMs and cloudlets.

Units: MI for instruction counts, MIPS for rates, seconds, MB, Mbps.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Pe:
    id: int
    mips: float

    def __post_init__(self):
        if not self.mips > 0:
            raise ValueError(f"PE mips must be positive, got {self.mips}")


@dataclass
class DatacenterCharacteristics:
    arch: str = "x86"
    os: str = "Linux"
    vmm: str = "Xen"
    timezone: float = 0.0
    cost_per_sec: float = 0.0
    cost_per_mem: float = 0.0
    cost_per_storage: float = 0.0
    cost_per_bw: float = 0.0

    def __post_init__(self):
        for name in ("cost_per_sec", "cost_per_mem", "cost_per_storage", "cost_per_bw"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass
class Vm:
    id: int
    mips: float
    num_pes: int = 1
    ram_mb: int = 0
    bw_mbps: int = 0
    size_mb: int = 0
    bound_host: int | None = None
    datacenter_id: int | None = None

    def __post_init__(self):
        if not self.mips > 0:
            raise ValueError(f"VM {self.id}: mips must be positive")
        if self.num_pes < 1:
            raise ValueError(f"VM {self.id}: numPes must be >= 1")
        if min(self.ram_mb, self.bw_mbps, self.size_mb) < 0:
            raise ValueError(f"VM {self.id}: resource demands must be non-negative")

    @property
    def total_mips(self) -> float:
        """Capacity granted in full once the VM is placed."""
        return self.mips * self.num_pes


@dataclass
class Host:
    id: int
    pes: list[Pe]
    ram_mb: int = 0
    bw_mbps: int = 0
    storage_mb: int = 0
    allocated: dict[int, Vm] = field(default_factory=dict)

    def __post_init__(self):
        if not self.pes:
            raise ValueError(f"host {self.id} has no PEs")
        if min(self.ram_mb, self.bw_mbps, self.storage_mb) < 0:
            raise ValueError(f"host {self.id}: capacities must be non-negative")

    @classmethod
    def uniform(cls, id: int, num_pes: int, mips: float, ram_mb=0, bw_mbps=0, storage_mb=0) -> "Host":
        return cls(id, [Pe(i, mips) for i in range(num_pes)], ram_mb, bw_mbps, storage_mb)

    @property
    def free_pes(self) -> int:
        return len(self.pes) - sum(vm.num_pes for vm in self.allocated.values())

    @property
    def free_ram(self) -> int:
        return self.ram_mb - sum(vm.ram_mb for vm in self.allocated.values())

    @property
    def free_bw(self) -> int:
        return self.bw_mbps - sum(vm.bw_mbps for vm in self.allocated.values())

    @property
    def free_storage(self) -> int:
        return self.storage_mb - sum(vm.size_mb for vm in self.allocated.values())

    def is_suitable_for(self, vm: Vm) -> bool:
        return (
            self.free_pes >= vm.num_pes
            and self.free_ram >= vm.ram_mb
            and self.free_bw >= vm.bw_mbps
            and self.free_storage >= vm.size_mb
        )

    def reserve(self, vm: Vm) -> None:
        if vm.id in self.allocated:
            raise ValueError(f"VM {vm.id} already placed on host {self.id}")
        if not self.is_suitable_for(vm):
            raise ValueError(f"host {self.id} cannot fit VM {vm.id}")
        self.allocated[vm.id] = vm
        vm.bound_host = self.id

    def release(self, vm: Vm) -> None:
        if self.allocated.pop(vm.id, None) is not None:
            vm.bound_host = None


class CloudletStatus(enum.Enum):
    QUEUED = "QUEUED"
    RUNNING = "RUNNING"
    SUCCESS = "SUCCESS"
    FAILED = "FAILED"


@dataclass
class Cloudlet:
    id: int
    length_mi: float
    num_pes: int = 1
    vm_id: int | None = None
    remaining_mi: float = field(init=False)
    status: CloudletStatus = CloudletStatus.QUEUED
    start_time: float | None = None
    finish_time: float | None = None
    datacenter_id: int | None = None

    def __post_init__(self):
        if not self.length_mi > 0:
            raise ValueError(f"cloudlet {self.id}: length must be positive")
        if self.num_pes < 1:
            raise ValueError(f"cloudlet {self.id}: numPes must be >= 1")
        self.remaining_mi = float(self.length_mi)

    @property
    def exec_time(self) -> float | None:
        if self.finish_time is None or self.start_time is None:
            return None
        return self.finish_time - self.start_time
