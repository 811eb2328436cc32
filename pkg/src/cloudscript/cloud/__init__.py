"""Simulated cloud entities and their default policies."""

from .allocation import VmAllocationPolicy, VmAllocationPolicySimple, worst_fit_allocate
from .broker import Broker
from .datacenter import Datacenter
from .resources import Cloudlet, CloudletStatus, DatacenterCharacteristics, Host, Pe, Vm
from .scheduler import CloudletScheduler, CloudletSchedulerTimeShared
from .tags import Tag

__all__ = [
    "Broker",
    "Cloudlet",
    "CloudletScheduler",
    "CloudletSchedulerTimeShared",
    "CloudletStatus",
    "Datacenter",
    "DatacenterCharacteristics",
    "Host",
    "Pe",
    "Tag",
    "Vm",
    "VmAllocationPolicy",
    "VmAllocationPolicySimple",
    "worst_fit_allocate",
]
