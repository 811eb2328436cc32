"""Public contracts for extension authors.

Extensions must import framework types from this module only; everything
else is internal and may change between releases.
"""

from .cloud import (
    Broker,
    Cloudlet,
    CloudletScheduler,
    CloudletSchedulerTimeShared,
    CloudletStatus,
    Datacenter,
    DatacenterCharacteristics,
    Host,
    Pe,
    Vm,
    VmAllocationPolicy,
    VmAllocationPolicySimple,
)
from .kernel import Event, SimEntity, Simulation
from .schema import ComponentNode
from .translation.catalog import ExtensionRef, ExtensionsCatalog
from .translation.registry import ElementHandler, TranslationContext

__all__ = [
    "Broker",
    "Cloudlet",
    "CloudletScheduler",
    "CloudletSchedulerTimeShared",
    "CloudletStatus",
    "ComponentNode",
    "Datacenter",
    "DatacenterCharacteristics",
    "ElementHandler",
    "Event",
    "ExtensionRef",
    "ExtensionsCatalog",
    "Host",
    "Pe",
    "SimEntity",
    "Simulation",
    "TranslationContext",
    "Vm",
    "VmAllocationPolicy",
    "VmAllocationPolicySimple",
]
