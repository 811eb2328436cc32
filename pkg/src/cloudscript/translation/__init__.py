"""Script-to-simulation translation: resolvers, handlers, extensions."""

from .catalog import ExtensionRef, ExtensionsCatalog
from .handlers import (
    BrokerHandler,
    DatacenterHandler,
    GlobalZoneHandler,
    HostHandler,
    RegionalZoneHandler,
    WorkloadHandler,
)
from .manager import FrameworkConfig, SimulationManager, builtin_catalog, simulation_manager_run
from .registry import ElementHandler, HandlerRegistry, TranslationContext
from .resolver import EnvironmentResolver, Scenario, ScenarioManager

__all__ = [
    "BrokerHandler",
    "DatacenterHandler",
    "ElementHandler",
    "EnvironmentResolver",
    "ExtensionRef",
    "ExtensionsCatalog",
    "FrameworkConfig",
    "GlobalZoneHandler",
    "HandlerRegistry",
    "HostHandler",
    "RegionalZoneHandler",
    "Scenario",
    "ScenarioManager",
    "SimulationManager",
    "TranslationContext",
    "WorkloadHandler",
    "builtin_catalog",
    "simulation_manager_run",
]
