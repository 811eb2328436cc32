"""Simulation manager: drives a script from text to report."""

from __future__ import annotations

import configparser
import logging
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..cloud import Broker, Datacenter, VmAllocationPolicySimple
from ..errors import ConfigurationError, SimulationRuntimeError
from ..kernel import Simulation
from ..report import MonitoringSample, SimulationReport
from ..schema import SchemaDocument, load_schema
from .catalog import ExtensionsCatalog
from .handlers import DEFAULT_ALLOCATION_POLICY, DEFAULT_BROKER, DEFAULT_DATACENTER, DEFAULT_HANDLERS
from .registry import HandlerRegistry, TranslationContext
from .resolver import ROOT_ELEMENT, EnvironmentResolver, ScenarioManager

log = logging.getLogger(__name__)

ENVIRONMENT_RESOLVER = "cloudscript.translation.EnvironmentResolver"
SCENARIO_MANAGER = "cloudscript.translation.ScenarioManager"


def bundled_schema_text() -> str:
    return resources.files("cloudscript").joinpath("data/schemas.yaml").read_text(encoding="utf-8")


@dataclass
class FrameworkConfig:
    """Framework settings, usually read from a ``key = value`` config file.

    Recognized keys: ``schemaFile``, ``extensionsDir``, ``scriptFile``,
    ``rootElement``, ``environmentResolver``, ``scenarioManager`` and
    ``handlerOverride.<SchemaName>``.
    """

    schema_file: Path | None = None
    extensions_dir: Path | None = None
    script_file: Path | None = None
    root_element: str = ROOT_ELEMENT
    environment_resolver: str = ENVIRONMENT_RESOLVER
    scenario_manager: str = SCENARIO_MANAGER
    handler_overrides: dict[str, str] = field(default_factory=dict)

    _KEYS = {
        "schemaFile": "schema_file",
        "extensionsDir": "extensions_dir",
        "scriptFile": "script_file",
        "rootElement": "root_element",
        "environmentResolver": "environment_resolver",
        "scenarioManager": "scenario_manager",
    }

    @classmethod
    def parse(cls, text: str, base_dir: Path | None = None) -> "FrameworkConfig":
        parser = configparser.ConfigParser(interpolation=None, delimiters=("=",), comment_prefixes=("#", ";"))
        parser.optionxform = str
        try:
            parser.read_string("[config]\n" + text)
        except configparser.Error as exc:
            raise ConfigurationError(f"malformed config: {exc}") from exc
        cfg = cls()
        base = base_dir or Path.cwd()
        for key, value in parser["config"].items():
            if key.startswith("handlerOverride."):
                cfg.handler_overrides[key.split(".", 1)[1]] = value
            elif key in cls._KEYS:
                attr = cls._KEYS[key]
                if attr.endswith(("_file", "_dir")):
                    value = Path(value) if Path(value).is_absolute() else base / value
                setattr(cfg, attr, value)
            else:
                raise ConfigurationError(f"unknown config key {key!r}")
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "FrameworkConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
        return cls.parse(text, path.parent)


def builtin_catalog() -> ExtensionsCatalog:
    catalog = ExtensionsCatalog()
    catalog.register(DEFAULT_DATACENTER, Datacenter)
    catalog.register(DEFAULT_ALLOCATION_POLICY, VmAllocationPolicySimple)
    catalog.register(DEFAULT_BROKER, Broker)
    catalog.register(ENVIRONMENT_RESOLVER, EnvironmentResolver)
    catalog.register(SCENARIO_MANAGER, ScenarioManager)
    for name, cls in DEFAULT_HANDLERS.items():
        catalog.register(name, cls)
    return catalog


class SimulationManager:
    """Owns the framework state shared across runs: catalog, registry, schema.

    Construction performs startup (registering handlers and loading
    extensions); each :meth:`run` then parses, builds and simulates one
    script in a fresh kernel.
    """

    def __init__(self, config: FrameworkConfig | None = None):
        self.config = config or FrameworkConfig()
        if self.config.schema_file is not None and not Path(self.config.schema_file).is_file():
            raise ConfigurationError(f"schema file not found: {self.config.schema_file}")
        if self.config.extensions_dir is not None and not Path(self.config.extensions_dir).is_dir():
            raise ConfigurationError(f"extensions directory not found: {self.config.extensions_dir}")

        self.catalog = builtin_catalog()
        if self.config.extensions_dir is not None:
            self.catalog.load_directory(self.config.extensions_dir)
        self.catalog.freeze()

        self.registry = HandlerRegistry(self.catalog)
        for schema_name, class_name in self.config.handler_overrides.items():
            self.registry.register(class_name, [schema_name])
        for class_name in self.catalog.handler_names:
            self.registry.register(class_name)
        for class_name in DEFAULT_HANDLERS:
            self.registry.register(class_name)

        if self.config.schema_file is not None:
            text = Path(self.config.schema_file).read_text(encoding="utf-8")
        else:
            text = bundled_schema_text()
        self.schema_doc: SchemaDocument = load_schema(text)

    def run_file(self, script_path: str | Path | None = None) -> SimulationReport:
        path = script_path or self.config.script_file
        if path is None:
            raise ConfigurationError("no script given and no scriptFile configured")
        t0 = time.perf_counter()
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"cannot read script {path}: {exc}") from exc
        return self.run(text, started=t0)

    def run(self, script_text: str, started: float | None = None) -> SimulationReport:
        t0 = time.perf_counter() if started is None else started
        sim = Simulation()
        ctx = TranslationContext(sim, self.catalog, self.registry, self.schema_doc)
        resolver = self.catalog.materialize(self.config.environment_resolver, [self.config.root_element])
        root = resolver.parse(script_text, ctx)
        scenario = self.catalog.materialize(self.config.scenario_manager).build(root)
        overhead_ms = int((time.perf_counter() - t0) * 1000)
        log.debug("scenario built in %d ms: %d datacenter(s), %d broker(s)",
                  overhead_ms, len(scenario.datacenters), len(scenario.brokers))

        try:
            final_clock = sim.run()
        except Exception as exc:
            raise SimulationRuntimeError(sim.clock, exc) from exc

        cloudlets = [cl for b in scenario.brokers for cl in b.cloudlets]
        samples = [
            MonitoringSample(t, dc.report_id, vm_id, n)
            for dc in scenario.datacenters
            for (t, vm_id, n) in dc.monitoring_samples()
        ]
        return SimulationReport.from_cloudlets(cloudlets, final_clock, overhead_ms, samples)


def simulation_manager_run(script_text: str, config: FrameworkConfig | None = None) -> SimulationReport:
    return SimulationManager(config).run(script_text)
