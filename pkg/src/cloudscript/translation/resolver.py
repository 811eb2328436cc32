"""Environment resolver and scenario manager."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BuildError, CloudScriptError, LifecycleError, ScriptValidationError
from ..schema import MISSING_REQUIRED, TYPE_MISMATCH, ValidationIssue, load_script, validate_component
from .registry import ElementHandler, TranslationContext

ROOT_ELEMENT = "GlobalDatacenterNetwork"


class EnvironmentResolver:
    """Parses a script into its root component and binds the root handler.

    The script's top-level mapping must contain the root element. Every
    other top-level key is a free-form block for YAML anchors and is only
    validated where it is aliased into the root tree.
    """

    def __init__(self, root_element: str = ROOT_ELEMENT, properties: dict | None = None):
        self.root_element = root_element

    def parse(self, script_text: str, ctx: TranslationContext) -> ElementHandler:
        data = load_script(script_text)
        root = self.root_element
        if not isinstance(data, dict):
            raise ScriptValidationError(
                [ValidationIssue("/", TYPE_MISMATCH, "script must be a mapping at top level")]
            )
        if root not in data:
            raise ScriptValidationError(
                [ValidationIssue(f"/{root}", MISSING_REQUIRED, f"script has no root element {root!r}")]
            )
        node, issues = validate_component(data[root], root, ctx.schema_doc, f"/{root}")
        if issues:
            raise ScriptValidationError(issues)
        handler = ctx.registry.resolve(root)
        handler.init(node, ctx)
        return handler


@dataclass
class Scenario:
    product: object
    datacenters: list = field(default_factory=list)
    brokers: list = field(default_factory=list)


class ScenarioManager:
    """Builds the scenario by running the root handler's recursive ``handle()``."""

    def __init__(self, properties: dict | None = None):
        self.properties = dict(properties or {})

    def build(self, root: ElementHandler) -> Scenario:
        if root.node is None:
            raise LifecycleError("root handler must be initialized before build()")
        ctx = root.ctx
        try:
            product = root.handle()
        except CloudScriptError:
            raise
        except Exception as exc:
            raise BuildError(root.node.path, exc) from exc
        return Scenario(product, list(ctx.datacenters), list(ctx.brokers))
