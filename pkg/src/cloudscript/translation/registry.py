"""Element handler contract, handler registry and translation context."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..errors import BuildError, CloudScriptError, ExtensionError, ResolutionError
from ..kernel import Simulation
from ..schema import ComponentNode, SchemaDocument
from .catalog import ExtensionRef, ExtensionsCatalog


class ElementHandler:
    """Turns one script component into simulation entities.

    ``init`` receives the validated node, ``handle`` builds and returns the
    product. Child components are delegated through :meth:`handle_child`, so
    any handler in the tree can be swapped by name.
    """

    schemas: tuple[str, ...] = ()

    def __init__(self, properties: dict | None = None):
        self.properties = dict(properties or {})
        self.node: ComponentNode | None = None
        self.ctx: TranslationContext | None = None

    @classmethod
    def can_handle(cls, schema_name: str) -> bool:
        return schema_name in cls.schemas

    def init(self, node: ComponentNode, ctx: "TranslationContext") -> None:
        self.node = node
        self.ctx = ctx

    def handle(self) -> Any:
        raise NotImplementedError

    def handle_child(self, node: ComponentNode) -> Any:
        return self.ctx.handle(node)

    def materialize(self, ext_node: ComponentNode | None, default: str, args=()) -> Any:
        """Instantiate the variant named by ``ext_node`` (or ``default``) via the catalog."""
        ref = ExtensionRef.from_node(ext_node) if ext_node is not None else ExtensionRef(default)
        try:
            return self.ctx.catalog.materialize(ref, args)
        except ExtensionError as exc:
            if not exc.path:
                exc.path = ext_node.path + "/className" if ext_node is not None else self.node.path
            raise


@dataclass
class _Entry:
    class_name: str
    schemas: frozenset[str] | None


class HandlerRegistry:
    """Ordered handler list; the first entry accepting a schema wins."""

    def __init__(self, catalog: ExtensionsCatalog):
        self.catalog = catalog
        self._entries: list[_Entry] = []

    def register(self, class_name: str, schemas=None) -> None:
        """Append a handler. ``schemas`` pins the accepted names, else ``can_handle`` decides."""
        self.catalog.factory(class_name)
        self._entries.append(_Entry(class_name, frozenset(schemas) if schemas is not None else None))

    def register_first(self, class_name: str, schemas=None) -> None:
        self.catalog.factory(class_name)
        self._entries.insert(0, _Entry(class_name, frozenset(schemas) if schemas is not None else None))

    @property
    def names(self) -> list[str]:
        return [e.class_name for e in self._entries]

    def find(self, schema_name: str) -> str:
        for entry in self._entries:
            if entry.schemas is not None:
                if schema_name in entry.schemas:
                    return entry.class_name
                continue
            accepts = getattr(self.catalog.factory(entry.class_name), "can_handle", None)
            if accepts is not None and accepts(schema_name):
                return entry.class_name
        raise ResolutionError(
            f"no element handler for schema {schema_name!r}; known handlers: {', '.join(self.names) or '(none)'}"
        )

    def resolve(self, schema_name: str) -> ElementHandler:
        return self.catalog.materialize(self.find(schema_name))


@dataclass
class TranslationContext:
    sim: Simulation
    catalog: ExtensionsCatalog
    registry: HandlerRegistry
    schema_doc: SchemaDocument
    datacenters: list = field(default_factory=list)
    brokers: list = field(default_factory=list)
    next_host_id: int = 0

    def handle(self, node: ComponentNode) -> Any:
        handler = self.registry.resolve(node.schema_name)
        handler.init(node, self)
        try:
            return handler.handle()
        except CloudScriptError:
            raise
        except Exception as exc:
            raise BuildError(node.path, exc) from exc

    def add_datacenter(self, dc) -> int:
        dc.datacenter_id = len(self.datacenters)
        self.datacenters.append(dc)
        return self.sim.register_entity(dc)

    def add_broker(self, broker) -> int:
        self.brokers.append(broker)
        return self.sim.register_entity(broker)
