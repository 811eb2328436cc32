"""Name-keyed factories for runtime-materialized variants.

Extensions are plain Python modules (or packages) dropped into an
extensions directory. Each one exposes ``register(catalog)`` and calls
:meth:`ExtensionsCatalog.register` / :meth:`ExtensionsCatalog.register_handler`
for whatever it contributes. Nothing in the core has to be edited or
rebuilt for a new variant to become addressable from a script.
"""

from __future__ import annotations

import hashlib
import importlib.util
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable

from ..errors import ConstructionError, ExtensionError, UnknownExtensionError

log = logging.getLogger(__name__)

Factory = Callable[..., Any]


@dataclass(frozen=True)
class ExtensionRef:
    class_name: str
    properties: dict[str, str] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if not self.class_name:
            raise ValueError("className must be non-empty")

    @classmethod
    def from_node(cls, node) -> "ExtensionRef":
        return cls(node["className"], dict(node.get("extensionProperties") or {}))


class ExtensionsCatalog:
    def __init__(self) -> None:
        self._factories: dict[str, Factory] = {}
        self.handler_names: list[str] = []
        self.loaded_modules: list[str] = []
        self._frozen = False

    def register(self, class_name: str, factory: Factory, *, replace: bool = False) -> None:
        if self._frozen:
            raise ExtensionError("catalog is frozen; extensions load only at startup", class_name)
        if not class_name:
            raise ValueError("extension name must be non-empty")
        if class_name in self._factories and not replace:
            raise ExtensionError(f"extension {class_name!r} is already registered", class_name)
        self._factories[class_name] = factory

    def register_handler(self, class_name: str, factory: Factory) -> None:
        """Register an element handler that takes precedence over the built-ins."""
        self.register(class_name, factory)
        self.handler_names.append(class_name)

    def __contains__(self, class_name: str) -> bool:
        return class_name in self._factories

    def names(self) -> list[str]:
        return sorted(self._factories)

    def factory(self, class_name: str) -> Factory:
        try:
            return self._factories[class_name]
        except KeyError:
            raise UnknownExtensionError(
                f"unknown extension {class_name!r}", class_name
            ) from None

    def materialize(self, ref: ExtensionRef | str, args: Iterable[Any] = (), **kwargs: Any) -> Any:
        """Build a fresh instance of ``ref``.

        Factories are called as ``factory(*args, properties=..., **kwargs)``.
        """
        if isinstance(ref, str):
            ref = ExtensionRef(ref)
        factory = self.factory(ref.class_name)
        try:
            return factory(*args, properties=dict(ref.properties), **kwargs)
        except ExtensionError:
            raise
        except Exception as exc:
            raise ConstructionError(
                f"cannot construct {ref.class_name!r}: {exc}", ref.class_name
            ) from exc

    def freeze(self) -> None:
        self._frozen = True

    def load_directory(self, directory: str | Path) -> list[str]:
        """Import every extension module in ``directory`` and let it register.

        Modules are loaded in sorted filename order so registration is
        deterministic.
        """
        directory = Path(directory)
        if not directory.is_dir():
            raise ExtensionError(f"extensions directory not found: {directory}")
        loaded = []
        for entry in sorted(directory.iterdir()):
            if entry.name.startswith(("_", ".")):
                continue
            if entry.is_file() and entry.suffix == ".py":
                target, search = entry, None
            elif entry.is_dir() and (entry / "__init__.py").is_file():
                target, search = entry / "__init__.py", [str(entry)]
            else:
                continue
            module = _import_extension(entry.stem if entry.is_file() else entry.name, target, search)
            register = getattr(module, "register", None)
            if register is None:
                raise ExtensionError(f"extension module {entry} has no register(catalog) function")
            register(self)
            loaded.append(module.__name__)
            log.debug("loaded extension module %s from %s", module.__name__, entry)
        self.loaded_modules.extend(loaded)
        return loaded


def _import_extension(stem: str, path: Path, search: list[str] | None):
    # Keyed by path so the same artifact is imported once per process.
    digest = hashlib.sha1(str(path.resolve()).encode()).hexdigest()[:10]
    name = f"cloudscript_ext_{stem}_{digest}"
    if name in sys.modules:
        return sys.modules[name]
    spec = importlib.util.spec_from_file_location(name, path, submodule_search_locations=search)
    if spec is None or spec.loader is None:
        raise ExtensionError(f"cannot import extension {path}")
    module = importlib.util.module_from_spec(spec)
    sys.modules[name] = module
    try:
        spec.loader.exec_module(module)
    except Exception as exc:
        del sys.modules[name]
        raise ExtensionError(f"failed to import extension {path}: {exc}") from exc
    return module
