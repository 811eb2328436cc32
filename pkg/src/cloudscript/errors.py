"""Exception hierarchy shared by every layer of the framework."""

from __future__ import annotations


class CloudScriptError(Exception):
    """Base class for all framework errors."""


class LifecycleError(CloudScriptError):
    """An operation was attempted in the wrong simulation state."""


class UnknownEntityError(CloudScriptError, LookupError):
    """An event was addressed to an entity that was never registered."""


class ConfigurationError(CloudScriptError):
    """Invalid run configuration or a policy/scheduler misbehaving at runtime."""


class ProtocolError(CloudScriptError):
    """An entity received a message that violates the simulation protocol."""


class SchemaError(CloudScriptError):
    """The schema document itself is malformed."""


class UnresolvedRefError(SchemaError):
    code = "unresolved-ref"


class UnsupportedFeatureError(SchemaError):
    """The schema uses an OpenAPI keyword outside the supported subset."""


class ScriptValidationError(CloudScriptError):
    """A system model script failed validation; carries every issue found."""

    def __init__(self, issues):
        self.issues = list(issues)
        summary = "; ".join(f"{i.code} at {i.path}" for i in self.issues)
        super().__init__(f"{len(self.issues)} validation issue(s): {summary}")


class ExtensionError(CloudScriptError):
    """Base for failures materializing a named extension."""

    code = "extension-error"

    def __init__(self, message: str, class_name: str = "", path: str = ""):
        super().__init__(message)
        self.class_name = class_name
        self.path = path

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{msg} (at {self.path})" if self.path else msg


class UnknownExtensionError(ExtensionError):
    code = "unknown-extension"


class ConstructionError(ExtensionError):
    code = "construction-error"


class ResolutionError(CloudScriptError):
    """No element handler accepts a component's schema."""

    code = "unresolved-handler"


class BuildError(CloudScriptError):
    """A handler failed while building the scenario."""

    def __init__(self, path: str, cause: BaseException):
        super().__init__(f"failed to build component at {path}: {cause}")
        self.path = path
        self.cause = cause


class SimulationRuntimeError(CloudScriptError):
    """The kernel raised while dispatching events."""

    def __init__(self, sim_time: float, cause: BaseException):
        super().__init__(f"at simulated time {sim_time:.6f}: {cause}")
        self.sim_time = sim_time
        self.cause = cause


class WorkloadError(CloudScriptError):
    """A workload is inconsistent (e.g. a cloudlet bound to an unknown VM)."""


class ScriptSyntaxError(CloudScriptError):
    """The script is not well-formed YAML."""
