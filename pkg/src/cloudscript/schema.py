"""Component schemas (an OpenAPI 3.0 subset) and script validation.

A schema document looks like::

    components:
      schemas:
        Datacenter:
          type: object
          required: [hosts]
          properties:
            variant:
              $ref: '#/components/schemas/Extension'

Supported kinds are ``object``, ``array``, ``string``, ``integer``,
``number``, ``boolean`` and ``$ref``. Object schemas may carry
``additionalProperties`` to describe string-keyed maps. Any other keyword
(``oneOf``, ``enum``, ``format``, ...) is rejected when the schema loads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import yaml

from .errors import (
    SchemaError,
    ScriptSyntaxError,
    ScriptValidationError,
    UnresolvedRefError,
    UnsupportedFeatureError,
)

REF_PREFIX = "#/components/schemas/"
SCALAR_KINDS = ("string", "integer", "number", "boolean")
_ANNOTATIONS = {"description", "title", "example"}
_ALLOWED = {
    "object": {"type", "properties", "required", "additionalProperties"},
    "array": {"type", "items"},
    "ref": {"$ref"},
    **{k: {"type"} for k in SCALAR_KINDS},
}

MISSING_REQUIRED = "missing-required"
TYPE_MISMATCH = "type-mismatch"
UNKNOWN_FIELD = "unknown-field"
UNRESOLVED_REF = "unresolved-ref"
BAD_ANCHOR = "bad-anchor"


@dataclass
class Schema:
    kind: str
    properties: dict[str, "Schema"] = field(default_factory=dict)
    required: list[str] = field(default_factory=list)
    items: "Schema | None" = None
    ref: str | None = None
    additional: "Schema | None" = None


@dataclass
class SchemaDocument:
    schemas: dict[str, Schema] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return name in self.schemas

    def resolve(self, schema: Schema) -> tuple[str | None, Schema]:
        """Follow ``$ref`` chains; return (target name or None, concrete schema)."""
        name = None
        seen = set()
        while schema.kind == "ref":
            if schema.ref in seen:
                raise SchemaError(f"circular $ref chain through {schema.ref!r}")
            seen.add(schema.ref)
            name = schema.ref
            schema = self.schemas[schema.ref]
        return name, schema


@dataclass
class ValidationIssue:
    path: str
    code: str
    message: str


@dataclass
class ComponentNode:
    """A validated script component typed by its schema name."""

    schema_name: str
    fields: dict[str, Any]
    path: str = field(default="", compare=False, repr=False)

    def __getitem__(self, key: str) -> Any:
        return self.fields[key]

    def __contains__(self, key: str) -> bool:
        return key in self.fields

    def get(self, key: str, default: Any = None) -> Any:
        return self.fields.get(key, default)


# ---------------------------------------------------------------------------
# schema loading

def _parse_schema(raw: Any, where: str) -> Schema:
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}: schema must be a mapping")
    if "$ref" in raw:
        kind = "ref"
    else:
        kind = raw.get("type")
        if kind not in _ALLOWED:
            if kind is None:
                raise UnsupportedFeatureError(f"{where}: schema without 'type' or '$ref' is not supported")
            raise UnsupportedFeatureError(f"{where}: unsupported type {kind!r}")
    extra = set(raw) - _ALLOWED[kind] - _ANNOTATIONS
    if extra:
        raise UnsupportedFeatureError(f"{where}: unsupported keyword(s) {sorted(extra)}")

    if kind == "ref":
        ref = raw["$ref"]
        if not isinstance(ref, str) or not ref.startswith(REF_PREFIX):
            raise UnsupportedFeatureError(f"{where}: only local '{REF_PREFIX}...' refs are supported")
        return Schema("ref", ref=ref[len(REF_PREFIX):])
    if kind == "array":
        if "items" not in raw:
            raise SchemaError(f"{where}: array schema needs 'items'")
        return Schema("array", items=_parse_schema(raw["items"], f"{where}/items"))
    if kind == "object":
        props = raw.get("properties") or {}
        if not isinstance(props, dict):
            raise SchemaError(f"{where}: 'properties' must be a mapping")
        required = list(raw.get("required") or [])
        unknown_req = [r for r in required if r not in props]
        if unknown_req:
            raise SchemaError(f"{where}: required names not in properties: {unknown_req}")
        additional = raw.get("additionalProperties")
        if additional is True:
            raise UnsupportedFeatureError(f"{where}: untyped additionalProperties is not supported")
        return Schema(
            "object",
            properties={k: _parse_schema(v, f"{where}/properties/{k}") for k, v in props.items()},
            required=required,
            additional=_parse_schema(additional, f"{where}/additionalProperties")
            if isinstance(additional, dict) else None,
        )
    return Schema(kind)


def _iter_refs(schema: Schema):
    if schema.kind == "ref":
        yield schema.ref
    for child in schema.properties.values():
        yield from _iter_refs(child)
    for child in (schema.items, schema.additional):
        if child is not None:
            yield from _iter_refs(child)


def load_schema(text: str) -> SchemaDocument:
    """Parse a schema document and check that every ``$ref`` resolves."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(f"schema document is not valid YAML: {exc}") from exc
    raw = raw or {}
    if not isinstance(raw, dict):
        raise SchemaError("schema document must be a mapping")
    section = (raw.get("components") or {}).get("schemas") or {}
    if not isinstance(section, dict):
        raise SchemaError("components/schemas must be a mapping")
    doc = SchemaDocument({name: _parse_schema(s, f"/components/schemas/{name}") for name, s in section.items()})
    for name, schema in doc.schemas.items():
        for ref in _iter_refs(schema):
            if ref not in doc.schemas:
                raise UnresolvedRefError(f"/components/schemas/{name}: unresolved $ref {REF_PREFIX}{ref}")
    for name in doc.schemas:
        doc.resolve(Schema("ref", ref=name))
    return doc


# ---------------------------------------------------------------------------
# script loading

BAD_ANCHOR_TAG = "tag:cloudscript,2024:bad-anchor"


@dataclass(frozen=True)
class BadAlias:
    """Placeholder for an alias whose anchor was never defined."""

    anchor: str


class _ScriptLoader(yaml.SafeLoader):
    """SafeLoader that keeps going past undefined aliases."""

    def compose_node(self, parent, index):
        if self.check_event(yaml.AliasEvent):
            event = self.peek_event()
            if event.anchor not in self.anchors:
                self.get_event()
                return yaml.ScalarNode(BAD_ANCHOR_TAG, event.anchor, event.start_mark, event.end_mark)
        return super().compose_node(parent, index)

    def flatten_mapping(self, node):
        # A merge key pointing at an undefined anchor becomes a plain "<<" field
        # so validation can report it at a path instead of crashing.
        for i, (key, value) in enumerate(node.value):
            if key.tag == "tag:yaml.org,2002:merge" and _has_bad_alias(value):
                node.value[i] = (yaml.ScalarNode("tag:yaml.org,2002:str", "<<"), _first_bad(value))
        super().flatten_mapping(node)


def _has_bad_alias(node) -> bool:
    return _first_bad(node) is not None


def _first_bad(node):
    if node.tag == BAD_ANCHOR_TAG:
        return node
    if isinstance(node, yaml.SequenceNode):
        for child in node.value:
            if child.tag == BAD_ANCHOR_TAG:
                return child
    return None


_ScriptLoader.add_constructor(BAD_ANCHOR_TAG, lambda loader, node: BadAlias(node.value))


def load_script(text: str) -> Any:
    """Parse script YAML, resolving anchors, aliases and ``<<`` merge keys."""
    try:
        return yaml.load(text, Loader=_ScriptLoader)
    except yaml.YAMLError as exc:
        raise ScriptSyntaxError(f"script is not valid YAML: {exc}") from exc


# ---------------------------------------------------------------------------
# validation

def _type_name(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, int):
        return "integer"
    if isinstance(value, float):
        return "number"
    if isinstance(value, str):
        return "string"
    if isinstance(value, list):
        return "array"
    if isinstance(value, dict):
        return "object"
    return type(value).__name__


class _Validator:
    def __init__(self, doc: SchemaDocument):
        self.doc = doc
        self.issues: list[ValidationIssue] = []

    def issue(self, path: str, code: str, message: str) -> None:
        self.issues.append(ValidationIssue(path or "/", code, message))

    def mismatch(self, path: str, expected: str, value: Any) -> None:
        self.issue(path, TYPE_MISMATCH, f"expected {expected}, got {_type_name(value)}")

    def value(self, value: Any, schema: Schema, path: str, name: str = "") -> Any:
        if isinstance(value, BadAlias):
            self.issue(path, BAD_ANCHOR, f"alias *{value.anchor} refers to an undefined anchor")
            return None
        if schema.kind == "ref":
            if schema.ref not in self.doc.schemas:
                self.issue(path, UNRESOLVED_REF, f"unresolved $ref {REF_PREFIX}{schema.ref}")
                return None
            return self.value(value, self.doc.schemas[schema.ref], path, schema.ref)
        if schema.kind == "object":
            return self.obj(value, schema, path, name)
        if schema.kind == "array":
            if not isinstance(value, list):
                self.mismatch(path, "array", value)
                return None
            return [self.value(v, schema.items, f"{path}/{i}") for i, v in enumerate(value)]
        return self.scalar(value, schema.kind, path)

    def scalar(self, value: Any, kind: str, path: str) -> Any:
        if kind == "string" and isinstance(value, str):
            return value
        if kind == "boolean" and isinstance(value, bool):
            return value
        if kind in ("integer", "number") and not isinstance(value, bool):
            if isinstance(value, int):
                return value
            if isinstance(value, float):
                if kind == "number":
                    return value
                if value.is_integer():
                    return int(value)
        self.mismatch(path, kind, value)
        return None

    def obj(self, value: Any, schema: Schema, path: str, name: str) -> Any:
        if not isinstance(value, dict):
            self.mismatch(path, "object", value)
            return None
        fields: dict[str, Any] = {}
        for key, item in value.items():
            sub = f"{path}/{key}"
            if isinstance(item, BadAlias):
                self.value(item, schema, sub)
            elif key in schema.properties:
                fields[key] = self.value(item, schema.properties[key], sub)
            elif schema.additional is not None and isinstance(key, str):
                fields[key] = self.value(item, schema.additional, sub)
            else:
                self.issue(sub, UNKNOWN_FIELD, f"unknown field {key!r} in {name or 'object'}")
        # Fields merged from an undefined anchor are unknowable; only bad-anchor is reported.
        merged_unknown = isinstance(value.get("<<"), BadAlias)
        for req in schema.required:
            if req not in value and not merged_unknown:
                self.issue(f"{path}/{req}", MISSING_REQUIRED, f"missing required field {req!r} in {name or 'object'}")
        if not schema.properties and schema.additional is not None:
            return fields
        return ComponentNode(name, fields, path or "/")


def validate_component(fragment: Any, schema_name: str, doc: SchemaDocument, path: str = ""):
    """Validate ``fragment`` against ``schema_name``; return (node or None, issues)."""
    if schema_name not in doc.schemas:
        raise SchemaError(f"no schema named {schema_name!r}")
    v = _Validator(doc)
    node = v.value(fragment, Schema("ref", ref=schema_name), path)
    return (None if v.issues else node), v.issues


def parse_component(fragment: Any, schema_name: str, doc: SchemaDocument, path: str = "") -> ComponentNode:
    """Like :func:`validate_component` but raises :class:`ScriptValidationError`."""
    node, issues = validate_component(fragment, schema_name, doc, path)
    if issues:
        raise ScriptValidationError(issues)
    return node


def to_document(value: Any) -> Any:
    """Serialize a parsed value back to plain YAML-compatible data."""
    if isinstance(value, ComponentNode):
        return {k: to_document(v) for k, v in value.fields.items()}
    if isinstance(value, list):
        return [to_document(v) for v in value]
    if isinstance(value, dict):
        return {k: to_document(v) for k, v in value.items()}
    return value
