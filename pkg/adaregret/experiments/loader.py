"""Flat ``key=value`` experiment files with dotted namespaces."""

from pathlib import Path
from typing import Any

from pydantic import ValidationError

from adaregret.errors import UsageError
from adaregret.schemas import ExperimentConfig

VECTOR_KEYS = frozenset(
    {"set.center", "set.lower", "set.upper", "stream.direction", "initial", "policy.p_hat_coordinates"}
)


def parse_config_text(text: str) -> dict[str, str | list[str]]:
    """
    Parse ``key=value`` lines; ``#`` starts a comment and vectors are
    comma-separated.
    """
    values: dict[str, str | list[str]] = {}
    errors = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            errors.append(f"line {number}: expected key=value")
            continue
        if key in values:
            errors.append(f"{key}: set more than once (line {number})")
            continue
        if key in VECTOR_KEYS or "," in value:
            values[key] = [part.strip() for part in value.split(",") if part.strip()]
        else:
            values[key] = value
    if errors:
        raise UsageError(errors)
    return values


def _nest(flat: dict[str, Any]) -> dict[str, Any]:
    nested: dict[str, Any] = {}
    errors = []
    for key, value in flat.items():
        *parents, leaf = key.split(".")
        node = nested
        for part in parents:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                errors.append(f"{key}: '{part}' is a value, not a namespace")
                break
            node = child
        else:
            if isinstance(node.get(leaf), dict):
                errors.append(f"{key}: is a namespace, not a value")
            else:
                node[leaf] = value
    if errors:
        raise UsageError(errors)
    return nested


def build_config(flat: dict[str, Any]) -> ExperimentConfig:
    """Validate dotted values; each failing field becomes one usage-error message."""
    try:
        return ExperimentConfig.model_validate(_nest(flat))
    except ValidationError as e:
        messages = []
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"]) or "config"
            messages.append(f"{location}: {error['msg']}")
        raise UsageError(messages) from e


def load_config(
    path: str | Path | None = None,
    overrides: dict[str, Any] | None = None,
    defaults: dict[str, Any] | None = None,
) -> ExperimentConfig:
    """Layer dotted ``defaults``, the experiment file (optional) and ``overrides``."""
    flat: dict[str, Any] = dict(defaults or {})
    if path is not None:
        flat.update(parse_config_text(Path(path).read_text(encoding="utf-8")))
    flat.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_config(flat)
