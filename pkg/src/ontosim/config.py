"""Run configuration: one JSON tree, flag overrides, documented defaults.

Precedence: built-in defaults, then the config file (``--config`` flag or the
ONTOSIM_CONFIG environment variable), then ``--set section.key=value``
overrides, then dedicated command-line flags.
"""

from __future__ import annotations

import copy
import json
import os
from pathlib import Path
from typing import Any

from .errors import ConfigError

ENV_CONFIG_PATH = "ONTOSIM_CONFIG"

DEFAULT_CONFIG: dict[str, Any] = {
    "languages": ["en", "es"],
    "analyzer_dir": None,
    "workers": 1,
    "seed": 0,
    "kg": {
        "disambiguation_class": "Q4167410",
    },
    "langid": {
        "floor": 0.3,
        "max_entries": 10000,
    },
    "linker": {
        "max_ngram": 3,
        "ancestor_depth": 3,
        "topic_filter_depth": 3,
        "context_window": 2,
        "no_space_languages": ["ja", "zh"],
        "classes": {
            "creative_work": "Q386724",
            "gene": "Q7187",
            "natural_number": "Q21199",
            "human": "Q5",
            "location": "Q2221906",
            "organization": "Q43229",
        },
    },
    "vectors": {
        "max_depth": 3,
    },
    "retrieval": {
        "metric_ks": [1, 5, 10, 50],
        "arr_max_k": 50,
        "top_k": None,
    },
    "alignment": {
        "window": 6,
        "step": 3,
        "fragment_top_k": 5,
        "char_distance_threshold": 1200,
        "score_threshold": 0.45,
        "merge_rule": "both",
        "length_bounds": [300, 1000],
    },
    "tuning": {
        "char_grid": [600, 1200, 2400],
        "score_grid": [0.30, 0.45, 0.60, 0.75],
    },
}


class RunConfig:
    """Nested configuration values with dotted-path access."""

    def __init__(self, tree: dict[str, Any]):
        self.tree = tree

    @classmethod
    def defaults(cls) -> "RunConfig":
        return cls(copy.deepcopy(DEFAULT_CONFIG))

    @classmethod
    def load(
        cls,
        config_path: str | Path | None = None,
        overrides: list[str] | None = None,
    ) -> "RunConfig":
        config = cls.defaults()
        path = config_path or os.environ.get(ENV_CONFIG_PATH)
        if path:
            try:
                loaded = json.loads(Path(path).read_text(encoding="utf-8"))
            except OSError as exc:
                raise ConfigError(f"cannot read config file {path}: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
            if not isinstance(loaded, dict):
                raise ConfigError(f"config file {path} must hold a JSON object")
            _deep_update(config.tree, loaded)
        for override in overrides or []:
            config.apply_override(override)
        return config

    def apply_override(self, assignment: str) -> None:
        """Apply one ``section.key=value`` override; values parse as JSON with
        a bare-string fallback."""
        if "=" not in assignment:
            raise ConfigError(f"override must look like key=value: {assignment!r}")
        dotted, raw_value = assignment.split("=", 1)
        try:
            value = json.loads(raw_value)
        except json.JSONDecodeError:
            value = raw_value
        node = self.tree
        parts = dotted.split(".")
        for part in parts[:-1]:
            nxt = node.get(part)
            if not isinstance(nxt, dict):
                nxt = {}
                node[part] = nxt
            node = nxt
        node[parts[-1]] = value

    def get(self, dotted: str, default: Any = None) -> Any:
        node: Any = self.tree
        for part in dotted.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def require(self, dotted: str) -> Any:
        value = self.get(dotted, default=_MISSING)
        if value is _MISSING:
            raise ConfigError(f"missing required config value {dotted!r}")
        return value

    def as_dict(self) -> dict[str, Any]:
        return copy.deepcopy(self.tree)


_MISSING = object()


def _deep_update(base: dict, incoming: dict) -> None:
    for key, value in incoming.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _deep_update(base[key], value)
        else:
            base[key] = value
