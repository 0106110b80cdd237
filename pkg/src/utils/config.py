"""
Configuration management for adhesive-egg.
Handles default values, config files and environment variable overrides.
"""

import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import toml
import yaml

from ..core.errors import SchemaError

MATCH_CLASSES = ('any', 'classinj', 'mono', 'pb')


@dataclass
class Config:
    """Configuration class for adhesive-egg."""

    # Saturation limits
    max_iters: int = 20
    max_classes: int = 1000
    max_edges: int = 5000
    match_class: str = 'pb'

    # Debug-mode validations (morphism re-validation, quotient surjectivity)
    debug_checks: bool = False

    # Lab campaigns
    seed: int = 0
    trials: int = 500
    max_size: int = 3
    workers: int = 1

    # Extraction
    default_cost: int = 1
    costs: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.match_class not in MATCH_CLASSES:
            raise SchemaError(f"unknown match class {self.match_class!r}; expected one of {MATCH_CLASSES}")
        for name in ('max_iters', 'max_classes', 'max_edges', 'trials', 'max_size', 'workers'):
            if getattr(self, name) < 0:
                raise SchemaError(f"{name} must be non-negative")
        if self.default_cost <= 0 or any(c <= 0 for c in self.costs.values()):
            raise SchemaError("symbol costs must be positive integers")

    @classmethod
    def from_environment(cls, base: Optional['Config'] = None) -> 'Config':
        """
        Create configuration from environment variables.

        Environment variables:
        - ADHESIVE_EGG_SEED: seed for lab campaigns (default: 0)
        - ADHESIVE_EGG_MAX_ITERS: saturation round limit (default: 20)
        - ADHESIVE_EGG_MATCH_CLASS: default match class (default: pb)
        - ADHESIVE_EGG_DEBUG: enable debug-mode validations ("1", "true")
        - ADHESIVE_EGG_WORKERS: worker processes for campaigns (default: 1)

        Args:
            base: Values to fall back on for unset variables

        Returns:
            Config instance with values from environment
        """
        base = base or cls()
        return replace(
            base,
            seed=int(os.getenv('ADHESIVE_EGG_SEED', str(base.seed))),
            max_iters=int(os.getenv('ADHESIVE_EGG_MAX_ITERS', str(base.max_iters))),
            match_class=os.getenv('ADHESIVE_EGG_MATCH_CLASS', base.match_class),
            debug_checks=_truthy(os.getenv('ADHESIVE_EGG_DEBUG'), base.debug_checks),
            workers=int(os.getenv('ADHESIVE_EGG_WORKERS', str(base.workers))),
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> 'Config':
        """
        Load configuration from a YAML or TOML file.

        Unknown keys are rejected so typos do not pass silently.
        """
        data = load_mapping(path)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise SchemaError(f"unknown configuration keys in {path}: {', '.join(unknown)}")
        return cls(**data)

    def merged(self, **overrides: Any) -> 'Config':
        """Return a copy with the non-None overrides applied (CLI flags)."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def cost_of(self, symbol: str) -> int:
        return self.costs.get(symbol, self.default_cost)

    def to_dict(self) -> dict:
        """Convert config to dictionary."""
        return asdict(self)


def load_mapping(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a mapping from a YAML (.yaml/.yml) or TOML (.toml) file.

    Args:
        path: File to read

    Returns:
        The top-level mapping (empty for an empty file)
    """
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from e
    try:
        if path.suffix == '.toml':
            data = toml.loads(text)
        else:
            data = yaml.safe_load(text)
    except (toml.TomlDecodeError, yaml.YAMLError) as e:
        raise SchemaError(f"cannot parse {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise SchemaError(f"{path} must contain a mapping")
    return data


def load_cost_table(path: Union[str, Path]) -> Dict[str, int]:
    """Read a symbol → cost table; every cost must be a positive integer."""
    table = load_mapping(path)
    costs: Dict[str, int] = {}
    for symbol, cost in table.items():
        if not isinstance(cost, int) or isinstance(cost, bool) or cost <= 0:
            raise SchemaError(f"cost of {symbol!r} must be a positive integer")
        costs[str(symbol)] = cost
    return costs


def _truthy(value: Optional[str], default: bool) -> bool:
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


# Global config instance
_config: Optional[Config] = None


def get_config() -> Config:
    """
    Get the global configuration instance.

    Returns:
        Config instance loaded from environment
    """
    global _config
    if _config is None:
        _config = Config.from_environment()
    return _config


def set_config(config: Optional[Config]) -> None:
    """
    Set the global configuration instance.

    Args:
        config: Config instance to set as global (None resets to environment)
    """
    global _config
    _config = config
