"""Configuration for the sweep runner."""

from dataclasses import dataclass
from pathlib import Path
import os
from typing import Optional

from logic.rewriting import DEFAULT_REWRITE_DEPTH
from models.errors import ConfigurationError


@dataclass
class BirkhoffConfig:
    """Process-wide defaults that individual runs may override.

    Values come from code defaults, then ``config/environments/<env>.yaml``
    (or ``APP_CONFIG_PATH``), then environment variables, in increasing
    precedence.
    """

    threads: int = 1
    log_level: str = "WARNING"
    rewrite_depth: int = DEFAULT_REWRITE_DEPTH
    output_dir: Optional[str] = None
    environment: str | None = None

    @classmethod
    def from_env(cls) -> "BirkhoffConfig":
        """Build a config from environment variables or an environment YAML file."""

        env_name = os.getenv("APP_ENV")
        config_path = os.getenv("APP_CONFIG_PATH")
        config_dir = Path(os.getenv("BIRKHOFF_CONFIG_DIR", "config/environments"))
        yaml_config: dict = {}

        if config_path:
            path = Path(config_path)
        elif env_name:
            path = config_dir / f"{env_name}.yaml"
        else:
            path = None

        if path and path.exists():
            yaml_config = cls._load_yaml_config(path)

        def get_value(key: str, env_key: str, default: Optional[str] = None) -> Optional[str]:
            return os.getenv(env_key, yaml_config.get(key, default))

        threads = cls._as_int("threads", get_value("threads", "BIRKHOFF_THREADS", "1"))
        rewrite_depth = cls._as_int(
            "rewrite_depth",
            get_value("rewrite_depth", "BIRKHOFF_REWRITE_DEPTH", str(DEFAULT_REWRITE_DEPTH)),
        )
        return cls(
            threads=max(1, threads),
            log_level=str(get_value("log_level", "LOG_LEVEL", "WARNING")).upper(),
            rewrite_depth=rewrite_depth,
            output_dir=get_value("output_dir", "BIRKHOFF_OUTPUT_DIR"),
            environment=env_name,
        )

    @staticmethod
    def _as_int(key: str, value: Optional[str]) -> int:
        try:
            return int(str(value))
        except ValueError as exc:
            raise ConfigurationError(f"{key} must be an integer, got {value!r}") from exc

    @staticmethod
    def _load_yaml_config(path: Path) -> dict:
        """Parse the flat ``key: value`` overlay files."""

        config: dict[str, str] = {}
        for line in path.read_text().splitlines():
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if ":" not in stripped:
                continue
            key, raw_value = stripped.split(":", 1)
            value = raw_value.strip()
            if (value.startswith("\"") and value.endswith("\"")) or (
                value.startswith("'") and value.endswith("'")
            ):
                value = value[1:-1]
            config[key.strip()] = value
        return config


__all__ = ["BirkhoffConfig"]
