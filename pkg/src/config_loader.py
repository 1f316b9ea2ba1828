"""Configuration loader for hakencx."""

import os
import yaml
from typing import Dict, Any, Optional
from pathlib import Path


REPO_ROOT = Path(__file__).resolve().parent.parent


class ConfigLoader:
    """Loads and manages configuration from YAML file and environment variables."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration loader.

        Args:
            config_path: Path to the YAML configuration file. Defaults to
                $HAKENCX_CONFIG, then config.yaml at the repository root.
        """
        config_path = config_path or os.getenv("HAKENCX_CONFIG") or str(REPO_ROOT / "config.yaml")
        self.config_path = Path(config_path)
        self._config = None
        self._load_config()

    def _load_config(self) -> None:
        """Load configuration from YAML file."""
        try:
            with open(self.config_path, 'r', encoding='utf-8') as file:
                self._config = yaml.safe_load(file) or {}
        except FileNotFoundError:
            raise FileNotFoundError(f"Configuration file not found: {self.config_path}")
        except yaml.YAMLError as e:
            raise ValueError(f"Error parsing YAML configuration: {e}")

    @staticmethod
    def _resolve(value: Any) -> Any:
        """Resolve ${VAR_NAME} placeholders against the environment."""
        if isinstance(value, str) and value.startswith("${") and value.endswith("}"):
            return os.getenv(value[2:-1])
        return value

    def get(self, key_path: str, default: Any = None) -> Any:
        """Get configuration value using dot notation.

        Args:
            key_path: Dot-separated path to the configuration value (e.g., 'catalog.data_dir')
            default: Default value if key is not found or resolves to nothing

        Returns:
            Configuration value or default
        """
        keys = key_path.split('.')
        value = self._config

        try:
            for key in keys:
                value = value[key]
        except (KeyError, TypeError):
            return default

        value = self._resolve(value)
        return default if value is None else value

    def get_bool(self, key_path: str, default: bool = False) -> bool:
        """Get a boolean flag, accepting the usual spellings from env vars.

        Args:
            key_path: Dot-separated path to the flag
            default: Value used when the flag is unset

        Returns:
            bool: Parsed flag
        """
        value = self.get(key_path)
        if value is None:
            return default
        if isinstance(value, bool):
            return value
        return str(value).strip().lower() in {"1", "true", "yes", "on"}

    def get_catalog_config(self) -> Dict[str, Any]:
        """Get catalog configuration.

        Returns:
            Catalog configuration dictionary
        """
        return self.get("catalog", {})

    def get_catalog_dir(self) -> Path:
        """Get the directory holding shipped catalog complexes.

        Returns:
            Path: $HAKENCX_CATALOG_DIR if set, else the shipped data directory
        """
        data_dir = self.get("catalog.data_dir")
        if data_dir:
            return Path(data_dir)
        return REPO_ROOT / self.get("catalog.default_data_dir", "data/catalog")

    def is_120_cell_enabled(self) -> bool:
        """Check if the 120-cell stretch entries should be built.

        Returns:
            True if the stretch flag is set
        """
        return self.get_bool("catalog.enable_120_cell", False)

    def get_coefficients_config(self) -> Dict[str, Any]:
        """Get constraint-generation configuration.

        Returns:
            Coefficients configuration dictionary
        """
        return self.get("coefficients", {})

    def get_flagness_config(self) -> Dict[str, Any]:
        """Get flagness configuration.

        Returns:
            Flagness configuration dictionary
        """
        return self.get("flagness", {})

    def get_verification_config(self) -> Dict[str, Any]:
        """Get verify-all configuration.

        Returns:
            Verification configuration dictionary
        """
        return self.get("verification", {})

    def get_app_config(self) -> Dict[str, Any]:
        """Get application configuration.

        Returns:
            Application configuration dictionary
        """
        return self.get("app", {})

    def get_logging_config(self) -> Dict[str, Any]:
        """Get logging configuration.

        Returns:
            Logging configuration dictionary
        """
        return self.get("logging", {})

    def get_output_config(self) -> Dict[str, Any]:
        """Get report output configuration.

        Returns:
            Output configuration dictionary
        """
        return self.get("output", {})

    def get_error_message(self, error_type: str, **fields: Any) -> str:
        """Get error message for a specific error type.

        Args:
            error_type: Error type (e.g., 'dangling_boundary')
            **fields: Values substituted into the message template

        Returns:
            Error message string
        """
        template = self.get(f"error_messages.{error_type}", f"Error: {error_type}")
        try:
            return template.format(**fields)
        except (KeyError, IndexError):
            return template


# Global configuration instance
config = ConfigLoader()
