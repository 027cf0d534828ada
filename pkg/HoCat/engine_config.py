import json
import os
import threading
from functools import lru_cache
from typing import Any, Dict, Optional

from HoCat.logging import LOGGER

logger = LOGGER("config_manager")

DEFAULT_BATTERY = {
    "path": "batteries/default",
    "max_objects": 2,
    "max_morphisms": 5,
    "include_loc": True,
    "include_base": True,
    "max_self_morphisms": 9,
}

DEFAULT_LIMITS = {
    # naturality through gamma enumerates component families only on members this small
    "nat_family_max_objects": 3,
    "zigzag_max_length": 12,
}


def _default_config() -> Dict[str, Any]:
    return {"batteries": {"default": dict(DEFAULT_BATTERY)}, "limits": dict(DEFAULT_LIMITS)}


class ConfigManager:
    """
    A thread-safe singleton class for managing engine configuration.
    This class loads battery definitions and engine limits from a JSON
    file and provides methods to access and modify them.
    """
    _instance = None
    _lock = threading.Lock()

    def __new__(cls, *args, **kwargs):
        with cls._lock:
            if cls._instance is None:
                cls._instance = super(ConfigManager, cls).__new__(cls)
                cls._instance._initialized = False
            return cls._instance

    def __init__(self, config_path: str = "hocat_config.json"):
        """
        Initialize the ConfigManager.

        Args:
            config_path: Path to the configuration file
        """
        # Only initialize once, unless a different file is requested
        if self._initialized and config_path == self.config_path:
            return

        self._initialized = True
        self.config_path = config_path
        self._config: Dict[str, Any] = {}
        self._last_modified = 0.0
        self._config_lock = threading.Lock()

        self.reload_config()

    def _load_config_from_file(self) -> Dict[str, Any]:
        """Load configuration from the file."""
        try:
            if not os.path.exists(self.config_path):
                logger.error(f"Configuration file not found: {self.config_path}, using defaults")
                return _default_config()

            current_mtime = os.path.getmtime(self.config_path)
            if self._config and current_mtime <= self._last_modified:
                logger.debug("Configuration file not modified since last load")
                return self._config

            with open(self.config_path, "r", encoding="utf-8") as f:
                config = json.load(f)

            self._last_modified = current_mtime

            # A bare mapping of batteries is accepted as well
            if "batteries" not in config:
                config = {"batteries": config}
            config.setdefault("limits", {})
            for key, value in DEFAULT_LIMITS.items():
                config["limits"].setdefault(key, value)
            for battery in config["batteries"].values():
                for key, value in DEFAULT_BATTERY.items():
                    battery.setdefault(key, value)

            logger.info(f"Loaded configuration with {len(config['batteries'])} batteries")
            return config

        except json.JSONDecodeError as e:
            logger.error(f"Failed to parse configuration file: {e}")
            return _default_config()
        except OSError as e:
            logger.error(f"Failed to load configuration: {e}")
            return _default_config()

    def reload_config(self) -> bool:
        """
        Reload the configuration from the file.

        Returns:
            bool: True if successful, False otherwise
        """
        try:
            new_config = self._load_config_from_file()
            with self._config_lock:
                self._config = new_config
            self.get_battery_config.cache_clear()
            return True
        except Exception as e:
            logger.error(f"Error reloading configuration: {e}")
            return False

    @property
    def config(self) -> Dict[str, Any]:
        """Get the current configuration."""
        with self._config_lock:
            return json.loads(json.dumps(self._config))

    @property
    def limits(self) -> Dict[str, Any]:
        with self._config_lock:
            return dict(self._config.get("limits", DEFAULT_LIMITS))

    @lru_cache(maxsize=64)
    def get_battery_config(self, battery_name: str) -> Optional[Dict[str, Any]]:
        """
        Get configuration for a specific battery.

        Args:
            battery_name: Name of the battery

        Returns:
            Optional[Dict]: battery configuration or None if not found
        """
        with self._config_lock:
            battery = self._config.get("batteries", {}).get(battery_name)
            if battery:
                battery = dict(battery)
                battery["name"] = battery_name
            return battery

    def get_all_batteries(self) -> Dict[str, Dict[str, Any]]:
        """
        Get configurations for all batteries.

        Returns:
            Dict: Dictionary of battery configurations with names
        """
        with self._config_lock:
            batteries = {}
            for name, battery in self._config.get("batteries", {}).items():
                with_name = dict(battery)
                with_name["name"] = name
                batteries[name] = with_name
            return batteries

    def update_battery_config(self, battery_name: str, config: Dict[str, Any]) -> bool:
        """
        Update or add a battery configuration.

        Args:
            battery_name: Name of the battery
            config: battery configuration

        Returns:
            bool: True if successful, False otherwise
        """
        with self._config_lock:
            merged = dict(DEFAULT_BATTERY)
            merged.update(config)
            self._config.setdefault("batteries", {})[battery_name] = merged
        self.get_battery_config.cache_clear()
        return True

    def save_config(self) -> bool:
        """
        Save the current configuration back to the file.

        Returns:
            bool: True if successful, False otherwise
        """
        try:
            with self._config_lock:
                with open(self.config_path, "w", encoding="utf-8") as f:
                    json.dump(self._config, f, indent=2, sort_keys=True)
                self._last_modified = os.path.getmtime(self.config_path)
            logger.info(f"Configuration saved to {self.config_path}")
            return True
        except OSError as e:
            logger.error(f"Failed to save configuration: {e}")
            return False


config_manager: Optional[ConfigManager] = None


def get_config_manager(config_path: Optional[str] = None) -> ConfigManager:
    """
    Get or create the ConfigManager instance, optionally pointing it at another file.

    Args:
        config_path: Optional new path to the configuration file

    Returns:
        ConfigManager: The singleton ConfigManager instance
    """
    global config_manager

    if config_manager is None:
        config_manager = ConfigManager(config_path=config_path or "hocat_config.json")
    elif config_path is not None and config_path != config_manager.config_path:
        config_manager = ConfigManager(config_path=config_path)

    return config_manager
