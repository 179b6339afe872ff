# backend/config/scenario_loader.py

"""
Loads scenario documents (JSON or YAML) from disk.
Schema checks are left to the model that consumes the mapping.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import yaml

from backend.config.settings import settings

logger = logging.getLogger(__name__)

YAML_SUFFIXES = {".yaml", ".yml"}


class ScenarioLoader:
    """Reads scenario files by path or by name from the scenarios directory"""

    def __init__(self, scenarios_dir: Union[str, Path, None] = None):
        self.scenarios_dir = Path(scenarios_dir or settings.SCENARIOS_DIR)

    def resolve(self, name_or_path: Union[str, Path]) -> Path:
        path = Path(name_or_path)
        if path.exists():
            return path
        for suffix in (".json", ".yaml", ".yml"):
            candidate = self.scenarios_dir / f"{name_or_path}{suffix}"
            if candidate.exists():
                return candidate
        raise FileNotFoundError(f"Scenario not found: {name_or_path}")

    def load(self, name_or_path: Union[str, Path]) -> Dict[str, Any]:
        """
        Load a scenario mapping.

        Args:
            name_or_path: File path, or a bare name looked up in the scenarios dir

        Returns:
            The parsed top-level mapping
        """
        path = self.resolve(name_or_path)
        text = path.read_text(encoding="utf-8")

        if path.suffix.lower() in YAML_SUFFIXES:
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)

        if not isinstance(data, dict):
            raise ValueError(f"Scenario {path} must contain a mapping at top level")

        logger.debug(f"Loaded scenario {path} with keys {sorted(data)}")
        return data

    def list_scenarios(self) -> List[str]:
        if not self.scenarios_dir.exists():
            return []
        return sorted(
            p.stem for p in self.scenarios_dir.iterdir()
            if p.suffix.lower() in {".json"} | YAML_SUFFIXES
        )
