# backend/models/serialization.py

"""
Custom serialization utilities for result models and run manifests.
Handles conversion of numpy arrays, scalars, enums and nested models
to JSON-serializable formats.
"""

from typing import Any, Dict
from datetime import datetime, date
from enum import Enum
from pathlib import Path
import json

import numpy as np


class CustomJSONEncoder(json.JSONEncoder):
    """JSON encoder that routes everything through serialize_value"""

    def default(self, obj):
        value = serialize_value(obj)
        if value is obj:
            return super().default(obj)
        return value


def _serialize_complex(value: complex) -> Dict[str, float]:
    return {"re": float(value.real), "im": float(value.imag)}


def serialize_value(value: Any) -> Any:
    """
    Recursively serialize a value to be JSON-compatible.
    Handles nested structures, Pydantic models, numpy types and enums.
    """
    if value is None:
        return None

    if isinstance(value, (datetime, date)):
        return value.isoformat()

    # Enum before str/int: str-Enums are both
    if isinstance(value, Enum):
        return value.value

    if isinstance(value, Path):
        return str(value)

    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return {"re": value.real.tolist(), "im": value.imag.tolist()}
        return value.tolist()

    if isinstance(value, np.bool_):
        return bool(value)

    if isinstance(value, np.integer):
        return int(value)

    if isinstance(value, np.floating):
        return float(value)

    if isinstance(value, (complex, np.complexfloating)):
        return _serialize_complex(complex(value))

    # Pydantic models
    if hasattr(value, "model_dump"):
        return serialize_dict(value.model_dump())

    if isinstance(value, dict):
        return serialize_dict(value)

    if isinstance(value, (list, tuple, set)):
        return [serialize_value(item) for item in value]

    return value


def serialize_dict(data: Dict[str, Any]) -> Dict[str, Any]:
    """
    Serialize a dictionary, handling nested structures and special types.
    """
    if not isinstance(data, dict):
        return data

    return {str(key): serialize_value(value) for key, value in data.items()}


def to_json(data: Any, indent: int = 2) -> str:
    """Deterministic JSON text (sorted keys) for manifests and reports."""
    return json.dumps(serialize_value(data), cls=CustomJSONEncoder, indent=indent, sort_keys=True)
