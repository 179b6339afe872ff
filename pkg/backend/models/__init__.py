# backend/models/__init__.py

from backend.models.base import CustomModel
from backend.models.serialization import serialize_value, serialize_dict, to_json

__all__ = ["CustomModel", "serialize_value", "serialize_dict", "to_json"]
