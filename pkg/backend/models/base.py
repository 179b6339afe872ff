# backend/models/base.py

from pydantic import BaseModel, ConfigDict
from typing import Any, Dict
from backend.models.serialization import serialize_dict


class CustomModel(BaseModel):
    """Base model class with numpy support and serialization helpers."""

    model_config = ConfigDict(arbitrary_types_allowed=True, from_attributes=True)

    def to_json_dict(self) -> Dict[str, Any]:
        """
        Convert model to JSON-serializable dictionary.
        Arrays become nested lists, complex arrays split into re/im.
        """
        return serialize_dict(self.model_dump())
