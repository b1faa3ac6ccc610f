from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

__all__ = ["BaseModel", "ConfigDict", "Field", "ValidationError", "model_validator"]
