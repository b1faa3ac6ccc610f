from enum import Enum
from typing import Optional, Tuple

from hoopacity.serializers import BaseModel, ConfigDict, model_validator


class Method(str, Enum):
    DOUBLE = "double"
    PAIR = "pair"
    CSO = "cso"
    ORACLE = "oracle"


class Property(str, Enum):
    HIGH_ORDER = "high-order opaque"
    CURRENT_STATE = "current-state opaque"


class Verdict(BaseModel):
    """
    Outcome of one verification. ``witness`` is the intruder observation
    (event handles over Σ_a) leading to ``violating_state``.
    """

    model_config = ConfigDict(frozen=True)

    opaque: bool
    method: Method
    property: Property = Property.HIGH_ORDER
    witness: Optional[Tuple[int, ...]] = None
    witness_text: Optional[str] = None
    violating_state: Optional[str] = None
    explored_states: int = 0
    bound: Optional[int] = None

    @model_validator(mode="after")
    def _witness_for_violations(self):
        if not self.opaque and self.method is not Method.ORACLE and self.witness is None:
            raise ValueError(f"{self.method.value} verdict reports a violation without a witness")
        return self

    def describe(self) -> str:
        if self.opaque:
            text = self.property.value
            if self.bound is not None:
                text = f"no violation of '{text}' up to length {self.bound} (bounded check, not a proof)"
            return text
        text = f"not {self.property.value}"
        if self.witness_text is not None:
            text += f"; witness: {self.witness_text}"
        if self.violating_state is not None:
            text += f"; state: {self.violating_state}"
        return text
