from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings


class AdamConfig(BaseModel):
    lr: float = Field(default_factory=lambda: settings.RECON_LEARNING_RATE, gt=0)
    beta1: float = Field(default_factory=lambda: settings.ADAM_BETA1, ge=0, lt=1)
    beta2: float = Field(default_factory=lambda: settings.ADAM_BETA2, ge=0, lt=1)
    epsilon: float = Field(default_factory=lambda: settings.ADAM_EPSILON, gt=0)
    max_steps: Optional[int] = Field(default=None, ge=1)

    model_config = ConfigDict(frozen=True)


__all__ = ["AdamConfig"]
