from app.domains.imaging.forward_model import (
    CassiOperator,
    adjoint,
    forward_sd,
    forward_ss,
    measurement_rate,
    shift_back,
)
from app.domains.imaging.mask_service import generate_mask, shift_mask_stack, translate_width
from app.domains.imaging.simulation_service import simulate
from app.domains.imaging.synthetic_scene import synthetic_cube

__all__ = [
    "CassiOperator",
    "adjoint",
    "forward_sd",
    "forward_ss",
    "generate_mask",
    "measurement_rate",
    "shift_back",
    "shift_mask_stack",
    "simulate",
    "synthetic_cube",
    "translate_width",
]
