from app.domains.recon.ablation import ablation_grid, run_ablation_grid
from app.domains.recon.gaptv import gaptv_reconstruct, total_variation, tv_denoise
from app.domains.recon.loss import l1_measurement_loss, measurement_loss
from app.domains.recon.reconstruction_service import adjoint_initialization, reconstruct

__all__ = [
    "ablation_grid",
    "adjoint_initialization",
    "gaptv_reconstruct",
    "l1_measurement_loss",
    "measurement_loss",
    "reconstruct",
    "run_ablation_grid",
    "total_variation",
    "tv_denoise",
]
