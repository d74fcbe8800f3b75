import numpy as np

from app.domains.imaging.forward_model import CassiOperator
from app.domains.tensor import Tensor, l1_distance, linear_map
from app.schemas.imaging import HsiCube, Snapshot


def measurement_loss(estimate: Tensor, snapshot: Snapshot, operator: CassiOperator) -> Tensor:
    """Differentiable sum of |Y - Phi(estimate)| over every measurement pixel."""
    operator.check_snapshot(snapshot)
    projected = linear_map(estimate, operator.forward_array, operator.adjoint_array)
    return l1_distance(projected, snapshot.values)


def l1_measurement_loss(estimate: HsiCube, snapshot: Snapshot, operator: CassiOperator) -> float:
    operator.check_snapshot(snapshot)
    residual = snapshot.values.astype(np.float64) - operator.forward_array(estimate.values.astype(np.float64))
    return float(np.abs(residual).sum())
