from app.cli.commands import (
    ablation,
    baseline_gaptv,
    export_png,
    make_cube,
    make_mask,
    metrics,
    reconstruct,
    simulate,
)

COMMANDS = (make_mask, make_cube, simulate, reconstruct, baseline_gaptv, metrics, export_png, ablation)

__all__ = ["COMMANDS"]
