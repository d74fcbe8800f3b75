from app.domains.storage.csv_writer import (
    write_ablation_report,
    write_correlation_report,
    write_curve,
    write_metrics_report,
)
from app.domains.storage.cube_repository import CubeRepository, cube_repository
from app.domains.storage.image_exporter import ImageExporter, image_exporter, wavelength_to_rgb

__all__ = [
    "CubeRepository",
    "ImageExporter",
    "cube_repository",
    "image_exporter",
    "wavelength_to_rgb",
    "write_ablation_report",
    "write_correlation_report",
    "write_curve",
    "write_metrics_report",
]
