from app.domains.metrics.metrics_service import band_psnr, cube_ssim, evaluate, psnr, spectral_correlation, ssim

__all__ = ["band_psnr", "cube_ssim", "evaluate", "psnr", "spectral_correlation", "ssim"]
