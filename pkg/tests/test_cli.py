import csv
import json
import math

import numpy as np
import pytest

from app.domains.imaging import CassiOperator, simulate
from app.domains.storage import cube_repository
from app.literals.imaging import SystemKind
from app.main import cli_main

HEIGHT, WIDTH, BANDS = 16, 16, 4
NETWORK_FLAGS = ["--feature-width", "8", "--z-channels", "4", "--seed", "3"]


def _csv_rows(path):
    with path.open(newline="") as handle:
        return list(csv.reader(handle))


@pytest.fixture
def workspace(tmp_path):
    """Cube, mask and SD snapshot written through the CLI."""
    cube = tmp_path / "scene.hsc"
    mask = tmp_path / "mask.hsc"
    meas = tmp_path / "y.hsc"
    size = ["--height", str(HEIGHT), "--width", str(WIDTH)]
    assert cli_main(["make-cube", *size, "--bands", str(BANDS), "--seed", "4", "--out", str(cube)]) == 0
    assert cli_main(["make-mask", *size, "--seed", "9", "--out", str(mask)]) == 0
    assert cli_main(["simulate", "--cube", str(cube), "--mask", str(mask), "--system", "sd", "--out", str(meas)]) == 0
    return tmp_path


def _operator_flags(workspace):
    return ["--mask", str(workspace / "mask.hsc"), "--system", "sd", "--bands", str(BANDS)]


class TestPipeline:
    """End-to-end runs of the command line."""

    def test_simulated_snapshot_shape(self, workspace):
        snapshot = cube_repository.read_values(workspace / "y.hsc")
        assert snapshot.shape == (1, HEIGHT, WIDTH + BANDS - 1)

    def test_cube_has_wavelength_sidecar(self, workspace):
        cube = cube_repository.read_cube(workspace / "scene.hsc")
        assert cube.wavelengths[0] == 400.0
        assert cube.wavelengths[-1] == 700.0

    def test_reconstruct_then_metrics(self, workspace, capsys):
        out, log = workspace / "rec.hsc", workspace / "curve.csv"
        code = cli_main(
            [
                "reconstruct",
                "--meas",
                str(workspace / "y.hsc"),
                *_operator_flags(workspace),
                *NETWORK_FLAGS,
                "--iters",
                "3",
                "--log-every",
                "2",
                "--out",
                str(out),
                "--log",
                str(log),
                "--gt",
                str(workspace / "scene.hsc"),
            ]
        )
        assert code == 0

        rows = _csv_rows(log)
        assert rows[0] == ["iter", "loss", "psnr"]
        assert len(rows) - 1 == math.ceil(3 / 2) + 1
        assert [row[0] for row in rows[1:]] == ["0", "2", "3"]
        assert all(row[2] for row in rows[1:])

        estimate = cube_repository.read_values(out)
        assert estimate.shape == (BANDS, HEIGHT, WIDTH)
        assert estimate.min() >= 0.0 and estimate.max() <= 1.0

        report = workspace / "report.csv"
        corr = workspace / "corr.csv"
        capsys.readouterr()
        code = cli_main(
            [
                "metrics",
                "--ref",
                str(workspace / "scene.hsc"),
                "--est",
                str(out),
                "--report",
                str(report),
                "--pixel",
                "5,6",
                "--correlation-report",
                str(corr),
            ]
        )
        assert code == 0
        summary = json.loads(capsys.readouterr().out)
        assert set(summary) == {"mean_psnr", "mean_ssim"}
        assert len(_csv_rows(report)) == 1 + BANDS + 1
        assert _csv_rows(corr)[1][:2] == ["5", "6"]

    def test_reconstruct_without_attention(self, workspace):
        out = workspace / "brb.hsc"
        code = cli_main(
            [
                "reconstruct",
                "--meas",
                str(workspace / "y.hsc"),
                *_operator_flags(workspace),
                *NETWORK_FLAGS,
                "--iters",
                "2",
                "--arch-mode",
                "brb_only",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        assert out.exists()

    def test_baseline_gaptv(self, workspace):
        out = workspace / "gaptv.hsc"
        meas = str(workspace / "y.hsc")
        flags = [*_operator_flags(workspace), "--iters", "5"]
        code = cli_main(["baseline-gaptv", "--meas", meas, *flags, "--out", str(out)])
        assert code == 0
        values = cube_repository.read_values(out)
        assert values.shape == (BANDS, HEIGHT, WIDTH)
        assert np.all((values >= 0.0) & (values <= 1.0))

    def test_export_png(self, workspace):
        band_png, rgb_png = workspace / "band.png", workspace / "rgb.png"
        cube = str(workspace / "scene.hsc")
        assert cli_main(["export-png", "--cube", cube, "--band", "2", "--out", str(band_png)]) == 0
        assert cli_main(["export-png", "--cube", cube, "--rgb", "--out", str(rgb_png)]) == 0
        assert band_png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        assert rgb_png.exists()

    def test_ablation(self, workspace):
        report = workspace / "ablation.csv"
        code = cli_main(
            [
                "ablation",
                "--meas",
                str(workspace / "y.hsc"),
                *_operator_flags(workspace),
                *NETWORK_FLAGS,
                "--iters",
                "1",
                "--workers",
                "1",
                "--report",
                str(report),
            ]
        )
        assert code == 0
        assert len(_csv_rows(report)) == 1 + 9

    def _reconstruct(self, workspace, out, *extra):
        args = ["reconstruct", "--meas", str(workspace / "y.hsc"), *_operator_flags(workspace), *NETWORK_FLAGS]
        return cli_main([*args, "--iters", "4", "--log-every", "2", "--out", str(out), *extra])

    def test_fixed_seed_rerun_is_bitwise_identical(self, workspace):
        first, second = workspace / "first.hsc", workspace / "second.hsc"
        assert self._reconstruct(workspace, first) == 0
        assert self._reconstruct(workspace, second) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_other_seed_changes_output(self, workspace):
        first, other = workspace / "first.hsc", workspace / "other.hsc"
        assert self._reconstruct(workspace, first) == 0
        assert self._reconstruct(workspace, other, "--seed", "4") == 0
        assert first.read_bytes() != other.read_bytes()

    def test_gray_mask_used_as_ingested(self, workspace):
        """Test that a gray transmission mask reaches simulate and reconstruct unchanged."""
        mask_path, meas_path, out = workspace / "gray.hsc", workspace / "gray_y.hsc", workspace / "gray_rec.hsc"
        size = ["--height", str(HEIGHT), "--width", str(WIDTH)]
        assert cli_main(["make-mask", *size, "--kind", "gray", "--seed", "12", "--out", str(mask_path)]) == 0
        mask_bytes = mask_path.read_bytes()

        mask = cube_repository.read_mask(mask_path)
        assert np.any((mask.values > 0.0) & (mask.values < 1.0))

        cube_path = str(workspace / "scene.hsc")
        flags = ["--mask", str(mask_path), "--system", "ss"]
        assert cli_main(["simulate", "--cube", cube_path, *flags, "--out", str(meas_path)]) == 0
        operator = CassiOperator(SystemKind.SS, mask, bands=BANDS)
        expected = simulate(cube_repository.read_cube(cube_path), operator)
        np.testing.assert_array_equal(cube_repository.read_values(meas_path)[0], expected.values)

        code = cli_main(
            ["reconstruct", "--meas", str(meas_path), *flags, "--bands", str(BANDS), *NETWORK_FLAGS]
            + ["--iters", "2", "--out", str(out)]
        )
        assert code == 0
        assert mask_path.read_bytes() == mask_bytes
        assert cube_repository.read_values(out).shape == (BANDS, HEIGHT, WIDTH)


class TestCliErrors:
    """Exit codes and diagnostics for bad invocations."""

    def test_unknown_flag(self, capsys):
        assert cli_main(["make-mask", "--height", "4", "--width", "4", "--out", "m.hsc", "--bogus"]) == 2
        assert "error" in capsys.readouterr().err

    def test_unknown_command(self):
        assert cli_main(["paint"]) == 2

    def test_missing_required_flag(self):
        assert cli_main(["make-mask", "--height", "4"]) == 2

    def test_missing_input_file(self, tmp_path, capsys):
        code = cli_main(["metrics", "--ref", str(tmp_path / "a.hsc"), "--est", str(tmp_path / "b.hsc")])
        assert code == 2
        err = capsys.readouterr().err
        assert err.count("\n") == 1

    def test_export_needs_one_mode(self, workspace):
        cube = str(workspace / "scene.hsc")
        assert cli_main(["export-png", "--cube", cube, "--out", str(workspace / "x.png")]) == 2

    def test_inconsistent_band_count(self, workspace, capsys):
        flags = ["--mask", str(workspace / "mask.hsc"), "--system", "sd", "--bands", str(BANDS + 2)]
        code = cli_main(
            ["baseline-gaptv", "--meas", str(workspace / "y.hsc"), *flags, "--out", str(workspace / "g.hsc")]
        )
        assert code != 0
        assert "does not match" in capsys.readouterr().err

    def test_system_mismatch_shape(self, workspace):
        code = cli_main(
            [
                "reconstruct",
                "--meas",
                str(workspace / "y.hsc"),
                "--mask",
                str(workspace / "mask.hsc"),
                "--system",
                "ss",
                "--bands",
                str(BANDS),
                "--iters",
                "1",
                *NETWORK_FLAGS,
                "--out",
                str(workspace / "r.hsc"),
            ]
        )
        assert code != 0

    def test_corrupt_cube(self, tmp_path, capsys):
        bad = tmp_path / "bad.hsc"
        bad.write_bytes(b"NOPE" + bytes(12))
        code = cli_main(["export-png", "--cube", str(bad), "--band", "0", "--out", str(tmp_path / "x.png")])
        assert code == 1
        assert "magic" in capsys.readouterr().err
