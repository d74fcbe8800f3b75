import csv
import struct
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.exceptions import CubeFormatError
from app.core.logger import logger
from app.literals.imaging import MaskKind, SystemKind
from app.schemas.imaging import CodedMask, HsiCube, Snapshot

HEADER = struct.Struct("<III")
PAYLOAD_DTYPE = np.dtype("<f4")


class CubeRepository:
    """
    Reads and writes the HSC1 container.

    Layout: 4-byte magic, little-endian uint32 height, width and bands, then
    height * width * bands little-endian float32 values, band-major and
    row-major within each band. Masks and snapshots are stored as one-band
    cubes. Wavelengths live in an optional sidecar CSV next to the file.
    """

    @staticmethod
    def sidecar_path(path: Path) -> Path:
        path = Path(path)
        return path.with_name(path.name + settings.WAVELENGTH_SIDECAR_SUFFIX)

    @classmethod
    def encode(cls, values: np.ndarray) -> bytes:
        """
        Serialize a (bands, height, width) array.

        :param values: Finite array; it is stored as float32.
        :return: The complete file contents.
        """
        bands, height, width = values.shape
        payload = np.ascontiguousarray(values, dtype=PAYLOAD_DTYPE).tobytes()
        return settings.CUBE_MAGIC_BYTES + HEADER.pack(height, width, bands) + payload

    @classmethod
    def decode(cls, content: bytes, source: str = "<bytes>") -> np.ndarray:
        magic = settings.CUBE_MAGIC_BYTES
        prefix = len(magic) + HEADER.size
        if len(content) < prefix:
            raise CubeFormatError(f"{source}: file too short for a cube header ({len(content)} bytes)")
        if content[: len(magic)] != magic:
            raise CubeFormatError(f"{source}: bad magic {content[: len(magic)]!r}, expected {magic!r}")

        height, width, bands = HEADER.unpack_from(content, len(magic))
        if 0 in (height, width, bands):
            raise CubeFormatError(f"{source}: header declares an empty cube {height}x{width}x{bands}")
        expected = prefix + PAYLOAD_DTYPE.itemsize * height * width * bands
        if len(content) != expected:
            raise CubeFormatError(
                f"{source}: expected {expected} bytes for {height}x{width}x{bands}, got {len(content)}"
            )

        values = np.frombuffer(content, dtype=PAYLOAD_DTYPE, offset=prefix).reshape(bands, height, width)
        if not np.all(np.isfinite(values)):
            raise CubeFormatError(f"{source}: payload holds non-finite values")
        return values.astype(np.float32)

    @classmethod
    def read_values(cls, path: Path) -> np.ndarray:
        path = Path(path)
        return cls.decode(path.read_bytes(), str(path))

    @classmethod
    def write_values(cls, path: Path, values: np.ndarray) -> None:
        path = Path(path)
        if not np.all(np.isfinite(values)):
            raise CubeFormatError(f"{path}: refusing to write non-finite values")
        path.write_bytes(cls.encode(values))
        logger.info("Wrote cube file", extra={"path": str(path), "shape": list(values.shape)})

    @classmethod
    def read_wavelengths(cls, path: Path) -> Optional[tuple[float, ...]]:
        sidecar = cls.sidecar_path(path)
        if not sidecar.exists():
            return None
        with sidecar.open(newline="") as handle:
            try:
                return tuple(float(row[0]) for row in csv.reader(handle) if row and row[0].strip())
            except ValueError as exc:
                raise CubeFormatError(f"{sidecar}: wavelength entries must be numbers") from exc

    @classmethod
    def write_wavelengths(cls, path: Path, wavelengths: Sequence[float]) -> None:
        with cls.sidecar_path(path).open("w", newline="") as handle:
            writer = csv.writer(handle)
            for value in wavelengths:
                writer.writerow([repr(float(value))])

    @classmethod
    def read_cube(cls, path: Path) -> HsiCube:
        values = cls.read_values(path)
        wavelengths = cls.read_wavelengths(path)
        if wavelengths is not None and len(wavelengths) != values.shape[0]:
            raise CubeFormatError(
                f"{path}: sidecar lists {len(wavelengths)} wavelengths for {values.shape[0]} bands"
            )
        return HsiCube(values=values, wavelengths=wavelengths)

    @classmethod
    def write_cube(cls, path: Path, cube: HsiCube) -> None:
        cls.write_values(path, cube.values)
        if cube.wavelengths is not None:
            cls.write_wavelengths(path, cube.wavelengths)

    @classmethod
    def _read_plane(cls, path: Path, what: str) -> np.ndarray:
        values = cls.read_values(path)
        if values.shape[0] != 1:
            raise CubeFormatError(f"{path}: a {what} file must hold exactly one band, found {values.shape[0]}")
        return values[0]

    @classmethod
    def read_mask(cls, path: Path) -> CodedMask:
        """Load a mask; it is tagged binary when every entry is 0 or 1, gray otherwise."""
        plane = cls._read_plane(path, "mask")
        if plane.min() < 0.0 or plane.max() > 1.0:
            raise CubeFormatError(f"{path}: mask transmission must lie in [0, 1]")
        kind = MaskKind.BINARY if np.all((plane == 0.0) | (plane == 1.0)) else MaskKind.GRAY
        return CodedMask(values=plane, kind=kind)

    @classmethod
    def write_mask(cls, path: Path, mask: CodedMask) -> None:
        cls.write_values(path, mask.values[None, :, :])

    @classmethod
    def read_snapshot(cls, path: Path, system: SystemKind) -> Snapshot:
        return Snapshot(values=cls._read_plane(path, "measurement"), system=system)

    @classmethod
    def write_snapshot(cls, path: Path, snapshot: Snapshot) -> None:
        cls.write_values(path, snapshot.values[None, :, :])


cube_repository = CubeRepository()
