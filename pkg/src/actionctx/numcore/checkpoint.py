"""Binary checkpoint format for named float32 arrays.

Layout (all integers little-endian u32):

    magic "MTCNCKPT" | version | record*
    record := name_len | name utf-8 | rank | dims[rank] | float32 values (LE)

Round-trips are bit-exact; arrays must already be float32.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"MTCNCKPT"
VERSION = 1


class CheckpointError(Exception):
    """Malformed or mismatched checkpoint file."""


def save_checkpoint(path, arrays: dict[str, np.ndarray]) -> None:
    path = Path(path)
    chunks = [MAGIC, struct.pack("<I", VERSION)]
    for name, arr in arrays.items():
        if arr.dtype != np.float32:
            raise CheckpointError(
                f"checkpoint arrays must be float32 for bit-exact round-trips; "
                f"{name!r} has dtype {arr.dtype}"
            )
        encoded = name.encode("utf-8")
        chunks.append(struct.pack("<I", len(encoded)))
        chunks.append(encoded)
        chunks.append(struct.pack("<I", arr.ndim))
        chunks.append(struct.pack(f"<{arr.ndim}I", *arr.shape))
        chunks.append(np.ascontiguousarray(arr, dtype="<f4").tobytes())
    path.write_bytes(b"".join(chunks))


def load_checkpoint(path) -> dict[str, np.ndarray]:
    blob = Path(path).read_bytes()
    if blob[: len(MAGIC)] != MAGIC:
        raise CheckpointError(
            f"bad checkpoint magic: expected {MAGIC!r}, got {blob[:len(MAGIC)]!r}"
        )
    offset = len(MAGIC)

    def read(n: int) -> bytes:
        nonlocal offset
        if offset + n > len(blob):
            raise CheckpointError(
                f"truncated checkpoint: wanted {offset + n} bytes, file has {len(blob)}"
            )
        piece = blob[offset : offset + n]
        offset += n
        return piece

    (version,) = struct.unpack("<I", read(4))
    if version != VERSION:
        raise CheckpointError(f"unsupported checkpoint version {version}, expected {VERSION}")

    arrays: dict[str, np.ndarray] = {}
    while offset < len(blob):
        (name_len,) = struct.unpack("<I", read(4))
        name = read(name_len).decode("utf-8")
        if name in arrays:
            raise CheckpointError(f"duplicate parameter name {name!r} in checkpoint")
        (rank,) = struct.unpack("<I", read(4))
        dims = struct.unpack(f"<{rank}I", read(4 * rank))
        count = int(np.prod(dims)) if rank else 1
        values = np.frombuffer(read(4 * count), dtype="<f4").reshape(dims)
        arrays[name] = values.astype(np.float32, copy=True)
    return arrays
