"""Bit-exact payload formats for masks, saliency fields, and index lists.

SI-TENSOR v1 is a single ASCII header line::

    SI-TENSOR v1 dtype=<u8|f32> dims=<d0>[x<d1>[x<d2>]]

terminated by a newline and followed by raw little-endian row-major data.
``u8`` payloads hold binary masks (0 = out, 1 = in); ``f32`` payloads hold
saliency scores. One to three axes are accepted so the same container
serves token sequences (T), images (HxW), and packed per-class stacks
(CxHxW).

Index-list payloads are plain ASCII integers separated by whitespace, used
as an alternative ground-truth or pre-discretized saliency representation
for text.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .errors import TensorFormatError

MAGIC = b"SI-TENSOR"
_HEADER_LIMIT = 256

_DTYPES = {"u8": np.dtype("<u1"), "f32": np.dtype("<f4")}
_CODES = {np.dtype(np.uint8): "u8", np.dtype(np.float32): "f32"}


def write_tensor(path: str | os.PathLike, array: np.ndarray) -> Path:
    """Write ``array`` (uint8 or float32, 1-3 axes) as SI-TENSOR v1."""
    path = Path(path)
    array = np.asarray(array)
    code = _CODES.get(array.dtype)
    if code is None:
        raise TensorFormatError(
            f"unsupported dtype {array.dtype}; payloads are uint8 or float32"
        )
    if not 1 <= array.ndim <= 3:
        raise TensorFormatError(f"payloads take 1-3 axes, got {array.ndim}")
    if any(d < 1 for d in array.shape):
        raise TensorFormatError(f"axis lengths must be >= 1, got {array.shape}")
    dims = "x".join(str(d) for d in array.shape)
    header = f"SI-TENSOR v1 dtype={code} dims={dims}\n".encode("ascii")
    data = np.ascontiguousarray(array, dtype=_DTYPES[code])
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data.tobytes(order="C"))
    return path


def _parse_header(header: bytes, where: str) -> tuple[np.dtype, tuple[int, ...]]:
    try:
        text = header.decode("ascii")
    except UnicodeDecodeError as exc:
        raise TensorFormatError(f"{where}: header is not ASCII") from exc
    parts = text.split(" ")
    if len(parts) != 4 or parts[0] != "SI-TENSOR":
        raise TensorFormatError(f"{where}: bad header {text!r}")
    if parts[1] != "v1":
        raise TensorFormatError(f"{where}: unsupported version {parts[1]!r}")
    if not parts[2].startswith("dtype="):
        raise TensorFormatError(f"{where}: missing dtype in {text!r}")
    code = parts[2][len("dtype=") :]
    dtype = _DTYPES.get(code)
    if dtype is None:
        raise TensorFormatError(f"{where}: unknown dtype {code!r}")
    if not parts[3].startswith("dims="):
        raise TensorFormatError(f"{where}: missing dims in {text!r}")
    raw_dims = parts[3][len("dims=") :].split("x")
    if not 1 <= len(raw_dims) <= 3:
        raise TensorFormatError(f"{where}: payloads take 1-3 axes, got {len(raw_dims)}")
    try:
        dims = tuple(int(d) for d in raw_dims)
    except ValueError as exc:
        raise TensorFormatError(f"{where}: bad dims {parts[3]!r}") from exc
    if any(d < 1 for d in dims):
        raise TensorFormatError(f"{where}: axis lengths must be >= 1, got {dims}")
    return dtype, dims


def read_tensor(path: str | os.PathLike) -> np.ndarray:
    """Read an SI-TENSOR v1 payload; round-trips :func:`write_tensor` exactly."""
    path = Path(path)
    raw = path.read_bytes()
    newline = raw.find(b"\n", 0, _HEADER_LIMIT)
    if newline < 0:
        raise TensorFormatError(f"{path}: no header line within {_HEADER_LIMIT} bytes")
    dtype, dims = _parse_header(raw[:newline], str(path))
    count = int(np.prod(dims))
    body = raw[newline + 1 :]
    expected = count * dtype.itemsize
    if len(body) != expected:
        raise TensorFormatError(
            f"{path}: payload holds {len(body)} bytes, header implies {expected}"
        )
    data = np.frombuffer(body, dtype=dtype).reshape(dims)
    return data.copy()


def sniff_kind(path: str | os.PathLike) -> str:
    """Report ``"tensor"`` or ``"index_list"`` from the file's leading bytes."""
    with open(path, "rb") as fh:
        head = fh.read(len(MAGIC))
    return "tensor" if head == MAGIC else "index_list"


def read_index_list(path: str | os.PathLike) -> np.ndarray:
    """Read an ASCII index-list payload into a sorted unique int64 array."""
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise TensorFormatError(f"{path}: index list is not ASCII") from exc
    tokens = text.split()
    try:
        values = np.array([int(t) for t in tokens], dtype=np.int64)
    except ValueError as exc:
        raise TensorFormatError(f"{path}: index list holds a non-integer token") from exc
    return np.unique(values)


def write_index_list(path: str | os.PathLike, indices) -> Path:
    """Write sorted integer indices, one per line."""
    path = Path(path)
    values = np.unique(np.asarray(list(indices), dtype=np.int64))
    path.write_text("\n".join(str(int(i)) for i in values) + ("\n" if values.size else ""))
    return path
