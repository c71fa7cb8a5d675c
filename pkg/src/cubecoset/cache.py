"""Binary cache files for generated tables.

Layout (little-endian)::

    magic      4 bytes
    version    1 byte
    n_arrays   u32
    per array: name_len u16, name utf-8, dtype_len u8, dtype str,
               ndim u8, shape u64 * ndim
    payload    raw array bytes, in header order
    crc32      u32 over the payload

Loading verifies magic, version, every array size against the file length,
and the checksum.
"""

from __future__ import annotations

import os
import struct
import zlib
from pathlib import Path

import numpy as np

VERSION = 1


class CacheError(Exception):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get("CUBECOSET_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cubecoset"


def save_arrays(path, magic: bytes, arrays: dict[str, np.ndarray]) -> None:
    assert len(magic) == 4
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = [magic, struct.pack("<BI", VERSION, len(arrays))]
    for name, arr in arrays.items():
        arr = np.ascontiguousarray(arr)
        nb = name.encode()
        dt = arr.dtype.newbyteorder("<").str.encode()
        header.append(struct.pack("<H", len(nb)) + nb)
        header.append(struct.pack("<B", len(dt)) + dt)
        header.append(struct.pack("<B", arr.ndim) + struct.pack(f"<{arr.ndim}Q", *arr.shape))
    tmp = path.with_suffix(path.suffix + ".tmp")
    crc = 0
    with open(tmp, "wb") as fh:
        fh.write(b"".join(header))
        for arr in arrays.values():
            buf = np.ascontiguousarray(arr).astype(arr.dtype.newbyteorder("<"), copy=False)
            mv = memoryview(buf).cast("B")
            crc = zlib.crc32(mv, crc)
            fh.write(mv)
        fh.write(struct.pack("<I", crc))
    os.replace(tmp, path)


def load_arrays(path, magic: bytes) -> dict[str, np.ndarray]:
    path = Path(path)
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != magic:
        raise CacheError(f"{path}: bad magic {data[:4]!r}")
    version, count = struct.unpack_from("<BI", data, 4)
    if version != VERSION:
        raise CacheError(f"{path}: unsupported version {version}")
    pos = 9
    specs = []
    for _ in range(count):
        (nlen,) = struct.unpack_from("<H", data, pos)
        pos += 2
        name = data[pos:pos + nlen].decode()
        pos += nlen
        (dlen,) = struct.unpack_from("<B", data, pos)
        pos += 1
        dtype = np.dtype(data[pos:pos + dlen].decode())
        pos += dlen
        (ndim,) = struct.unpack_from("<B", data, pos)
        pos += 1
        shape = struct.unpack_from(f"<{ndim}Q", data, pos)
        pos += 8 * ndim
        specs.append((name, dtype, shape))
    expected = pos + sum(int(np.prod(s, dtype=np.int64)) * d.itemsize for _, d, s in specs) + 4
    if len(data) != expected:
        raise CacheError(f"{path}: truncated or oversized ({len(data)} != {expected} bytes)")
    (crc,) = struct.unpack_from("<I", data, len(data) - 4)
    if zlib.crc32(memoryview(data)[pos:len(data) - 4]) != crc:
        raise CacheError(f"{path}: checksum mismatch")
    out = {}
    for name, dtype, shape in specs:
        n = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
        out[name] = np.frombuffer(data, dtype=dtype, count=n // dtype.itemsize,
                                  offset=pos).reshape(shape).astype(dtype.newbyteorder("="))
        pos += n
    return out
