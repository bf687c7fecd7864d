"""On-disk cache of resolutions.

File layout (little endian)::

    b"COHORES1"
    u32 p, u32 N, u32 |G|, u8 strategy (0 minimal, 1 greedy)
    64 bytes  group fingerprint (ascii hex)
    u32 ranks[N + 1]
    d_1 .. d_N as row-major uint8, shape (r_n, r_{n-1} |G|)

A file of length N' >= N serves a request for N by truncation.
"""

from __future__ import annotations

import os
import re
import struct
import threading
from pathlib import Path

import numpy as np

MAGIC = b"COHORES1"
_STRATEGIES = ("minimal", "greedy")
_HEAD = struct.Struct("<IIIB")


class CacheFormatError(ValueError):
    pass


def default_cache_dir() -> Path:
    return Path(os.environ.get("COHOFORGE_CACHE", ".cohoforge-cache"))


def dump(res, fh) -> None:
    G = res.group
    fh.write(MAGIC)
    fh.write(_HEAD.pack(res.p, res.length, G.order, _STRATEGIES.index(res.strategy)))
    fh.write(G.fingerprint.encode("ascii")[:64].ljust(64, b"\0"))
    fh.write(np.asarray(res.ranks, dtype="<u4").tobytes())
    for d in res.diffs:
        fh.write(np.ascontiguousarray(d, dtype=np.uint8).tobytes())


def load(G, fh, N: int | None = None):
    from .resolution import Resolution

    if fh.read(8) != MAGIC:
        raise CacheFormatError("bad magic")
    p, length, order, strat = _HEAD.unpack(fh.read(_HEAD.size))
    fp = fh.read(64).rstrip(b"\0").decode("ascii")
    if order != G.order or fp != G.fingerprint:
        raise CacheFormatError("cache entry belongs to a different group")
    ranks = np.frombuffer(fh.read(4 * (length + 1)), dtype="<u4").astype(int).tolist()
    N = length if N is None else N
    if N > length:
        raise CacheFormatError(f"cached length {length} < requested {N}")
    diffs = []
    for n in range(1, N + 1):
        size = ranks[n] * ranks[n - 1] * order
        buf = fh.read(size)
        if len(buf) != size:
            raise CacheFormatError("truncated payload")
        d = np.frombuffer(buf, dtype=np.uint8).reshape(ranks[n], ranks[n - 1] * order).copy()
        if d.size and d.max() >= p:
            raise CacheFormatError("entry out of range")
        diffs.append(d)
    return Resolution(G, p, _STRATEGIES[strat], ranks[: N + 1], diffs)


class ResolutionCache:
    """Directory of resolution files keyed by group hash, p, strategy and N."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self._lock = threading.Lock()

    def _name(self, G, p, N, strategy):
        return f"{G.fingerprint[:32]}-p{p}-{strategy}-N{N}.cores"

    def load(self, G, p, N, strategy):
        with self._lock:
            if not self.directory.is_dir():
                return None
            pat = re.compile(rf"{G.fingerprint[:32]}-p{p}-{strategy}-N(\d+)\.cores$")
            best = None
            for f in self.directory.iterdir():
                m = pat.match(f.name)
                if m and int(m.group(1)) >= N and (best is None or int(m.group(1)) < best[0]):
                    best = (int(m.group(1)), f)
            if best is None:
                return None
            try:
                with open(best[1], "rb") as fh:
                    return load(G, fh, N)
            except (CacheFormatError, OSError, struct.error, ValueError):
                return None

    def store(self, res) -> Path:
        with self._lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            path = self.directory / self._name(res.group, res.p, res.length, res.strategy)
            tmp = path.with_suffix(".tmp")
            with open(tmp, "wb") as fh:
                dump(res, fh)
            os.replace(tmp, path)
            return path
