"""Optional on-disk cache of reduced Groebner bases.

Entries are content addressed by a hash of the ring (characteristic,
variables, order) and the sorted generator strings. Each file holds the
ring-spec text followed by one basis polynomial per line.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

_directory = None


def set_cache_dir(path):
    """Enable the cache under ``path``; ``None`` disables it."""
    global _directory
    _directory = Path(path) if path else None
    if _directory is not None:
        _directory.mkdir(parents=True, exist_ok=True)


def cache_dir():
    return _directory


def cache_key(ring, gens) -> str:
    body = "\n".join(sorted(str(g) for g in gens))
    text = f"{ring.p}|{' '.join(ring.variables)}|{ring.order}|{body}"
    return hashlib.sha256(text.encode()).hexdigest()


def lookup(ring, gens):
    if _directory is None:
        return None
    path = _directory / (cache_key(ring, gens) + ".gb")
    if not path.exists():
        return None
    from .parser import parse_poly

    lines = path.read_text(encoding="utf-8").splitlines()
    header, body = lines[:3], lines[3:]
    if header != ring.to_text().splitlines():
        return None
    return tuple(parse_poly(line, ring).monic() for line in body if line.strip())


def store(ring, gens, gb):
    if _directory is None:
        return
    path = _directory / (cache_key(ring, gens) + ".gb")
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text(ring.to_text() + "".join(f"{g}\n" for g in gb), encoding="utf-8")
    tmp.replace(path)
