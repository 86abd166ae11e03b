"""Content-addressed JSON cache for expensive enumeration results.

One file per entry, named by the sha256 of (operation, canonical args,
version tag).  Writes go through a temp file and ``os.replace``.
"""

import hashlib
import json
import os
import tempfile
import time
import warnings

VERSION = "fplpoly-cache-1"


def default_path():
    return os.environ.get("FPL_CACHE") or os.path.join(
        os.path.expanduser("~"), ".cache", "fplpoly")


class Cache:
    def __init__(self, path=None, version=VERSION, enabled=True):
        self.path = path or default_path()
        self.version = version
        self.enabled = enabled

    def key(self, op, args):
        blob = json.dumps([op, args, self.version], sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def _file(self, k):
        return os.path.join(self.path, k[:2], k + ".json")

    def load(self, op, args):
        """Stored value or None (missing, stale or unreadable)."""
        if not self.enabled:
            return None
        k = self.key(op, args)
        f = self._file(k)
        if not os.path.exists(f):
            return None
        try:
            with open(f) as fh:
                doc = json.load(fh)
            if doc.get("version") != self.version or doc.get("key") != k:
                return None
            return doc["value"]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            warnings.warn(f"ignoring corrupt cache entry {f}: {exc}")
            return None

    def store(self, op, args, value):
        if not self.enabled:
            return
        k = self.key(op, args)
        f = self._file(k)
        doc = {"key": k, "op": op, "args": args, "version": self.version,
               "created": time.time(), "value": value}
        try:
            os.makedirs(os.path.dirname(f), exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=os.path.dirname(f), suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh, sort_keys=True)
            os.replace(tmp, f)
        except OSError as exc:
            warnings.warn(f"cache disabled: {exc}")
            self.enabled = False

    def get_or_compute(self, op, args, compute, encode=lambda v: v, decode=lambda v: v):
        hit = self.load(op, args)
        if hit is not None:
            return decode(hit)
        value = compute()
        self.store(op, args, encode(value))
        return value


# census maps: word tuple -> int, serialized as {"0101": "3", ...}

def encode_census(c):
    return {"".join(map(str, w)): str(v) for w, v in sorted(c.items())}


def decode_census(doc):
    return {tuple(int(ch) for ch in w): int(v) for w, v in sorted(doc.items())}


def cached_census(n, parity="even", workers=1, cache=None):
    from . import fpl_grid

    cache = cache or Cache()
    return cache.get_or_compute("census", {"n": n, "parity": parity},
                                lambda: fpl_grid.census(n, parity, workers),
                                encode_census, decode_census)
