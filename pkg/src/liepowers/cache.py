"""Content-addressed JSON cache with checksums and atomic writes."""

import hashlib
import json
import os
import tempfile
from pathlib import Path


def _digest(obj):
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def cache_path(cache_dir, kind, *key):
    return Path(cache_dir) / f"{kind}-{_digest([kind, *[list(k) if isinstance(k, tuple) else k for k in key]])[:24]}.json"


def read_entry(path, key):
    """Payload stored at path, or None if missing, corrupt or for another key."""
    try:
        with open(path) as fh:
            entry = json.load(fh)
    except (OSError, ValueError):
        return None
    if not isinstance(entry, dict) or entry.get("key") != key:
        return None
    payload = entry.get("payload")
    if entry.get("checksum") != _digest(payload):
        return None
    return payload


def write_entry(path, key, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    entry = {"key": key, "payload": payload, "checksum": _digest(payload)}
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(entry, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_or_compute(cache_dir, kind, group, weight, compute, encode=None, decode=None):
    """Cached value of compute() keyed by (kind, group, weight)."""
    key = [kind, group, list(weight)]
    path = cache_path(cache_dir, kind, group, tuple(weight))
    payload = read_entry(path, key)
    if payload is not None:
        return decode(payload) if decode else payload
    value = compute()
    write_entry(path, key, encode(value) if encode else value)
    return value
