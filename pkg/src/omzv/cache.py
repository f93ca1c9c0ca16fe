"""Persistent value store for expensive scalar evaluations.

JSON-lines file, one entry per line, keyed by a hash of the canonical
triple (expression text, omega, quadrature fingerprint).  Readers are
tolerant: a corrupt line is dropped with a warning and the file is
rewritten without it, so the value is recomputed and stored again on
the next request.  Single-writer access is assumed.

A store can be installed process-wide with `install`; the evaluation
modules consult `active()` after their in-memory memo misses, so a CLI
run with --cache transparently reuses values across processes.
"""

import hashlib
import json
import os
import warnings

__all__ = ["ValueCache", "cache_key", "install", "active"]


def cache_key(expr, omega_repr, fingerprint):
    blob = json.dumps([expr, omega_repr, fingerprint],
                      separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ValueCache:
    """Read-through / write-back store of (complex value, error) pairs."""

    def __init__(self, path):
        self.path = str(path)
        self.entries = {}
        self.dropped = 0
        self._load()

    def _load(self):
        if not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    key = rec["key"]
                    val = complex(rec["value"][0], rec["value"][1])
                    err = float(rec["err"])
                except (ValueError, KeyError, TypeError, IndexError):
                    self.dropped += 1
                    continue
                self.entries[key] = (val, err, rec)
        if self.dropped:
            warnings.warn("cache %s: dropped %d corrupt entr%s, will "
                          "recompute" % (self.path, self.dropped,
                                         "y" if self.dropped == 1 else "ies"))
            self._rewrite()

    def _rewrite(self):
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for _, _, rec in self.entries.values():
                fh.write(json.dumps(rec, separators=(",", ":")) + "\n")
        os.replace(tmp, self.path)

    def get(self, expr, omega_repr, fingerprint):
        hit = self.entries.get(cache_key(expr, omega_repr, fingerprint))
        if hit is None:
            return None
        return hit[0], hit[1]

    def put(self, expr, omega_repr, fingerprint, value, err):
        key = cache_key(expr, omega_repr, fingerprint)
        if key in self.entries:
            return
        value = complex(value)
        rec = {
            "key": key,
            "expr": expr,
            "omega": omega_repr,
            "fp": fingerprint,
            "value": [value.real, value.imag],
            "err": float(err),
        }
        self.entries[key] = (value, float(err), rec)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")

    def clear(self):
        self.entries.clear()
        if os.path.exists(self.path):
            os.remove(self.path)

    def __len__(self):
        return len(self.entries)


_ACTIVE = None


def install(store):
    """Make `store` (a ValueCache or None) the process-wide cache."""
    global _ACTIVE
    _ACTIVE = store


def active():
    return _ACTIVE
