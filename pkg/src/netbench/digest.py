"""Canonical serialization and state digests.

Digests are computed over an order-independent canonical JSON form
(sorted keys, sorted collections where the model says order is
irrelevant) so that two equivalent states always hash identically
across runs and platforms.
"""

import hashlib
import json


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, no whitespace drift."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj) -> str:
    """Hex sha256 of the canonical JSON form of ``obj``."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
