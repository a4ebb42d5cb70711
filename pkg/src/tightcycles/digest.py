"""Canonical serialization and content digest of coloured instances."""

from __future__ import annotations

import hashlib
import json

from .hypergraph import ColouredHypergraph

FORMAT_VERSION = 1


def canonical_instance(G: ColouredHypergraph) -> dict:
    """Plain-data form with a fixed field and edge order."""
    edges = [list(e) + [G.colour[e]] for e in sorted(G.edges)]
    return {"version": FORMAT_VERSION, "k": G.k, "n": G.n, "r": G.r, "edges": edges}


def canonical_bytes(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def instance_digest(G: ColouredHypergraph) -> str:
    """``sha256:`` hex digest of the canonical serialization."""
    return "sha256:" + hashlib.sha256(canonical_bytes(canonical_instance(G))).hexdigest()
