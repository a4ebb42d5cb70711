"""Instance, certificate and family files, plus seeded instance generators.

All files are JSON with sorted keys and one list entry per line, so they
diff well and serialize byte-identically.  Certificates carry the digest
of the instance they were produced for.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from .digest import FORMAT_VERSION, instance_digest
from .driver import PartitionCertificate, PowerCycle
from .errors import InvalidArgument, ParseError
from .hypergraph import ColouredHypergraph, Hypergraph
from .lemmas import SubsetFamily
from .tight import ANY_COLOUR, TightCycle

INSTANCE_FORMAT = "tightcycles-instance"
CERTIFICATE_FORMAT = "tightcycles-certificate"
POWER_FORMAT = "tightcycles-power-certificate"
FAMILY_FORMAT = "tightcycles-family"


def dumps(obj: dict) -> str:
    """Top-level keys sorted, one line per element of list-valued fields."""
    lines = ["{"]
    keys = sorted(obj)
    for i, key in enumerate(keys):
        value = obj[key]
        comma = "," if i < len(keys) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            lines.append(f"  {json.dumps(key)}: [")
            for j, item in enumerate(value):
                sep = "," if j < len(value) - 1 else ""
                lines.append("    " + json.dumps(item, sort_keys=True, separators=(", ", ": ")) + sep)
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, sort_keys=True, separators=(', ', ': '))}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_json(text: str, what: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object", "$")
    return obj


def _field(obj: dict, key: str, kind, path: str = "$", required: bool = True, default=None):
    if key not in obj:
        if required:
            raise ParseError(f"missing field {key!r}", path)
        return default
    value = obj[key]
    ok = isinstance(value, kind) and not (kind is int and isinstance(value, bool))
    if not ok:
        raise ParseError(f"field {key!r} has the wrong type", f"{path}.{key}")
    return value


def _int_list(value, path: str) -> list:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ParseError("expected a list of integers", path)
    return value


def _check_format(obj: dict, expected: str):
    fmt = _field(obj, "format", str)
    if fmt != expected:
        raise ParseError(f"expected format {expected!r}, got {fmt!r}", "$.format")
    version = _field(obj, "version", int)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported version {version}", "$.version")


# -- instances -----------------------------------------------------------------

@dataclass(frozen=True)
class InstanceFile:
    graph: ColouredHypergraph
    alpha: Optional[int] = None
    graph_convention: bool = False

    @property
    def digest(self) -> str:
        return instance_digest(self.graph)


def instance_to_dict(inst: InstanceFile, compact: bool = False) -> dict:
    G = inst.graph
    out = {"format": INSTANCE_FORMAT, "version": FORMAT_VERSION, "k": G.k, "n": G.n, "r": G.r,
           "digest": inst.digest}
    complete = len(G.edges) == len(list(combinations(range(G.n), G.k))) if compact else False
    if complete:
        out["complete_with_colouring"] = [G.colour[e] for e in combinations(range(G.n), G.k)]
    else:
        out["edges"] = [list(e) + [G.colour[e]] for e in sorted(G.edges)]
    if inst.alpha is not None:
        out["alpha"] = inst.alpha
    if inst.graph_convention:
        out["graph_convention"] = True
    return out


def dump_instance(inst: InstanceFile, compact: bool = False) -> str:
    return dumps(instance_to_dict(inst, compact))


def load_instance(text: str) -> InstanceFile:
    obj = _parse_json(text, "instance")
    _check_format(obj, INSTANCE_FORMAT)
    k = _field(obj, "k", int)
    n = _field(obj, "n", int)
    r = _field(obj, "r", int)
    if k < 1 or n < 0 or r < 1:
        raise ParseError("need k >= 1, n >= 0 and r >= 1", "$")
    colouring: dict = {}
    if "complete_with_colouring" in obj:
        if "edges" in obj:
            raise ParseError("give either 'edges' or 'complete_with_colouring'", "$")
        colours = _int_list(obj["complete_with_colouring"], "$.complete_with_colouring")
        edges = list(combinations(range(n), k))
        if len(colours) != len(edges):
            raise ParseError(f"expected {len(edges)} colours, got {len(colours)}", "$.complete_with_colouring")
        for i, (e, c) in enumerate(zip(edges, colours)):
            if not 1 <= c <= r:
                raise ParseError(f"colour {c} outside 1..{r}", f"$.complete_with_colouring[{i}]")
            colouring[e] = c
    else:
        raw = _field(obj, "edges", list)
        for i, item in enumerate(raw):
            path = f"$.edges[{i}]"
            row = _int_list(item, path)
            if len(row) != k + 1:
                raise ParseError(f"an edge row needs {k} vertices and a colour", path)
            *vs, c = row
            e = tuple(sorted(vs))
            if list(e) != vs:
                raise ParseError("edge vertices must be sorted", path)
            if len(set(e)) != k or e[0] < 0 or e[-1] >= n:
                raise ParseError(f"edge {vs} is not a {k}-subset of 0..{n - 1}", path)
            if not 1 <= c <= r:
                raise ParseError(f"colour {c} outside 1..{r}", f"{path}[{k}]")
            if e in colouring:
                raise ParseError(f"duplicate edge {vs}", path)
            colouring[e] = c
    alpha = _field(obj, "alpha", int, required=False)
    conv = _field(obj, "graph_convention", bool, required=False, default=False)
    if conv and k != 2:
        raise ParseError("graph_convention only applies to k = 2", "$.graph_convention")
    G = ColouredHypergraph(Hypergraph(k, n, frozenset(colouring)), r, colouring)
    inst = InstanceFile(G, alpha, conv)
    if "digest" in obj and obj["digest"] != inst.digest:
        raise ParseError("stored digest does not match the instance", "$.digest")
    return inst


# -- certificates --------------------------------------------------------------

def certificate_to_dict(cert: PartitionCertificate) -> dict:
    return {
        "format": CERTIFICATE_FORMAT,
        "version": FORMAT_VERSION,
        "instance_digest": cert.digest,
        "graph_convention": cert.graph_convention,
        "cycles": [{"seq": list(c.seq), "colour": col, "provenance": tag}
                   for (c, col), tag in zip(cert.cycles, cert.provenance)],
    }


def dump_certificate(cert: PartitionCertificate) -> str:
    return dumps(certificate_to_dict(cert))


def load_certificate(text: str, k: int) -> PartitionCertificate:
    obj = _parse_json(text, "certificate")
    _check_format(obj, CERTIFICATE_FORMAT)
    digest = _field(obj, "instance_digest", str)
    conv = _field(obj, "graph_convention", bool, required=False, default=False)
    cycles, tags = [], []
    for i, item in enumerate(_field(obj, "cycles", list)):
        path = f"$.cycles[{i}]"
        if not isinstance(item, dict):
            raise ParseError("a cycle entry must be an object", path)
        seq = _int_list(_field(item, "seq", list, path), f"{path}.seq")
        if not seq:
            raise ParseError("a cycle needs at least one vertex", f"{path}.seq")
        colour = _field(item, "colour", int, path)
        tag = _field(item, "provenance", str, path, required=False, default="fallback")
        cycles.append((TightCycle(k, tuple(seq)), colour))
        tags.append(tag)
    try:
        return PartitionCertificate(digest, tuple(cycles), tuple(tags), conv)
    except InvalidArgument as exc:
        raise ParseError(str(exc), "$.cycles") from None


def power_certificate_to_dict(G: ColouredHypergraph, p: int, cycles: list) -> dict:
    return {
        "format": POWER_FORMAT,
        "version": FORMAT_VERSION,
        "instance_digest": instance_digest(G),
        "k": G.k,
        "p": p,
        "cycles": [{"seq": list(pc.seq), "colour": pc.colour if len(pc.seq) > 1 else ANY_COLOUR}
                   for pc in cycles],
    }


def load_power_certificate(text: str) -> tuple:
    obj = _parse_json(text, "power certificate")
    _check_format(obj, POWER_FORMAT)
    k, p = _field(obj, "k", int), _field(obj, "p", int)
    out = []
    for i, item in enumerate(_field(obj, "cycles", list)):
        path = f"$.cycles[{i}]"
        seq = _int_list(_field(item, "seq", list, path), f"{path}.seq")
        out.append(PowerCycle(k, p, tuple(seq), _field(item, "colour", int, path)))
    return _field(obj, "instance_digest", str), out


# -- set families --------------------------------------------------------------

def load_family(text: str) -> SubsetFamily:
    obj = _parse_json(text, "family")
    _check_format(obj, FAMILY_FORMAT)
    m = _field(obj, "ground_size", int)
    members = [_int_list(x, f"$.members[{i}]") for i, x in enumerate(_field(obj, "members", list))]
    owners = obj.get("owners", list(range(len(members))))
    if not isinstance(owners, list) or len(owners) != len(members):
        raise ParseError("need one owner per member", "$.owners")
    for i, mem in enumerate(members):
        if any(not 0 <= x < m for x in mem):
            raise ParseError(f"member leaves the ground set 0..{m - 1}", f"$.members[{i}]")
    try:
        return SubsetFamily(m, members, [o if not isinstance(o, list) else tuple(o) for o in owners])
    except InvalidArgument as exc:
        raise ParseError(str(exc), "$.owners") from None


def dump_family(F: SubsetFamily) -> str:
    return dumps({"format": FAMILY_FORMAT, "version": FORMAT_VERSION, "ground_size": F.ground_size,
                  "members": [sorted(m) for m in F.members], "owners": list(F.owners)})


def parse_fraction(text: str, what: str = "value") -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what} {text!r} is not a rational number", what) from None


def parse_blocks(spec: str) -> list:
    """``"0-2;3,4,5"`` to ``[[0, 1, 2], [3, 4, 5]]``; errors report the character offset."""
    blocks, pos = [], 0
    for chunk in spec.split(";"):
        block = []
        offset = pos
        for item in chunk.split(","):
            text = item.strip()
            try:
                if "-" in text:
                    lo, hi = text.split("-")
                    block.extend(range(int(lo), int(hi) + 1))
                else:
                    block.append(int(text))
            except ValueError:
                raise ParseError(f"bad block item {item!r}", f"character {offset + 1}") from None
            offset += len(item) + 1
        blocks.append(block)
        pos += len(chunk) + 1
    return blocks


# -- generators ----------------------------------------------------------------

def generate(k: int, n: int, r: int, model: str = "complete-random", p: float = 1.0,
             seed: int = 0) -> ColouredHypergraph:
    """Seeded random instance.

    ``complete-random`` colours every k-set uniformly; ``density`` keeps each
    k-set with probability ``p`` and colours it uniformly.
    """
    if k < 1 or n < 0 or r < 1:
        raise InvalidArgument("need k >= 1, n >= 0 and r >= 1")
    edges = list(combinations(range(n), k))
    rng = np.random.default_rng(seed)
    if model == "complete-random":
        keep = np.ones(len(edges), dtype=bool)
    elif model == "density":
        if not 0 <= p <= 1:
            raise InvalidArgument(f"density must lie in [0, 1], got {p}")
        keep = rng.random(len(edges)) < p
    else:
        raise InvalidArgument(f"unknown model {model!r}")
    colours = rng.integers(1, r + 1, size=len(edges))
    colouring = {e: int(c) for e, c, kept in zip(edges, colours, keep) if kept}
    return ColouredHypergraph(Hypergraph(k, n, frozenset(colouring)), r, colouring)
