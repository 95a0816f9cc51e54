"""Line-oriented text format for attack trees, plus JSON result emission.

One declaration per line::

    # Trojan war
    or   root ram horse s
    sand ram  w r a
    sand horse w h t
    bas  w 2
    bas  r 3
    ...
    root root        # optional, cross-checked

Children may be declared after first use; the root is the one identifier
never referenced as a child.  Sequential-gate child order is the listed
order.  Durations are plain decimals (no exponent notation).
"""

from __future__ import annotations

import json
import math
import re

from .attacks import Attack, hasse_pairs, is_successful
from .errors import (
    DatError,
    DatSyntaxError,
    DuplicateDeclaration,
    UnknownChild,
)
from .model import NAME_RE, Dat, GateType, build_dat

_DURATION_RE = re.compile(r"[0-9]+(\.[0-9]+)?\Z")
_GATE_WORDS = {"or": GateType.OR, "and": GateType.AND, "sand": GateType.SAND}


def _tokens(line: str) -> list[tuple[int, str]]:
    """(1-based column, token) pairs; comments stripped."""
    body = line.split("#", 1)[0]
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]


def parse_dat(text: str) -> Dat:
    """Parse a document into a validated tree; diagnostics carry line/col."""
    nodes: list[tuple[str, GateType]] = []
    children: dict[str, list[str]] = {}
    durations: dict[str, float] = {}
    declared: dict[str, int] = {}     # name -> line
    references: list[tuple[str, int, int]] = []
    root_line: tuple[str, int, int] | None = None

    for ln, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        col0, word = toks[0]
        if word == "root":
            if len(toks) != 2:
                raise DatSyntaxError(ln, col0, "expected: root <id>")
            if root_line is not None:
                raise DatSyntaxError(ln, col0, "root already declared")
            root_line = (toks[1][1], ln, toks[1][0])
            continue
        if word == "bas":
            if len(toks) != 3:
                raise DatSyntaxError(ln, col0, "expected: bas <id> <duration>")
            (_, name), (dcol, dur) = toks[1], toks[2]
            _check_name(name, ln, toks[1][0])
            if name in declared:
                raise DuplicateDeclaration(ln, toks[1][0], name)
            if not _DURATION_RE.match(dur):
                raise DatSyntaxError(ln, dcol, f"bad duration {dur!r}")
            declared[name] = ln
            nodes.append((name, GateType.BAS))
            durations[name] = float(dur)
            continue
        if word in _GATE_WORDS:
            if len(toks) < 3:
                raise DatSyntaxError(ln, col0, f"expected: {word} <id> <child>...")
            name = toks[1][1]
            _check_name(name, ln, toks[1][0])
            if name in declared:
                raise DuplicateDeclaration(ln, toks[1][0], name)
            declared[name] = ln
            nodes.append((name, _GATE_WORDS[word]))
            kids = []
            for col, kid in toks[2:]:
                _check_name(kid, ln, col)
                kids.append(kid)
                references.append((kid, ln, col))
            children[name] = kids
            continue
        raise DatSyntaxError(ln, col0, f"unknown declaration {word!r}")

    for kid, ln, col in references:
        if kid not in declared:
            raise UnknownChild(ln, col, kid)

    root_hint = None
    if root_line is not None:
        name, ln, col = root_line
        if name not in declared:
            raise UnknownChild(ln, col, name)
        root_hint = name

    try:
        dat = build_dat(nodes, children, durations, root_hint=root_hint)
    except DatError as exc:
        raise _located(exc, declared) from exc
    return dat


def _check_name(name: str, ln: int, col: int) -> None:
    # keywords only matter at the start of a line, so any identifier is fine here
    if not NAME_RE.match(name):
        raise DatSyntaxError(ln, col, f"bad identifier {name!r}")


def _located(exc: DatError, declared: dict[str, int]) -> DatError:
    """Attach a declaration line to a structural error when one is known."""
    node = getattr(exc, "node", None) or getattr(exc, "name", None)
    if node is None:
        nodes = getattr(exc, "nodes", None) or getattr(exc, "roots", None)
        if nodes:
            node = min(nodes, key=lambda n: declared.get(n, 1 << 30))
    line = declared.get(node)
    if line is None:
        return DatSyntaxError(1, 1, str(exc))
    return DatSyntaxError(line, 1, str(exc))


def format_duration(value: float) -> str:
    """Shortest plain-decimal rendering that parses back to the same float."""
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    text = repr(value)
    if "e" in text or "E" in text:
        text = format(value, ".17f").rstrip("0")
        if text.endswith("."):
            text += "0"
    return text


def serialize_dat(dat: Dat) -> str:
    """Canonical document: gates root-first in topological order, then steps."""
    lines = []
    for v in reversed(dat.topo_order):
        if dat.is_bas(v):
            continue
        kids = " ".join(dat.names[c] for c in dat.children[v])
        lines.append(f"{dat.types[v].value} {dat.names[v]} {kids}")
    for v in range(dat.n_nodes):
        if dat.is_bas(v):
            lines.append(f"bas {dat.names[v]} {format_duration(dat.durations[v])}")
    return "\n".join(lines) + "\n"


def emit_result_json(
    dat: Dat,
    file: str,
    algorithm: str,
    min_time: float,
    witness: Attack | None,
    wall_ms: float,
) -> str:
    """One result object with a fixed key order; infinity becomes \"inf\"."""
    satisfiable = not math.isinf(min_time)
    payload = {
        "file": file,
        "algorithm": algorithm,
        "min_time": "inf" if math.isinf(min_time) else min_time,
        "satisfiable": satisfiable,
        "witness": _witness_json(dat, witness),
        "wall_ms": wall_ms,
    }
    return json.dumps(payload)


def _witness_json(dat: Dat, witness: Attack | None):
    if witness is None:
        return None
    pairs = sorted((dat.names[a], dat.names[b]) for a, b in hasse_pairs(witness))
    return {
        "bas": sorted(dat.names[a] for a in witness.bas),
        "order": [list(p) for p in pairs],
    }


def check_witness(dat: Dat, witness_obj) -> bool:
    """Re-check an emitted witness object against the tree."""
    from .attacks import make_attack

    bas = [dat.index[name] for name in witness_obj["bas"]]
    pairs = [(dat.index[a], dat.index[b]) for a, b in witness_obj["order"]]
    return is_successful(dat, make_attack(bas, pairs))
