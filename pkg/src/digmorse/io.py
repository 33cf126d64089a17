"""JSON documents for digraphs and Morse functions.

Digraph document::

    {"version": 1, "vertices": ["v0", "v1"], "edges": [["v0", "v1"]]}

Morse document: a bare object mapping each label to a non-negative
rational written as ``"p"`` or ``"p/q"``.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path as FsPath
from typing import Any, Mapping

from .digraph import Digraph, build_digraph
from .errors import DigraphError, DocumentError
from .morse import MorseFunction

FORMAT_VERSION = 1
_RATIONAL = re.compile(r"^\d+(/\d+)?$")


def parse_digraph(doc: Mapping[str, Any]) -> Digraph:
    if not isinstance(doc, Mapping):
        raise DocumentError("digraph document must be a JSON object")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format version {version!r}")
    extra = set(doc) - {"version", "vertices", "edges"}
    if extra:
        raise DocumentError(f"unknown fields {sorted(extra)}")
    vertices = doc.get("vertices")
    edges = doc.get("edges", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise DocumentError("'vertices' must be a list of strings")
    if not isinstance(edges, list):
        raise DocumentError("'edges' must be a list")
    pairs = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise DocumentError(f"edge {e!r} must be a pair of labels")
        pairs.append((e[0], e[1]))
    try:
        return build_digraph(vertices, pairs)
    except DigraphError as exc:
        raise DocumentError(str(exc)) from None


def serialize_digraph(G: Digraph) -> dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "vertices": list(G.labels),
        "edges": [[G.label(u), G.label(v)] for u, v in G.sorted_edges()],
    }


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise DocumentError(f"not a rational: {text!r}")
    if isinstance(text, int):
        if text < 0:
            raise DocumentError(f"negative value {text}")
        return Fraction(text)
    if not isinstance(text, str):
        raise DocumentError(f"values must be strings like \"3\" or \"1/2\", got {text!r}")
    s = text.strip()
    if s.startswith("-"):
        raise DocumentError(f"negative value {text!r}")
    if not _RATIONAL.match(s):
        raise DocumentError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise DocumentError(f"zero denominator in {text!r}") from None


def parse_morse(doc: Mapping[str, Any], G: Digraph) -> MorseFunction:
    if not isinstance(doc, Mapping):
        raise DocumentError("Morse document must be a JSON object")
    unknown = [lab for lab in doc if lab not in set(G.labels)]
    if unknown:
        raise DocumentError(f"unknown labels {unknown}")
    missing = [lab for lab in G.labels if lab not in doc]
    if missing:
        raise DocumentError(f"no value for vertices {missing}")
    return MorseFunction(tuple(parse_rational(doc[lab]) for lab in G.labels))


def serialize_morse(G: Digraph, f: MorseFunction) -> dict[str, str]:
    return {lab: format_rational(f[v]) for v, lab in enumerate(G.labels)}


def read_json(path: str | FsPath) -> tuple[Any, str]:
    """Parsed JSON and the sha256 of the raw bytes."""
    try:
        raw = FsPath(path).read_bytes()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from None
    return data, hashlib.sha256(raw).hexdigest()


def load_digraph(path: str | FsPath) -> Digraph:
    return parse_digraph(read_json(path)[0])


def load_morse(path: str | FsPath, G: Digraph) -> MorseFunction:
    return parse_morse(read_json(path)[0], G)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
