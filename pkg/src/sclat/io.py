"""JSON schemas and DOT export.

Posets: ``{"elements": [...], "covers": [[a, b], ...]}`` with a above b,
closed reflexively and transitively on load, or ``"relation"`` listing
every pair of the full order. Profiles: ``{"profile": ["a > b ~ c", ...]}``.
Act spaces and CE preferences follow ``ambiguity.ActSpace`` and
``ambiguity.CEPreference``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Mapping

from .ambiguity import ActSpace, CEPreference
from .chains import ChainDigraph
from .errors import InputError
from .poset import Poset, Relation, poset_from_covers, transitive_reduction, validate_poset
from .preference import Profile


def read_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _field(data: Mapping, key: str, where: str):
    if not isinstance(data, Mapping):
        raise InputError(f"{where}: expected a JSON object")
    if key not in data:
        raise InputError(f"{where}: missing field {key!r}")
    return data[key]


def _pairs(raw, where: str) -> list[tuple[str, str]]:
    out = []
    for k, pair in enumerate(raw):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InputError(f"{where}[{k}]: expected a two-element list")
        out.append((str(pair[0]), str(pair[1])))
    return out


def poset_from_json(data: Mapping, where: str = "poset") -> Poset:
    elements = [str(e) for e in _field(data, "elements", where)]
    if len(set(elements)) != len(elements):
        raise InputError(f"{where}.elements: duplicate element")
    if "covers" in data:
        return poset_from_covers(elements, _pairs(data["covers"], f"{where}.covers"))
    if "relation" in data:
        return validate_poset(Relation.from_pairs(elements, _pairs(data["relation"], f"{where}.relation")))
    raise InputError(f"{where}: needs 'covers' or 'relation'")


def poset_to_json(p: Poset) -> dict:
    return {"elements": list(p.elements), "covers": [list(c) for c in transitive_reduction(p).pairs()]}


def profile_from_json(data: Mapping, elements=None, where: str = "profile") -> Profile:
    rankings = _field(data, "profile", where)
    if not isinstance(rankings, list) or not all(isinstance(r, str) for r in rankings):
        raise InputError(f"{where}.profile: expected a list of ranking strings")
    return Profile.parse(rankings, elements)


def profile_to_json(P: Profile) -> dict:
    return {"profile": [str(m) for m in P]}


def load_poset(path: str | Path) -> Poset:
    return poset_from_json(read_json(path), str(path))


def load_profile(path: str | Path, elements=None) -> Profile:
    return profile_from_json(read_json(path), elements, str(path))


def load_act_space(path: str | Path) -> ActSpace:
    return ActSpace.from_json(read_json(path))


def load_ce_preferences(path: str | Path, space: ActSpace) -> list[CEPreference]:
    """A single ``{"ce": ...}`` object or ``{"preferences": [{"ce": ...}, ...]}``."""
    data = read_json(path)
    if isinstance(data, Mapping) and "preferences" in data:
        return [CEPreference.from_json(space, d) for d in data["preferences"]]
    return [CEPreference.from_json(space, data)]


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def witness_edges(kind: str, seq) -> set[frozenset]:
    """Poset edges that make up a structural witness, as unordered pairs."""
    seq = list(seq or ())
    if len(seq) < 2:
        return set()
    if kind == "diamond":
        a, b, c, d = seq
        pairs = [(a, b), (b, d), (a, c), (c, d)]
    else:
        pairs = list(zip(seq, seq[1:]))
        if kind in ("crown", "weak_cycle"):
            pairs.append((seq[-1], seq[0]))
    return {frozenset(p) for p in pairs}


def poset_dot(p: Poset, highlight: Iterable[frozenset] = (), name: str = "poset") -> str:
    """Transitive reduction drawn top-down, highlighted edges in red."""
    red = transitive_reduction(p)
    marked = set(highlight)
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=circle];"]
    for e in p.elements:
        lines.append(f"  {_quote(e)};")
    for a, b in red.pairs():
        style = " [color=red, penwidth=2]" if frozenset((a, b)) in marked else ""
        lines.append(f"  {_quote(a)} -> {_quote(b)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def chain_digraph_dot(g: ChainDigraph, name: str = "chains") -> str:
    """Chain steps, strict ones bold."""
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=circle];"]
    for e in g.elements:
        lines.append(f"  {_quote(e)};")
    for a, b, strict in g.edge_list():
        if a == b:
            continue
        style = " [style=bold, penwidth=2]" if strict else " [style=dashed]"
        lines.append(f"  {_quote(a)} -> {_quote(b)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
