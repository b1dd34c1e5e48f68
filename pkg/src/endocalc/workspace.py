"""Workspace files: named groups, relations and rings.

A file is a sequence of blocks. Each block opens with a header
``group|endo|quasi|ring <name>`` and continues with indented ``key = value``
lines. Headers may also carry their settings inline::

    group G { free_rank = 1, torsion = [2] }
    endo d on G = matrix [[2, 0], [0, 1]]
    ring R kind=pre generators=[d] identity=true

Relation values are ``matrix [[...]]`` (columns are images of the
generators), ``constant [[...], ...]`` (generators of a finite subgroup),
``generators [[a, b], ...]`` (pairs spanning the graph) or ``converse <name>``.
``#`` starts a comment; an open bracket continues onto following lines.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from .errors import EndocalcError, ParseError
from .fgab import FgAbGroup
from .prering import RingKind, RingPresentation
from .relations import BiRelation, Kind, constant_to_subgroup, converse, from_matrix, from_pairs

HEADER = re.compile(r"^(group|endo|quasi|ring)\s+([A-Za-z_][\w.'-]*)\s*(.*)$")
KV = re.compile(r"([A-Za-z_]\w*)\s*=\s*")


class Diagnostic(NamedTuple):
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


@dataclass
class RelationSpec:
    kind: str  # "endo" or "quasi"
    group: str
    form: str  # matrix | constant | generators | converse
    value: object


@dataclass
class Workspace:
    groups: Dict[str, FgAbGroup] = field(default_factory=dict)
    relations: Dict[str, BiRelation] = field(default_factory=dict)
    rings: Dict[str, RingPresentation] = field(default_factory=dict)
    source_path: Optional[str] = None
    relation_specs: Dict[str, RelationSpec] = field(default_factory=dict, compare=False, repr=False)
    ring_specs: Dict[str, dict] = field(default_factory=dict, compare=False, repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Workspace):
            return NotImplemented
        return (
            self.groups == other.groups
            and {k: (v.ambient, v.graph) for k, v in self.relations.items()}
            == {k: (v.ambient, v.graph) for k, v in other.relations.items()}
            and {k: self._ring_key(v) for k, v in self.rings.items()}
            == {k: self._ring_key(v) for k, v in other.rings.items()}
        )

    @staticmethod
    def _ring_key(r: RingPresentation):
        return (r.ambient, r.kind, r.identity_included, tuple(g.graph for g in r.generators))

    def group_name(self, a) -> Optional[str]:
        for k, v in self.groups.items():
            if v == a:
                return k
        return None


def _logical_lines(text: str) -> List[Tuple[int, str, bool]]:
    """``(line number, content, indented)`` with comments stripped and brackets joined."""
    out: List[Tuple[int, str, bool]] = []
    buf, start, depth, indented = "", 0, 0, False
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not buf:
            if not line.strip():
                continue
            start, indented = no, line[:1].isspace()
        buf += " " + line.strip() if buf else line.strip()
        depth += line.count("[") + line.count("{") - line.count("]") - line.count("}")
        if depth <= 0:
            out.append((start, buf, indented))
            buf, depth = "", 0
    if buf:
        out.append((start, buf, indented))
    return out


def _split_kv(s: str) -> List[Tuple[str, str]]:
    """``k = v`` pairs separated by commas or whitespace, respecting brackets."""
    out = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = KV.match(s, pos)
        if not m:
            raise ValueError(f"expected key = value near {s[pos:pos + 20]!r}")
        key, pos = m.group(1), m.end()
        depth, j = 0, pos
        while j < len(s):
            c = s[j]
            if c in "[{":
                depth += 1
            elif c in "]}":
                depth -= 1
            elif depth == 0 and c == ",":
                break
            elif depth == 0 and c.isspace():
                rest = s[j:].lstrip()
                if KV.match(rest) or rest.startswith(","):
                    break
            j += 1
        out.append((key, s[pos:j].strip()))
        pos = j
        while pos < len(s) and (s[pos].isspace() or s[pos] == ","):
            pos += 1
    return out


def _ints(text: str, depth: int):
    """Parse a nested bracketed list of integers of the given depth."""
    try:
        v = ast.literal_eval(text)
    except (ValueError, SyntaxError):
        raise ValueError(f"malformed vector {text!r}")

    def ok(x, d):
        if d == 0:
            return isinstance(x, int) and not isinstance(x, bool)
        return isinstance(x, (list, tuple)) and all(ok(y, d - 1) for y in x)

    if not ok(v, depth):
        raise ValueError(f"malformed vector {text!r}")
    return v


def _ident_list(text: str) -> List[str]:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ValueError(f"expected a bracketed name list, got {text!r}")
    return [x.strip() for x in t[1:-1].split(",") if x.strip()]


def parse_workspace(text: str, source_path: Optional[str] = None) -> Workspace:
    """Parse and resolve a workspace; raise ``ParseError`` with every diagnostic found."""
    diags: List[Diagnostic] = []
    blocks: List[dict] = []
    for no, line, indented in _logical_lines(text):
        m = HEADER.match(line) if not indented else None
        if m:
            kind, name, rest = m.groups()
            blocks.append({"kind": kind, "name": name, "line": no, "keys": {}, "key_lines": {}})
            try:
                _header_rest(blocks[-1], rest.strip(), no)
            except ValueError as e:
                diags.append(Diagnostic(no, str(e)))
            continue
        if not blocks:
            diags.append(Diagnostic(no, f"expected a group, endo, quasi or ring header, got {line!r}"))
            continue
        try:
            for k, v in _split_kv(line):
                blocks[-1]["keys"][k] = v
                blocks[-1]["key_lines"][k] = no
        except ValueError as e:
            diags.append(Diagnostic(no, str(e)))

    ws = Workspace(source_path=source_path)
    seen: Dict[Tuple[str, str], int] = {}
    for b in blocks:
        cat = "relation" if b["kind"] in ("endo", "quasi") else b["kind"]
        if (cat, b["name"]) in seen:
            diags.append(Diagnostic(b["line"], f"duplicate {cat} name {b['name']!r} (first defined on line {seen[(cat, b['name'])]})"))
            continue
        seen[(cat, b["name"])] = b["line"]
        try:
            if b["kind"] == "group":
                ws.groups[b["name"]] = _build_group(b)
            elif b["kind"] in ("endo", "quasi"):
                spec = _relation_spec(b)
                ws.relations[b["name"]] = _build_relation(ws, spec, b)
                ws.relation_specs[b["name"]] = spec
            else:
                ring, spec = _build_ring(ws, b)
                ws.rings[b["name"]] = ring
                ws.ring_specs[b["name"]] = spec
        except (ValueError, KeyError, EndocalcError) as e:
            msg = e.args[0] if isinstance(e, KeyError) else str(e)
            diags.append(Diagnostic(b.get("err_line", b["line"]), f"{b['kind']} {b['name']}: {msg}"))
    if diags:
        raise ParseError(diags)
    return ws


def _header_rest(block: dict, rest: str, no: int) -> None:
    if not rest:
        return
    if block["kind"] in ("endo", "quasi"):
        m = re.match(r"^on\s+(\S+)\s*(?:=\s*(.*))?$", rest)
        if not m:
            raise ValueError(f"expected 'on <group>' after {block['kind']} {block['name']}")
        block["keys"]["on"] = m.group(1)
        block["key_lines"]["on"] = no
        if m.group(2):
            form, _, val = m.group(2).strip().partition(" ")
            block["keys"][form] = val.strip()
            block["key_lines"][form] = no
        return
    if rest.startswith("{"):
        if not rest.endswith("}"):
            raise ValueError("unterminated '{'")
        rest = rest[1:-1]
    for k, v in _split_kv(rest):
        block["keys"][k] = v
        block["key_lines"][k] = no


def _build_group(b: dict) -> FgAbGroup:
    keys = b["keys"]
    unknown = set(keys) - {"free_rank", "torsion"}
    if unknown:
        raise ValueError(f"unknown key {sorted(unknown)[0]!r}")
    b["err_line"] = b["key_lines"].get("torsion", b["line"])
    r = _ints(keys.get("free_rank", "0"), 0)
    t = _ints(keys.get("torsion", "[]"), 1)
    return FgAbGroup(r, t)


FORMS = ("matrix", "constant", "generators", "converse")


def _relation_spec(b: dict) -> RelationSpec:
    keys = b["keys"]
    if "on" not in keys:
        raise ValueError("missing 'on = <group>'")
    forms = [f for f in FORMS if f in keys]
    unknown = set(keys) - set(FORMS) - {"on"}
    if unknown:
        raise ValueError(f"unknown key {sorted(unknown)[0]!r}")
    if len(forms) != 1:
        raise ValueError("exactly one of matrix, constant, generators, converse is required")
    form = forms[0]
    b["err_line"] = b["key_lines"][form]
    raw = keys[form]
    if form == "converse":
        value: object = raw.strip()
    else:
        value = _ints(raw, {"matrix": 2, "constant": 2, "generators": 3}[form])
    return RelationSpec(b["kind"], keys["on"], form, value)


def _build_relation(ws: Workspace, spec: RelationSpec, b: dict) -> BiRelation:
    if spec.group not in ws.groups:
        b["err_line"] = b["key_lines"]["on"]
        raise ValueError(f"unknown group reference {spec.group!r}")
    a = ws.groups[spec.group]
    if spec.form == "matrix":
        rel = from_matrix(a, spec.value)
    elif spec.form == "constant":
        rel = constant_to_subgroup(a, a.subgroup([tuple(v) for v in spec.value]))
    elif spec.form == "generators":
        pairs = []
        for p in spec.value:
            if len(p) != 2:
                raise ValueError("each generator must be a pair [a, b]")
            pairs.append((tuple(p[0]), tuple(p[1])))
        rel = from_pairs(a, pairs)
    else:
        if spec.value not in ws.relations:
            raise ValueError(f"unknown relation reference {spec.value!r}")
        rel = converse(ws.relations[spec.value])
        if rel.ambient != a:
            raise ValueError(f"{spec.value!r} does not live on {spec.group!r}")
    want = Kind.ENDOGENY if spec.kind == "endo" else Kind.QUASI_ENDO
    if rel.kind != want and not (spec.kind == "quasi" and rel.kind == Kind.ENDOGENY):
        raise ValueError(f"relation is {rel.kind.value}, not {want.value}")
    return rel


def _build_ring(ws: Workspace, b: dict):
    keys = b["keys"]
    unknown = set(keys) - {"kind", "generators", "identity"}
    if unknown:
        raise ValueError(f"unknown key {sorted(unknown)[0]!r}")
    kind = {"pre": RingKind.PRE_RING, "near": RingKind.NEAR_RING}.get(keys.get("kind", "pre").strip())
    if kind is None:
        raise ValueError("kind must be pre or near")
    ident = keys.get("identity", "true").strip()
    if ident not in ("true", "false"):
        raise ValueError("identity must be true or false")
    names = _ident_list(keys.get("generators", "[]"))
    b["err_line"] = b["key_lines"].get("generators", b["line"])
    for n in names:
        if n not in ws.relations:
            raise ValueError(f"unknown generator reference {n!r}")
    if not names:
        raise ValueError("a ring needs at least one generator to fix its group")
    gens = [ws.relations[n] for n in names]
    ring = RingPresentation(gens[0].ambient, gens, kind, ident == "true")
    return ring, {"kind": keys.get("kind", "pre").strip(), "generators": names, "identity": ident}


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def serialize(ws: Workspace) -> str:
    """Block-form text that parses back to an equal workspace."""
    out: List[str] = []
    for name, g in ws.groups.items():
        out += [f"group {name}", f"  free_rank = {g.free_rank}", f"  torsion = {_fmt(list(g.torsion))}", ""]
    for name, rel in ws.relations.items():
        spec = ws.relation_specs.get(name)
        gname = spec.group if spec else ws.group_name(rel.ambient)
        if spec is None:
            spec = RelationSpec("endo" if rel.kind == Kind.ENDOGENY else "quasi", gname, "generators",
                                [[list(a), list(b)] for a, b in rel.pairs()])
        value = spec.value if spec.form == "converse" else _fmt(spec.value)
        out += [f"{spec.kind} {name}", f"  on = {gname}", f"  {spec.form} = {value}", ""]
    for name, ring in ws.rings.items():
        spec = ws.ring_specs.get(name)
        if spec is None:
            names = [next(k for k, v in ws.relations.items() if v.graph == g.graph) for g in ring.generators]
            spec = {"kind": "pre" if ring.kind == RingKind.PRE_RING else "near", "generators": names,
                    "identity": "true" if ring.identity_included else "false"}
        out += [f"ring {name}", f"  kind = {spec['kind']}", f"  generators = [{', '.join(spec['generators'])}]",
                f"  identity = {spec['identity']}", ""]
    return "\n".join(out)
