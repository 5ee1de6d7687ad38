"""Authored content model: scenario types, the strict JSON parser, and the serializer.

A scenario file is a single UTF-8 JSON document::

    {"format_version": 1, "scenario": {...}}

The full schema is documented in docs/scenario-schema.md. Parsing is strict:
unknown fields, wrong types, out-of-range values, and duplicate ids are
rejected with a location path, and every cross-reference (risk, control,
framework, element, node) must resolve inside the bundle. Graph reachability
and solvability are deliberately NOT checked here; those are lint concerns
(see lint.py).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping

from .errors import DANGLING_REFERENCE, SCHEMA_VIOLATION, SYNTAX_ERROR, GameError

FORMAT_VERSION = 1

SLUG_RE = re.compile(r"^[a-z0-9_-]+$")

CATEGORIES = ("scope", "roles_responsibilities", "compliance", "enforcement", "other")
REQUIRED_CATEGORIES = ("scope", "roles_responsibilities", "compliance", "enforcement")

RULE_KINDS = ("completeness", "risk_coverage", "framework_alignment", "consistency")

ZONE_KINDS = ("maze", "matching", "policy")


@dataclass(frozen=True)
class RiskCard:
    id: str
    title: str
    description: str
    likelihood: int
    impact: int
    is_true_risk: bool


def severity(risk: RiskCard) -> int:
    """Severity on the 5x5 likelihood/impact matrix: likelihood * impact, in [1, 25]."""
    return risk.likelihood * risk.impact


@dataclass(frozen=True)
class MazeNode:
    id: str
    description: str
    encounter: str | None = None  # risk id


@dataclass(frozen=True)
class MazeSpec:
    nodes: tuple[MazeNode, ...]
    edges: tuple[tuple[str, str], ...]
    entry: str
    exit: str

    @cached_property
    def nodes_by_id(self) -> dict[str, MazeNode]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {n.id: [] for n in self.nodes}
        for a, b in self.edges:
            out[a].append(b)
        return {k: tuple(v) for k, v in out.items()}

    def has_edge(self, a: str, b: str) -> bool:
        return b in self.adjacency.get(a, ())

    def reachable_from_entry(self) -> frozenset[str]:
        seen = {self.entry}
        frontier = [self.entry]
        while frontier:
            node = frontier.pop()
            for nxt in self.adjacency.get(node, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)


@dataclass(frozen=True)
class Framework:
    id: str
    name: str
    description: str


@dataclass(frozen=True)
class ControlItem:
    id: str
    text: str
    answer_key: frozenset[str]  # framework ids, nonempty; >1 marks an overlap control
    context_tag: str | None = None


@dataclass(frozen=True)
class PolicyElement:
    id: str
    text: str
    category: str
    covers_risks: frozenset[str]
    references_frameworks: frozenset[str]
    contradicts: frozenset[str]
    is_flawed: bool


@dataclass(frozen=True)
class ValidationRule:
    id: str
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class MazeZone:
    risks: tuple[RiskCard, ...]
    maze: MazeSpec


@dataclass(frozen=True)
class MatchingZone:
    frameworks: tuple[Framework, ...]
    controls: tuple[ControlItem, ...]


@dataclass(frozen=True)
class PolicyZone:
    elements: tuple[PolicyElement, ...]
    existing_policy: tuple[str, ...]  # element ids; the flawed starting document
    rules: tuple[ValidationRule, ...]


@dataclass(frozen=True)
class MazeSolution:
    path: tuple[str, ...]  # nodes entered after the entry node, in walk order
    flags: Mapping[str, bool]  # risk id -> decision
    ranking: tuple[str, ...]


@dataclass(frozen=True)
class MatchingSolution:
    assignments: Mapping[str, frozenset[str]]  # control id -> framework ids


@dataclass(frozen=True)
class PolicySolution:
    selected: tuple[str, ...]


@dataclass(frozen=True)
class ReferenceSolutions:
    maze: MazeSolution
    matching: MatchingSolution
    policy: PolicySolution


@dataclass(frozen=True)
class HintPuzzle:
    id: str
    zone: int  # 0..2
    tiers: tuple[str, ...]  # revealed in order, one per request


@dataclass(frozen=True)
class Scenario:
    id: str
    title: str
    company_profile: str
    time_limit: int  # seconds
    risk_threshold: int  # severity cutoff for mandatory policy coverage
    zone_pass_thresholds: tuple[float, float, float]
    zones: tuple[MazeZone, MatchingZone, PolicyZone]
    reference_solutions: ReferenceSolutions
    hints: tuple[HintPuzzle, ...]
    ranking_weights: tuple[float, float, float] = (0.5, 0.25, 0.25)
    hint_penalty: float = 0.05
    zone_weights: tuple[float, float, float] = (1.0, 1.0, 1.0)

    @property
    def maze_zone(self) -> MazeZone:
        return self.zones[0]

    @property
    def matching_zone(self) -> MatchingZone:
        return self.zones[1]

    @property
    def policy_zone(self) -> PolicyZone:
        return self.zones[2]

    @cached_property
    def risks_by_id(self) -> dict[str, RiskCard]:
        return {r.id: r for r in self.maze_zone.risks}

    @cached_property
    def true_risk_ids(self) -> frozenset[str]:
        return frozenset(r.id for r in self.maze_zone.risks if r.is_true_risk)

    @cached_property
    def frameworks_by_id(self) -> dict[str, Framework]:
        return {f.id: f for f in self.matching_zone.frameworks}

    @cached_property
    def controls_by_id(self) -> dict[str, ControlItem]:
        return {c.id: c for c in self.matching_zone.controls}

    @cached_property
    def elements_by_id(self) -> dict[str, PolicyElement]:
        return {e.id: e for e in self.policy_zone.elements}

    @cached_property
    def puzzles_by_id(self) -> dict[str, HintPuzzle]:
        return {h.id: h for h in self.hints}

    @cached_property
    def keyed_framework_ids(self) -> frozenset[str]:
        """Frameworks appearing in at least one control's answer key."""
        out: set[str] = set()
        for control in self.matching_zone.controls:
            out |= control.answer_key
        return frozenset(out)

    @cached_property
    def contradiction_pairs(self) -> tuple[tuple[str, str], ...]:
        """Unordered contradiction pairs declared in the element library, sorted."""
        pairs: set[tuple[str, str]] = set()
        for elem in self.policy_zone.elements:
            for other in elem.contradicts:
                pairs.add((min(elem.id, other), max(elem.id, other)))
        return tuple(sorted(pairs))

    @cached_property
    def flawed_element_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.policy_zone.elements if e.is_flawed)


# ---------------------------------------------------------------------------
# Strict parsing

def _fail(path: str, message: str) -> GameError:
    return GameError(SCHEMA_VIOLATION, f"{path}: {message}")


def _dangling(path: str, kind: str, ref: str) -> GameError:
    return GameError(DANGLING_REFERENCE, f'{path}: unknown {kind} "{ref}"')


def _obj(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise _fail(path, f"expected object, got {type(value).__name__}")
    return value


def _arr(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise _fail(path, f"expected array, got {type(value).__name__}")
    return value


def _str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise _fail(path, f"expected string, got {type(value).__name__}")
    return value


def _int(value: Any, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise _fail(path, f"expected integer, got {type(value).__name__}")
    return value


def _bool(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise _fail(path, f"expected boolean, got {type(value).__name__}")
    return value


def _num(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(path, f"expected number, got {type(value).__name__}")
    return float(value)


def _take(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise _fail(path, f'missing field "{key}"')
    return obj[key]


def _reject_extras(obj: dict, allowed: set[str], path: str) -> None:
    extras = sorted(set(obj) - allowed)
    if extras:
        raise _fail(path, f'unexpected field "{extras[0]}"')


def _slug(value: Any, path: str) -> str:
    text = _str(value, path)
    if not SLUG_RE.match(text):
        raise _fail(path, f'id "{text}" is not a lowercase slug ([a-z0-9_-]+)')
    return text


def _unique(ids: list[str], what: str, path: str) -> None:
    seen: set[str] = set()
    for item in ids:
        if item in seen:
            raise _fail(path, f'duplicate {what} "{item}"')
        seen.add(item)


def _fraction(value: Any, path: str) -> float:
    num = _num(value, path)
    if not 0.0 <= num <= 1.0:
        raise _fail(path, f"expected a fraction in [0, 1], got {num}")
    return num


def _weights3(value: Any, path: str) -> tuple[float, float, float]:
    arr = _arr(value, path)
    if len(arr) != 3:
        raise _fail(path, f"expected 3 weights, got {len(arr)}")
    weights = tuple(_num(v, f"{path}[{i}]") for i, v in enumerate(arr))
    if any(w < 0 for w in weights):
        raise _fail(path, "weights must be non-negative")
    if sum(weights) <= 0:
        raise _fail(path, "weights must not all be zero")
    return weights  # type: ignore[return-value]


def _parse_risk(raw: Any, path: str) -> RiskCard:
    obj = _obj(raw, path)
    _reject_extras(obj, {"id", "title", "description", "likelihood", "impact", "is_true_risk"}, path)
    likelihood = _int(_take(obj, "likelihood", path), f"{path}.likelihood")
    impact = _int(_take(obj, "impact", path), f"{path}.impact")
    for name, value in (("likelihood", likelihood), ("impact", impact)):
        if not 1 <= value <= 5:
            raise _fail(f"{path}.{name}", f"expected an integer in 1..5, got {value}")
    return RiskCard(
        id=_slug(_take(obj, "id", path), f"{path}.id"),
        title=_str(_take(obj, "title", path), f"{path}.title"),
        description=_str(_take(obj, "description", path), f"{path}.description"),
        likelihood=likelihood,
        impact=impact,
        is_true_risk=_bool(_take(obj, "is_true_risk", path), f"{path}.is_true_risk"),
    )


def _parse_maze(raw: Any, path: str, risk_ids: set[str]) -> MazeSpec:
    obj = _obj(raw, path)
    _reject_extras(obj, {"nodes", "edges", "entry", "exit"}, path)

    nodes: list[MazeNode] = []
    for i, raw_node in enumerate(_arr(_take(obj, "nodes", path), f"{path}.nodes")):
        npath = f"{path}.nodes[{i}]"
        node_obj = _obj(raw_node, npath)
        _reject_extras(node_obj, {"id", "description", "encounter"}, npath)
        encounter = node_obj.get("encounter")
        if encounter is not None:
            encounter = _str(encounter, f"{npath}.encounter")
            if encounter not in risk_ids:
                raise _dangling(f"{npath}.encounter", "risk", encounter)
        nodes.append(
            MazeNode(
                id=_slug(_take(node_obj, "id", npath), f"{npath}.id"),
                description=_str(_take(node_obj, "description", npath), f"{npath}.description"),
                encounter=encounter,
            )
        )
    if not nodes:
        raise _fail(f"{path}.nodes", "maze must declare at least one node")
    _unique([n.id for n in nodes], "node id", f"{path}.nodes")
    node_ids = {n.id for n in nodes}

    edges: list[tuple[str, str]] = []
    for i, raw_edge in enumerate(_arr(_take(obj, "edges", path), f"{path}.edges")):
        epath = f"{path}.edges[{i}]"
        pair = _arr(raw_edge, epath)
        if len(pair) != 2:
            raise _fail(epath, f"expected [from, to], got {len(pair)} entries")
        a, b = _str(pair[0], f"{epath}[0]"), _str(pair[1], f"{epath}[1]")
        for endpoint in (a, b):
            if endpoint not in node_ids:
                raise _dangling(epath, "node", endpoint)
        if a == b:
            raise _fail(epath, f'self-loop edge on "{a}"')
        if (a, b) in edges:
            raise _fail(epath, f'duplicate edge ["{a}", "{b}"]')
        edges.append((a, b))

    entry = _str(_take(obj, "entry", path), f"{path}.entry")
    exit_ = _str(_take(obj, "exit", path), f"{path}.exit")
    for name, node_id in (("entry", entry), ("exit", exit_)):
        if node_id not in node_ids:
            raise _dangling(f"{path}.{name}", "node", node_id)
    if entry == exit_:
        raise _fail(path, "entry and exit must be different nodes")
    return MazeSpec(nodes=tuple(nodes), edges=tuple(edges), entry=entry, exit=exit_)


def _parse_maze_zone(obj: dict, path: str) -> MazeZone:
    _reject_extras(obj, {"kind", "risks", "maze"}, path)
    risks = [
        _parse_risk(raw, f"{path}.risks[{i}]")
        for i, raw in enumerate(_arr(_take(obj, "risks", path), f"{path}.risks"))
    ]
    if not risks:
        raise _fail(f"{path}.risks", "maze zone must declare at least one risk")
    _unique([r.id for r in risks], "risk id", f"{path}.risks")
    maze = _parse_maze(_take(obj, "maze", path), f"{path}.maze", {r.id for r in risks})
    return MazeZone(risks=tuple(risks), maze=maze)


def _parse_matching_zone(obj: dict, path: str) -> MatchingZone:
    _reject_extras(obj, {"kind", "frameworks", "controls"}, path)

    frameworks: list[Framework] = []
    for i, raw in enumerate(_arr(_take(obj, "frameworks", path), f"{path}.frameworks")):
        fpath = f"{path}.frameworks[{i}]"
        fobj = _obj(raw, fpath)
        _reject_extras(fobj, {"id", "name", "description"}, fpath)
        frameworks.append(
            Framework(
                id=_slug(_take(fobj, "id", fpath), f"{fpath}.id"),
                name=_str(_take(fobj, "name", fpath), f"{fpath}.name"),
                description=_str(_take(fobj, "description", fpath), f"{fpath}.description"),
            )
        )
    if not frameworks:
        raise _fail(f"{path}.frameworks", "matching zone must declare at least one framework")
    _unique([f.id for f in frameworks], "framework id", f"{path}.frameworks")
    framework_ids = {f.id for f in frameworks}

    controls: list[ControlItem] = []
    for i, raw in enumerate(_arr(_take(obj, "controls", path), f"{path}.controls")):
        cpath = f"{path}.controls[{i}]"
        cobj = _obj(raw, cpath)
        _reject_extras(cobj, {"id", "text", "answer_key", "context_tag"}, cpath)
        key_raw = _arr(_take(cobj, "answer_key", cpath), f"{cpath}.answer_key")
        if not key_raw:
            raise _fail(f"{cpath}.answer_key", "answer key must not be empty")
        key: set[str] = set()
        for j, ref in enumerate(key_raw):
            fid = _str(ref, f"{cpath}.answer_key[{j}]")
            if fid not in framework_ids:
                raise _dangling(f"{cpath}.answer_key[{j}]", "framework", fid)
            if fid in key:
                raise _fail(f"{cpath}.answer_key[{j}]", f'duplicate framework "{fid}"')
            key.add(fid)
        context_tag = cobj.get("context_tag")
        if context_tag is not None:
            context_tag = _str(context_tag, f"{cpath}.context_tag")
        controls.append(
            ControlItem(
                id=_slug(_take(cobj, "id", cpath), f"{cpath}.id"),
                text=_str(_take(cobj, "text", cpath), f"{cpath}.text"),
                answer_key=frozenset(key),
                context_tag=context_tag,
            )
        )
    if not controls:
        raise _fail(f"{path}.controls", "matching zone must declare at least one control")
    _unique([c.id for c in controls], "control id", f"{path}.controls")
    return MatchingZone(frameworks=tuple(frameworks), controls=tuple(controls))


def _parse_rule(raw: Any, path: str) -> ValidationRule:
    obj = _obj(raw, path)
    _reject_extras(obj, {"id", "kind", "params"}, path)
    kind = _str(_take(obj, "kind", path), f"{path}.kind")
    if kind not in RULE_KINDS:
        raise _fail(f"{path}.kind", f'unknown rule kind "{kind}"')
    params_obj = _obj(obj.get("params", {}), f"{path}.params")
    params: dict[str, Any] = {}
    if kind == "completeness":
        _reject_extras(params_obj, {"required_categories"}, f"{path}.params")
        if "required_categories" in params_obj:
            cats = _arr(params_obj["required_categories"], f"{path}.params.required_categories")
            if not cats:
                raise _fail(f"{path}.params.required_categories", "must not be empty")
            for i, cat in enumerate(cats):
                cpath = f"{path}.params.required_categories[{i}]"
                if _str(cat, cpath) not in CATEGORIES:
                    raise _fail(cpath, f'unknown category "{cat}"')
            _unique(list(cats), "category", f"{path}.params.required_categories")
            params["required_categories"] = tuple(cats)
    elif kind == "risk_coverage":
        _reject_extras(params_obj, {"severity_threshold"}, f"{path}.params")
        if "severity_threshold" in params_obj:
            threshold = _int(params_obj["severity_threshold"], f"{path}.params.severity_threshold")
            if not 1 <= threshold <= 25:
                raise _fail(f"{path}.params.severity_threshold", f"expected 1..25, got {threshold}")
            params["severity_threshold"] = threshold
    elif kind == "framework_alignment":
        _reject_extras(params_obj, {"source"}, f"{path}.params")
        if "source" in params_obj:
            source = _str(params_obj["source"], f"{path}.params.source")
            if source != "zone2_answer_keys":
                raise _fail(f"{path}.params.source", f'unsupported source "{source}"')
            params["source"] = source
    else:  # consistency
        _reject_extras(params_obj, set(), f"{path}.params")
    return ValidationRule(id=_slug(_take(obj, "id", path), f"{path}.id"), kind=kind, params=params)


def _parse_policy_zone(obj: dict, path: str, risk_ids: set[str], framework_ids: set[str]) -> PolicyZone:
    _reject_extras(obj, {"kind", "elements", "existing_policy", "rules"}, path)

    elements: list[PolicyElement] = []
    raw_elements = _arr(_take(obj, "elements", path), f"{path}.elements")
    for i, raw in enumerate(raw_elements):
        epath = f"{path}.elements[{i}]"
        eobj = _obj(raw, epath)
        _reject_extras(
            eobj,
            {"id", "text", "category", "covers_risks", "references_frameworks", "contradicts", "is_flawed"},
            epath,
        )
        category = _str(_take(eobj, "category", epath), f"{epath}.category")
        if category not in CATEGORIES:
            raise _fail(f"{epath}.category", f'unknown category "{category}"')

        def _ref_set(key: str, known: set[str] | None, kind: str, epath: str = epath, eobj: dict = eobj) -> frozenset[str]:
            rpath = f"{epath}.{key}"
            refs = _arr(eobj.get(key, []), rpath)
            out: set[str] = set()
            for j, ref in enumerate(refs):
                rid = _str(ref, f"{rpath}[{j}]")
                if known is not None and rid not in known:
                    raise _dangling(f"{rpath}[{j}]", kind, rid)
                if rid in out:
                    raise _fail(f"{rpath}[{j}]", f'duplicate {kind} "{rid}"')
                out.add(rid)
            return frozenset(out)

        elements.append(
            PolicyElement(
                id=_slug(_take(eobj, "id", epath), f"{epath}.id"),
                text=_str(_take(eobj, "text", epath), f"{epath}.text"),
                category=category,
                covers_risks=_ref_set("covers_risks", risk_ids, "risk"),
                references_frameworks=_ref_set("references_frameworks", framework_ids, "framework"),
                contradicts=_ref_set("contradicts", None, "element"),
                is_flawed=_bool(eobj.get("is_flawed", False), f"{epath}.is_flawed"),
            )
        )
    if not elements:
        raise _fail(f"{path}.elements", "policy zone must declare at least one element")
    _unique([e.id for e in elements], "element id", f"{path}.elements")
    element_ids = {e.id for e in elements}
    for i, elem in enumerate(elements):
        for other in sorted(elem.contradicts):
            if other not in element_ids:
                raise _dangling(f"{path}.elements[{i}].contradicts", "element", other)
            if other == elem.id:
                raise _fail(f"{path}.elements[{i}].contradicts", f'element "{elem.id}" contradicts itself')

    existing: list[str] = []
    for i, raw in enumerate(_arr(_take(obj, "existing_policy", path), f"{path}.existing_policy")):
        ipath = f"{path}.existing_policy[{i}]"
        eid = _str(raw, ipath)
        if eid not in element_ids:
            raise _dangling(ipath, "element", eid)
        existing.append(eid)
    _unique(existing, "element id", f"{path}.existing_policy")
    by_id = {e.id: e for e in elements}
    if not any(by_id[eid].is_flawed for eid in existing):
        raise _fail(f"{path}.existing_policy", "existing policy must contain at least one flawed element")

    rules = [
        _parse_rule(raw, f"{path}.rules[{i}]")
        for i, raw in enumerate(_arr(_take(obj, "rules", path), f"{path}.rules"))
    ]
    _unique([r.id for r in rules], "rule id", f"{path}.rules")
    return PolicyZone(elements=tuple(elements), existing_policy=tuple(existing), rules=tuple(rules))


def _parse_solutions(
    raw: Any,
    path: str,
    maze_zone: MazeZone,
    matching_zone: MatchingZone,
    policy_zone: PolicyZone,
) -> ReferenceSolutions:
    obj = _obj(raw, path)
    _reject_extras(obj, {"maze", "matching", "policy"}, path)
    node_ids = {n.id for n in maze_zone.maze.nodes}
    risk_ids = {r.id for r in maze_zone.risks}

    mpath = f"{path}.maze"
    mobj = _obj(_take(obj, "maze", path), mpath)
    _reject_extras(mobj, {"path", "flags", "ranking"}, mpath)
    walk: list[str] = []
    for i, raw_step in enumerate(_arr(_take(mobj, "path", mpath), f"{mpath}.path")):
        step = _str(raw_step, f"{mpath}.path[{i}]")
        if step not in node_ids:
            raise _dangling(f"{mpath}.path[{i}]", "node", step)
        walk.append(step)
    flags: dict[str, bool] = {}
    for key, raw_decision in _obj(_take(mobj, "flags", mpath), f"{mpath}.flags").items():
        if key not in risk_ids:
            raise _dangling(f"{mpath}.flags", "risk", key)
        flags[key] = _bool(raw_decision, f"{mpath}.flags.{key}")
    ranking: list[str] = []
    for i, raw_rank in enumerate(_arr(_take(mobj, "ranking", mpath), f"{mpath}.ranking")):
        rid = _str(raw_rank, f"{mpath}.ranking[{i}]")
        if rid not in risk_ids:
            raise _dangling(f"{mpath}.ranking[{i}]", "risk", rid)
        ranking.append(rid)
    _unique(ranking, "risk id", f"{mpath}.ranking")

    apath = f"{path}.matching"
    aobj = _obj(_take(obj, "matching", path), apath)
    _reject_extras(aobj, {"assignments"}, apath)
    control_ids = {c.id for c in matching_zone.controls}
    framework_ids = {f.id for f in matching_zone.frameworks}
    assignments: dict[str, frozenset[str]] = {}
    for cid, raw_set in _obj(_take(aobj, "assignments", apath), f"{apath}.assignments").items():
        if cid not in control_ids:
            raise _dangling(f"{apath}.assignments", "control", cid)
        fids: set[str] = set()
        for j, ref in enumerate(_arr(raw_set, f"{apath}.assignments.{cid}")):
            fid = _str(ref, f"{apath}.assignments.{cid}[{j}]")
            if fid not in framework_ids:
                raise _dangling(f"{apath}.assignments.{cid}[{j}]", "framework", fid)
            fids.add(fid)
        assignments[cid] = frozenset(fids)

    ppath = f"{path}.policy"
    pobj = _obj(_take(obj, "policy", path), ppath)
    _reject_extras(pobj, {"selected"}, ppath)
    element_ids = {e.id for e in policy_zone.elements}
    selected: list[str] = []
    for i, raw_sel in enumerate(_arr(_take(pobj, "selected", ppath), f"{ppath}.selected")):
        eid = _str(raw_sel, f"{ppath}.selected[{i}]")
        if eid not in element_ids:
            raise _dangling(f"{ppath}.selected[{i}]", "element", eid)
        selected.append(eid)
    _unique(selected, "element id", f"{ppath}.selected")

    return ReferenceSolutions(
        maze=MazeSolution(path=tuple(walk), flags=flags, ranking=tuple(ranking)),
        matching=MatchingSolution(assignments=assignments),
        policy=PolicySolution(selected=tuple(selected)),
    )


def _parse_hints(raw: Any, path: str) -> tuple[HintPuzzle, ...]:
    hints: list[HintPuzzle] = []
    for i, raw_hint in enumerate(_arr(raw, path)):
        hpath = f"{path}[{i}]"
        hobj = _obj(raw_hint, hpath)
        _reject_extras(hobj, {"puzzle", "zone", "tiers"}, hpath)
        zone = _int(_take(hobj, "zone", hpath), f"{hpath}.zone")
        if not 0 <= zone <= 2:
            raise _fail(f"{hpath}.zone", f"expected a zone index in 0..2, got {zone}")
        tiers = [
            _str(t, f"{hpath}.tiers[{j}]")
            for j, t in enumerate(_arr(_take(hobj, "tiers", hpath), f"{hpath}.tiers"))
        ]
        if not tiers:
            raise _fail(f"{hpath}.tiers", "hint tiers must not be empty")
        hints.append(
            HintPuzzle(id=_slug(_take(hobj, "puzzle", hpath), f"{hpath}.puzzle"), zone=zone, tiers=tuple(tiers))
        )
    _unique([h.id for h in hints], "puzzle id", path)
    return tuple(hints)


def parse_scenario(document: bytes | str) -> Scenario:
    """Parse and fully validate a scenario file.

    Raises GameError with code ``syntax-error`` (malformed JSON, position
    reported), ``schema-violation`` (missing/unknown field, wrong type,
    out-of-range value, duplicate id), or ``dangling-reference`` (a
    cross-reference naming an undeclared id).
    """
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GameError(SYNTAX_ERROR, f"not valid UTF-8: {exc}") from exc
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GameError(SYNTAX_ERROR, f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc

    top = _obj(data, "$")
    _reject_extras(top, {"format_version", "scenario"}, "$")
    version = _int(_take(top, "format_version", "$"), "$.format_version")
    if version != FORMAT_VERSION:
        raise _fail("$.format_version", f"unsupported format_version {version} (expected {FORMAT_VERSION})")

    path = "scenario"
    sc = _obj(_take(top, "scenario", "$"), path)
    _reject_extras(
        sc,
        {
            "id", "title", "company_profile", "time_limit", "risk_threshold",
            "zone_pass_thresholds", "zones", "reference_solutions", "hints",
            "ranking_weights", "hint_penalty", "zone_weights",
        },
        path,
    )

    time_limit = _int(_take(sc, "time_limit", path), f"{path}.time_limit")
    if time_limit <= 0:
        raise _fail(f"{path}.time_limit", f"expected a positive number of seconds, got {time_limit}")
    risk_threshold = _int(sc.get("risk_threshold", 15), f"{path}.risk_threshold")
    if not 1 <= risk_threshold <= 25:
        raise _fail(f"{path}.risk_threshold", f"expected a severity in 1..25, got {risk_threshold}")

    thresholds_raw = _arr(_take(sc, "zone_pass_thresholds", path), f"{path}.zone_pass_thresholds")
    if len(thresholds_raw) != 3:
        raise _fail(f"{path}.zone_pass_thresholds", f"expected 3 thresholds, got {len(thresholds_raw)}")
    thresholds = tuple(
        _fraction(v, f"{path}.zone_pass_thresholds[{i}]") for i, v in enumerate(thresholds_raw)
    )

    zones_raw = _arr(_take(sc, "zones", path), f"{path}.zones")
    if len(zones_raw) != 3:
        raise _fail(f"{path}.zones", f"expected exactly 3 zones (maze, matching, policy), got {len(zones_raw)}")
    zone_objs = []
    for i, raw_zone in enumerate(zones_raw):
        zpath = f"{path}.zones[{i}]"
        zobj = _obj(raw_zone, zpath)
        kind = _str(_take(zobj, "kind", zpath), f"{zpath}.kind")
        if kind != ZONE_KINDS[i]:
            raise _fail(f"{zpath}.kind", f'zone {i} must have kind "{ZONE_KINDS[i]}", got "{kind}"')
        zone_objs.append(zobj)
    maze_zone = _parse_maze_zone(zone_objs[0], f"{path}.zones[0]")
    matching_zone = _parse_matching_zone(zone_objs[1], f"{path}.zones[1]")
    policy_zone = _parse_policy_zone(
        zone_objs[2],
        f"{path}.zones[2]",
        {r.id for r in maze_zone.risks},
        {f.id for f in matching_zone.frameworks},
    )

    solutions = _parse_solutions(
        _take(sc, "reference_solutions", path),
        f"{path}.reference_solutions",
        maze_zone,
        matching_zone,
        policy_zone,
    )
    hints = _parse_hints(sc.get("hints", []), f"{path}.hints")

    ranking_weights = (0.5, 0.25, 0.25)
    if "ranking_weights" in sc:
        ranking_weights = _weights3(sc["ranking_weights"], f"{path}.ranking_weights")
        if abs(sum(ranking_weights) - 1.0) > 1e-9:
            raise _fail(f"{path}.ranking_weights", "ranking weights must sum to 1")
    hint_penalty = 0.05
    if "hint_penalty" in sc:
        hint_penalty = _fraction(sc["hint_penalty"], f"{path}.hint_penalty")
    zone_weights = (1.0, 1.0, 1.0)
    if "zone_weights" in sc:
        zone_weights = _weights3(sc["zone_weights"], f"{path}.zone_weights")

    return Scenario(
        id=_slug(_take(sc, "id", path), f"{path}.id"),
        title=_str(_take(sc, "title", path), f"{path}.title"),
        company_profile=_str(_take(sc, "company_profile", path), f"{path}.company_profile"),
        time_limit=time_limit,
        risk_threshold=risk_threshold,
        zone_pass_thresholds=thresholds,  # type: ignore[arg-type]
        zones=(maze_zone, matching_zone, policy_zone),
        reference_solutions=solutions,
        hints=hints,
        ranking_weights=ranking_weights,
        hint_penalty=hint_penalty,
        zone_weights=zone_weights,
    )


def scenario_to_document(scenario: Scenario) -> dict:
    """Serialize a Scenario back to its file form (parse -> serialize -> parse round-trips)."""
    maze_zone, matching_zone, policy_zone = scenario.zones
    return {
        "format_version": FORMAT_VERSION,
        "scenario": {
            "id": scenario.id,
            "title": scenario.title,
            "company_profile": scenario.company_profile,
            "time_limit": scenario.time_limit,
            "risk_threshold": scenario.risk_threshold,
            "zone_pass_thresholds": list(scenario.zone_pass_thresholds),
            "ranking_weights": list(scenario.ranking_weights),
            "hint_penalty": scenario.hint_penalty,
            "zone_weights": list(scenario.zone_weights),
            "zones": [
                {
                    "kind": "maze",
                    "risks": [
                        {
                            "id": r.id,
                            "title": r.title,
                            "description": r.description,
                            "likelihood": r.likelihood,
                            "impact": r.impact,
                            "is_true_risk": r.is_true_risk,
                        }
                        for r in maze_zone.risks
                    ],
                    "maze": {
                        "nodes": [
                            {"id": n.id, "description": n.description, "encounter": n.encounter}
                            for n in maze_zone.maze.nodes
                        ],
                        "edges": [list(edge) for edge in maze_zone.maze.edges],
                        "entry": maze_zone.maze.entry,
                        "exit": maze_zone.maze.exit,
                    },
                },
                {
                    "kind": "matching",
                    "frameworks": [
                        {"id": f.id, "name": f.name, "description": f.description}
                        for f in matching_zone.frameworks
                    ],
                    "controls": [
                        {
                            "id": c.id,
                            "text": c.text,
                            "answer_key": sorted(c.answer_key),
                            "context_tag": c.context_tag,
                        }
                        for c in matching_zone.controls
                    ],
                },
                {
                    "kind": "policy",
                    "elements": [
                        {
                            "id": e.id,
                            "text": e.text,
                            "category": e.category,
                            "covers_risks": sorted(e.covers_risks),
                            "references_frameworks": sorted(e.references_frameworks),
                            "contradicts": sorted(e.contradicts),
                            "is_flawed": e.is_flawed,
                        }
                        for e in policy_zone.elements
                    ],
                    "existing_policy": list(policy_zone.existing_policy),
                    "rules": [
                        {"id": r.id, "kind": r.kind, "params": _params_to_json(r.params)}
                        for r in policy_zone.rules
                    ],
                },
            ],
            "reference_solutions": {
                "maze": {
                    "path": list(scenario.reference_solutions.maze.path),
                    "flags": dict(scenario.reference_solutions.maze.flags),
                    "ranking": list(scenario.reference_solutions.maze.ranking),
                },
                "matching": {
                    "assignments": {
                        cid: sorted(fids)
                        for cid, fids in scenario.reference_solutions.matching.assignments.items()
                    }
                },
                "policy": {"selected": list(scenario.reference_solutions.policy.selected)},
            },
            "hints": [
                {"puzzle": h.id, "zone": h.zone, "tiers": list(h.tiers)} for h in scenario.hints
            ],
        },
    }


def _params_to_json(params: Mapping[str, Any]) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}
