"""Structural metrics for detection strategies and the structural baseline."""

from __future__ import annotations

from itertools import combinations

from ..errors import ConsistencyError
from .model import (
    CLASS,
    METHOD,
    METRIC_NAMES,
    ClassEntity,
    CodeModel,
    EntityMetricVector,
    MethodEntity,
    applicable_metrics,
)

_CONTROL_KINDS = frozenset({"if", "for", "while", "do", "switch", "try"})


class _CallIndex:
    """Resolved call graph of one model (caller -> callee method entities)."""

    def __init__(self, model: CodeModel):
        self.model = model
        self.callers: dict[int, set[int]] = {}
        self.method_of: dict[int, MethodEntity] = {}
        for m in model.methods():
            self.method_of[id(m)] = m
        for m in model.methods():
            for call in m.calls:
                target = self.resolve(call)
                if target is not None and target is not m:
                    self.callers.setdefault(id(target), set()).add(id(m))

    def resolve(self, call) -> MethodEntity | None:
        cls = self.model.get(call.target_class) if call.target_class else None
        if cls is None:
            return None
        fallback = None
        for c in [cls, *self.model.ancestors(cls)]:
            for m in c.methods:
                if m.name != call.method or m.is_constructor:
                    continue
                if len(m.params) == call.arity:
                    return m
                fallback = fallback or m
        return fallback


def _call_index(model: CodeModel) -> _CallIndex:
    idx = model.__dict__.get("_call_index")
    if idx is None:
        idx = _CallIndex(model)
        model.__dict__["_call_index"] = idx
    return idx


def _own_attrs(method: MethodEntity, cls: ClassEntity) -> set[str]:
    instance = cls.instance_attributes()
    return {a for owner, a in method.accessed_attributes
            if owner == cls.qualified_name and a in instance}


def _cohesion_methods(cls: ClassEntity) -> list[MethodEntity]:
    return [m for m in cls.methods if not m.is_constructor and not m.is_abstract]


def tight_class_cohesion(model: CodeModel, cls: ClassEntity) -> float:
    """Share of method pairs that use a common instance variable.

    Usage is closed over calls to other methods of the same class, so a
    method calling an accessor also "uses" the accessor's field.
    """
    methods = _cohesion_methods(cls)
    if len(methods) < 2:
        return 0.0
    idx = _call_index(model)
    direct = {id(m): _own_attrs(m, cls) for m in methods}
    local_callees = {}
    for m in methods:
        targets = set()
        for call in m.calls:
            t = idx.resolve(call)
            if t is not None and t.owner == cls.qualified_name and id(t) in direct:
                targets.add(id(t))
        local_callees[id(m)] = targets
    closure = {}
    for m in methods:
        seen, stack, attrs = {id(m)}, [id(m)], set()
        while stack:
            cur = stack.pop()
            attrs |= direct[cur]
            for nxt in local_callees[cur] - seen:
                seen.add(nxt)
                stack.append(nxt)
        closure[id(m)] = attrs
    pairs = list(combinations(methods, 2))
    connected = sum(1 for a, b in pairs if closure[id(a)] & closure[id(b)])
    return connected / len(pairs)


def lack_of_cohesion(cls: ClassEntity) -> int:
    """LCOM1: pairs sharing no attribute minus pairs sharing one, floored at 0."""
    sets = [_own_attrs(m, cls) for m in _cohesion_methods(cls)]
    disjoint = shared = 0
    for a, b in combinations(sets, 2):
        if a & b:
            shared += 1
        else:
            disjoint += 1
    return max(disjoint - shared, 0)


def depth_of_inheritance(model: CodeModel, cls: ClassEntity) -> int:
    depth, current, seen = 0, cls, {cls.qualified_name}
    while current is not None and current.superclass:
        depth += 1
        nxt = model.get(current.superclass)
        if nxt is None or nxt.qualified_name in seen:
            break
        seen.add(nxt.qualified_name)
        current = nxt
    return depth


def response_for_class(cls: ClassEntity) -> int:
    called = {
        (c.target_class or "?", c.method, c.arity)
        for m in cls.methods for c in m.calls
        if c.target_class != cls.qualified_name
    }
    return len(cls.methods) + len(called)


def compute_sm_features(model: CodeModel, cls: ClassEntity) -> tuple[int, int, int, int, int]:
    """(CBO, RFC, DIT, LCOM, LOC) of one class."""
    if cls not in model:
        raise ConsistencyError(f"class {cls.qualified_name} is not part of release {model.release_id}")
    cbo = len(cls.referenced_types - {cls.qualified_name})
    return cbo, response_for_class(cls), depth_of_inheritance(model, cls), lack_of_cohesion(cls), cls.loc


def _class_metrics(model: CodeModel, cls: ClassEntity) -> dict:
    related = {cls.qualified_name} | {a.qualified_name for a in model.ancestors(cls)}
    foreign = {(o, a) for m in cls.methods for o, a in m.accessed_attributes if o not in related}
    accessors = [m for m in cls.methods if m.is_accessor]
    others = [m for m in cls.methods if not m.is_accessor]
    public_attrs = [n for n, vis, _ in cls.attributes
                    if vis == "public" and n not in cls.constant_attributes]
    public_methods = [m for m in cls.methods if m.visibility == "public" and not m.is_constructor]
    functional = [m for m in public_methods if not m.is_abstract and not m.is_accessor]
    members = len(public_methods) + len(public_attrs)
    cbo, rfc, dit, lcom, loc = compute_sm_features(model, cls)
    return {
        "ATFD": len(foreign),
        "LOC": loc,
        "LOCNAMM": max(loc - sum(m.loc for m in accessors), 0),
        "NOAM": len(accessors),
        "NOMNAMM": len(others),
        "NOPA": len(public_attrs),
        "TCC": tight_class_cohesion(model, cls),
        "WMCNAMM": sum(1 + m.decisions for m in others),
        "WOC": len(functional) / members if members else 0.0,
        "CBO": cbo,
        "RFC": rfc,
        "DIT": dit,
        "LCOM": lcom,
    }


def _method_metrics(model: CodeModel, method: MethodEntity) -> dict:
    owner = model.owner_of(method)
    idx = _call_index(model)
    callers = [idx.method_of[i] for i in idx.callers.get(id(method), ())]
    operations = {(c.target_class, c.method, c.arity) for c in method.calls
                  if c.target_class and model.get(c.target_class) is not None
                  and c.target_class != owner.qualified_name}
    called_classes = {t for t, _, _ in operations}
    local = {a for o, a in method.accessed_attributes if o == owner.qualified_name}
    nesting = [s.depth + 1 for s in method.statements if s.kind in _CONTROL_KINDS]
    chains = method.chains
    return {
        "ATLD": len(local),
        "CC": len({m.owner for m in callers}),
        "CDISP": len(called_classes) / len(operations) if operations else 0.0,
        "CINT": len(operations),
        "CM": len(callers),
        "CYCLO": 1 + method.decisions,
        "FANOUT": len(called_classes),
        "LOC": method.loc,
        "MaMCL": max(chains, default=0),
        "MAXNESTING": max(nesting, default=0),
        "MeMCL": sum(chains) / len(chains) if chains else 0.0,
        "NMCS": len(chains),
        "NOLV": method.local_variable_count,
    }


def compute_entity_metrics(model: CodeModel, entity: ClassEntity | MethodEntity) -> EntityMetricVector:
    if entity not in model:
        name = getattr(entity, "qualified_name", repr(entity))
        raise ConsistencyError(f"{name} is not part of release {model.release_id}")
    if isinstance(entity, ClassEntity):
        kind, values, pkg = CLASS, _class_metrics(model, entity), entity.package
    else:
        kind, values = METHOD, _method_metrics(model, entity)
        pkg = model.owner_of(entity).package
    applicable = applicable_metrics(kind)
    full = {name: (values[name] if name in applicable else None) for name in METRIC_NAMES}
    return EntityMetricVector(model.release_id, kind, entity.qualified_name, pkg, full)


def compute_release_metrics(model: CodeModel) -> list[EntityMetricVector]:
    """Vectors for every class, followed by every method, in model order."""
    out = [compute_entity_metrics(model, c) for c in model.classes]
    out += [compute_entity_metrics(model, m) for m in model.methods()]
    return out
