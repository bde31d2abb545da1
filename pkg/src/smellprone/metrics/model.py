"""Entities of a parsed release and the per-entity metric vector."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple

# CSV column order for metric slots.
METRIC_NAMES: tuple[str, ...] = (
    "ATFD", "ATLD", "CC", "CDISP", "CINT", "CM", "CYCLO", "FANOUT", "LOC",
    "LOCNAMM", "MaMCL", "MAXNESTING", "MeMCL", "NMCS", "NOAM", "NOLV",
    "NOMNAMM", "NOPA", "TCC", "WMCNAMM", "WOC", "CBO", "RFC", "DIT", "LCOM",
)

CLASS_METRICS = frozenset({
    "ATFD", "LOC", "LOCNAMM", "NOAM", "NOMNAMM", "NOPA", "TCC", "WMCNAMM",
    "WOC", "CBO", "RFC", "DIT", "LCOM",
})
METHOD_METRICS = frozenset({
    "ATLD", "CC", "CDISP", "CINT", "CM", "CYCLO", "FANOUT", "LOC", "MaMCL",
    "MAXNESTING", "MeMCL", "NMCS", "NOLV",
})
REAL_METRICS = frozenset({"TCC", "WOC", "CDISP", "MeMCL"})

CLASS = "class"
METHOD = "method"


class CallSite(NamedTuple):
    target_class: str | None  # system qualified name, raw type name, or None
    method: str
    arity: int


class Statement(NamedTuple):
    kind: str
    depth: int  # number of enclosing control structures
    line: int


class Diagnostic(NamedTuple):
    file: str
    message: str


@dataclass
class MethodEntity:
    name: str
    signature: str
    owner: str
    params: list[tuple[str, str | None]] = field(default_factory=list)
    return_type: str | None = None
    visibility: str = "package"
    is_static: bool = False
    is_abstract: bool = False
    is_constructor: bool = False
    is_accessor: bool = False
    accessor_field: str | None = None
    statements: list[Statement] = field(default_factory=list)
    decisions: int = 0
    calls: list[CallSite] = field(default_factory=list)
    local_variable_count: int = 0
    accessed_attributes: set[tuple[str, str]] = field(default_factory=set)
    chains: list[int] = field(default_factory=list)
    source_span: tuple[int, int] = (0, 0)

    @property
    def qualified_name(self) -> str:
        return f"{self.owner}#{self.signature}"

    @property
    def loc(self) -> int:
        return self.source_span[1] - self.source_span[0] + 1


@dataclass
class ClassEntity:
    qualified_name: str
    package_path: tuple[str, ...]
    superclass: str | None = None
    methods: list[MethodEntity] = field(default_factory=list)
    # (name, visibility, is_static); field types live in attribute_types
    attributes: list[tuple[str, str, bool]] = field(default_factory=list)
    attribute_types: dict[str, str | None] = field(default_factory=dict)
    source_span: tuple[str, int, int] = ("", 0, 0)
    token_bag: Counter = field(default_factory=Counter)
    is_interface: bool = False
    is_abstract: bool = False
    constant_attributes: set[str] = field(default_factory=set)
    referenced_types: set[str] = field(default_factory=set)

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]

    @property
    def package(self) -> str:
        return ".".join(self.package_path)

    @property
    def loc(self) -> int:
        return self.source_span[2] - self.source_span[1] + 1

    def attribute_names(self) -> set[str]:
        return {name for name, _, _ in self.attributes}

    def instance_attributes(self) -> set[str]:
        return {name for name, _, static in self.attributes if not static}


class PackageTree:
    """Package hierarchy rooted at the default (unnamed) package."""

    def __init__(self, paths=()):
        self._nodes: set[tuple[str, ...]] = {()}
        for path in paths:
            self.add(tuple(path))

    def add(self, path: tuple[str, ...]) -> None:
        for i in range(len(path) + 1):
            self._nodes.add(tuple(path[:i]))

    def __contains__(self, path) -> bool:
        return tuple(path) in self._nodes

    def __iter__(self) -> Iterator[tuple[str, ...]]:
        return iter(sorted(self._nodes))

    def __len__(self) -> int:
        return len(self._nodes)

    @staticmethod
    def distance(a: tuple[str, ...], b: tuple[str, ...]) -> int:
        common = 0
        for x, y in zip(a, b):
            if x != y:
                break
            common += 1
        return (len(a) - common) + (len(b) - common)


@dataclass
class CodeModel:
    release_id: str
    classes: list[ClassEntity]
    packages: PackageTree
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def __post_init__(self):
        self._by_name = {c.qualified_name: c for c in self.classes}
        self._owner_of = {
            id(m): c for c in self.classes for m in c.methods
        }

    def get(self, qualified_name: str) -> ClassEntity | None:
        return self._by_name.get(qualified_name)

    def __contains__(self, entity) -> bool:
        if isinstance(entity, ClassEntity):
            return self._by_name.get(entity.qualified_name) is entity
        if isinstance(entity, MethodEntity):
            return id(entity) in self._owner_of
        return False

    def owner_of(self, method: MethodEntity) -> ClassEntity:
        return self._owner_of[id(method)]

    def ancestors(self, cls: ClassEntity) -> list[ClassEntity]:
        """System superclasses of `cls`, nearest first."""
        chain, seen = [], {cls.qualified_name}
        current = cls
        while current.superclass and current.superclass in self._by_name:
            if current.superclass in seen:
                break
            current = self._by_name[current.superclass]
            seen.add(current.qualified_name)
            chain.append(current)
        return chain

    def methods(self) -> Iterator[MethodEntity]:
        for c in self.classes:
            yield from c.methods


@dataclass(frozen=True)
class EntityMetricVector:
    release: str
    kind: str
    qualified_name: str
    package: str
    values: Mapping[str, float | int | None]

    @property
    def owner(self) -> str:
        """Owning class of a method entity; the class itself otherwise."""
        return self.qualified_name.split("#", 1)[0]

    def get(self, metric: str):
        return self.values.get(metric)

    def __getitem__(self, metric: str):
        return self.values[metric]


def applicable_metrics(kind: str) -> frozenset[str]:
    return CLASS_METRICS if kind == CLASS else METHOD_METRICS
