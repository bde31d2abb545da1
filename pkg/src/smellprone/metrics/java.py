"""Java front-end: turns a source tree into a :class:`CodeModel`.

Parsing is done with ``javalang``. Resolution is deliberately shallow: the
static type of a receiver is looked up from locals, parameters, fields of the
class and its system ancestors, and declared return types of system methods.
Anything that does not resolve to a class of the release is kept as a raw
type name (or ``None``) and never counted as system coupling.
"""

from __future__ import annotations

import bisect
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import javalang
from javalang import tree as jt

from ..errors import EmptyModelError, InputError
from .model import (
    CallSite,
    ClassEntity,
    CodeModel,
    Diagnostic,
    MethodEntity,
    PackageTree,
    Statement,
)

log = logging.getLogger(__name__)

_ACCESSOR_NAME = re.compile(r"^(get|set|is)[A-Z0-9_]")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_CAMEL = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")

JAVA_KEYWORDS = frozenset("""
abstract assert boolean break byte case catch char class const continue default
do double else enum extends final finally float for goto if implements import
instanceof int interface long native new package private protected public
return short static strictfp super switch synchronized this throw throws
transient try void volatile while true false null var
""".split())

_CONTROL = (
    jt.IfStatement, jt.ForStatement, jt.WhileStatement, jt.DoStatement,
    jt.SwitchStatement, jt.TryStatement,
)
_PARSE_ERRORS = (
    javalang.parser.JavaSyntaxError,
    javalang.tokenizer.LexerError,
    IndexError,
    StopIteration,
    TypeError,
    AttributeError,
)


def tokenize_text(text: str) -> Counter:
    """Identifier and comment words of `text`, camel-case split, lowercased."""
    bag: Counter = Counter()
    for ident in _IDENT.findall(text):
        if ident in JAVA_KEYWORDS:
            continue
        for part in _CAMEL.findall(ident):
            part = part.lower()
            if len(part) > 1 and part not in JAVA_KEYWORDS:
                bag[part] += 1
    return bag


def _visibility(modifiers, default="package") -> str:
    for v in ("public", "protected", "private"):
        if v in (modifiers or ()):
            return v
    return default


def _type_name(t) -> str | None:
    """Dotted raw name of a javalang type node; None for primitives."""
    if t is None or isinstance(t, jt.BasicType):
        return None
    if isinstance(t, str):
        return t
    parts = []
    while t is not None:
        parts.append(t.name)
        t = getattr(t, "sub_type", None)
    return ".".join(parts)


def _type_label(t) -> str:
    if t is None:
        return "void"
    if isinstance(t, jt.BasicType):
        base = t.name
    else:
        base = _type_name(t) or "?"
    return base + "[]" * len(getattr(t, "dimensions", None) or [])


def _nested_types(t):
    """Every ReferenceType inside a type node, type arguments included."""
    if t is None or isinstance(t, (jt.BasicType, str)):
        return
    yield t
    for arg in getattr(t, "arguments", None) or []:
        inner = getattr(arg, "type", None)
        if inner is not None:
            yield from _nested_types(inner)


# ---------------------------------------------------------------------------
# Pass 1: declaration index
# ---------------------------------------------------------------------------

@dataclass
class _MethodSig:
    name: str
    arity: int
    return_raw: str | None
    is_accessor: bool = False
    accessor_field: str | None = None
    return_type: str | None = None  # resolved after indexing


@dataclass
class _TypeInfo:
    qn: str
    node: object
    file: str
    text: str
    tokens: list
    package: tuple[str, ...]
    imports: list
    outer: str | None
    field_raw: dict[str, str | None] = field(default_factory=dict)
    field_types: dict[str, str | None] = field(default_factory=dict)
    methods: dict[str, list[_MethodSig]] = field(default_factory=dict)
    nested: dict[str, str] = field(default_factory=dict)
    superclass: str | None = None

    @property
    def simple(self) -> str:
        return self.qn.rsplit(".", 1)[-1]


@dataclass
class _ParsedFile:
    rel: str
    text: str
    unit: object
    tokens: list


class _Index:
    def __init__(self, infos: dict[str, _TypeInfo]):
        self.infos = infos
        self.by_simple: dict[str, list[str]] = {}
        for qn, info in infos.items():
            self.by_simple.setdefault(info.simple, []).append(qn)

    def resolve_type(self, raw: str | None, ctx: _TypeInfo) -> str | None:
        """System qualified name for `raw` seen from `ctx`, else None."""
        if not raw:
            return None
        if raw in self.infos:
            return raw
        head, _, rest = raw.partition(".")
        scope = ctx
        while scope is not None:
            if head in scope.nested:
                cand = scope.nested[head] + ("." + rest if rest else "")
                if cand in self.infos:
                    return cand
            if scope.simple == head and not rest:
                return scope.qn
            scope = self.infos.get(scope.outer) if scope.outer else None
        for imp in ctx.imports:
            path = imp.path
            if imp.static:
                continue
            if imp.wildcard:
                cand = f"{path}.{raw}"
            elif path.rsplit(".", 1)[-1] == head:
                cand = path + ("." + rest if rest else "")
            else:
                continue
            if cand in self.infos:
                return cand
        pkg = ".".join(ctx.package)
        cand = f"{pkg}.{raw}" if pkg else raw
        if cand in self.infos:
            return cand
        if not rest and len(self.by_simple.get(raw, ())) == 1:
            return self.by_simple[raw][0]
        return None

    def type_desc(self, raw: str | None, ctx: _TypeInfo) -> str | None:
        """Resolved system name when possible, else the raw name."""
        if raw is None:
            return None
        return self.resolve_type(raw, ctx) or raw

    def lineage(self, qn: str) -> list[_TypeInfo]:
        out, seen = [], set()
        while qn in self.infos and qn not in seen:
            seen.add(qn)
            info = self.infos[qn]
            out.append(info)
            qn = info.superclass or ""
        return out

    def find_field(self, qn: str, name: str):
        """(declaring class, resolved type) of field `name` visible in `qn`."""
        for info in self.lineage(qn):
            if name in info.field_types:
                return info.qn, info.field_types[name]
        return None

    def find_method(self, qn: str, name: str, arity: int):
        fallback = None
        for info in self.lineage(qn):
            sigs = info.methods.get(name)
            if not sigs:
                continue
            for sig in sigs:
                if sig.arity == arity:
                    return info.qn, sig
            if fallback is None:
                fallback = (info.qn, sigs[0])
        return fallback


def _accessor_field(node, field_names: set[str]) -> str | None:
    """Field behind a getter/setter body, or None when not an accessor."""
    if not _ACCESSOR_NAME.match(node.name or ""):
        return None
    body = node.body or []
    if len(body) != 1:
        return None
    stmt = body[0]
    params = node.parameters or []

    def field_ref(expr, shadowed=()):
        if isinstance(expr, jt.MemberReference) and not expr.selectors:
            if expr.qualifier in (None, "") and expr.member in field_names:
                if expr.member not in shadowed:
                    return expr.member
        if isinstance(expr, jt.This) and expr.selectors and len(expr.selectors) == 1:
            sel = expr.selectors[0]
            if isinstance(sel, jt.MemberReference) and sel.member in field_names:
                return sel.member
        return None

    if isinstance(stmt, jt.ReturnStatement) and not params:
        return field_ref(stmt.expression)
    if isinstance(stmt, jt.StatementExpression) and len(params) == 1:
        expr = stmt.expression
        if isinstance(expr, jt.Assignment) and expr.type == "=":
            value = expr.value
            pname = params[0].name
            if (isinstance(value, jt.MemberReference) and value.member == pname
                    and value.qualifier in (None, "") and not value.selectors):
                return field_ref(expr.expressionl, shadowed=(pname,))
    return None


def _declared_types(node):
    out = []
    for attr in ("types", "body"):
        for member in getattr(node, attr, None) or []:
            if isinstance(member, (jt.ClassDeclaration, jt.InterfaceDeclaration,
                                   jt.EnumDeclaration)):
                out.append(member)
    return out


def _collect_types(pf: _ParsedFile, package: tuple[str, ...], imports, infos, diags):
    def visit(node, outer: _TypeInfo | None):
        prefix = outer.qn if outer else ".".join(package)
        qn = f"{prefix}.{node.name}" if prefix else node.name
        if qn in infos:
            diags.append(Diagnostic(pf.rel, f"duplicate class {qn}; later declaration ignored"))
            return
        info = _TypeInfo(qn, node, pf.rel, pf.text, pf.tokens, package, imports,
                         outer.qn if outer else None)
        infos[qn] = info
        if outer is not None:
            outer.nested[node.name] = qn
        for nested in _declared_types(node):
            visit(nested, info)

    for node in _declared_types(pf.unit):
        visit(node, None)


def _index_members(info: _TypeInfo) -> None:
    node = info.node
    ext = getattr(node, "extends", None)
    if isinstance(node, jt.ClassDeclaration) and ext is not None:
        info.superclass = _type_name(ext)
    for fd in getattr(node, "fields", None) or []:
        for d in fd.declarators:
            info.field_raw[d.name] = _type_name(fd.type)
    names = set(info.field_raw)
    for m in getattr(node, "methods", None) or []:
        fld = _accessor_field(m, names)
        sig = _MethodSig(m.name, len(m.parameters or []), _type_name(m.return_type),
                         is_accessor=fld is not None, accessor_field=fld)
        info.methods.setdefault(m.name, []).append(sig)


# ---------------------------------------------------------------------------
# Source spans
# ---------------------------------------------------------------------------

def _position_index(tokens):
    return [(t.position.line, t.position.column) for t in tokens]


def _end_line(tokens, keys, position, stop_at_semicolon=True) -> int:
    """Line of the brace closing the body that starts after `position`."""
    if position is None:
        return 0
    i = bisect.bisect_left(keys, (position.line, position.column))
    parens = 0
    while i < len(tokens):
        v = tokens[i].value
        if v == "(":
            parens += 1
        elif v == ")":
            parens -= 1
        elif parens == 0 and v == ";" and stop_at_semicolon:
            return tokens[i].position.line
        elif parens == 0 and v == "{":
            depth = 0
            while i < len(tokens):
                v = tokens[i].value
                if v == "{":
                    depth += 1
                elif v == "}":
                    depth -= 1
                    if depth == 0:
                        return tokens[i].position.line
                i += 1
            break
        i += 1
    return tokens[-1].position.line if tokens else position.line


# ---------------------------------------------------------------------------
# Pass 2: method bodies
# ---------------------------------------------------------------------------

class _BodyAnalyzer:
    def __init__(self, index: _Index, info: _TypeInfo, node):
        self.index = index
        self.info = info
        self.node = node
        self.locals: dict[str, str | None] = {}
        self.calls: list[CallSite] = []
        self.accessed: set[tuple[str, str]] = set()
        self.chains: list[int] = []
        self.referenced: set[str] = set()
        self.statements: list[Statement] = []
        self.decisions = 0
        self.local_count = 0
        self._skip: set[int] = set()

    # -- helpers --------------------------------------------------------
    def _ref(self, desc: str | None) -> None:
        if desc and desc in self.index.infos:
            self.referenced.add(desc)

    def _ref_type_node(self, t) -> None:
        for rt in _nested_types(t):
            self._ref(self.index.resolve_type(_type_name(rt), self.info))

    def _field_lookup(self, qn: str | None, name: str):
        if qn and qn in self.index.infos:
            return self.index.find_field(qn, name)
        return None

    def _enclosing(self):
        scope = self.info
        while scope is not None:
            yield scope
            scope = self.index.infos.get(scope.outer) if scope.outer else None

    def _name_type(self, name: str) -> str | None:
        if name in self.locals:
            return self.locals[name]
        for scope in self._enclosing():
            hit = self.index.find_field(scope.qn, name)
            if hit:
                self.accessed.add((hit[0], name))
                return hit[1]
        return self.index.resolve_type(name, self.info)

    def _qualifier_type(self, qualifier: str) -> str | None:
        if not qualifier:
            return None
        if "." in qualifier:
            whole = self.index.resolve_type(qualifier, self.info)
            if whole:
                return whole
        parts = qualifier.split(".")
        desc = self._name_type(parts[0])
        for part in parts[1:]:
            hit = self._field_lookup(desc, part)
            if hit is None:
                return None
            self.accessed.add((hit[0], part))
            desc = hit[1]
        return desc

    def _call(self, receiver: str | None, name: str, arity: int, implicit=False) -> str | None:
        """Record a call and return the callee's declared return type."""
        target, sig = receiver, None
        if implicit:
            for scope in self._enclosing():
                found = self.index.find_method(scope.qn, name, arity)
                if found:
                    target, sig = found
                    break
            else:
                target = self.info.qn
        elif receiver and receiver in self.index.infos:
            found = self.index.find_method(receiver, name, arity)
            if found:
                target, sig = found
        self.calls.append(CallSite(target, name, arity))
        self._ref(target)
        if sig is None:
            return None
        if sig.is_accessor and sig.accessor_field:
            self.accessed.add((target, sig.accessor_field))
        return sig.return_type

    def _member(self, owner: str | None, name: str) -> str | None:
        hit = self._field_lookup(owner, name)
        if hit is None:
            return None
        self.accessed.add((hit[0], name))
        self._ref(hit[0])
        return hit[1]

    # -- chains ---------------------------------------------------------
    def _primary(self, node) -> None:
        selectors = getattr(node, "selectors", None) or []
        calls = 0
        if isinstance(node, jt.MethodInvocation):
            calls += 1
            arity = len(node.arguments or [])
            if node.qualifier:
                desc = self._call(self._qualifier_type(node.qualifier), node.member, arity)
            else:
                desc = self._call(None, node.member, arity, implicit=True)
        elif isinstance(node, jt.SuperMethodInvocation):
            calls += 1
            sup = self.index.resolve_type(self.info.superclass, self.info) or self.info.superclass
            desc = self._call(sup, node.member, len(node.arguments or []))
        elif isinstance(node, jt.MemberReference):
            if node.qualifier:
                owner = self._qualifier_type(node.qualifier)
                desc = self._member(owner, node.member)
                if desc is None and owner is None:
                    desc = self.index.resolve_type(f"{node.qualifier}.{node.member}", self.info)
            else:
                desc = self._name_type(node.member)
        elif isinstance(node, jt.This):
            desc = self.info.qn
        elif isinstance(node, jt.ClassCreator):
            desc = self.index.type_desc(_type_name(node.type), self.info)
            self._ref_type_node(node.type)
        else:
            desc = None
        for sel in selectors:
            self._skip.add(id(sel))
            if isinstance(sel, jt.MethodInvocation):
                calls += 1
                desc = self._call(desc, sel.member, len(sel.arguments or []))
            elif isinstance(sel, jt.MemberReference):
                desc = self._member(desc, sel.member)
            else:
                desc = None
        if calls >= 2:
            self.chains.append(calls)

    # -- statements -----------------------------------------------------
    def _walk_statement(self, node, depth: int) -> None:
        if node is None:
            return
        if isinstance(node, list):
            for s in node:
                self._walk_statement(s, depth)
            return
        line = node.position.line if getattr(node, "position", None) else 0
        if isinstance(node, (jt.Statement, jt.LocalVariableDeclaration)):
            kind = type(node).__name__.replace("Statement", "").lower() or "statement"
            self.statements.append(Statement(kind, depth, line))
        if isinstance(node, jt.IfStatement):
            self._walk_statement(node.then_statement, depth + 1)
            if isinstance(node.else_statement, jt.IfStatement):
                self._walk_statement(node.else_statement, depth)
            else:
                self._walk_statement(node.else_statement, depth + 1)
        elif isinstance(node, (jt.ForStatement, jt.WhileStatement, jt.DoStatement)):
            self._walk_statement(node.body, depth + 1)
        elif isinstance(node, jt.SwitchStatement):
            for case in node.cases or []:
                self._walk_statement(case.statements, depth + 1)
        elif isinstance(node, jt.TryStatement):
            self._walk_statement(node.block, depth + 1)
            for catch in node.catches or []:
                self._walk_statement(catch.block, depth + 1)
            self._walk_statement(node.finally_block, depth + 1)
        elif isinstance(node, jt.BlockStatement):
            self._walk_statement(node.statements, depth)
        elif isinstance(node, jt.SynchronizedStatement):
            self._walk_statement(node.block, depth)

    # -- driver ---------------------------------------------------------
    def run(self) -> None:
        node = self.node
        for p in node.parameters or []:
            self.locals[p.name] = self.index.type_desc(_type_name(p.type), self.info)
            self.local_count += 1
            self._ref_type_node(p.type)
        self._ref_type_node(getattr(node, "return_type", None))
        body = node.body or []
        # declarations first so later references see every local
        for stmt in body:
            for _, n in stmt:
                if isinstance(n, jt.VariableDeclaration):
                    desc = self.index.type_desc(_type_name(n.type), self.info)
                    self._ref_type_node(n.type)
                    for d in n.declarators:
                        self.locals[d.name] = desc
                        self.local_count += 1
                elif isinstance(n, jt.CatchClauseParameter):
                    self.locals[n.name] = self.index.type_desc((n.types or [None])[0], self.info)
                    self.local_count += 1
                elif isinstance(n, jt.TryResource):
                    self.locals[n.name] = self.index.type_desc(_type_name(n.type), self.info)
                    self.local_count += 1
        for stmt in body:
            for _, n in stmt:
                if isinstance(n, (jt.IfStatement, jt.ForStatement, jt.WhileStatement,
                                  jt.DoStatement, jt.CatchClause, jt.TernaryExpression)):
                    self.decisions += 1
                elif isinstance(n, jt.SwitchStatementCase):
                    self.decisions += len(n.case or [])
                elif isinstance(n, jt.BinaryOperation) and n.operator in ("&&", "||"):
                    self.decisions += 1
                elif isinstance(n, jt.Cast):
                    self._ref_type_node(n.type)
                if id(n) in self._skip:
                    continue
                if isinstance(n, (jt.MethodInvocation, jt.SuperMethodInvocation,
                                  jt.MemberReference, jt.This, jt.ClassCreator)):
                    self._primary(n)
                elif getattr(n, "selectors", None) and isinstance(n, jt.Primary):
                    self._primary(n)
        self._walk_statement(body, 0)


def _build_class(info: _TypeInfo, index: _Index) -> ClassEntity:
    node = info.node
    keys = _position_index(info.tokens)
    is_interface = isinstance(node, jt.InterfaceDeclaration)
    modifiers = getattr(node, "modifiers", None) or set()
    start = node.position.line if node.position else 1
    end = _end_line(info.tokens, keys, node.position, stop_at_semicolon=False)
    cls = ClassEntity(
        qualified_name=info.qn,
        package_path=info.package,
        superclass=index.resolve_type(info.superclass, info) or info.superclass,
        source_span=(info.file, start, max(start, end)),
        is_interface=is_interface,
        is_abstract=is_interface or "abstract" in modifiers,
    )
    for fd in getattr(node, "fields", None) or []:
        fmods = fd.modifiers or set()
        vis = "public" if is_interface else _visibility(fmods)
        static = is_interface or "static" in fmods
        for d in fd.declarators:
            cls.attributes.append((d.name, vis, static))
            cls.attribute_types[d.name] = info.field_types.get(d.name)
            if static and ("final" in fmods or is_interface):
                cls.constant_attributes.add(d.name)
        for rt in _nested_types(fd.type):
            ref = index.resolve_type(_type_name(rt), info)
            if ref:
                cls.referenced_types.add(ref)

    members = [(m, False) for m in getattr(node, "constructors", None) or []]
    members += [(m, True) for m in getattr(node, "methods", None) or []]
    members.sort(key=lambda pair: (pair[0].position.line, pair[0].position.column)
                 if pair[0].position else (0, 0))
    names = set(info.field_raw)
    for m, is_method in members:
        analyzer = _BodyAnalyzer(index, info, m)
        analyzer.run()
        mmods = m.modifiers or set()
        params = [(p.name, _type_label(p.type)) for p in m.parameters or []]
        name = m.name if is_method else "<init>"
        signature = f"{name}({','.join(t for _, t in params)})"
        fld = _accessor_field(m, names) if is_method else None
        abstract = is_method and m.body is None
        mstart = m.position.line if m.position else start
        mend = _end_line(info.tokens, keys, m.position)
        cls.methods.append(MethodEntity(
            name=name,
            signature=signature,
            owner=info.qn,
            params=params,
            return_type=_type_label(m.return_type) if is_method else None,
            visibility=_visibility(mmods, "public" if is_interface else "package"),
            is_static="static" in mmods,
            is_abstract=abstract,
            is_constructor=not is_method,
            is_accessor=fld is not None,
            accessor_field=fld,
            statements=analyzer.statements,
            decisions=analyzer.decisions,
            calls=analyzer.calls,
            local_variable_count=analyzer.local_count,
            accessed_attributes=analyzer.accessed,
            chains=analyzer.chains,
            source_span=(mstart, max(mstart, mend)),
        ))
        cls.referenced_types |= analyzer.referenced
    cls.referenced_types.discard(info.qn)

    lines = info.text.splitlines()
    cls.token_bag = tokenize_text("\n".join(lines[start - 1:end]))
    return cls


def _describe(exc: Exception) -> str:
    desc = getattr(exc, "description", None) or str(exc) or type(exc).__name__
    at = getattr(exc, "at", None)
    pos = getattr(at, "position", None)
    if pos:
        return f"{desc} at line {pos.line}"
    return desc


def parse_file(path: Path, rel: str | None = None) -> _ParsedFile:
    text = path.read_text(encoding="utf-8", errors="replace")
    tokens = list(javalang.tokenizer.tokenize(text))
    unit = javalang.parser.Parser(tokens).parse()
    return _ParsedFile(rel or str(path), text, unit, tokens)


def parse_release(source_root, release_id: str) -> CodeModel:
    """Parse every ``*.java`` file under `source_root` into one CodeModel.

    Files that fail to parse become diagnostics on the model. Raises
    InputError when the directory is missing and EmptyModelError when no
    class could be extracted.
    """
    root = Path(source_root)
    if not root.is_dir():
        raise InputError(f"source directory not found: {root}")
    diagnostics: list[Diagnostic] = []
    parsed: list[_ParsedFile] = []
    for path in sorted(root.rglob("*.java")):
        rel = path.relative_to(root).as_posix()
        try:
            parsed.append(parse_file(path, rel))
        except _PARSE_ERRORS as exc:
            log.warning("skipping %s: %s", rel, _describe(exc))
            diagnostics.append(Diagnostic(rel, _describe(exc)))

    infos: dict[str, _TypeInfo] = {}
    for pf in parsed:
        pkg = tuple(pf.unit.package.name.split(".")) if pf.unit.package else ()
        _collect_types(pf, pkg, pf.unit.imports or [], infos, diagnostics)
    if not infos:
        raise EmptyModelError(f"no parsable classes under {root}")

    for info in infos.values():
        _index_members(info)
    index = _Index(infos)
    for info in infos.values():
        info.superclass = index.resolve_type(info.superclass, info) or info.superclass
        for name, raw in info.field_raw.items():
            info.field_types[name] = index.type_desc(raw, info)
        for sigs in info.methods.values():
            for sig in sigs:
                sig.return_type = index.type_desc(sig.return_raw, info)

    classes = [_build_class(info, index) for info in infos.values()]
    classes.sort(key=lambda c: c.qualified_name)
    packages = PackageTree(c.package_path for c in classes)
    return CodeModel(release_id, classes, packages, diagnostics)
