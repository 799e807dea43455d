"""Linked object-oriented fact model built from syntax trees.

Construction runs in two passes. :func:`build_skeleton` records what is
directly observable (names, parameters, textual bases, fields, module
variables, import statements). :func:`link_references` then resolves imports,
superclasses and every name reference inside subroutines through a chain of
:class:`Scope` objects rooted at each module.
"""

from __future__ import annotations

import ast
import logging
from dataclasses import dataclass, field
from pathlib import PurePosixPath
from typing import Iterator, Union

from .frontend import SyntaxTree

log = logging.getLogger(__name__)

PROPERTY_DECORATORS = frozenset({"property", "cached_property"})
PROPERTY_ACCESSOR_DECORATORS = frozenset({"setter", "getter", "deleter"})
ABSTRACT_DECORATORS = frozenset({"abstractmethod"})

RESOLUTIONS = (
    "local",
    "parameter",
    "own_field",
    "foreign_field",
    "module_global",
    "imported",
    "unresolved",
)


class ModelError(Exception):
    pass


@dataclass(frozen=True)
class External:
    """Marker for anything outside the analysed project."""

    name: str


@dataclass(frozen=True)
class FieldRecord:
    name: str
    visibility: str  # "public" | "private"


@dataclass(frozen=True)
class VariableRef:
    name: str
    resolution: str
    owner: "ClassEntity | None" = None
    # for module_global: "variable", "class" or "subroutine"
    target_kind: str = ""


@dataclass(eq=False)
class ImportLink:
    source: str
    target: "ModuleEntity | ClassEntity | SubroutineEntity | External | None" = None
    # (module text, imported name or None, alias, relative level)
    spec: tuple = ()


@dataclass(frozen=True)
class Binding:
    kind: str  # variable | class | subroutine | import | module
    target: object = None


class Scope:
    def __init__(self, parent: Scope | None = None) -> None:
        self.bindings: dict[str, Binding] = {}
        self.parent = parent

    def bind(self, name: str, binding: Binding) -> None:
        self.bindings[name] = binding

    def lookup(self, name: str) -> Binding | None:
        scope: Scope | None = self
        while scope is not None:
            found = scope.bindings.get(name)
            if found is not None:
                return found
            scope = scope.parent
        return None


def visibility_of(name: str) -> str:
    return "private" if name.startswith("_") else "public"


@dataclass(eq=False)
class SubroutineEntity:
    name: str
    qualname: str
    parent: "ClassEntity | ModuleEntity"
    module: "ModuleEntity"
    node: ast.FunctionDef | ast.AsyncFunctionDef
    parameters: list[str]
    receiver: str | None
    decorators: list[str]
    is_concrete: bool
    span: tuple[int, int]
    referenced_variables: set[VariableRef] = field(default_factory=set)
    referenced_classes: set["ClassEntity"] = field(default_factory=set)
    has_global_statement: bool = False

    @property
    def id(self) -> str:
        return f"{self.module.id}::{self.qualname}"

    @property
    def is_method(self) -> bool:
        return isinstance(self.parent, ClassEntity)

    @property
    def decorator_names(self) -> list[str]:
        return [d.rsplit(".", 1)[-1] for d in self.decorators]

    @property
    def is_property(self) -> bool:
        return any(d in PROPERTY_DECORATORS for d in self.decorator_names)

    @property
    def is_property_accessor(self) -> bool:
        return self.is_property or any(d in PROPERTY_ACCESSOR_DECORATORS for d in self.decorator_names)

    def own_fields_used(self) -> frozenset[str]:
        return frozenset(r.name for r in self.referenced_variables if r.resolution == "own_field")


@dataclass(eq=False)
class ClassEntity:
    name: str
    qualname: str
    parent: "ModuleEntity | ClassEntity"
    module: "ModuleEntity"
    node: ast.ClassDef
    base_names: list[str]
    span: tuple[int, int]
    methods: list[SubroutineEntity] = field(default_factory=list)
    classes: list["ClassEntity"] = field(default_factory=list)
    fields: dict[str, FieldRecord] = field(default_factory=dict)
    resolved_bases: list["ClassEntity | External"] = field(default_factory=list)
    referenced_classes: set["ClassEntity"] = field(default_factory=set)
    uses_global: bool = False
    scope: Scope | None = None

    @property
    def id(self) -> str:
        return f"{self.module.id}::{self.qualname}"

    def add_field(self, name: str) -> None:
        if name not in self.fields:
            self.fields[name] = FieldRecord(name, visibility_of(name))

    def method_names(self) -> set[str]:
        return {m.name for m in self.methods}

    def property_names(self) -> set[str]:
        return {m.name for m in self.methods if m.is_property}

    def ancestors(self) -> list[ClassEntity]:
        seen: list[ClassEntity] = []
        stack = [b for b in self.resolved_bases if isinstance(b, ClassEntity)]
        while stack:
            cls = stack.pop()
            if cls is self or cls in seen:
                continue
            seen.append(cls)
            stack.extend(b for b in cls.resolved_bases if isinstance(b, ClassEntity))
        return seen

    def all_field_names(self) -> set[str]:
        names = set(self.fields)
        for base in self.ancestors():
            names.update(base.fields)
        return names

    def data_names(self) -> set[str]:
        names = self.all_field_names() | self.property_names()
        for base in self.ancestors():
            names |= base.property_names()
        return names


@dataclass(eq=False)
class ModuleEntity:
    path: str
    dotted: str
    tree: SyntaxTree
    is_test: bool
    project: "Project | None" = None
    classes: list[ClassEntity] = field(default_factory=list)
    subroutines: list[SubroutineEntity] = field(default_factory=list)
    variables: set[str] = field(default_factory=set)
    imports: list[ImportLink] = field(default_factory=list)
    scope: Scope | None = None
    # module-level binding statements in source order: (kind, name, payload)
    bind_order: list[tuple[str, str, object]] = field(default_factory=list)

    @property
    def id(self) -> str:
        project = self.project.name if self.project is not None else ""
        return f"{project}/{self.path}"

    @property
    def package(self) -> str:
        if PurePosixPath(self.path).name == "__init__.py":
            return self.dotted
        return self.dotted.rpartition(".")[0]

    def all_classes(self) -> Iterator[ClassEntity]:
        stack = list(reversed(self.classes))
        while stack:
            cls = stack.pop()
            yield cls
            stack.extend(reversed(cls.classes))

    def all_subroutines(self) -> Iterator[SubroutineEntity]:
        yield from self.subroutines
        for cls in self.all_classes():
            yield from cls.methods

    def member(self, name: str) -> object:
        """Look up a module attribute: class, function, variable or submodule."""
        for cls in self.classes:
            if cls.name == name:
                return cls
        for sub in self.subroutines:
            if sub.name == name:
                return sub
        if self.project is not None:
            sub_mod = self.project.by_dotted.get(f"{self.dotted}.{name}" if self.dotted else name)
            if sub_mod is not None:
                return sub_mod
        if name in self.variables:
            return self
        if self.scope is not None:
            binding = self.scope.bindings.get(name)
            if binding is not None and binding.kind == "import":
                return binding.target
        return None


@dataclass(eq=False)
class Project:
    name: str
    root_path: str
    modules: dict[str, ModuleEntity] = field(default_factory=dict)
    by_dotted: dict[str, ModuleEntity] = field(default_factory=dict)

    def add_module(self, module: ModuleEntity) -> None:
        if module.path in self.modules:
            raise ModelError(f"duplicate module path {module.path!r} in project {self.name!r}")
        module.project = self
        self.modules[module.path] = module
        self.by_dotted.setdefault(module.dotted, module)

    def sorted_modules(self) -> list[ModuleEntity]:
        return [self.modules[p] for p in sorted(self.modules)]

    def all_classes(self) -> list[ClassEntity]:
        return [c for m in self.sorted_modules() for c in m.all_classes()]

    def all_subroutines(self) -> list[SubroutineEntity]:
        return [s for m in self.sorted_modules() for s in m.all_subroutines()]

    def resolve_module(self, name: str) -> ModuleEntity | None:
        if not name:
            return None
        found = self.by_dotted.get(name)
        if found is not None:
            return found
        # src-layout and nested roots: match on a dotted suffix
        suffix = "." + name
        matches = sorted((d for d in self.by_dotted if d.endswith(suffix)), key=lambda d: (len(d), d))
        return self.by_dotted[matches[0]] if matches else None


def is_test_path(path: str | PurePosixPath) -> bool:
    """True when the file name or any directory on the path contains "test" or "Test"."""
    return any("test" in part or "Test" in part for part in PurePosixPath(path).parts)


def dotted_name(rel_path: str) -> str:
    parts = list(PurePosixPath(rel_path).with_suffix("").parts)
    if parts and parts[-1] == "__init__":
        parts.pop()
    return ".".join(parts)


# ---------------------------------------------------------------------------
# First pass
# ---------------------------------------------------------------------------

_COMPOUND = (ast.If, ast.Try, ast.With, ast.AsyncWith, ast.For, ast.AsyncFor, ast.While)


def _child_blocks(stmt: ast.stmt) -> list[list[ast.stmt]]:
    blocks = [getattr(stmt, name) for name in ("body", "orelse", "finalbody") if getattr(stmt, name, None)]
    blocks.extend(h.body for h in getattr(stmt, "handlers", ()))
    return blocks


def _target_names(target: ast.expr) -> Iterator[str]:
    if isinstance(target, ast.Name):
        yield target.id
    elif isinstance(target, (ast.Tuple, ast.List)):
        for elt in target.elts:
            yield from _target_names(elt)
    elif isinstance(target, ast.Starred):
        yield from _target_names(target.value)


def _assign_targets(stmt: ast.stmt) -> list[ast.expr]:
    if isinstance(stmt, ast.Assign):
        return list(stmt.targets)
    if isinstance(stmt, (ast.AnnAssign, ast.AugAssign)):
        return [stmt.target]
    return []


def _decorator_text(dec: ast.expr) -> str:
    if isinstance(dec, ast.Call):
        dec = dec.func
    try:
        return ast.unparse(dec)
    except Exception:  # pragma: no cover - unparse handles every expression node
        return "?"


def _is_trivial_body(body: list[ast.stmt]) -> bool:
    for stmt in body:
        if isinstance(stmt, ast.Pass):
            continue
        if isinstance(stmt, ast.Expr) and isinstance(stmt.value, ast.Constant):
            if isinstance(stmt.value.value, str) or stmt.value.value is Ellipsis:
                continue
        return False
    return True


def _parameters(args: ast.arguments) -> list[str]:
    names = [a.arg for a in args.posonlyargs + args.args]
    if args.vararg:
        names.append(args.vararg.arg)
    names.extend(a.arg for a in args.kwonlyargs)
    if args.kwarg:
        names.append(args.kwarg.arg)
    return names


class _SkeletonBuilder:
    def __init__(self, module: ModuleEntity) -> None:
        self.module = module

    def run(self) -> None:
        self._block(self.module.tree.root.body, self.module, "")

    def _block(self, stmts: list[ast.stmt], container: ModuleEntity | ClassEntity, prefix: str) -> None:
        for stmt in stmts:
            if isinstance(stmt, ast.ClassDef):
                self._class(stmt, container, prefix)
            elif isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef)):
                self._function(stmt, container, prefix)
            elif isinstance(stmt, (ast.Import, ast.ImportFrom)):
                self._import(stmt)
            elif isinstance(stmt, _COMPOUND) or type(stmt).__name__ in ("Match", "TryStar"):
                if isinstance(stmt, (ast.For, ast.AsyncFor)):
                    self._bind_names(container, _target_names(stmt.target))
                if isinstance(stmt, (ast.With, ast.AsyncWith)):
                    for item in stmt.items:
                        if item.optional_vars is not None:
                            self._bind_names(container, _target_names(item.optional_vars))
                for block in _child_blocks(stmt):
                    self._block(block, container, prefix)
                for case in getattr(stmt, "cases", ()):
                    self._block(case.body, container, prefix)
            else:
                for target in _assign_targets(stmt):
                    self._bind_names(container, _target_names(target))

    def _bind_names(self, container: ModuleEntity | ClassEntity, names: Iterator[str]) -> None:
        for name in names:
            if isinstance(container, ClassEntity):
                container.add_field(name)
            else:
                container.variables.add(name)
                container.bind_order.append(("variable", name, None))

    def _class(self, node: ast.ClassDef, container: ModuleEntity | ClassEntity, prefix: str) -> None:
        qualname = f"{prefix}{node.name}"
        cls = ClassEntity(
            name=node.name,
            qualname=qualname,
            parent=container,
            module=self.module,
            node=node,
            base_names=[ast.unparse(b) for b in node.bases],
            span=(node.lineno, node.end_lineno or node.lineno),
        )
        container.classes.append(cls)
        if isinstance(container, ModuleEntity):
            container.bind_order.append(("class", node.name, cls))
        self._block(node.body, cls, qualname + ".")
        for method in cls.methods:
            if method.receiver is None:
                continue
            for sub in ast.walk(method.node):
                for target in _assign_targets(sub) if isinstance(sub, ast.stmt) else ():
                    for attr in _receiver_attrs(target, method.receiver):
                        cls.add_field(attr)

    def _function(self, node: ast.FunctionDef | ast.AsyncFunctionDef, container, prefix: str) -> None:
        decorators = [_decorator_text(d) for d in node.decorator_list]
        short = [d.rsplit(".", 1)[-1] for d in decorators]
        params = _parameters(node.args)
        receiver = None
        if isinstance(container, ClassEntity) and "staticmethod" not in short:
            positional = node.args.posonlyargs + node.args.args
            if positional:
                receiver = positional[0].arg
        sub = SubroutineEntity(
            name=node.name,
            qualname=f"{prefix}{node.name}",
            parent=container,
            module=self.module,
            node=node,
            parameters=params,
            receiver=receiver,
            decorators=decorators,
            is_concrete=not (_is_trivial_body(node.body) or any(d in ABSTRACT_DECORATORS for d in short)),
            span=(node.lineno, node.end_lineno or node.lineno),
            has_global_statement=any(isinstance(n, ast.Global) for n in ast.walk(node)),
        )
        if isinstance(container, ClassEntity):
            container.methods.append(sub)
        else:
            container.subroutines.append(sub)
            container.bind_order.append(("subroutine", node.name, sub))

    def _import(self, node: ast.Import | ast.ImportFrom) -> None:
        text = ast.unparse(node)
        if isinstance(node, ast.Import):
            for alias in node.names:
                link = ImportLink(text, spec=(alias.name, None, alias.asname, 0))
                self.module.imports.append(link)
                bound = alias.asname or alias.name.split(".")[0]
                self.module.bind_order.append(("import", bound, link))
        else:
            for alias in node.names:
                link = ImportLink(text, spec=(node.module or "", alias.name, alias.asname, node.level))
                self.module.imports.append(link)
                if alias.name != "*":
                    self.module.bind_order.append(("import", alias.asname or alias.name, link))


def _receiver_attrs(target: ast.expr, receiver: str) -> Iterator[str]:
    if isinstance(target, ast.Attribute) and isinstance(target.value, ast.Name) and target.value.id == receiver:
        yield target.attr
    elif isinstance(target, (ast.Tuple, ast.List)):
        for elt in target.elts:
            yield from _receiver_attrs(elt, receiver)
    elif isinstance(target, ast.Starred):
        yield from _receiver_attrs(target.value, receiver)


def build_module(tree: SyntaxTree, rel_path: str) -> ModuleEntity:
    """First-pass facts for one module; independent of every other module."""
    rel = PurePosixPath(rel_path).as_posix()
    module = ModuleEntity(path=rel, dotted=dotted_name(rel), tree=tree, is_test=is_test_path(rel))
    _SkeletonBuilder(module).run()
    return module


def build_skeleton(trees: dict[str, SyntaxTree], project_root: str, name: str | None = None) -> Project:
    project = Project(name=name or PurePosixPath(project_root).name or project_root, root_path=str(project_root))
    for rel_path in sorted(trees):
        project.add_module(build_module(trees[rel_path], rel_path))
    return project


def assemble_project(modules: list[ModuleEntity], project_root: str, name: str | None = None) -> Project:
    project = Project(name=name or PurePosixPath(project_root).name or project_root, root_path=str(project_root))
    for module in sorted(modules, key=lambda m: m.path):
        project.add_module(module)
    return project


# ---------------------------------------------------------------------------
# Second pass
# ---------------------------------------------------------------------------

Target = Union[ModuleEntity, ClassEntity, SubroutineEntity, External, None]


def _resolve_import(project: Project, module: ModuleEntity, link: ImportLink) -> None:
    mod_name, member, _alias, level = link.spec
    if level:
        base = module.package.split(".") if module.package else []
        if level > 1:
            base = base[: len(base) - (level - 1)] if level - 1 <= len(base) else []
        full = ".".join([*base, mod_name] if mod_name else base)
    else:
        full = mod_name
    if member is None:
        link.target = project.resolve_module(full) or External(full)
        return
    source = project.resolve_module(full) if full else None
    if source is None and full == "" and level:
        source = project.by_dotted.get("")
    if source is None:
        link.target = External(f"{full}.{member}" if full else member)
    elif member == "*":
        link.target = source
    else:
        found = source.member(member) if source is not module else None
        link.target = found if found is not None else External(f"{full}.{member}")


def _import_binding_target(project: Project, link: ImportLink) -> Target:
    mod_name, member, alias, _level = link.spec
    if member is None and alias is None and "." in mod_name:
        head = mod_name.split(".")[0]
        return project.resolve_module(head) or External(head)
    return link.target


def _member_of(project: Project, target: object, attr: str) -> Target:
    if isinstance(target, ModuleEntity):
        found = target.member(attr)
        if found is target:
            return None  # a module variable, not an entity
        if found is None:
            return None
        return found  # type: ignore[return-value]
    if isinstance(target, External):
        mod = project.resolve_module(f"{target.name}.{attr}") if project.by_dotted else None
        return mod or External(f"{target.name}.{attr}")
    if isinstance(target, ClassEntity):
        for inner in target.classes:
            if inner.name == attr:
                return inner
    return None


def _binding_entity(binding: Binding | None) -> object:
    if binding is None:
        return None
    return binding.target


def resolve_expr(project: Project, expr: ast.expr, scope: Scope) -> Target:
    """Resolve a dotted name expression (``a``, ``a.b.C``) to an entity."""
    if isinstance(expr, ast.Name):
        binding = scope.lookup(expr.id)
        if binding is None:
            return None
        if binding.kind == "variable":
            return None
        return binding.target  # type: ignore[return-value]
    if isinstance(expr, ast.Attribute):
        base = resolve_expr(project, expr.value, scope)
        if base is None:
            return None
        return _member_of(project, base, expr.attr)
    if isinstance(expr, ast.Constant) and isinstance(expr.value, str):
        try:
            parsed = ast.parse(expr.value, mode="eval").body
        except SyntaxError:
            return None
        if isinstance(parsed, (ast.Name, ast.Attribute)):
            return resolve_expr(project, parsed, scope)
    return None


def _build_module_scope(project: Project, module: ModuleEntity) -> None:
    scope = Scope()
    for kind, name, payload in module.bind_order:
        if kind == "import":
            scope.bind(name, Binding("import", _import_binding_target(project, payload)))
        elif kind == "variable":
            scope.bind(name, Binding("variable"))
        else:
            scope.bind(name, Binding(kind, payload))
    module.scope = scope


def _base_scope(cls: ClassEntity) -> Scope:
    parent = cls.parent
    if isinstance(parent, ClassEntity) and parent.scope is not None:
        return parent.scope
    return cls.module.scope  # type: ignore[return-value]


def _build_class_scope(cls: ClassEntity) -> None:
    # class bodies are not visible from their methods; only nested class bases see them
    scope = Scope(cls.module.scope)
    for name in cls.fields:
        scope.bind(name, Binding("variable"))
    for method in cls.methods:
        scope.bind(method.name, Binding("subroutine", method))
    for inner in cls.classes:
        scope.bind(inner.name, Binding("class", inner))
    cls.scope = scope


def _guard_cycles(classes: list[ClassEntity]) -> None:
    for cls in classes:
        for i, base in enumerate(cls.resolved_bases):
            if not isinstance(base, ClassEntity):
                continue
            if base is cls or cls in base.ancestors():
                log.warning("inheritance cycle through %s rejected", cls.id)
                cls.resolved_bases[i] = External(cls.base_names[i])


class _ReferenceResolver(ast.NodeVisitor):
    """Tag every name reference inside one subroutine."""

    def __init__(self, project: Project, sub: SubroutineEntity) -> None:
        self.project = project
        self.sub = sub
        self.cls = sub.parent if isinstance(sub.parent, ClassEntity) else None
        self.refs: set[VariableRef] = set()
        self.classes: set[ClassEntity] = set()
        self.params = set(sub.parameters)
        self.globals: set[str] = set()
        local_names: set[str] = set()
        local_imports: list[tuple[str, ImportLink]] = []
        assignments: list[ast.Assign | ast.AnnAssign] = []
        for node in ast.walk(sub.node):
            if node is sub.node:
                continue
            if isinstance(node, (ast.Assign, ast.AnnAssign)):
                assignments.append(node)
            elif isinstance(node, ast.Global):
                self.globals.update(node.names)
            elif isinstance(node, ast.Name) and isinstance(node.ctx, (ast.Store, ast.Del)):
                local_names.add(node.id)
            elif isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)):
                local_names.add(node.name)
            elif isinstance(node, ast.arg):
                local_names.add(node.arg)
            elif isinstance(node, ast.ExceptHandler) and node.name:
                local_names.add(node.name)
            elif isinstance(node, (ast.Import, ast.ImportFrom)):
                for alias in node.names:
                    if alias.name == "*":
                        continue
                    if isinstance(node, ast.Import):
                        link = ImportLink(ast.unparse(node), spec=(alias.name, None, alias.asname, 0))
                        bound = alias.asname or alias.name.split(".")[0]
                    else:
                        link = ImportLink(
                            ast.unparse(node), spec=(node.module or "", alias.name, alias.asname, node.level)
                        )
                        bound = alias.asname or alias.name
                    _resolve_import(project, sub.module, link)
                    local_imports.append((bound, link))
        self.locals = (local_names - self.params) - self.globals
        self.scope = Scope(sub.module.scope)
        for bound, link in local_imports:
            self.scope.bind(bound, Binding("import", _import_binding_target(project, link)))
            self.locals.discard(bound)
        self.imported_locals = {bound for bound, _ in local_imports}
        self.types = self._infer_types(assignments)

    def _infer_types(self, assignments: list[ast.Assign | ast.AnnAssign]) -> dict[str, ClassEntity]:
        types: dict[str, ClassEntity] = {}
        conflicts: set[str] = set()

        def note(name: str, cls: object) -> None:
            if not isinstance(cls, ClassEntity):
                conflicts.add(name)
            elif types.get(name, cls) is not cls:
                conflicts.add(name)
            else:
                types[name] = cls

        args = self.sub.node.args
        for a in args.posonlyargs + args.args + args.kwonlyargs:
            if a.annotation is not None:
                target = resolve_expr(self.project, a.annotation, self.scope)
                if isinstance(target, ClassEntity):
                    types[a.arg] = target
        for node in assignments:
            if isinstance(node, ast.Assign):
                value = node.value
                for target in node.targets:
                    if isinstance(target, ast.Name) and target.id in self.locals:
                        if isinstance(value, ast.Call):
                            note(target.id, resolve_expr(self.project, value.func, self.scope))
                        else:
                            conflicts.add(target.id)
            elif isinstance(node.target, ast.Name):
                note(node.target.id, resolve_expr(self.project, node.annotation, self.scope))
        for name in conflicts:
            types.pop(name, None)
        return types

    def run(self) -> None:
        node = self.sub.node
        for stmt in node.body:
            self.visit(stmt)
        for dec in node.decorator_list:
            self.visit(dec)
        for default in node.args.defaults + [d for d in node.args.kw_defaults if d is not None]:
            self.visit(default)

    def _add(self, ref: VariableRef) -> None:
        self.refs.add(ref)

    def _note_class(self, target: object) -> None:
        if isinstance(target, ClassEntity) and target is not self.cls:
            self.classes.add(target)

    def _owner_of(self, base: str) -> object:
        if base in self.types:
            return self.types[base]
        if base in self.params or base in self.locals:
            return None
        binding = self.scope.lookup(base)
        return None if binding is None else binding.target

    def visit_Attribute(self, node: ast.Attribute) -> None:
        if isinstance(node.value, ast.Name):
            base = node.value.id
            attr = node.attr
            if self.cls is not None and base == self.sub.receiver:
                if attr in self.cls.all_field_names():
                    self._add(VariableRef(attr, "own_field", self.cls))
                else:
                    self._add(VariableRef(f"{base}.{attr}", "unresolved"))
            else:
                owner = self._owner_of(base)
                if isinstance(owner, ClassEntity):
                    self._note_class(owner)
                    self._field_access(owner, attr, f"{base}.{attr}")
                elif isinstance(owner, ModuleEntity):
                    member = owner.member(attr)
                    if member is owner:
                        self._add(VariableRef(f"{base}.{attr}", "imported"))
                    else:
                        self._note_class(member)
                        self._add(VariableRef(f"{base}.{attr}", "imported" if member is not None else "unresolved"))
                else:
                    self._add(VariableRef(f"{base}.{attr}", "unresolved"))
        else:
            target = resolve_expr(self.project, node, self.scope)
            self._note_class(target)
            if isinstance(node.value, ast.Attribute):
                owner = resolve_expr(self.project, node.value, self.scope)
                if isinstance(owner, ClassEntity):
                    self._note_class(owner)
                    self._field_access(owner, node.attr, ast.unparse(node))
                    self.generic_visit(node)
                    return
            self._add(VariableRef(ast.unparse(node), "unresolved"))
        self.generic_visit(node)

    def _field_access(self, owner: ClassEntity, attr: str, text: str) -> None:
        if attr in owner.data_names():
            if self.cls is not None and owner is self.cls:
                self._add(VariableRef(attr, "own_field", owner))
            else:
                self._add(VariableRef(attr, "foreign_field", owner))
        else:
            self._add(VariableRef(text, "unresolved"))

    def visit_Name(self, node: ast.Name) -> None:
        name = node.id
        if name in self.globals:
            binding = self.sub.module.scope.lookup(name) if self.sub.module.scope else None
            kind = binding.kind if binding is not None and binding.kind != "import" else "variable"
            self._add(VariableRef(name, "module_global", target_kind=kind))
        elif name in self.params:
            self._add(VariableRef(name, "parameter"))
        elif name in self.locals:
            self._add(VariableRef(name, "local"))
        else:
            binding = self.scope.lookup(name)
            if binding is None:
                self._add(VariableRef(name, "unresolved"))
            elif binding.kind == "import":
                self._note_class(binding.target)
                self._add(VariableRef(name, "imported"))
            else:
                self._note_class(binding.target)
                self._add(VariableRef(name, "module_global", target_kind=binding.kind))

    # nested scopes are folded into the enclosing subroutine
    def visit_Lambda(self, node: ast.Lambda) -> None:
        self.visit(node.body)


def _class_body_classes(project: Project, cls: ClassEntity) -> set[ClassEntity]:
    found: set[ClassEntity] = set()
    scope = cls.scope or cls.module.scope
    for stmt in cls.node.body:
        if isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)):
            continue
        for node in ast.walk(stmt):
            if isinstance(node, (ast.Name, ast.Attribute)):
                target = resolve_expr(project, node, scope)
                if isinstance(target, ClassEntity) and target is not cls:
                    found.add(target)
    return found


def link_references(project: Project) -> Project:
    """Second pass. Safe to run repeatedly; every derived link is rebuilt."""
    modules = project.sorted_modules()
    for module in modules:
        for link in module.imports:
            _resolve_import(project, module, link)
    for module in modules:
        _build_module_scope(project, module)

    classes = project.all_classes()
    for cls in classes:
        cls.scope = None
    for cls in classes:
        _build_class_scope(cls)
    for cls in classes:
        scope = _base_scope(cls)
        cls.resolved_bases = []
        for base_expr, text in zip(cls.node.bases, cls.base_names):
            target = resolve_expr(project, base_expr, scope)
            cls.resolved_bases.append(target if isinstance(target, ClassEntity) else External(text))
    _guard_cycles(classes)

    for sub in project.all_subroutines():
        resolver = _ReferenceResolver(project, sub)
        resolver.run()
        sub.referenced_variables = resolver.refs
        sub.referenced_classes = resolver.classes

    for cls in classes:
        refs: set[ClassEntity] = set(_class_body_classes(project, cls))
        uses_global = False
        for method in cls.methods:
            refs |= method.referenced_classes
            if method.has_global_statement or any(
                r.resolution == "module_global" and r.target_kind == "variable" for r in method.referenced_variables
            ):
                uses_global = True
        refs.discard(cls)
        cls.referenced_classes = refs
        cls.uses_global = uses_global
    return project


def build_project(trees: dict[str, SyntaxTree], project_root: str, name: str | None = None) -> Project:
    return link_references(build_skeleton(trees, project_root, name))


# ---------------------------------------------------------------------------
# Debug dump
# ---------------------------------------------------------------------------


def _target_id(target: object) -> str:
    if isinstance(target, External):
        return f"external:{target.name}"
    if target is None:
        return "unresolved"
    return target.id  # type: ignore[attr-defined]


def model_to_dict(project: Project) -> dict:
    def sub_dict(s: SubroutineEntity) -> dict:
        return {
            "id": s.id,
            "name": s.name,
            "parent": s.parent.id,
            "parameters": s.parameters,
            "decorators": s.decorators,
            "is_concrete": s.is_concrete,
            "span": list(s.span),
            "references": sorted(
                [r.name, r.resolution, r.owner.id if r.owner is not None else None] for r in s.referenced_variables
            ),
        }

    def class_dict(c: ClassEntity) -> dict:
        return {
            "id": c.id,
            "name": c.name,
            "parent": c.parent.id,
            "bases": c.base_names,
            "resolved_bases": [_target_id(b) for b in c.resolved_bases],
            "fields": [[f.name, f.visibility] for f in sorted(c.fields.values(), key=lambda f: f.name)],
            "referenced_classes": sorted(r.id for r in c.referenced_classes),
            "uses_global": c.uses_global,
            "methods": [sub_dict(m) for m in c.methods],
            "classes": [class_dict(k) for k in c.classes],
        }

    return {
        "project": project.name,
        "modules": [
            {
                "id": m.id,
                "path": m.path,
                "is_test": m.is_test,
                "variables": sorted(m.variables),
                "imports": [{"source": i.source, "target": _target_id(i.target)} for i in m.imports],
                "classes": [class_dict(c) for c in m.classes],
                "subroutines": [sub_dict(s) for s in m.subroutines],
            }
            for m in project.sorted_modules()
        ],
    }
