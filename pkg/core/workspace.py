"""
Workspace: JSON documents for groupoids, modules, G-sets, homomorphisms,
correspondences and inverse semigroups, parsed through pydantic schemas and
resolved by name into engine objects.
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple
import json
import logging

from pydantic import BaseModel, ConfigDict, Field, ValidationError as PydanticValidationError

from algebra.correspondence import EtaleCorrespondence, build_correspondence
from algebra.gmodule import GModule, build_module
from algebra.groupoid import FiniteGroupoid, GroupoidHomomorphism, GSet, build_groupoid, build_gset, build_homomorphism
from algebra.intalg import IntMatrix
from algebra.invsemi import DETECT, FiniteInverseSemigroup, build_inverse_semigroup

logger = logging.getLogger("ample.workspace")


class SchemaError(ValueError):
    """A document does not parse; carries the position when the JSON itself is malformed"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None, source: str = ""):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        if line is not None:
            where += f"{line}:{column}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")


# ==================== SCHEMAS ====================


class _Strict(BaseModel):
    model_config = ConfigDict(extra='forbid')


class ArrowSchema(_Strict):
    id: str
    src: str
    dst: str


class GroupoidSchema(_Strict):
    name: Optional[str] = None
    objects: List[str]
    arrows: List[ArrowSchema]
    mul: List[Tuple[str, str, str]]
    inv: Dict[str, str]


class ModuleSchema(_Strict):
    name: Optional[str] = None
    groupoid: str
    fibers: Dict[str, int]
    action: Dict[str, List[List[int]]] = Field(default_factory=dict)


class GSetSchema(_Strict):
    name: Optional[str] = None
    groupoid: str
    points: List[str]
    anchor: Dict[str, str]
    action: List[Tuple[str, str, str]]
    side: Literal["left", "right"] = "left"


class HomomorphismSchema(_Strict):
    name: Optional[str] = None
    source: str
    target: str
    objects: Dict[str, str]
    arrows: Dict[str, str]


class CorrespondenceSchema(_Strict):
    name: Optional[str] = None
    source: str
    target: str
    points: List[str]
    rho: Dict[str, str]
    sigma: Dict[str, str]
    left: List[Tuple[str, str, str]]
    right: List[Tuple[str, str, str]]


class SemigroupSchema(_Strict):
    name: Optional[str] = None
    elements: List[str]
    mul: List[List[str]]
    star: Optional[Dict[str, str]] = None
    zero: Optional[str] = DETECT


class BundleSchema(_Strict):
    groupoids: Dict[str, GroupoidSchema] = Field(default_factory=dict)
    semigroups: Dict[str, SemigroupSchema] = Field(default_factory=dict)
    modules: Dict[str, ModuleSchema] = Field(default_factory=dict)
    gsets: Dict[str, GSetSchema] = Field(default_factory=dict)
    homomorphisms: Dict[str, HomomorphismSchema] = Field(default_factory=dict)
    correspondences: Dict[str, CorrespondenceSchema] = Field(default_factory=dict)


KINDS = ['groupoids', 'semigroups', 'modules', 'gsets', 'homomorphisms', 'correspondences']
SCHEMAS = {
    'groupoids': GroupoidSchema,
    'semigroups': SemigroupSchema,
    'modules': ModuleSchema,
    'gsets': GSetSchema,
    'homomorphisms': HomomorphismSchema,
    'correspondences': CorrespondenceSchema,
}


def read_json(path: Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read file: {e.strerror}", source=str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, line=e.lineno, column=e.colno, source=str(path)) from None


def parse_schema(schema, document: Any, source: str = ""):
    try:
        return schema.model_validate(document)
    except PydanticValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first['loc'])
        raise SchemaError(f"{location or 'document'}: {first['msg']}", source=source) from None


# ==================== BUILDERS ====================


def groupoid_from_schema(doc: GroupoidSchema, name: str) -> FiniteGroupoid:
    return build_groupoid(
        doc.objects,
        {a.id: (a.src, a.dst) for a in doc.arrows},
        {(g, h): gh for g, h, gh in doc.mul},
        doc.inv,
        name=doc.name or name,
    )


def module_from_schema(doc: ModuleSchema, G: FiniteGroupoid, name: str) -> GModule:
    for x in doc.fibers:
        if x not in G.objects:
            raise SchemaError(f"fibers: unknown object {x!r}")
    action = {}
    for g, rows in doc.action.items():
        if g not in G.arrows:
            raise SchemaError(f"action: unknown arrow {g!r}")
        rank_r, rank_s = doc.fibers.get(G.r(g), 0), doc.fibers.get(G.s(g), 0)
        if len(rows) != rank_r or any(len(row) != rank_s for row in rows):
            raise SchemaError(f"action: matrix of {g!r} must be {rank_r}x{rank_s}")
        action[g] = IntMatrix(rank_r, rank_s, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})
    return build_module(G, doc.fibers, action, name=doc.name or name)


def semigroup_from_schema(doc: SemigroupSchema, name: str) -> FiniteInverseSemigroup:
    n = len(doc.elements)
    if len(doc.mul) != n or any(len(row) != n for row in doc.mul):
        raise SchemaError(f"mul: table must be {n}x{n} in the order of 'elements'")
    table = {(a, b): doc.mul[i][j] for i, a in enumerate(doc.elements) for j, b in enumerate(doc.elements)}
    return build_inverse_semigroup(doc.elements, table, star=doc.star, zero=doc.zero, name=doc.name or name)


class Workspace:
    """Named engine objects; references between documents resolve by name"""

    def __init__(self):
        self.groupoids: Dict[str, FiniteGroupoid] = {}
        self.semigroups: Dict[str, FiniteInverseSemigroup] = {}
        self.modules: Dict[str, GModule] = {}
        self.gsets: Dict[str, GSet] = {}
        self.homomorphisms: Dict[str, GroupoidHomomorphism] = {}
        self.correspondences: Dict[str, EtaleCorrespondence] = {}

    def _groupoid(self, name: str) -> FiniteGroupoid:
        if name not in self.groupoids:
            raise SchemaError(f"unresolved groupoid reference {name!r}")
        return self.groupoids[name]

    def register(self, kind: str, name: str, value: Any) -> None:
        registry = getattr(self, kind)
        if name in registry:
            raise SchemaError(f"duplicate {kind[:-1]} name {name!r}")
        registry[name] = value

    def add(self, kind: str, name: str, doc: BaseModel) -> Any:
        if kind == 'groupoids':
            value = groupoid_from_schema(doc, name)
        elif kind == 'semigroups':
            value = semigroup_from_schema(doc, name)
        elif kind == 'modules':
            value = module_from_schema(doc, self._groupoid(doc.groupoid), name)
        elif kind == 'gsets':
            value = build_gset(
                self._groupoid(doc.groupoid), doc.points, doc.anchor,
                {(g, p): q for g, p, q in doc.action}, side=doc.side,
            )
        elif kind == 'homomorphisms':
            value = build_homomorphism(self._groupoid(doc.source), self._groupoid(doc.target), doc.objects, doc.arrows)
        elif kind == 'correspondences':
            value = build_correspondence(
                self._groupoid(doc.source),
                self._groupoid(doc.target),
                doc.points,
                doc.rho,
                doc.sigma,
                {(g, w): v for g, w, v in doc.left},
                {(w, h): v for w, h, v in doc.right},
                name=doc.name or name,
            )
        else:
            raise SchemaError(f"unknown document kind {kind!r}")
        self.register(kind, name, value)
        return value

    def load_bundle(self, document: Any, source: str = "") -> "Workspace":
        bundle = parse_schema(BundleSchema, document, source)
        for kind in KINDS:
            for name, doc in getattr(bundle, kind).items():
                self.add(kind, name, doc)
        logger.debug("Loaded bundle %s", source or "<memory>")
        return self

    def load_file(self, path: Path, kind: str) -> Any:
        """Load a single-object document; it is registered under its 'name' or the file stem"""
        path = Path(path)
        doc = parse_schema(SCHEMAS[kind], read_json(path), str(path))
        try:
            return self.add(kind, doc.name or path.stem, doc)
        except SchemaError as e:
            raise SchemaError(str(e), source=str(path)) from None

    def to_bundle(self) -> Dict[str, Any]:
        """Inverse of load_bundle; groupoids are referenced by their registry names"""
        names = {id(G): name for name, G in self.groupoids.items()}

        def ref(G: FiniteGroupoid) -> str:
            return names[id(G)]

        return {
            'groupoids': {n: G.to_dict() for n, G in self.groupoids.items()},
            'semigroups': {n: S.to_dict() for n, S in self.semigroups.items()},
            'modules': {n: M.to_dict(ref(M.groupoid)) for n, M in self.modules.items()},
            'gsets': {n: X.to_dict(ref(X.groupoid)) for n, X in self.gsets.items()},
            'homomorphisms': {n: f.to_dict(ref(f.source), ref(f.target)) for n, f in self.homomorphisms.items()},
            'correspondences': {
                n: W.to_dict(ref(W.source), ref(W.target)) for n, W in self.correspondences.items()
            },
        }


# ==================== COUNTEREXAMPLES ====================


def dump_counterexample(
    directory: Path,
    suite: str,
    check: str,
    workspace: Workspace,
    params: Dict[str, Any],
    witness: Dict[str, Any],
) -> Path:
    """Write a self-contained, re-loadable failure record and return its path"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    record = {
        'suite': suite,
        'check': check,
        'params': params,
        'witness': witness,
        'instance': workspace.to_bundle(),
    }
    existing = len(list(directory.glob(f"{suite}-*.json")))
    path = directory / f"{suite}-{existing:04d}.json"
    path.write_text(json.dumps(record, indent=2, sort_keys=True))
    logger.info("Counterexample written to %s", path)
    return path


def load_counterexample(path: Path) -> Tuple[Dict[str, Any], Workspace]:
    record = read_json(path)
    for key in ('suite', 'check', 'params', 'instance'):
        if not isinstance(record, dict) or key not in record:
            raise SchemaError(f"counterexample missing key {key!r}", source=str(path))
    return record, Workspace().load_bundle(record['instance'], str(path))
