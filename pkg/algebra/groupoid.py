"""
Finite discrete groupoids
Nerves, face maps of the bar resolution and of the coinvariant (Matui) complex,
the bar contracting homotopy, and constructors for the standard families.

Composition convention: (g, h) is composable exactly when s(g) = r(h), and the
product g·h goes from s(h) to r(g).  Tuples (g_1, ..., g_n) in the nerve are
read left to right with s(g_i) = r(g_{i+1}).  Reversing this convention would
silently transpose every boundary matrix.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple
import logging

from algebra.exceptions import (
    DegreeError,
    NotComposableError,
    ValidationError,
    ValidationReport,
)
from algebra.intalg import IntMatrix

logger = logging.getLogger("ample.groupoid")

Arrow = str
Obj = str
ComposableTuple = Tuple[str, ...]


class FaceVariant(Enum):
    """Which family of face maps a matrix is built from"""
    RESOLUTION = "resolution"
    MATUI = "matui"


class FiniteGroupoid:
    """
    A finite discrete groupoid given by exhaustive tables.

    arrows maps each arrow id to its (source, range) pair; mul maps composable
    pairs (g, h) with s(g) = r(h) to g·h; inv maps each arrow to its inverse.
    Units are recognised as the idempotent arrows.  Instances are never
    mutated after construction; use validate() or the builders for checking.
    """

    def __init__(
        self,
        objects: Iterable[Obj],
        arrows: Mapping[Arrow, Tuple[Obj, Obj]],
        mul: Mapping[Tuple[Arrow, Arrow], Arrow],
        inv: Mapping[Arrow, Arrow],
        name: str = "",
    ):
        self.name = name
        self.objects: Tuple[Obj, ...] = tuple(sorted(set(objects)))
        self.arrows: Tuple[Arrow, ...] = tuple(sorted(arrows))
        self._src: Dict[Arrow, Obj] = {g: ends[0] for g, ends in arrows.items()}
        self._dst: Dict[Arrow, Obj] = {g: ends[1] for g, ends in arrows.items()}
        self._mul: Dict[Tuple[Arrow, Arrow], Arrow] = dict(mul)
        self._inv: Dict[Arrow, Arrow] = dict(inv)

        self._units: Dict[Obj, Arrow] = {}
        for g in self.arrows:
            if self._src[g] == self._dst[g] and self._mul.get((g, g)) == g:
                self._units.setdefault(self._src[g], g)

        self._from: Dict[Obj, List[Arrow]] = {x: [] for x in self.objects}
        self._to: Dict[Obj, List[Arrow]] = {x: [] for x in self.objects}
        for g in self.arrows:
            if self._src[g] in self._from:
                self._from[self._src[g]].append(g)
            if self._dst[g] in self._to:
                self._to[self._dst[g]].append(g)
        self._nerve_cache: Dict[int, "OrderedBasis"] = {}

    # ==================== STRUCTURE ====================

    def s(self, g: Arrow) -> Obj:
        return self._src[g]

    def r(self, g: Arrow) -> Obj:
        return self._dst[g]

    def unit(self, x: Obj) -> Arrow:
        return self._units[x]

    def is_unit(self, g: Arrow) -> bool:
        return self._units.get(self._src[g]) == g

    def inverse(self, g: Arrow) -> Arrow:
        return self._inv[g]

    def composable(self, g: Arrow, h: Arrow) -> bool:
        return self._src[g] == self._dst[h]

    def compose(self, g: Arrow, h: Arrow) -> Arrow:
        """g·h, defined when s(g) = r(h)"""
        if self._src[g] != self._dst[h]:
            raise NotComposableError(f"not composable: s({g}) = {self._src[g]} but r({h}) = {self._dst[h]}")
        return self._mul[(g, h)]

    def arrows_from(self, x: Obj) -> Tuple[Arrow, ...]:
        """Arrows with source x, sorted"""
        return tuple(self._from.get(x, ()))

    def arrows_to(self, x: Obj) -> Tuple[Arrow, ...]:
        """Arrows with range x, sorted"""
        return tuple(self._to.get(x, ()))

    def hom(self, x: Obj, y: Obj) -> Tuple[Arrow, ...]:
        """Arrows from x to y"""
        return tuple(g for g in self._from.get(x, ()) if self._dst[g] == y)

    def isotropy(self, x: Obj) -> Tuple[Arrow, ...]:
        return self.hom(x, x)

    def orbits(self) -> Tuple[Tuple[Obj, ...], ...]:
        """Connected components of the object set, each sorted, ordered by least element"""
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.arrows:
            a, b = find(self._src[g]), find(self._dst[g])
            if a != b:
                parent[max(a, b)] = min(a, b)
        classes: Dict[Obj, List[Obj]] = {}
        for x in self.objects:
            classes.setdefault(find(x), []).append(x)
        return tuple(sorted(tuple(sorted(c)) for c in classes.values()))

    @property
    def size(self) -> int:
        return len(self.arrows)

    @property
    def is_group(self) -> bool:
        return len(self.objects) == 1

    def __len__(self) -> int:
        return len(self.arrows)

    # ==================== SERIALISATION ====================

    def to_dict(self) -> Dict[str, object]:
        return {
            'objects': list(self.objects),
            'arrows': [{'id': g, 'src': self._src[g], 'dst': self._dst[g]} for g in self.arrows],
            'mul': [[g, h, gh] for (g, h), gh in sorted(self._mul.items())],
            'inv': {g: self._inv[g] for g in self.arrows if g in self._inv},
        }

    def signature(self) -> Tuple:
        return (
            self.objects,
            tuple((g, self._src[g], self._dst[g]) for g in self.arrows),
            tuple(sorted(self._mul.items())),
            tuple(sorted(self._inv.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return self is other or self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash((self.objects, self.arrows))

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"FiniteGroupoid({label}{len(self.objects)} objects, {len(self.arrows)} arrows)"


# ==================== VALIDATION ====================


def validate(G: FiniteGroupoid) -> ValidationReport:
    """Exhaustive check of the groupoid axioms; reports the first violation with witnesses"""
    objects = set(G.objects)
    for g in G.arrows:
        if G._src[g] not in objects or G._dst[g] not in objects:
            return ValidationReport.violation(
                "unknown_object", f"arrow {g} has an endpoint outside the objects", arrow=g
            )

    arrows = set(G.arrows)
    for (g, h), gh in G._mul.items():
        if g not in arrows or h not in arrows or gh not in arrows:
            return ValidationReport.violation("unknown_arrow", "composition table uses an unknown arrow", entry=[g, h, gh])
        if G._src[g] != G._dst[h]:
            return ValidationReport.violation("not_composable", "not composable", entry=[g, h, gh])
        if G._src[gh] != G._src[h] or G._dst[gh] != G._dst[g]:
            return ValidationReport.violation(
                "endpoint_mismatch", "product has the wrong source or range", entry=[g, h, gh]
            )

    for g in G.arrows:
        for h in G._to[G._src[g]]:
            if (g, h) not in G._mul:
                return ValidationReport.violation("missing_product", "composition table is not exhaustive", pair=[g, h])

    for x in G.objects:
        candidates = [g for g in G.hom(x, x) if G._mul.get((g, g)) == g]
        if len(candidates) != 1:
            return ValidationReport.violation("unit", f"object {x} has {len(candidates)} idempotent arrows", object=x)
    for g in G.arrows:
        if G._mul[(G.unit(G._dst[g]), g)] != g or G._mul[(g, G.unit(G._src[g]))] != g:
            return ValidationReport.violation("unit_law", "unit law fails", arrow=g)

    for g in G.arrows:
        for h in G._to[G._src[g]]:
            gh = G._mul[(g, h)]
            for k in G._to[G._src[h]]:
                if G._mul[(gh, k)] != G._mul[(g, G._mul[(h, k)])]:
                    return ValidationReport.violation("associativity", "associativity fails", triple=[g, h, k])

    for g in G.arrows:
        gi = G._inv.get(g)
        if gi not in arrows:
            return ValidationReport.violation("inverse", "inverse missing", arrow=g)
        if G._src[gi] != G._dst[g] or G._dst[gi] != G._src[g]:
            return ValidationReport.violation("inverse", "inverse has the wrong endpoints", arrow=g, inverse=gi)
        if G._mul[(g, gi)] != G.unit(G._dst[g]) or G._mul[(gi, g)] != G.unit(G._src[g]):
            return ValidationReport.violation("inverse", "g·g⁻¹ is not a unit", arrow=g, inverse=gi)
    return ValidationReport.ok()


def _validated(G: FiniteGroupoid) -> FiniteGroupoid:
    report = validate(G)
    if not report:
        raise ValidationError(report, subject=G.name or "groupoid")
    return G


def build_groupoid(
    objects: Iterable[Obj],
    arrows: Mapping[Arrow, Tuple[Obj, Obj]],
    mul: Mapping[Tuple[Arrow, Arrow], Arrow],
    inv: Mapping[Arrow, Arrow],
    name: str = "",
) -> FiniteGroupoid:
    """Construct and validate; raises ValidationError on the first violated axiom"""
    return _validated(FiniteGroupoid(objects, arrows, mul, inv, name=name))


# ==================== NERVE ====================


@dataclass(frozen=True)
class OrderedBasis:
    """Canonical (lexicographic) enumeration of composable tuples of one degree"""
    degree: int
    elements: Tuple[ComposableTuple, ...]
    _index: Dict[ComposableTuple, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({t: k for k, t in enumerate(self.elements)})

    def index_of(self, t: ComposableTuple) -> int:
        return self._index[t]

    def __contains__(self, t: object) -> bool:
        return t in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[ComposableTuple]:
        return iter(self.elements)

    def __getitem__(self, k: int) -> ComposableTuple:
        return self.elements[k]


def nerve(G: FiniteGroupoid, n: int) -> OrderedBasis:
    """
    All composable n-tuples in lexicographic order of arrow ids.
    Degree 0 consists of the 1-tuples (x,) of objects.
    """
    if n < 0:
        raise DegreeError(f"Nerve degree must be nonnegative, got {n}")
    cached = G._nerve_cache.get(n)
    if cached is not None:
        return cached
    if n == 0:
        elements = tuple((x,) for x in G.objects)
    elif n == 1:
        elements = tuple((g,) for g in G.arrows)
    else:
        elements = tuple(
            t + (h,)
            for t in nerve(G, n - 1)
            for h in G._to[G._src[t[-1]]]
        )
    basis = OrderedBasis(n, elements)
    G._nerve_cache[n] = basis
    logger.debug("nerve degree %d: %d tuples", n, len(basis))
    return basis


# ==================== FACE MAPS ====================


def resolution_face(G: FiniteGroupoid, t: ComposableTuple, i: int) -> ComposableTuple:
    """
    Face ∂_i on G^{n+1} (n+1 arrows g_0..g_n): compose g_i g_{i+1} for i < n,
    drop g_n for i = n.  On G^1 the single face is the range map r_*.
    """
    n = len(t) - 1
    if n == 0:
        return (G.r(t[0]),)
    if i < n:
        return t[:i] + (G.compose(t[i], t[i + 1]),) + t[i + 2:]
    return t[:-1]


def matui_face(G: FiniteGroupoid, t: ComposableTuple, i: int) -> ComposableTuple:
    """
    Face ε_i on G^n (arrows g_1..g_n): i = 0 drops g_1, 0 < i < n composes
    g_i g_{i+1}, i = n drops g_n.  At n = 1: ε_0(g) = s(g) and ε_1(g) = r(g).
    """
    n = len(t)
    if n == 1:
        return (G.s(t[0]),) if i == 0 else (G.r(t[0]),)
    if i == 0:
        return t[1:]
    if i < n:
        return t[:i - 1] + (G.compose(t[i - 1], t[i]),) + t[i + 1:]
    return t[:-1]


def _face_data(G: FiniteGroupoid, n: int, i: int, variant: FaceVariant):
    if variant is FaceVariant.RESOLUTION:
        if n < 0 or not 0 <= i <= n:
            raise DegreeError(f"resolution face index {i} out of range for degree {n}")
        return nerve(G, n + 1), nerve(G, n), resolution_face
    if n < 1 or not 0 <= i <= n:
        raise DegreeError(f"matui face index {i} out of range for degree {n}")
    return nerve(G, n), nerve(G, n - 1), matui_face


def face_matrix(G: FiniteGroupoid, n: int, i: int, variant: FaceVariant = FaceVariant.MATUI) -> IntMatrix:
    """
    The 0/1 matrix of the pushforward of a face map in canonical bases.

    resolution: ∂^n_i : Z[G^{n+1}] -> Z[G^n];  matui: ε^n_i : Z[G^n] -> Z[G^{n-1}].
    """
    variant = FaceVariant(variant)
    source, target, face = _face_data(G, n, i, variant)
    entries = {(target.index_of(face(G, t, i)), col): 1 for col, t in enumerate(source)}
    return IntMatrix(len(target), len(source), entries)


def boundary_matrix(G: FiniteGroupoid, n: int, variant: FaceVariant = FaceVariant.MATUI) -> IntMatrix:
    """
    Alternating sum of face matrices.  The resolution variant starts at n = 0
    with the augmentation Z[G^1] -> Z[G^0] given by r_*.
    """
    variant = FaceVariant(variant)
    source, target, face = _face_data(G, n, 0, variant)
    entries: Dict[Tuple[int, int], int] = {}
    for col, t in enumerate(source):
        for i in range(n + 1):
            key = (target.index_of(face(G, t, i)), col)
            entries[key] = entries.get(key, 0) + (-1) ** i
    return IntMatrix(len(target), len(source), entries)


def homotopy_matrix(G: FiniteGroupoid, n: int) -> IntMatrix:
    """h_n : Z[G^n] -> Z[G^{n+1}], h_0(x) = unit(x), h_n(g_0, ...) = (unit(r(g_0)), g_0, ...)"""
    if n < 0:
        raise DegreeError(f"Homotopy degree must be nonnegative, got {n}")
    source, target = nerve(G, n), nerve(G, n + 1)
    entries = {}
    for col, t in enumerate(source):
        image = (G.unit(t[0]),) if n == 0 else (G.unit(G.r(t[0])),) + t
        entries[(target.index_of(image), col)] = 1
    return IntMatrix(len(target), len(source), entries)


def homotopy_check(G: FiniteGroupoid, n: int) -> ValidationReport:
    """∂_{n+1}h_{n+1} + h_n∂_n = id on Z[G^{n+1}]; at n = -1 checks ∂_0h_0 = id on Z[G^0]"""
    if n == -1:
        product_matrix = boundary_matrix(G, 0, FaceVariant.RESOLUTION) @ homotopy_matrix(G, 0)
        size = len(nerve(G, 0))
    else:
        product_matrix = (
            boundary_matrix(G, n + 1, FaceVariant.RESOLUTION) @ homotopy_matrix(G, n + 1)
            + homotopy_matrix(G, n) @ boundary_matrix(G, n, FaceVariant.RESOLUTION)
        )
        size = len(nerve(G, n + 1))
    if product_matrix == IntMatrix.identity(size):
        return ValidationReport.ok()
    difference = product_matrix - IntMatrix.identity(size)
    (row, col), value = sorted(difference.entries.items())[0]
    basis = nerve(G, n + 1)
    return ValidationReport.violation(
        "homotopy", f"∂h + h∂ ≠ id in degree {n + 1}", degree=n + 1, column=basis[col], row=basis[row], excess=value
    )


# ==================== G-SETS ====================


@dataclass(frozen=True, eq=False)
class GSet:
    """
    A finite G-set with anchor map.

    Left sets: g·p is defined when s(g) = anchor(p), and anchor(g·p) = r(g).
    Right sets: p·g is defined when anchor(p) = r(g), and anchor(p·g) = s(g).
    action maps (arrow, point) -> point for both sides.
    """
    groupoid: FiniteGroupoid
    points: Tuple[str, ...]
    anchor: Mapping[str, Obj]
    action: Mapping[Tuple[Arrow, str], str]
    side: str = "left"

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(sorted(self.points)))

    def act(self, g: Arrow, p: str) -> str:
        try:
            return self.action[(g, p)]
        except KeyError:
            raise NotComposableError(f"{g} does not act on {p}") from None

    def orbits(self) -> Tuple[Tuple[str, ...], ...]:
        classes: Dict[str, set] = {}
        seen = set()
        for p in self.points:
            if p in seen:
                continue
            orbit = {q for (g, q0), q in self.action.items() if q0 == p}
            orbit.add(p)
            seen |= orbit
            classes[p] = orbit
        return tuple(sorted(tuple(sorted(o)) for o in classes.values()))

    def validate(self) -> ValidationReport:
        G = self.groupoid
        points = set(self.points)
        for p in self.points:
            if self.anchor.get(p) not in G.objects:
                return ValidationReport.violation("anchor", "point anchored outside the objects", point=p)
        for p in self.points:
            x = self.anchor[p]
            acting = G.arrows_from(x) if self.side == "left" else G.arrows_to(x)
            for g in acting:
                q = self.action.get((g, p))
                if q not in points:
                    return ValidationReport.violation("action", "action not covering anchor", arrow=g, point=p)
                expected = G.r(g) if self.side == "left" else G.s(g)
                if self.anchor[q] != expected:
                    return ValidationReport.violation("anchor", "action does not respect the anchor", arrow=g, point=p)
            unit = G.unit(x)
            if self.action[(unit, p)] != p:
                return ValidationReport.violation("unit", "unit does not act trivially", point=p)
        for (g, p) in self.action:
            if p not in points or g not in G._src:
                return ValidationReport.violation("action", "action entry outside the set", arrow=g, point=p)
        for p in self.points:
            x = self.anchor[p]
            if self.side == "left":
                for h in G.arrows_from(x):
                    for g in G.arrows_from(G.r(h)):
                        if self.action[(g, self.action[(h, p)])] != self.action[(G.compose(g, h), p)]:
                            return ValidationReport.violation("associativity", "action is not associative", pair=[g, h], point=p)
            else:
                for g in G.arrows_to(x):
                    for h in G.arrows_to(G.s(g)):
                        if self.action[(h, self.action[(g, p)])] != self.action[(G.compose(g, h), p)]:
                            return ValidationReport.violation("associativity", "action is not associative", pair=[g, h], point=p)
        return ValidationReport.ok()

    def to_dict(self, groupoid_name: str = "") -> Dict[str, object]:
        return {
            'groupoid': groupoid_name or self.groupoid.name,
            'points': list(self.points),
            'anchor': dict(sorted(self.anchor.items())),
            'action': [[g, p, q] for (g, p), q in sorted(self.action.items())],
            'side': self.side,
        }


def build_gset(G: FiniteGroupoid, points, anchor, action, side: str = "left") -> GSet:
    X = GSet(G, tuple(points), dict(anchor), dict(action), side)
    report = X.validate()
    if not report:
        raise ValidationError(report, subject="G-set")
    return X


def unit_space_gset(G: FiniteGroupoid) -> GSet:
    """G^0 with the canonical left action g·s(g) = r(g)"""
    return GSet(G, G.objects, {x: x for x in G.objects}, {(g, G.s(g)): G.r(g) for g in G.arrows})


def left_regular_gset(G: FiniteGroupoid) -> GSet:
    """Arrows of G under left multiplication, anchored by r"""
    action = {(g, h): G.compose(g, h) for h in G.arrows for g in G.arrows_from(G.r(h))}
    return GSet(G, G.arrows, {h: G.r(h) for h in G.arrows}, action)


def right_regular_gset(G: FiniteGroupoid) -> GSet:
    """Arrows of G under right multiplication, anchored by s"""
    action = {(g, h): G.compose(h, g) for h in G.arrows for g in G.arrows_to(G.s(h))}
    return GSet(G, G.arrows, {h: G.s(h) for h in G.arrows}, action, side="right")


# ==================== HOMOMORPHISMS ====================


@dataclass(frozen=True, eq=False)
class GroupoidHomomorphism:
    """A functor between finite groupoids given on objects and arrows"""
    source: FiniteGroupoid
    target: FiniteGroupoid
    objects: Mapping[Obj, Obj]
    arrows: Mapping[Arrow, Arrow]

    def __call__(self, g: Arrow) -> Arrow:
        return self.arrows[g]

    def on_object(self, x: Obj) -> Obj:
        return self.objects[x]

    def on_tuple(self, t: ComposableTuple, degree: int) -> ComposableTuple:
        """Pushforward on nerve tuples (degree-0 tuples hold objects)"""
        if degree == 0:
            return (self.objects[t[0]],)
        return tuple(self.arrows[g] for g in t)

    def nerve_matrix(self, degree: int) -> IntMatrix:
        """Matrix of the pushforward Z[G^n] -> Z[H^n] in canonical bases"""
        source, target = nerve(self.source, degree), nerve(self.target, degree)
        entries = {
            (target.index_of(self.on_tuple(t, degree)), col): 1 for col, t in enumerate(source)
        }
        return IntMatrix(len(target), len(source), entries)

    def validate(self) -> ValidationReport:
        G, H = self.source, self.target
        for x in G.objects:
            if self.objects.get(x) not in H.objects:
                return ValidationReport.violation("object_map", "object map is not total", object=x)
        for g in G.arrows:
            image = self.arrows.get(g)
            if image not in H._src:
                return ValidationReport.violation("arrow_map", "arrow map is not total", arrow=g)
            if H.s(image) != self.objects[G.s(g)] or H.r(image) != self.objects[G.r(g)]:
                return ValidationReport.violation("not_a_functor", "not a functor: endpoints not preserved", arrow=g)
        for x in G.objects:
            if self.arrows[G.unit(x)] != H.unit(self.objects[x]):
                return ValidationReport.violation("not_a_functor", "not a functor: unit not preserved", object=x)
        for (g, h), gh in G._mul.items():
            if H.compose(self.arrows[g], self.arrows[h]) != self.arrows[gh]:
                return ValidationReport.violation("not_a_functor", "not a functor: product not preserved", pair=[g, h])
        return ValidationReport.ok()

    def compose(self, other: "GroupoidHomomorphism") -> "GroupoidHomomorphism":
        """self ∘ other"""
        return GroupoidHomomorphism(
            other.source,
            self.target,
            {x: self.objects[y] for x, y in other.objects.items()},
            {g: self.arrows[h] for g, h in other.arrows.items()},
        )

    def to_dict(self, source_name: str = "", target_name: str = "") -> Dict[str, object]:
        return {
            'source': source_name or self.source.name,
            'target': target_name or self.target.name,
            'objects': dict(sorted(self.objects.items())),
            'arrows': dict(sorted(self.arrows.items())),
        }


def build_homomorphism(G: FiniteGroupoid, H: FiniteGroupoid, objects, arrows) -> GroupoidHomomorphism:
    phi = GroupoidHomomorphism(G, H, dict(objects), dict(arrows))
    report = phi.validate()
    if not report:
        raise ValidationError(report, subject="homomorphism")
    return phi


def identity_homomorphism(G: FiniteGroupoid) -> GroupoidHomomorphism:
    return GroupoidHomomorphism(G, G, {x: x for x in G.objects}, {g: g for g in G.arrows})


def inclusion(H: FiniteGroupoid, G: FiniteGroupoid) -> GroupoidHomomorphism:
    return GroupoidHomomorphism(H, G, {x: x for x in H.objects}, {g: g for g in H.arrows})


def find_isomorphism(G: FiniteGroupoid, H: FiniteGroupoid) -> Optional[GroupoidHomomorphism]:
    """Exhaustive backtracking search; only meant for small groupoids"""
    if len(G.objects) != len(H.objects) or len(G.arrows) != len(H.arrows):
        return None
    order = list(G.arrows)
    arrows: Dict[Arrow, Arrow] = {}
    objects: Dict[Obj, Obj] = {}
    used = set()

    def respects_products() -> bool:
        for a in arrows:
            for b in G.arrows_to(G.s(a)):
                if b in arrows:
                    ab = G.compose(a, b)
                    if ab in arrows and H.compose(arrows[a], arrows[b]) != arrows[ab]:
                        return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        g = order[k]
        for candidate in H.arrows:
            if candidate in used or H.is_unit(candidate) != G.is_unit(g):
                continue
            trial = dict(objects)
            fits = True
            for z, w in ((G.s(g), H.s(candidate)), (G.r(g), H.r(candidate))):
                if z in trial:
                    fits = fits and trial[z] == w
                elif w in trial.values():
                    fits = False
                else:
                    trial[z] = w
            if not fits:
                continue
            arrows[g] = candidate
            if respects_products():
                saved = dict(objects)
                objects.update(trial)
                used.add(candidate)
                if extend(k + 1):
                    return True
                objects.clear()
                objects.update(saved)
                used.discard(candidate)
            del arrows[g]
        return False

    if not extend(0):
        return None
    phi = GroupoidHomomorphism(G, H, objects, arrows)
    return phi if phi.validate() else None


# ==================== BUILDERS ====================


def from_group(
    elements: Sequence[str],
    table: Mapping[Tuple[str, str], str],
    name: str = "",
    obj: Obj = "*",
) -> FiniteGroupoid:
    """One-object groupoid from a group multiplication table; inverses are derived"""
    identity = next(
        (e for e in elements if all(table.get((e, a)) == a for a in elements)),
        None,
    )
    if identity is None:
        raise ValidationError(ValidationReport.violation("unit", "group table has no identity"), subject=name or "group")
    inv = {}
    for a in elements:
        b = next((b for b in elements if table.get((a, b)) == identity), None)
        if b is None:
            raise ValidationError(ValidationReport.violation("inverse", "inverse missing", arrow=a), subject=name or "group")
        inv[a] = b
    return build_groupoid([obj], {a: (obj, obj) for a in elements}, dict(table), inv, name=name)


def cyclic_group(m: int) -> FiniteGroupoid:
    """Z/m as a one-object groupoid with arrows "0" .. "m-1" """
    if m < 1:
        raise ValueError(f"Cyclic group order must be positive, got {m}")
    elements = [str(k) for k in range(m)]
    table = {(str(a), str(b)): str((a + b) % m) for a in range(m) for b in range(m)}
    return from_group(elements, table, name=f"Z/{m}")


def trivial_group() -> FiniteGroupoid:
    return cyclic_group(1)


def empty_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid([], {}, {}, {}, name="empty")


def pair_groupoid(k: int) -> FiniteGroupoid:
    """Objects "0".."k-1", one arrow "i.j" from j to i for every pair"""
    if k < 0:
        raise ValueError(f"Pair groupoid needs k >= 0, got {k}")
    points = [str(i) for i in range(k)]
    arrows = {f"{i}.{j}": (j, i) for i in points for j in points}
    mul = {(f"{i}.{j}", f"{j}.{l}"): f"{i}.{l}" for i in points for j in points for l in points}
    inv = {f"{i}.{j}": f"{j}.{i}" for i in points for j in points}
    return build_groupoid(points, arrows, mul, inv, name=f"P{k}")


def action_groupoid(X: GSet) -> FiniteGroupoid:
    """
    G ⋉ X for a left G-set: objects are the points, arrows "g@x" go from x to g·x,
    and (g, h·x)(h, x) = (gh, x).
    """
    G = X.groupoid
    arrows, mul, inv = {}, {}, {}
    for x in X.points:
        for g in G.arrows_from(X.anchor[x]):
            arrows[f"{g}@{x}"] = (x, X.act(g, x))
    for x in X.points:
        for h in G.arrows_from(X.anchor[x]):
            hx = X.act(h, x)
            for g in G.arrows_from(G.r(h)):
                mul[(f"{g}@{hx}", f"{h}@{x}")] = f"{G.compose(g, h)}@{x}"
            inv[f"{h}@{x}"] = f"{G.inverse(h)}@{hx}"
    label = f"{G.name}⋉X" if G.name else ""
    return build_groupoid(X.points, arrows, mul, inv, name=label)


def action_projection(X: GSet, GX: Optional[FiniteGroupoid] = None) -> GroupoidHomomorphism:
    """The forgetful functor G ⋉ X -> G, (g, x) -> g"""
    GX = GX or action_groupoid(X)
    return GroupoidHomomorphism(
        GX,
        X.groupoid,
        {x: X.anchor[x] for x in X.points},
        {f"{g}@{x}": g for x in X.points for g in X.groupoid.arrows_from(X.anchor[x])},
    )


def disjoint_union(groupoids: Sequence[FiniteGroupoid], name: str = "") -> FiniteGroupoid:
    """Ids are prefixed with the component index ("0:", "1:", ...)"""
    objects, arrows, mul, inv = [], {}, {}, {}
    for k, G in enumerate(groupoids):
        tag = f"{k}:"
        objects.extend(tag + x for x in G.objects)
        for g in G.arrows:
            arrows[tag + g] = (tag + G.s(g), tag + G.r(g))
            inv[tag + g] = tag + G.inverse(g)
        for (g, h), gh in G._mul.items():
            mul[(tag + g, tag + h)] = tag + gh
    return build_groupoid(objects, arrows, mul, inv, name=name or "+".join(G.name for G in groupoids))


def subgroupoid(G: FiniteGroupoid, objects: Iterable[Obj], arrows: Iterable[Arrow], name: str = "") -> FiniteGroupoid:
    """
    The subgroupoid on the given objects and arrows.  Units of the objects are
    added; the arrow set must be closed under composition and inverse.
    """
    objs = set(objects)
    arrs = set(arrows) | {G.unit(x) for x in objs}
    for g in sorted(arrs):
        if g not in G._src:
            raise ValidationError(ValidationReport.violation("unknown_arrow", "unknown arrow", arrow=g), subject="subgroupoid")
        if G.s(g) not in objs or G.r(g) not in objs:
            raise ValidationError(
                ValidationReport.violation("not_closed", "arrow leaves the object set", arrow=g), subject="subgroupoid"
            )
        if G.inverse(g) not in arrs:
            raise ValidationError(
                ValidationReport.violation("not_closed", "not closed under inverse", arrow=g), subject="subgroupoid"
            )
    mul = {}
    for g in sorted(arrs):
        for h in G.arrows_to(G.s(g)):
            if h in arrs:
                gh = G.compose(g, h)
                if gh not in arrs:
                    raise ValidationError(
                        ValidationReport.violation("not_closed", "not closed under composition", pair=[g, h]),
                        subject="subgroupoid",
                    )
                mul[(g, h)] = gh
    return build_groupoid(
        objs,
        {g: (G.s(g), G.r(g)) for g in arrs},
        mul,
        {g: G.inverse(g) for g in arrs},
        name=name,
    )


def full_subgroupoid(G: FiniteGroupoid, objects: Iterable[Obj], name: str = "") -> FiniteGroupoid:
    objs = set(objects)
    return subgroupoid(G, objs, [g for g in G.arrows if G.s(g) in objs and G.r(g) in objs], name=name)


def unit_space(G: FiniteGroupoid) -> FiniteGroupoid:
    return subgroupoid(G, G.objects, [], name=f"{G.name}^0" if G.name else "")


def isotropy_group(G: FiniteGroupoid, x: Obj) -> FiniteGroupoid:
    return subgroupoid(G, [x], G.isotropy(x), name=f"{G.name}_{x}" if G.name else "")


def is_subgroupoid(H: FiniteGroupoid, G: FiniteGroupoid) -> bool:
    return (
        set(H.objects) <= set(G.objects)
        and set(H.arrows) <= set(G.arrows)
        and all(G.s(g) == H.s(g) and G.r(g) == H.r(g) for g in H.arrows)
        and all(G._mul.get(k) == v for k, v in H._mul.items())
    )


def relabel(G: FiniteGroupoid, object_map: Mapping[Obj, Obj], arrow_map: Mapping[Arrow, Arrow]) -> FiniteGroupoid:
    """Rename objects and arrows through bijections"""
    if len(set(object_map.values())) != len(G.objects) or len(set(arrow_map.values())) != len(G.arrows):
        raise ValueError("Relabeling maps must be bijections")
    return FiniteGroupoid(
        [object_map[x] for x in G.objects],
        {arrow_map[g]: (object_map[G.s(g)], object_map[G.r(g)]) for g in G.arrows},
        {(arrow_map[g], arrow_map[h]): arrow_map[gh] for (g, h), gh in G._mul.items()},
        {arrow_map[g]: arrow_map[G.inverse(g)] for g in G.arrows},
        name=G.name,
    )


def product_groupoid(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    """G × H with ids "g|h" and objects "x|y" """
    objects = [f"{x}|{y}" for x, y in product(G.objects, H.objects)]
    arrows = {f"{g}|{h}": (f"{G.s(g)}|{H.s(h)}", f"{G.r(g)}|{H.r(h)}") for g, h in product(G.arrows, H.arrows)}
    mul = {
        (f"{g1}|{h1}", f"{g2}|{h2}"): f"{g12}|{h12}"
        for (g1, g2), g12 in G._mul.items()
        for (h1, h2), h12 in H._mul.items()
    }
    inv = {f"{g}|{h}": f"{G.inverse(g)}|{H.inverse(h)}" for g, h in product(G.arrows, H.arrows)}
    return build_groupoid(objects, arrows, mul, inv, name=f"{G.name}x{H.name}")
