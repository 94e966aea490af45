"""
Groupoid modules with finitely generated free fibres
Coinvariants, G-set modules, fibre products, restriction and induction with
the unit and counit of the induction/restriction adjunction.

A module M over G stores a rank for every object and, for every arrow g, the
integer matrix of g : M_{s(g)} -> M_{r(g)}.  Total coordinates list the fibres
in object order.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple
import logging

from algebra.exceptions import (
    AdjunctionError,
    DimensionError,
    ValidationError,
    ValidationReport,
)
from algebra.groupoid import (
    Arrow,
    FiniteGroupoid,
    GSet,
    Obj,
    is_subgroupoid,
    nerve,
)
from algebra.intalg import (
    Cokernel,
    IntMatrix,
    SubquotientGroup,
    Vector,
    cokernel,
    homology_of_pair,
)

logger = logging.getLogger("ample.gmodule")


class GModule:
    """A functor from a finite groupoid to finitely generated free abelian groups"""

    def __init__(
        self,
        groupoid: FiniteGroupoid,
        fiber_rank: Mapping[Obj, int],
        action: Mapping[Arrow, IntMatrix],
        name: str = "",
    ):
        self.groupoid = groupoid
        self.name = name
        self.fiber_rank: Dict[Obj, int] = {x: int(fiber_rank.get(x, 0)) for x in groupoid.objects}
        self.action: Dict[Arrow, IntMatrix] = dict(action)
        self._offsets: Dict[Obj, int] = {}
        total = 0
        for x in groupoid.objects:
            self._offsets[x] = total
            total += self.fiber_rank[x]
        self.total_rank = total

    def rank(self, x: Obj) -> int:
        return self.fiber_rank[x]

    def act(self, g: Arrow) -> IntMatrix:
        return self.action[g]

    def offset(self, x: Obj) -> int:
        return self._offsets[x]

    def index(self, x: Obj, k: int) -> int:
        return self._offsets[x] + k

    def basis(self) -> List[Tuple[Obj, int]]:
        return [(x, k) for x in self.groupoid.objects for k in range(self.fiber_rank[x])]

    def apply(self, g: Arrow, vector: Mapping[int, int]) -> Vector:
        """g acting on a fibre vector of M_{s(g)}"""
        return self.action[g].apply(vector)

    def to_dict(self, groupoid_name: str = "") -> Dict[str, object]:
        return {
            'groupoid': groupoid_name or self.groupoid.name,
            'fibers': dict(self.fiber_rank),
            'action': {g: self.action[g].to_dense() for g in self.groupoid.arrows if g in self.action},
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GModule):
            return NotImplemented
        return (
            self.groupoid == other.groupoid
            and self.fiber_rank == other.fiber_rank
            and all(self.action.get(g) == other.action.get(g) for g in self.groupoid.arrows)
        )

    __hash__ = None

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"GModule({label}total rank {self.total_rank} over {self.groupoid!r})"


def validate_module(M: GModule) -> ValidationReport:
    G = M.groupoid
    for x, k in M.fiber_rank.items():
        if k < 0:
            return ValidationReport.violation("rank", "negative fibre rank", object=x)
    for g in G.arrows:
        matrix = M.action.get(g)
        if matrix is None:
            return ValidationReport.violation("action", "action matrix missing", arrow=g)
        if matrix.shape != (M.rank(G.r(g)), M.rank(G.s(g))):
            return ValidationReport.violation("shape", "action matrix has the wrong shape", arrow=g, shape=list(matrix.shape))
    for x in G.objects:
        if not M.action[G.unit(x)].is_identity() and M.rank(x) > 0:
            return ValidationReport.violation("unit", "unit does not act as the identity", object=x)
    for (g, h) in nerve(G, 2):
        if M.action[g] @ M.action[h] != M.action[G.compose(g, h)]:
            return ValidationReport.violation("functoriality", "action not functorial", pair=[g, h])
    return ValidationReport.ok()


def build_module(G: FiniteGroupoid, fibers: Mapping[Obj, int], action: Mapping[Arrow, IntMatrix], name: str = "") -> GModule:
    """Construct and validate; unit arrows may be omitted from `action`"""
    action = dict(action)
    for x in G.objects:
        action.setdefault(G.unit(x), IntMatrix.identity(int(fibers.get(x, 0))))
    M = GModule(G, fibers, action, name=name)
    report = validate_module(M)
    if not report:
        raise ValidationError(report, subject=name or "module")
    return M


def trivial_module(G: FiniteGroupoid) -> GModule:
    """Z[G^0]: rank-1 fibres, every arrow acts by [1]"""
    return GModule(G, {x: 1 for x in G.objects}, {g: IntMatrix.identity(1) for g in G.arrows}, name="trivial")


def direct_sum(M: GModule, N: GModule) -> GModule:
    if M.groupoid != N.groupoid:
        raise DimensionError("Direct sum of modules over different groupoids")
    G = M.groupoid
    return GModule(
        G,
        {x: M.rank(x) + N.rank(x) for x in G.objects},
        {g: IntMatrix.block_diagonal([M.act(g), N.act(g)]) for g in G.arrows},
        name=f"{M.name}+{N.name}",
    )


# ==================== MODULE MAPS ====================


class GModuleMap:
    """Equivariant map given fibrewise: component(x) : M_x -> N_x"""

    def __init__(self, source: GModule, target: GModule, components: Mapping[Obj, IntMatrix]):
        if source.groupoid != target.groupoid:
            raise DimensionError("Module map between modules over different groupoids")
        self.source = source
        self.target = target
        self.components: Dict[Obj, IntMatrix] = {
            x: components.get(x, IntMatrix.zeros(target.rank(x), source.rank(x)))
            for x in source.groupoid.objects
        }

    def component(self, x: Obj) -> IntMatrix:
        return self.components[x]

    def validate(self) -> ValidationReport:
        G = self.source.groupoid
        for x, matrix in self.components.items():
            if matrix.shape != (self.target.rank(x), self.source.rank(x)):
                return ValidationReport.violation("shape", "component has the wrong shape", object=x)
        for g in G.arrows:
            left = self.components[G.r(g)] @ self.source.act(g)
            right = self.target.act(g) @ self.components[G.s(g)]
            if left != right:
                return ValidationReport.violation("equivariance", "map is not equivariant", arrow=g)
        return ValidationReport.ok()

    def total_matrix(self) -> IntMatrix:
        return IntMatrix.block_diagonal([self.components[x] for x in self.source.groupoid.objects])

    def compose(self, other: "GModuleMap") -> "GModuleMap":
        """self ∘ other"""
        return GModuleMap(
            other.source,
            self.target,
            {x: self.components[x] @ other.components[x] for x in self.source.groupoid.objects},
        )

    def is_identity(self) -> bool:
        return all(
            m.is_identity() or (m.rows == m.cols == 0)
            for m in self.components.values()
        ) and self.source.fiber_rank == self.target.fiber_rank

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GModuleMap):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def to_dict(self) -> Dict[str, object]:
        return {x: m.to_dense() for x, m in self.components.items()}


def identity_map(M: GModule) -> GModuleMap:
    return GModuleMap(M, M, {x: IntMatrix.identity(M.rank(x)) for x in M.groupoid.objects})


def zero_map(M: GModule, N: GModule) -> GModuleMap:
    return GModuleMap(M, N, {})


# ==================== G-SET MODULES ====================


def _fibres(X: GSet) -> Dict[Obj, List[str]]:
    fibres: Dict[Obj, List[str]] = {x: [] for x in X.groupoid.objects}
    for p in X.points:
        fibres[X.anchor[p]].append(p)
    return fibres


def gset_module(X: GSet) -> GModule:
    """Z[X] for a left G-set: fibre at x has the points over x as basis, arrows act by permutations"""
    G = X.groupoid
    fibres = _fibres(X)
    position = {p: k for ps in fibres.values() for k, p in enumerate(ps)}
    action = {}
    for g in G.arrows:
        entries = {(position[X.act(g, p)], position[p]): 1 for p in fibres[G.s(g)]}
        action[g] = IntMatrix(len(fibres[G.r(g)]), len(fibres[G.s(g)]), entries)
    return GModule(G, {x: len(ps) for x, ps in fibres.items()}, action, name="Z[X]")


def pushforward(X: GSet, Y: GSet, f: Mapping[str, str]) -> GModuleMap:
    """f_* : Z[X] -> Z[Y], χ_p ↦ χ_{f(p)}; f must be equivariant and anchor-preserving"""
    G = X.groupoid
    for p in X.points:
        if Y.anchor[f[p]] != X.anchor[p]:
            raise ValidationError(ValidationReport.violation("anchor", "map does not preserve anchors", point=p), subject="pushforward")
        for g in G.arrows_from(X.anchor[p]):
            if f[X.act(g, p)] != Y.act(g, f[p]):
                raise ValidationError(
                    ValidationReport.violation("equivariance", "map is not equivariant", arrow=g, point=p),
                    subject="pushforward",
                )
    fx, fy = _fibres(X), _fibres(Y)
    components = {}
    for x in G.objects:
        position = {q: k for k, q in enumerate(fy[x])}
        entries = {(position[f[p]], k): 1 for k, p in enumerate(fx[x])}
        components[x] = IntMatrix(len(fy[x]), len(fx[x]), entries)
    return GModuleMap(gset_module(X), gset_module(Y), components)


# ==================== COINVARIANTS ====================


def relation_matrix(M: GModule) -> IntMatrix:
    """Columns g·m − m over all arrows g and fibre generators m of M_{s(g)}"""
    G = M.groupoid
    columns: List[Vector] = []
    for g in G.arrows:
        if G.is_unit(g):
            continue
        source, target = G.s(g), G.r(g)
        for k in range(M.rank(source)):
            column = {M.offset(target) + i: v for i, v in M.act(g).column(k).items()}
            index = M.offset(source) + k
            value = column.get(index, 0) - 1
            if value:
                column[index] = value
            else:
                column.pop(index, None)
            columns.append(column)
    return IntMatrix.from_columns(M.total_rank, columns)


def coinvariants(M: GModule) -> Cokernel:
    """M_G as the cokernel of the relation matrix, with projection m ↦ [m]"""
    return cokernel(relation_matrix(M))


def coinvariant_subquotient(M: GModule) -> SubquotientGroup:
    """M_G presented as a subquotient of ⊕_x M_x (all of it modulo the relations)"""
    return homology_of_pair(IntMatrix.zeros(0, M.total_rank), relation_matrix(M))


# ==================== FIBRE PRODUCTS ====================


@dataclass(frozen=True, eq=False)
class FibreProduct:
    """
    Y ×_G Z for a right G-set Y and a left G-set Z: orbits of
    g·(y, z) = (y·g⁻¹, g·z) on pairs with anchor(y) = anchor(z).
    Representatives are the lexicographically least pairs.
    """
    Y: GSet
    Z: GSet
    pairs: Tuple[Tuple[str, str], ...]
    representatives: Tuple[Tuple[str, str], ...]
    orbit_of: Mapping[Tuple[str, str], int]

    def kappa(self, y: str, z: str) -> int:
        """Index of the orbit class [y, z]_G"""
        return self.orbit_of[(y, z)]

    def __len__(self) -> int:
        return len(self.representatives)

    def balancing_matrix(self) -> IntMatrix:
        """Relations (y·g, z) − (y, g·z) of the balanced tensor product Z[Y] ⊗_G Z[Z]"""
        G = self.Y.groupoid
        index = {pair: k for k, pair in enumerate(self.pairs)}
        columns = []
        for y in self.Y.points:
            for g in G.arrows_to(self.Y.anchor[y]):
                yg = self.Y.act(g, y)
                for z in self.Z.points:
                    if self.Z.anchor[z] != G.s(g):
                        continue
                    column = {index[(yg, z)]: 1}
                    other = index[(y, self.Z.act(g, z))]
                    column[other] = column.get(other, 0) - 1
                    columns.append({k: v for k, v in column.items() if v})
        return IntMatrix.from_columns(len(self.pairs), columns)

    def check(self) -> ValidationReport:
        """κ kills the balancing relations and the balanced tensor product is free of rank #orbits"""
        G = self.Y.groupoid
        for y in self.Y.points:
            for g in G.arrows_to(self.Y.anchor[y]):
                for z in self.Z.points:
                    if self.Z.anchor[z] == G.s(g) and self.kappa(self.Y.act(g, y), z) != self.kappa(y, self.Z.act(g, z)):
                        return ValidationReport.violation("kappa", "κ does not kill a balancing relation", y=y, arrow=g, z=z)
        quotient = cokernel(self.balancing_matrix()).group
        if quotient.torsion or quotient.free_rank != len(self):
            return ValidationReport.violation(
                "kappa", "balanced tensor product is not free on the orbits", presentation=str(quotient), orbits=len(self)
            )
        return ValidationReport.ok()


def tensor_kappa(Y: GSet, Z: GSet) -> FibreProduct:
    """The fibre product Y ×_G Z with its orbit basis"""
    if Y.side != "right" or Z.side != "left":
        raise ValueError("tensor_kappa needs a right G-set and a left G-set")
    if Y.groupoid != Z.groupoid:
        raise DimensionError("G-sets over different groupoids")
    G = Y.groupoid
    pairs = tuple(sorted((y, z) for y in Y.points for z in Z.points if Y.anchor[y] == Z.anchor[z]))
    orbit_of: Dict[Tuple[str, str], int] = {}
    representatives = []
    for y, z in pairs:
        if (y, z) in orbit_of:
            continue
        k = len(representatives)
        representatives.append((y, z))
        for g in G.arrows_from(Z.anchor[z]):
            orbit_of[(Y.act(G.inverse(g), y), Z.act(g, z))] = k
    logger.debug("fibre product: %d pairs, %d orbits", len(pairs), len(representatives))
    return FibreProduct(Y, Z, pairs, tuple(representatives), orbit_of)


# ==================== RESTRICTION ====================


def restrict(G: FiniteGroupoid, H: FiniteGroupoid, M: GModule) -> GModule:
    """Res^H_G M: fibres over H^0, actions of the arrows of H"""
    if not is_subgroupoid(H, G) or M.groupoid != G:
        raise DimensionError("restrict needs a subgroupoid of the module's groupoid")
    return GModule(H, {x: M.rank(x) for x in H.objects}, {h: M.act(h) for h in H.arrows}, name=f"Res {M.name}")


def restrict_map(H: FiniteGroupoid, f: GModuleMap) -> GModuleMap:
    G = f.source.groupoid
    return GModuleMap(
        restrict(G, H, f.source),
        restrict(G, H, f.target),
        {x: f.component(x) for x in H.objects},
    )


# ==================== INDUCTION ====================


@dataclass(frozen=True, eq=False)
class InducedModule:
    """
    Z[Ω] ⊗_H N computed on orbit data.

    representatives[x] lists the least point of each H-orbit of Ω^x; every point
    ω has a normal form ω = rep·h (unique by freeness); the fibre at x is the
    direct sum of N_{σ(rep)} over the representatives, in order.
    """
    module: GModule
    representatives: Mapping[Obj, Tuple[str, ...]]
    normal_form: Mapping[str, Tuple[str, Arrow]]
    block_offset: Mapping[str, int]
    rho: Mapping[str, Obj]
    sigma: Mapping[str, Obj]
    coefficients: GModule

    def block(self, rep: str) -> Tuple[int, int]:
        """(offset inside the fibre, block size) of a representative"""
        return self.block_offset[rep], self.coefficients.rank(self.sigma[rep])

    def embed(self, point: str, vector: Mapping[int, int]) -> Vector:
        """Fibre coordinates of point ⊗ n for n in N_{σ(point)}"""
        rep, h = self.normal_form[point]
        offset = self.block_offset[rep]
        return {offset + i: v for i, v in self.coefficients.apply(h, vector).items()}


def induce_from_bispace(
    G: FiniteGroupoid,
    H: FiniteGroupoid,
    N: GModule,
    points: Sequence[str],
    rho: Mapping[str, Obj],
    sigma: Mapping[str, Obj],
    left: Callable[[Arrow, str], str],
    right: Callable[[str, Arrow], str],
    name: str = "",
) -> InducedModule:
    """
    Induction along a G-H-bispace with free right H-action.  g acts on the block
    of rep by carrying g·rep = rep'·h to the block of rep' through N(h).
    """
    if N.groupoid != H:
        raise DimensionError("coefficient module is not over the right-hand groupoid")
    normal_form: Dict[str, Tuple[str, Arrow]] = {}
    reps: Dict[Obj, List[str]] = {x: [] for x in G.objects}
    for w in sorted(points):
        if w in normal_form:
            continue
        reps[rho[w]].append(w)
        for h in H.arrows_to(sigma[w]):
            normal_form[right(w, h)] = (w, h)

    block_offset: Dict[str, int] = {}
    ranks: Dict[Obj, int] = {}
    for x in G.objects:
        total = 0
        for w in reps[x]:
            block_offset[w] = total
            total += N.rank(sigma[w])
        ranks[x] = total

    action = {}
    for g in G.arrows:
        entries = {}
        for w in reps[G.s(g)]:
            target_rep, h = normal_form[left(g, w)]
            row0, col0 = block_offset[target_rep], block_offset[w]
            for (i, j), v in N.act(h).entries.items():
                entries[(row0 + i, col0 + j)] = v
        action[g] = IntMatrix(ranks[G.r(g)], ranks[G.s(g)], entries)

    module = GModule(G, ranks, action, name=name or f"Ind {N.name}")
    return InducedModule(
        module=module,
        representatives={x: tuple(ws) for x, ws in reps.items()},
        normal_form=normal_form,
        block_offset=block_offset,
        rho=dict(rho),
        sigma=dict(sigma),
        coefficients=N,
    )


def induction_data(G: FiniteGroupoid, H: FiniteGroupoid, N: GModule) -> InducedModule:
    """Ind^G_H N = Z[G_{H^0}] ⊗_H N with Ω = {g : s(g) ∈ H^0}, ρ = r, σ = s"""
    if not is_subgroupoid(H, G):
        raise DimensionError("induce needs a subgroupoid")
    h_objects = set(H.objects)
    points = [g for g in G.arrows if G.s(g) in h_objects]
    return induce_from_bispace(
        G,
        H,
        N,
        points,
        {g: G.r(g) for g in points},
        {g: G.s(g) for g in points},
        G.compose,
        G.compose,
        name=f"Ind {N.name}",
    )


def induce(G: FiniteGroupoid, H: FiniteGroupoid, N: GModule) -> GModule:
    return induction_data(G, H, N).module


def induce_map(G: FiniteGroupoid, H: FiniteGroupoid, f: GModuleMap) -> GModuleMap:
    """Ind f: block-diagonal with f_{s(rep)} on each representative block"""
    source = induction_data(G, H, f.source)
    target = induction_data(G, H, f.target)
    components = {}
    for x in G.objects:
        entries = {}
        for w in source.representatives[x]:
            row0, col0 = target.block_offset[w], source.block_offset[w]
            for (i, j), v in f.component(G.s(w)).entries.items():
                entries[(row0 + i, col0 + j)] = v
        components[x] = IntMatrix(target.module.rank(x), source.module.rank(x), entries)
    return GModuleMap(source.module, target.module, components)


# ==================== ADJUNCTION ====================


def adjunction_unit(G: FiniteGroupoid, H: FiniteGroupoid, N: GModule) -> GModuleMap:
    """η_N : N -> Res Ind N, n ↦ unit ⊗ n; at y the block of rep_y through N(rep_y⁻¹)"""
    data = induction_data(G, H, N)
    restricted = restrict(G, H, data.module)
    components = {}
    for y in H.objects:
        rep, h = data.normal_form[G.unit(y)]
        offset = data.block_offset[rep]
        entries = {(offset + i, j): v for (i, j), v in N.act(h).entries.items()}
        components[y] = IntMatrix(restricted.rank(y), N.rank(y), entries)
    return GModuleMap(N, restricted, components)


def adjunction_counit(G: FiniteGroupoid, H: FiniteGroupoid, M: GModule) -> GModuleMap:
    """ε_M : Ind Res M -> M, ξ ⊗ m ↦ ξ·m; at x the row of blocks M(rep) over the representatives"""
    data = induction_data(G, H, restrict(G, H, M))
    components = {}
    for x in G.objects:
        entries = {}
        for w in data.representatives[x]:
            col0 = data.block_offset[w]
            for (i, j), v in M.act(w).entries.items():
                entries[(i, col0 + j)] = v
        components[x] = IntMatrix(M.rank(x), data.module.rank(x), entries)
    return GModuleMap(data.module, M, components)


def triangle_check(G: FiniteGroupoid, H: FiniteGroupoid, N: GModule, M: GModule) -> ValidationReport:
    """
    ε_{Ind N} ∘ Ind(η_N) = id on Ind N, and Res(ε_M) ∘ η_{Res M} = id on Res M.
    """
    induced = induce(G, H, N)
    first = adjunction_counit(G, H, induced).compose(induce_map(G, H, adjunction_unit(G, H, N)))
    for x in G.objects:
        if first.component(x) != IntMatrix.identity(induced.rank(x)):
            return ValidationReport.violation(
                "triangle", "triangle identity failed", identity="counit∘Ind(unit)", object=x
            )
    restricted = restrict(G, H, M)
    second = restrict_map(H, adjunction_counit(G, H, M)).compose(adjunction_unit(G, H, restricted))
    for y in H.objects:
        if second.component(y) != IntMatrix.identity(restricted.rank(y)):
            return ValidationReport.violation(
                "triangle", "triangle identity failed", identity="Res(counit)∘unit", object=y
            )
    return ValidationReport.ok()


def ensure_triangles(G: FiniteGroupoid, H: FiniteGroupoid, N: GModule, M: GModule) -> None:
    report = triangle_check(G, H, N, M)
    if not report:
        raise AdjunctionError(report.reason, report.witness)


# ==================== BAR RESOLUTION OF A MODULE ====================


class BarResolution:
    """
    P_n = Z[G^{n+1}] ⊗_{G^0} M with basis keys (t, k): t a composable
    (n+1)-tuple, k a basis index of M_{s(t[-1])}.  Faces compose for i < n and
    drop the last arrow through the action for i = n; the augmentation is
    (g_0; m) ↦ g_0·m.  As a G-module, P_n is free on the keys with t[0] a unit.
    """

    def __init__(self, M: GModule):
        self.module = M
        self.groupoid = M.groupoid
        self._bases: Dict[int, List[Tuple[Tuple[str, ...], int]]] = {}
        self._index: Dict[int, Dict[Tuple[Tuple[str, ...], int], int]] = {}

    def basis(self, n: int) -> List[Tuple[Tuple[str, ...], int]]:
        if n not in self._bases:
            G, M = self.groupoid, self.module
            keys = [(t, k) for t in nerve(G, n + 1) for k in range(M.rank(G.s(t[-1])))]
            self._bases[n] = keys
            self._index[n] = {key: i for i, key in enumerate(keys)}
        return self._bases[n]

    def index(self, n: int, key) -> int:
        self.basis(n)
        return self._index[n][key]

    def boundary_of(self, n: int, key) -> Dict[Tuple[Tuple[str, ...], int], int]:
        """∂_n of one basis element of P_n (n ≥ 1), as a sparse combination of P_{n-1} keys"""
        G, M = self.groupoid, self.module
        t, k = key
        result: Dict = {}

        def add(target, value):
            total = result.get(target, 0) + value
            if total:
                result[target] = total
            else:
                result.pop(target, None)

        for i in range(n):
            add((t[:i] + (G.compose(t[i], t[i + 1]),) + t[i + 2:], k), (-1) ** i)
        sign = (-1) ** n
        for j, v in M.apply(t[-1], {k: 1}).items():
            add((t[:-1], j), sign * v)
        return result

    def boundary_matrix(self, n: int) -> IntMatrix:
        """P_n -> P_{n-1} for n ≥ 1; at n = 0 the augmentation P_0 -> M"""
        source = self.basis(n)
        if n == 0:
            G, M = self.groupoid, self.module
            columns = [
                {M.offset(G.r(t[0])) + j: v for j, v in M.apply(t[0], {k: 1}).items()}
                for t, k in source
            ]
            return IntMatrix.from_columns(M.total_rank, columns)
        target_size = len(self.basis(n - 1))
        columns = [
            {self.index(n - 1, key): v for key, v in self.boundary_of(n, element).items()}
            for element in source
        ]
        return IntMatrix.from_columns(target_size, columns)

    def homotopy_matrix(self, n: int) -> IntMatrix:
        """h_n : P_{n-1} -> P_n prepending unit(r(g_0)); h_0 : M -> P_0 sends m ∈ M_x to (unit(x); m)"""
        G, M = self.groupoid, self.module
        target = self.basis(n)
        if n == 0:
            columns = [{self.index(0, ((G.unit(x),), k)): 1} for x, k in M.basis()]
            return IntMatrix.from_columns(len(target), columns)
        columns = [
            {self.index(n, ((G.unit(G.r(t[0])),) + t, k)): 1}
            for t, k in self.basis(n - 1)
        ]
        return IntMatrix.from_columns(len(target), columns)

    def generators(self, n: int) -> List[Tuple[Tuple[str, ...], int]]:
        """Free G-module generators of P_n: keys whose leading arrow is a unit"""
        G = self.groupoid
        return [(t, k) for t, k in self.basis(n) if G.is_unit(t[0])]


def module_resolution_check(M: GModule, n: int) -> ValidationReport:
    """
    Contracting homotopy of the bar resolution of M: ∂_0 h_0 = id on M and
    ∂_{k+1} h_{k+1} + h_k ∂_k = id on P_k for k ≤ n.
    """
    P = BarResolution(M)
    if P.boundary_matrix(0) @ P.homotopy_matrix(0) != IntMatrix.identity(M.total_rank):
        return ValidationReport.violation("homotopy", "augmentation is not split by h_0", degree=-1)
    for k in range(n + 1):
        size = len(P.basis(k))
        lhs = P.boundary_matrix(k + 1) @ P.homotopy_matrix(k + 1) + P.homotopy_matrix(k) @ P.boundary_matrix(k)
        if lhs != IntMatrix.identity(size):
            return ValidationReport.violation("homotopy", f"∂h + h∂ ≠ id on P_{k}", degree=k)
    return ValidationReport.ok()
