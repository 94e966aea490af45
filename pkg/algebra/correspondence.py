"""
Étale correspondences between finite groupoids
Validation, composition, induced modules, the coinvariant map δ, the pullback
ρ̄*, chain lifting through the bar resolutions and the induced maps on homology.

A correspondence Ω : G -> H is a finite G-H-bispace with anchors ρ : Ω -> G^0
and σ : Ω -> H^0; g·ω is defined when s(g) = ρ(ω), ω·h when σ(ω) = r(h), and
the right H-action is free.  Finite correspondences are automatically proper.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import logging

from algebra.exceptions import (
    DimensionError,
    LiftError,
    ValidationError,
    ValidationReport,
)
from algebra.gmodule import (
    BarResolution,
    GModule,
    GModuleMap,
    InducedModule,
    coinvariant_subquotient,
    gset_module,
    induce_from_bispace,
    tensor_kappa,
    trivial_module,
)
from algebra.groupoid import (
    Arrow,
    FiniteGroupoid,
    GroupoidHomomorphism,
    GSet,
    Obj,
    action_groupoid,
    is_subgroupoid,
    nerve,
)
from algebra.homology import IntChainComplex, bar_complex, homology_groups
from algebra.intalg import (
    IntegerSolver,
    IntMatrix,
    SubquotientMap,
    Vector,
    induced_subquotient_map,
)

logger = logging.getLogger("ample.correspondence")

# Basis key of Ind_Ω Q_n: (ω, (h_1, ..., h_n), k) with σ(ω) = r(h_1); h_0 is absorbed into ω
InducedKey = Tuple[str, Tuple[str, ...], int]


class EtaleCorrespondence:
    """A finite G-H-bispace with free right action"""

    def __init__(
        self,
        source: FiniteGroupoid,
        target: FiniteGroupoid,
        points: Sequence[str],
        rho: Mapping[str, Obj],
        sigma: Mapping[str, Obj],
        left: Mapping[Tuple[Arrow, str], str],
        right: Mapping[Tuple[str, Arrow], str],
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.points: Tuple[str, ...] = tuple(sorted(points))
        self.rho: Dict[str, Obj] = dict(rho)
        self.sigma: Dict[str, Obj] = dict(sigma)
        self.left: Dict[Tuple[Arrow, str], str] = dict(left)
        self.right: Dict[Tuple[str, Arrow], str] = dict(right)
        self.name = name

    def act_left(self, g: Arrow, w: str) -> str:
        return self.left[(g, w)]

    def act_right(self, w: str, h: Arrow) -> str:
        return self.right[(w, h)]

    def fibre(self, x: Obj) -> Tuple[str, ...]:
        """Ω^x = ρ⁻¹(x)"""
        return tuple(w for w in self.points if self.rho[w] == x)

    def right_orbits(self) -> Tuple[Tuple[str, ...], ...]:
        """Ω/H, each orbit sorted"""
        seen = set()
        orbits = []
        for w in self.points:
            if w in seen:
                continue
            orbit = tuple(sorted({self.right[(w, h)] for h in self.target.arrows_to(self.sigma[w])}))
            seen.update(orbit)
            orbits.append(orbit)
        return tuple(orbits)

    def to_dict(self, source_name: str = "", target_name: str = "") -> Dict[str, object]:
        return {
            'source': source_name or self.source.name,
            'target': target_name or self.target.name,
            'points': list(self.points),
            'rho': dict(sorted(self.rho.items())),
            'sigma': dict(sorted(self.sigma.items())),
            'left': [[g, w, v] for (g, w), v in sorted(self.left.items())],
            'right': [[w, h, v] for (w, h), v in sorted(self.right.items())],
        }

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"EtaleCorrespondence({label}{self.source!r} -> {self.target!r}, {len(self.points)} points)"


def validate(omega: EtaleCorrespondence) -> ValidationReport:
    """Exhaustive bispace check: anchors, both actions, commutation and freeness"""
    G, H = omega.source, omega.target
    points = set(omega.points)
    for w in omega.points:
        if omega.rho.get(w) not in G.objects or omega.sigma.get(w) not in H.objects:
            return ValidationReport.violation("anchor", "point anchored outside the unit spaces", point=w)

    for w in omega.points:
        for g in G.arrows_from(omega.rho[w]):
            gw = omega.left.get((g, w))
            if gw not in points:
                return ValidationReport.violation("left_action", "left action not total", arrow=g, point=w)
            if omega.rho[gw] != G.r(g) or omega.sigma[gw] != omega.sigma[w]:
                return ValidationReport.violation("left_action", "left action does not respect the anchors", arrow=g, point=w)
        if omega.left[(G.unit(omega.rho[w]), w)] != w:
            return ValidationReport.violation("left_action", "unit does not act trivially on the left", point=w)
        for h in H.arrows_to(omega.sigma[w]):
            wh = omega.right.get((w, h))
            if wh not in points:
                return ValidationReport.violation("right_action", "right action not total", point=w, arrow=h)
            if omega.sigma[wh] != H.s(h) or omega.rho[wh] != omega.rho[w]:
                return ValidationReport.violation("right_action", "right action does not respect the anchors", point=w, arrow=h)
            if wh == w and not H.is_unit(h):
                return ValidationReport.violation("not_free", "right action not free", point=w, arrow=h)
        if omega.right[(w, H.unit(omega.sigma[w]))] != w:
            return ValidationReport.violation("right_action", "unit does not act trivially on the right", point=w)

    for w in omega.points:
        for h in G.arrows_from(omega.rho[w]):
            for g in G.arrows_from(G.r(h)):
                if omega.left[(g, omega.left[(h, w)])] != omega.left[(G.compose(g, h), w)]:
                    return ValidationReport.violation("left_action", "left action is not associative", pair=[g, h], point=w)
        for h in H.arrows_to(omega.sigma[w]):
            for k in H.arrows_to(H.s(h)):
                if omega.right[(omega.right[(w, h)], k)] != omega.right[(w, H.compose(h, k))]:
                    return ValidationReport.violation("right_action", "right action is not associative", point=w, pair=[h, k])

    for w in omega.points:
        for g in G.arrows_from(omega.rho[w]):
            for h in H.arrows_to(omega.sigma[w]):
                if omega.right[(omega.left[(g, w)], h)] != omega.left[(g, omega.right[(w, h)])]:
                    return ValidationReport.violation("commutation", "actions do not commute", triple=[g, w, h])
    return ValidationReport.ok()


def build_correspondence(source, target, points, rho, sigma, left, right, name: str = "") -> EtaleCorrespondence:
    omega = EtaleCorrespondence(source, target, points, rho, sigma, left, right, name=name)
    report = validate(omega)
    if not report:
        raise ValidationError(report, subject=name or "correspondence")
    return omega


# ==================== CONSTRUCTIONS ====================


def identity(G: FiniteGroupoid) -> EtaleCorrespondence:
    """Ω = G with ρ = r, σ = s and both actions by multiplication"""
    return EtaleCorrespondence(
        G,
        G,
        G.arrows,
        {w: G.r(w) for w in G.arrows},
        {w: G.s(w) for w in G.arrows},
        {(g, w): G.compose(g, w) for w in G.arrows for g in G.arrows_from(G.r(w))},
        {(w, h): G.compose(w, h) for w in G.arrows for h in G.arrows_to(G.s(w))},
        name=f"id_{G.name}" if G.name else "id",
    )


def from_subgroupoid(G: FiniteGroupoid, H: FiniteGroupoid) -> EtaleCorrespondence:
    """G -> H for a subgroupoid H: Ω = G_{H^0} = {g : s(g) ∈ H^0}, ρ = r, σ = s"""
    if not is_subgroupoid(H, G):
        raise DimensionError("from_subgroupoid needs a subgroupoid")
    h_objects = set(H.objects)
    points = [g for g in G.arrows if G.s(g) in h_objects]
    return build_correspondence(
        G,
        H,
        points,
        {w: G.r(w) for w in points},
        {w: G.s(w) for w in points},
        {(g, w): G.compose(g, w) for w in points for g in G.arrows_from(G.r(w))},
        {(w, h): G.compose(w, h) for w in points for h in H.arrows_to(G.s(w))},
        name="inclusion",
    )


def homomorphism_correspondence(phi: GroupoidHomomorphism) -> EtaleCorrespondence:
    """
    Ω_φ = G^0 ×_{H^0} H with points "x|h" (φ(x) = r(h)), ρ(x|h) = x, σ(x|h) = s(h),
    g·(s(g)|h) = (r(g)|φ(g)h) and (x|h)·h' = (x|hh').
    """
    G, H = phi.source, phi.target
    pairs = [(x, h) for x in G.objects for h in H.arrows_to(phi.on_object(x))]
    points = [f"{x}|{h}" for x, h in pairs]
    left, right = {}, {}
    for x, h in pairs:
        for g in G.arrows_from(x):
            left[(g, f"{x}|{h}")] = f"{G.r(g)}|{H.compose(phi(g), h)}"
        for k in H.arrows_to(H.s(h)):
            right[(f"{x}|{h}", k)] = f"{x}|{H.compose(h, k)}"
    return build_correspondence(
        G,
        H,
        points,
        {f"{x}|{h}": x for x, h in pairs},
        {f"{x}|{h}": H.s(h) for x, h in pairs},
        left,
        right,
        name="homomorphism",
    )


def _action_arrows(X: GSet) -> Dict[str, Tuple[Arrow, str]]:
    """Arrow ids of G ⋉ X mapped back to their (g, x) pairs"""
    G = X.groupoid
    return {f"{g}@{x}": (g, x) for x in X.points for g in G.arrows_from(X.anchor[x])}


def action_correspondence(X: GSet, GX: Optional[FiniteGroupoid] = None) -> EtaleCorrespondence:
    """
    G -> G ⋉ X: Ω is the arrow set of G ⋉ X, ρ(g@x) = r(g), σ(g@x) = x,
    g'·(g@x) = (g'g)@x and (g@x)·(k@y) = (gk)@y when k·y = x.
    """
    G = X.groupoid
    GX = GX or action_groupoid(X)
    pairs = _action_arrows(X)
    left, right = {}, {}
    for w, (g, x) in pairs.items():
        for g2 in G.arrows_from(G.r(g)):
            left[(g2, w)] = f"{G.compose(g2, g)}@{x}"
        for a in GX.arrows_to(x):
            k, y = pairs[a]
            right[(w, a)] = f"{G.compose(g, k)}@{y}"
    return build_correspondence(
        G,
        GX,
        list(pairs),
        {w: G.r(g) for w, (g, x) in pairs.items()},
        {w: x for w, (g, x) in pairs.items()},
        left,
        right,
        name="action",
    )


def _escape(identifier: str) -> str:
    return identifier.replace("\\", "\\\\").replace("*", "\\*")


def composite_point(w: str, l: str) -> str:
    """Name of the composite point [ω, λ]; distinct pairs get distinct names"""
    return f"{_escape(w)}*{_escape(l)}"


def split_composite_point(point: str) -> Tuple[str, str]:
    """Inverse of composite_point"""
    parts: List[List[str]] = [[]]
    chars = iter(point)
    for c in chars:
        if c == "\\":
            parts[-1].append(next(chars, ""))
        elif c == "*":
            parts.append([])
        else:
            parts[-1].append(c)
    if len(parts) != 2:
        raise KeyError(point)
    return "".join(parts[0]), "".join(parts[1])


def compose(omega: EtaleCorrespondence, lam: EtaleCorrespondence) -> EtaleCorrespondence:
    """
    Λ ∘ Ω : G -> K on H-orbits of {(ω, λ) : σ(ω) = ρ(λ)} under (ω·h, λ) ~ (ω, h·λ).
    Points are named "ω*λ" after the lexicographically least pair of their orbit,
    with '*' and '\\' inside the ids escaped by a backslash.
    """
    if omega.target != lam.source:
        raise DimensionError("groupoid mismatch: correspondences are not composable")
    G, H, K = omega.source, omega.target, lam.target
    pairs = sorted((w, l) for w in omega.points for l in lam.points if omega.sigma[w] == lam.rho[l])
    representative: Dict[Tuple[str, str], Tuple[str, str]] = {}
    for w, l in pairs:
        if (w, l) in representative:
            continue
        for h in H.arrows_to(omega.sigma[w]):
            representative[(omega.right[(w, h)], lam.left[(H.inverse(h), l)])] = (w, l)

    def name(pair: Tuple[str, str]) -> str:
        return composite_point(*representative[pair])

    reps = sorted(set(representative.values()))
    left, right = {}, {}
    for w, l in reps:
        for g in G.arrows_from(omega.rho[w]):
            left[(g, composite_point(w, l))] = name((omega.left[(g, w)], l))
        for k in K.arrows_to(lam.sigma[l]):
            right[(composite_point(w, l), k)] = name((w, lam.right[(l, k)]))
    logger.debug("composition: %d pairs, %d points", len(pairs), len(reps))
    return build_correspondence(
        G,
        K,
        [composite_point(w, l) for w, l in reps],
        {composite_point(w, l): omega.rho[w] for w, l in reps},
        {composite_point(w, l): lam.sigma[l] for w, l in reps},
        left,
        right,
        name=f"{lam.name}∘{omega.name}",
    )


# ==================== INDUCED MODULES ====================


def induction(omega: EtaleCorrespondence, N: GModule) -> InducedModule:
    """Z[Ω] ⊗_H N with its orbit data"""
    return induce_from_bispace(
        omega.source,
        omega.target,
        N,
        omega.points,
        omega.rho,
        omega.sigma,
        lambda g, w: omega.left[(g, w)],
        lambda w, h: omega.right[(w, h)],
        name=f"Ind_Ω {N.name}",
    )


def induce_module(omega: EtaleCorrespondence, N: GModule) -> GModule:
    return induction(omega, N).module


def induce_module_map(omega: EtaleCorrespondence, f: GModuleMap) -> GModuleMap:
    """Ind_Ω f, block-diagonal with f_{σ(rep)}"""
    source, target = induction(omega, f.source), induction(omega, f.target)
    components = {}
    for x in omega.source.objects:
        entries = {}
        for w in source.representatives[x]:
            row0, col0 = target.block_offset[w], source.block_offset[w]
            for (i, j), v in f.component(omega.sigma[w]).entries.items():
                entries[(row0 + i, col0 + j)] = v
        components[x] = IntMatrix(target.module.rank(x), source.module.rank(x), entries)
    return GModuleMap(source.module, target.module, components)


def fibre_gset(omega: EtaleCorrespondence, x: Obj) -> GSet:
    """Ω^x as a right H-set"""
    points = omega.fibre(x)
    return GSet(
        omega.target,
        points,
        {w: omega.sigma[w] for w in points},
        {(h, w): omega.right[(w, h)] for w in points for h in omega.target.arrows_to(omega.sigma[w])},
        side="right",
    )


def kappa_rank_check(omega: EtaleCorrespondence, Z: GSet) -> ValidationReport:
    """#(Ω^x ×_H Z) = rank_x Ind_Ω Z[Z] for every object x of G"""
    if Z.groupoid != omega.target:
        raise DimensionError("G-set is not over the target of the correspondence")
    M = induce_module(omega, gset_module(Z))
    for x in omega.source.objects:
        product = tensor_kappa(fibre_gset(omega, x), Z)
        if len(product) != M.rank(x):
            return ValidationReport.violation(
                "kappa_rank", "fibre product orbits differ from the induced fibre rank",
                object=x, orbits=len(product), rank=M.rank(x),
            )
    return ValidationReport.ok()


def rho_bar_pullback(omega: EtaleCorrespondence) -> GModuleMap:
    """ρ̄* : Z[G^0] -> Ind_Ω Z[H^0]; the generator at x goes to the sum of the orbits in Ω^x"""
    data = induction(omega, trivial_module(omega.target))
    components = {}
    for x in omega.source.objects:
        reps = data.representatives[x]
        components[x] = IntMatrix(len(reps), 1, {(data.block_offset[w], 0): 1 for w in reps})
    return GModuleMap(trivial_module(omega.source), data.module, components)


# ==================== COINVARIANT MAP ====================


def delta_ambient(omega: EtaleCorrespondence, data: InducedModule) -> IntMatrix:
    """ω ⊗ n ↦ n in N_{σ(ω)}, on the representative blocks of Ind_Ω N"""
    N, induced = data.coefficients, data.module
    entries = {}
    for x in omega.source.objects:
        for w in data.representatives[x]:
            y = omega.sigma[w]
            col0 = induced.offset(x) + data.block_offset[w]
            for i in range(N.rank(y)):
                entries[(N.offset(y) + i, col0 + i)] = 1
    return IntMatrix(N.total_rank, induced.total_rank, entries)


def delta(omega: EtaleCorrespondence, N: GModule) -> SubquotientMap:
    """δ_Ω ⊗ id : (Ind_Ω N)_G -> N_H on canonical coinvariant generators"""
    data = induction(omega, N)
    return induced_subquotient_map(
        delta_ambient(omega, data),
        coinvariant_subquotient(data.module),
        coinvariant_subquotient(N),
    )


def delta_well_defined(omega: EtaleCorrespondence, N: GModule) -> ValidationReport:
    """Every point ω (not only representatives) gives ω ⊗ n ↦ [n] in N_H"""
    data = induction(omega, N)
    ambient = delta_ambient(omega, data)
    target = coinvariant_subquotient(N)
    for w in omega.points:
        x, y = omega.rho[w], omega.sigma[w]
        for k in range(N.rank(y)):
            local = data.embed(w, {k: 1})
            image = ambient.apply({data.module.offset(x) + i: v for i, v in local.items()})
            image[N.offset(y) + k] = image.get(N.offset(y) + k, 0) - 1
            if not target.is_boundary({i: v for i, v in image.items() if v}):
                return ValidationReport.violation("delta", "δ depends on the orbit representative", point=w, generator=k)
    return ValidationReport.ok()


def delta_naturality_check(omega: EtaleCorrespondence, f: GModuleMap) -> ValidationReport:
    """δ_{N'} ∘ (Ind_Ω f)_G = f_H ∘ δ_N for an H-module map f : N -> N'"""
    induced_f = induce_module_map(omega, f)
    source_coinv = coinvariant_subquotient(induced_f.source)
    target_coinv = coinvariant_subquotient(induced_f.target)
    ind_f = induced_subquotient_map(induced_f.total_matrix(), source_coinv, target_coinv)
    f_h = induced_subquotient_map(
        f.total_matrix(), coinvariant_subquotient(f.source), coinvariant_subquotient(f.target)
    )
    lhs = delta(omega, f.target).compose(ind_f)
    rhs = f_h.compose(delta(omega, f.source))
    if lhs != rhs:
        return ValidationReport.violation("naturality", "δ is not natural in the coefficients", lhs=lhs.to_dict(), rhs=rhs.to_dict())
    return ValidationReport.ok()


def delta_composition_check(omega: EtaleCorrespondence, lam: EtaleCorrespondence, N: GModule) -> ValidationReport:
    """
    δ_{Λ∘Ω} = δ_Λ ∘ δ_Ω(Ind_Λ N) ∘ κ on coinvariants, where
    κ : Ind_{Λ∘Ω} N -> Ind_Ω Ind_Λ N sends [ω, λ] ⊗ n to ω ⊗ (λ ⊗ n).
    """
    composite = compose(omega, lam)
    outer = induction(composite, N)
    inner = induction(lam, N)
    nested = induction(omega, inner.module)

    entries = {}
    for x in omega.source.objects:
        for p in outer.representatives[x]:
            w, l = split_composite_point(p)
            col0 = outer.module.offset(x) + outer.block_offset[p]
            for k in range(N.rank(lam.sigma[l])):
                middle = inner.embed(l, {k: 1})
                local = nested.embed(w, middle)
                for i, v in local.items():
                    entries[(nested.module.offset(x) + i, col0 + k)] = v
    kappa = IntMatrix(nested.module.total_rank, outer.module.total_rank, entries)

    source = coinvariant_subquotient(outer.module)
    middle_coinv = coinvariant_subquotient(nested.module)
    kappa_map = induced_subquotient_map(kappa, source, middle_coinv)
    lhs = delta(lam, N).compose(delta(omega, inner.module).compose(kappa_map))
    rhs = delta(composite, N)
    if lhs != rhs:
        return ValidationReport.violation("composition", "δ square does not commute", lhs=lhs.to_dict(), rhs=rhs.to_dict())
    return ValidationReport.ok()


# ==================== CHAIN LIFTS ====================


class ChainLift(ABC):
    """
    f̃_n on the free generators of the bar resolution P of M, with values in
    Ind_Ω of the bar resolution Q of N.  Values are sparse combinations of
    induced keys (ω, (h_1..h_n), k); G acts by translating ω.
    """

    def __init__(self, omega: EtaleCorrespondence, data: InducedModule, M: GModule):
        if M.groupoid != omega.source or data.coefficients.groupoid != omega.target:
            raise DimensionError("modules do not match the correspondence")
        self.omega = omega
        self.data = data
        self.M = M
        self.N = data.coefficients
        self.P = BarResolution(M)
        self._tails: Dict[int, Dict[Obj, List[Tuple[str, ...]]]] = {}
        self._fibre_bases: Dict[Tuple[int, Obj], List[InducedKey]] = {}
        self._images: Dict[Tuple[int, Tuple], Dict[InducedKey, int]] = {}

    # ----- target side -----

    def _tails_at(self, n: int, y: Obj) -> List[Tuple[str, ...]]:
        if n not in self._tails:
            H = self.omega.target
            grouped: Dict[Obj, List[Tuple[str, ...]]] = {z: [] for z in H.objects}
            for t in nerve(H, n):
                grouped[H.r(t[0])].append(t)
            self._tails[n] = grouped
        return self._tails[n][y]

    def fibre_basis(self, n: int, x: Obj) -> List[InducedKey]:
        """Keys of Ind_Ω Q_n over the G-object x"""
        cache_key = (n, x)
        if cache_key not in self._fibre_bases:
            omega, H, N = self.omega, self.omega.target, self.N
            keys: List[InducedKey] = []
            for w in omega.fibre(x):
                if n == 0:
                    keys.extend((w, (), k) for k in range(N.rank(omega.sigma[w])))
                    continue
                for hs in self._tails_at(n, omega.sigma[w]):
                    keys.extend((w, hs, k) for k in range(N.rank(H.s(hs[-1]))))
            self._fibre_bases[cache_key] = keys
        return self._fibre_bases[cache_key]

    def target_boundary(self, n: int, key: InducedKey) -> Dict[InducedKey, int]:
        """δ of Ind_Ω Q on one key (n ≥ 1)"""
        omega, H = self.omega, self.omega.target
        w, hs, k = key
        result: Dict[InducedKey, int] = {}

        def add(target: InducedKey, value: int) -> None:
            total = result.get(target, 0) + value
            if total:
                result[target] = total
            else:
                result.pop(target, None)

        add((omega.right[(w, hs[0])], hs[1:], k), 1)
        for i in range(1, n):
            add((w, hs[:i - 1] + (H.compose(hs[i - 1], hs[i]),) + hs[i + 1:], k), (-1) ** i)
        for j, v in self.N.apply(hs[-1], {k: 1}).items():
            add((w, hs[:-1], j), (-1) ** n * v)
        return result

    def augment(self, key: InducedKey) -> Vector:
        """Ind(π_0) on a degree-0 key: (ω, (), k) ↦ ω ⊗ e_k in fibre coordinates of Ind_Ω N"""
        w, _, k = key
        return self.data.embed(w, {k: 1})

    def translate(self, g: Arrow, vector: Mapping[InducedKey, int]) -> Dict[InducedKey, int]:
        return {(self.omega.left[(g, w)], hs, k): v for (w, hs, k), v in vector.items()}

    # ----- source side -----

    def generator(self, n: int, key: Tuple[Tuple[str, ...], int]) -> Tuple[Tuple[str, ...], int]:
        """The free generator of P_n for a bar-complex key ((g_1..g_n), j); degree 0 uses ((x,), j)"""
        G = self.omega.source
        t, j = key
        if n == 0:
            return ((G.unit(t[0]),), j)
        return ((G.unit(G.r(t[0])),) + t, j)

    def source_image(self, n: int, gen) -> Dict[InducedKey, int]:
        """f̃_{n-1}(∂ gen), extended equivariantly from the generators"""
        G = self.omega.source
        total: Dict[InducedKey, int] = {}
        for (t, k), c in self.P.boundary_of(n, gen).items():
            g = t[0]
            base = ((G.unit(G.s(g)),) + t[1:], k)
            for key, v in self.translate(g, self.image(n - 1, base)).items():
                value = total.get(key, 0) + c * v
                if value:
                    total[key] = value
                else:
                    total.pop(key, None)
        return total

    def image(self, n: int, gen) -> Dict[InducedKey, int]:
        cache_key = (n, gen)
        if cache_key not in self._images:
            self._images[cache_key] = self._compute_image(n, gen)
        return self._images[cache_key]

    @abstractmethod
    def _compute_image(self, n: int, gen) -> Dict[InducedKey, int]:
        """f̃_n on a generator of P_n"""

    # ----- checks and coinvariants -----

    def check_chain_map(self, f: GModuleMap, max_degree: int) -> ValidationReport:
        """Ind(π_0)∘f̃_0 = f∘π on generators, and δ∘f̃_n = f̃_{n-1}∘∂ up to max_degree"""
        G = self.omega.source
        for gen in self.P.generators(0):
            (u,), k = gen
            x = G.s(u)
            total: Vector = {}
            for key, v in self.image(0, gen).items():
                for i, c in self.augment(key).items():
                    total[i] = total.get(i, 0) + v * c
            expected = f.component(x).column(k)
            if {i: v for i, v in total.items() if v} != expected:
                return ValidationReport.violation("lift", "lift does not cover f in degree 0", generator=gen)
        for n in range(1, max_degree + 1):
            for gen in self.P.generators(n):
                total: Dict[InducedKey, int] = {}
                for key, v in self.image(n, gen).items():
                    for key2, c in self.target_boundary(n, key).items():
                        total[key2] = total.get(key2, 0) + v * c
                if {k: v for k, v in total.items() if v} != self.source_image(n, gen):
                    return ValidationReport.violation("lift", f"lift is not a chain map in degree {n}", generator=gen)
        return ValidationReport.ok()

    def coinvariant_matrix(self, n: int, source: IntChainComplex, target: IntChainComplex) -> IntMatrix:
        """(δ_Ω ⊗ id) ∘ (f̃_n)_G : C_n(G; M) -> C_n(H; N) in bar-complex coordinates"""
        omega = self.omega
        columns = []
        for key in source.bases[n]:
            column: Vector = {}
            for (w, hs, k), v in self.image(n, self.generator(n, key)).items():
                target_key = ((omega.sigma[w],), k) if n == 0 else (hs, k)
                row = target.index(n, target_key)
                column[row] = column.get(row, 0) + v
            columns.append({i: v for i, v in column.items() if v})
        return IntMatrix.from_columns(target.ranks[n], columns)


class SolverLift(ChainLift):
    """Generic lift: each generator's image solves an integer system over its ρ-fibre"""

    def __init__(self, omega: EtaleCorrespondence, f: GModuleMap, data: InducedModule):
        super().__init__(omega, data, f.source)
        if f.target.fiber_rank != data.module.fiber_rank:
            raise DimensionError("f does not land in Ind_Ω N")
        self.f = f
        self._solvers: Dict[Tuple[int, Obj], Tuple[IntegerSolver, List[InducedKey]]] = {}

    def _solver(self, n: int, x: Obj):
        cache_key = (n, x)
        if cache_key not in self._solvers:
            columns_keys = self.fibre_basis(n, x)
            if n == 0:
                rows = self.data.module.rank(x)
                columns = [self.augment(key) for key in columns_keys]
            else:
                row_index = {key: i for i, key in enumerate(self.fibre_basis(n - 1, x))}
                rows = len(row_index)
                columns = [
                    {row_index[k2]: v for k2, v in self.target_boundary(n, key).items()}
                    for key in columns_keys
                ]
            matrix = IntMatrix.from_columns(rows, columns)
            self._solvers[cache_key] = (IntegerSolver(matrix), columns_keys)
            logger.debug("lift system degree %d at %s: %dx%d", n, x, matrix.rows, matrix.cols)
        return self._solvers[cache_key]

    def _compute_image(self, n: int, gen) -> Dict[InducedKey, int]:
        G = self.omega.source
        x = G.r(gen[0][0])
        solver, keys = self._solver(n, x)
        if n == 0:
            rhs = self.f.component(x).column(gen[1])
        else:
            row_index = {key: i for i, key in enumerate(self.fibre_basis(n - 1, x))}
            rhs = {row_index[key]: v for key, v in self.source_image(n, gen).items()}
        solution = solver.solve(rhs)
        if solution is None:
            raise LiftError(f"lift failed in degree {n} at generator {gen}")
        return {keys[i]: v for i, v in solution.items()}


class HomomorphismLift(ChainLift):
    """Explicit lift for Ω_φ: (u_x; g_1..g_n) ↦ ((x|u_{φ(x)}), (φ(g_1), ..., φ(g_n)))"""

    def __init__(self, phi: GroupoidHomomorphism, omega: EtaleCorrespondence):
        super().__init__(omega, induction(omega, trivial_module(phi.target)), trivial_module(phi.source))
        self.phi = phi

    def _compute_image(self, n: int, gen) -> Dict[InducedKey, int]:
        t, _ = gen
        G, H = self.phi.source, self.phi.target
        x = G.s(t[0])
        point = f"{x}|{H.unit(self.phi.on_object(x))}"
        return {(point, tuple(self.phi(g) for g in t[1:]), 0): 1}


class ActionLift(ChainLift):
    """
    Explicit lift for the action correspondence: pullback along the map that
    forgets the points of X, (u_x; g_1..g_n) ↦ Σ_y (u_x@x_0; g_1@x_1, ..., g_n@y)
    over y with anchor s(g_n), where x_{i-1} = g_i·x_i.
    """

    def __init__(self, X: GSet, omega: EtaleCorrespondence):
        super().__init__(omega, induction(omega, trivial_module(omega.target)), trivial_module(X.groupoid))
        self.X = X

    def _compute_image(self, n: int, gen) -> Dict[InducedKey, int]:
        t, _ = gen
        G, X = self.X.groupoid, self.X
        unit = t[0]
        arrows = t[1:]
        anchor = G.s(arrows[-1]) if arrows else G.s(unit)
        result: Dict[InducedKey, int] = {}
        for y in X.points:
            if X.anchor[y] != anchor:
                continue
            labels = []
            current = y
            for g in reversed(arrows):
                labels.append(f"{g}@{current}")
                current = X.act(g, current)
            result[(f"{unit}@{current}", tuple(reversed(labels)), 0)] = 1
        return result


@dataclass(frozen=True, eq=False)
class ExplicitCorrespondence:
    """A correspondence together with its pre-built chain lift"""
    correspondence: EtaleCorrespondence
    lift: ChainLift


def from_homomorphism(phi: GroupoidHomomorphism) -> ExplicitCorrespondence:
    report = phi.validate()
    if not report:
        raise ValidationError(report, subject="homomorphism")
    omega = homomorphism_correspondence(phi)
    return ExplicitCorrespondence(omega, HomomorphismLift(phi, omega))


def from_action(X: GSet) -> ExplicitCorrespondence:
    report = X.validate()
    if not report:
        raise ValidationError(report, subject="G-set")
    omega = action_correspondence(X)
    return ExplicitCorrespondence(omega, ActionLift(X, omega))


def lift_chain_map(omega: EtaleCorrespondence, f: GModuleMap, N: GModule, max_degree: int) -> SolverLift:
    """Lift f : M -> Ind_Ω N through the bar resolutions, materialising degrees 0..max_degree"""
    lift = SolverLift(omega, f, induction(omega, N))
    for n in range(max_degree + 1):
        for gen in lift.P.generators(n):
            lift.image(n, gen)
    return lift


# ==================== HOMOLOGY MAPS ====================


def homology_maps(
    omega: EtaleCorrespondence,
    max_degree: int,
    f: Optional[GModuleMap] = None,
    N: Optional[GModule] = None,
    lift: Optional[ChainLift] = None,
) -> List[SubquotientMap]:
    """
    H_n(Ω, f) for n = 0..max_degree: coinvariants of a lift of f postcomposed
    with δ ⊗ id.  Without f this is H_*(Ω) through f = ρ̄*.
    """
    if lift is None:
        if f is None:
            f = rho_bar_pullback(omega)
            N = trivial_module(omega.target)
        if N is None:
            raise ValueError("coefficients N are required with an explicit f")
        lift = SolverLift(omega, f, induction(omega, N))
    source = bar_complex(omega.source, lift.M, max_degree + 1)
    target = bar_complex(omega.target, lift.N, max_degree + 1)
    maps = []
    for n in range(max_degree + 1):
        chain_map = lift.coinvariant_matrix(n, source, target)
        maps.append(induced_subquotient_map(chain_map, homology_groups(source, n), homology_groups(target, n)))
        logger.debug("homology map degree %d: %s -> %s", n, maps[-1].source.presentation, maps[-1].target.presentation)
    return maps


def homology_map(
    omega: EtaleCorrespondence,
    n: int,
    f: Optional[GModuleMap] = None,
    N: Optional[GModule] = None,
) -> SubquotientMap:
    return homology_maps(omega, n, f=f, N=N)[n]
