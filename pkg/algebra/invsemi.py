"""
Finite inverse semigroups
The discrete groupoid S ⋉ E^×, the universal groupoid G_S on the filter space,
the correspondence Ω_S between them and the homology decomposition over
stabilisers.

For finite S every filter on E is principal, so Ê is the set of filters e^↑
with e ∈ E^× and a germ [s, f^↑] is represented by the element s·f.
"""

from dataclasses import dataclass, field
from itertools import permutations, combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import logging

from algebra.correspondence import (
    EtaleCorrespondence,
    ExplicitCorrespondence,
    build_correspondence,
    compose,
    from_action,
    from_homomorphism,
    split_composite_point,
)
from algebra.exceptions import ValidationError, ValidationReport
from algebra.gmodule import trivial_module
from algebra.groupoid import (
    FiniteGroupoid,
    GroupoidHomomorphism,
    GSet,
    Obj,
    build_gset,
    build_groupoid,
    build_homomorphism,
    isotropy_group,
)
from algebra.homology import HomologyComparison, bar_complex, homology, homology_groups
from algebra.intalg import FGAbelianGroup, induced_subquotient_map

logger = logging.getLogger("ample.invsemi")

# Sentinel for "detect the zero as the absorbing element"
DETECT = "detect"


class FiniteInverseSemigroup:
    """
    An inverse semigroup given by its full multiplication table.

    `zero` is either an element name, None (no zero: every element is kept)
    or DETECT, in which case an absorbing element, if any, is the zero.
    """

    def __init__(
        self,
        elements: Sequence[str],
        table: Mapping[Tuple[str, str], str],
        star: Optional[Mapping[str, str]] = None,
        zero: Optional[str] = DETECT,
        name: str = "",
    ):
        self.name = name
        self.elements: Tuple[str, ...] = tuple(sorted(elements))
        self.table: Dict[Tuple[str, str], str] = dict(table)
        self._star: Dict[str, str] = dict(star) if star is not None else derive_star(self.elements, self.table)
        if zero == DETECT:
            zero = next(
                (z for z in self.elements
                 if all(self.table.get((z, a)) == z and self.table.get((a, z)) == z for a in self.elements)),
                None,
            )
        self.zero: Optional[str] = zero

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def star(self, a: str) -> str:
        return self._star[a]

    def is_idempotent(self, a: str) -> bool:
        return self.table.get((a, a)) == a

    @property
    def idempotents(self) -> Tuple[str, ...]:
        return tuple(e for e in self.elements if self.is_idempotent(e))

    @property
    def nonzero_idempotents(self) -> Tuple[str, ...]:
        return tuple(e for e in self.idempotents if e != self.zero)

    @property
    def nonzero(self) -> Tuple[str, ...]:
        return tuple(s for s in self.elements if s != self.zero)

    def leq(self, e: str, f: str) -> bool:
        """Semilattice order on idempotents: e ≤ f iff e = ef"""
        return self.table[(e, f)] == e

    def source(self, s: str) -> str:
        """s*s"""
        return self.table[(self._star[s], s)]

    def range(self, s: str) -> str:
        """ss*"""
        return self.table[(s, self._star[s])]

    def down_set(self, e: str) -> Tuple[str, ...]:
        """Nonzero idempotents below e"""
        return tuple(f for f in self.nonzero_idempotents if self.leq(f, e))

    def to_dict(self) -> Dict[str, object]:
        return {
            'elements': list(self.elements),
            'mul': [[self.table[(a, b)] for b in self.elements] for a in self.elements],
            'star': {a: self._star[a] for a in self.elements},
            'zero': self.zero,
        }

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"FiniteInverseSemigroup({label}{len(self.elements)} elements)"


def derive_star(elements: Sequence[str], table: Mapping[Tuple[str, str], str]) -> Dict[str, str]:
    """The unique t with sts = s and tst = t for each s; missing or ambiguous inverses are left out"""
    star = {}
    for s in elements:
        candidates = [
            t for t in elements
            if table.get((table.get((s, t)), s)) == s and table.get((table.get((t, s)), t)) == t
        ]
        if len(candidates) == 1:
            star[s] = candidates[0]
    return star


def validate_inverse_semigroup(S: FiniteInverseSemigroup) -> ValidationReport:
    elements = set(S.elements)
    for a in S.elements:
        for b in S.elements:
            if S.table.get((a, b)) not in elements:
                return ValidationReport.violation("table", "multiplication table not total", pair=[a, b])
    for a in S.elements:
        for b in S.elements:
            ab = S.table[(a, b)]
            for c in S.elements:
                if S.table[(ab, c)] != S.table[(a, S.table[(b, c)])]:
                    return ValidationReport.violation("associativity", "associativity fails", triple=[a, b, c])
    for s in S.elements:
        t = S._star.get(s)
        if t not in elements:
            return ValidationReport.violation("star", "no unique generalized inverse", element=s)
        if S.mul(S.mul(s, t), s) != s:
            return ValidationReport.violation("star", "sts ≠ s", element=s)
        if S.mul(S.mul(t, s), t) != t:
            return ValidationReport.violation("star", "tst ≠ t", element=s)
        if S._star.get(t) != s:
            return ValidationReport.violation("star", "star is not an involution", element=s)
    for a in S.elements:
        for b in S.elements:
            if S.star(S.mul(a, b)) != S.mul(S.star(b), S.star(a)):
                return ValidationReport.violation("star", "star is not an anti-homomorphism", pair=[a, b])
    idempotents = S.idempotents
    for e in idempotents:
        for f in idempotents:
            if S.mul(e, f) != S.mul(f, e):
                return ValidationReport.violation("idempotents", "idempotents do not commute", pair=[e, f])
    if S.zero is not None:
        if S.zero not in elements:
            return ValidationReport.violation("zero", "zero is not an element", zero=S.zero)
        for a in S.elements:
            if S.mul(S.zero, a) != S.zero or S.mul(a, S.zero) != S.zero:
                return ValidationReport.violation("zero", "zero is not absorbing", element=a)
    return ValidationReport.ok()


def build_inverse_semigroup(
    elements: Sequence[str],
    table: Mapping[Tuple[str, str], str],
    star: Optional[Mapping[str, str]] = None,
    zero: Optional[str] = DETECT,
    name: str = "",
) -> FiniteInverseSemigroup:
    S = FiniteInverseSemigroup(elements, table, star=star, zero=zero, name=name)
    report = validate_inverse_semigroup(S)
    if not report:
        raise ValidationError(report, subject=name or "inverse semigroup")
    return S


# ==================== FAMILIES ====================


def symmetric_inverse_monoid(n: int) -> FiniteInverseSemigroup:
    """
    Partial bijections of {1..n}, named by image strings: position i holds the
    image of i+1 or '-' ("12" is the identity on two letters, "--" the zero).
    Products compose right to left: (st)(x) = s(t(x)).
    """
    if not 1 <= n <= 9:
        raise ValueError(f"symmetric inverse monoid needs 1 <= n <= 9, got {n}")
    letters = [str(i + 1) for i in range(n)]
    maps: Dict[str, Dict[int, int]] = {}
    for k in range(n + 1):
        for domain in combinations(range(n), k):
            for image in permutations(range(n), k):
                mapping = dict(zip(domain, image))
                maps["".join(letters[mapping[i]] if i in mapping else "-" for i in range(n))] = mapping
    names = {tuple(sorted(m.items())): name for name, m in maps.items()}

    def compose_maps(s: Dict[int, int], t: Dict[int, int]) -> str:
        return names[tuple(sorted((x, s[y]) for x, y in t.items() if y in s))]

    table = {(a, b): compose_maps(maps[a], maps[b]) for a in maps for b in maps}
    star = {a: names[tuple(sorted((y, x) for x, y in m.items()))] for a, m in maps.items()}
    return build_inverse_semigroup(list(maps), table, star=star, name=f"I{n}")


def chain_semilattice(names: Sequence[str]) -> FiniteInverseSemigroup:
    """A chain e_0 > e_1 > ... with meet as product; no element is treated as zero"""
    rank = {e: i for i, e in enumerate(names)}
    table = {(a, b): a if rank[a] >= rank[b] else b for a in names for b in names}
    return build_inverse_semigroup(names, table, star={e: e for e in names}, zero=None, name="chain")


def group_semigroup(G: FiniteGroupoid) -> FiniteInverseSemigroup:
    """A group (one-object groupoid) as an inverse semigroup without zero"""
    if not G.is_group:
        raise ValueError("group_semigroup needs a one-object groupoid")
    table = {(g, h): G.compose(g, h) for g in G.arrows for h in G.arrows}
    return build_inverse_semigroup(G.arrows, table, star={g: G.inverse(g) for g in G.arrows}, zero=None, name=G.name)


# ==================== GROUPOIDS ====================


def discrete_groupoid(S: FiniteInverseSemigroup) -> FiniteGroupoid:
    """S ⋉ E^×: objects E^×, arrows the nonzero s from s*s to ss*, product and star"""
    arrows = {s: (S.source(s), S.range(s)) for s in S.nonzero}
    mul = {
        (s, t): S.mul(s, t)
        for s in S.nonzero for t in S.nonzero
        if S.source(s) == S.range(t)
    }
    return build_groupoid(
        S.nonzero_idempotents,
        arrows,
        mul,
        {s: S.star(s) for s in S.nonzero},
        name=f"{S.name}⋉E" if S.name else "",
    )


def filter_point(e: str) -> Obj:
    """The principal filter e^↑"""
    return f"{e}^"


def germ(S: FiniteInverseSemigroup, t: str) -> str:
    """The germ [t, (t*t)^↑], stored by its normalized element t"""
    return f"[{t};{filter_point(S.source(t))}]"


@dataclass(frozen=True, eq=False)
class UniversalGroupoid:
    """G_S with the germ and filter naming and the compact-open sets U_e"""
    semigroup: FiniteInverseSemigroup
    groupoid: FiniteGroupoid
    germs: Mapping[str, str]
    filters: Mapping[str, Obj]
    basis: Mapping[str, Tuple[Obj, ...]]
    elements: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.elements.update({g: t for t, g in self.germs.items()})

    def normalization(self, discrete: FiniteGroupoid) -> GroupoidHomomorphism:
        """S ⋉ E^× -> G_S, s ↦ [s, (s*s)^↑]"""
        return build_homomorphism(discrete, self.groupoid, dict(self.filters), dict(self.germs))


def universal_groupoid(S: FiniteInverseSemigroup) -> UniversalGroupoid:
    """
    G_S = S ⋉ Ê.  A germ [s, f^↑] with f ≤ s*s is normalized to s·f, so the
    arrows are the nonzero elements t, going from (t*t)^↑ to (tt*)^↑.
    """
    filters = {e: filter_point(e) for e in S.nonzero_idempotents}
    germs = {t: germ(S, t) for t in S.nonzero}
    arrows = {germs[t]: (filters[S.source(t)], filters[S.range(t)]) for t in S.nonzero}
    mul = {
        (germs[s], germs[t]): germs[S.mul(s, t)]
        for s in S.nonzero for t in S.nonzero
        if S.source(s) == S.range(t)
    }
    inv = {germs[t]: germs[S.star(t)] for t in S.nonzero}
    G = build_groupoid(filters.values(), arrows, mul, inv, name=f"G_{S.name}" if S.name else "")
    basis = {e: tuple(filters[f] for f in S.down_set(e)) for e in S.nonzero_idempotents}
    return UniversalGroupoid(S, G, germs, filters, basis)


# ==================== Ω_S ====================


def _filter_set_point(e: str, f: str) -> str:
    """The point f^↑ of U_e inside the disjoint union of the U_e"""
    return f"{e}/{f}^"


@dataclass(frozen=True, eq=False)
class OmegaFactorization:
    """
    Ω_S as the composite S ⋉ E^× -> L -> G_S of the action correspondence for
    Z = ⊔_e U_e and the correspondence of ψ : L = (S ⋉ E^×) ⋉ Z -> G_S.
    """
    semigroup: FiniteInverseSemigroup
    discrete: FiniteGroupoid
    universal: UniversalGroupoid
    filters: GSet
    action: ExplicitCorrespondence
    psi: GroupoidHomomorphism
    homomorphism: ExplicitCorrespondence
    composite: EtaleCorrespondence


def filter_gset(S: FiniteInverseSemigroup, G: FiniteGroupoid) -> GSet:
    """Z = ⊔_e U_e with s·(e, f^↑) = (ss*, (sfs*)^↑)"""
    points, anchor, action = [], {}, {}
    for e in S.nonzero_idempotents:
        for f in S.down_set(e):
            p = _filter_set_point(e, f)
            points.append(p)
            anchor[p] = e
            for s in G.arrows_from(e):
                action[(s, p)] = _filter_set_point(S.range(s), S.mul(S.mul(s, f), S.star(s)))
    return build_gset(G, points, anchor, action)


def omega_factorization(S: FiniteInverseSemigroup) -> OmegaFactorization:
    G = discrete_groupoid(S)
    universal = universal_groupoid(S)
    Z = filter_gset(S, G)
    action = from_action(Z)
    L = action.correspondence.target
    objects, arrows = {}, {}
    for e in S.nonzero_idempotents:
        for f in S.down_set(e):
            z = _filter_set_point(e, f)
            objects[z] = universal.filters[f]
            for s in G.arrows_from(e):
                arrows[f"{s}@{z}"] = universal.germs[S.mul(s, f)]
    psi = build_homomorphism(L, universal.groupoid, objects, arrows)
    homomorphism = from_homomorphism(psi)
    composite = compose(action.correspondence, homomorphism.correspondence)
    logger.debug("Ω_S for %r: %d points", S, len(composite.points))
    return OmegaFactorization(S, G, universal, Z, action, psi, homomorphism, composite)


def omega_S(S: FiniteInverseSemigroup) -> EtaleCorrespondence:
    return omega_factorization(S).composite


def omega_S_displayed(S: FiniteInverseSemigroup) -> EtaleCorrespondence:
    """
    ⊔_e {[t, χ] ∈ G_S : t·χ ∈ U_e} with points "e|germ", ρ = e, σ the germ's
    source, s·(e, [t]) = (ss*, [st]) and right action by germ multiplication.
    """
    G = discrete_groupoid(S)
    universal = universal_groupoid(S)
    GS = universal.groupoid
    pairs = [(e, t) for e in S.nonzero_idempotents for t in S.nonzero if S.leq(S.range(t), e)]

    def point(e: str, t: str) -> str:
        return f"{e}|{universal.germs[t]}"

    left, right = {}, {}
    for e, t in pairs:
        for s in G.arrows_from(e):
            left[(s, point(e, t))] = point(S.range(s), S.mul(s, t))
        for h in GS.arrows_to(GS.s(universal.germs[t])):
            right[(point(e, t), h)] = point(e, universal.elements[GS.compose(universal.germs[t], h)])
    return build_correspondence(
        G,
        GS,
        [point(e, t) for e, t in pairs],
        {point(e, t): e for e, t in pairs},
        {point(e, t): universal.filters[S.source(t)] for e, t in pairs},
        left,
        right,
        name="Ω_S displayed",
    )


def omega_S_comparison(S: FiniteInverseSemigroup) -> ValidationReport:
    """The composite Ω_S and the displayed bispace agree through [g@z, z|h] ↦ (r(g), ψ(g@z)·h)"""
    factorization = omega_factorization(S)
    composite = factorization.composite
    displayed = omega_S_displayed(S)
    G, GS = factorization.discrete, factorization.universal.groupoid
    action, hom = factorization.action.correspondence, factorization.homomorphism.correspondence
    hom_arrow = {f"{x}|{h}": h for x in hom.source.objects for h in GS.arrows_to(factorization.psi.on_object(x))}

    bijection = {}
    for p in composite.points:
        w, l = split_composite_point(p)
        bijection[p] = f"{action.rho[w]}|{GS.compose(factorization.psi(w), hom_arrow[l])}"
    if sorted(bijection.values()) != list(displayed.points):
        return ValidationReport.violation("omega", "composite Ω_S is not in bijection with the displayed bispace")
    for p, q in bijection.items():
        if composite.rho[p] != displayed.rho[q] or composite.sigma[p] != displayed.sigma[q]:
            return ValidationReport.violation("omega", "anchors differ", point=p)
        for g in G.arrows_from(composite.rho[p]):
            if bijection[composite.left[(g, p)]] != displayed.left[(g, q)]:
                return ValidationReport.violation("omega", "left actions differ", arrow=g, point=p)
        for h in GS.arrows_to(composite.sigma[p]):
            if bijection[composite.right[(p, h)]] != displayed.right[(q, h)]:
                return ValidationReport.violation("omega", "right actions differ", point=p, arrow=h)
    return ValidationReport.ok()


# ==================== CHAIN ISOMORPHISM ====================


@dataclass
class ChainIsoReport:
    """Per-degree triangularity of ψ_*∘τ* and the induced maps on homology"""
    passed: bool = True
    degrees: List[Dict[str, object]] = field(default_factory=list)
    witness: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {'passed': self.passed, 'degrees': self.degrees, 'witness': self.witness}

    def __bool__(self) -> bool:
        return self.passed


def chain_iso_check(S: FiniteInverseSemigroup, max_degree: int) -> ChainIsoReport:
    """
    χ_{x} ↦ χ_{V_x} in degrees ≤ max_degree: the matrix of ψ_*∘τ* is triangular
    with ±1 diagonal once G_S chains are identified with S ⋉ E^× chains by germ
    normalization, ordered by the size of the down-set below the last source.
    """
    fac = omega_factorization(S)
    G, universal = fac.discrete, fac.universal
    L = fac.action.correspondence.target
    C_G = bar_complex(G, trivial_module(G), max_degree + 1)
    C_L = bar_complex(L, trivial_module(L), max_degree)
    C_S = bar_complex(universal.groupoid, trivial_module(universal.groupoid), max_degree + 1)
    tau, psi = fac.action.lift, fac.homomorphism.lift

    def height(n: int, t: Tuple[str, ...]) -> int:
        return len(S.down_set(t[0] if n == 0 else S.source(t[-1])))

    report = ChainIsoReport()
    for n in range(max_degree + 1):
        matrix = psi.coinvariant_matrix(n, C_L, C_S) @ tau.coinvariant_matrix(n, C_G, C_L)
        row_keys = []
        for t, _ in C_S.bases[n]:
            if n == 0:
                row_keys.append((next(e for e, x in universal.filters.items() if x == t[0]),))
            else:
                row_keys.append(tuple(universal.elements[g] for g in t))
        entry: Dict[str, object] = {'degree': n, 'size': matrix.cols}
        triangular = matrix.rows == matrix.cols
        abs_determinant = 1
        for col, (t, _) in enumerate(C_G.bases[n]):
            if not triangular:
                break
            for row, value in matrix.column(col).items():
                key = row_keys[row]
                if key == t:
                    triangular = abs(value) == 1
                    abs_determinant *= abs(value)
                elif not height(n, key) < height(n, t):
                    triangular = False
                if not triangular:
                    report.witness = {'degree': n, 'column': list(t), 'row': list(key), 'value': value}
                    break
        entry['triangular'] = triangular
        entry['abs_determinant'] = abs_determinant if triangular else None
        if triangular and n < C_G.max_degree:
            induced = induced_subquotient_map(matrix, homology_groups(C_G, n), homology_groups(C_S, n))
            entry['homology'] = str(induced.target.presentation)
            entry['isomorphism'] = induced.is_isomorphism()
        report.degrees.append(entry)
        if not triangular or abs_determinant != 1 or not entry.get('isomorphism', True):
            report.passed = False
            logger.error("chain map not unimodular in degree %d for %r", n, S)
            break
    return report


# ==================== STABILISER DECOMPOSITION ====================


def orbit_representatives(S: FiniteInverseSemigroup) -> Tuple[str, ...]:
    """Least idempotent of each orbit of S on E^×"""
    return tuple(orbit[0] for orbit in discrete_groupoid(S).orbits())


def stabilizer(S: FiniteInverseSemigroup, e: str) -> FiniteGroupoid:
    """S_e = {s : s*s = e = ss*} as a group"""
    return isotropy_group(discrete_groupoid(S), e)


def stabilizer_decomposition(S: FiniteInverseSemigroup, max_degree: int) -> HomologyComparison:
    """H_n(G_S) against ⊕_{[e]} H_n(S_e) for n ≤ max_degree"""
    universal = universal_groupoid(S).groupoid
    left = homology(universal, max_degree=max_degree)
    right = [FGAbelianGroup() for _ in range(max_degree + 1)]
    for e in orbit_representatives(S):
        for n, group in enumerate(homology(stabilizer(S, e), max_degree=max_degree)):
            right[n] = right[n].direct_sum(group)
    logger.debug("stabiliser decomposition for %r: %s", S, [str(g) for g in right])
    return HomologyComparison(left=tuple(left), right=tuple(right), labels=("universal", "stabilizers"))
