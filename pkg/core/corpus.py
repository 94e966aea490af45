"""
Corpus of verification instances
Named instances from corpus.yaml and seeded randomized instances bounded by
the configured arrow count.
"""

from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple
import logging
import random

import yaml

from algebra.correspondence import (
    EtaleCorrespondence,
    ExplicitCorrespondence,
    action_correspondence,
    from_action,
    from_homomorphism,
    from_subgroupoid,
    homomorphism_correspondence,
)
from algebra.gmodule import GModule, direct_sum, gset_module, trivial_module
from algebra.groupoid import (
    FiniteGroupoid,
    GSet,
    action_groupoid,
    action_projection,
    build_homomorphism,
    cyclic_group,
    disjoint_union,
    empty_groupoid,
    from_group,
    full_subgroupoid,
    left_regular_gset,
    pair_groupoid,
    product_groupoid,
    subgroupoid,
    trivial_group,
    unit_space_gset,
)
from algebra.invsemi import (
    FiniteInverseSemigroup,
    chain_semilattice,
    group_semigroup,
    symmetric_inverse_monoid,
)
from core.workspace import Workspace

logger = logging.getLogger("ample.corpus")


class RecipeError(ValueError):
    """A corpus recipe names an unknown family or lacks parameters"""


def symmetric_group(degree: int) -> FiniteGroupoid:
    """S_n with elements named by their one-line notation"""
    perms = list(permutations(range(degree)))
    name = {p: "".join(str(i + 1) for i in p) for p in perms}
    table = {
        (name[p], name[q]): name[tuple(p[q[i]] for i in range(degree))]
        for p in perms for q in perms
    }
    return from_group([name[p] for p in perms], table, name=f"S{degree}")


def build_groupoid_recipe(recipe: Mapping[str, Any]) -> FiniteGroupoid:
    family = recipe.get('family')
    params = recipe.get('params') or {}
    builders: Dict[str, Callable[[], FiniteGroupoid]] = {
        'trivial': trivial_group,
        'empty': empty_groupoid,
        'cyclic': lambda: cyclic_group(params['order']),
        'symmetric_group': lambda: symmetric_group(params['degree']),
        'pair': lambda: pair_groupoid(params['k']),
        'product': lambda: product_groupoid(*[build_groupoid_recipe(r) for r in params['factors']]),
        'disjoint_union': lambda: disjoint_union([build_groupoid_recipe(r) for r in params['components']]),
        'regular_action': lambda: action_groupoid(left_regular_gset(build_groupoid_recipe(params['group']))),
    }
    if family not in builders:
        raise RecipeError(f"Unknown groupoid family: {family}")
    try:
        return builders[family]()
    except KeyError as e:
        raise RecipeError(f"Recipe for {family} missing parameter {e}") from None


def build_semigroup_recipe(recipe: Mapping[str, Any]) -> FiniteInverseSemigroup:
    family = recipe.get('family')
    params = recipe.get('params') or {}
    builders: Dict[str, Callable[[], FiniteInverseSemigroup]] = {
        'symmetric_inverse': lambda: symmetric_inverse_monoid(params['n']),
        'chain': lambda: chain_semilattice(params['names']),
        'group': lambda: group_semigroup(build_groupoid_recipe(params['group'])),
    }
    if family not in builders:
        raise RecipeError(f"Unknown semigroup family: {family}")
    try:
        return builders[family]()
    except KeyError as e:
        raise RecipeError(f"Recipe for {family} missing parameter {e}") from None


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str
    recipe: Mapping[str, Any]
    expected: Tuple[str, ...] = ()
    max_degree: Optional[int] = None

    def degree_cap(self, requested: int) -> int:
        return requested if self.max_degree is None else min(requested, self.max_degree)


@dataclass
class Corpus:
    entries: List[CorpusEntry] = field(default_factory=list)
    _cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    def groupoids(self) -> List[CorpusEntry]:
        return [e for e in self.entries if e.kind == "groupoid"]

    def semigroups(self) -> List[CorpusEntry]:
        return [e for e in self.entries if e.kind == "semigroup"]

    def build(self, entry: CorpusEntry):
        if entry.name not in self._cache:
            builder = build_groupoid_recipe if entry.kind == "groupoid" else build_semigroup_recipe
            instance = builder(entry.recipe)
            if not instance.name:
                instance.name = entry.name
            self._cache[entry.name] = instance
        return self._cache[entry.name]

    def get(self, name: str) -> CorpusEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(f"No corpus instance named {name}")


def load_corpus(path: Path) -> Corpus:
    if not path.exists():
        raise FileNotFoundError(f"Corpus not found at {path}")
    with open(path, 'r') as f:
        data = yaml.safe_load(f) or {}
    entries = []
    for kind, section in (("groupoid", "groupoids"), ("semigroup", "semigroups")):
        for name, recipe in (data.get(section) or {}).items():
            entries.append(CorpusEntry(
                name=name,
                kind=kind,
                recipe=recipe,
                expected=tuple(recipe.get('expected', ())),
                max_degree=recipe.get('max_degree'),
            ))
    logger.debug("Loaded %d corpus entries from %s", len(entries), path)
    return Corpus(entries)


# ==================== RANDOMIZED INSTANCES ====================


def random_transitive(rng: random.Random, size_bound: int) -> FiniteGroupoid:
    """Z/m × P_k with m·k² arrows within the bound"""
    options = [(m, k) for m in range(1, 5) for k in range(1, 4) if m * k * k <= size_bound]
    m, k = rng.choice(options)
    if k == 1:
        return cyclic_group(m)
    if m == 1:
        return pair_groupoid(k)
    return product_groupoid(cyclic_group(m), pair_groupoid(k))


def random_groupoid(rng: random.Random, size_bound: int) -> FiniteGroupoid:
    """A disjoint union of one or two transitive pieces"""
    first = random_transitive(rng, size_bound)
    remaining = size_bound - len(first)
    if remaining >= 1 and rng.random() < 0.5:
        second = random_transitive(rng, remaining)
        return disjoint_union([first, second])
    return first


def cyclic_subgroup(G: FiniteGroupoid, g: str) -> List[str]:
    """Powers of an isotropy arrow g"""
    powers = [G.unit(G.s(g))]
    h = g
    while h != powers[0]:
        powers.append(h)
        h = G.compose(g, h)
    return powers


def random_subgroupoid(rng: random.Random, G: FiniteGroupoid) -> FiniteGroupoid:
    """
    A full subgroupoid on a nonempty object subset, its unit space, or the
    unit space enlarged by a cyclic subgroup of one isotropy group
    """
    k = rng.randint(1, len(G.objects))
    objects = sorted(rng.sample(list(G.objects), k))
    roll = rng.random()
    if roll < 0.5:
        return full_subgroupoid(G, objects)
    if roll < 0.7:
        return subgroupoid(G, objects, [])
    x = rng.choice(objects)
    return subgroupoid(G, objects, cyclic_subgroup(G, rng.choice(G.isotropy(x))))


def random_gset(rng: random.Random, G: FiniteGroupoid) -> GSet:
    return rng.choice([unit_space_gset, left_regular_gset])(G)


def random_module(rng: random.Random, G: FiniteGroupoid) -> GModule:
    """Trivial coefficients, a permutation module, or a sum of both"""
    choice = rng.randrange(3)
    if choice == 0:
        return trivial_module(G)
    permutation = gset_module(random_gset(rng, G))
    if choice == 1:
        return permutation
    return direct_sum(trivial_module(G), permutation)


# ==================== RANDOMIZED CORRESPONDENCES ====================

CORRESPONDENCE_KINDS = ('subgroupoid', 'homomorphism', 'action')


def random_correspondence(rng: random.Random, size_bound: int, workspace: Workspace) -> str:
    """
    Register the data of a random Ω : G -> H in the workspace and return its kind.

    subgroupoid:  H ⊂ G, Ω the inclusion correspondence
    homomorphism: G = H ⋉ X for a random left H-set X, Ω = Ω_π of the projection
    action:       H = G ⋉ X for a random left G-set X, Ω the action correspondence
    """
    kind = rng.choice(CORRESPONDENCE_KINDS)
    base = random_groupoid(rng, size_bound)
    if kind == 'subgroupoid':
        workspace.register('groupoids', 'G', base)
        workspace.register('groupoids', 'H', random_subgroupoid(rng, base))
    elif kind == 'homomorphism':
        X = random_gset(rng, base)
        G = action_groupoid(X)
        workspace.register('groupoids', 'G', G)
        workspace.register('groupoids', 'H', base)
        workspace.register('gsets', 'X', X)
        workspace.register('homomorphisms', 'phi', action_projection(X, G))
    else:
        X = random_gset(rng, base)
        workspace.register('groupoids', 'G', base)
        workspace.register('groupoids', 'H', action_groupoid(X))
        workspace.register('gsets', 'X', X)
    return kind


def correspondence_from(kind: str, workspace: Workspace) -> EtaleCorrespondence:
    """Rebuild the Ω registered by random_correspondence"""
    G, H = workspace.groupoids['G'], workspace.groupoids['H']
    if kind == 'subgroupoid':
        return from_subgroupoid(G, H)
    if kind == 'homomorphism':
        return homomorphism_correspondence(workspace.homomorphisms['phi'])
    if kind == 'action':
        return action_correspondence(workspace.gsets['X'], H)
    raise RecipeError(f"Unknown correspondence kind: {kind}")


def random_explicit(rng: random.Random, workspace: Workspace) -> str:
    """
    A small correspondence with a closed-form chain map: a quotient Z/m -> Z/d,
    a collapse P_k -> trivial group, or a left regular action.
    Objects are registered under "E:" names.
    """
    kind = rng.choice(('quotient', 'collapse', 'regular'))
    if kind == 'quotient':
        m = rng.choice((2, 3, 4))
        d = rng.choice([d for d in range(1, m + 1) if m % d == 0])
        source, target = cyclic_group(m), cyclic_group(d)
        arrows = {g: str(int(g) % d) for g in source.arrows}
        phi = build_homomorphism(source, target, {"*": "*"}, arrows)
    elif kind == 'collapse':
        source, target = pair_groupoid(rng.choice((2, 3))), trivial_group()
        phi = build_homomorphism(source, target, {x: "*" for x in source.objects}, {g: "0" for g in source.arrows})
    else:
        source = rng.choice((cyclic_group(2), cyclic_group(3), pair_groupoid(2)))
        workspace.register('groupoids', 'E:source', source)
        workspace.register('gsets', 'E:X', left_regular_gset(source))
        return kind
    workspace.register('groupoids', 'E:source', source)
    workspace.register('groupoids', 'E:target', target)
    workspace.register('homomorphisms', 'E:phi', phi)
    return kind


def explicit_from(kind: str, workspace: Workspace) -> ExplicitCorrespondence:
    if kind == 'regular':
        return from_action(workspace.gsets['E:X'])
    if kind in ('quotient', 'collapse'):
        return from_homomorphism(workspace.homomorphisms['E:phi'])
    raise RecipeError(f"Unknown explicit correspondence kind: {kind}")
