"""
Functoriality Suite - H_n(Λ∘Ω) = H_n(Λ)∘H_n(Ω), H_n(id) = id, the
coinvariant square of δ for random composable pairs of correspondences, and
agreement of the closed-form chain maps with the solver lift
"""

from typing import Any, Dict, Iterator, Tuple

from algebra.correspondence import (
    EtaleCorrespondence,
    action_correspondence,
    compose,
    delta_composition_check,
    from_subgroupoid,
    homology_maps,
    homomorphism_correspondence,
    identity,
)
from algebra.exceptions import ValidationReport
from algebra.groupoid import action_groupoid, action_projection
from core.corpus import (
    correspondence_from,
    explicit_from,
    random_correspondence,
    random_explicit,
    random_gset,
    random_module,
    random_subgroupoid,
)
from core.workspace import Workspace
from suites.base_suite import BaseSuite, Case, SuiteID, outcome

EXPLICIT_LIFT_DEGREE = 3


class FunctorialitySuite(BaseSuite):
    """
    Ω : G -> H is an inclusion, homomorphism or action correspondence.
    Λ : H -> K is the inclusion of a random subgroupoid K of H, the action
    correspondence of a random H-set, or, when H = G ⋉ X, the correspondence
    of the projection back to G.
    """

    def __init__(self, settings, corpus=None):
        super().__init__(SuiteID.FUNCTORIALITY, settings, corpus)

    def instances(self) -> Iterator[Case]:
        rng = self.rng()
        for k in range(self.config.instances):
            workspace = Workspace()
            omega_kind = random_correspondence(rng, self.size_bound, workspace)
            G, H = workspace.groupoids['G'], workspace.groupoids['H']

            lambda_kind = rng.choice(('subgroupoid', 'projection' if omega_kind == 'action' else 'action'))
            if lambda_kind == 'subgroupoid':
                K = random_subgroupoid(rng, H)
                workspace.register('groupoids', 'K', K)
            elif lambda_kind == 'action':
                Y = random_gset(rng, H)
                K = action_groupoid(Y)
                workspace.register('gsets', 'Y', Y)
                workspace.register('groupoids', 'K', K)
            else:
                K = G
                workspace.register('homomorphisms', 'pi', action_projection(workspace.gsets['X'], H))
            workspace.register('modules', 'N', random_module(rng, K))

            explicit_kind = random_explicit(rng, workspace)
            params = {
                'omega': omega_kind,
                'lambda': lambda_kind,
                'explicit': explicit_kind,
                'max_degree': self.config.max_degree,
            }
            yield Case(name=f"functoriality-{k}", workspace=workspace, params=params)

    def _correspondences(self, case: Case) -> Tuple[EtaleCorrespondence, EtaleCorrespondence]:
        ws = case.workspace
        omega = correspondence_from(case.params['omega'], ws)
        lambda_kind = case.params['lambda']
        if lambda_kind == 'projection':
            lam = homomorphism_correspondence(ws.homomorphisms['pi'])
        elif lambda_kind == 'action':
            lam = action_correspondence(ws.gsets['Y'], ws.groupoids['K'])
        else:
            lam = from_subgroupoid(ws.groupoids['H'], ws.groupoids['K'])
        return omega, lam

    def _check_explicit(self, case: Case) -> Dict[str, Any]:
        """Closed-form and solver lifts give the same maps; collapses of pair groupoids give isomorphisms"""
        explicit = explicit_from(case.params['explicit'], case.workspace)
        solved = homology_maps(explicit.correspondence, EXPLICIT_LIFT_DEGREE)
        lifted = homology_maps(explicit.correspondence, EXPLICIT_LIFT_DEGREE, lift=explicit.lift)
        morita = case.params['explicit'] == 'collapse'
        for n, (a, b) in enumerate(zip(solved, lifted)):
            if a != b or (morita and not a.is_isomorphism()):
                report = ValidationReport.violation(
                    "lift", "solver and explicit lifts disagree or the Morita map is not invertible",
                    degree=n, solver=a.to_dict(), explicit=b.to_dict(),
                )
                return outcome('lift', report)
        return outcome('lift', ValidationReport.ok())

    def _process_input(self, case: Case) -> Dict[str, Any]:
        max_degree = case.params['max_degree']
        omega, lam = self._correspondences(case)

        for n, f in enumerate(homology_maps(identity(omega.source), max_degree)):
            if not f.is_identity():
                report = ValidationReport.violation("identity", "identity correspondence is not the identity", degree=n, map=f.to_dict())
                return outcome('identity', report)

        result = self._check_explicit(case)
        if not result['passed']:
            return result

        first = homology_maps(omega, max_degree)
        second = homology_maps(lam, max_degree)
        composite = homology_maps(compose(omega, lam), max_degree)
        for n in range(max_degree + 1):
            expected = second[n].compose(first[n])
            if composite[n] != expected:
                report = ValidationReport.violation(
                    "functoriality", "H_n(Λ∘Ω) differs from H_n(Λ)∘H_n(Ω)",
                    degree=n, composite=composite[n].to_dict(), product=expected.to_dict(),
                )
                return outcome('functoriality', report)

        report = delta_composition_check(omega, lam, case.workspace.modules['N'])
        return outcome('delta', report, points=len(omega.points), composite_points=len(compose(omega, lam).points))
