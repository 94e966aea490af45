"""
Inverse Semigroup Suite - the discrete groupoid against the universal groupoid,
Ω_S, the chain-level isomorphism and the stabiliser decomposition
"""

from typing import Any, Dict, Iterator

from algebra.correspondence import validate as validate_correspondence
from algebra.exceptions import ValidationReport
from algebra.invsemi import (
    chain_iso_check,
    discrete_groupoid,
    omega_S,
    omega_S_comparison,
    stabilizer,
    stabilizer_decomposition,
    universal_groupoid,
    validate_inverse_semigroup,
)
from core.workspace import Workspace
from suites.base_suite import BaseSuite, Case, SuiteID, outcome


class InverseSemigroupSuite(BaseSuite):

    def __init__(self, settings, corpus=None):
        super().__init__(SuiteID.INVSEMI, settings, corpus)

    def instances(self) -> Iterator[Case]:
        for entry in self.corpus.semigroups():
            workspace = Workspace()
            workspace.register('semigroups', entry.name, self.corpus.build(entry))
            params = {
                'instance': entry.name,
                'max_degree': entry.degree_cap(self.config.max_degree),
                'expected': list(entry.expected),
            }
            yield Case(name=entry.name, workspace=workspace, params=params)

    def _process_input(self, case: Case) -> Dict[str, Any]:
        S = case.workspace.semigroups[case.params['instance']]
        cap = case.params['max_degree']

        report = validate_inverse_semigroup(S)
        if not report:
            return outcome('semigroup', report)

        discrete = discrete_groupoid(S)
        universal = universal_groupoid(S)
        normalization = universal.normalization(discrete)
        report = normalization.validate()
        if report and len(set(normalization.arrows.values())) != len(universal.groupoid.arrows):
            report = ValidationReport.violation("normalization", "germ normalization is not a bijection")
        if not report:
            return outcome('normalization', report)

        for e in S.nonzero_idempotents:
            isotropy = set(universal.groupoid.isotropy(universal.filters[e]))
            germs = {universal.germs[s] for s in stabilizer(S, e).arrows}
            if isotropy != germs:
                report = ValidationReport.violation(
                    "isotropy", "isotropy at e^ is not the germs of the stabiliser", idempotent=e,
                    isotropy=sorted(isotropy), germs=sorted(germs),
                )
                return outcome('isotropy', report)

        report = validate_correspondence(omega_S(S))
        if report:
            report = omega_S_comparison(S)
        if not report:
            return outcome('omega', report)

        chain = chain_iso_check(S, cap)
        if not chain:
            return {'check': 'chain_iso', 'passed': False, 'witness': chain.to_dict(), 'details': {}}

        comparison = stabilizer_decomposition(S, cap)
        expected = case.params['expected'][:cap + 1]
        computed = [str(group) for group in comparison.left]
        if not comparison.passed or (expected and computed[:len(expected)] != expected):
            witness = dict(comparison.to_dict(), expected=expected)
            return {'check': 'stabilizers', 'passed': False, 'witness': witness, 'details': {}}
        return {'check': 'stabilizers', 'passed': True, 'details': {'homology': computed, 'elements': len(S.elements)}}
