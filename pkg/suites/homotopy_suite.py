"""
Homotopy Suite - contracting homotopies, the two boundary conventions and the
known homology of the named corpus groupoids
"""

from typing import Any, Dict, Iterator

from algebra.exceptions import ValidationReport
from algebra.gmodule import module_resolution_check, trivial_module
from algebra.groupoid import homotopy_check
from algebra.homology import homology, two_path_check
from core.workspace import Workspace
from suites.base_suite import BaseSuite, Case, SuiteID, outcome

# The module-level resolution is checked to this degree at most
RESOLUTION_DEGREE = 2


class HomotopySuite(BaseSuite):

    def __init__(self, settings, corpus=None):
        super().__init__(SuiteID.HOMOTOPY, settings, corpus)

    def instances(self) -> Iterator[Case]:
        for entry in self.corpus.groupoids():
            workspace = Workspace()
            workspace.register('groupoids', entry.name, self.corpus.build(entry))
            params = {
                'instance': entry.name,
                'max_degree': entry.degree_cap(self.config.max_degree),
                'expected': list(entry.expected),
            }
            yield Case(name=entry.name, workspace=workspace, params=params)

    def _process_input(self, case: Case) -> Dict[str, Any]:
        G = case.workspace.groupoids[case.params['instance']]
        cap = case.params['max_degree']

        for n in range(-1, cap):
            report = homotopy_check(G, n)
            if not report:
                return outcome('homotopy', report)

        mismatch = two_path_check(G, cap)
        if mismatch is not None:
            report = ValidationReport.violation("two_path", "bar and nerve boundaries disagree", degree=mismatch)
            return outcome('two_path', report)

        report = module_resolution_check(trivial_module(G), min(cap, RESOLUTION_DEGREE))
        if not report:
            return outcome('resolution', report)

        expected = case.params['expected'][:cap + 1]
        if expected:
            computed = [str(group) for group in homology(G, max_degree=len(expected) - 1)]
            if computed != expected:
                report = ValidationReport.violation("homology", "homology differs from the recorded value", computed=computed, expected=expected)
                return outcome('homology', report)
        return {'check': 'homology', 'passed': True, 'details': {'arrows': len(G), 'max_degree': cap}}
