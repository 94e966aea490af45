"""
Shapiro Suite - H_*(G; Ind N) against H_*(H; N) on random pairs H ⊂ G
"""

from typing import Any, Dict, Iterator

from algebra.correspondence import from_subgroupoid, induce_module
from algebra.exceptions import ValidationReport
from algebra.gmodule import induce
from algebra.homology import shapiro_check
from core.corpus import random_groupoid, random_module, random_subgroupoid
from core.workspace import Workspace
from suites.base_suite import BaseSuite, Case, SuiteID, outcome


class ShapiroSuite(BaseSuite):

    def __init__(self, settings, corpus=None):
        super().__init__(SuiteID.SHAPIRO, settings, corpus)

    def instances(self) -> Iterator[Case]:
        rng = self.rng()
        for k in range(self.config.instances):
            G = random_groupoid(rng, self.size_bound)
            H = random_subgroupoid(rng, G)
            workspace = Workspace()
            workspace.register('groupoids', 'G', G)
            workspace.register('groupoids', 'H', H)
            workspace.register('modules', 'N', random_module(rng, H))
            yield Case(name=f"shapiro-{k}", workspace=workspace, params={'max_degree': self.config.max_degree})

    def _process_input(self, case: Case) -> Dict[str, Any]:
        ws = case.workspace
        G, H, N = ws.groupoids['G'], ws.groupoids['H'], ws.modules['N']

        # Induction along the inclusion correspondence is the subgroupoid induction
        if induce_module(from_subgroupoid(G, H), N) != induce(G, H, N):
            report = ValidationReport.violation("induction", "Ind_Ω N differs from Ind^G_H N for the inclusion")
            return outcome('induction', report)

        comparison = shapiro_check(G, H, N, case.params['max_degree'])
        result = {'check': 'shapiro', 'passed': comparison.passed, 'details': {'arrows': len(G)}}
        if not comparison.passed:
            result['witness'] = comparison.to_dict()
        return result
