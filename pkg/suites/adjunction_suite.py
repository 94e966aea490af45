"""
Adjunction Suite - triangle identities of induction and restriction
"""

from typing import Any, Dict, Iterator

from algebra.gmodule import triangle_check
from core.corpus import random_groupoid, random_module, random_subgroupoid
from core.workspace import Workspace
from suites.base_suite import BaseSuite, Case, SuiteID, outcome


class AdjunctionSuite(BaseSuite):
    """ε_{Ind N}∘Ind(η_N) = id and Res(ε_M)∘η_{Res M} = id on random pairs H ⊂ G"""

    def __init__(self, settings, corpus=None):
        super().__init__(SuiteID.ADJUNCTION, settings, corpus)

    def instances(self) -> Iterator[Case]:
        rng = self.rng()
        for k in range(self.config.instances):
            G = random_groupoid(rng, self.size_bound)
            H = random_subgroupoid(rng, G)
            workspace = Workspace()
            workspace.register('groupoids', 'G', G)
            workspace.register('groupoids', 'H', H)
            workspace.register('modules', 'N', random_module(rng, H))
            workspace.register('modules', 'M', random_module(rng, G))
            yield Case(name=f"adjunction-{k}", workspace=workspace)

    def _process_input(self, case: Case) -> Dict[str, Any]:
        ws = case.workspace
        G, H = ws.groupoids['G'], ws.groupoids['H']
        report = triangle_check(G, H, ws.modules['N'], ws.modules['M'])
        return outcome('triangle', report, arrows=len(G), sub_arrows=len(H))
