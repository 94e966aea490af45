"""
Kappa Suite - the orbit map κ of a fibre product is an isomorphism
Z[Y] ⊗_G Z[Z] ≅ Z[Y ×_G Z], and its orbit counts give the fibre ranks of
modules induced along random correspondences
"""

from typing import Any, Dict, Iterator

from algebra.correspondence import kappa_rank_check
from algebra.gmodule import tensor_kappa
from algebra.groupoid import right_regular_gset
from core.corpus import correspondence_from, random_correspondence, random_gset
from core.workspace import Workspace
from suites.base_suite import BaseSuite, Case, SuiteID, outcome


class KappaSuite(BaseSuite):

    def __init__(self, settings, corpus=None):
        super().__init__(SuiteID.KAPPA, settings, corpus)

    def instances(self) -> Iterator[Case]:
        rng = self.rng()
        for k in range(self.config.instances):
            workspace = Workspace()
            kind = random_correspondence(rng, self.size_bound, workspace)
            G, H = workspace.groupoids['G'], workspace.groupoids['H']
            workspace.register('gsets', 'Y', right_regular_gset(G))
            workspace.register('gsets', 'Z', random_gset(rng, G))
            workspace.register('gsets', 'W', random_gset(rng, H))
            yield Case(name=f"kappa-{k}", workspace=workspace, params={'omega': kind})

    def _process_input(self, case: Case) -> Dict[str, Any]:
        ws = case.workspace
        product = tensor_kappa(ws.gsets['Y'], ws.gsets['Z'])
        report = product.check()
        if not report:
            return outcome('kappa', report, pairs=len(product.pairs), orbits=len(product))

        omega = correspondence_from(case.params['omega'], ws)
        return outcome('kappa_rank', kappa_rank_check(omega, ws.gsets['W']), points=len(omega.points))
