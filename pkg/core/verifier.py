"""
Verifier - runs the verification suites
Suites run concurrently in worker threads; reports come back in request order.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import asyncio
import logging

from core.corpus import Corpus
from core.settings import SUITE_NAMES, Settings
from core.workspace import load_counterexample
from suites.adjunction_suite import AdjunctionSuite
from suites.base_suite import BaseSuite, SuiteReport
from suites.functoriality_suite import FunctorialitySuite
from suites.homotopy_suite import HomotopySuite
from suites.invsemi_suite import InverseSemigroupSuite
from suites.kappa_suite import KappaSuite
from suites.shapiro_suite import ShapiroSuite

SUITE_CLASSES = {
    'adjunction': AdjunctionSuite,
    'shapiro': ShapiroSuite,
    'functoriality': FunctorialitySuite,
    'homotopy': HomotopySuite,
    'kappa': KappaSuite,
    'invsemi': InverseSemigroupSuite,
}


class Verifier:
    """
    Suite orchestrator.
    Holds one instance of every suite, sharing settings and the corpus.
    """

    def __init__(self, settings: Settings, corpus: Optional[Corpus] = None, dump: bool = True):
        self.settings = settings
        self.dump = dump
        self.logger = logging.getLogger("ample.verifier")
        self.suites: Dict[str, BaseSuite] = {
            name: suite_class(settings, corpus) for name, suite_class in SUITE_CLASSES.items()
        }

    def resolve_names(self, names: Sequence[str]) -> List[str]:
        if not names or 'all' in names:
            return list(SUITE_NAMES)
        unknown = [n for n in names if n not in self.suites]
        if unknown:
            raise ValueError(f"Unknown suite(s): {', '.join(unknown)}")
        return list(dict.fromkeys(names))

    async def run(self, names: Sequence[str] = ('all',)) -> List[SuiteReport]:
        names = self.resolve_names(names)
        self.logger.info(f"Running suites: {', '.join(names)} (seed {self.settings.seed})")
        reports = await asyncio.gather(
            *(asyncio.to_thread(self.suites[name].run, self.dump) for name in names)
        )
        for report in reports:
            status = "passed" if report.passed else f"{len(report.failures)} failures"
            self.logger.info(f"{report.suite}: {report.checked} checked, {status}")
        return list(reports)

    def replay(self, path: Path) -> Dict[str, Any]:
        """Re-run the check recorded in a counterexample file"""
        record, workspace = load_counterexample(path)
        if record['suite'] not in self.suites:
            raise ValueError(f"Counterexample names unknown suite {record['suite']!r}")
        self.logger.info(f"Replaying {record['suite']}/{record['check']} from {path}")
        return self.suites[record['suite']].replay(record, workspace)

    def get_suite_status(self) -> Dict[str, Any]:
        return {
            name: {'active': suite.active, 'instances': suite.config.instances, 'max_degree': suite.config.max_degree}
            for name, suite in self.suites.items()
        }
