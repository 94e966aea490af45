"""
Base Suite Template for the verification harness
Abstract class defining how a suite draws instances, checks them and reports
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional
import logging
import random

from algebra.exceptions import AmpleError, ValidationReport
from core.corpus import Corpus, load_corpus
from core.settings import Settings
from core.workspace import Workspace, dump_counterexample


class SuiteID(Enum):
    """Enumeration of all suite identifiers"""
    ADJUNCTION = "adjunction"
    SHAPIRO = "shapiro"
    FUNCTORIALITY = "functoriality"
    HOMOTOPY = "homotopy"
    KAPPA = "kappa"
    INVSEMI = "invsemi"


@dataclass
class Case:
    """One verification instance: the objects it needs plus scalar parameters"""
    name: str
    workspace: Workspace
    params: Dict[str, Any] = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    counterexamples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'passed': self.passed,
            'checked': self.checked,
            'failures': self.failures,
            'counterexamples': self.counterexamples,
        }


def outcome(check: str, report: ValidationReport, **details: Any) -> Dict[str, Any]:
    """Result dictionary of one check from a validation report"""
    result = {'check': check, 'passed': report.passed, 'details': details}
    if not report.passed:
        result['witness'] = report.to_dict()
    return result


class BaseSuite(ABC):
    """
    Abstract base class for all verification suites.

    Subclasses implement instances() to draw cases and _process_input() to
    check one case; process() wraps the check with the result contract.
    """

    def __init__(self, suite_id: SuiteID, settings: Settings, corpus: Optional[Corpus] = None):
        self.suite_id = suite_id
        self.settings = settings
        self.config = settings.suite(suite_id.value)
        self.logger = logging.getLogger(f"ample.suite.{suite_id.value}")
        self._corpus = corpus
        self.active = True

    @property
    def corpus(self) -> Corpus:
        if self._corpus is None:
            self._corpus = load_corpus(self.settings.resolve(self.settings.corpus_path))
        return self._corpus

    @property
    def size_bound(self) -> int:
        if self.config.size_bound is None:
            return self.settings.size_bound
        return min(self.config.size_bound, self.settings.size_bound)

    def rng(self) -> random.Random:
        """Per-suite stream so suites stay reproducible regardless of scheduling"""
        return random.Random(f"{self.settings.seed}:{self.suite_id.value}")

    # ==================== RESULT CONTRACT ====================

    def _check_constraints(self, output: Dict[str, Any]) -> bool:
        """Every result names its check, says whether it passed, and carries a witness on failure"""
        if 'check' not in output or 'passed' not in output:
            return False
        return bool(output['passed']) or 'witness' in output

    # ==================== CORE PROCESSING ====================

    def process(self, case: Case) -> Dict[str, Any]:
        """
        Main entry point for one case.
        Template Method pattern: subclasses implement _process_input().
        """
        if not self.active:
            raise RuntimeError(f"{self.suite_id.value} suite not active")
        try:
            output = self._process_input(case)
        except AmpleError as e:
            self.logger.error(f"Check raised on {case.name}: {e}")
            output = {
                'check': 'engine',
                'passed': False,
                'witness': {'error': type(e).__name__, 'message': str(e)},
                'details': {},
            }
        if not self._check_constraints(output):
            raise ValueError(f"{self.suite_id.value} result violates the report contract")
        if not output['passed']:
            self.logger.error(f"{case.name}: {output['check']} failed")
        return output

    @abstractmethod
    def _process_input(self, case: Case) -> Dict[str, Any]:
        """
        Suite-specific checks on one case; returns the first failing check's
        result, or a passing result for the last check.
        """

    @abstractmethod
    def instances(self) -> Iterator[Case]:
        """Cases of this run, deterministic for a fixed seed"""

    # ==================== RUNS ====================

    def run(self, dump: bool = True) -> SuiteReport:
        report = SuiteReport(suite=self.suite_id.value)
        for case in self.instances():
            output = self.process(case)
            report.checked += 1
            if output['passed']:
                continue
            failure = {'instance': case.name, 'check': output['check'], 'witness': output['witness']}
            report.failures.append(failure)
            if dump:
                path = dump_counterexample(
                    Path(self.settings.resolve(self.settings.dump_dir)),
                    self.suite_id.value,
                    output['check'],
                    case.workspace,
                    case.params,
                    output['witness'],
                )
                report.counterexamples.append(str(path))
        self.logger.info(f"{self.suite_id.value}: {report.checked} cases, {len(report.failures)} failures")
        return report

    def replay(self, record: Dict[str, Any], workspace: Workspace) -> Dict[str, Any]:
        """Re-run the check of a dumped counterexample"""
        return self.process(Case(name=f"replay:{record['check']}", workspace=workspace, params=record['params']))
