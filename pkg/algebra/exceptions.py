"""
Exception hierarchy and validation reports shared by all engine modules
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of an exhaustive invariant check.

    `fault_code` is a short machine-readable tag, `reason` the human message and
    `witness` the offending elements (arrows, points, triples, ...).
    """
    passed: bool
    reason: str = ""
    fault_code: str = ""
    witness: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def ok(cls) -> "ValidationReport":
        return cls(passed=True)

    @classmethod
    def violation(cls, fault_code: str, reason: str, **witness: Any) -> "ValidationReport":
        return cls(passed=False, reason=reason, fault_code=fault_code, witness=witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'reason': self.reason,
            'fault_code': self.fault_code,
            'witness': {k: _jsonable(v) for k, v in self.witness.items()},
        }

    def __bool__(self) -> bool:
        return self.passed


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


class AmpleError(Exception):
    """Base class for all engine errors"""


class ValidationError(AmpleError):
    """Input data violates a structural invariant"""

    def __init__(self, report: ValidationReport, subject: str = ""):
        self.report = report
        self.subject = subject
        prefix = f"{subject}: " if subject else ""
        super().__init__(f"{prefix}{report.reason}")


class DimensionError(AmpleError):
    """Matrix or vector dimensions are not compatible"""


class MalformedComplexError(AmpleError):
    """Consecutive boundaries do not compose to zero"""


class NotACycleMapError(AmpleError):
    """A chain-level map does not carry cycles to cycles or boundaries to boundaries"""


class LiftError(AmpleError):
    """A chain lift could not be solved; signals a broken invariant, never a legitimate state"""


class AdjunctionError(AmpleError):
    """A triangle identity of the induction/restriction adjunction failed"""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        self.witness = witness or {}
        super().__init__(message)


class DegreeError(AmpleError):
    """Homological degree or face index out of range"""


class NotComposableError(AmpleError, ValueError):
    """Two arrows (or points and arrows) were multiplied outside the composable domain"""
