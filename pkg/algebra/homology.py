"""
Chain complexes of groupoid homology
Bar complex with coefficients, the Matui complex, homology groups and the
Shapiro comparison.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple
import logging

from algebra.exceptions import DegreeError, DimensionError, MalformedComplexError
from algebra.gmodule import GModule, induce, trivial_module
from algebra.groupoid import FaceVariant, FiniteGroupoid, boundary_matrix, matui_face, nerve
from algebra.intalg import FGAbelianGroup, IntMatrix, SubquotientGroup, homology_of_pair

logger = logging.getLogger("ample.homology")

# Basis key of the bar complex: (composable tuple, fibre index); degree 0 uses (x,)
BarKey = Tuple[Tuple[str, ...], int]


@dataclass(frozen=True, eq=False)
class IntChainComplex:
    """
    C_0 <- C_1 <- ... <- C_N with boundaries[n] : C_n -> C_{n-1} for 1 ≤ n ≤ N.
    `bases` optionally names the coordinates of each C_n.
    """
    max_degree: int
    ranks: Tuple[int, ...]
    boundaries: Dict[int, IntMatrix]
    bases: Optional[Dict[int, List]] = None
    _homology: Dict[int, SubquotientGroup] = field(default_factory=dict, repr=False)
    _lookups: Dict[int, Dict] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.ranks) != self.max_degree + 1:
            raise DimensionError("one rank per degree 0..max_degree is required")
        for n in range(1, self.max_degree + 1):
            d = self.boundaries[n]
            if d.shape != (self.ranks[n - 1], self.ranks[n]):
                raise DimensionError(f"boundary {n} has shape {d.shape}, expected {(self.ranks[n - 1], self.ranks[n])}")
        for n in range(1, self.max_degree):
            if not (self.boundaries[n] @ self.boundaries[n + 1]).is_zero():
                raise MalformedComplexError(f"∂_{n}∂_{n + 1} ≠ 0")

    def boundary(self, n: int) -> IntMatrix:
        """∂_n; ∂_0 is the zero map to the zero group"""
        if n == 0:
            return IntMatrix.zeros(0, self.ranks[0])
        if not 1 <= n <= self.max_degree:
            raise DegreeError(f"boundary {n} outside 0..{self.max_degree}")
        return self.boundaries[n]

    def index(self, n: int, key) -> int:
        """Coordinate of a basis key in C_n"""
        if n not in self._lookups:
            self._lookups[n] = {k: i for i, k in enumerate(self.bases[n])}
        return self._lookups[n][key]


def homology_groups(C: IntChainComplex, n: int) -> SubquotientGroup:
    """H_n = ker ∂_n / im ∂_{n+1}; needs the (n+1)-boundary"""
    if not 0 <= n < C.max_degree:
        raise DegreeError(f"H_{n} needs chain data through degree {n + 1}, complex stops at {C.max_degree}")
    if n not in C._homology:
        C._homology[n] = homology_of_pair(C.boundary(n), C.boundary(n + 1))
    return C._homology[n]


def homology_presentations(C: IntChainComplex) -> List[FGAbelianGroup]:
    """Canonical presentations of H_0 .. H_{N-1}"""
    return [homology_groups(C, n).presentation for n in range(C.max_degree)]


# ==================== COMPLEXES ====================


def bar_basis(G: FiniteGroupoid, M: GModule, n: int) -> List[BarKey]:
    """Keys of ⊕_{(g_1..g_n)} M_{s(g_n)} (⊕_x M_x in degree 0)"""
    if n == 0:
        return [((x,), k) for x in G.objects for k in range(M.rank(x))]
    return [(t, k) for t in nerve(G, n) for k in range(M.rank(G.s(t[-1])))]


def bar_complex(G: FiniteGroupoid, M: GModule, max_degree: int) -> IntChainComplex:
    """
    Coinvariants of the bar resolution of M.  ε_0 drops g_1, middle faces
    compose, and ε_n drops g_n while applying its action to the fibre.
    """
    if M.groupoid != G:
        raise DimensionError("coefficient module is over a different groupoid")
    if max_degree < 0:
        raise DegreeError(f"max degree must be nonnegative, got {max_degree}")
    bases = {n: bar_basis(G, M, n) for n in range(max_degree + 1)}
    boundaries = {}
    for n in range(1, max_degree + 1):
        index = {key: i for i, key in enumerate(bases[n - 1])}
        entries: Dict[Tuple[int, int], int] = {}
        for col, (t, k) in enumerate(bases[n]):
            for i in range(n):
                row = index[(matui_face(G, t, i), k)]
                entries[(row, col)] = entries.get((row, col), 0) + (-1) ** i
            face = matui_face(G, t, n)
            for j, v in M.apply(t[-1], {k: 1}).items():
                row = index[(face, j)]
                entries[(row, col)] = entries.get((row, col), 0) + (-1) ** n * v
        boundaries[n] = IntMatrix(len(bases[n - 1]), len(bases[n]), entries)
        logger.debug("bar complex degree %d: %dx%d", n, len(bases[n - 1]), len(bases[n]))
    return IntChainComplex(
        max_degree=max_degree,
        ranks=tuple(len(bases[n]) for n in range(max_degree + 1)),
        boundaries=boundaries,
        bases=bases,
    )


def matui_complex(G: FiniteGroupoid, max_degree: int) -> IntChainComplex:
    """Z[G^•] with ε-face boundaries, built straight from the face matrices"""
    if max_degree < 0:
        raise DegreeError(f"max degree must be nonnegative, got {max_degree}")
    bases = {n: list(nerve(G, n)) for n in range(max_degree + 1)}
    boundaries = {n: boundary_matrix(G, n, FaceVariant.MATUI) for n in range(1, max_degree + 1)}
    return IntChainComplex(
        max_degree=max_degree,
        ranks=tuple(len(bases[n]) for n in range(max_degree + 1)),
        boundaries=boundaries,
        bases=bases,
    )


def homology(G: FiniteGroupoid, M: Optional[GModule] = None, max_degree: int = 4) -> List[FGAbelianGroup]:
    """H_0 .. H_{max_degree} of G with coefficients in M (trivial coefficients use the Matui complex)"""
    C = matui_complex(G, max_degree + 1) if M is None else bar_complex(G, M, max_degree + 1)
    return homology_presentations(C)


# ==================== COMPARISONS ====================


@dataclass(frozen=True)
class HomologyComparison:
    """Degree-by-degree comparison of two homology computations"""
    left: Tuple[FGAbelianGroup, ...]
    right: Tuple[FGAbelianGroup, ...]
    labels: Tuple[str, str] = ("left", "right")

    @property
    def passed(self) -> bool:
        return self.left == self.right

    @property
    def first_mismatch(self) -> Optional[int]:
        return next((n for n, (a, b) in enumerate(zip(self.left, self.right)) if a != b), None)

    def to_dict(self) -> Dict[str, object]:
        return {
            'passed': self.passed,
            self.labels[0]: [str(a) for a in self.left],
            self.labels[1]: [str(b) for b in self.right],
            'first_mismatch': self.first_mismatch,
        }


def shapiro_check(G: FiniteGroupoid, H: FiniteGroupoid, M: Optional[GModule], max_degree: int) -> HomologyComparison:
    """H_n(G; Ind^G_H M) against H_n(H; M) for n ≤ max_degree"""
    M = M if M is not None else trivial_module(H)
    induced = induce(G, H, M)
    left = bar_complex(G, induced, max_degree + 1)
    right = bar_complex(H, M, max_degree + 1)
    return HomologyComparison(
        left=tuple(homology_presentations(left)),
        right=tuple(homology_presentations(right)),
        labels=("induced", "restricted"),
    )


def two_path_check(G: FiniteGroupoid, max_degree: int) -> Optional[int]:
    """First degree where bar_complex(trivial) and matui_complex disagree, or None"""
    bar = bar_complex(G, trivial_module(G), max_degree)
    matui = matui_complex(G, max_degree)
    for n in range(1, max_degree + 1):
        if bar.boundary(n) != matui.boundary(n):
            return n
    return None
