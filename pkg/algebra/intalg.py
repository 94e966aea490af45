"""
Exact sparse integer linear algebra
Smith normal form, integer solving, cokernels and subquotients (homology) over Z

Every value here is immutable after construction; all functions are pure.
Arbitrary-precision Python integers are used throughout.
"""

from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple
import logging

from algebra.exceptions import DimensionError, MalformedComplexError, NotACycleMapError

logger = logging.getLogger("ample.intalg")

# Sparse integer vector: index -> nonzero value
Vector = Dict[int, int]


def _axpy(target: Vector, q: int, source: Mapping[int, int]) -> None:
    """In place: target += q * source"""
    if q == 0:
        return
    for k, v in source.items():
        value = target.get(k, 0) + q * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class IntMatrix:
    """
    Sparse integer matrix stored as a coordinate map (row, col) -> nonzero int.

    Column and row views are built lazily and cached; callers must treat the
    views they get back as read-only.
    """

    __slots__ = ("rows", "cols", "_entries", "_columns", "_rows")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], int]] = None):
        if rows < 0 or cols < 0:
            raise DimensionError(f"Negative matrix shape {rows}x{cols}")
        clean: Dict[Tuple[int, int], int] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionError(f"Entry ({i}, {j}) outside {rows}x{cols} matrix")
            value = int(value)
            if value:
                clean[(i, j)] = value
        self.rows = rows
        self.cols = cols
        self._entries = clean
        self._columns: Optional[List[Vector]] = None
        self._rows: Optional[List[Vector]] = None

    # ==================== CONSTRUCTORS ====================

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise DimensionError(f"Row {i} has {len(row)} entries, expected {cols}")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = value
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, int]]) -> "IntMatrix":
        entries = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                entries[(i, j)] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def from_rows(cls, cols: int, row_vectors: Sequence[Mapping[int, int]]) -> "IntMatrix":
        entries = {}
        for i, row in enumerate(row_vectors):
            for j, value in row.items():
                entries[(i, j)] = value
        return cls(len(row_vectors), cols, entries)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        entries = {}
        row_offset = col_offset = 0
        for block in blocks:
            for (i, j), value in block._entries.items():
                entries[(row_offset + i, col_offset + j)] = value
            row_offset += block.rows
            col_offset += block.cols
        return cls(row_offset, col_offset, entries)

    # ==================== ACCESS ====================

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> Mapping[Tuple[int, int], int]:
        return MappingProxyType(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self._entries.get(key, 0)

    def _column_views(self) -> List[Vector]:
        if self._columns is None:
            columns: List[Vector] = [{} for _ in range(self.cols)]
            for (i, j), value in self._entries.items():
                columns[j][i] = value
            self._columns = columns
        return self._columns

    def _row_views(self) -> List[Vector]:
        if self._rows is None:
            row_views: List[Vector] = [{} for _ in range(self.rows)]
            for (i, j), value in self._entries.items():
                row_views[i][j] = value
            self._rows = row_views
        return self._rows

    def column(self, j: int) -> Vector:
        return dict(self._column_views()[j])

    def row(self, i: int) -> Vector:
        return dict(self._row_views()[i])

    def columns(self) -> List[Vector]:
        return [dict(c) for c in self._column_views()]

    def to_dense(self) -> List[List[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), value in self._entries.items():
            dense[i][j] = value
        return dense

    # ==================== ARITHMETIC ====================

    def apply(self, vector: Mapping[int, int]) -> Vector:
        """Matrix times a sparse column vector"""
        columns = self._column_views()
        result: Vector = {}
        for k, value in vector.items():
            if not 0 <= k < self.cols:
                raise DimensionError(f"Vector index {k} outside {self.cols} columns")
            _axpy(result, value, columns[k])
        return result

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"Cannot multiply {self.shape} by {other.shape}")
        columns = [self.apply(c) for c in other._column_views()]
        return IntMatrix.from_columns(self.rows, columns)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"Cannot add {self.shape} and {other.shape}")
        entries = dict(self._entries)
        for key, value in other._entries.items():
            entries[key] = entries.get(key, 0) + value
        return IntMatrix(self.rows, self.cols, entries)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, factor: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, {k: factor * v for k, v in self._entries.items()})

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def select_columns(self, indices: Iterable[int]) -> "IntMatrix":
        views = self._column_views()
        return IntMatrix.from_columns(self.rows, [views[j] for j in indices])

    def select_rows(self, indices: Iterable[int]) -> "IntMatrix":
        views = self._row_views()
        return IntMatrix.from_rows(self.cols, [views[i] for i in indices])

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionError(f"Cannot stack {self.shape} beside {other.shape}")
        return IntMatrix.from_columns(self.rows, self._column_views() + other._column_views())

    def reduce_rows(self, moduli: Sequence[int]) -> "IntMatrix":
        """Reduce row i modulo moduli[i] (0 leaves the row untouched)"""
        entries = {}
        for (i, j), value in self._entries.items():
            d = moduli[i]
            entries[(i, j)] = value % d if d else value
        return IntMatrix(self.rows, self.cols, entries)

    def is_zero(self) -> bool:
        return not self._entries

    def is_identity(self) -> bool:
        return self.rows == self.cols and self._entries == {(i, i): 1 for i in range(self.rows)}

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant; meant for small square matrices"""
        if self.rows != self.cols:
            raise DimensionError("Determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_dense()
        sign = 1
        previous = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
            previous = a[k][k]
        return sign * a[n - 1][n - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_dense()})"
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# ==================== SMITH NORMAL FORM ====================


@dataclass(frozen=True)
class SmithDecomposition:
    """
    U·A·V = S with U, V unimodular and S diagonal in canonical Smith form.

    The transforms (and their inverses) are only present when tracked.
    """
    source_rows: int
    source_cols: int
    S: IntMatrix
    diagonal: Tuple[int, ...]
    U: Optional[IntMatrix] = None
    U_inv: Optional[IntMatrix] = None
    V: Optional[IntMatrix] = None
    V_inv: Optional[IntMatrix] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def verify(self, A: IntMatrix) -> bool:
        if self.U is None or self.V is None:
            raise ValueError("Decomposition was computed without both transforms")
        return self.U @ A @ self.V == self.S


class _SmithEliminator:
    """
    Mutable elimination workspace.

    Rows are dicts col -> value, with a column index col -> set of rows kept in
    sync.  U is tracked by rows, U^-1 by columns, V by columns, V^-1 by rows.
    """

    def __init__(self, A: IntMatrix, track_left: bool, track_right: bool):
        self.m = A.rows
        self.n = A.cols
        self.rows: List[Vector] = [dict(r) for r in A._row_views()]
        self.colrows: List[set] = [set() for _ in range(self.n)]
        for (i, j) in A._entries:
            self.colrows[j].add(i)
        self.left = [{i: 1} for i in range(self.m)] if track_left else None
        self.left_inv = [{i: 1} for i in range(self.m)] if track_left else None
        self.right = [{j: 1} for j in range(self.n)] if track_right else None
        self.right_inv = [{j: 1} for j in range(self.n)] if track_right else None

    # ----- elementary operations -----

    def swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        cols_i, cols_k = set(self.rows[i]), set(self.rows[k])
        for c in cols_i - cols_k:
            self.colrows[c].discard(i)
            self.colrows[c].add(k)
        for c in cols_k - cols_i:
            self.colrows[c].discard(k)
            self.colrows[c].add(i)
        self.rows[i], self.rows[k] = self.rows[k], self.rows[i]
        if self.left is not None:
            self.left[i], self.left[k] = self.left[k], self.left[i]
            self.left_inv[i], self.left_inv[k] = self.left_inv[k], self.left_inv[i]

    def swap_cols(self, j: int, l: int) -> None:
        if j == l:
            return
        for r in self.colrows[j] | self.colrows[l]:
            row = self.rows[r]
            vj, vl = row.pop(j, 0), row.pop(l, 0)
            if vl:
                row[j] = vl
            if vj:
                row[l] = vj
        self.colrows[j], self.colrows[l] = self.colrows[l], self.colrows[j]
        if self.right is not None:
            self.right[j], self.right[l] = self.right[l], self.right[j]
            self.right_inv[j], self.right_inv[l] = self.right_inv[l], self.right_inv[j]

    def add_row(self, target: int, q: int, source: int) -> None:
        """row_target += q * row_source"""
        if q == 0:
            return
        row = self.rows[target]
        for c, v in self.rows[source].items():
            value = row.get(c, 0) + q * v
            if value:
                row[c] = value
                self.colrows[c].add(target)
            else:
                row.pop(c, None)
                self.colrows[c].discard(target)
        if self.left is not None:
            _axpy(self.left[target], q, self.left[source])
            _axpy(self.left_inv[source], -q, self.left_inv[target])

    def add_col(self, target: int, q: int, source: int) -> None:
        """col_target += q * col_source"""
        if q == 0:
            return
        for r in list(self.colrows[source]):
            row = self.rows[r]
            value = row.get(target, 0) + q * row[source]
            if value:
                row[target] = value
                self.colrows[target].add(r)
            else:
                row.pop(target, None)
                self.colrows[target].discard(r)
        if self.right is not None:
            _axpy(self.right[target], q, self.right[source])
            _axpy(self.right_inv[source], -q, self.right_inv[target])

    def negate_row(self, i: int) -> None:
        self.rows[i] = {c: -v for c, v in self.rows[i].items()}
        if self.left is not None:
            self.left[i] = {c: -v for c, v in self.left[i].items()}
            self.left_inv[i] = {c: -v for c, v in self.left_inv[i].items()}

    # ----- pivoting -----

    def find_pivot(self, t: int) -> Optional[Tuple[int, int]]:
        """Smallest nonzero |entry| in the trailing block, ties broken row-major"""
        best = None
        for r in range(t, self.m):
            row = self.rows[r]
            if not row:
                continue
            for c, v in row.items():
                key = (abs(v), r, c)
                if best is None or key < best:
                    best = key
            if best[0] == 1:
                break
        return None if best is None else (best[1], best[2])

    def run(self) -> List[int]:
        diagonal: List[int] = []
        t = 0
        while t < min(self.m, self.n):
            pivot = self.find_pivot(t)
            if pivot is None:
                break
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            while True:
                p = self.rows[t][t]
                dirty = False
                for r in sorted(self.colrows[t] - {t}):
                    self.add_row(r, -(self.rows[r][t] // p), t)
                    if t in self.rows[r]:
                        dirty = True
                if dirty:
                    r = min((r for r in self.colrows[t]), key=lambda r: (abs(self.rows[r][t]), r))
                    self.swap_rows(t, r)
                    continue
                for c in sorted(c for c in self.rows[t] if c != t):
                    self.add_col(c, -(self.rows[t][c] // p), t)
                    if c in self.rows[t]:
                        dirty = True
                if dirty:
                    c = min((c for c in self.rows[t]), key=lambda c: (abs(self.rows[t][c]), c))
                    self.swap_cols(t, c)
                    continue
                if abs(p) != 1:
                    offender = next(
                        (r for r in range(t + 1, self.m) if any(v % p for v in self.rows[r].values())),
                        None,
                    )
                    if offender is not None:
                        self.add_row(t, 1, offender)
                        continue
                break
            if self.rows[t][t] < 0:
                self.negate_row(t)
            diagonal.append(self.rows[t][t])
            t += 1
        return diagonal


def smith_normal_form(A: IntMatrix, *, track_left: bool = True, track_right: bool = True) -> SmithDecomposition:
    """
    Deterministic Smith normal form U·A·V = S.

    Pivot: smallest nonzero absolute value, ties broken row-major.  Untracked
    transforms are left as None, which keeps large one-sided computations cheap.
    """
    work = _SmithEliminator(A, track_left, track_right)
    diagonal = work.run()
    m, n = A.rows, A.cols
    logger.debug("SNF %dx%d nnz=%d rank=%d", m, n, A.nnz, len(diagonal))
    return SmithDecomposition(
        source_rows=m,
        source_cols=n,
        S=IntMatrix.diagonal(diagonal, m, n),
        diagonal=tuple(diagonal),
        U=IntMatrix.from_rows(m, work.left) if track_left else None,
        U_inv=IntMatrix.from_columns(m, work.left_inv) if track_left else None,
        V=IntMatrix.from_columns(n, work.right) if track_right else None,
        V_inv=IntMatrix.from_rows(n, work.right_inv) if track_right else None,
    )


# ==================== LINEAR SOLVING ====================


class IntegerSolver:
    """Solves A·x = b over Z for many right-hand sides against one decomposition"""

    def __init__(self, A: IntMatrix):
        self.matrix = A
        self._snf = smith_normal_form(A)

    def solve(self, b: Mapping[int, int]) -> Optional[Vector]:
        """
        Return x with A·x = b, or None.  The free SNF coordinates of the
        solution are zero, which makes the choice deterministic.
        """
        for k in b:
            if not 0 <= k < self.matrix.rows:
                raise DimensionError(f"Right-hand side index {k} outside {self.matrix.rows} rows")
        c = self._snf.U.apply(b)
        diagonal = self._snf.diagonal
        y: Vector = {}
        for i, value in c.items():
            if i >= len(diagonal):
                return None
            quotient, remainder = divmod(value, diagonal[i])
            if remainder:
                return None
            y[i] = quotient
        return self._snf.V.apply(y)


def solve_integer(A: IntMatrix, b: Sequence[int]) -> Optional[List[int]]:
    """Dense front end of IntegerSolver: x with A·x = b, or None when no integer solution exists"""
    if len(b) != A.rows:
        raise DimensionError(f"Right-hand side has length {len(b)}, matrix has {A.rows} rows")
    x = IntegerSolver(A).solve({i: v for i, v in enumerate(b) if v})
    if x is None:
        return None
    return [x.get(j, 0) for j in range(A.cols)]


# ==================== FINITELY GENERATED ABELIAN GROUPS ====================


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank + Z/d1 + ... + Z/dk in invariant-factor form (d1 | d2 | ..., each >= 2)"""
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError(f"Negative free rank {self.free_rank}")
        torsion = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, 'torsion', torsion)
        for d in torsion:
            if d < 2:
                raise ValueError(f"Invariant factor {d} is not canonical")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError(f"Invariant factors {a}, {b} break the divisibility chain")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FGAbelianGroup":
        """Canonical form of a direct sum of cyclic groups Z/d (d = 0 means Z)"""
        orders = [abs(int(d)) for d in orders]
        free_rank = orders.count(0)
        finite = [d for d in orders if d > 1]
        invariants = smith_normal_form(IntMatrix.diagonal(finite), track_left=False, track_right=False).diagonal
        return cls(free_rank=free_rank, torsion=tuple(d for d in invariants if d > 1))

    def orders(self) -> Tuple[int, ...]:
        return self.torsion + (0,) * self.free_rank

    def direct_sum(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup.from_orders(self.orders() + other.orders())

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def num_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    def to_dict(self) -> Dict[str, object]:
        return {'free_rank': self.free_rank, 'torsion': list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


TRIVIAL_GROUP = FGAbelianGroup()


# ==================== COKERNELS ====================


@dataclass(frozen=True)
class Cokernel:
    """
    Z^ambient / im(R) with a projection onto canonical generators.

    projection: generators x ambient; lifts: ambient x generators with
    projection·lifts = identity; moduli[i] is the order of generator i (0 = free).
    """
    group: FGAbelianGroup
    projection: IntMatrix
    lifts: IntMatrix
    moduli: Tuple[int, ...]

    def reduce(self, vector: Mapping[int, int]) -> Tuple[int, ...]:
        image = self.projection.apply(vector)
        return tuple(
            image.get(i, 0) % d if d else image.get(i, 0)
            for i, d in enumerate(self.moduli)
        )


def cokernel(R: IntMatrix) -> Cokernel:
    """Presentation of coker(R) with torsion generators first, free generators after"""
    snf = smith_normal_form(R, track_left=True, track_right=False)
    rank = snf.rank
    torsion_idx = [i for i in range(rank) if snf.diagonal[i] > 1]
    free_idx = list(range(rank, R.rows))
    selected = torsion_idx + free_idx
    return Cokernel(
        group=FGAbelianGroup(free_rank=len(free_idx), torsion=tuple(snf.diagonal[i] for i in torsion_idx)),
        projection=snf.U.select_rows(selected),
        lifts=snf.U_inv.select_columns(selected),
        moduli=tuple(snf.diagonal[i] for i in torsion_idx) + (0,) * len(free_idx),
    )


# ==================== SUBQUOTIENTS ====================


class SubquotientGroup:
    """
    ker(d_out) / im(d_in) inside a free ambient group Z^ambient_rank.

    Built from a left-tracked SNF U·d_in·W = diag(d_i): in the coordinates
    y = U·z the boundaries are spanned by d_i·e_i, and since d_out·d_in = 0 the
    columns i < rank(d_in) of d_out·U^-1 vanish.  The remaining block is reduced
    with a right-tracked SNF to get a kernel basis for the free part.
    """

    def __init__(self, d_out: IntMatrix, d_in: IntMatrix):
        ambient = d_in.rows
        if d_out.cols != ambient:
            raise DimensionError(
                f"Outgoing boundary has {d_out.cols} columns, incoming boundary has {ambient} rows"
            )
        if not (d_out @ d_in).is_zero():
            raise MalformedComplexError("d_out·d_in ≠ 0: the pair is not a chain complex")

        snf_in = smith_normal_form(d_in, track_left=True, track_right=False)
        r_in = snf_in.rank
        reduced_out = (d_out @ snf_in.U_inv).select_columns(range(r_in, ambient))
        snf_out = smith_normal_form(reduced_out, track_left=False, track_right=True)
        r_out = snf_out.rank

        torsion_idx = [i for i in range(r_in) if snf_in.diagonal[i] > 1]
        free_idx = list(range(r_out, ambient - r_in))

        def lift_free(j: int) -> Vector:
            column = {r_in + k: v for k, v in snf_out.V.column(j).items()}
            return snf_in.U_inv.apply(column)

        lifts = [snf_in.U_inv.column(i) for i in torsion_idx] + [lift_free(j) for j in free_idx]
        cycles = [snf_in.U_inv.column(i) for i in range(r_in)] + [lift_free(j) for j in free_idx]

        self.ambient_rank = ambient
        self.d_out = d_out
        self.boundary_basis = d_in
        self.cycle_basis = IntMatrix.from_columns(ambient, cycles)
        self.generator_lifts = IntMatrix.from_columns(ambient, lifts)
        self.presentation = FGAbelianGroup(
            free_rank=len(free_idx),
            torsion=tuple(snf_in.diagonal[i] for i in torsion_idx),
        )
        self.moduli: Tuple[int, ...] = self.presentation.torsion + (0,) * len(free_idx)
        self._U = snf_in.U
        self._V_out_inv = snf_out.V_inv
        self._r_in = r_in
        self._r_out = r_out
        self._torsion_idx = torsion_idx
        self._free_idx = free_idx
        logger.debug(
            "Subquotient ambient=%d rank(d_in)=%d rank(d_out)=%d -> %s",
            ambient, r_in, r_out, self.presentation,
        )

    @property
    def num_generators(self) -> int:
        return len(self.moduli)

    def class_of(self, vector: Mapping[int, int]) -> Optional[Tuple[int, ...]]:
        """Reduced coordinates of the class of a cycle, or None when `vector` is not a cycle"""
        y = self._U.apply(vector)
        tail = {k - self._r_in: v for k, v in y.items() if k >= self._r_in}
        w = self._V_out_inv.apply(tail)
        if any(k < self._r_out for k in w):
            return None
        torsion = tuple(y.get(i, 0) % d for i, d in zip(self._torsion_idx, self.presentation.torsion))
        free = tuple(w.get(j, 0) for j in self._free_idx)
        return torsion + free

    def is_cycle(self, vector: Mapping[int, int]) -> bool:
        return self.class_of(vector) is not None

    def is_boundary(self, vector: Mapping[int, int]) -> bool:
        coordinates = self.class_of(vector)
        return coordinates is not None and not any(coordinates)

    def __repr__(self) -> str:
        return f"SubquotientGroup(ambient={self.ambient_rank}, {self.presentation})"


def homology_of_pair(d_out: IntMatrix, d_in: IntMatrix) -> SubquotientGroup:
    """ker(d_out)/im(d_in) with canonical generators"""
    return SubquotientGroup(d_out, d_in)


@dataclass(frozen=True, eq=False)
class SubquotientMap:
    """A homomorphism between subquotients, as a matrix on presented generators"""
    source: SubquotientGroup
    target: SubquotientGroup
    matrix: IntMatrix

    def compose(self, other: "SubquotientMap") -> "SubquotientMap":
        """self ∘ other"""
        if other.target.presentation != self.source.presentation:
            raise DimensionError("Maps are not composable: presentations differ")
        product = (self.matrix @ other.matrix).reduce_rows(self.target.moduli)
        return SubquotientMap(other.source, self.target, product)

    def is_isomorphism(self) -> bool:
        """Equal presentations and a surjective map (f.g. abelian groups are Hopfian)"""
        if self.source.presentation != self.target.presentation:
            return False
        relations = IntMatrix.diagonal(
            [d for d in self.target.moduli], self.target.num_generators, self.target.num_generators
        )
        image = cokernel(self.matrix.hstack(relations))
        return image.group.is_trivial

    def is_identity(self) -> bool:
        return self.matrix.reduce_rows(self.target.moduli) == IntMatrix.identity(
            self.target.num_generators
        ).reduce_rows(self.target.moduli) and self.source.num_generators == self.target.num_generators

    def to_dict(self) -> Dict[str, object]:
        return {
            'source': str(self.source.presentation),
            'target': str(self.target.presentation),
            'matrix': self.matrix.to_dense(),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubquotientMap):
            return NotImplemented
        return (
            self.source.presentation == other.source.presentation
            and self.target.presentation == other.target.presentation
            and self.matrix.reduce_rows(self.target.moduli) == other.matrix.reduce_rows(other.target.moduli)
        )

    __hash__ = None


def induced_subquotient_map(f: IntMatrix, src: SubquotientGroup, tgt: SubquotientGroup) -> SubquotientMap:
    """
    The map on subquotients induced by a chain-level matrix f.

    Every source cycle must land on a target cycle and every source boundary
    on a target boundary; otherwise NotACycleMapError is raised.
    """
    if f.cols != src.ambient_rank or f.rows != tgt.ambient_rank:
        raise DimensionError(
            f"Map of shape {f.shape} does not go from rank {src.ambient_rank} to rank {tgt.ambient_rank}"
        )
    for j, cycle in enumerate(src.cycle_basis.columns()):
        if tgt.class_of(f.apply(cycle)) is None:
            raise NotACycleMapError(f"not a cycle map: source cycle {j} does not map to a cycle")
    for j, boundary in enumerate(src.boundary_basis.columns()):
        if not tgt.is_boundary(f.apply(boundary)):
            raise NotACycleMapError(f"not a cycle map: source boundary {j} does not map to a boundary")
    columns = []
    for lift in src.generator_lifts.columns():
        coordinates = tgt.class_of(f.apply(lift))
        columns.append({i: c for i, c in enumerate(coordinates) if c})
    return SubquotientMap(src, tgt, IntMatrix.from_columns(tgt.num_generators, columns))
