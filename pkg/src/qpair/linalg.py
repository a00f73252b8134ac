"""Exact linear algebra over a fixed cyclotomic field.

Two shapes of data pass through this module.  Sparse vectors are plain
dicts mapping coordinate index -> CycloNumber with zero entries never
stored; they carry coordinates of algebra elements in the ordered
monomial basis (hundreds of coordinates, mostly empty).  Small dense
matrices represent generator actions on modules (dimension at most a
few dozen), stored as row lists.

All elimination happens in the field itself.  CycloNumber arithmetic is
exact -- gcd-normalized integer coefficient vectors over a common
denominator -- so ordinary Gaussian elimination never loses precision
and never needs pivot-growth tricks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from .cyclo import CycloField, CycloNumber

Vector = Dict[int, CycloNumber]


def vector_is_zero(vec: Vector) -> bool:
    return not vec


def scale_into(target: Vector, source: Vector, factor: CycloNumber) -> None:
    """target -= factor * source, in place, dropping cancelled entries."""
    if factor.is_zero():
        return
    for idx, coeff in source.items():
        add = factor * coeff
        cur = target.get(idx)
        tot = -add if cur is None else cur - add
        if tot.is_zero():
            target.pop(idx, None)
        else:
            target[idx] = tot


class IncrementalSpan:
    """A row-reduced spanning set grown one vector at a time.

    Rows are kept keyed by their leading (smallest) index with leading
    coefficient one, so reduction of a new vector is a straight sweep.
    With ``track=True`` every row also remembers how it was formed from
    the raw input vectors, which turns span membership into an exact
    coordinate solve: ``coordinates(x)`` returns ``{input position:
    coefficient}`` with ``x == sum(c_i * input_i)``.
    """

    def __init__(self, field: CycloField, track: bool = False):
        self.field = field
        self.track = track
        self.rows: Dict[int, Vector] = {}
        self._row_combos: Dict[int, Dict[int, CycloNumber]] = {}
        self._inputs_seen = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Vector):
        """Sweep vec against stored rows; return (residual, combo used)."""
        residual = dict(vec)
        combo: Dict[int, CycloNumber] = {}
        while residual:
            lead = min(residual)
            row = self.rows.get(lead)
            if row is None:
                break
            factor = residual[lead]
            scale_into(residual, row, factor)
            if self.track:
                scale_into(combo, self._row_combos[lead], -factor)
        return residual, combo

    def add(self, vec: Vector) -> bool:
        """Insert a raw vector; return True when it enlarged the span."""
        position = self._inputs_seen
        self._inputs_seen += 1
        residual, combo = self._reduce(vec)
        if not residual:
            return False
        lead = min(residual)
        pivot = residual[lead]
        inv = pivot.inverse()
        self.rows[lead] = {i: c * inv for i, c in residual.items()}
        if self.track:
            # residual = input_position - sum(combo[i] * input_i), so the
            # normalized row rebuilds from the inputs with combo negated.
            row_combo = {i: -c for i, c in combo.items()}
            row_combo[position] = self.field.one
            self._row_combos[lead] = {i: c * inv for i, c in row_combo.items()}
        return True

    def contains(self, vec: Vector) -> bool:
        residual, _ = self._reduce(vec)
        return not residual

    def coordinates(self, vec: Vector) -> Optional[Dict[int, CycloNumber]]:
        """Express vec over the raw inputs, or None when outside the span."""
        if not self.track:
            raise ValueError("span was built without combination tracking")
        residual, combo = self._reduce(vec)
        if residual:
            return None
        return {i: c for i, c in combo.items() if not c.is_zero()}


def rank_of(field: CycloField, vectors: Iterable[Vector]) -> int:
    span = IncrementalSpan(field)
    for vec in vectors:
        span.add(vec)
    return span.rank


def nullspace(field: CycloField, equations: Iterable[Vector], dim: int) -> List[Vector]:
    """Basis of {x : row . x = 0 for every equation row} in dimension dim.

    The equations are eliminated incrementally (at most ``dim`` survive),
    back-substituted to reduced echelon form, and each free coordinate
    contributes one basis vector with that coordinate set to one.
    """
    span = IncrementalSpan(field)
    for row in equations:
        span.add(row)
    reduced = {lead: dict(row) for lead, row in span.rows.items()}
    for lead in sorted(reduced, reverse=True):
        pivot_row = reduced[lead]
        for other_lead, other_row in reduced.items():
            if other_lead >= lead:
                continue
            factor = other_row.get(lead)
            if factor is not None:
                scale_into(other_row, pivot_row, factor)
    basis: List[Vector] = []
    pivots = set(reduced)
    for free in range(dim):
        if free in pivots:
            continue
        vec: Vector = {free: field.one}
        for lead, row in reduced.items():
            coeff = row.get(free)
            if coeff is not None and not coeff.is_zero():
                vec[lead] = -coeff
        basis.append(vec)
    return basis


class Matrix:
    """Dense matrix over the field, sized for module representations."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: CycloField, rows: Sequence[Sequence[CycloNumber]]):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix rows")

    @classmethod
    def zeros(cls, field: CycloField, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: CycloField, n: int) -> "Matrix":
        out = cls.zeros(field, n, n)
        for i in range(n):
            out.rows[i][i] = field.one
        return out

    @classmethod
    def diagonal(cls, field: CycloField, entries: Sequence[CycloNumber]) -> "Matrix":
        out = cls.zeros(field, len(entries), len(entries))
        for i, val in enumerate(entries):
            out.rows[i][i] = val
        return out

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def _coerce_scalar(self, other) -> Optional[CycloNumber]:
        if isinstance(other, CycloNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return Matrix(self.field, [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.rows, other.rows)
        ])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.__add__(-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        scalar = self._coerce_scalar(other)
        if scalar is not None:
            return Matrix(self.field, [[a * scalar for a in row] for row in self.rows])
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.shape} * {other.shape}")
        zero = self.field.zero
        out = [[zero] * other.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                other_row = other.rows[k]
                out_row = out[i]
                for j, b in enumerate(other_row):
                    if not b.is_zero():
                        out_row[j] = out_row[j] + a * b
        return Matrix(self.field, out)

    def __rmul__(self, other):
        scalar = self._coerce_scalar(other)
        if scalar is None:
            return NotImplemented
        return self.__mul__(scalar)

    def __pow__(self, n: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices have powers")
        if n < 0:
            raise ValueError("negative matrix powers are not supported")
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.rows for a in row)

    def is_diagonal(self) -> bool:
        return all(
            a.is_zero()
            for i, row in enumerate(self.rows)
            for j, a in enumerate(row)
            if i != j
        )

    def scalar_of_identity(self) -> Optional[CycloNumber]:
        """Return c when the matrix equals c * identity, else None."""
        if self.nrows != self.ncols or self.nrows == 0:
            return None
        c = self.rows[0][0]
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if i == j:
                    if a != c:
                        return None
                elif not a.is_zero():
                    return None
        return c

    def trace(self) -> CycloNumber:
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        total = self.field.zero
        for i in range(self.nrows):
            total = total + self.rows[i][i]
        return total

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(col) for col in zip(*self.rows)])

    def apply(self, vec: Sequence[CycloNumber]) -> List[CycloNumber]:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        out = []
        for row in self.rows:
            total = self.field.zero
            for a, x in zip(row, vec):
                if not a.is_zero() and not x.is_zero():
                    total = total + a * x
            out.append(total)
        return out

    def column(self, j: int) -> List[CycloNumber]:
        return [row[j] for row in self.rows]

    def diagonal_entries(self) -> List[CycloNumber]:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def __repr__(self) -> str:  # pragma: no cover
        return f"Matrix({self.nrows}x{self.ncols} over zeta_{self.field.order})"
