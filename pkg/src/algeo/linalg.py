"""Exact dense linear algebra: row reduction, kernels, coordinates."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import AlgeoError, DimensionMismatch, MixedFields
from .field import FieldScalar, FieldSpec


class NotInSpan(AlgeoError):
    """Target vector is outside the span; ``residual`` is the reduced remainder."""

    def __init__(self, residual):
        super().__init__("target is not in the span of the basis")
        self.residual = residual


class Matrix:
    """Row-major dense matrix of raw field values."""

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: FieldSpec, rows, cols, entries):
        entries = [field.raw(getattr(e, "value", e)) if not isinstance(e, str) else field.parse_raw(e)
                   for e in entries]
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.field = field
        self.rows = rows
        self.cols = cols
        self._data = [entries[r * cols:(r + 1) * cols] for r in range(rows)]

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(r) for r in rows]
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        for r in rows:
            for e in r:
                if isinstance(e, FieldScalar) and e.field != field:
                    raise MixedFields(f"{e.field} entry in a {field} matrix")
        return cls(field, len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def _wrap(cls, field, data, cols):
        m = cls.__new__(cls)
        m.field, m.rows, m.cols, m._data = field, len(data), cols, data
        return m

    def entry(self, r, c) -> FieldScalar:
        return FieldScalar(self.field, self._data[r][c])

    def raw_rows(self):
        return [list(r) for r in self._data]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field, self.rows, self.cols, self._data) == (other.field, other.rows, other.cols, other._data)

    def apply(self, vec):
        """Matrix-vector product on raw values."""
        F = self.field
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.cols} columns")
        out = []
        for row in self._data:
            s = F.zero
            for a, b in zip(row, vec):
                if a and b:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return out

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"


def _rref_raw(F, data, cols):
    """In-place RREF of a list of raw rows. Returns the pivot columns."""
    pivots = []
    r = 0
    nrows = len(data)
    for c in range(cols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if data[i][c] != 0), None)
        if pr is None:
            continue
        data[r], data[pr] = data[pr], data[r]
        row = data[r]
        inv = F.inv(row[c])
        if inv != 1:
            row[:] = [F.mul(x, inv) if x else x for x in row]
        nz = [j for j in range(c, cols) if row[j] != 0]
        for i in range(nrows):
            if i == r:
                continue
            f = data[i][c]
            if f == 0:
                continue
            other = data[i]
            for j in nz:
                other[j] = F.sub(other[j], F.mul(f, row[j]))
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix):
    """Reduced row echelon form, rank, and pivot columns.

    Pivots are taken leftmost column first, topmost available row first, so
    the result is deterministic.
    """
    data = m.raw_rows()
    pivots = _rref_raw(m.field, data, m.cols)
    return Matrix._wrap(m.field, data, m.cols), len(pivots), pivots


@dataclass(frozen=True)
class KernelBasis:
    vectors: list
    rank: int

    def raw(self):
        return [[v.value for v in vec] for vec in self.vectors]


def kernel_raw(F, data, cols):
    """Canonical kernel basis of raw rows, one vector per free column.

    Each vector has a 1 in its own free column and zeros in the other free
    columns.  Returns ``(vectors, pivot_columns)``.
    """
    data = [list(r) for r in data]
    pivots = _rref_raw(F, data, cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [F.zero] * cols
        v[free] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(data[r][free])
        vectors.append(v)
    return vectors, pivots


def kernel_basis(m: Matrix) -> KernelBasis:
    vectors, pivots = kernel_raw(m.field, m._data, m.cols)
    return KernelBasis([tuple(FieldScalar(m.field, x) for x in v) for v in vectors], len(pivots))


def expand_in_basis(basis, target, field: FieldSpec | None = None):
    """Coordinates of ``target`` in a linearly independent ``basis``.

    Vectors may hold FieldScalars or raw values (then ``field`` is required).
    Raises :class:`NotInSpan` carrying the reduced residual.
    """
    if field is None:
        sample = next((x for x in [*target, *(e for b in basis for e in b)] if isinstance(x, FieldScalar)), None)
        if sample is None:
            raise TypeError("field is required for raw vectors")
        field = sample.field
    F = field
    target = [F.raw(getattr(x, "value", x)) for x in target]
    basis = [[F.raw(getattr(x, "value", x)) for x in b] for b in basis]
    n = len(target)
    if any(len(b) != n for b in basis):
        raise DimensionMismatch("basis vectors and target differ in length")
    k = len(basis)
    if k == 0:
        if any(target):
            raise NotInSpan([FieldScalar(F, x) for x in target])
        return ()
    # augmented system: columns are basis vectors, last column the target
    rows = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    pivots = _rref_raw(F, rows, k + 1)
    if k in pivots:
        residual = [FieldScalar(F, rows[r][k]) for r in range(n)]
        raise NotInSpan(residual)
    if len(pivots) != k:
        raise DimensionMismatch("basis vectors are linearly dependent")
    return tuple(FieldScalar(F, rows[r][k]) for r in range(k))
