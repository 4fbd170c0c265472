"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (always reduced, denominator positive),
vectors are plain lists of scalars, matrices are dense row-major grids, and
subspaces are kept in reduced row echelon form so that equality of subspaces
is equality of basis matrices.  Everything is exact; there are no tolerances
anywhere in this package.

All values are treated as immutable after construction and all operations are
pure, so they can be shared freely between concurrent workers.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch, SpecParseError

Scalar = Fraction

QQ = Fraction  # short constructor alias used throughout the package

ZERO = QQ(0)
ONE = QQ(1)


def parse_scalar(text: str) -> Fraction:
    """Parse a rational literal ``"p/q"`` or ``"p"``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecParseError(f"bad rational literal {text!r}") from exc


def format_scalar(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# vectors

def vec(entries) -> list[Fraction]:
    return [QQ(e) for e in entries]


def vec_is_zero(v) -> bool:
    return all(not e for e in v)


def vec_add(a, b) -> list[Fraction]:
    return [x + y for x, y in zip(a, b, strict=True)]


def vec_sub(a, b) -> list[Fraction]:
    return [x - y for x, y in zip(a, b, strict=True)]


def vec_scale(c, v) -> list[Fraction]:
    return [c * x for x in v]


def vec_dot(a, b) -> Fraction:
    total = ZERO
    for x, y in zip(a, b, strict=True):
        if x and y:
            total += x * y
    return total


# ---------------------------------------------------------------------------
# matrices

class Mat:
    """Dense matrix of rationals.

    Inner loops skip zero entries, which makes the dense representation cheap
    on the very sparse action matrices this package mostly works with.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [[QQ(e) for e in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise DimensionMismatch("ragged rows in matrix")

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        return Mat([[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Mat":
        m = Mat.zero(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(e) for e in row) for row in self.data)
        return f"Mat[{self.rows}x{self.cols}: {body}]"

    def is_zero(self) -> bool:
        return all(not e for row in self.data for e in row)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Mat([vec_add(r, s) for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return Mat([vec_sub(r, s) for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "Mat":
        return self.scale(QQ(-1))

    def scale(self, c) -> "Mat":
        c = QQ(c)
        return Mat([[c * e for e in row] for row in self.data])

    def __mul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i, arow in enumerate(self.data):
            orow = out[i]
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = other.data[k]
                for j, b in enumerate(brow):
                    if b:
                        orow[j] += a * b
        return Mat(out)

    def apply(self, v) -> list[Fraction]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatch("matrix-vector length mismatch")
        out = []
        for row in self.data:
            total = ZERO
            for a, x in zip(row, v):
                if a and x:
                    total += a * x
            out.append(total)
        return out

    def transpose(self) -> "Mat":
        return Mat([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices have inverses")
        n = self.rows
        aug = [list(row) + [ONE if i == j else ZERO for j in range(n)]
               for i, row in enumerate(self.data)]
        rows, pivots = _rref_rows(aug, 2 * n)
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Mat([row[n:] for row in rows[:n]])

    def trace(self) -> Fraction:
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def row(self, i) -> list[Fraction]:
        return list(self.data[i])

    def col(self, j) -> list[Fraction]:
        return [row[j] for row in self.data]


def bracket_mats(a: Mat, b: Mat) -> Mat:
    """Commutator ab - ba."""
    if a.rows != a.cols or (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatch("bracket needs two square matrices of equal size")
    return a * b - b * a


# ---------------------------------------------------------------------------
# row reduction

def _rref_rows(rows: list[list[Fraction]], ncols: int):
    """In-place Gauss-Jordan on a list of rows; returns (rows, pivot columns).

    Zero rows sink to the bottom.  Pivot entries are 1 and pivot columns are
    cleared above and below, so the nonzero rows are the canonical RREF basis.
    """
    nrows = len(rows)
    pivots: list[int] = []
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if rows[r][pc]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        lead = rows[pr][pc]
        if lead != 1:
            inv = ONE / lead
            prow = rows[pr]
            for c in range(pc, ncols):
                if prow[c]:
                    prow[c] *= inv
        prow = rows[pr]
        for r in range(nrows):
            if r != pr and rows[r][pc]:
                f = rows[r][pc]
                rrow = rows[r]
                for c in range(pc, ncols):
                    if prow[c]:
                        rrow[c] -= f * prow[c]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def _kernel_rows(reduced: list[list[Fraction]], pivots: list[int], ncols: int):
    """Kernel basis from an RREF matrix, one row per free column."""
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    out = []
    for f in free_cols:
        v = [ZERO] * ncols
        v[f] = ONE
        for k, pc in enumerate(pivots):
            if reduced[k][f]:
                v[pc] = -reduced[k][f]
        out.append(v)
    return out


class Subspace:
    """A linear subspace of QQ^n in canonical reduced-row-echelon form.

    Construction always re-reduces, so two subspaces are equal exactly when
    their ``basis`` grids are equal.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, rows=None):
        rows = [list(map(QQ, r)) for r in (rows or [])]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch("basis row length != ambient dimension")
        reduced, pivots = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in reduced[: len(pivots)])
        self.pivots = tuple(pivots)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, [])

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Mat.identity(ambient_dim).data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of QQ^{self.ambient_dim})"

    def reduce(self, v) -> list[Fraction]:
        """Residue of v after eliminating all pivot coordinates."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length != ambient dimension")
        v = list(map(QQ, v))
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                for j in range(pc, self.ambient_dim):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def contains(self, v) -> bool:
        return vec_is_zero(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(list(r)) for r in other.basis)

    def coordinates(self, v):
        """Coefficients of v on the RREF basis, or None when v is outside."""
        if not self.contains(v):
            return None
        return [QQ(v[pc]) for pc in self.pivots]

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspace sum: ambient mismatch")
        return Subspace(self.ambient_dim, [list(r) for r in self.basis + other.basis])

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspace intersection: ambient mismatch")
        return annihilator(annihilator(self).sum(annihilator(other)))

    def basis_mat(self) -> Mat:
        if not self.basis:
            return Mat.zero(0, self.ambient_dim)
        return Mat([list(r) for r in self.basis])


def rref(m: Mat):
    """Reduced row echelon form of m.

    Returns ``(reduced, rank, kernel)`` where ``reduced`` has the same shape
    as ``m`` (zero rows kept), and ``kernel`` spans ``{x | m x = 0}``.
    """
    rows, pivots = _rref_rows([list(r) for r in m.data], m.cols)
    kernel = Subspace(m.cols, _kernel_rows(rows, pivots, m.cols))
    return Mat(rows), len(pivots), kernel


def rank(m: Mat) -> int:
    return rref(m)[1]


def subspace_combine(a: Subspace, b: Subspace, mode: str) -> Subspace:
    """Sum or intersection of two subspaces of the same ambient space."""
    if mode == "sum":
        return a.sum(b)
    if mode == "intersect":
        return a.intersect(b)
    raise ValueError(f"unknown mode {mode!r}")


def annihilator(s: Subspace) -> Subspace:
    """All functionals (in dual coordinates) vanishing on s.

    dim s + dim annihilator(s) = ambient, and the map is an involution.
    """
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    rows, pivots = _rref_rows([list(r) for r in s.basis], s.ambient_dim)
    return Subspace(s.ambient_dim, _kernel_rows(rows, pivots, s.ambient_dim))


def solve(m: Mat, rhs) -> list[Fraction] | None:
    """One exact solution of m x = rhs with free variables set to 0.

    Returns None when the system is inconsistent.
    """
    if len(rhs) != m.rows:
        raise DimensionMismatch("rhs length != number of rows")
    aug = [list(row) + [QQ(r)] for row, r in zip(m.data, rhs)]
    rows, pivots = _rref_rows(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for k, pc in enumerate(pivots):
        x[pc] = rows[k][m.cols]
    return x


class PivotedSpan:
    """Incrementally grown span with pivot bookkeeping.

    Rows are kept forward-reduced only (each row leads with a 1 in its own
    pivot column and is zero in all earlier pivot columns), which makes
    insertion cheap; ``to_subspace`` canonicalizes at the end.
    """

    __slots__ = ("ambient_dim", "rows", "pivots", "_pivot_order")

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: dict[int, list[Fraction]] = {}
        self.pivots: set[int] = set()
        self._pivot_order: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v) -> list[Fraction]:
        v = list(map(QQ, v))
        for pc in self._pivot_order:
            c = v[pc]
            if c:
                row = self.rows[pc]
                for j in range(pc, self.ambient_dim):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def contains(self, v) -> bool:
        return vec_is_zero(self._reduce(v))

    def add(self, v) -> bool:
        """Insert v; returns True when it enlarged the span."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length != ambient dimension")
        res = self._reduce(v)
        lead = next((j for j, e in enumerate(res) if e), None)
        if lead is None:
            return False
        c = res[lead]
        if c != 1:
            res = [e / c for e in res]
        self.rows[lead] = res
        self.pivots.add(lead)
        self._pivot_order = sorted(self.pivots)
        return True

    def add_all(self, vectors) -> bool:
        grew = False
        for v in vectors:
            grew |= self.add(v)
        return grew

    def to_subspace(self) -> Subspace:
        return Subspace(self.ambient_dim, [self.rows[p] for p in self._pivot_order])
