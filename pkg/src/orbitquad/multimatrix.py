"""Multi-index boxes, multi-vectors and multi-matrices, and the catalecticant
calculus: the convolution product mu, products of subspaces inside the
symmetric square of a box space, the conjugation phi_A, and projective
rank-one factorization.

A multi-vector on the box N is the coefficient table of a polynomial in r
variables with per-variable degree bounds N_1..N_r; mu(f.g) is literally the
coefficient table of the product polynomial f*g, so mu(v.v) is the square of
v.  The symmetric square of a box space is coordinatized by monomials
z_p z_q (p <= q) in auxiliary variables indexed by box positions; on those
coordinates mu sends z_p z_q to the basis vector at index i_p + i_q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, RankOneError
from .linalg import Mat, QQ, Subspace, format_scalar, parse_scalar, rref


class Box:
    """The multi-index set {i | 0 <= i_k <= N_k}, enumerated lexicographically."""

    __slots__ = ("N", "r", "_indices", "_pos")

    def __init__(self, bounds):
        self.N = tuple(int(b) for b in bounds)
        if any(b < 0 for b in self.N):
            raise ValueError(f"box bounds must be >= 0, got {self.N}")
        self.r = len(self.N)
        self._indices = list(itertools.product(*(range(b + 1) for b in self.N)))
        self._pos = {idx: p for p, idx in enumerate(self._indices)}

    @property
    def size(self) -> int:
        return len(self._indices)

    def indices(self) -> list[tuple[int, ...]]:
        return list(self._indices)

    def position(self, idx) -> int:
        try:
            return self._pos[tuple(idx)]
        except KeyError:
            raise IndexError(f"{tuple(idx)} outside box {self.N}") from None

    def __contains__(self, idx) -> bool:
        return tuple(idx) in self._pos

    def doubled(self) -> "Box":
        return Box(tuple(2 * b for b in self.N))

    def halved(self) -> "Box":
        if any(b % 2 for b in self.N):
            raise ValueError(f"box {self.N} is not of the form 2N")
        return Box(tuple(b // 2 for b in self.N))

    def __eq__(self, other) -> bool:
        return isinstance(other, Box) and self.N == other.N

    def __hash__(self):
        return hash(self.N)

    def __repr__(self) -> str:
        return f"Box{self.N}"


def idx_add(i, j) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(i, j))


@dataclass(frozen=True)
class MultiVector:
    """A function from a box to QQ, stored in lexicographic index order."""

    box: Box
    data: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.data) != self.box.size:
            raise DimensionMismatch("data length != box size")

    @staticmethod
    def from_entries(box: Box, entries) -> "MultiVector":
        return MultiVector(box, tuple(QQ(e) for e in entries))

    @staticmethod
    def zero(box: Box) -> "MultiVector":
        return MultiVector(box, tuple(QQ(0) for _ in range(box.size)))

    @staticmethod
    def basis(box: Box, idx) -> "MultiVector":
        data = [QQ(0)] * box.size
        data[box.position(idx)] = QQ(1)
        return MultiVector(box, tuple(data))

    def __getitem__(self, idx) -> Fraction:
        return self.data[self.box.position(idx)]

    def is_zero(self) -> bool:
        return all(not e for e in self.data)

    def __add__(self, other: "MultiVector") -> "MultiVector":
        if self.box != other.box:
            raise DimensionMismatch("multi-vector addition: box mismatch")
        return MultiVector(self.box, tuple(a + b for a, b in zip(self.data, other.data)))

    def scale(self, c) -> "MultiVector":
        c = QQ(c)
        return MultiVector(self.box, tuple(c * a for a in self.data))

    def to_json(self) -> dict:
        return {"N": list(self.box.N), "data": [format_scalar(e) for e in self.data]}

    @staticmethod
    def from_json(doc: dict) -> "MultiVector":
        box = Box(doc["N"])
        return MultiVector.from_entries(box, [parse_scalar(s) for s in doc["data"]])


class MultiMatrix:
    """A matrix whose rows/columns are indexed by a box or by a plain range."""

    __slots__ = ("row_box", "col_box", "nrows", "ncols", "data")

    def __init__(self, data, row_box: Box | None = None, col_box: Box | None = None):
        self.data = [[QQ(e) for e in row] for row in data]
        self.nrows = len(self.data)
        self.ncols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.ncols for r in self.data):
            raise DimensionMismatch("ragged multi-matrix")
        if row_box is not None and row_box.size != self.nrows:
            raise DimensionMismatch("row box size != number of rows")
        if col_box is not None and col_box.size != self.ncols:
            raise DimensionMismatch("column box size != number of columns")
        self.row_box = row_box
        self.col_box = col_box

    @staticmethod
    def identity_on_box(box: Box) -> "MultiMatrix":
        return MultiMatrix(Mat.identity(box.size).data, box, box)

    def entry(self, i, j) -> Fraction:
        r = self.row_box.position(i) if self.row_box else int(i)
        c = self.col_box.position(j) if self.col_box else int(j)
        return self.data[r][c]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiMatrix)
            and self.row_box == other.row_box
            and self.col_box == other.col_box
            and self.data == other.data
        )

    def __repr__(self) -> str:
        return f"MultiMatrix({self.nrows}x{self.ncols}, rows={self.row_box}, cols={self.col_box})"

    def as_mat(self) -> Mat:
        return Mat(self.data)

    def row_space(self) -> Subspace:
        """Span of the rows, i.e. the image of the transpose."""
        return Subspace(self.ncols, self.data)


def mm_add(a: MultiMatrix, b: MultiMatrix) -> MultiMatrix:
    if (a.nrows, a.ncols) != (b.nrows, b.ncols) or a.row_box != b.row_box or a.col_box != b.col_box:
        raise DimensionMismatch("multi-matrix addition: shape mismatch")
    data = [[x + y for x, y in zip(r, s)] for r, s in zip(a.data, b.data)]
    return MultiMatrix(data, a.row_box, a.col_box)


def mm_mul(a: MultiMatrix, b: MultiMatrix) -> MultiMatrix:
    if a.ncols != b.nrows or a.col_box != b.row_box:
        raise DimensionMismatch("multi-matrix product: inner spaces differ")
    out = [[QQ(0)] * b.ncols for _ in range(a.nrows)]
    for i, arow in enumerate(a.data):
        orow = out[i]
        for k, x in enumerate(arow):
            if not x:
                continue
            brow = b.data[k]
            for j, y in enumerate(brow):
                if y:
                    orow[j] += x * y
    return MultiMatrix(out, a.row_box, b.col_box)


def mm_transpose(a: MultiMatrix) -> MultiMatrix:
    data = [[a.data[i][j] for i in range(a.nrows)] for j in range(a.ncols)]
    return MultiMatrix(data, a.col_box, a.row_box)


def mm_algebra(a: MultiMatrix, b: MultiMatrix | None, op: str) -> MultiMatrix:
    """Addition, product, or transpose of multi-matrices."""
    if op == "add":
        return mm_add(a, b)
    if op == "mul":
        return mm_mul(a, b)
    if op == "transpose":
        return mm_transpose(a)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# catalecticants

@dataclass(frozen=True)
class Catalecticant:
    """Symmetric multi-matrix on box x box with entry(i, j) = b[i + j]."""

    box: Box
    b: MultiVector

    def __post_init__(self):
        if self.b.box != self.box.doubled():
            raise DimensionMismatch("defining vector must live on the doubled box")

    def entry(self, i, j) -> Fraction:
        return self.b[idx_add(i, j)]

    def as_multimatrix(self) -> MultiMatrix:
        idxs = self.box.indices()
        data = [[self.b[idx_add(i, j)] for j in idxs] for i in idxs]
        return MultiMatrix(data, self.box, self.box)

    def to_json(self) -> dict:
        """Only the defining vector is serialized; the matrix is redundant."""
        return self.b.to_json()

    @staticmethod
    def from_json(doc: dict) -> "Catalecticant":
        return catalecticant_from_vector(MultiVector.from_json(doc))


def catalecticant_from_vector(b: MultiVector) -> Catalecticant:
    """Build B with B_ij = b_{i+j}; b must live on a box of the form 2N."""
    return Catalecticant(b.box.halved(), b)


def catalecticant_to_vector(cat: Catalecticant | MultiMatrix) -> MultiVector:
    """Recover the unique defining vector of a catalectic multi-matrix.

    Every index of the doubled box splits as i + j with i, j in the box
    (componentwise min with N gives one such split); consistency across all
    splits is validated.
    """
    if isinstance(cat, Catalecticant):
        return cat.b
    if cat.row_box is None or cat.row_box != cat.col_box:
        raise DimensionMismatch("not a box-square multi-matrix")
    box = cat.row_box
    doubled = box.doubled()
    data = []
    for beta in doubled.indices():
        i = tuple(min(b, n) for b, n in zip(beta, box.N))
        j = tuple(b - a for b, a in zip(beta, i))
        data.append(cat.entry(i, j))
    b = MultiVector.from_entries(doubled, data)
    rebuilt = Catalecticant(box, b).as_multimatrix()
    if rebuilt.data != cat.data:
        raise ValueError("multi-matrix is not catalectic")
    return b


def catalecticant(arg):
    """Convert between a defining vector and a catalecticant, either way."""
    if isinstance(arg, MultiVector):
        return catalecticant_from_vector(arg)
    return catalecticant_to_vector(arg)


# ---------------------------------------------------------------------------
# the convolution mu and symmetric squares of box spaces

def mu(f: MultiVector, g: MultiVector) -> MultiVector:
    """Coefficient table of the product polynomial f*g, on the doubled box."""
    if f.box != g.box:
        raise DimensionMismatch("mu needs both factors on the same box")
    box = f.box
    doubled = box.doubled()
    out = [QQ(0)] * doubled.size
    idxs = box.indices()
    for p, i in enumerate(idxs):
        a = f.data[p]
        if not a:
            continue
        for q, j in enumerate(idxs):
            c = g.data[q]
            if c:
                out[doubled.position(idx_add(i, j))] += a * c
    return MultiVector(doubled, tuple(out))


def pair_monomials(size: int) -> list[tuple[int, int]]:
    """Basis z_p z_q (p <= q) of the symmetric square of a box space."""
    return [(p, q) for p in range(size) for q in range(p, size)]


def pair_coords(u, w) -> list[Fraction]:
    """Monomial coefficients of the symmetric product u.w: the polynomial
    (sum u_p z_p)(sum w_q z_q)."""
    n = len(u)
    out = []
    for p in range(n):
        for q in range(p, n):
            if p == q:
                out.append(u[p] * w[p])
            else:
                out.append(u[p] * w[q] + u[q] * w[p])
    return out


def mu_of_pair_coords(box: Box, coords) -> MultiVector:
    """Linear extension of z_p z_q -> basis vector at i_p + i_q."""
    doubled = box.doubled()
    idxs = box.indices()
    out = [QQ(0)] * doubled.size
    for (p, q), c in zip(pair_monomials(box.size), coords, strict=True):
        if c:
            out[doubled.position(idx_add(idxs[p], idxs[q]))] += c
    return MultiVector(doubled, tuple(out))


@dataclass
class DotSpan:
    """Span of symmetrized products of two subspaces of a box space.

    ``pair_span`` lives in the symmetric square of the box space (monomial
    coordinates); ``mu_image`` is its image under mu in the doubled box.
    The product of two subspaces is taken as the span of their symmetrized
    products; when the subspaces intersect trivially this agrees with the
    sum of the two tensor orders inside the symmetric square.
    """

    pair_span: Subspace
    mu_image: Subspace


def dot_span(box: Box, s1: Subspace, s2: Subspace) -> DotSpan:
    if s1.ambient_dim != box.size or s2.ambient_dim != box.size:
        raise DimensionMismatch("subspaces must live on the box space")
    size = box.size
    pair_dim = size * (size + 1) // 2
    pair_rows = []
    mu_rows = []
    for u in s1.basis:
        for w in s2.basis:
            coords = pair_coords(list(u), list(w))
            pair_rows.append(coords)
            mu_rows.append(list(mu_of_pair_coords(box, coords).data))
    return DotSpan(Subspace(pair_dim, pair_rows), Subspace(box.doubled().size, mu_rows))


def mu_image_span(box: Box, s1: Subspace, s2: Subspace) -> Subspace:
    """Just the mu image of dot_span, skipping the symmetric-square rows."""
    if s1.ambient_dim != box.size or s2.ambient_dim != box.size:
        raise DimensionMismatch("subspaces must live on the box space")
    rows = [list(mu(MultiVector(box, u), MultiVector(box, w)).data)
            for u in s1.basis for w in s2.basis]
    return Subspace(box.doubled().size, rows)


def mu_kernel(box: Box, s: Subspace) -> Subspace:
    """Kernel of mu restricted to the symmetric square of s.

    Returned in monomial coordinates on the symmetric square of the full box
    space, so it can be compared with ``dot_span(...).pair_span``.
    """
    if s.ambient_dim != box.size:
        raise DimensionMismatch("subspace must live on the box space")
    basis = [list(r) for r in s.basis]
    d = len(basis)
    if d == 0:
        return Subspace.zero(box.size * (box.size + 1) // 2)
    inner_pairs = pair_monomials(d)
    cols = []
    for p, q in inner_pairs:
        coords = pair_coords(basis[p], basis[q])
        cols.append(list(mu_of_pair_coords(box, coords).data))
    m = Mat([[cols[c][r] for c in range(len(cols))] for r in range(box.doubled().size)])
    _, _, ker = rref(m)
    out_rows = []
    for coeff in ker.basis:
        total = [QQ(0)] * (box.size * (box.size + 1) // 2)
        for c, (p, q) in zip(coeff, inner_pairs):
            if c:
                for t, e in enumerate(pair_coords(basis[p], basis[q])):
                    if e:
                        total[t] += c * e
        out_rows.append(total)
    return Subspace(box.size * (box.size + 1) // 2, out_rows)


# ---------------------------------------------------------------------------
# conjugation and rank-one factors

def phi_A(a: MultiMatrix, b: Catalecticant) -> Mat:
    """The symmetric matrix A B A^t."""
    if a.col_box != b.box:
        raise DimensionMismatch("column box of A must match the catalecticant box")
    prod = mm_mul(mm_mul(a, b.as_multimatrix()), mm_transpose(a))
    return prod.as_mat()


def rank_one_factor(m: Mat) -> list[Fraction]:
    """Projective factor of a symmetric matrix of rank one.

    Returns u with first nonzero coordinate 1 such that m is a scalar times
    u u^t.  The scalar is discarded: membership questions downstream are
    scale-invariant, and forcing a rational square root would be wrong.
    Raises RankOneError("zero") on the zero matrix and
    RankOneError("not rank one") when the rank is at least two.
    """
    if m.rows != m.cols or m != m.transpose():
        raise ValueError("rank_one_factor needs a symmetric matrix")
    lead_row = next((i for i, row in enumerate(m.data) if any(row)), None)
    if lead_row is None:
        raise RankOneError("zero")
    row = m.data[lead_row]
    lead_col = next(j for j, e in enumerate(row) if e)
    u = [e / row[lead_col] for e in row]
    c = m.data[lead_col][lead_col]
    for i in range(m.rows):
        for j in range(m.cols):
            if m.data[i][j] != c * u[i] * u[j]:
                raise RankOneError("not rank one")
    if not c:
        raise RankOneError("not rank one")
    return u


rank1_factor = rank_one_factor
