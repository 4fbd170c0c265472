"""Quadric ideals of orbit closures and the rank-one correspondence.

For a module V and a nonzero y, the pipeline here computes the smallest
submodule of S^2(V) containing y y^t (the orbit module), its annihilator (the
degree-two ideal), a generator sequence D with multi-degree bound N such that
the monomials D^n(yy) span the orbit module, the multi-matrix A whose columns
are D^i y / i!, and the two directions of the correspondence between rank-one
conjugates A B A^t of catalecticants and points x with x x^t in the orbit
module.  ``certify_irreducibility`` runs the whole chain on seeded samples
and reports exact per-check verdicts.

Degenerate observations that the theory leaves open are recorded rather than
judged: hyperplanes W whose product span is not a hyperplane are counted, and
conjugates with phi_A(B) = 0 are logged (the zero matrix has no projective
rank-one factor, so it is excluded from the Veronese locus).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapExceeded, StructuralError
from .linalg import (
    Mat,
    PivotedSpan,
    QQ,
    Subspace,
    annihilator,
    format_scalar,
    rank,
    solve,
    vec_is_zero,
)
from .multimatrix import (
    Box,
    MultiMatrix,
    MultiVector,
    catalecticant_from_vector,
    mu,
    mu_image_span,
    phi_A,
    rank_one_factor,
)
from .reps import (
    Rep,
    cyclic_closure,
    exp_nilpotent,
    mat_to_sym_coords,
    sym_coords_to_mat,
    sym_pairs,
    sym_product_coords,
)

MAX_BOX = 20000
MAX_SEQ_LEN = 40
_LEIBNIZ_SAMPLE = 200


def sym_square(x) -> Mat:
    """The symmetric matrix x x^t."""
    return Mat([[a * b for b in x] for a in x])


def _yy_coords(r: Rep, y) -> list[Fraction]:
    if len(y) != r.dim:
        raise ValueError("vector length != module dimension")
    return mat_to_sym_coords(sym_square(list(map(QQ, y))))


_MODULE_CACHE: dict[tuple, Subspace] = {}


def orbit_module(r: Rep, y) -> Subspace:
    """Smallest submodule of S^2(V) containing y y^t, in symmetric coordinates."""
    if vec_is_zero(y):
        raise ValueError("orbit module needs a nonzero vector")
    key = (r.algebra.n, r.label, tuple(map(QQ, y)))
    if key not in _MODULE_CACHE:
        _MODULE_CACHE[key] = cyclic_closure(r.sym_square(), _yy_coords(r, y)).subspace
    return _MODULE_CACHE[key]


@dataclass
class QuadraticIdeal:
    """Degree-two ideal of the orbit closure of y.

    ``basis`` holds symmetric matrices Phi acting on S^2(V) through the full
    trace pairing <Phi, M> = sum_ij Phi_ij M_ij; evaluating the quadric at a
    point x is x^t Phi x.  ``dual_coords`` is the same space as an annihilator
    in plain symmetric coordinates.
    """

    rep: Rep
    module: Subspace
    dual_coords: Subspace
    basis: list[Mat]

    @property
    def dim(self) -> int:
        return self.dual_coords.dim

    def evaluate(self, k: int, x) -> Fraction:
        phi = self.basis[k]
        total = QQ(0)
        for i, row in enumerate(phi.data):
            for j, e in enumerate(row):
                if e:
                    total += e * x[i] * x[j]
        return total

    def vanishes_at(self, x) -> bool:
        return all(not self.evaluate(k, x) for k in range(len(self.basis)))


def _dual_row_to_matrix(row, n: int) -> Mat:
    phi = Mat.zero(n, n)
    half = QQ(1, 2)
    for (k, l), c in zip(sym_pairs(n), row, strict=True):
        if k == l:
            phi.data[k][k] = QQ(c)
        else:
            phi.data[k][l] = half * c
            phi.data[l][k] = half * c
    return phi


def ideal_of_module(r: Rep, module: Subspace) -> QuadraticIdeal:
    """Annihilator of a submodule of S^2(V), as trace-pairing symmetric matrices."""
    dual = annihilator(module)
    basis = [_dual_row_to_matrix(list(row), r.dim) for row in dual.basis]
    return QuadraticIdeal(r, module, dual, basis)


def quadric_ideal(r: Rep, y, module: Subspace | None = None) -> QuadraticIdeal:
    """Degree-two ideal of the orbit closure of y."""
    if module is None:
        module = orbit_module(r, y)
    return ideal_of_module(r, module)


def my_membership(r: Rep, y, x) -> bool:
    """Whether x x^t lies in the orbit module of y (scale invariant in x)."""
    if vec_is_zero(y):
        raise ValueError("membership needs a nonzero reference vector")
    return orbit_module(r, y).contains(_yy_coords(r, x))


# ---------------------------------------------------------------------------
# generator sequences

@dataclass(frozen=True)
class GenSeq:
    """Ordered generator symbols D with multi-degree box bound N.

    The guarantee, validated on construction: D^m y = 0 whenever any exponent
    exceeds its bound (with trailing exponents inside theirs), and the
    monomials D^n(yy) for n in the doubled box span the orbit module.
    ``words_log`` records the closure words that supplied extension letters.
    """

    symbols: tuple[str, ...]
    box: Box
    words_log: tuple[tuple[str, ...], ...] = ()

    @property
    def r(self) -> int:
        return len(self.symbols)


def _check_xy(r: Rep, symbols) -> list[Mat]:
    mats = []
    for s in symbols:
        if s.startswith("H"):
            raise ValueError(f"{s} is a coroot; the sequence needs nilpotent letters")
        mats.append(r.action[s])
    return mats


def nilpotency_bound(r: Rep, symbols, u, max_box: int | None = None) -> Box:
    """Per-axis degree bounds after which the iterated action annihilates u.

    Recursive-maximum construction, from the last letter backwards: N_s is
    the largest exponent of D_s that leaves some already-bounded tail vector
    D_{s+1}^{i_{s+1}} ... D_r^{i_r} u alive.
    """
    cap = MAX_BOX if max_box is None else max_box
    mats = _check_xy(r, symbols)
    tails = [list(map(QQ, u))]
    bounds = [0] * len(mats)
    for s in range(len(mats) - 1, -1, -1):
        m = mats[s]
        frontier = [v for v in tails if not vec_is_zero(v)]
        grown = list(tails)
        k = 0
        while frontier:
            frontier = [m.apply(v) for v in frontier]
            frontier = [v for v in frontier if not vec_is_zero(v)]
            if not frontier:
                break
            k += 1
            if k > r.dim:
                raise StructuralError(f"action of {symbols[s]} is not nilpotent")
            grown.extend(frontier)
        bounds[s] = k
        tails = grown
        size = 1
        for b in bounds[s:]:
            size *= b + 1
        if size > cap:
            raise CapExceeded(
                "box",
                f"multi-degree box exceeds cap {cap}",
                {"bounds": list(bounds), "cap": cap},
            )
    return Box(bounds)


def _normalized_columns(r: Rep, symbols, box: Box, y) -> dict[tuple[int, ...], list[Fraction]]:
    """Column table i -> D^i y / i!, filled in lexicographic order."""
    table: dict[tuple[int, ...], list[Fraction]] = {}
    for idx in box.indices():
        if not any(idx):
            table[idx] = list(map(QQ, y))
            continue
        s = next(k for k, e in enumerate(idx) if e)
        prev = idx[:s] + (idx[s] - 1,) + idx[s + 1:]
        table[idx] = [e / idx[s] for e in r.act(symbols[s], table[prev])]
    return table


def _normalized_dyy(s2: Rep, symbols, doubled: Box, yy) -> dict[tuple[int, ...], list[Fraction]]:
    """Table n -> D^n(yy) / n! over the doubled box, in the symmetric square."""
    table: dict[tuple[int, ...], list[Fraction]] = {}
    for idx in doubled.indices():
        if not any(idx):
            table[idx] = list(map(QQ, yy))
            continue
        s = next(k for k, e in enumerate(idx) if e)
        prev = idx[:s] + (idx[s] - 1,) + idx[s + 1:]
        table[idx] = [e / idx[s] for e in s2.act(symbols[s], table[prev])]
    return table


def _validate_vanishing(r: Rep, symbols, box: Box, y) -> None:
    """Exact check that raising any single exponent past its bound kills y."""
    mats = [r.action[s] for s in symbols]
    for j in range(len(symbols)):
        v = list(map(QQ, y))
        for s in range(len(symbols) - 1, -1, -1):
            times = box.N[s] + (1 if s == j else 0)
            for _ in range(times):
                v = mats[s].apply(v)
        if not vec_is_zero(v):
            raise StructuralError(
                f"nilpotency bound violated on axis {j}",
                {"symbols": list(symbols), "N": list(box.N)},
            )


def _monomial_span_dim(s2: Rep, symbols, box: Box, yy) -> int:
    table = _normalized_dyy(s2, symbols, box.doubled(), yy)
    span = PivotedSpan(s2.dim)
    for v in table.values():
        span.add(v)
    return span.dim


_GENSEQ_CACHE: dict[tuple, GenSeq] = {}


def generator_sequence(r: Rep, y, max_box: int | None = None,
                       max_len: int | None = None) -> GenSeq:
    """Find (D, N) whose monomials applied to yy span the whole orbit module.

    Verification driven: start from all the lowering generators, measure the
    monomial span directly, and on a shortfall append the letters of closure
    words (the recorded provenance of the orbit module) and retry.  A final
    prune pass drops letters whose removal keeps the verified span contract,
    since every downstream cost is exponential in the sequence length.  Never
    returns a sequence whose span contract was not checked.
    """
    if vec_is_zero(y):
        raise ValueError("generator sequence needs a nonzero vector")
    key = (r.algebra.n, r.label, tuple(map(QQ, y)), max_box, max_len)
    if key in _GENSEQ_CACHE:
        return _GENSEQ_CACHE[key]
    cap_len = MAX_SEQ_LEN if max_len is None else max_len
    s2 = r.sym_square()
    yy = _yy_coords(r, y)
    closure = cyclic_closure(s2, yy)
    target = closure.subspace.dim
    words = tuple(closure.words)
    symbols = list(r.algebra.y_symbols())
    next_word = 0
    while True:
        box = nilpotency_bound(r, symbols, y, max_box=max_box)
        if _monomial_span_dim(s2, symbols, box, yy) == target:
            break
        while next_word < len(words):
            fresh = [s for s in words[next_word] if not s.startswith("H")]
            next_word += 1
            if fresh:
                break
        else:
            raise CapExceeded(
                "sequence",
                "sequence search exhausted: closure words did not close the span",
                {"span_dim": _monomial_span_dim(s2, symbols, box, yy),
                 "target_dim": target, "symbols": list(symbols)},
            )
        if len(symbols) + len(fresh) > cap_len:
            raise CapExceeded(
                "sequence",
                f"sequence length would exceed cap {cap_len}",
                {"span_dim": _monomial_span_dim(s2, symbols, box, yy),
                 "target_dim": target, "length": len(symbols) + len(fresh)},
            )
        symbols.extend(fresh)
    changed = True
    while changed and len(symbols) > 1:
        changed = False
        for i in range(len(symbols) - 1, -1, -1):
            if len(symbols) == 1:
                break
            candidate = symbols[:i] + symbols[i + 1:]
            try:
                cand_box = nilpotency_bound(r, candidate, y, max_box=max_box)
            except CapExceeded:
                continue
            if _monomial_span_dim(s2, candidate, cand_box, yy) == target:
                symbols = candidate
                changed = True
    box = nilpotency_bound(r, symbols, y, max_box=max_box)
    _validate_vanishing(r, symbols, box, y)
    gs = GenSeq(tuple(symbols), box, words)
    _GENSEQ_CACHE[key] = gs
    return gs


def build_A(r: Rep, y, gs: GenSeq) -> MultiMatrix:
    """The dim(V) x box multi-matrix whose column at i is D^i y / i!."""
    table = _normalized_columns(r, gs.symbols, gs.box, y)
    idxs = gs.box.indices()
    data = [[table[i][k] for i in idxs] for k in range(r.dim)]
    return MultiMatrix(data, None, gs.box)


class _SeqData:
    """Shared exact artifacts of a (rep, y, generator sequence) triple."""

    def __init__(self, r: Rep, y, gs: GenSeq):
        self.rep = r
        self.y = list(map(QQ, y))
        self.gs = gs
        self.s2 = r.sym_square()
        self.yy = _yy_coords(r, y)
        self.doubled = gs.box.doubled()
        self.columns = _normalized_columns(r, gs.symbols, gs.box, y)
        self.dyy = _normalized_dyy(self.s2, gs.symbols, self.doubled, self.yy)
        self._pair_sums: dict[tuple[int, ...], list[Fraction]] | None = None
        self._pivot_positions: list[int] | None = None
        self._pivot_mat: Mat | None = None

    def pair_sum(self, n) -> list[Fraction]:
        """sum over i + j = n of the symmetric product of columns i and j."""
        self._ensure_pairs()
        return self._pair_sums[tuple(n)]

    def _ensure_pairs(self) -> None:
        if self._pair_sums is not None:
            return
        sums = {n: [QQ(0)] * self.s2.dim for n in self.doubled.indices()}
        idxs = self.gs.box.indices()
        for a, i in enumerate(idxs):
            ci = self.columns[i]
            for j in idxs[a:]:
                n = tuple(x + z for x, z in zip(i, j))
                acc = sums[n]
                weight = 1 if i == j else 2
                for t, e in enumerate(sym_product_coords(ci, self.columns[j])):
                    if e:
                        acc[t] += weight * e
        self._pair_sums = sums

    def _ensure_solver(self) -> None:
        """Lex-earliest independent coefficient columns; enough for one solution."""
        if self._pivot_positions is not None:
            return
        self._ensure_pairs()
        span = PivotedSpan(self.s2.dim)
        pivots = []
        for pos, n in enumerate(self.doubled.indices()):
            if span.add(self._pair_sums[n]):
                pivots.append(pos)
        self._pivot_positions = pivots
        idxs = self.doubled.indices()
        cols = [self._pair_sums[idxs[p]] for p in pivots]
        self._pivot_mat = Mat([[cols[c][t] for c in range(len(cols))]
                               for t in range(self.s2.dim)])

    def solve_coefficients(self, target) -> list[Fraction] | None:
        """One b with sum b_n C_n = target, free variables at zero, or None.

        Restricting to the lex-earliest independent columns gives exactly the
        particular solution full row reduction would produce.
        """
        self._ensure_solver()
        small = solve(self._pivot_mat, target)
        if small is None:
            return None
        b = [QQ(0)] * self.doubled.size
        for p, val in zip(self._pivot_positions, small):
            b[p] = val
        return b

    def phi_of_coefficients(self, b) -> Mat:
        """A B A^t for the catalecticant defined by b, via sum b_n C_n."""
        self._ensure_pairs()
        acc = [QQ(0)] * self.s2.dim
        for pos, n in enumerate(self.doubled.indices()):
            c = b[pos]
            if c:
                for t, e in enumerate(self._pair_sums[n]):
                    if e:
                        acc[t] += c * e
        return sym_coords_to_mat(acc, self.rep.dim)

    def system_matrix(self) -> Mat:
        """Columns indexed by the doubled box: the coefficient vectors C_n."""
        self._ensure_pairs()
        cols = [self._pair_sums[n] for n in self.doubled.indices()]
        return Mat([[cols[c][t] for c in range(len(cols))]
                    for t in range(self.s2.dim)])


def leibniz_check(r: Rep, y, gs: GenSeq, n, _data: _SeqData | None = None) -> bool:
    """Exact identity D^n(yy)/n! = sum_{i+j=n} (D^i y/i!)(D^j y/j!)."""
    n = tuple(int(k) for k in n)
    if n not in gs.box.doubled():
        raise ValueError(f"{n} is outside the doubled box {gs.box.doubled().N}")
    data = _data or _SeqData(r, y, gs)
    return data.dyy[n] == data.pair_sum(n)


def decompose_Q(r: Rep, y, gs: GenSeq, word, _data: _SeqData | None = None) -> MultiVector:
    """Coefficients b on the doubled box with Q(yy) = sum b_{i+j} A_i A_j.

    Solved exactly with free variables at zero; the residual is re-verified.
    An unsolvable system means the sequence violated its span contract, which
    is reported loudly with diagnostics.
    """
    data = _data or _SeqData(r, y, gs)
    target = data.s2.act_word(word, data.yy)
    b = data.solve_coefficients(target)
    if b is None:
        raise StructuralError(
            "decomposition inconsistent: generator sequence span contract violated",
            {"word": list(word), "symbols": list(gs.symbols), "N": list(gs.box.N)},
        )
    residual = list(target)
    for pos, n in enumerate(data.doubled.indices()):
        c = b[pos]
        if c:
            for t, e in enumerate(data.pair_sum(n)):
                if e:
                    residual[t] -= c * e
    if not vec_is_zero(residual):
        raise StructuralError("decomposition residual nonzero", {"word": list(word)})
    return MultiVector(data.doubled, tuple(b))


# ---------------------------------------------------------------------------
# hyperplanes and the rank-one correspondence

@dataclass(frozen=True)
class HyperplaneReport:
    kind: str  # "hyperplane" | "full" | "smaller"
    codim: int


def hyperplane_check(a: MultiMatrix, w: Subspace,
                     _full: Subspace | None = None) -> HyperplaneReport:
    """Codimension of mu(W . im A^t) inside mu(im A^t . im A^t).

    Whether a hyperplane W of im A^t keeps codimension one after taking
    products and convolving varies with W, so the property is measured per
    instance and reported, never assumed.
    """
    if a.col_box is None:
        raise ValueError("A must carry a column box")
    im_at = a.row_space()
    if w.ambient_dim != im_at.ambient_dim or not im_at.contains_subspace(w):
        raise ValueError("W must be a subspace of im A^t")
    if w.dim != im_at.dim - 1:
        raise ValueError("W must have codimension one in im A^t")
    box = a.col_box
    full = _full if _full is not None else mu_image_span(box, im_at, im_at)
    part = mu_image_span(box, w, im_at)
    codim = full.dim - part.dim
    kind = "hyperplane" if codim == 1 else ("full" if codim == 0 else "smaller")
    return HyperplaneReport(kind, codim)


@dataclass
class ForwardOutcome:
    ok: bool
    kind: str  # "rank1" | "rank0" | "discrepancy"
    rank: int | None = None
    b: MultiVector | None = None
    factor: list[Fraction] | None = None
    membership: bool | None = None
    failure: str | None = None
    witness: dict = field(default_factory=dict)


@dataclass
class ReverseOutcome:
    ok: bool
    b: MultiVector | None = None
    failure: str | None = None


def _forward(r: Rep, y, gs: GenSeq, a: MultiMatrix, w: Subspace, v,
             _data: _SeqData | None = None, _full: Subspace | None = None,
             _part: Subspace | None = None) -> ForwardOutcome:
    box = a.col_box
    im_at = a.row_space()
    if w.dim != im_at.dim - 1 or not im_at.contains_subspace(w):
        raise ValueError("W must be a hyperplane of im A^t")
    full = _full if _full is not None else mu_image_span(box, im_at, im_at)
    part = _part if _part is not None else mu_image_span(box, w, im_at)
    if full.dim - part.dim != 1:
        raise ValueError(
            f"forward direction needs a hyperplane W, got codimension {full.dim - part.dim}")
    if not im_at.contains(v) or w.contains(v):
        raise ValueError("v must span a complement of W in im A^t")
    mvv = mu(MultiVector.from_entries(box, v), MultiVector.from_entries(box, v))
    pivots = list(full.pivots)
    rows = [[row[p] for p in pivots] for row in part.basis]
    rhs = [QQ(0)] * len(rows)
    rows.append([mvv.data[p] for p in pivots])
    rhs.append(QQ(1))
    t = solve(Mat(rows), rhs)
    if t is None:
        return ForwardOutcome(
            ok=False, kind="discrepancy",
            failure="mu(v.v) lies inside mu(W.im A^t); functional normalization impossible",
            witness={"v": [format_scalar(e) for e in v]},
        )
    b_data = [QQ(0)] * gs.box.doubled().size
    for p, val in zip(pivots, t):
        b_data[p] = val
    b = MultiVector(gs.box.doubled(), tuple(b_data))
    if _data is not None:
        phi = _data.phi_of_coefficients(list(b.data))
    else:
        phi = phi_A(a, catalecticant_from_vector(b))
    rk = rank(phi)
    if rk > 1:
        return ForwardOutcome(
            ok=False, kind="discrepancy", rank=rk, b=b,
            failure="phi_A(B) has rank above one for a constructed hyperplane functional",
            witness={"rank": rk},
        )
    if rk == 0:
        # the zero matrix has no projective factor: excluded from the
        # Veronese locus and logged by the caller
        return ForwardOutcome(ok=True, kind="rank0", rank=0, b=b)
    factor = rank_one_factor(phi)
    member = my_membership(r, y, factor)
    if not member:
        return ForwardOutcome(
            ok=False, kind="discrepancy", rank=1, b=b, factor=factor, membership=False,
            failure="rank-one factor fails membership",
            witness={"factor": [format_scalar(e) for e in factor]},
        )
    return ForwardOutcome(ok=True, kind="rank1", rank=1, b=b, factor=factor, membership=True)


def _reverse(r: Rep, y, gs: GenSeq, a: MultiMatrix, x,
             _data: _SeqData | None = None) -> ReverseOutcome:
    if not my_membership(r, y, x):
        raise ValueError("reverse direction needs a point with x x^t in the orbit module")
    data = _data or _SeqData(r, y, gs)
    target = _yy_coords(r, x)
    b = data.solve_coefficients(target)
    if b is None:
        return ReverseOutcome(ok=False, failure="no catalecticant preimage: system inconsistent")
    bv = MultiVector(data.doubled, tuple(b))
    if data.phi_of_coefficients(b) != sym_square(list(map(QQ, x))):
        return ReverseOutcome(ok=False, b=bv, failure="preimage fails to reproduce x x^t")
    return ReverseOutcome(ok=True, b=bv)


def rank1_correspondence(r: Rep, y, gs: GenSeq, a: MultiMatrix, direction: str,
                         W: Subspace | None = None, v=None, x=None):
    """Forward (from a hyperplane W and complement v) or reverse (from x).

    Structural failures come back as outcome records with exact witnesses;
    only precondition violations raise.
    """
    if direction == "forward":
        if W is None or v is None:
            raise ValueError("forward direction needs W and v")
        return _forward(r, y, gs, a, W, v)
    if direction == "reverse":
        if x is None:
            raise ValueError("reverse direction needs x")
        return _reverse(r, y, gs, a, x)
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# certification

@dataclass
class CertReport:
    """Structured outcome of one certification run."""

    rep_label: str
    dims: dict
    rank_A: int
    symbols: list[str]
    N: list[int]
    seed: int
    trials: int
    leibniz_trials: int = 0
    leibniz_passes: int = 0
    decompose_trials: int = 0
    decompose_passes: int = 0
    hyperplane_trials: int = 0
    hyperplane_good: int = 0
    hyperplane_bad: int = 0
    forward_trials: int = 0
    forward_passes: int = 0
    forward_rank0: int = 0
    reverse_trials: int = 0
    reverse_passes: int = 0
    trial_log: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    verdict: str = "inconclusive"

    def to_json_dict(self) -> dict:
        return {
            "rep": self.rep_label,
            "dims": self.dims,
            "rank_A": self.rank_A,
            "generator_sequence": {"symbols": self.symbols, "N": self.N},
            "seed": self.seed,
            "trials": self.trials,
            "checks": {
                "leibniz": {"trials": self.leibniz_trials, "passes": self.leibniz_passes},
                "decompose": {"trials": self.decompose_trials, "passes": self.decompose_passes},
                "hyperplane": {
                    "trials": self.hyperplane_trials,
                    "good": self.hyperplane_good,
                    "bad": self.hyperplane_bad,
                },
                "forward": {
                    "trials": self.forward_trials,
                    "passes": self.forward_passes,
                    "rank0": self.forward_rank0,
                },
                "reverse": {"trials": self.reverse_trials, "passes": self.reverse_passes},
            },
            "trial_log": self.trial_log,
            "witnesses": self.witnesses,
            "verdict": self.verdict,
        }


def _hyperplane_from_functional(im_at: Subspace, psi):
    """Kernel of a functional inside im A^t plus a complement vector, or None."""
    basis = [list(row) for row in im_at.basis]
    vals = [sum(p * e for p, e in zip(psi, row)) for row in basis]
    j = next((k for k, c in enumerate(vals) if c), None)
    if j is None:
        return None
    rows = []
    for k in range(im_at.dim):
        if k == j:
            continue
        f = vals[k] / vals[j]
        rows.append([a - f * b for a, b in zip(basis[k], basis[j])])
    return Subspace(im_at.ambient_dim, rows), basis[j]


def _sample_hyperplane(rng: random.Random, im_at: Subspace):
    """A random hyperplane of im A^t with a complement vector, or None."""
    for _ in range(50):
        psi = [QQ(rng.randint(-3, 3)) for _ in range(im_at.ambient_dim)]
        found = _hyperplane_from_functional(im_at, psi)
        if found is not None:
            return found
    return None


def evaluation_hyperplane(a: MultiMatrix, point):
    """The hyperplane of im A^t cut by evaluation at a rational point.

    Multi-vectors are polynomials on the box; the functional sends f to
    f(point).  These hyperplanes populate the locus where the product-span
    property actually holds, so they are the natural forward-direction
    samples; random functionals mostly land outside it.  Returns None when
    the evaluation vanishes on all of im A^t.
    """
    box = a.col_box
    if box is None or len(point) != box.r:
        raise ValueError("point length must match the number of box axes")
    point = [QQ(t) for t in point]
    psi = []
    for idx in box.indices():
        val = QQ(1)
        for t, k in zip(point, idx):
            val *= t ** k
        psi.append(val)
    return _hyperplane_from_functional(a.row_space(), psi)


def _orbit_sample(rng: random.Random, r: Rep, y) -> tuple[list[Fraction], list]:
    """A product of at most 4 nilpotent exponentials applied to y, with its recipe."""
    xy = r.algebra.xy_symbols()
    x = list(map(QQ, y))
    recipe = []
    for _ in range(rng.randint(1, 4)):
        sym = rng.choice(xy)
        t = QQ(rng.choice([-2, -1, 1, 2]))
        x = exp_nilpotent(r, sym, t).apply(x)
        recipe.append([sym, format_scalar(t)])
    return x, recipe


def certify_irreducibility(r: Rep, y, trials: int = 25, seed: int = 0,
                           max_box: int | None = None) -> CertReport:
    """End-to-end seeded certification of one (module, vector) instance.

    Runs generator_sequence, build_A, the Leibniz identity over the doubled
    box (sampled when large), seeded decompositions, hyperplane checks,
    and both directions of the rank-one correspondence.  The verdict is
    ``consistent`` when every structural assertion held exactly,
    ``discrepancy`` (with witnesses) otherwise.  Deterministic given seed.
    """
    if vec_is_zero(y):
        raise ValueError("certification needs a nonzero vector")
    rng = random.Random(seed)
    gs = generator_sequence(r, y, max_box=max_box)
    data = _SeqData(r, y, gs)
    a = build_A(r, y, gs)
    module = orbit_module(r, y)
    ideal = quadric_ideal(r, y, module=module)
    s2dim = data.s2.dim
    report = CertReport(
        rep_label=r.label,
        dims={"V": r.dim, "S2V": s2dim, "module": module.dim, "ideal": ideal.dim},
        rank_A=rank(a.as_mat()),
        symbols=list(gs.symbols),
        N=list(gs.box.N),
        seed=seed,
        trials=trials,
    )

    ns = data.doubled.indices()
    if len(ns) > _LEIBNIZ_SAMPLE:
        ns = [ns[0]] + rng.sample(ns[1:], _LEIBNIZ_SAMPLE - 1)
    for n in ns:
        report.leibniz_trials += 1
        if leibniz_check(r, y, gs, n, _data=data):
            report.leibniz_passes += 1
        else:
            report.witnesses.append({"check": "leibniz", "n": list(n)})

    catalog = r.algebra.catalog
    for _ in range(trials):
        word = tuple(rng.choice(catalog) for _ in range(rng.randint(0, 4)))
        report.decompose_trials += 1
        try:
            decompose_Q(r, y, gs, word, _data=data)
            report.decompose_passes += 1
            report.trial_log.append({"check": "decompose", "word": list(word),
                                     "ok": True})
        except StructuralError as exc:
            report.trial_log.append({"check": "decompose", "word": list(word),
                                     "ok": False})
            report.witnesses.append({"check": "decompose", "word": list(word),
                                     "detail": str(exc)})

    im_at = a.row_space()
    full_image = mu_image_span(gs.box, im_at, im_at)

    def process_hyperplane(w, v, source):
        report.hyperplane_trials += 1
        part_image = mu_image_span(gs.box, w, im_at)
        codim = full_image.dim - part_image.dim
        if codim != 1:
            report.hyperplane_bad += 1
            report.trial_log.append({
                "check": "hyperplane",
                "source": source,
                "kind": "full" if codim == 0 else "smaller",
                "codim": codim,
            })
            return
        report.hyperplane_good += 1
        report.forward_trials += 1
        out = _forward(r, y, gs, a, w, v, _data=data, _full=full_image,
                       _part=part_image)
        if out.kind == "rank0":
            report.forward_rank0 += 1
        report.trial_log.append({"check": "forward", "source": source,
                                 "kind": out.kind, "ok": out.ok})
        if out.ok and out.kind == "rank1":
            report.forward_passes += 1
        elif not out.ok:
            report.witnesses.append({"check": "forward", "detail": out.failure,
                                     **out.witness})

    # random functionals populate the good/bad ledger
    for _ in range(trials):
        sampled = _sample_hyperplane(rng, im_at)
        if sampled is not None:
            process_hyperplane(*sampled, "random")
    # evaluation-point hyperplanes top up the forward coverage, since random
    # functionals mostly miss the locus where the product span is a hyperplane
    attempts = 0
    while report.forward_trials < trials and attempts < 4 * trials:
        attempts += 1
        point = tuple(QQ(rng.randint(-3, 3), rng.choice([1, 1, 2]))
                      for _ in range(gs.box.r))
        sampled = evaluation_hyperplane(a, point)
        if sampled is not None:
            process_hyperplane(*sampled, "evaluation")

    for _ in range(trials):
        x, recipe = _orbit_sample(rng, r, y)
        report.reverse_trials += 1
        if not my_membership(r, y, x):
            report.trial_log.append({"check": "reverse", "recipe": recipe, "ok": False})
            report.witnesses.append({"check": "reverse-membership", "recipe": recipe,
                                     "x": [format_scalar(e) for e in x]})
            continue
        out = _reverse(r, y, gs, a, x, _data=data)
        report.trial_log.append({"check": "reverse", "recipe": recipe, "ok": out.ok})
        if out.ok:
            report.reverse_passes += 1
        else:
            report.witnesses.append({"check": "reverse", "recipe": recipe,
                                     "detail": out.failure})

    executed = (report.leibniz_trials + report.decompose_trials +
                report.hyperplane_trials + report.reverse_trials)
    if report.witnesses:
        report.verdict = "discrepancy"
    elif executed == 0:
        report.verdict = "inconclusive"
    else:
        report.verdict = "consistent"
    return report
