"""Finite dimensional modules over sl(n), built functorially.

A :class:`Rep` stores one action matrix per catalog generator and is checked
to be a Lie algebra homomorphism on construction.  Derived constructions
(dual, wedge and symmetric powers, tensor products, and the symmetric square
realized on symmetric matrices) all act by the derivation rule, so weights of
the standard module propagate to integer weights everywhere.

Weights are plain tuples of integers: the eigenvalues of the simple coroot
actions H_1, ..., H_{n-1}.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DimensionMismatch, StructuralError
from .lie import LieAlgebra, bracket
from .linalg import (
    Mat,
    PivotedSpan,
    QQ,
    Subspace,
    rref,
    solve,
    vec_is_zero,
)

Weight = tuple[int, ...]

# Above this pairs*dim budget the construction-time homomorphism check runs
# on the simple generator pairs plus a seeded sample instead of all pairs.
_FULL_HOM_CHECK_BUDGET = 60_000
_SAMPLED_HOM_PAIRS = 60

_REP_CACHE: dict[tuple[int, str], "Rep"] = {}


class Rep:
    """A finite-dimensional sl(n)-module given by explicit action matrices."""

    def __init__(self, algebra: LieAlgebra, label: str, action: dict[str, Mat],
                 basis_labels: list[str] | None = None, *, _checked: bool = False):
        self.algebra = algebra
        self.label = label
        self.action = action
        dims = {m.rows for m in action.values()} | {m.cols for m in action.values()}
        if len(dims) != 1:
            raise DimensionMismatch("action matrices of mixed sizes")
        self.dim = dims.pop()
        self.basis_labels = basis_labels or [f"b{i}" for i in range(self.dim)]
        if set(action) != set(algebra.catalog):
            raise ValueError("action must cover exactly the generator catalog")
        if not _checked:
            self.verify_homomorphism()

    def __repr__(self) -> str:
        return f"Rep({self.label} of {self.algebra}, dim {self.dim})"

    def act(self, symbol: str, v: list[Fraction]) -> list[Fraction]:
        try:
            m = self.action[symbol]
        except KeyError:
            raise KeyError(f"unknown generator symbol {symbol!r}") from None
        return m.apply(v)

    def act_word(self, word, v: list[Fraction]) -> list[Fraction]:
        """Apply a word of generator symbols right-to-left (empty = identity)."""
        if len(v) != self.dim:
            raise DimensionMismatch("vector length != module dimension")
        out = list(map(QQ, v))
        for symbol in reversed(list(word)):
            out = self.act(symbol, out)
        return out

    def act_algebra_elem(self, m: Mat) -> Mat:
        """Action matrix of an arbitrary element of sl(n) (linear extension)."""
        coeffs = self.algebra.expand_in_catalog(m)
        out = [[QQ(0)] * self.dim for _ in range(self.dim)]
        for sym, c in coeffs.items():
            for i, row in enumerate(self.action[sym].data):
                orow = out[i]
                for j, e in enumerate(row):
                    if e:
                        orow[j] += c * e
        return Mat(out)

    def verify_homomorphism(self) -> None:
        """Check action([a,b]) = commutator of actions on generator pairs.

        All pairs when affordable; otherwise all simple-generator pairs plus a
        seeded sample.  A failure is a construction bug and raises.
        """
        catalog = self.algebra.catalog
        if len(catalog) ** 2 * self.dim <= _FULL_HOM_CHECK_BUDGET:
            pairs = list(itertools.product(catalog, repeat=2))
        else:
            simple = self.algebra.simple_symbols()
            pairs = list(itertools.product(simple, repeat=2))
            rng = random.Random(0)
            for _ in range(_SAMPLED_HOM_PAIRS):
                pairs.append((rng.choice(catalog), rng.choice(catalog)))
        gens = self.algebra.generators
        for sa, sb in pairs:
            ra, rb = self.action[sa], self.action[sb]
            lhs = ra * rb - rb * ra
            rhs = self.act_algebra_elem(bracket(gens[sa], gens[sb]))
            if lhs != rhs:
                raise StructuralError(
                    f"action is not a Lie homomorphism on ({sa}, {sb}) in {self.label}")

    def sym_square(self) -> "Rep":
        """The module S^2(V) on symmetric matrices (memoized)."""
        return derived_rep(self, "sym2")


# ---------------------------------------------------------------------------
# constructions

def standard_rep(g: LieAlgebra) -> Rep:
    key = (g.n, "std")
    if key not in _REP_CACHE:
        labels = [f"e{i + 1}" for i in range(g.n)]
        _REP_CACHE[key] = Rep(g, "std", dict(g.generators), labels, _checked=True)
    return _REP_CACHE[key]


def _dual_action(r: Rep) -> dict[str, Mat]:
    return {s: m.transpose().scale(QQ(-1)) for s, m in r.action.items()}


def _wedge_action(r: Rep, k: int):
    basis = list(itertools.combinations(range(r.dim), k))
    index = {b: i for i, b in enumerate(basis)}
    action = {}
    for sym, rho in r.action.items():
        out = [[QQ(0)] * len(basis) for _ in range(len(basis))]
        for cidx, subset in enumerate(basis):
            for pos, s in enumerate(subset):
                for m in range(r.dim):
                    a = rho.data[m][s]
                    if not a:
                        continue
                    if m == s:
                        out[cidx][cidx] += a
                        continue
                    if m in subset:
                        continue
                    rest = subset[:pos] + subset[pos + 1:]
                    new = tuple(sorted(rest + (m,)))
                    sign = (-1) ** (pos - new.index(m))
                    out[index[new]][cidx] += sign * a
        action[sym] = Mat(out)
    labels = ["^".join(r.basis_labels[i] for i in b) for b in basis]
    return action, labels


def _sym_action(r: Rep, k: int):
    basis = list(itertools.combinations_with_replacement(range(r.dim), k))
    index = {b: i for i, b in enumerate(basis)}
    action = {}
    for sym, rho in r.action.items():
        out = [[QQ(0)] * len(basis) for _ in range(len(basis))]
        for cidx, mon in enumerate(basis):
            for s in set(mon):
                mult = mon.count(s)
                pos = mon.index(s)
                rest = mon[:pos] + mon[pos + 1:]
                for m in range(r.dim):
                    a = rho.data[m][s]
                    if a:
                        new = tuple(sorted(rest + (m,)))
                        out[index[new]][cidx] += mult * a
        action[sym] = Mat(out)
    labels = [".".join(r.basis_labels[i] for i in b) for b in basis]
    return action, labels


def _tensor_action(r1: Rep, r2: Rep):
    n1, n2 = r1.dim, r2.dim
    action = {}
    for sym in r1.algebra.catalog:
        a, b = r1.action[sym], r2.action[sym]
        out = [[QQ(0)] * (n1 * n2) for _ in range(n1 * n2)]
        for i in range(n1):
            for j in range(n2):
                col = i * n2 + j
                for m in range(n1):
                    if a.data[m][i]:
                        out[m * n2 + j][col] += a.data[m][i]
                for m in range(n2):
                    if b.data[m][j]:
                        out[i * n2 + m][col] += b.data[m][j]
        action[sym] = Mat(out)
    labels = [f"{x}(x){y}" for x in r1.basis_labels for y in r2.basis_labels]
    return action, labels


def sym_pairs(n: int) -> list[tuple[int, int]]:
    """Index pairs (k, m) with k <= m, in lexicographic order."""
    return [(k, m) for k in range(n) for m in range(k, n)]


def sym_pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(sym_pairs(n))}


def mat_to_sym_coords(m: Mat) -> list[Fraction]:
    """Upper-triangle coordinates of a symmetric matrix."""
    return [m.data[k][l] for k, l in sym_pairs(m.rows)]


def sym_coords_to_mat(coords, n: int) -> Mat:
    m = Mat.zero(n, n)
    for (k, l), c in zip(sym_pairs(n), coords, strict=True):
        m.data[k][l] = QQ(c)
        m.data[l][k] = QQ(c)
    return m


def sym_product_coords(u, w) -> list[Fraction]:
    """Coordinates of the symmetric product u.w = (u w^t + w u^t)/2."""
    n = len(u)
    half = QQ(1, 2)
    out = []
    for k, l in sym_pairs(n):
        if k == l:
            out.append(u[k] * w[k])
        else:
            out.append(half * (u[k] * w[l] + u[l] * w[k]))
    return out


def _sym2_action(r: Rep):
    """Action on S^2(V) realized as symmetric matrices, M -> rho M + M rho^t."""
    n = r.dim
    pairs = sym_pairs(n)
    index = sym_pair_index(n)
    action = {}
    for sym, rho in r.action.items():
        out = [[QQ(0)] * len(pairs) for _ in range(len(pairs))]
        for cidx, (k, m) in enumerate(pairs):
            # C = rho . (E_km + E_mk); the result is C + C^t
            c_entries: dict[tuple[int, int], Fraction] = {}
            for a in range(n):
                v = rho.data[a][k]
                if v:
                    c_entries[(a, m)] = c_entries.get((a, m), QQ(0)) + v
                if k != m:
                    v = rho.data[a][m]
                    if v:
                        c_entries[(a, k)] = c_entries.get((a, k), QQ(0)) + v
            accum: dict[tuple[int, int], Fraction] = {}
            for (a, b), v in c_entries.items():
                if a == b:
                    # C and C^t both contribute on the diagonal
                    accum[(a, a)] = accum.get((a, a), QQ(0)) + 2 * v
                else:
                    key = (a, b) if a < b else (b, a)
                    accum[key] = accum.get(key, QQ(0)) + v
            for key, v in accum.items():
                out[index[key]][cidx] += v
        action[sym] = Mat(out)
    labels = [f"{r.basis_labels[k]}.{r.basis_labels[m]}" for k, m in pairs]
    return action, labels


def derived_rep(r: Rep, kind: str, k: int | None = None, other: "Rep | None" = None) -> Rep:
    """Build dual / wedge k / sym k / tensor / sym2 of a module.

    Results are cached per (algebra, label); modules are immutable so sharing
    is safe.
    """
    g = r.algebra
    if kind == "dual":
        label = f"dual({r.label})"
        build = lambda: (_dual_action(r), [f"{x}'" for x in r.basis_labels])
    elif kind == "wedge":
        if k is None or not 1 <= k <= r.dim:
            raise ValueError(f"wedge degree {k} out of range 1..{r.dim}")
        label = f"wedge({k},{r.label})"
        build = lambda: _wedge_action(r, k)
    elif kind == "sym":
        if k is None or k < 1:
            raise ValueError(f"sym degree {k} must be >= 1")
        label = f"sym({k},{r.label})"
        build = lambda: _sym_action(r, k)
    elif kind == "tensor":
        if other is None or other.algebra.n != g.n:
            raise ValueError("tensor needs a second module over the same algebra")
        label = f"tensor({r.label},{other.label})"
        build = lambda: _tensor_action(r, other)
    elif kind == "sym2":
        label = f"sym2({r.label})"
        build = lambda: _sym2_action(r)
    else:
        raise ValueError(f"unknown construction {kind!r}")
    key = (g.n, label)
    if key not in _REP_CACHE:
        action, labels = build()
        _REP_CACHE[key] = Rep(g, label, action, labels)
    return _REP_CACHE[key]


def act_word(r: Rep, word, v) -> list[Fraction]:
    return r.act_word(word, v)


# ---------------------------------------------------------------------------
# weights

def _h_matrices(r: Rep) -> list[Mat]:
    return [r.action[s] for s in r.algebra.h_symbols()]


def _integer_eigenvalue_candidates(h: Mat) -> list[int]:
    """All integers inside the Gershgorin discs of h."""
    import math

    lo, hi = None, None
    for i, row in enumerate(h.data):
        radius = sum((abs(e) for j, e in enumerate(row) if j != i), QQ(0))
        center = row[i]
        a, b = center - radius, center + radius
        lo = a if lo is None or a < lo else lo
        hi = b if hi is None or b > hi else hi
    if lo is None:
        return []
    return list(range(math.ceil(lo), math.floor(hi) + 1))


def weight_decomposition(r: Rep) -> list[tuple[Weight, Subspace]]:
    """Joint eigenspaces of the simple coroot actions, sorted by weight.

    The modules built here carry diagonal coroot actions, which is handled
    directly; otherwise the integer spectrum is searched inside the
    Gershgorin bounds, refining the split one coroot at a time.  If the
    eigenspaces do not exhaust the module the actions were not
    simultaneously diagonalizable with integer spectrum, which flags a bug
    loudly.
    """
    hmats = _h_matrices(r)
    n = r.dim
    diagonal = all(
        all(not h.data[i][j] for i in range(n) for j in range(n) if i != j)
        for h in hmats
    )
    spaces: list[tuple[Weight, Subspace]] = []
    if diagonal:
        groups: dict[tuple, list[int]] = {}
        for j in range(n):
            w = tuple(h.data[j][j] for h in hmats)
            groups.setdefault(w, []).append(j)
        for w, idxs in groups.items():
            rows = []
            for j in idxs:
                e = [QQ(0)] * n
                e[j] = QQ(1)
                rows.append(e)
            spaces.append((_as_int_weight(w, r), Subspace(n, rows)))
    else:
        partial: list[tuple[tuple[int, ...], Subspace]] = [((), Subspace.full(n))]
        for h in hmats:
            candidates = _integer_eigenvalue_candidates(h)
            refined = []
            for prefix, space in partial:
                covered = 0
                for lam in candidates:
                    if covered == space.dim:
                        break
                    shifted = Mat([[h.data[i][j] - (lam if i == j else 0)
                                    for j in range(n)] for i in range(n)])
                    piece = space.intersect(rref(shifted)[2])
                    if piece.dim:
                        covered += piece.dim
                        refined.append((prefix + (lam,), piece))
                if covered != space.dim:
                    raise StructuralError(
                        f"coroot action on {r.label} is not diagonalizable "
                        "over QQ with integer spectrum")
            partial = refined
        spaces = [(_as_int_weight(w, r), s) for w, s in partial]
    total = sum(s.dim for _, s in spaces)
    if total != n:
        raise StructuralError(
            f"weight spaces of {r.label} cover dim {total} != {n}; "
            "coroot actions are not simultaneously diagonalizable over QQ")
    spaces.sort(key=lambda ws: ws[0], reverse=True)
    return spaces


def _as_int_weight(w, r: Rep) -> Weight:
    out = []
    for c in w:
        c = QQ(c)
        if c.denominator != 1:
            raise StructuralError(f"non-integer weight {w} in {r.label}")
        out.append(int(c))
    return tuple(out)


def weights_multiset(r: Rep) -> dict[Weight, int]:
    """Weight -> multiplicity map; the raw input of character-level oracles."""
    return {w: s.dim for w, s in weight_decomposition(r)}


def weight_of(r: Rep, v) -> Weight:
    """Weight of a weight vector; raises when v is not a joint eigenvector."""
    if vec_is_zero(v):
        raise ValueError("zero vector has no weight")
    lead = next(i for i, e in enumerate(v) if e)
    out = []
    for h in _h_matrices(r):
        hv = h.apply(v)
        lam = hv[lead] / v[lead]
        if hv != [lam * e for e in v]:
            raise ValueError("not a weight vector")
        out.append(lam)
    return _as_int_weight(tuple(out), r)


def highest_weight_vectors(r: Rep) -> list[tuple[Weight, Subspace]]:
    """For each weight, the subspace killed by every positive-root action."""
    xs = [r.action[s] for s in r.algebra.x_symbols()]
    out = []
    for w, space in weight_decomposition(r):
        basis = [list(row) for row in space.basis]
        d = len(basis)
        stacked = []
        for x in xs:
            images = [x.apply(b) for b in basis]
            for i in range(r.dim):
                stacked.append([images[j][i] for j in range(d)])
        _, _, ker = rref(Mat(stacked))
        if ker.dim == 0:
            continue
        rows = []
        for coeff in ker.basis:
            v = [QQ(0)] * r.dim
            for c, b in zip(coeff, basis):
                if c:
                    for i in range(r.dim):
                        if b[i]:
                            v[i] += c * b[i]
            rows.append(v)
        out.append((w, Subspace(r.dim, rows)))
    return out


# ---------------------------------------------------------------------------
# cyclic modules and isotypic pieces

@dataclass
class ClosureResult:
    subspace: Subspace
    words: list[tuple[str, ...]]


def cyclic_closure(r: Rep, w) -> ClosureResult:
    """Smallest action-invariant subspace containing w, with provenance words.

    Breadth-first span growth over the X/Y generators (the coroots are their
    brackets, so invariance under them follows).  Each recorded word, read
    left to right and applied right-to-left, sends w to a vector that enlarged
    the span when it was found.
    """
    span = PivotedSpan(r.dim)
    words: list[tuple[str, ...]] = []
    if not span.add(w):
        return ClosureResult(span.to_subspace(), words)
    xy = r.algebra.xy_symbols()
    frontier: list[tuple[list[Fraction], tuple[str, ...]]] = [(list(map(QQ, w)), ())]
    while frontier:
        fresh = []
        for v, word in frontier:
            for sym in xy:
                u = r.act(sym, v)
                if span.add(u):
                    new_word = (sym,) + word
                    words.append(new_word)
                    fresh.append((u, new_word))
        frontier = fresh
    return ClosureResult(span.to_subspace(), words)


def cyclic_module(r: Rep, w) -> Subspace:
    return cyclic_closure(r, w).subspace


@lru_cache(maxsize=None)
def _cartan_inverse(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of the A_{n-1} Cartan matrix."""
    size = n - 1
    cartan = Mat([[QQ(2) if i == j else (QQ(-1) if abs(i - j) == 1 else QQ(0))
                   for j in range(size)] for i in range(size)])
    cols = []
    for j in range(size):
        e = [QQ(0)] * size
        e[j] = QQ(1)
        cols.append(solve(cartan, e))
    return tuple(tuple(cols[j][i] for j in range(size)) for i in range(size))


def dominance_height(n: int, w: Weight) -> Fraction:
    """Coefficient sum of w written in the simple-root basis."""
    inv = _cartan_inverse(n)
    return sum((sum(row[j] * w[j] for j in range(len(w))) for row in inv), QQ(0))


@dataclass
class IsotypicComponent:
    weight: Weight
    multiplicity: int
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


@dataclass
class IsotypicDecomposition:
    components: list[IsotypicComponent]
    multiplicity_free: bool

    def dims(self) -> list[int]:
        return [c.dim for c in self.components]


def isotypic_decomposition(r: Rep) -> IsotypicDecomposition:
    """One component per highest weight, sorted from the dominant end down.

    Each component is the sum of the cyclic modules of that weight's highest
    weight vectors.  Components must be independent and exhaust the module
    (semisimplicity); any violation aborts, as it can only be a bug.
    """
    comps = []
    for w, hw_space in highest_weight_vectors(r):
        span = PivotedSpan(r.dim)
        for row in hw_space.basis:
            sub = cyclic_module(r, list(row))
            span.add_all(list(b) for b in sub.basis)
        comps.append(IsotypicComponent(w, hw_space.dim, span.to_subspace()))
    total = PivotedSpan(r.dim)
    dim_sum = 0
    for c in comps:
        dim_sum += c.dim
        total.add_all(list(b) for b in c.subspace.basis)
    if r.dim and (total.dim != r.dim or dim_sum != r.dim):
        raise StructuralError(
            f"isotypic components of {r.label} sum to {dim_sum} (span {total.dim}) "
            f"!= {r.dim}; module is not exhausted")
    comps.sort(key=lambda c: (-dominance_height(r.algebra.n, c.weight), c.weight),
               reverse=False)
    return IsotypicDecomposition(comps, all(c.multiplicity == 1 for c in comps))


def exp_nilpotent(r: Rep, symbol: str, t) -> Mat:
    """Exact exponential sum of t times a nilpotent generator action."""
    if symbol.startswith("H"):
        raise ValueError(f"{symbol} is not nilpotent; only X/Y generators allowed")
    m = r.action[symbol]
    t = QQ(t)
    out = Mat.identity(r.dim)
    power = Mat.identity(r.dim)
    coeff = QQ(1)
    for k in range(1, r.dim + 2):
        power = m * power
        if power.is_zero():
            return out
        coeff = coeff * t / k
        out = out + power.scale(coeff)
    raise StructuralError(f"action of {symbol} on {r.label} is not nilpotent")

