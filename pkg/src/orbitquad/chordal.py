"""Restricted chordal varieties of Grassmannians and component bookkeeping.

The symmetric square of a wedge power splits into pairwise non-isomorphic
pieces Theta_0, Theta_2, ... (indexed here from the dominant end down).  The
p-restricted chordal variety is sampled by joining wedge vectors of two
k-planes meeting in dimension exactly max(k - 2p + 1, 0); its degree-two
ideal is computed from stabilized spans of orbit modules and compared
exactly with the tails of the isotypic decomposition.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import CapExceeded, GenericVectorError
from .lie import make_sl
from .linalg import Mat, PivotedSpan, QQ, rank, solve, vec_is_zero
from .orbit import QuadraticIdeal, ideal_of_module, orbit_module
from .reps import (
    IsotypicDecomposition,
    Rep,
    cyclic_module,
    derived_rep,
    isotypic_decomposition,
    standard_rep,
    weight_of,
)


def sperner_bound(s: int) -> int:
    """Largest family of pairwise-incomparable subsets of an s-element set."""
    if s < 1:
        raise ValueError("sperner_bound needs s >= 1")
    return comb(s, s // 2)


def antichain_brute_force(s: int) -> int:
    """Exhaustive maximum antichain size; the oracle for small s.

    Branch and bound over families of pairwise-incomparable subsets; feasible
    through s = 5 (32 subsets).
    """
    subsets = list(range(1 << s))
    incomparable = {a: set() for a in subsets}
    for a, b in itertools.combinations(subsets, 2):
        if a & b != a and a & b != b:
            incomparable[a].add(b)
            incomparable[b].add(a)
    best = 0

    def extend(candidates, size):
        nonlocal best
        if size > best:
            best = size
        if not candidates or size + len(candidates) <= best:
            return
        v = candidates[0]
        rest = candidates[1:]
        extend([u for u in rest if u in incomparable[v]], size + 1)
        extend(rest, size)

    extend(subsets, 0)
    return best


def lemma_suma_check(r: Rep, hw_selection) -> bool:
    """Whether the module generated by a sum of highest weight vectors of
    pairwise distinct weights is the direct sum of the pieces they generate."""
    weights = []
    for v in hw_selection:
        w = weight_of(r, v)
        for sym in r.algebra.x_symbols():
            if not vec_is_zero(r.act(sym, v)):
                raise ValueError("selection contains a non-highest-weight vector")
        if w in weights:
            raise ValueError(f"repeated weight {w} in selection")
        weights.append(w)
    total = [QQ(0)] * r.dim
    expected = 0
    for v in hw_selection:
        total = [a + QQ(b) for a, b in zip(total, v)]
        expected += cyclic_module(r, v).dim
    return cyclic_module(r, total).dim == expected


# ---------------------------------------------------------------------------
# chordal sampling

@dataclass(frozen=True)
class ChordalSpec:
    """Parameters of the p-restricted chordal variety of Gr(k) in QQ^n."""

    n: int
    k: int
    p: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError("need 1 <= k <= n")
        if self.p < 1:
            raise ValueError("need p >= 1")

    @property
    def meet_dim(self) -> int:
        """Generic intersection dimension of the two sampled planes."""
        return max(self.k - 2 * self.p + 1, 0)

    def wedge_rep(self) -> Rep:
        return derived_rep(standard_rep(make_sl(self.n)), "wedge", self.k)


def _det(rows) -> Fraction:
    rows = [list(r) for r in rows]
    n = len(rows)
    det = QQ(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return QQ(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = QQ(1) / rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c]:
                f = rows[r][c] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return det


def wedge_coordinates(vectors, n: int) -> list[Fraction]:
    """Coordinates of v_1 ^ ... ^ v_k in the lexicographic wedge basis."""
    k = len(vectors)
    out = []
    for subset in itertools.combinations(range(n), k):
        out.append(_det([[v[j] for j in subset] for v in vectors]))
    return out


def chordal_sample(spec: ChordalSpec, seed: int) -> list[Fraction]:
    """A point on a chord joining two planes meeting in dimension exactly
    max(k - 2p + 1, 0); deterministic per seed."""
    rng = random.Random(seed)
    n, k, d = spec.n, spec.k, spec.meet_dim

    def rand_vec():
        return [QQ(rng.randint(-3, 3)) for _ in range(n)]

    for _ in range(200):
        shared = [rand_vec() for _ in range(d)]
        left = shared + [rand_vec() for _ in range(k - d)]
        right = shared + [rand_vec() for _ in range(k - d)]
        if rank(Mat(left)) != k or rank(Mat(right)) != k:
            continue
        if rank(Mat(left + right[d:])) != 2 * k - d:
            continue
        lam = QQ(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3]))
        mu_ = QQ(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3]))
        wl = wedge_coordinates(left, n)
        wr = wedge_coordinates(right, n)
        return [lam * a + mu_ * b for a, b in zip(wl, wr)]
    raise CapExceeded("chordal_resample", "could not sample planes with the "
                      f"required intersection dimension {d}", {"seed": seed})


@dataclass
class ChordalReport:
    """Outcome of the restricted-chordal ideal computation."""

    spec: ChordalSpec
    isotypic: IsotypicDecomposition
    ideal: QuadraticIdeal
    span_dim: int
    matched_tail: int | None
    samples_used: int
    seed: int

    @property
    def isotypic_dims(self) -> list[int]:
        return self.isotypic.dims()

    def to_json_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "k": self.spec.k,
            "p": self.spec.p,
            "meet_dim": self.spec.meet_dim,
            "isotypic": [
                {"index": i, "weight": list(c.weight), "dim": c.dim}
                for i, c in enumerate(self.isotypic.components)
            ],
            "span_dim": self.span_dim,
            "ideal_dim": self.ideal.dim,
            "matched_tail": self.matched_tail,
            "samples_used": self.samples_used,
            "seed": self.seed,
        }


def chordal_ideal(spec: ChordalSpec, samples: int = 0, seed: int = 0) -> ChordalReport:
    """Degree-two ideal of the p-restricted chordal variety, by sampling.

    Folds orbit modules of sampled chord points until one more sample stops
    growing the span, then annihilates and compares the span with the partial
    sums of the isotypic components (exact subspace equality, not dimension
    counting).  ``samples`` bounds the budget; 0 means four times dim S^2(V).
    """
    rep = spec.wedge_rep()
    s2 = rep.sym_square()
    decomp = isotypic_decomposition(s2)
    if not decomp.multiplicity_free:
        raise ValueError("symmetric square is not multiplicity free")
    budget = samples if samples > 0 else 4 * s2.dim
    rng = random.Random(seed)
    span = PivotedSpan(s2.dim)
    used = 0
    stabilized = False
    for _ in range(budget):
        x = chordal_sample(spec, rng.randrange(1 << 30))
        module = orbit_module(rep, x)
        grew = span.add_all(list(row) for row in module.basis)
        used += 1
        if used > 1 and not grew:
            stabilized = True
            break
    if not stabilized:
        raise CapExceeded(
            "stabilization",
            f"span still growing after {used} samples",
            {"samples": used, "span_dim": span.dim},
        )
    s_x = span.to_subspace()
    ideal = ideal_of_module(rep, s_x)
    matched = None
    partial = PivotedSpan(s2.dim)
    if s_x == partial.to_subspace():
        matched = 0
    for i, comp in enumerate(decomp.components):
        partial.add_all(list(row) for row in comp.subspace.basis)
        if s_x == partial.to_subspace():
            matched = i + 1
            break
    return ChordalReport(spec, decomp, ideal, s_x.dim, matched, used, seed)


# ---------------------------------------------------------------------------
# generic vectors and component analysis

def _projection_flags(s2_dim: int, components, yy) -> list[bool]:
    """Which isotypic projections of yy are nonzero."""
    rows = []
    blocks = []
    for comp in components:
        start = len(rows)
        rows.extend(list(r) for r in comp.subspace.basis)
        blocks.append((start, len(rows)))
    m = Mat([[rows[j][i] for j in range(len(rows))] for i in range(s2_dim)])
    coeffs = solve(m, yy)
    if coeffs is None:
        raise ValueError("components do not span the symmetric square")
    return [any(coeffs[j] for j in range(a, b)) for a, b in blocks]


def generic_vector(r: Rep, sampler, decomp: IsotypicDecomposition,
                   tries: int = 60) -> list[Fraction]:
    """First sample whose symmetric square projects nonzero onto every component.

    ``sampler`` maps a trial index to a vector, deterministically.  When the
    sampler's locus misses some component the retry cap fires and the error
    carries the set of component indices that were reached.
    """
    if not decomp.multiplicity_free:
        raise ValueError("decomposition must be multiplicity free")
    from .orbit import _yy_coords  # symmetric-square coordinates of the sample

    s2_dim = sum(c.dim for c in decomp.components)
    reachable: set[int] = set()
    for t in range(tries):
        y = sampler(t)
        if vec_is_zero(y):
            continue
        flags = _projection_flags(s2_dim, decomp.components, _yy_coords(r, y))
        reachable |= {i for i, f in enumerate(flags) if f}
        if all(flags):
            return list(map(QQ, y))
    raise GenericVectorError(frozenset(reachable), tries)


@dataclass
class ComponentReport:
    """Subset order of the isotypic supports of a family of points."""

    point_sets: list[frozenset[int]]
    merged: list[list[int]]  # groups of point indices with identical support
    containments: list[tuple[int, int]]  # (i, j) with M_{x_i} contained in M_{x_j}
    maximal_count: int
    free_indices: int
    bound: int
    bound_ok: bool
    details: dict = field(default_factory=dict)


def component_analysis(r: Rep, points) -> ComponentReport:
    """Containment order of the varieties M_{x_i} through isotypic supports.

    The support S_i of a point is the set of component indices with nonzero
    projection of x_i x_i^t; containment of varieties is reverse containment
    of ideals, i.e. S_i contained in S_j.  The number of maximal elements is
    checked against the antichain bound on the union of the supports.
    """
    if any(vec_is_zero(x) for x in points):
        raise ValueError("points must be nonzero")
    s2 = r.sym_square()
    decomp = isotypic_decomposition(s2)
    if not decomp.multiplicity_free:
        raise ValueError("symmetric square is not multiplicity free")
    from .orbit import _yy_coords

    sets = []
    for x in points:
        flags = _projection_flags(s2.dim, decomp.components, _yy_coords(r, x))
        sets.append(frozenset(i for i, f in enumerate(flags) if f))
    groups: dict[frozenset[int], list[int]] = {}
    for i, s in enumerate(sets):
        groups.setdefault(s, []).append(i)
    containments = [
        (i, j)
        for i, si in enumerate(sets)
        for j, sj in enumerate(sets)
        if i != j and si <= sj
    ]
    distinct = list(groups)
    maximal = [s for s in distinct if not any(s < t for t in distinct)]
    union = frozenset().union(*sets) if sets else frozenset()
    free = len(union)
    bound = sperner_bound(free) if free else 1
    return ComponentReport(
        point_sets=sets,
        merged=sorted(groups.values()),
        containments=sorted(containments),
        maximal_count=len(maximal),
        free_indices=free,
        bound=bound,
        bound_ok=len(maximal) <= bound,
        details={"component_dims": decomp.dims()},
    )
