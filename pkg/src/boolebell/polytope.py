"""Exact correlation polytopes for dichotomic observables.

Vertices come from enumerating deterministic sign assignments; facets come
from an incremental Double Description pass over the dual cone.  Everything
runs in rational arithmetic (fractions.Fraction), so inequality coefficients
are reproduced exactly and the output is bit-stable across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from .errors import DegeneratePolytope, DimensionMismatch, ScenarioTooLarge

MAX_OBSERVABLES = 24


@dataclass(frozen=True)
class Scenario:
    """n dichotomic observables plus the product monomials to correlate.

    Monomials are strictly increasing index tuples; a pair (i, j) stands for
    the product of outcomes i and j.  The polytope lives in one coordinate
    per monomial.
    """

    observable_count: int
    monomials: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.observable_count
        if n < 1:
            raise ValueError("need at least one observable")
        monos = tuple(tuple(int(i) for i in m) for m in self.monomials)
        object.__setattr__(self, "monomials", monos)
        if not monos:
            raise ValueError("need at least one monomial")
        seen = set()
        for mono in monos:
            if not mono:
                raise ValueError("empty monomial")
            if any(i < 0 or i >= n for i in mono):
                raise ValueError(f"monomial {mono} has indices outside 0..{n - 1}")
            if any(a >= b for a, b in zip(mono, mono[1:])):
                raise ValueError(f"monomial {mono} must be strictly increasing")
            if mono in seen:
                raise ValueError(f"duplicate monomial {mono}")
            seen.add(mono)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise ValueError("one label per observable")
            object.__setattr__(self, "labels", labels)

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    @classmethod
    def from_dict(cls, doc) -> "Scenario":
        return cls(
            observable_count=int(doc["observables"]),
            monomials=tuple(tuple(m) for m in doc["monomials"]),
            labels=tuple(doc["labels"]) if "labels" in doc else None,
        )

    def to_dict(self) -> dict:
        doc = {
            "observables": self.observable_count,
            "monomials": [list(m) for m in self.monomials],
        }
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc


SZ_SCENARIO = Scenario(3, ((0, 1), (0, 2), (1, 2)), ("X", "Y", "Z"))
CHSH_SCENARIO = Scenario(4, ((0, 2), (0, 3), (1, 2), (1, 3)), ("W", "X", "Y", "Z"))
SCENARIO_ALIASES = {"sz": SZ_SCENARIO, "chsh": CHSH_SCENARIO}


@dataclass(frozen=True)
class VRepresentation:
    """Vertex matrix of a polytope; rows are exact rational points."""

    dimension: int
    vertices: tuple[tuple, ...]

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if any(len(v) != self.dimension for v in verts):
            raise DimensionMismatch("vertex length does not match dimension")
        if len(set(verts)) != len(verts):
            raise ValueError("vertices must be pairwise distinct")


@dataclass(frozen=True, order=True)
class Facet:
    """Inequality offset + normal.x >= 0 with coprime integer coefficients."""

    offset: int
    normal: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "offset", int(self.offset))
        object.__setattr__(self, "normal", tuple(int(a) for a in self.normal))

    def margin(self, point) -> Fraction:
        if len(point) != len(self.normal):
            raise DimensionMismatch("point/facet dimension mismatch")
        return Fraction(self.offset) + sum(
            Fraction(a) * Fraction(x) for a, x in zip(self.normal, point)
        )

    def to_dict(self) -> dict:
        return {"b": self.offset, "a": list(self.normal)}


@dataclass(frozen=True)
class HRepresentation:
    """Facet list of a polytope, sorted lexicographically by (offset, normal)."""

    dimension: int
    facets: tuple[Facet, ...]

    def __post_init__(self):
        facets = tuple(self.facets)
        object.__setattr__(self, "facets", facets)
        if any(len(f.normal) != self.dimension for f in facets):
            raise DimensionMismatch("facet normal length does not match dimension")

    def to_dict(self) -> dict:
        return {"facets": [f.to_dict() for f in self.facets]}

    @classmethod
    def from_dict(cls, doc, dimension=None) -> "HRepresentation":
        facets = tuple(Facet(f["b"], tuple(f["a"])) for f in doc["facets"])
        dim = dimension if dimension is not None else len(facets[0].normal)
        return cls(dim, facets)


@dataclass(frozen=True)
class MembershipReport:
    """Per-facet margins of a point, plus an inside/boundary/outside verdict."""

    status: str
    margins: tuple[Fraction, ...]
    worst_margin: Fraction
    worst_facet: Facet


# ---------------------------------------------------------------------------
# exact linear algebra on lists of rational rows


def _exact_rank(rows) -> int:
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank]
        inv = 1 / lead[col]
        for i in range(rank + 1, len(work)):
            if work[i][col] != 0:
                f = work[i][col] * inv
                work[i] = [a - f * b for a, b in zip(work[i], lead)]
        rank += 1
        if rank == len(work):
            break
    return rank


def _exact_inverse(mat):
    n = len(mat)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(mat)
    ]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _canonical_ray(ray) -> tuple[int, ...]:
    """Scale a rational ray by a positive factor to coprime integers."""
    fracs = [Fraction(x) for x in ray]
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fracs), 1)
    ints = [int(f * lcm) for f in fracs]
    g = reduce(math.gcd, (abs(i) for i in ints), 0)
    return tuple(i // g for i in ints) if g else tuple(ints)


def _dot(row, ray) -> Fraction:
    return sum(Fraction(a) * b for a, b in zip(row, ray))


# ---------------------------------------------------------------------------
# operations


def enumerate_vertices(scenario: Scenario) -> VRepresentation:
    """All distinct monomial-value tuples over the 2^n sign assignments.

    Assignment k maps bit i to observable i (0 -> +1, 1 -> -1); tuples are
    collected in first-seen order, which fixes the constraint order of the
    hull computation downstream.
    """
    n = scenario.observable_count
    if n > MAX_OBSERVABLES:
        raise ScenarioTooLarge(f"{n} observables exceed the 2^{MAX_OBSERVABLES} guardrail")
    seen: dict[tuple, None] = {}
    for assignment in range(1 << n):
        signs = [-1 if (assignment >> i) & 1 else 1 for i in range(n)]
        row = tuple(math.prod(signs[i] for i in mono) for mono in scenario.monomials)
        if row not in seen:
            seen[row] = None
    return VRepresentation(scenario.dimension, tuple(seen))


@lru_cache(maxsize=128)
def _cached_vertices(scenario: Scenario) -> VRepresentation:
    return enumerate_vertices(scenario)


def affine_dimension(v: VRepresentation) -> int:
    """Exact rank of {v_i - v_0}; the dimension of the affine hull."""
    if not v.vertices:
        raise ValueError("need at least one vertex")
    base = v.vertices[0]
    diffs = [
        tuple(Fraction(a) - Fraction(b) for a, b in zip(vert, base))
        for vert in v.vertices[1:]
    ]
    return _exact_rank(diffs)


def dd_hull(v: VRepresentation) -> HRepresentation:
    """Facet enumeration by the incremental Double Description method.

    Each vertex w contributes the homogeneous constraint b + a.w >= 0 on the
    inequality coefficients (b, a).  Starting from a simplicial cone built
    out of d+1 independent constraints, the remaining constraints are
    processed in input order; adjacent ray pairs (zero-set inclusion test,
    confirmed by exact rank) are combined into new extreme rays.  The
    surviving rays are exactly the facets, canonicalized and sorted.
    """
    d = v.dimension
    if affine_dimension(v) != d:
        raise DegeneratePolytope(
            "vertex set is not full-dimensional; project to its affine hull first"
        )

    rows = [tuple([Fraction(1)] + [Fraction(x) for x in w]) for w in v.vertices]
    m = len(rows)

    # greedy independent subset for the initial simplicial cone
    init: list[int] = []
    for i in range(m):
        if _exact_rank([rows[j] for j in init] + [rows[i]]) == len(init) + 1:
            init.append(i)
        if len(init) == d + 1:
            break
    inv = _exact_inverse([rows[i] for i in init])
    rays = [_canonical_ray([inv[r][c] for r in range(d + 1)]) for c in range(d + 1)]
    zero_sets = [frozenset(init[k] for k in range(d + 1) if k != c) for c in range(d + 1)]
    processed = list(init)
    init_set = set(init)

    for j in (i for i in range(m) if i not in init_set):
        h = rows[j]
        vals = [_dot(h, ray) for ray in rays]
        if all(val >= 0 for val in vals):
            zero_sets = [
                z | {j} if vals[k] == 0 else z for k, z in enumerate(zero_sets)
            ]
            processed.append(j)
            continue

        kept_rays, kept_zero = [], []
        for k, val in enumerate(vals):
            if val > 0:
                kept_rays.append(rays[k])
                kept_zero.append(zero_sets[k])
            elif val == 0:
                kept_rays.append(rays[k])
                kept_zero.append(zero_sets[k] | {j})

        for p in range(len(rays)):
            if vals[p] <= 0:
                continue
            for q in range(len(rays)):
                if vals[q] >= 0:
                    continue
                common = zero_sets[p] & zero_sets[q]
                if len(common) < d - 1:
                    continue
                # adjacency: no third ray's zero set contains the intersection
                if any(
                    k not in (p, q) and common <= zero_sets[k]
                    for k in range(len(rays))
                ):
                    continue
                if _exact_rank([rows[i] for i in sorted(common)]) != d - 1:
                    continue
                combo = _canonical_ray(
                    [vals[p] * rq - vals[q] * rp for rp, rq in zip(rays[p], rays[q])]
                )
                kept_rays.append(combo)
                kept_zero.append(
                    frozenset(i for i in processed + [j] if _dot(rows[i], combo) == 0)
                )
        rays, zero_sets = kept_rays, kept_zero
        processed.append(j)

    facets = sorted(Facet(ray[0], ray[1:]) for ray in rays)
    if len(set(facets)) != len(facets):
        raise RuntimeError("duplicate facets produced; extreme ray bookkeeping broke")
    return HRepresentation(d, tuple(facets))


def membership(h: HRepresentation, point) -> MembershipReport:
    """Margins of a point against every facet, with the overall verdict."""
    if len(point) != h.dimension:
        raise DimensionMismatch(
            f"point has length {len(point)}, polytope dimension is {h.dimension}"
        )
    margins = tuple(f.margin(point) for f in h.facets)
    worst = min(range(len(margins)), key=lambda k: margins[k])
    if any(m < 0 for m in margins):
        status = "outside"
    elif any(m == 0 for m in margins):
        status = "boundary"
    else:
        status = "inside"
    return MembershipReport(status, margins, margins[worst], h.facets[worst])
