"""Min-max eigensystem machinery for facet-weighted correlation operators.

The eigensolver is a cyclic complex Jacobi iteration; it is deterministic,
accurate to ~1e-13 relative off-diagonal mass, and entirely adequate at the
dimensions that occur here (<= 64).  On top of it sit the quantum-bound
report for a facet, deterministic angle optimizers, and the closed-form
spectra of the three-observable equidistant configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    ConventionNotFound,
    DimensionMismatch,
    DomainError,
    NoConvergence,
    NotHermitian,
    UnsupportedMonomialOrder,
)
from .polytope import CHSH_SCENARIO, Facet, Scenario, _cached_vertices
from .quantum import Direction, correlation_operator, is_hermitian, normalize_state

EIGH_MAX_DIM = 64
EIGH_MAX_SWEEPS = 60
EIGH_OFF_TOL = 1e-13  # relative to the input Frobenius norm
DEGENERACY_TOL = 1e-8  # eigenvalues closer than this count as one cluster

GRID_STEP = math.pi / 60
MAX_GRID_POINTS = 2_000_000
REFINE_TOL = 1e-8
MAX_REFINE_ITERATIONS = 200

CHSH_FACET = Facet(2, (1, 1, 1, -1))


@dataclass(frozen=True)
class EigenSystem:
    """Ascending real eigenvalues with orthonormal eigenvector columns.

    Each vector's largest-magnitude component (ties: lowest index) is made
    real and positive, so equal inputs give bit-identical output.
    """

    values: np.ndarray
    vectors: np.ndarray

    def eigenspace(self, value: float, tol: float = DEGENERACY_TOL) -> np.ndarray:
        """Columns whose eigenvalue lies within tol of `value`."""
        mask = np.abs(self.values - value) <= tol
        if not np.any(mask):
            raise ValueError(f"no eigenvalue within {tol} of {value}")
        return self.vectors[:, mask]


def _offdiagonal_norm(a: np.ndarray) -> float:
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return float(np.linalg.norm(b, "fro"))


def eigh(a) -> EigenSystem:
    """Full eigensystem of a Hermitian matrix by cyclic complex Jacobi.

    Row-cyclic sweeps rotate each (p, q) pair; the off-diagonal Frobenius
    mass drops quadratically and iteration stops once it falls below
    1e-13 times the input norm.  Raises NoConvergence after 60 sweeps,
    which signals a pathological input at these dimensions.
    """
    A = np.array(a, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("eigh needs a square matrix")
    n = A.shape[0]
    if n > EIGH_MAX_DIM:
        raise DimensionMismatch(f"dimension {n} exceeds the {EIGH_MAX_DIM} guardrail")
    if not is_hermitian(A):
        raise NotHermitian("eigh needs a Hermitian matrix")

    norm_f = float(np.linalg.norm(A, "fro"))
    V = np.eye(n, dtype=complex)
    if norm_f == 0.0 or n == 1:
        return EigenSystem(np.diag(A).real.copy(), V)
    A = (A + A.conj().T) / 2.0

    converged = False
    for _ in range(EIGH_MAX_SWEEPS):
        if _offdiagonal_norm(A) <= EIGH_OFF_TOL * norm_f:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * r)
                if abs(tau) > 1e8:
                    t = 1.0 / (2.0 * tau)  # asymptotic root, avoids overflow
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                pc = np.conj(phase)

                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - s * pc * colq
                A[:, q] = s * colp + c * pc * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * phase * rowq
                A[q, :] = s * rowp + c * phase * rowq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = app - t * r
                A[q, q] = aqq + t * r

                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * pc * vq
                V[:, q] = s * vp + c * pc * vq
    if not converged and _offdiagonal_norm(A) > EIGH_OFF_TOL * norm_f:
        raise NoConvergence(f"off-diagonal mass stuck after {EIGH_MAX_SWEEPS} sweeps")

    values = np.diag(A).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    V = V[:, order]
    for k in range(n):
        j = int(np.argmax(np.abs(V[:, k])))
        ref = V[j, k]
        if abs(ref) > 0.0:
            V[:, k] = V[:, k] * (np.conj(ref) / abs(ref))
    return EigenSystem(values, V)


def facet_operator(coefficients, operators) -> np.ndarray:
    """Weighted operator sum sum_k c_k F_k; Hermitian when the F_k are."""
    ops = [np.asarray(op, dtype=complex) for op in operators]
    coeffs = [float(c) for c in coefficients]
    if len(coeffs) != len(ops):
        raise DimensionMismatch("one coefficient per operator")
    if not ops:
        raise DimensionMismatch("need at least one operator")
    shape = ops[0].shape
    if any(op.shape != shape for op in ops):
        raise DimensionMismatch("operators differ in shape")
    total = np.zeros(shape, dtype=complex)
    for c, op in zip(coeffs, ops):
        total += c * op
    return total


def _pair_operators(directions, scenario: Scenario) -> list[np.ndarray]:
    ops = []
    for mono in scenario.monomials:
        if len(mono) != 2:
            raise UnsupportedMonomialOrder(
                f"monomial {mono} is not a pair; only two-partite operators exist"
            )
        i, j = mono
        ops.append(correlation_operator(directions[i], directions[j]))
    return ops


def _classical_range(facet: Facet, scenario: Scenario) -> tuple[Fraction, Fraction]:
    """Exact range of facet.normal . x over the scenario's polytope.

    The lower end is -offset by facet tightness; the upper end is read off
    the vertex set, since the facet alone does not bound it.
    """
    verts = _cached_vertices(scenario).vertices
    values = [sum(a * x for a, x in zip(facet.normal, v)) for v in verts]
    return -Fraction(facet.offset), Fraction(max(values))


@dataclass(frozen=True)
class BoundReport:
    """Extreme eigenvalues and states of a facet operator vs classical bounds."""

    lambda_min: float
    lambda_max: float
    state_min: np.ndarray
    state_max: np.ndarray
    classical_min: Fraction
    classical_max: Fraction
    violation: float
    degenerate_min: bool
    degenerate_max: bool


def quantum_bound(facet: Facet, directions, scenario: Scenario) -> BoundReport:
    """Min-max report for the facet-weighted correlation operator.

    Builds F_k = sigma(d_i) tensor sigma(d_j) per pair monomial (i, j),
    sums them with the facet's normal as weights, and reports the extreme
    eigenpairs next to the exact classical range of the same expression.
    """
    if len(facet.normal) != scenario.dimension:
        raise DimensionMismatch("facet dimension does not match the scenario")
    directions = tuple(directions)
    if len(directions) != scenario.observable_count:
        raise DimensionMismatch("need one direction per observable")
    op = facet_operator(facet.normal, _pair_operators(directions, scenario))
    es = eigh(op)
    cmin, cmax = _classical_range(facet, scenario)
    lam_min = float(es.values[0])
    lam_max = float(es.values[-1])
    violation = max(float(cmin) - lam_min, lam_max - float(cmax), 0.0)
    n = len(es.values)
    return BoundReport(
        lambda_min=lam_min,
        lambda_max=lam_max,
        state_min=es.vectors[:, 0].copy(),
        state_max=es.vectors[:, -1].copy(),
        classical_min=cmin,
        classical_max=cmax,
        violation=violation,
        degenerate_min=bool(n > 1 and es.values[1] - es.values[0] <= DEGENERACY_TOL),
        degenerate_max=bool(n > 1 and es.values[-1] - es.values[-2] <= DEGENERACY_TOL),
    )


# ---------------------------------------------------------------------------
# subspace comparison helpers


def span_projector(vectors) -> np.ndarray:
    """Orthogonal projector onto the span of the given (column) vectors."""
    mat = np.asarray(vectors, dtype=complex)
    if mat.ndim == 1:
        mat = mat[:, None]
    cols: list[np.ndarray] = []
    for k in range(mat.shape[1]):
        vec = mat[:, k].copy()
        for prev in cols:
            vec -= (prev.conj() @ vec) * prev
        norm = float(np.linalg.norm(vec))
        if norm > 1e-12:
            cols.append(vec / norm)
    proj = np.zeros((mat.shape[0], mat.shape[0]), dtype=complex)
    for vec in cols:
        proj += np.outer(vec, vec.conj())
    return proj


def subspace_distance(p: np.ndarray, q: np.ndarray) -> float:
    """Frobenius distance between two orthogonal projectors."""
    return float(np.linalg.norm(p - q, "fro"))


def _closed_form_error(es: EigenSystem, value: float, span) -> float | None:
    """How far a closed-form span sits from a computed eigenspace.

    Dimensions agree: projector distance.  Computed cluster is larger
    (degenerate eigenvalue): largest membership residual of the span
    vectors inside it.  Returns None when every span vector is numerically
    zero, i.e. the closed form defines no direction there.
    """
    mat = np.asarray(span, dtype=complex)
    if mat.ndim == 1:
        mat = mat[:, None]
    keep = [k for k in range(mat.shape[1]) if np.linalg.norm(mat[:, k]) > 1e-8]
    if not keep:
        return None
    mat = mat[:, keep]
    space = es.eigenspace(value)
    p_computed = span_projector(space)
    if space.shape[1] == mat.shape[1]:
        return subspace_distance(p_computed, span_projector(mat))
    residual = 0.0
    for k in range(mat.shape[1]):
        unit = normalize_state(mat[:, k])
        residual = max(residual, float(np.linalg.norm(unit - p_computed @ unit)))
    return residual


# ---------------------------------------------------------------------------
# three observables at equidistant planar angles


def sz_directions(theta: float) -> tuple[Direction, Direction, Direction]:
    """Planar directions 0, theta, 2*theta for the three observables."""
    return (Direction(0.0), Direction(theta), Direction(2.0 * theta))


def sz_closed_eigenvalues(theta: float) -> tuple[float, float]:
    """The two low closed-form eigenvalues of the summed operator."""
    mu1 = -math.sqrt(5.0 + 4.0 * math.cos(theta))
    mu2 = -(1.0 + 2.0 * math.cos(theta))
    return mu1, mu2


def sz_closed_vectors(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized closed-form eigenvectors paired with mu1 and mu2.

    Components follow this module's tensor-factor order (first observable
    of a pair on the left factor); under the swapped factor convention the
    middle two components of x1 change sign.
    """
    a = 2.0 * (math.cos(theta) + 1.0) * math.sin(theta)
    b = (
        2.0 * math.cos(theta)
        + math.cos(2.0 * theta)
        + math.sqrt(5.0 + 4.0 * math.cos(theta))
    )
    x1 = np.array([a, -b, b, a], dtype=complex)
    x2 = np.array(
        [-math.sin(theta), math.cos(theta), math.cos(theta), math.sin(theta)],
        dtype=complex,
    )
    return x1, x2


def sz_singlet_value(theta: float) -> float:
    """Singlet expectation of the summed operator: -2cos(t) - cos(2t)."""
    return -2.0 * math.cos(theta) - math.cos(2.0 * theta)


@dataclass(frozen=True)
class SZSpectrum:
    """Computed spectrum of the equidistant three-observable operator,
    cross-checked against the closed forms."""

    theta: float
    eigen: EigenSystem
    mu1: float
    mu2: float
    mu1_computed: float
    mu2_computed: float
    x1: np.ndarray
    x2: np.ndarray
    degenerate: bool
    subspace_error_1: float | None
    subspace_error_2: float | None


def sz_spectrum(theta: float) -> SZSpectrum:
    """Eigensystem of F(0,theta) + F(0,2theta) + F(theta,2theta).

    Asserts that the closed forms mu1 = -sqrt(5 + 4cos t) and
    mu2 = -(1 + 2cos t) appear among the eigenvalues within 1e-9, and
    measures how far the computed eigenspaces sit from the closed-form
    eigenvectors (projector comparison; membership when degenerate).
    """
    dirs = sz_directions(theta)
    ops = [
        correlation_operator(dirs[0], dirs[1]),
        correlation_operator(dirs[0], dirs[2]),
        correlation_operator(dirs[1], dirs[2]),
    ]
    es = eigh(facet_operator([1, 1, 1], ops))
    mu1, mu2 = sz_closed_eigenvalues(theta)
    x1, x2 = sz_closed_vectors(theta)

    mu1_computed = float(es.values[0])
    mu2_computed = float(es.values[int(np.argmin(np.abs(es.values - mu2)))])
    if abs(mu1_computed - mu1) > 1e-9 or abs(mu2_computed - mu2) > 1e-9:
        raise NoConvergence(
            f"closed-form eigenvalues missed at theta={theta}: "
            f"{mu1_computed} vs {mu1}, {mu2_computed} vs {mu2}"
        )
    return SZSpectrum(
        theta=float(theta),
        eigen=es,
        mu1=mu1,
        mu2=mu2,
        mu1_computed=mu1_computed,
        mu2_computed=mu2_computed,
        x1=x1,
        x2=x2,
        degenerate=abs(mu2 - mu1) <= DEGENERACY_TOL,
        subspace_error_1=_closed_form_error(es, mu1, x1),
        subspace_error_2=_closed_form_error(es, mu2, x2),
    )


# ---------------------------------------------------------------------------
# extremal states of a single correlation operator


@dataclass(frozen=True)
class PairExtremalStates:
    """Eigenstates of sigma(theta) tensor sigma(0), split by eigenvalue sign."""

    eigen: EigenSystem
    minus_states: np.ndarray
    plus_states: np.ndarray
    minus_span: np.ndarray
    plus_span: np.ndarray
    minus_error: float
    plus_error: float


def pair_extremal_states(d1: Direction) -> PairExtremalStates:
    """Eigenstates of the correlation operator with the second leg at theta=0.

    The -1 eigenspace coincides with span{(0, cos t + 1, 0, sin t),
    (cos t - 1, 0, sin t, 0)}; the +1 eigenspace swaps cos t + 1 and
    cos t - 1.  Both identities are verified here to 1e-10.  At t = 0 or
    pi one span vector vanishes and the check degrades to membership of
    the surviving one.
    """
    if d1.phi != 0.0:
        raise DomainError("closed-form spans assume a planar first direction")
    theta = d1.theta
    es = eigh(correlation_operator(d1, Direction(0.0)))
    ct, st = math.cos(theta), math.sin(theta)
    minus_span = np.array(
        [[0.0, ct + 1.0, 0.0, st], [ct - 1.0, 0.0, st, 0.0]], dtype=complex
    ).T
    plus_span = np.array(
        [[0.0, ct - 1.0, 0.0, st], [ct + 1.0, 0.0, st, 0.0]], dtype=complex
    ).T
    minus_error = _closed_form_error(es, -1.0, minus_span)
    plus_error = _closed_form_error(es, 1.0, plus_span)
    if minus_error is None or plus_error is None:
        raise ArithmeticError("closed-form spans vanished entirely")
    if max(minus_error, plus_error) > 1e-10:
        raise NoConvergence(
            f"extremal eigenspaces stray from the closed-form spans at theta={theta}"
        )
    return PairExtremalStates(
        eigen=es,
        minus_states=es.eigenspace(-1.0),
        plus_states=es.eigenspace(1.0),
        minus_span=minus_span,
        plus_span=plus_span,
        minus_error=minus_error,
        plus_error=plus_error,
    )


# ---------------------------------------------------------------------------
# planar angle optimization


@dataclass(frozen=True)
class OptimizeResult:
    directions: tuple[Direction, ...]
    report: BoundReport
    objective: float
    iterations: int


def _planar_sigma(thetas: np.ndarray) -> np.ndarray:
    """sigma(theta, 0) for an array of angles, shape (..., 2, 2)."""
    ct, st = np.cos(thetas), np.sin(thetas)
    return np.stack(
        [np.stack([ct, st], axis=-1), np.stack([st, -ct], axis=-1)], axis=-2
    )


def _kron_blocks(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched Kronecker product over leading broadcast axes."""
    out = a[..., :, None, :, None] * b[..., None, :, None, :]
    return out.reshape(*out.shape[:-4], 4, 4)


def _grid_scan_planar(facet, scenario, axis, cmin, cmax):
    """First grid point (lexicographic) within rounding of the best violation.

    The scan ranks candidates with LAPACK's batched symmetric eigenvalues
    for speed; the winner is re-evaluated with the Jacobi solver before any
    value is reported, so the scan only ever chooses a starting point.
    """
    n = scenario.observable_count
    free = n - 1
    L = len(axis)
    coeffs = [float(c) for c in facet.normal]
    tables = _planar_sigma(axis)  # (L, 2, 2)
    sigma0 = _planar_sigma(np.array([0.0]))[0]

    def observable_table(k, chunk_index):
        # broadcast shape: observable k >= 2 owns axis k-2 of the chunk mesh
        if k == 0:
            return sigma0
        if k == 1:
            return tables[chunk_index]
        return tables.reshape([1] * (k - 2) + [L] + [1] * (free - k) + [2, 2])

    def chunk_violations(i1):
        total = None
        for (i, j), c in zip(scenario.monomials, coeffs):
            term = c * _kron_blocks(observable_table(i, i1), observable_table(j, i1))
            total = term if total is None else total + term
        flat = np.asarray(total).reshape(-1, 4, 4)
        w = np.linalg.eigvalsh(flat)
        return np.maximum.reduce([cmin - w[:, 0], w[:, -1] - cmax, np.zeros(len(w))])

    if free == 1:
        # single free angle: one batch over the whole axis
        ops = None
        for (i, j), c in zip(scenario.monomials, coeffs):
            a = sigma0 if i == 0 else tables
            b = sigma0 if j == 0 else tables
            term = c * _kron_blocks(a, b)
            ops = term if ops is None else ops + term
        w = np.linalg.eigvalsh(np.asarray(ops).reshape(-1, 4, 4))
        viol = np.maximum.reduce([cmin - w[:, 0], w[:, -1] - cmax, np.zeros(len(w))])
        best = float(np.max(viol))
        tie = 1e-12 * max(1.0, abs(best))
        k = int(np.argmax(viol >= best - tie))
        return (float(axis[k]),)

    chunk_best = np.empty(L)
    for i1 in range(L):
        chunk_best[i1] = float(np.max(chunk_violations(i1)))
    best = float(np.max(chunk_best))
    tie = 1e-12 * max(1.0, abs(best))
    i1 = int(np.argmax(chunk_best >= best - tie))
    viol = chunk_violations(i1)
    k = int(np.argmax(viol >= best - tie))
    rest = np.unravel_index(k, (L,) * (free - 1))
    return (float(axis[i1]),) + tuple(float(axis[r]) for r in rest)


def _violation(facet, scenario, thetas) -> float:
    dirs = [Direction(0.0)] + [Direction(t) for t in thetas]
    return quantum_bound(facet, dirs, scenario).violation


def _coordinate_descent(objective, start, step, lo=None, hi=None):
    """Deterministic pattern search: probe +-step per coordinate, halve on
    a full pass without improvement, stop below REFINE_TOL or at the
    iteration cap."""
    point = list(start)
    best = objective(point)
    iterations = 0
    h = step
    while h >= REFINE_TOL and iterations < MAX_REFINE_ITERATIONS:
        iterations += 1
        moved = False
        for k in range(len(point)):
            for cand in (point[k] + h, point[k] - h):
                if lo is not None and cand < lo:
                    continue
                if hi is not None and cand > hi:
                    continue
                trial = list(point)
                trial[k] = cand
                val = objective(trial)
                if val > best:
                    best = val
                    point = trial
                    moved = True
        if not moved:
            h /= 2.0
    return point, best, iterations


def optimize_angles(
    facet: Facet,
    scenario: Scenario,
    initial=None,
    planar: bool = True,
    grid_step: float = GRID_STEP,
) -> OptimizeResult:
    """Maximize the quantum violation of a facet over measurement directions.

    The first observable is pinned to theta = 0 (a global rotation changes
    nothing); the remaining planar angles run over [0, 2*pi).  A full
    product grid at `grid_step` picks the starting point, then coordinate
    descent with a shrinking step refines it until the step drops below
    1e-8 or 200 passes.  Scan order is fixed, so the result is
    deterministic.  In spherical mode the product grid is skipped and
    descent starts from `initial` (or all-z directions), with each (theta,
    phi) coordinate scanned coarsely first.
    """
    if len(facet.normal) != scenario.dimension:
        raise DimensionMismatch("facet dimension does not match the scenario")
    for mono in scenario.monomials:
        if len(mono) != 2:
            raise UnsupportedMonomialOrder(f"monomial {mono} is not a pair")
    n = scenario.observable_count
    free = n - 1
    cmin, cmax = _classical_range(facet, scenario)

    if planar:
        axis = np.arange(0.0, 2.0 * math.pi - 1e-12, grid_step)
        start = None
        if free >= 1 and len(axis) ** free <= MAX_GRID_POINTS:
            start = _grid_scan_planar(facet, scenario, axis, float(cmin), float(cmax))
        if initial is not None:
            init_thetas = tuple(d.theta for d in initial)[1:]
            if start is None or _violation(facet, scenario, init_thetas) >= _violation(
                facet, scenario, list(start)
            ):
                start = init_thetas
        if start is None:
            start = (0.0,) * free
        objective = lambda ths: _violation(facet, scenario, ths)
        point, _, iterations = _coordinate_descent(objective, start, grid_step)
        directions = tuple([Direction(0.0)] + [Direction(t) for t in point])
    else:
        dirs = list(initial) if initial is not None else [Direction(0.0)] * n
        coords = []
        for k in range(1, n):
            coords.extend([(k, "theta"), (k, "phi")])

        def assemble(values):
            out = [Direction(0.0)]
            for k in range(1, n):
                out.append(Direction(values[2 * (k - 1)], values[2 * (k - 1) + 1]))
            return tuple(out)

        values = []
        for k in range(1, n):
            values.extend([dirs[k].theta, dirs[k].phi])
        objective = lambda vals: quantum_bound(facet, assemble(vals), scenario).violation
        # coarse pass: scan each coordinate over the grid, keeping the rest fixed
        axis = np.arange(0.0, 2.0 * math.pi - 1e-12, grid_step)
        for c in range(len(values)):
            best_val = objective(values)
            best_t = values[c]
            for t in axis:
                trial = list(values)
                trial[c] = float(t)
                val = objective(trial)
                if val > best_val:
                    best_val = val
                    best_t = float(t)
            values[c] = best_t
        values, _, iterations = _coordinate_descent(objective, values, grid_step)
        directions = assemble(values)

    report = quantum_bound(facet, directions, scenario)
    return OptimizeResult(directions, report, report.violation, iterations)


def optimize_equidistant(
    facet: Facet,
    scenario: Scenario,
    grid_step: float = GRID_STEP,
    theta_range: tuple[float, float] = (0.0, math.pi),
) -> tuple[float, OptimizeResult]:
    """Single-parameter optimizer over equidistant directions 0, t, 2t, ...

    Scans t over [lo, hi] at `grid_step`, then runs the same shrinking-step
    descent on the one free parameter.
    """
    lo, hi = theta_range
    n = scenario.observable_count

    def directions_for(t):
        return tuple(Direction(k * t) for k in range(n))

    def objective(vals):
        return quantum_bound(facet, directions_for(vals[0]), scenario).violation

    grid = np.arange(lo, hi + grid_step / 2, grid_step)
    values = [objective([t]) for t in grid]
    best = max(values)
    start = float(grid[values.index(best)])
    (theta,), _, iterations = _coordinate_descent(objective, [start], grid_step, lo=lo, hi=hi)
    dirs = directions_for(theta)
    report = quantum_bound(facet, dirs, scenario)
    return theta, OptimizeResult(dirs, report, report.violation, iterations)


# ---------------------------------------------------------------------------
# the four-observable extremal eigenvectors


TSIRELSON_TARGETS = (
    np.array([-1.0, 1.0, 1.0, 1.0]) / 2.0,
    np.array([-1.0, -1.0, -1.0, 1.0]) / 2.0,
)
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class TsirelsonConvention:
    """Angle convention whose extremal eigenvectors hit the target rays."""

    angles: tuple[float, float, float, float]
    residual: float
    lambda_min: float
    lambda_max: float
    expectation_min_target: float
    expectation_max_target: float
    state_min_target: np.ndarray
    state_max_target: np.ndarray
    degenerate: bool


def tsirelson_eigenstates(grid_step: float = math.pi / 4) -> TsirelsonConvention:
    """Search planar four-observable conventions for the target eigenvectors.

    Scans angle triples (x, y, z) with the first observable pinned at 0 and
    returns the first grid point at which the rays (-1, 1, 1, 1) and
    (-1, -1, -1, 1) are extremal eigenvectors rendering the bound -+2sqrt2:
    subspace residual <= 1e-6 (membership residual when the extremal
    eigenvalue is degenerate) and target expectations within 1e-6 of the
    bound.  Raises ConventionNotFound when the scan comes up empty.
    """
    u, v = (normalize_state(t) for t in TSIRELSON_TARGETS)
    axis = np.arange(0.0, 2.0 * math.pi - 1e-12, grid_step)
    scenario = CHSH_SCENARIO
    facet = CHSH_FACET

    for x in axis:
        for y in axis:
            for z in axis:
                dirs = (Direction(0.0), Direction(x), Direction(y), Direction(z))
                op = facet_operator(facet.normal, _pair_operators(dirs, scenario))
                es = eigh(op)
                p_min = span_projector(es.eigenspace(float(es.values[0])))
                p_max = span_projector(es.eigenspace(float(es.values[-1])))
                exp_u = float((u.conj() @ (op @ u)).real)
                exp_v = float((v.conj() @ (op @ v)).real)
                pairings = []
                for low, high, exp_low, exp_high in (
                    (u, v, exp_u, exp_v),
                    (v, u, exp_v, exp_u),
                ):
                    residual = max(
                        float(np.linalg.norm(low - p_min @ low)),
                        float(np.linalg.norm(high - p_max @ high)),
                    )
                    renders = (
                        abs(exp_low + TSIRELSON_BOUND) <= 1e-6
                        and abs(exp_high - TSIRELSON_BOUND) <= 1e-6
                    )
                    pairings.append((residual, renders, low, high, exp_low, exp_high))
                ok = [p for p in pairings if p[0] <= 1e-6 and p[1]]
                if not ok:
                    continue
                residual, _, low, high, exp_low, exp_high = min(ok, key=lambda p: p[0])
                return TsirelsonConvention(
                    angles=(0.0, float(x), float(y), float(z)),
                    residual=residual,
                    lambda_min=float(es.values[0]),
                    lambda_max=float(es.values[-1]),
                    expectation_min_target=exp_low,
                    expectation_max_target=exp_high,
                    state_min_target=low,
                    state_max_target=high,
                    degenerate=bool(
                        es.values[1] - es.values[0] <= DEGENERACY_TOL
                        or es.values[-1] - es.values[-2] <= DEGENERACY_TOL
                    ),
                )
    raise ConventionNotFound(
        f"no planar convention on the pi/{round(math.pi / grid_step)} grid "
        "reproduces the target eigenvectors"
    )
