"""Two-qubit spin correlation operators and the classical fragment model.

Spin operators, projectors, and tensor-product correlation operators are
dense complex matrices in double precision; matrices built from exact trig
expressions are Hermitian to rounding noise, checked at 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, NotHermitian
from .rng import random_uniform

HERMITICITY_ATOL = 1e-12
_TWO_PI = 2.0 * math.pi

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class Direction:
    """Measurement direction in spherical coordinates (radians).

    phi is stored reduced to [0, 2*pi); theta is any real, since planar
    scans (phi = 0) run it outside [0, pi] and the defining trig formula
    is total.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "phi", float(self.phi) % _TWO_PI)

    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )


def pauli(axis: str) -> np.ndarray:
    """The 2x2 Pauli matrix for axis 'x', 'y', or 'z'."""
    try:
        return {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}[axis].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}") from None


def spin_operator(d: Direction) -> np.ndarray:
    """sigma(theta, phi) = sx sin(t)cos(p) + sy sin(t)sin(p) + sz cos(t)."""
    st, ct = math.sin(d.theta), math.cos(d.theta)
    return (
        PAULI_X * (st * math.cos(d.phi))
        + PAULI_Y * (st * math.sin(d.phi))
        + PAULI_Z * ct
    )


def projector(sign: int, d: Direction) -> np.ndarray:
    """Single-particle projector (I +- sigma(d)) / 2."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return (IDENTITY_2 + sign * spin_operator(d)) / 2.0


def kron(a, b) -> np.ndarray:
    """Kronecker product, (i*p+k, j*q+l) entry = A[i,j] * B[k,l]."""
    return np.kron(np.asarray(a), np.asarray(b))


def correlation_operator(d1: Direction, d2: Direction) -> np.ndarray:
    """sigma(d1) tensor sigma(d2), the two-partite correlation observable."""
    return kron(spin_operator(d1), spin_operator(d2))


def is_hermitian(a, atol: float = HERMITICITY_ATOL) -> bool:
    m = np.asarray(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m - m.conj().T))) <= atol


def normalize_state(state) -> np.ndarray:
    vec = np.asarray(state, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return vec / norm


def expectation(state, op) -> float:
    """<psi|A|psi> for Hermitian A; the imaginary residue must stay <= 1e-10."""
    psi = np.asarray(state, dtype=complex).reshape(-1)
    mat = np.asarray(op, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch("operator must be square")
    if mat.shape[0] != psi.shape[0]:
        raise DimensionMismatch(
            f"state has length {psi.shape[0]}, operator is {mat.shape[0]}x{mat.shape[1]}"
        )
    if not is_hermitian(mat):
        raise NotHermitian("expectation requires a Hermitian operator")
    val = complex(psi.conj() @ (mat @ psi))
    if abs(val.imag) > 1e-10:
        raise NotHermitian(f"imaginary residue {val.imag:.3e} exceeds 1e-10")
    return val.real


def singlet_state() -> np.ndarray:
    """The Bell singlet (0, 1, -1, 0)/sqrt(2)."""
    return np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2.0)


def singlet_correlation(d1: Direction, d2: Direction) -> float:
    """Closed-form singlet prediction, -cos of the angle between directions."""
    return -(
        math.cos(d1.theta) * math.cos(d2.theta)
        + math.cos(d1.phi - d2.phi) * math.sin(d1.theta) * math.sin(d2.theta)
    )


# ---------------------------------------------------------------------------
# classical fragment model


def fragment_correlation(theta: float) -> float:
    """Linear classical correlation -1 + 2*theta/pi of the fragment model."""
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta={theta} outside [0, pi]")
    return -1.0 + 2.0 * theta / math.pi


def fragment_monte_carlo(theta: float, samples: int, seed: int) -> float:
    """Empirical fragment correlation from `samples` equidistributed draws.

    Each draw picks a planar angle lam uniform on [0, 2*pi); the two sides
    report A = sign(cos lam) and B = -sign(cos(lam - theta)).  The mean of
    A*B converges to fragment_correlation(theta) at the usual 1/sqrt(n) rate.
    """
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta={theta} outside [0, pi]")
    if samples < 1:
        raise ValueError("need at least one sample")
    lam = random_uniform(seed, samples) * _TWO_PI
    a = np.where(np.cos(lam) >= 0.0, 1.0, -1.0)
    b = -np.where(np.cos(lam - theta) >= 0.0, 1.0, -1.0)
    return float(np.mean(a * b))


def deviation(theta: float) -> float:
    """Classical-minus-quantum correlation E(theta) + cos(theta)."""
    return fragment_correlation(theta) + math.cos(theta)


@dataclass(frozen=True)
class DeviationExtrema:
    theta_low: float
    theta_high: float
    max_abs_deviation: float


def deviation_extrema(scan_points: int = 100001) -> DeviationExtrema:
    """Stationary points and extremal magnitude of the deviation curve.

    D(theta) = -1 + 2*theta/pi + cos(theta) is stationary where
    sin(theta) = 2/pi; the extremal magnitude has the closed form
    sqrt(1 - (2/pi)^2) - (2/pi) * arccos(2/pi).  A dense numeric scan
    cross-checks both before the result is returned.
    """
    x = 2.0 / math.pi
    theta_low = math.asin(x)
    theta_high = math.pi - theta_low
    closed = math.sqrt(1.0 - x * x) - x * math.acos(x)

    grid = np.linspace(0.0, math.pi, scan_points)
    curve = -1.0 + 2.0 * grid / math.pi + np.cos(grid)
    scan_max = float(np.max(np.abs(curve)))
    if abs(scan_max - closed) > 1e-8:
        raise ArithmeticError(
            f"dense scan extremum {scan_max!r} disagrees with closed form {closed!r}"
        )
    if abs(deviation(theta_low) + deviation(theta_high)) > 1e-10:
        raise ArithmeticError("deviation extrema lost their sign symmetry")
    return DeviationExtrema(theta_low, theta_high, closed)
