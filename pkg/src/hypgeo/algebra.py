"""Split-quaternion model of SL(2,R) and its isometric action on the disk.

The group SU(1,1) = {q0 + q1 i + q2 j + q3 k : q0^2 - q1^2 - q2^2 + q3^2 = 1}
sits inside the split quaternions, whose imaginary units obey

    i*i = j*j = 1,   k*k = -1,
    i*j = -k,  j*k = i,  k*i = j   (anticommuting pairs).

SU(1,1) is isomorphic to SL(2,R) through the linear map psi implemented by
`from_sl2`, and the quotient by the center {+-1} acts on the open unit disk
by orientation-preserving hyperbolic isometries (`to_mobius_apply`).

Everything here is plain scalar arithmetic on unit split quaternions.
Pure math: no arrays, no state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DegenerateDenominator,
    DeterminantError,
    IdentityInput,
    OutsideDisk,
)

# Classification tolerances. The discriminant threshold follows the package
# convention that a unit quaternion within 1e-10 of the parabolic cone is
# reported as parabolic rather than as a barely elliptic/hyperbolic element.
DETERMINANT_TOLERANCE = 1e-9
PARABOLIC_TOLERANCE = 1e-10
IDENTITY_TOLERANCE = 1e-12

# Light-cone tolerance of the algebra exponential, relative to the squared
# size of the argument so that exp(t*v) routes consistently for small t.
_EXP_LIGHT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SplitQuaternion:
    """One split quaternion q0 + q1 i + q2 j + q3 k."""

    q0: float
    q1: float
    q2: float
    q3: float

    def components(self) -> tuple[float, float, float, float]:
        return (self.q0, self.q1, self.q2, self.q3)

    def pseudo_norm(self) -> float:
        """q0^2 - q1^2 - q2^2 + q3^2; equals 1 on the group."""
        return self.q0 **2 - self.q1 **2 - self.q2 **2 + self.q3 **2

    def __neg__(self) -> "SplitQuaternion":
        return SplitQuaternion(-self.q0, -self.q1, -self.q2, -self.q3)


@dataclass(frozen=True)
class Psl2Element:
    """A point of PSL(2,R) stored through its canonical unit-quaternion lift.

    The representative of {q, -q} satisfies rep.q0 > 0, or rep.q0 == 0 and
    rep.q3 > 0 (q0 and q3 cannot vanish together on the group).
    """

    rep: SplitQuaternion

    def components(self) -> tuple[float, float, float, float]:
        return self.rep.components()


class IsometryKind(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class IsometryClass:
    """Conjugacy data of a disk isometry.

    fixed_points holds one interior point for elliptic maps, one boundary
    point for parabolic maps and two boundary points for hyperbolic maps.
    rotation_angle is set for elliptic maps only (angle of rotation about
    the interior fixed point, in (-2pi, 2pi), convention 2*arg(q0 + q3 i)
    on the rotation axis).
    """

    kind: IsometryKind
    fixed_points: tuple[complex, ...]
    rotation_angle: float | None = None


def sq_mul(a: SplitQuaternion, b: SplitQuaternion) -> SplitQuaternion:
    """Product of two split quaternions.

    Bilinear extension of the unit table above; the pseudo norm is
    multiplicative, so the group is closed under this product.
    """
    a0, a1, a2, a3 = a.q0, a.q1, a.q2, a.q3
    b0, b1, b2, b3 = b.q0, b.q1, b.q2, b.q3
    return SplitQuaternion(
        a0 * b0 + a1 * b1 + a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 + a2 * b0 + a3 * b1 - a1 * b3,
        a0 * b3 + a3 * b0 - a1 * b2 + a2 * b1,
    )


def sq_exp(v1: float, v2: float, v3: float) -> SplitQuaternion:
    """Exponential of the algebra element v1 i/2 + v2 j/2 + v3 k/2.

    The half comes from the orthonormal basis (i/2, j/2, k/2) of the
    algebra, so powers of a pure imaginary vector close up and the series
    sums to a rotation-like form in |v|/2:

        kappa  = v1^2 + v2^2 - v3^2        (squared causal character)
        kappa < 0:  cos(|v|/2)  + sin(|v|/2)  * vhat
        kappa = 0:  1 + (v1 i + v2 j + v3 k)/2
        kappa > 0:  cosh(|v|/2) + sinh(|v|/2) * vhat

    with |v| = sqrt(|kappa|) and vhat = v/|v|.  Arguments within the
    relative light tolerance of the cone take the affine branch.
    """
    kappa = v1 * v1 + v2 * v2 - v3 * v3
    scale = v1 * v1 + v2 * v2 + v3 * v3 + 1.0
    if abs(kappa) < _EXP_LIGHT_TOLERANCE * scale:
        return SplitQuaternion(1.0, 0.5 * v1, 0.5 * v2, 0.5 * v3)
    norm = math.sqrt(abs(kappa))
    half = 0.5 * norm
    if kappa < 0.0:
        s = math.sin(half) / norm
        return SplitQuaternion(math.cos(half), s * v1, s * v2, s * v3)
    s = math.sinh(half) / norm
    return SplitQuaternion(math.cosh(half), s * v1, s * v2, s * v3)


def from_sl2(a: float, b: float, c: float, d: float) -> SplitQuaternion:
    """Image of the matrix [[a, b], [c, d]] under the group isomorphism.

    psi(a,b,c,d) = ((a+d)/2, (a-d)/2, (b+c)/2, (c-b)/2).  Raises
    DeterminantError unless a*d - b*c = 1 within tolerance.
    """
    det = a * d - b * c
    if abs(det - 1.0) > DETERMINANT_TOLERANCE:
        raise DeterminantError(f"determinant {det!r} is not 1")
    return SplitQuaternion(
        0.5 * (a + d), 0.5 * (a - d), 0.5 * (b + c), 0.5 * (c - b)
    )


def to_sl2(q: SplitQuaternion) -> tuple[float, float, float, float]:
    """Inverse of from_sl2; returns the matrix entries (a, b, c, d)."""
    return (
        q.q0 + q.q1,
        q.q2 - q.q3,
        q.q2 + q.q3,
        q.q0 - q.q1,
    )


def psl2_canonicalize(q: SplitQuaternion) -> Psl2Element:
    """Canonical representative of {q, -q}.

    Keeps q when q0 > 0, or when q0 == 0 and q3 > 0; otherwise flips the
    sign.  q0 = q3 = 0 cannot occur on the unit pseudo-norm surface.
    """
    if q.q0 < 0.0 or (q.q0 == 0.0 and q.q3 < 0.0):
        q = -q
    elif q.q0 == 0.0 and q.q3 == 0.0:
        raise ValueError("q0 = q3 = 0 is impossible for a unit split quaternion")
    # normalize -0.0 so canonical components compare cleanly
    if q.q0 == 0.0:
        q = SplitQuaternion(0.0, q.q1, q.q2, q.q3)
    return Psl2Element(q)


def _halfplane_coeffs(q: SplitQuaternion) -> tuple[complex, complex]:
    """Numerator and denominator coefficients of the disk automorphism."""
    return (complex(q.q0, q.q3), complex(q.q1, q.q2))


def to_mobius_apply(q: SplitQuaternion, z: complex) -> complex:
    """Apply the disk automorphism of q to a point of the open unit disk.

        z  ->  ((q0 + q3 i) z + (q1 + q2 i)) / ((q1 - q2 i) z + (q0 - q3 i))

    Unit quaternions map the open disk onto itself and q, -q act
    identically, so this factors through PSL(2,R).
    """
    if abs(z) >= 1.0:
        raise OutsideDisk(f"|z| = {abs(z)!r} is not < 1")
    alpha, beta = _halfplane_coeffs(q)
    den = beta.conjugate() * z + alpha.conjugate()
    if abs(den) < 1e-14 * (abs(alpha) + abs(beta)):
        raise DegenerateDenominator("automorphism denominator vanished")
    return (alpha * z + beta) / den


def classify_isometry(q: SplitQuaternion) -> IsometryClass:
    """Classify the disk isometry of q and return its fixed points.

    Fixed points solve (q1 - q2 i) z^2 - 2 q3 i z - (q1 + q2 i) = 0, whose
    (real) discriminant sign is that of q1^2 + q2^2 - q3^2 = q0^2 - 1:

        < 0  elliptic    one fixed point inside the disk
        = 0  parabolic   one fixed point on the boundary circle
        > 0  hyperbolic  two fixed points on the boundary circle

    Raises IdentityInput for q = +-1, which fixes everything.
    """
    imag2 = q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3
    if imag2 < IDENTITY_TOLERANCE **2:
        raise IdentityInput("identity has no isometry class")

    disc = q.q1 * q.q1 + q.q2 * q.q2 - q.q3 * q.q3
    lead = complex(q.q1, -q.q2)

    if abs(disc) <= PARABOLIC_TOLERANCE:
        # boundary double root; lead != 0 since q3^2 = q1^2 + q2^2 > 0 here
        z = complex(0.0, q.q3) / lead
        return IsometryClass(IsometryKind.PARABOLIC, (z / abs(z),))

    if disc < 0.0:
        w = math.sqrt(-disc)
        if q.q1 * q.q1 + q.q2 * q.q2 < 1e-30:
            # rotation about the origin
            angle = 2.0 * math.atan2(q.q3, q.q0)
            return IsometryClass(IsometryKind.ELLIPTIC, (0.0 + 0.0j,), angle)
        # the two roots have reciprocal moduli; keep the interior one
        z_plus = complex(0.0, q.q3 + w) / lead
        z_minus = complex(0.0, q.q3 - w) / lead
        z = z_plus if abs(z_plus) < abs(z_minus) else z_minus
        # rotation angle is conjugation data: trace and the sign of the
        # elliptic axis component, which cannot vanish while disc < 0
        angle = 2.0 * math.atan2(math.copysign(w, q.q3), q.q0)
        return IsometryClass(IsometryKind.ELLIPTIC, (z,), angle)

    w = math.sqrt(disc)
    z_plus = (complex(0.0, q.q3) + w) / lead
    z_minus = (complex(0.0, q.q3) - w) / lead
    return IsometryClass(
        IsometryKind.HYPERBOLIC,
        (z_plus / abs(z_plus), z_minus / abs(z_minus)),
    )


def hyperbolic_distance(z1: complex, z2: complex, c: float = 1.0) -> float:
    """Distance between two points of the unit disk, curvature scale c.

    Computed from the definition: the geodesic through z1, z2 meets the
    boundary circle at ideal endpoints u, v, and

        rho(z1, z2) = (c/2) |ln |[u, v, z1, z2]||,

    where [u, v, z1, z2] = ((z1-u)/(z1-v)) : ((z2-u)/(z2-v)).  The
    endpoints are found by sending z1 to the origin with a disk
    automorphism, where the geodesic is a diameter.
    """
    z1 = complex(z1)
    z2 = complex(z2)
    if abs(z1) >= 1.0 or abs(z2) >= 1.0:
        raise OutsideDisk("distance arguments must lie in the open disk")
    if z1 == z2:
        return 0.0

    w = (z2 - z1) / (1.0 - z1.conjugate() * z2)
    if abs(w) == 0.0:
        return 0.0
    what = w / abs(w)

    def pull_back(u: complex) -> complex:
        return (u + z1) / (1.0 + z1.conjugate() * u)

    u = pull_back(-what)
    v = pull_back(what)
    ratio = ((z1 - u) / (z1 - v)) / ((z2 - u) / (z2 - v))
    return 0.5 * c * abs(math.log(abs(ratio)))


def mobius_fixed_point_residual(q: SplitQuaternion, z: complex) -> float:
    """|f(z) - z| for the automorphism of q, valid on the closed disk.

    Diagnostic used to check classify_isometry output; boundary fixed
    points of parabolic and hyperbolic maps are outside the domain of
    to_mobius_apply, so the guard is skipped here.
    """
    alpha, beta = _halfplane_coeffs(q)
    den = beta.conjugate() * z + alpha.conjugate()
    if abs(den) < 1e-14 * (abs(alpha) + abs(beta)):
        raise DegenerateDenominator("automorphism denominator vanished")
    return abs((alpha * z + beta) / den - z)
