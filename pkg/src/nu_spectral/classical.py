"""Classical orthogonal polynomial solutions of the hypergeometric equation.

A reduced equation phi y'' + psi y' + lam y = 0 with decreasing psi is
affinely equivalent to exactly one of the three classical forms

    deg phi = 0:   y'' - 2u y' + lam_c y = 0          (Hermite)
    deg phi = 1:   u y'' + (alpha+1-u) y' + lam_c y = 0   (Laguerre)
    deg phi = 2:   (1-u^2) y'' + (beta-alpha-(alpha+beta+2)u) y' + lam_c y = 0
                                                      (Jacobi)

classify_canonical finds the affine map u = scale*x + shift together with
the eigenvalue rescaling lam_c = lam / lambda_scale.  Polynomial
eigenfunctions are produced two independent ways: a differentiated
Rodrigues product (rodrigues_poly) and the three-term recurrence
(recurrence_poly); both run in exact arithmetic, including surd-valued
alpha, beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DoubleRootUnsupported, ParameterOutOfRange
from .hyper import gamma_fn
from .oracle import quad_adaptive, tanh_sinh
from .polynomials import (
    HALF_LINE,
    REAL_LINE,
    UNIT_INTERVAL,
    Interval,
    Polynomial,
    quad_discriminant,
    quad_roots,
)
from .scalars import as_exact, scalar_float, scalar_sign, sqrt_scalar

FAMILIES = ("hermite", "laguerre", "jacobi")


@dataclass(frozen=True)
class CanonicalHde:
    family: str
    alpha: object
    beta: object
    scale: object
    shift: object
    lambda_scale: object
    interval: Interval

    def to_canonical(self, x):
        return self.scale * x + self.shift

    def from_canonical(self, u):
        return (u - self.shift) / self.scale

    def lambda_canonical(self, lam):
        return lam / self.lambda_scale


def _exact_or_float_sqrt(x):
    try:
        return sqrt_scalar(as_exact(x))
    except ValueError:
        return math.sqrt(scalar_float(x))


def classify_canonical(phi, psi):
    """Affine normalization of phi y'' + psi y' + lam y = 0.

    Raises DoubleRootUnsupported when phi is a quadratic with a repeated
    (or complex-pair) root, and ParameterOutOfRange when the equation
    cannot carry a positive integrable weight (wrong sign pattern, or a
    Laguerre/Jacobi exponent at or below -1).
    """
    if psi.degree != 1:
        raise ParameterOutOfRange("psi must be exactly linear")
    psi1 = psi.coeff(1)
    d = phi.degree
    if d is None:
        raise ParameterOutOfRange("phi must be nonzero")

    if d == 0:
        ratio = -psi1 / (2 * phi.coeff(0))
        if scalar_sign(ratio) <= 0:
            raise ParameterOutOfRange("psi must decrease against constant phi")
        sigma = _exact_or_float_sqrt(ratio)
        shift = sigma * psi.coeff(0) / psi1
        return CanonicalHde(
            "hermite", None, None, sigma, shift, -psi1 / 2, REAL_LINE
        )

    if d == 1:
        f1 = phi.coeff(1)
        s0 = quad_roots(phi)[0]
        sigma = -psi1 / f1
        alpha = psi(s0) / f1 - 1
        if scalar_sign(alpha + 1) <= 0:
            raise ParameterOutOfRange(f"Laguerre exponent {alpha!r} is <= -1")
        return CanonicalHde(
            "laguerre", alpha, None, sigma, -sigma * s0, -psi1, HALF_LINE
        )

    if scalar_sign(quad_discriminant(phi)) <= 0:
        raise DoubleRootUnsupported(
            "quadratic phi needs two distinct real roots"
        )
    f2 = phi.coeff(2)
    if scalar_sign(f2) >= 0:
        raise ParameterOutOfRange(
            "quadratic phi must open downward to carry a weight between its roots"
        )
    r1, r2 = quad_roots(phi)
    span = r2 - r1
    sigma = 2 / as_exact(span) if not isinstance(span, float) else 2.0 / span
    shift = -(r1 + r2) / span
    kk = -f2
    alpha = -1 - sigma * psi(r2) / (2 * kk)
    beta = sigma * psi(r1) / (2 * kk) - 1
    if scalar_sign(alpha + 1) <= 0 or scalar_sign(beta + 1) <= 0:
        raise ParameterOutOfRange(
            f"Jacobi exponents ({alpha!r}, {beta!r}) must exceed -1"
        )
    return CanonicalHde("jacobi", alpha, beta, sigma, shift, kk, UNIT_INTERVAL)


def _family_eq(family, alpha, beta):
    if family == "hermite":
        return Polynomial.of(1), Polynomial.of(0, -2)
    if family == "laguerre":
        return Polynomial.x(), Polynomial.of(1 + as_exact(alpha), -1)
    if family == "jacobi":
        a, b = as_exact(alpha), as_exact(beta)
        return Polynomial.of(1, 0, -1), Polynomial.of(b - a, -(a + b + 2))
    raise ValueError(f"unknown family {family!r}")


def eigen_lambda(family, n, alpha=None, beta=None):
    """Eigenvalue of the canonical equation with a degree-n polynomial
    solution, exact in the parameters."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if family == "hermite":
        return Fraction(2 * n)
    if family == "laguerre":
        return Fraction(n)
    if family == "jacobi":
        return n * (n + as_exact(alpha) + as_exact(beta) + 1)
    raise ValueError(f"unknown family {family!r}")


def _leading_norm(family, n, alpha, beta):
    if family == "hermite":
        return Fraction((-1) ** n)
    if family == "laguerre":
        return Fraction(1, math.factorial(n))
    return Fraction((-1) ** n, 2**n * math.factorial(n))


def rodrigues_poly(family, n, alpha=None, beta=None):
    """Degree-n eigenpolynomial via the differentiated weight product.

    The n-th derivative of phi^n * w is developed factor by factor so the
    weight never has to be represented explicitly; everything stays in
    exact arithmetic.
    """
    phi, psi = _family_eq(family, alpha, beta)
    dphi = phi.derivative()
    q = Polynomial.of(1)
    for k in range(n):
        q = (psi + (n - k - 1) * dphi) * q + phi * q.derivative()
    return _leading_norm(family, n, alpha, beta) * q


def recurrence_poly(family, n, alpha=None, beta=None):
    """Same polynomial through the three-term recurrence; serves as an
    independent route for cross-checking rodrigues_poly."""
    x = Polynomial.x()
    one = Polynomial.of(1)
    if n == 0:
        return one
    if family == "hermite":
        prev, cur = one, 2 * x
        for m in range(1, n):
            prev, cur = cur, 2 * x * cur - 2 * m * prev
        return cur
    if family == "laguerre":
        a = as_exact(alpha)
        prev, cur = one, Polynomial.of(1 + a, -1)
        for m in range(1, n):
            nxt = (Polynomial.of(2 * m + 1 + a, -1) * cur - (m + a) * prev) * Fraction(
                1, m + 1
            )
            prev, cur = cur, nxt
        return cur
    if family == "jacobi":
        a, b = as_exact(alpha), as_exact(beta)
        prev = one
        cur = Polynomial.of((a - b) / 2, (a + b + 2) / 2)
        for m in range(1, n):
            s = 2 * m + a + b
            lead = Polynomial.of(a * a - b * b, s * (s + 2)) * (s + 1)
            rhs = lead * cur - (2 * (m + a) * (m + b) * (s + 2)) * prev
            denom = 2 * (m + 1) * (m + a + b + 1) * s
            nxt = rhs * (1 / as_exact(denom))
            prev, cur = cur, nxt
        return cur
    raise ValueError(f"unknown family {family!r}")


def norm_sq(family, n, alpha=None, beta=None):
    """Squared weighted L2 norm of the degree-n polynomial (float)."""
    if family == "hermite":
        return 2.0**n * math.factorial(n) * math.sqrt(math.pi)
    if family == "laguerre":
        a = scalar_float(alpha)
        return gamma_fn(n + a + 1) / math.factorial(n)
    if family == "jacobi":
        a, b = scalar_float(alpha), scalar_float(beta)
        return (
            2.0 ** (a + b + 1)
            * gamma_fn(n + a + 1)
            * gamma_fn(n + b + 1)
            / (
                math.factorial(n)
                * (2 * n + a + b + 1)
                * gamma_fn(n + a + b + 1)
            )
        )
    raise ValueError(f"unknown family {family!r}")


def inner_product(family, p, q, alpha=None, beta=None, tol=1e-12, abs_tol=None):
    """Weighted integral of p*q over the canonical interval.

    Endpoint-singular weights (negative exponents) go through the
    double-exponential rule, which receives exact endpoint distances; the
    smooth remainder uses adaptive quadrature.  abs_tol loosens only the
    absolute target, for integrals that cancel to a tiny fraction of their
    lobes.
    """
    pf, qf = p.as_float(), q.as_float()
    if family == "hermite":
        return quad_adaptive(
            lambda x: pf(x) * qf(x) * math.exp(-x * x),
            -math.inf,
            math.inf,
            tol=tol,
            abs_tol=abs_tol,
        )
    if family == "laguerre":
        a = scalar_float(alpha)
        head = tanh_sinh(
            lambda x, dlo, dhi: dlo**a * math.exp(-x) * pf(x) * qf(x), 0.0, 1.0
        )
        tail = quad_adaptive(
            lambda x: x**a * math.exp(-x) * pf(x) * qf(x),
            1.0,
            math.inf,
            tol=tol,
            abs_tol=abs_tol,
        )
        return head + tail
    if family == "jacobi":
        a, b = scalar_float(alpha), scalar_float(beta)
        return tanh_sinh(
            lambda x, dlo, dhi: dhi**a * dlo**b * pf(x) * qf(x), -1.0, 1.0
        )
    raise ValueError(f"unknown family {family!r}")


def orthogonality_defect(family, m, n, alpha=None, beta=None):
    """|<P_m, P_n>| normalized by the two closed-form norms; zero for an
    exactly orthogonal pair.

    The quadrature tolerance is scaled by the norm product: the integrand's
    lobes are that large, so asking for a fixed absolute accuracy on their
    cancellation would demand more than double precision holds.
    """
    pm = rodrigues_poly(family, m, alpha, beta)
    pn = rodrigues_poly(family, n, alpha, beta)
    scale = math.sqrt(
        scalar_float(norm_sq(family, m, alpha, beta))
        * scalar_float(norm_sq(family, n, alpha, beta))
    )
    raw = inner_product(
        family, pm, pn, alpha, beta, abs_tol=1e-12 * max(1.0, scale)
    )
    return abs(raw) / scale


def norm_defect(family, n, alpha=None, beta=None):
    """Relative gap between the quadrature norm and the closed form."""
    pn = rodrigues_poly(family, n, alpha, beta)
    ref = norm_sq(family, n, alpha, beta)
    raw = inner_product(
        family, pn, pn, alpha, beta, abs_tol=1e-12 * max(1.0, scalar_float(ref))
    )
    return abs(raw - ref) / ref
