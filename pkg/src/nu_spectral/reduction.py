"""Reduction of generalized-hypergeometric ODEs to hypergeometric form.

The input equation is

    u'' + (psi_t / phi) u' + (phi_t / phi^2) u = 0

with deg phi <= 2, deg psi_t <= 1, deg phi_t <= 2, phi nonvanishing on the
working interval, and the free spectral parameter eps entering phi_t
affinely.  Substituting u = chi * y with a log-derivative chi'/chi = p/phi,
p a linear polynomial, turns it into

    phi y'' + psi y' + lam y = 0,      psi = psi_t + 2 p,

provided p^2 + p (psi_t - phi') + p' phi + phi_t is proportional to phi.
Completing the square shows p must be h +- sqrt(P2) with h = (phi'-psi_t)/2
and P2 = h^2 - phi_t + k phi; P2 is a perfect square of a linear polynomial
exactly when its discriminant vanishes, which is a quadratic condition on
k.  Everything here is carried out over the exact surd field so the
proportionality identity can be asserted as a polynomial zero, not a
numerical near-zero.

Branch admissibility (psi' < 0 with the root of psi inside the interval) is
necessary, not sufficient; when several branches satisfy it the caller gets
AmbiguousBranch and must disambiguate on integrability grounds.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import AmbiguousBranch, NoAdmissibleBranch, NoPerfectSquare, ParseError
from .polynomials import Interval, Polynomial, quad_discriminant, quad_roots
from .scalars import as_exact, scalar_float, scalar_is_zero, scalar_sign, sqrt_scalar


@dataclass(frozen=True)
class EpsAffinePoly:
    """Polynomial whose coefficients depend affinely on the parameter eps."""

    const: Polynomial
    linear: Polynomial = Polynomial()

    def at(self, eps):
        if self.linear.is_zero:
            return self.const
        return self.const + as_exact(eps) * self.linear

    @property
    def max_degree(self):
        degs = [p.degree for p in (self.const, self.linear) if p.degree is not None]
        return max(degs) if degs else None


@dataclass(frozen=True)
class GheProblem:
    phi: Polynomial
    psi_tilde: Polynomial
    phi_tilde: EpsAffinePoly
    interval: Interval

    def __post_init__(self):
        if self.phi.degree is None or self.phi.degree > 2:
            raise ValueError("phi must be nonzero with degree <= 2")
        if self.psi_tilde.degree is not None and self.psi_tilde.degree > 1:
            raise ValueError("psi_tilde must have degree <= 1")
        md = self.phi_tilde.max_degree
        if md is not None and md > 2:
            raise ValueError("phi_tilde must have degree <= 2")
        if self.phi.degree == 2:
            disc = quad_discriminant(self.phi)
            if scalar_sign(disc) >= 0:
                for r in quad_roots(self.phi):
                    if self.interval.contains(r):
                        raise ValueError("phi vanishes inside the working interval")
        elif self.phi.degree == 1:
            if self.interval.contains(quad_roots(self.phi)[0]):
                raise ValueError("phi vanishes inside the working interval")


@dataclass(frozen=True)
class FactorizedFunction:
    """Product of linear-base powers, a polynomial exponential and
    reciprocal exponentials:

        prefactor * prod base_i(x)^e_i * exp(poly(x)) * prod exp(c_j/(x-r_j))

    Bases are linear polynomials oriented to be positive on the working
    interval, so non-integer powers stay real where it matters.
    """

    power_terms: tuple = ()
    exp_poly: Polynomial = Polynomial()
    inv_exp_terms: tuple = ()
    prefactor: object = Fraction(1)

    def __call__(self, x):
        result = scalar_float(self.prefactor)
        for base, expo in self.power_terms:
            bv = base.as_float()(x)
            ev = expo if isinstance(expo, complex) else float(expo)
            if isinstance(bv, complex) or isinstance(ev, complex) or bv <= 0:
                if bv == 0:
                    if (ev.real if isinstance(ev, complex) else ev) > 0:
                        return 0.0
                    raise ZeroDivisionError("power base vanishes with nonpositive exponent")
                result = result * cmath.exp(ev * cmath.log(bv))
            else:
                result = result * bv**ev
        if not self.exp_poly.is_zero:
            pv = self.exp_poly.as_float()(x)
            result = result * (cmath.exp(pv) if isinstance(pv, complex) else math.exp(pv))
        for root, coeff in self.inv_exp_terms:
            result = result * math.exp(float(coeff) / (x - float(root)))
        if isinstance(result, complex) and result.imag == 0.0:
            result = result.real
        return result

    def log_deriv(self, x):
        """(d/dx log f)(x) evaluated in floats."""
        total = 0.0
        for base, expo in self.power_terms:
            b = base.as_float()
            total += float(expo) * b.derivative()(x) / b(x)
        if not self.exp_poly.is_zero:
            total += self.exp_poly.as_float().derivative()(x)
        for root, coeff in self.inv_exp_terms:
            total -= float(coeff) / (x - float(root)) ** 2
        return total

    def squared(self):
        return FactorizedFunction(
            tuple((b, 2 * e) for b, e in self.power_terms),
            2 * self.exp_poly,
            tuple((r, 2 * c) for r, c in self.inv_exp_terms),
            self.prefactor * self.prefactor,
        )

    def times(self, other):
        return FactorizedFunction(
            self.power_terms + other.power_terms,
            self.exp_poly + other.exp_poly,
            self.inv_exp_terms + other.inv_exp_terms,
            self.prefactor * other.prefactor,
        )

    def scaled(self, c):
        return replace(self, prefactor=self.prefactor * c)

    @property
    def is_constant(self):
        return (
            not self.power_terms and self.exp_poly.is_zero and not self.inv_exp_terms
        )


@dataclass(frozen=True)
class NuBranch:
    """One consistent substitution: u = chi * y turns the input equation
    into phi y'' + psi y' + lam y = 0."""

    k0: object
    pi: Polynomial
    psi: Polynomial
    lam: object
    chi: FactorizedFunction
    weight: FactorizedFunction
    weight_tilde: FactorizedFunction
    eps: object
    admissible: bool = False


@dataclass(frozen=True)
class ReductionResult:
    ghe: GheProblem
    eps: object
    k0_values: tuple
    branches: tuple
    selected: NuBranch | None


def _interval_probe(interval):
    lo, hi = float(interval.lo), float(interval.hi)
    if math.isfinite(lo) and math.isfinite(hi):
        return 0.5 * (lo + hi)
    if math.isfinite(lo):
        return lo + 1.0
    if math.isfinite(hi):
        return hi - 1.0
    return 0.0


def _oriented_base(root, interval):
    """Linear base vanishing at root, positive on the interval."""
    x = Polynomial.x()
    if _interval_probe(interval) > float(root):
        return x - root
    return root - x


def build_p2(ghe, eps):
    """P2(x; k) as a pair (k-free part, coefficient of k)."""
    h = (ghe.phi.derivative() - ghe.psi_tilde) * Fraction(1, 2)
    base = h * h - ghe.phi_tilde.at(eps)
    return base, ghe.phi


def solve_k0(ghe, eps):
    """Values of k for which P2(x; k) is a perfect square (exact).

    The discriminant of P2 in x is a quadratic in k; its real roots are
    returned (two entries when the quadratic has two, possibly equal,
    roots).  NoPerfectSquare when no real solution exists in the surd
    field.
    """
    base, kc = build_p2(ghe, eps)
    a0, b0, c0 = base.coeff(2), base.coeff(1), base.coeff(0)
    a1, b1, c1 = kc.coeff(2), kc.coeff(1), kc.coeff(0)
    if scalar_is_zero(a0) and scalar_is_zero(a1):
        # P2 linear in x for every k: perfect square needs the linear
        # coefficient to vanish; the degenerate discriminant is b(k)^2
        disc = Polynomial((b0 * b0, 2 * b0 * b1, b1 * b1))
    else:
        disc = Polynomial(
            (
                b0 * b0 - 4 * a0 * c0,
                2 * b0 * b1 - 4 * (a0 * c1 + a1 * c0),
                b1 * b1 - 4 * a1 * c1,
            )
        )
    if disc.is_zero:
        raise NoPerfectSquare(
            "every k makes P2 a perfect square; the input is degenerate"
        )
    if disc.degree == 0:
        raise NoPerfectSquare("no k makes P2 a perfect square")
    try:
        roots = quad_roots(disc)
    except ValueError as exc:
        raise NoPerfectSquare(f"k-discriminant has no real roots: {exc}") from exc
    unique = []
    for r in roots:
        if not any(r == s for s in unique):
            unique.append(r)
    return unique


def _sqrt_of_square(p):
    """Exact linear (or constant) square root of a perfect-square P2."""
    d = p.degree
    if d is None:
        return Polynomial()
    if d == 2:
        a2 = p.coeff(2)
        if scalar_sign(a2) < 0:
            raise NoPerfectSquare("P2 opens downward; square root leaves the reals")
        s = sqrt_scalar(as_exact(a2))
        r = Polynomial((p.coeff(1) / (2 * s), s))
        if r * r != p:
            raise NoPerfectSquare("P2 is not an exact perfect square")
        return r
    if d == 1:
        raise NoPerfectSquare("P2 is linear in x and cannot be a square")
    c = p.coeff(0)
    if scalar_sign(c) < 0:
        raise NoPerfectSquare("P2 is a negative constant")
    return Polynomial((sqrt_scalar(as_exact(c)),))


def _solve_log_derivative(p, phi, interval):
    """Closed-form f with f'/f = p/phi, deg p <= 1, as a FactorizedFunction."""
    d = phi.degree
    if d == 0:
        scale = 1 / as_exact(phi.coeff(0))
        return FactorizedFunction(exp_poly=(p * scale).antiderivative())
    if d == 1:
        f1 = phi.coeff(1)
        r = quad_roots(phi)[0]
        expo = p(r) / f1
        slope = p.coeff(1) / f1
        exp_poly = Polynomial((0, slope)) if not scalar_is_zero(slope) else Polynomial()
        return FactorizedFunction(
            power_terms=((_oriented_base(r, interval), expo),),
            exp_poly=exp_poly,
        )
    disc = quad_discriminant(phi)
    if scalar_is_zero(disc):
        f2 = phi.coeff(2)
        r = quad_roots(phi)[0]
        slope = p.coeff(1) / f2
        terms = ()
        if not scalar_is_zero(slope):
            terms = ((_oriented_base(r, interval), slope),)
        pr = p(r)
        inv = ()
        if not scalar_is_zero(pr):
            inv = ((r, -pr / f2),)
        return FactorizedFunction(power_terms=terms, inv_exp_terms=inv)
    r1, r2 = quad_roots(phi)
    dphi = phi.derivative()
    e1 = p(r1) / dphi(r1)
    e2 = p(r2) / dphi(r2)
    terms = []
    if not scalar_is_zero(e1):
        terms.append((_oriented_base(r1, interval), e1))
    if not scalar_is_zero(e2):
        terms.append((_oriented_base(r2, interval), e2))
    return FactorizedFunction(power_terms=tuple(terms))


def chi_from_pi(pi, phi, interval):
    """The multiplier chi with chi'/chi = pi/phi."""
    return _solve_log_derivative(pi, phi, interval)


def pearson_weight(phi, psi, interval):
    """Weight omega solving the Pearson equation (phi omega)' = psi omega."""
    return _solve_log_derivative(psi - phi.derivative(), phi, interval)


def weight_tilde(ghe):
    """Weight of the input equation: (phi w)' = psi_t w; constant 1 when
    psi_t = phi' identically."""
    if ghe.psi_tilde == ghe.phi.derivative():
        return FactorizedFunction()
    return _solve_log_derivative(
        ghe.psi_tilde - ghe.phi.derivative(), ghe.phi, ghe.interval
    )


def branch_candidates(ghe, eps):
    """All (k0, sign) substitution branches, each verified exactly.

    Branches whose square root leaves the real surd field are skipped; if
    none survives, NoPerfectSquare propagates.
    """
    eps = as_exact(eps)
    k0s = solve_k0(ghe, eps)
    base, kc = build_p2(ghe, eps)
    h = (ghe.phi.derivative() - ghe.psi_tilde) * Fraction(1, 2)
    wt = weight_tilde(ghe)
    branches = []
    last_err = None
    seen = set()
    for k0 in k0s:
        p2 = base + as_exact(k0) * kc
        try:
            root = _sqrt_of_square(p2)
        except (NoPerfectSquare, ValueError) as exc:
            last_err = exc
            continue
        for sign in (1, -1):
            pi = h + sign * root
            key = (k0, tuple(pi.coeffs))
            if key in seen:
                continue
            seen.add(key)
            psi = ghe.psi_tilde + 2 * pi
            lam = k0 + pi.coeff(1)
            _assert_reduction_identity(ghe, eps, pi, lam)
            chi = chi_from_pi(pi, ghe.phi, ghe.interval)
            w = pearson_weight(ghe.phi, psi, ghe.interval)
            branches.append(
                NuBranch(k0, pi, psi, lam, chi, w, wt, eps)
            )
    if not branches:
        raise NoPerfectSquare(
            f"no branch admits an exact real square root: {last_err}"
        )
    return branches


def _assert_reduction_identity(ghe, eps, pi, lam):
    lhs = as_exact(lam) * ghe.phi
    rhs = (
        pi * pi
        + pi * (ghe.psi_tilde - ghe.phi.derivative())
        + pi.coeff(1) * ghe.phi
        + ghe.phi_tilde.at(eps)
    )
    if lhs != rhs:
        raise AssertionError(
            "internal error: substitution identity violated; "
            f"pi={pi!r}, lam={lam!r}"
        )


def select_branch(branches, interval):
    """The unique branch with decreasing psi whose zero lies inside the
    interval.  NoAdmissibleBranch / AmbiguousBranch otherwise."""
    matches = []
    for br in branches:
        if br.psi.degree != 1:
            continue
        if scalar_sign(br.psi.coeff(1)) >= 0:
            continue
        root = -br.psi.coeff(0) / br.psi.coeff(1)
        if interval.contains(root):
            matches.append(br)
    if not matches:
        raise NoAdmissibleBranch(
            "no branch has decreasing psi with its zero inside the interval"
        )
    if len(matches) > 1:
        raise AmbiguousBranch(matches)
    return replace(matches[0], admissible=True)


def reduce_ghe(ghe, eps, select=True):
    """Full reduction at a concrete eps; selection errors propagate when
    select=True, otherwise selected is None if the filter does not pick a
    unique branch."""
    eps = as_exact(eps)
    k0s = solve_k0(ghe, eps)
    branches = branch_candidates(ghe, eps)
    selected = None
    try:
        selected = select_branch(branches, ghe.interval)
    except (NoAdmissibleBranch, AmbiguousBranch):
        if select:
            raise
    return ReductionResult(ghe, eps, tuple(k0s), tuple(branches), selected)


def corollary_applicable(branch, tau_prime_bounded):
    """Whether the shortcut normalization route applies: the input weight
    must be constant and the change of variables must have bounded slope."""
    return branch.weight_tilde.is_constant and bool(tau_prime_bounded)


# ---------------------------------------------------------------------------
# one-line text format for the command line


_GHE_KEYS = ("phi", "psi_tilde", "phi_tilde", "interval")


def _parse_coefficient(piece, where):
    """One coefficient: a signed sum of atoms, each a rational number
    (integer, p/q, or plain decimal without exponent) or [q*]eps.  Returns
    (constant, eps multiplier) as Fractions."""
    if not piece:
        raise ParseError("empty coefficient", where)
    const = Fraction(0)
    slope = Fraction(0)
    consumed = 0
    for m in re.finditer(r"[+-]?[^+-]+", piece):
        atom = m.group()
        consumed += len(atom)
        sign = Fraction(1)
        body = atom
        if body[0] in "+-":
            sign = Fraction(-1) if body[0] == "-" else Fraction(1)
            body = body[1:]
        if body.endswith("eps"):
            mult = body[:-3].rstrip("*")
            try:
                slope += sign * (Fraction(mult) if mult else Fraction(1))
            except (ValueError, ZeroDivisionError):
                raise ParseError(
                    f"bad eps multiplier {atom!r}", where + m.start()
                ) from None
        else:
            try:
                const += sign * Fraction(body)
            except (ValueError, ZeroDivisionError):
                raise ParseError(
                    f"not a rational coefficient: {atom!r}", where + m.start()
                ) from None
    if consumed != len(piece):
        raise ParseError(f"malformed coefficient {piece!r}", where)
    return const, slope


def _parse_endpoint(piece, where):
    name = piece.strip()
    if name in ("inf", "+inf"):
        return math.inf
    if name == "-inf":
        return -math.inf
    try:
        return Fraction(name)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad interval endpoint {name!r}", where) from None


def parse_ghe_text(text):
    """Parse the one-line equation description used by the command line.

    Four whitespace-separated key=value fields with keys phi, psi_tilde,
    phi_tilde and interval, in any order.  Polynomial values are
    comma-separated coefficients in ascending powers; each coefficient is a
    rational number, optionally combined with a multiple of the literal
    ``eps`` marking where the spectral parameter enters (phi_tilde only).
    The interval is ``lo,hi`` and accepts -inf / inf.  Example:

        phi=1 psi_tilde=0 phi_tilde=eps,0,-1 interval=-inf,inf

    Returns (ghe, needs_eps).  Raises ParseError with the character offset
    of the offending piece; structural defects (phi vanishing inside the
    interval, degrees too high) surface as ValueError from the GheProblem
    constructor.
    """
    fields = {}
    for m in re.finditer(r"\S+", text):
        token, where = m.group(), m.start()
        key, sep, value = token.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {token!r}", where)
        if key not in _GHE_KEYS:
            raise ParseError(f"unknown field {key!r}", where)
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", where)
        fields[key] = (value, where + len(key) + 1)
    for key in _GHE_KEYS:
        if key not in fields:
            raise ParseError(f"missing field {key!r}")

    polys = {}
    for key in ("phi", "psi_tilde", "phi_tilde"):
        value, where = fields[key]
        consts, slopes = [], []
        offset = 0
        for piece in value.split(","):
            c, s = _parse_coefficient(piece, where + offset)
            if s != 0 and key != "phi_tilde":
                raise ParseError(
                    "eps placeholder only enters phi_tilde", where + offset
                )
            consts.append(c)
            slopes.append(s)
            offset += len(piece) + 1
        polys[key] = (Polynomial(consts), Polynomial(slopes))

    value, where = fields["interval"]
    pieces = value.split(",")
    if len(pieces) != 2:
        raise ParseError("interval needs exactly two endpoints", where)
    lo = _parse_endpoint(pieces[0], where)
    hi = _parse_endpoint(pieces[1], where + len(pieces[0]) + 1)
    if not float(lo) < float(hi):
        raise ParseError("interval endpoints out of order", where)

    linear = polys["phi_tilde"][1]
    ghe = GheProblem(
        phi=polys["phi"][0],
        psi_tilde=polys["psi_tilde"][0],
        phi_tilde=EpsAffinePoly(const=polys["phi_tilde"][0], linear=linear),
        interval=Interval(lo, hi),
    )
    return ghe, not linear.is_zero
