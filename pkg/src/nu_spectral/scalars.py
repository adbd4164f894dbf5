"""Exact scalar arithmetic over rationals extended by square roots.

The reduction pipeline needs to square-root discriminants and keep the
results exact, so plain ``fractions.Fraction`` is not enough.  ``SurdSum``
represents a finite sum

    q_1 * sqrt(d_1) + q_2 * sqrt(d_2) + ...

with rational coefficients ``q_i`` and positive integer radicands ``d_i``
(``d = 1`` is the rational part).  Radicands are canonicalized by pulling
out square factors, so arithmetic closes over a small, consistent set of
radicals.  Sums, products and exact division all stay in the field; division
works by closing the radicand set multiplicatively and solving a small
rational linear system, which avoids any reliance on integer factorization.

Floats passed into the algebra contaminate: the result degrades to float.
Exactness is preserved by rationalizing inputs (``Fraction(x)`` on a float
is exact) before doing algebra, which is what the callers in this package do.

Radicand canonicalization is complete for square factors with a prime
divisor below the trial-division bound and for full perfect squares of any
size.  A rational whose numerator hides the square of a large prime keeps
that square inside the radicand; representations stay self-consistent, just
not maximally reduced.
"""

from __future__ import annotations

import math
from fractions import Fraction

_TRIAL_BOUND = 1000


def _small_primes(bound):
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, v in enumerate(sieve) if v]


_PRIMES = _small_primes(_TRIAL_BOUND)


def _square_free(n):
    """Split positive integer n into (outside, core) with n = outside^2 * core.

    core is squarefree with respect to all primes up to the trial bound and
    is never itself a perfect square.
    """
    if n <= 0:
        raise ValueError("radicand must be positive")
    out = 1
    for p in _PRIMES:
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            out *= p
    r = math.isqrt(n)
    if r * r == n:
        out *= r
        n = 1
    return out, n


def _sqrt_int_float(n):
    """Float square root of a positive int, safe for huge values."""
    if n.bit_length() <= 1000:
        return math.sqrt(n)
    k = (n.bit_length() - 900) // 2
    return math.sqrt(n >> (2 * k)) * (2.0**k)


def _core_product(d1, d2):
    """sqrt(d1) * sqrt(d2) = mult * sqrt(core); returns (mult, core)."""
    if d1 == d2:
        return d1, 1
    g = math.gcd(d1, d2)
    out, core = _square_free((d1 // g) * (d2 // g))
    return g * out, core


def sqrt_fraction(q):
    """Exact square root of a nonnegative Fraction/int.

    Returns a Fraction when the input is a perfect square, otherwise a
    SurdSum with a single radical term.  Raises ValueError on negatives.
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    if q == 0:
        return Fraction(0)
    # sqrt(p/r) = sqrt(p*r) / r
    m = q.numerator * q.denominator
    out, core = _square_free(m)
    coeff = Fraction(out, q.denominator)
    if core == 1:
        return coeff
    return SurdSum({core: coeff})


class SurdSum:
    """A rational linear combination of square roots of positive integers.

    Immutable.  Instances always contain at least one irrational term;
    arithmetic that collapses to a rational returns a plain Fraction.
    """

    __slots__ = ("_t",)

    def __init__(self, terms):
        t = {}
        for core, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff:
                t[core] = coeff
        if not any(core != 1 for core in t):
            raise ValueError("SurdSum must carry an irrational term; use Fraction")
        self._t = t

    @staticmethod
    def _wrap(terms):
        """Build a SurdSum or collapse to Fraction if all radicals cancel."""
        t = {core: Fraction(c) for core, c in terms.items() if c}
        if not t:
            return Fraction(0)
        if set(t) == {1}:
            return t[1]
        return SurdSum(t)

    # -- views ---------------------------------------------------------

    def terms(self):
        return dict(self._t)

    @property
    def is_rational(self):
        return False  # invariant: always carries an irrational term

    def __float__(self):
        total = 0.0
        for core, coeff in self._t.items():
            total += float(coeff) * (1.0 if core == 1 else _sqrt_int_float(core))
        return total

    def __complex__(self):
        return complex(float(self))

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            t = dict(self._t)
            t[1] = t.get(1, Fraction(0)) + other
            return SurdSum._wrap(t)
        if isinstance(other, SurdSum):
            t = dict(self._t)
            for core, c in other._t.items():
                t[core] = t.get(core, Fraction(0)) + c
            return SurdSum._wrap(t)
        if isinstance(other, float):
            return float(self) + other
        if isinstance(other, complex):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return SurdSum({c: -v for c, v in self._t.items()})

    def __sub__(self, other):
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Fraction(0)
            return SurdSum({c: v * other for c, v in self._t.items()})
        if isinstance(other, SurdSum):
            t = {}
            for d1, q1 in self._t.items():
                for d2, q2 in other._t.items():
                    mult, core = _core_product(d1, d2)
                    t[core] = t.get(core, Fraction(0)) + q1 * q2 * mult
            return SurdSum._wrap(t)
        if isinstance(other, float):
            return float(self) * other
        if isinstance(other, complex):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        """Exact multiplicative inverse.

        Closes the radicand set under products and solves Y * X = 1 as a
        rational linear system over that basis.
        """
        basis = set(self._t) | {1}
        changed = True
        while changed:
            changed = False
            for d1 in list(basis):
                for d2 in list(basis):
                    _, core = _core_product(d1, d2)
                    if core not in basis:
                        basis.add(core)
                        changed = True
            if len(basis) > 16:
                raise ArithmeticError("radical basis too large to invert")
        blist = sorted(basis)
        index = {d: i for i, d in enumerate(blist)}
        n = len(blist)
        # column j holds self * sqrt(blist[j]) expanded over the basis
        mat = [[Fraction(0)] * n for _ in range(n)]
        for d1, q1 in self._t.items():
            for j, d2 in enumerate(blist):
                mult, core = _core_product(d1, d2)
                mat[index[core]][j] += q1 * mult
        rhs = [Fraction(0)] * n
        rhs[index[1]] = Fraction(1)
        x = _solve_fraction_system(mat, rhs)
        inv = SurdSum._wrap({blist[j]: x[j] for j in range(n)})
        check = self * inv
        if check != 1:
            raise ArithmeticError("inverse verification failed")
        return inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, SurdSum):
            return self * other.inverse()
        if isinstance(other, float):
            return float(self) / other
        if isinstance(other, complex):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        if isinstance(other, float):
            return other / float(self)
        if isinstance(other, complex):
            return other / complex(self)
        return NotImplemented

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SurdSum):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return False  # invariant: never purely rational
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._t.items())))

    def __abs__(self):
        return self if float(self) >= 0 else -self

    def __bool__(self):
        return True  # never the zero element

    def __lt__(self, other):
        o = float(other) if not isinstance(other, complex) else other
        return float(self) < o

    def __le__(self, other):
        return float(self) <= float(other)

    def __gt__(self, other):
        return float(self) > float(other)

    def __ge__(self, other):
        return float(self) >= float(other)

    # -- display ---------------------------------------------------------

    def __repr__(self):
        parts = []
        for core in sorted(self._t):
            q = self._t[core]
            if core == 1:
                s = str(q)
            elif q == 1:
                s = f"sqrt({core})"
            elif q == -1:
                s = f"-sqrt({core})"
            else:
                s = f"{q}*sqrt({core})"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _solve_fraction_system(mat, rhs):
    """Gaussian elimination over Fractions.  mat is modified in place."""
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular radical system (dividing by zero?)")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


# -- generic scalar helpers (Fraction | SurdSum | float | complex) --------


def scalar_float(x):
    if isinstance(x, complex):
        return x
    return float(x)


def scalar_is_zero(x):
    return x == 0


def scalar_sign(x):
    """Sign of an exact or float scalar: -1, 0, or 1."""
    if x == 0:
        return 0
    v = scalar_float(x)
    if isinstance(v, complex):
        raise ValueError("sign of a complex scalar")
    return 1 if v > 0 else -1


def _component_sqrt(q, w):
    """Square root of one rational component of a denested radical.

    Prefers the representation coeff * sqrt(w) with the caller's literal
    core w over a fresh canonicalization: square-factor extraction by trial
    division cannot find large square divisors, and a re-derived core would
    break the exact comparison against terms already expressed over w.
    """
    root = sqrt_fraction(q / w)
    if isinstance(root, Fraction):
        return Fraction(0) if root == 0 else SurdSum({w: root})
    return sqrt_fraction(q)


def sqrt_scalar(x):
    """Exact square root within the surd field.

    Handles nonnegative rationals and two-term surds u + v*sqrt(w) whose
    denested form sqrt(a) +/- sqrt(b) exists over the rationals.  Raises
    ValueError when no exact representation exists (callers decide whether
    to fall back to floats or report a domain error).
    """
    if isinstance(x, (int, Fraction)):
        return sqrt_fraction(x)
    if isinstance(x, float):
        if x < 0:
            raise ValueError("square root of a negative scalar")
        return math.sqrt(x)
    if isinstance(x, SurdSum):
        t = x.terms()
        cores = sorted(t)
        if cores == [1]:
            return sqrt_fraction(t[1])
        if len(cores) > 2 or (len(cores) == 2 and cores[0] != 1):
            raise ValueError("square root of a multi-radical sum is not supported")
        if len(cores) == 1:
            raise ValueError("sqrt of a pure radical term leaves the field")
        u, w = t[1], cores[1]
        v = t[w]
        if float(x) < 0:
            raise ValueError("square root of a negative scalar")
        disc = u * u - v * v * w
        if disc < 0:
            raise ValueError("no exact denested square root (negative inner discriminant)")
        s = sqrt_fraction(disc)
        if not isinstance(s, Fraction):
            raise ValueError("no exact denested square root (inner root is irrational)")
        a = (u + s) / 2
        b = (u - s) / 2
        if a < 0 or b < 0:
            raise ValueError("no exact denested square root (negative components)")
        ra = _component_sqrt(a, w)
        rb = _component_sqrt(b, w)
        r = ra + rb if v > 0 else ra - rb
        if r * r != x:
            raise ValueError("denesting verification failed")
        return r
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def as_exact(x):
    """Lift ints and floats to exact Fractions; pass exact types through."""
    if isinstance(x, (Fraction, SurdSum)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot lift {type(x).__name__} to an exact scalar")
