"""Exact linear algebra and certified real-root extraction.

Matrices carry int or Fraction entries and every operation on them is
exact. Spectral radii of nonnegative integer matrices are certified via
the characteristic polynomial: Sturm-sequence isolation of the largest
real root, then bisection with exact rational endpoints. Floating point
enters only in the final readout and in a power-iteration diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    InternalInconsistencyError,
    InvalidParameterError,
    NoRealRootError,
    NoRealSolutionError,
    NotNonnegativeError,
)

DEFAULT_TOL = 1e-12


def _exact_entry(x):
    if isinstance(x, bool):
        raise InvalidParameterError("matrix entries must be int or Fraction")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise InvalidParameterError(
        "matrix entries must be exact (int or Fraction), got %s" % type(x).__name__
    )


class ExactMatrix:
    """Square matrix over the rationals with exact arithmetic."""

    __slots__ = ("_rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_exact_entry(x) for x in row) for row in rows)
        if not rows:
            raise InvalidParameterError("matrix must have positive dimension")
        if any(len(row) != len(rows) for row in rows):
            raise InvalidParameterError("matrix must be square")
        self._rows = rows

    @classmethod
    def identity(cls, dim):
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @property
    def dim(self):
        return len(self._rows)

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._rows[i][j]
        return self._rows[key]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return "ExactMatrix(%r)" % ([list(r) for r in self._rows],)

    def __add__(self, other):
        self._check_dim(other)
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def __sub__(self, other):
        self._check_dim(other)
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ]
        )

    def __neg__(self):
        return ExactMatrix([[-a for a in row] for row in self._rows])

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            self._check_dim(other)
            cols = other.transpose()._rows
            return ExactMatrix(
                [
                    [sum(a * b for a, b in zip(row, col)) for col in cols]
                    for row in self._rows
                ]
            )
        return ExactMatrix([[a * other for a in row] for row in self._rows])

    def __rmul__(self, scalar):
        return ExactMatrix([[scalar * a for a in row] for row in self._rows])

    def __matmul__(self, other):
        return self * other

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise InvalidParameterError("dimension mismatch")

    def transpose(self):
        return ExactMatrix(list(zip(*self._rows)))

    def trace(self):
        return sum(self._rows[i][i] for i in range(self.dim))

    def is_integer(self):
        return all(isinstance(a, int) for row in self._rows for a in row)

    def is_nonnegative(self):
        return all(a >= 0 for row in self._rows for a in row)

    def entrywise_ge(self, other):
        self._check_dim(other)
        return all(
            a >= b for ra, rb in zip(self._rows, other._rows) for a, b in zip(ra, rb)
        )

    def det(self):
        """Exact determinant by fraction-free style Gaussian elimination."""
        n = self.dim
        m = [[Fraction(a) for a in row] for row in self._rows]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
            if pivot is None:
                return 0
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                if m[r][col] == 0:
                    continue
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
        return int(det) if det.denominator == 1 else det

    def inverse(self):
        """Exact inverse via Gauss-Jordan; raises if singular."""
        n = self.dim
        m = [[Fraction(a) for a in row] for row in self._rows]
        aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if pivot is None:
                raise InvalidParameterError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return ExactMatrix([row[n:] for row in aug])

    def to_float_array(self):
        return np.array([[float(a) for a in row] for row in self._rows], dtype=float)


class IntPolynomial:
    """Univariate polynomial with exact integer coefficients, constant term first."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise InvalidParameterError("coefficients must be integers")
            elif not isinstance(c, int) or isinstance(c, bool):
                raise InvalidParameterError("coefficients must be integers")
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @property
    def coefficients(self):
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1

    @property
    def leading_coefficient(self):
        return self._coeffs[-1] if self._coeffs else 0

    def is_zero(self):
        return not self._coeffs

    def __call__(self, x):
        """Evaluate by Horner; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return IntPolynomial([k * c for k, c in enumerate(self._coeffs)][1:])

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __neg__(self):
        return IntPolynomial([-c for c in self._coeffs])

    def __add__(self, other):
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self._coeffs])
        if self.is_zero() or other.is_zero():
            return IntPolynomial([])
        out = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def exact_div(self, divisor):
        """Polynomial quotient, requiring an exact division with integer result."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [Fraction(c) for c in self._coeffs]
        div = [Fraction(c) for c in divisor._coeffs]
        if len(rem) < len(div):
            if any(rem):
                raise InvalidParameterError("division is not exact")
            return IntPolynomial([])
        quot = [Fraction(0)] * (len(rem) - len(div) + 1)
        for k in range(len(quot) - 1, -1, -1):
            q = rem[k + len(div) - 1] / div[-1]
            quot[k] = q
            if q:
                for j, d in enumerate(div):
                    rem[k + j] -= q * d
        if any(rem):
            raise InvalidParameterError("division is not exact")
        if any(q.denominator != 1 for q in quot):
            raise InvalidParameterError("quotient is not an integer polynomial")
        return IntPolynomial([int(q) for q in quot])

    def content(self):
        return math.gcd(*(abs(c) for c in self._coeffs)) if self._coeffs else 0

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        sign = 1 if self.leading_coefficient > 0 else -1
        return IntPolynomial([sign * c // g for c in self._coeffs])

    def square_free_part(self):
        """p / gcd(p, p'), primitive with positive leading coefficient."""
        g = _poly_gcd(self, self.derivative())
        if g.degree <= 0:
            return self.primitive()
        return _rational_div(self, g).primitive()

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self._coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            elif k == 1:
                term = "t" if mag == 1 else "%dt" % mag
            else:
                term = "t^%d" % k if mag == 1 else "%dt^%d" % (mag, k)
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    def __repr__(self):
        return "IntPolynomial(%r)" % (list(self._coeffs),)


def _rational_div(num, den):
    """Quotient of integer polynomials over Q, scaled back to a primitive int polynomial."""
    rem = [Fraction(c) for c in num.coefficients]
    div = [Fraction(c) for c in den.coefficients]
    quot = [Fraction(0)] * (len(rem) - len(div) + 1)
    for k in range(len(quot) - 1, -1, -1):
        q = rem[k + len(div) - 1] / div[-1]
        quot[k] = q
        if q:
            for j, d in enumerate(div):
                rem[k + j] -= q * d
    lcm = 1
    for q in quot:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    return IntPolynomial([int(q * lcm) for q in quot]).primitive()


def _poly_gcd(a, b):
    """Primitive gcd of integer polynomials, computed over Q."""
    fa = [Fraction(c) for c in a.coefficients]
    fb = [Fraction(c) for c in b.coefficients]

    def strip(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    fa, fb = strip(fa), strip(fb)
    while fb:
        # fa mod fb
        rem = fa[:]
        for k in range(len(rem) - len(fb), -1, -1):
            q = rem[k + len(fb) - 1] / fb[-1]
            if q:
                for j, d in enumerate(fb):
                    rem[k + j] -= q * d
        fa, fb = fb, strip(rem)
    if not fa:
        return IntPolynomial([])
    lcm = 1
    for c in fa:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return IntPolynomial([int(c * lcm) for c in fa]).primitive()


@dataclass(frozen=True)
class RootApproximation:
    """A certified real root: |value - root| <= radius, root isolated in the interval.

    The isolating interval has exact rational endpoints and contains exactly
    one real root of ``polynomial``. A zero radius with equal endpoints means
    the root is known exactly.
    """

    value: float
    radius: float
    isolating_interval: tuple
    polynomial: IntPolynomial


def char_poly(m: ExactMatrix) -> IntPolynomial:
    """Characteristic polynomial det(tI - m) of an integer matrix.

    Uses the Faddeev-LeVerrier trace recurrence; every intermediate matrix
    and every division is exact over the integers. Matrices with
    non-integer rational entries are rejected, with the clearing scale
    reported so callers can rescale themselves (eigenvalues scale linearly).
    """
    if not m.is_integer():
        scale = 1
        for row in m.rows:
            for a in row:
                if isinstance(a, Fraction):
                    scale = scale * a.denominator // math.gcd(scale, a.denominator)
        raise InvalidParameterError(
            "char_poly requires integer entries; scale the matrix by %d first" % scale
        )
    n = m.dim
    a = [list(row) for row in m.rows]
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    work = [row[:] for row in ident]
    coeffs_desc = [1]  # coefficient of t^n
    for k in range(1, n + 1):
        prod = [
            [sum(a[i][l] * work[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
        tr = sum(prod[i][i] for i in range(n))
        if tr % k:
            raise InternalInconsistencyError("trace recurrence produced a non-integer")
        ck = -tr // k
        coeffs_desc.append(ck)
        work = [
            [prod[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)
        ]
    if any(x != 0 for row in work for x in row):
        # Cayley-Hamilton: the recurrence must terminate at the zero matrix.
        raise InternalInconsistencyError("characteristic polynomial recurrence failed")
    return IntPolynomial(list(reversed(coeffs_desc)))


def _sturm_chain(q):
    """Sturm chain of a square-free integer polynomial.

    Remainders are rescaled by positive rationals only, which preserves the
    sign-variation count while keeping the chain in integer coefficients.
    """
    chain = [q, q.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        rem = _poly_mod(chain[-2], chain[-1])
        if rem.is_zero():
            break
        chain.append(-rem)
    return [p for p in chain if not p.is_zero()]


def _poly_mod(a, b):
    """Remainder of a by b, rescaled to a primitive integer polynomial (positive scaling)."""
    rem = [Fraction(c) for c in a.coefficients]
    div = [Fraction(c) for c in b.coefficients]
    for k in range(len(rem) - len(div), -1, -1):
        q = rem[k + len(div) - 1] / div[-1]
        if q:
            for j, d in enumerate(div):
                rem[k + j] -= q * d
    while rem and rem[-1] == 0:
        rem.pop()
    if not rem:
        return IntPolynomial([])
    lcm = 1
    for c in rem:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in rem]
    g = math.gcd(*(abs(c) for c in ints))
    return IntPolynomial([c // g for c in ints])


def _sign_variations(chain, x):
    signs = []
    for p in chain:
        v = p(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _divisors(n, cap=64):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
            if len(out) > cap:
                return None
        d += 1
    return sorted(out)


def _rational_root_in(q, lo, hi):
    """Exact rational root of q in (lo, hi], if one exists and is cheap to find."""
    coeffs = q.coefficients
    k = 0
    while coeffs[k] == 0:
        k += 1
    candidates = set()
    if k > 0 and lo < 0 <= hi:
        candidates.add(Fraction(0))
    if abs(coeffs[k]) <= 10**6 and abs(coeffs[-1]) <= 10**6:
        nums = _divisors(coeffs[k])
        dens = _divisors(coeffs[-1])
        if nums is not None and dens is not None and len(nums) * len(dens) <= 64:
            for u in nums:
                for v in dens:
                    candidates.add(Fraction(u, v))
                    candidates.add(Fraction(-u, v))
    roots = [c for c in candidates if lo < c <= hi and q(c) == 0]
    return max(roots) if roots else None


def largest_real_root(p: IntPolynomial, tol: float = DEFAULT_TOL) -> RootApproximation:
    """Largest real root of p, certified by Sturm isolation plus exact bisection.

    The returned approximation satisfies radius <= tol, and its isolating
    interval (with exact rational endpoints) contains exactly one real root
    of p. Rational roots are detected and returned exactly.
    """
    if tol <= 0:
        raise InvalidParameterError("tol must be positive")
    if p.degree < 1:
        raise InvalidParameterError("polynomial must be nonconstant")
    q = p.square_free_part()
    chain = _sturm_chain(q)
    lead = abs(q.leading_coefficient)
    bound = Fraction(1) + max(Fraction(abs(c), lead) for c in q.coefficients)
    lo, hi = -bound, bound

    var_lo = _sign_variations(chain, lo)
    var_hi = _sign_variations(chain, hi)
    if var_lo - var_hi == 0:
        raise NoRealRootError("polynomial has no real root")
    # Shrink towards the rightmost root: keep >= 1 root in (lo, hi].
    while var_lo - var_hi > 1:
        mid = (lo + hi) / 2
        var_mid = _sign_variations(chain, mid)
        if var_mid - var_hi >= 1:
            lo, var_lo = mid, var_mid
        else:
            hi, var_hi = mid, var_mid

    exact = _rational_root_in(q, lo, hi)
    if exact is not None:
        return RootApproximation(float(exact), 0.0, (exact, exact), p)

    tol_f = Fraction(tol)
    q_lo = q(lo)
    q_hi = q(hi)
    if q_hi == 0:
        return RootApproximation(float(hi), 0.0, (hi, hi), p)
    use_signs = q_lo != 0  # one simple root inside forces a sign change
    while hi - lo > 2 * tol_f:
        mid = (lo + hi) / 2
        if use_signs:
            v = q(mid)
            if v == 0:
                return RootApproximation(float(mid), 0.0, (mid, mid), p)
            if (v > 0) == (q_lo > 0):
                lo, q_lo = mid, v
            else:
                hi, q_hi = mid, v
        else:
            var_mid = _sign_variations(chain, mid)
            if var_mid - var_hi >= 1:
                lo = mid
            else:
                hi, var_hi = mid, var_mid
    mid = (lo + hi) / 2
    return RootApproximation(float(mid), float((hi - lo) / 2), (lo, hi), p)


def count_real_roots(p: IntPolynomial, lo, hi) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    if p.degree < 1:
        return 0
    q = p.square_free_part()
    chain = _sturm_chain(q)
    return _sign_variations(chain, Fraction(lo)) - _sign_variations(chain, Fraction(hi))


def power_iteration_estimate(m: ExactMatrix, tol: float = DEFAULT_TOL, max_iterations=None):
    """Floating spectral-radius estimate by power iteration from the all-ones vector.

    Returns (estimate, converged). Convergence is not guaranteed for
    imprimitive matrices; callers treat the estimate as a diagnostic only.
    """
    n = m.dim
    if max_iterations is None:
        max_iterations = 10 * n * max(1, math.ceil(-math.log10(tol)))
    a = m.to_float_array()
    v = np.ones(n)
    est = 0.0
    for _ in range(max_iterations):
        w = a @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0, True
        new_est = norm / np.linalg.norm(v)
        v = w / norm
        if abs(new_est - est) <= tol * max(1.0, new_est):
            return new_est, True
        est = new_est
    return est, False


def spectral_radius(m: ExactMatrix, tol: float = DEFAULT_TOL) -> RootApproximation:
    """Certified Perron-Frobenius eigenvalue of a nonnegative integer matrix.

    The certificate is the characteristic-polynomial route; a floating
    power-iteration estimate is compared against it as a consistency
    diagnostic when the iteration converges.
    """
    if not m.is_nonnegative():
        raise NotNonnegativeError("matrix has a negative entry")
    root = largest_real_root(char_poly(m), tol)
    estimate, converged = power_iteration_estimate(m, tol)
    if converged and abs(estimate - root.value) > 10 * tol + 1e-9 * abs(root.value):
        raise InternalInconsistencyError(
            "power iteration (%r) disagrees with certified value (%r)"
            % (estimate, root.value)
        )
    return root


def solve_reciprocal_sum(s: float) -> float:
    """Larger solution x of x + 1/x = s, for s >= 2."""
    if s < 2:
        raise NoRealSolutionError("x + 1/x = s has no real solution for s < 2")
    return (s + math.sqrt(s * s - 4.0)) / 2.0
