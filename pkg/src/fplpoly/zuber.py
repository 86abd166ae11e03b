"""Exact polynomials in m: interpolation, hook-content products and the
assembled formulas for A_X(m) and A_{X,Y}(m)."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import codec, lgv, region_fpl


class DegreeBoundError(ValueError):
    pass


class GuardError(ValueError):
    pass


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalPolynomial:
    """Coefficients low degree first, exact rationals, no trailing zeros."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [_frac(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, a):
        return cls((a,))

    @classmethod
    def linear(cls, a, b=1):
        """b*m + a"""
        return cls((a, b))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, m):
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * m + a
        return acc

    def __add__(self, other):
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalPolynomial) else -_frac(other))

    def __mul__(self, other):
        if not isinstance(other, RationalPolynomial):
            return RationalPolynomial(tuple(x * _frac(other) for x in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return RationalPolynomial(tuple(out))

    __rmul__ = __mul__

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self):
        return [str(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("m" if k == 1 else f"m^{k}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"({abs(c)})" if c.denominator != 1 else str(abs(c))
                s = s + ("*" + mono if mono else "")
            terms.append(("-" if c < 0 else "+") + s)
        out = " ".join(t[0] + " " + t[1:] for t in terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


ZERO = RationalPolynomial(())
ONE = RationalPolynomial.const(1)


def interpolate(evaluate, degree_bound, t0=0):
    """Newton interpolation through t0..t0+D, checked at t0+D+1."""
    D = degree_bound
    ts = list(range(t0, t0 + D + 1))
    ys = [_frac(evaluate(t)) for t in ts]
    # divided differences
    coef = list(ys)
    for j in range(1, D + 1):
        for i in range(D, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - j])
    poly = RationalPolynomial.const(coef[D])
    for i in range(D - 1, -1, -1):
        poly = poly * RationalPolynomial.linear(-ts[i]) + coef[i]
    t = t0 + D + 1
    got, want = poly(t), _frac(evaluate(t))
    if got != want:
        raise DegreeBoundError(f"degree bound {D} violated: p({t}) = {got}, sample = {want}")
    return poly


def ssyt_poly(lam, shift=0):
    """m -> prod_u (c(u) + m + shift) / h(u), i.e. SSYT(lam, m + shift)."""
    lam = codec.normalize(lam)
    p = ONE
    for i, j in codec.cells(lam):
        p = p * RationalPolynomial.linear(j - i + shift)
    return p * Fraction(1, codec.hook_product(lam))


# ------------------------------------------------------------ one matching

MAX_D_MAIN = 5
MAX_D_CORNER = 4
MAX_D_SQUEEZE = 3


def a_poly_main(X):
    """A_X(m) = sum_E a_X(E) SSYT(lambda(E), m - 2d + 1)."""
    d = X.d
    if d > MAX_D_MAIN:
        raise GuardError(f"d={d} exceeds {MAX_D_MAIN}")
    if d == 0:
        return ONE
    lam = codec.lambda_of_matching(X)
    total = ZERO
    for E, a in region_fpl.a_table(X).items():
        mu = codec.boundary_shape(E, d)[0]
        if mu == lam and a != 1:
            raise AssertionError(f"a_X(E) = {a} at lambda(E) = lambda(X)")
        total = total + ssyt_poly(mu, 1 - 2 * d) * a
    return total


@lru_cache(maxsize=None)
def n_poly(E, F, d):
    """N(E,F,m,d) as a polynomial in m, sampled from m = 2d with D = d^2."""
    return interpolate(lambda t: lgv.count_N(E, F, t, d), d * d, t0=2 * d)


def a_poly_corner(X):
    """A_X(m) = sum_{E,F} c(E,F) N(E,F,m,d) over the corner placement."""
    d = X.d
    if d > MAX_D_CORNER:
        raise GuardError(f"d={d} exceeds {MAX_D_CORNER}")
    if d == 1:
        return ONE
    total = ZERO
    for (E, F), c in region_fpl.corner_table(X).items():
        total = total + n_poly(E, F, d) * c
    return total


# ------------------------------------------------------------ two matchings

def r_poly(lam, mu, d, e, k, off, deg, m0):
    """m -> count_r(lam, mu, d, e, m + off, k), sampled from m = m0 on."""
    return interpolate(lambda t: lgv.count_r(lam, mu, d, e, t + off, k), deg, t0=m0)


def a_poly_squeeze(X, Y):
    """A_{X,Y}(m) over the two-triangle placement; d >= e by swapping."""
    if X.d < Y.d:
        X, Y = Y, X
    d, e = X.d, Y.d
    if d > MAX_D_SQUEEZE:
        raise GuardError(f"d={d} exceeds {MAX_D_SQUEEZE}")
    if e == 0:
        return a_poly_main(X)
    tx = region_fpl.a_double_table(X)
    ty = region_fpl.a_double_table(Y)
    total = ZERO
    cache = {}
    m0 = 3 * d - e
    for (E1, E2), ax in tx.items():
        l1 = codec.boundary_shape(E1, d)[0]
        l2 = codec.boundary_shape(E2, d)[0]
        for (F1, F2), ay in ty.items():
            m1 = codec.boundary_shape(F1, e)[0]
            m2 = codec.boundary_shape(F2, e)[0]
            k1 = (l1, m2)
            if k1 not in cache:
                cache[k1] = r_poly(l1, m2, d - 1, e - 1, 2 * d - 2 * e + 1,
                                   -3 * d + e + 2, sum(l1), m0)
            k2 = ("b", m1, l2)
            if k2 not in cache:
                cache[k2] = r_poly(m1, l2, e - 1, d - 1, 1, -d - e + 2, sum(m1), m0)
            total = total + cache[k1] * cache[k2] * (ax * ay)
    return total


# ------------------------------------------------------------ reports

def scale_of(X, Y=None):
    s = factorial(sum(codec.lambda_of_matching(X)))
    if Y is not None:
        s *= factorial(sum(codec.lambda_of_matching(Y)))
    return s


def scaled_P(A, scale):
    P = A * scale
    return P, P.is_integral()


def expected_leading(X, Y=None):
    lam = codec.lambda_of_matching(X)
    v = codec.dim_of(lam)
    if Y is not None:
        v *= codec.dim_of(codec.lambda_of_matching(Y))
    return v


def structure_report(A, X, Y=None):
    lam = codec.lambda_of_matching(X)
    deg = sum(lam) + (sum(codec.lambda_of_matching(Y)) if Y is not None else 0)
    P, integral = scaled_P(A, scale_of(X, Y))
    lead = expected_leading(X, Y)
    return {
        "degree": A.degree, "expected_degree": deg,
        "P": P.to_json(), "integral": integral,
        "leading_P": str(P.leading), "expected_leading": lead,
        "ok": A.degree == deg and integral and P.leading == lead,
    }


def crosscheck(X, m, brute=None, workers=1):
    """A_X(m) from the polynomial against a brute-force count on Q_{d+m}."""
    from . import fpl_grid

    n = X.d + m
    if n > fpl_grid.MAX_N:
        raise GuardError(f"n={n} exceeds {fpl_grid.MAX_N}")
    val = a_poly_main(X)(m)
    if brute is None:
        brute = fpl_grid.count_abstract(n, codec.compose(X, m), workers=workers)
    return {"matching": str(X), "m": m, "n": n, "poly": int(val), "brute": int(brute),
            "ok": val == brute}
