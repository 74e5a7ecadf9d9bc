"""Scalar special-function kernels: complex gamma family, digamma, Pochhammer,
generalized binomial, Riemann zeta, and Bessel J.

Everything here is pure and reentrant.  One pole convention is used throughout:
an argument within 1e-12 of a non-positive integer counts as sitting on the
pole (PoleError from cgamma/digamma, an exact 0 from rgamma).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleError, RangeError

EULER_GAMMA = 0.5772156649015329
LOG2 = 0.6931471805599453
PI = math.pi

_POLE_TOL = 1e-12

# Lanczos rational approximation, g = 7, 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def nonpositive_int_near(z, tol: float = _POLE_TOL):
    """Return the non-positive integer within `tol` of z, or None."""
    zc = complex(z)
    k = round(zc.real)
    if k <= 0 and abs(zc - k) <= tol:
        return k
    return None


def _lanczos_series(zz: complex) -> complex:
    x = _LANCZOS_C[0]
    for i in range(1, 9):
        x += _LANCZOS_C[i] / (zz + i)
    return x


def cgamma(z) -> complex:
    """Gamma function for complex argument (Lanczos g=7; reflection for Re z < 0.5)."""
    zc = complex(z)
    if nonpositive_int_near(zc) is not None:
        raise PoleError(f"gamma pole at z={z}")
    if zc.real < 0.5:
        return PI / (cmath.sin(PI * zc) * cgamma(1.0 - zc))
    zz = zc - 1.0
    t = zz + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * PI) * t ** (zz + 0.5) * cmath.exp(-t) * _lanczos_series(zz)


def log_cgamma(z) -> complex:
    """log(Gamma(z)), accurate modulo 2*pi*i.

    Safe to sum/difference and re-exponentiate (the 2*pi*i ambiguity drops out
    under exp), which is how all large gamma-ratio prefactors are assembled.
    """
    zc = complex(z)
    if nonpositive_int_near(zc) is not None:
        raise PoleError(f"gamma pole at z={z}")
    if zc.imag == 0.0 and zc.real > 0.0:
        return complex(math.lgamma(zc.real), 0.0)
    if zc.real < 0.5:
        return cmath.log(PI) - cmath.log(cmath.sin(PI * zc)) - log_cgamma(1.0 - zc)
    zz = zc - 1.0
    t = zz + _LANCZOS_G + 0.5
    return (0.5 * math.log(2.0 * PI) + (zz + 0.5) * cmath.log(t) - t
            + cmath.log(_lanczos_series(zz)))


def rgamma(z) -> complex:
    """1/Gamma(z) as an entire function: exactly 0 at non-positive integers."""
    zc = complex(z)
    if nonpositive_int_near(zc) is not None:
        return 0.0 + 0.0j
    return 1.0 / cgamma(zc)


# B_{2j}/(2j(2j-1)) for j = 1..10: Stirling-series coefficients for log Gamma.
_STIRLING_X = tuple(
    np.longdouble(num) / np.longdouble(den)
    for num, den in ((1, 12), (-1, 360), (1, 1260), (-1, 1680), (1, 1188),
                     (-691, 360360), (1, 156), (-3617, 122400),
                     (43867, 244188), (-174611, 125400)))
_HALF_LOG_TWO_PI_X = np.log(np.longdouble(2.0) * np.longdouble(np.pi)) / np.longdouble(2.0)


def log_cgamma_extended(z) -> np.clongdouble:
    """log Gamma(z) in extended (x86 80-bit) precision: upward shift to
    Re >= 18, then the Stirling series through B_20.

    Intended for gamma-quotient prefactors whose downstream cancellation
    exceeds what double precision can absorb.  The imaginary part may differ
    from the principal branch by multiples of 2*pi (harmless under exp of
    sums).  On platforms where long double is plain double this degrades to
    ordinary double accuracy.
    """
    zc = complex(z)
    if nonpositive_int_near(zc) is not None:
        raise PoleError(f"gamma pole at z={z}")
    w = np.clongdouble(zc)
    shift = max(0, math.ceil(18.0 - zc.real))
    prod = np.clongdouble(1.0)
    for j in range(shift):
        prod = prod * (w + np.longdouble(j))
    w = w + np.longdouble(shift)
    res = (w - np.longdouble(0.5)) * np.log(w) - w + _HALF_LOG_TWO_PI_X
    iw = np.clongdouble(1.0) / w
    iw2 = iw * iw
    t = iw
    for coef in _STIRLING_X:
        res = res + coef * t
        t = t * iw2
    if shift:
        res = res - np.log(prod)
    return res


# B_{2j}/(2j) for j = 1..7; asymptotic psi series through B_14.
_DIGAMMA_COEF = (
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
)


def digamma(z) -> complex:
    """psi(z) by upward recurrence to Re z > 8, then Bernoulli asymptotics."""
    zc = complex(z)
    if nonpositive_int_near(zc) is not None:
        raise PoleError(f"digamma pole at z={z}")
    acc = 0.0 + 0.0j
    while zc.real <= 8.0:
        acc -= 1.0 / zc
        zc += 1.0
    w = 1.0 / (zc * zc)
    s = 0.0 + 0.0j
    for coef in reversed(_DIGAMMA_COEF):
        s = (s + coef) * w
    return acc + cmath.log(zc) - 0.5 / zc - s


# B_{2j}/(2j) for j = 1..10; extended-precision psi series through B_20.
_DIGAMMA_COEF_X = tuple(
    np.longdouble(num) / np.longdouble(den)
    for num, den in ((1, 12), (-1, 120), (1, 252), (-1, 240), (1, 132),
                     (-691, 32760), (1, 12), (-3617, 8160),
                     (43867, 14364), (-174611, 6600)))


def digamma_extended(z) -> np.clongdouble:
    """psi(z) in extended (x86 80-bit) precision: recurrence to Re >= 24, then
    Bernoulli asymptotics through B_20.  Same pole convention as digamma."""
    zc = complex(z)
    if nonpositive_int_near(zc) is not None:
        raise PoleError(f"digamma pole at z={z}")
    w = np.clongdouble(zc)
    acc = np.clongdouble(0.0)
    for _ in range(max(0, math.ceil(24.0 - zc.real))):
        acc = acc - 1.0 / w
        w = w + np.longdouble(1.0)
    iw2 = np.clongdouble(1.0) / (w * w)
    s = np.clongdouble(0.0)
    for coef in reversed(_DIGAMMA_COEF_X):
        s = (s + coef) * iw2
    return acc + np.log(w) - np.clongdouble(0.5) / w - s


def pochhammer(a, k: int):
    """Rising factorial (a)_k = a(a+1)...(a+k-1) by direct product; (a)_0 = 1.

    The direct product keeps exact zeros when a is a non-positive integer and
    avoids the gamma-ratio cancellation near poles.
    """
    if k != int(k) or k < 0:
        raise RangeError(f"pochhammer order must be a non-negative integer, got {k}")
    result = a * 0 + 1.0
    for j in range(int(k)):
        result = result * (a + j)
    return result


def gen_binomial(x, k: int):
    """Generalized binomial coefficient x(x-1)...(x-k+1)/k!."""
    if k != int(k) or k < 0:
        raise RangeError(f"binomial order must be a non-negative integer, got {k}")
    result = x * 0 + 1.0
    for j in range(int(k)):
        result = result * (x - j) / (j + 1.0)
    return result


# Bernoulli numbers B_2 .. B_32 as exact rationals.
_BERNOULLI_2K = (
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730), Fraction(8553103, 6), Fraction(-23749461029, 870),
    Fraction(8615841276005, 14322), Fraction(-7709321041217, 510),
)

# zeta(-(2k-1)) = -B_{2k}/(2k): exact table for odd arguments -1 down to -31.
_ZETA_NEG_ODD = {
    -(2 * k - 1): float(-b / (2 * k)) for k, b in enumerate(_BERNOULLI_2K, start=1)
}


def _borwein_ratios(n: int = 32) -> tuple:
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), exact rationals;
    # only the ratios (d_k - d_n)/d_n are needed at run time.
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4 ** i,
                        math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * acc)
    dn = d[n]
    return tuple(float((dk - dn) / dn) for dk in d[:n])


_BORWEIN_R = _borwein_ratios()


def zeta(s: float) -> float:
    """Riemann zeta for real s > 1 (accelerated alternating series), plus the
    exact Bernoulli values at negative odd integers down to -31."""
    s = float(s)
    if abs(s - 1.0) <= _POLE_TOL:
        raise PoleError("zeta pole at s=1")
    if s > 1.0:
        tot = 0.0
        sign = 1.0
        for k, r in enumerate(_BORWEIN_R):
            tot += sign * r * (k + 1.0) ** (-s)
            sign = -sign
        return -tot / (1.0 - 2.0 ** (1.0 - s))
    k = round(s)
    if abs(s - k) <= 1e-9 and k < 0 and k % 2 != 0:
        if k >= -31:
            return _ZETA_NEG_ODD[k]
        raise RangeError(f"zeta at {k} is below the Bernoulli table (stops at -31)")
    raise RangeError(f"zeta supports s > 1 and negative odd integers >= -31, got {s}")


def zeta_neg_odd_signed_log(q: int) -> tuple:
    """(sign, log|zeta(-q)|) for odd q >= 1.

    Inside the Bernoulli table this is just the table value; beyond it the
    magnitude overflows a double, so the (sign, log-magnitude) pair is produced
    from the functional equation
        zeta(-q) = 2 (2 pi)^(-q-1) cos(pi (q+1)/2) Gamma(q+1) zeta(q+1).
    """
    q = int(q)
    if q < 1 or q % 2 != 1:
        raise RangeError(f"odd positive integer required, got {q}")
    if q <= 31:
        v = _ZETA_NEG_ODD[-q]
        return (math.copysign(1.0, v), math.log(abs(v)))
    sign = -1.0 if ((q + 1) // 2) % 2 else 1.0
    logmag = (LOG2 - (q + 1) * math.log(2.0 * PI) + math.lgamma(q + 1.0)
              + math.log(zeta(q + 1.0)))
    return (sign, logmag)


def _bessel_ascending(nu: float, x: np.ndarray) -> np.ndarray:
    # J_nu(x) = sum_k (-1)^k (x/2)^(nu+2k) / (k! Gamma(nu+k+1)); x <= 12 here,
    # so <= ~40 terms reach relative-term < 1e-16.
    half = 0.5 * x
    pos = x > 0.0
    safe = np.where(pos, half, 1.0)
    term = np.where(pos, np.exp(nu * np.log(safe) - math.lgamma(nu + 1.0)),
                    1.0 if nu == 0.0 else 0.0)
    total = term.copy()
    q = -half * half
    for k in range(1, 200):
        term = term * q / (k * (nu + k))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total) + 1e-300):
            break
    return total


def _bessel_hankel(nu: float, x: np.ndarray) -> np.ndarray:
    # First 8 terms of each of the P and Q asymptotic cosine/sine amplitudes.
    mu4 = 4.0 * nu * nu
    a = [1.0]
    for k in range(1, 16):
        a.append(a[-1] * (mu4 - (2 * k - 1) ** 2) / (8.0 * k))
    inv = 1.0 / x
    inv2 = inv * inv
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    for j in range(7, -1, -1):
        sgn = -1.0 if j % 2 else 1.0
        p = p * inv2 + sgn * a[2 * j]
        q = q * inv2 + sgn * a[2 * j + 1]
    q = q * inv
    omega = x - (0.5 * nu + 0.25) * PI
    return np.sqrt(2.0 / (PI * x)) * (p * np.cos(omega) - q * np.sin(omega))


def bessel_j(order: float, x):
    """Bessel J of the first kind, real order in [0, 50], real x >= 0.

    Accepts a scalar or an ndarray for x (vectorized; the direct Bessel-series
    summations feed 10^4-point blocks through here).  Ascending series for
    x <= 12, Hankel asymptotics beyond.
    """
    nu = float(order)
    if not (0.0 <= nu <= 50.0):
        raise DomainError(f"bessel_j supports 0 <= order <= 50, got {order}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0):
        raise DomainError("bessel_j requires x >= 0")
    if np.any(xs > 1e6):
        raise DomainError("bessel_j supports x <= 1e6")
    scalar = xs.ndim == 0
    xv = np.atleast_1d(xs).astype(float)
    out = np.empty_like(xv)
    small = xv <= 12.0
    if small.any():
        out[small] = _bessel_ascending(nu, xv[small])
    big = ~small
    if big.any():
        out[big] = _bessel_hankel(nu, xv[big])
    return float(out[0]) if scalar else out
