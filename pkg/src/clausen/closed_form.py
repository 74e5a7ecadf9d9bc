"""Closed forms for the unit-argument 3F2 with two unit upper parameters.

The centerpiece `theorem1` evaluates 3F2(1,1,c; d,n+2; 1) as a digamma term
plus a finite k-sum, valid for Re(d-c+n) > 0.  Around it sit the pieces the
derivation runs through: the harmonic coefficients D_k(n), the two-finite-sum
evaluation of 3F2(a,c,m; d,m+p; 1) for integer m,p >= 1 (`miller_paris`, whose
a -> 1 limit is exactly what theorem1 resolves), a standalone finite-sum /
gamma-ratio evaluation identity, and the printed n=0 / n=1 reductions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DomainError, ParameterPoleError, PoleError, RangeError,
                     RemovableSingularityError)
from .hypergeom import EvalResult
from .special_fns import (digamma, gen_binomial, log_cgamma_extended,
                          nonpositive_int_near, pochhammer)

_INT_TOL = 1e-12


@dataclass(frozen=True)
class Theorem1Params:
    c: complex
    d: complex
    n: int

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "d", complex(self.d))
        if self.n != int(self.n) or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        margin = (self.d - self.c).real + self.n
        if margin <= 0.0:
            raise DomainError(f"Re(d-c+n) = {margin:.6g} <= 0")

    @property
    def is_contraction(self) -> bool:
        """c == d collapses the series to a Gauss 2F1 (documented reduction)."""
        return abs(self.c - self.d) <= _INT_TOL


@dataclass(frozen=True)
class LimitPolicy:
    mode: str = "error"             # "error" | "epsilon_limit"
    epsilon: float = 1e-5

    def __post_init__(self):
        if self.mode not in ("error", "epsilon_limit"):
            raise DomainError("LimitPolicy.mode must be 'error' or 'epsilon_limit'")
        if self.mode == "epsilon_limit" and not (1e-8 <= self.epsilon <= 1e-3):
            raise DomainError("LimitPolicy.epsilon must lie in [1e-8, 1e-3]")


def d_coeff(n: int, k: int) -> float:
    """k! * [psi(n+1) - psi(n+1-k)], computed as the exact harmonic form
    k! * sum_{j=n+1-k}^{n} 1/j (no digamma calls)."""
    if not (1 <= k <= n):
        raise RangeError(f"d_coeff needs 1 <= k <= n, got k={k}, n={n}")
    h = 0.0
    for j in range(n + 1 - k, n + 1):
        h += 1.0 / j
    return float(math.factorial(k)) * h


def _near_integer_in(z: complex, lo: int, hi: int, tol: float = _INT_TOL):
    """The integer in [lo, hi] within tol of z, or None."""
    k = round(z.real)
    if lo <= k <= hi and abs(z - k) <= tol:
        return k
    return None


def _theorem1_regular(c: complex, d: complex, n: int):
    """Closed-form value away from the removable c/d singularities.

    Gamma(d) is folded into the brace exactly: Gamma(d)/Gamma(d-1) = d-1 and
    Gamma(d)/Gamma(d-n-1+k) = (d-n-1+k)_{n+1-k}, finite products that keep the
    zero at pole positions of Gamma(d-n-1+k) exact and never overflow on the
    sampled grids.  Returns (value, magnitude-scale for the rounding estimate).
    """
    front = (n + 1) / pochhammer(1.0 - c, n + 1)
    lead = pochhammer(d - c, n) * (d - 1.0) * (digamma(d - c + n) - digamma(d - 1.0))
    ksum = 0.0 + 0.0j
    scale = abs(lead)
    for k in range(1, n + 1):
        term = (math.comb(n, k) * gen_binomial(n + 1.0 - c, k) * d_coeff(n, k)
                * pochhammer(d - n - 1.0 + k, n + 1 - k))
        ksum += term
        scale += abs(term)
    return front * (lead - ksum), abs(front) * scale


def theorem1(params: Theorem1Params, policy: LimitPolicy | None = None) -> EvalResult:
    """3F2(1,1,c; d,n+2; 1) in closed form, Re(d-c+n) > 0.

    c at an integer in [1, n+1] (where (1-c)_{n+1} = 0) and d = 1 (where
    psi(d-1) blows up) are removable; the epsilon_limit policy resolves them by
    two-point averaging around the singular axis, err_est = the point spread.
    """
    policy = policy or LimitPolicy()
    c, d, n = params.c, params.d, params.n
    if nonpositive_int_near(d) is not None:
        raise ParameterPoleError("d at a non-positive integer is a genuine pole")
    c_sing = _near_integer_in(c, 1, n + 1)
    d_sing = _near_integer_in(d, 1, 1)
    if c_sing is None and d_sing is None:
        v, scale = _theorem1_regular(c, d, n)
        return EvalResult(value=v, err_est=5e-16 * scale, terms_used=n + 1, converged=True)
    if policy.mode == "error":
        what = (f"(1-c)_{{n+1}} = 0 at c={c_sing}" if c_sing is not None
                else "psi(d-1) singular at d=1")
        raise RemovableSingularityError(
            f"removable singularity: {what}; re-run with an epsilon_limit policy")
    eps = policy.epsilon
    c_pts = [c] if c_sing is None else [c_sing - eps, c_sing + eps]
    d_pts = [d] if d_sing is None else [1.0 - eps, 1.0 + eps]
    vals = [_theorem1_regular(cp, dp, n)[0] for cp in c_pts for dp in d_pts]
    v = sum(vals) / len(vals)
    spread = max(abs(v1 - v2) for v1 in vals for v2 in vals)
    return EvalResult(value=v, err_est=float(spread),
                      terms_used=(n + 1) * len(vals), converged=True)


def _special_case_regular(c: complex, d: complex, n: int) -> complex:
    psi = digamma
    if n == 0:
        return (d - 1.0) / (1.0 - c) * (psi(d - c) - psi(d - 1.0))
    return (2.0 * (d - 1.0) * (d - c) / ((1.0 - c) * (2.0 - c))
            * (psi(d - c + 1.0) - psi(d - 1.0)) + 2.0 * (d - 1.0) / (c - 1.0))


def special_case(params: Theorem1Params, policy: LimitPolicy | None = None) -> complex:
    """The printed n=0 / n=1 reductions of theorem1 (psi-recurrence form)."""
    policy = policy or LimitPolicy()
    c, d, n = params.c, params.d, params.n
    if n not in (0, 1):
        raise RangeError(f"special_case covers n in {{0, 1}}, got n={n}")
    if nonpositive_int_near(d) is not None:
        raise ParameterPoleError("d at a non-positive integer is a genuine pole")
    c_sing = _near_integer_in(c, 1, n + 1)
    d_sing = _near_integer_in(d, 1, 1)
    if c_sing is None and d_sing is None:
        return _special_case_regular(c, d, n)
    if policy.mode == "error":
        raise RemovableSingularityError(
            "removable singularity in the n<=1 reduction; re-run with an "
            "epsilon_limit policy")
    eps = policy.epsilon
    c_pts = [c] if c_sing is None else [c_sing - eps, c_sing + eps]
    d_pts = [d] if d_sing is None else [1.0 - eps, 1.0 + eps]
    vals = [_special_case_regular(cp, dp, n) for cp in c_pts for dp in d_pts]
    return sum(vals) / len(vals)


def _pos_int_near(z: complex, hi: int, tol: float = _INT_TOL):
    k = round(z.real)
    if 1 <= k <= hi and abs(z - k) <= tol:
        return k
    return None


def _poch_x(z, k: int):
    """Rising factorial in extended precision (z may be np.clongdouble)."""
    acc = np.clongdouble(1.0)
    zc = np.clongdouble(z)
    for j in range(k):
        acc = acc * (zc + np.longdouble(j))
    return acc


def miller_paris(a, c, d, m: int, p: int) -> complex:
    """Two-finite-sum closed form for 3F2(a,c,m; d,m+p; 1), integer m,p >= 1.

    Not defined at a = 1 (denominators (1-a)_k vanish); that limit is exactly
    what theorem1 provides.

    The two sums cancel each other to many orders of magnitude over a large
    part of parameter space (each can exceed the result by ~10^6), so all
    internal products, the gamma-quotient prefactor, and the final addition
    are carried in extended precision.
    """
    a, c, d = complex(a), complex(c), complex(d)
    if m != int(m) or m < 1 or p != int(p) or p < 1:
        raise RangeError("m and p must be integers >= 1")
    m, p = int(m), int(p)
    if abs(a - 1.0) <= _INT_TOL:
        raise PoleError("a = 1 is the confluent limit; evaluate via theorem1")
    conv = (d + p - a - c - m).real
    if conv <= -1.0:
        raise DomainError(f"Re(d+p-a-c-m) = {conv:.6g} <= -1")
    for name, z in (("a", a), ("c", c)):
        if _pos_int_near(z, m + p - 1) is not None:
            raise PoleError(f"denominator Pochhammer (1-{name})_k vanishes")
    if nonpositive_int_near(d) is not None or nonpositive_int_near(d - a - c) is not None:
        raise PoleError("gamma prefactor at a pole (d or d-a-c non-positive integer)")

    one = np.clongdouble(1.0)
    ax, cx, dx = np.clongdouble(a), np.clongdouble(c), np.clongdouble(d)
    s1 = np.clongdouble(0.0)
    for k in range(p):
        s1 = s1 + (np.clongdouble((-1.0) ** k * math.comb(p - 1, k))
                   * _poch_x(float(m), k) * _poch_x(one - dx, k + m)
                   / (_poch_x(one - ax, k + m) * _poch_x(one - cx, k + m)))
    s1 = s1 * _poch_x(float(p), m)

    if nonpositive_int_near(d - a) is not None or nonpositive_int_near(d - c) is not None:
        g = np.clongdouble(0.0)
    else:
        g = np.exp(log_cgamma_extended(d) + log_cgamma_extended(d - a - c)
                   - log_cgamma_extended(d - a) - log_cgamma_extended(d - c))
    s2 = np.clongdouble(0.0)
    for k in range(m):
        s2 = s2 + (np.clongdouble((-1.0) ** k * math.comb(m - 1, k))
                   * _poch_x(float(p), k) * _poch_x(dx - ax - cx, k + p)
                   / (_poch_x(one - ax, k + p) * _poch_x(one - cx, k + p)))
    s2 = s2 * _poch_x(float(m), p) * g
    return complex(s1 + s2)


def eval_identity_lhs(c, d, p: int) -> complex:
    """sum_{k=0}^{p-1} (-1)^k C(p-1,k) (1-d)_{k+1} / (1-c)_{k+1}."""
    c, d = complex(c), complex(d)
    if p != int(p) or p < 1:
        raise RangeError("p must be an integer >= 1")
    p = int(p)
    if _pos_int_near(c, p) is not None:
        raise PoleError("(1-c)_{k+1} vanishes for some k <= p-1")
    tot = 0.0 + 0.0j
    for k in range(p):
        tot += ((-1.0) ** k * math.comb(p - 1, k)
                * pochhammer(1.0 - d, k + 1) / pochhammer(1.0 - c, k + 1))
    return tot


def eval_identity_rhs(c, d, p: int) -> complex:
    """-Gamma(d) Gamma(d-c+p-1) / (Gamma(d-1) Gamma(d-c) (1-c)_p).

    Both gamma quotients are finite products — Gamma(d)/Gamma(d-1) = d-1 and
    Gamma(d-c+p-1)/Gamma(d-c) = (d-c)_{p-1} — so they are evaluated that way,
    which is exact, costs no cancellation, and extends the quotient to its
    removable points: a vanishing (d-c)_{p-1} gives an exact 0 (matching the
    finite sum on the other side), and integer d is perfectly regular.  The
    only genuine poles left are c in {1..p}.
    """
    c, d = complex(c), complex(d)
    if p != int(p) or p < 1:
        raise RangeError("p must be an integer >= 1")
    p = int(p)
    if _pos_int_near(c, p) is not None:
        raise PoleError("(1-c)_p vanishes")
    return -(d - 1.0) * pochhammer(d - c, p - 1) / pochhammer(1.0 - c, p)
