"""Schlömilch-type Bessel-product sums and their power-series expansions.

S(a,b) = Lambda * sum_{m>=1} J_mu(a m) J_nu(b m) / m^alpha with
Lambda = 2^(mu+nu) / (a^mu b^nu) and alpha = mu + nu + 2n + 1 (so the zeta
arguments theta - 2m stay odd).  `s_direct` brute-forces the sum; the two
expansion routines evaluate it as a power series in (a/2)^2 whose m = n term
carries the logarithm.  Cross-checking the two routes end-to-end exercises the
whole closed-form chain, including the unit-argument 3F2 evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import Theorem1Params, d_coeff, theorem1
from .errors import DomainError, OperationCancelled, RangeError
from .hypergeom import EvalResult, SeriesConfig, sum_3f2
from .special_fns import (EULER_GAMMA, PI, bessel_j, digamma, gen_binomial,
                          pochhammer, zeta, zeta_neg_odd_signed_log)

_M_CAP = 200            # hard cap on expansion terms (a near pi decays slowly)
_CHI_ONE_TOL = 1e-12


def _psi(x: float) -> float:
    return digamma(x).real


@dataclass(frozen=True)
class BesselSumParams:
    mu: float
    nu: float
    a: float
    b: float
    n: int
    alpha: float = field(init=False)

    def __post_init__(self):
        if self.mu < 0.0 or self.nu < 0.0:
            raise DomainError("orders mu, nu must be >= 0")
        if self.a <= 0.0 or self.b <= 0.0:
            raise DomainError("arguments a, b must be > 0")
        if self.n != int(self.n) or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "alpha", self.mu + self.nu + 2 * self.n + 1.0)

    @property
    def theta(self) -> float:
        """alpha - mu - nu, equal to 2n+1 by construction."""
        return 2 * self.n + 1.0

    @property
    def chi(self) -> float:
        return (self.b / self.a) ** 2

    @property
    def lam(self) -> float:
        """The normalization 2^(mu+nu) / (a^mu b^nu)."""
        return 2.0 ** (self.mu + self.nu) / (self.a ** self.mu * self.b ** self.nu)

    @classmethod
    def from_alpha(cls, mu: float, nu: float, a: float, b: float, alpha: float):
        """Build from alpha, refusing any alpha that breaks the odd-zeta parity
        alpha = mu + nu + 2n + 1."""
        n2 = (alpha - mu - nu - 1.0) / 2.0
        n = round(n2)
        if abs(n2 - n) > 1e-9 or n < 0:
            raise DomainError(
                f"alpha = {alpha} violates alpha = mu+nu+2n+1 for integer n >= 0")
        return cls(mu=mu, nu=nu, a=a, b=b, n=int(n))


@dataclass(frozen=True)
class ExpansionResult:
    value: float
    terms_used: int
    truncation_est: float


def s_direct(params: BesselSumParams, M: int, cancel=None) -> ExpansionResult:
    """Brute-force S(a,b) to M terms, in 10^4-term numpy blocks.

    The Bessel product oscillates, so the returned value averages the partial
    sums at M and M/2 (one dyadic step), which damps the leading oscillatory
    error; truncation_est is the size of that last dyadic block.  `cancel` is
    polled between blocks and aborts via OperationCancelled when it returns
    true.
    """
    if M < 1000:
        raise DomainError(f"M >= 1000 required, got {M}")
    p = params
    half = M // 2

    def _accumulate(lo: int, hi: int) -> float:
        acc = 0.0
        while lo <= hi:
            hi2 = min(lo + 9999, hi)
            if cancel is not None and cancel():
                raise OperationCancelled("s_direct cancelled")
            m = np.arange(lo, hi2 + 1, dtype=float)
            acc += float(np.sum(bessel_j(p.mu, p.a * m) * bessel_j(p.nu, p.b * m)
                                / m ** p.alpha))
            lo = hi2 + 1
        return acc

    s_half = _accumulate(1, half)
    s_full = s_half + _accumulate(half + 1, M)
    value = p.lam * 0.5 * (s_full + s_half)
    return ExpansionResult(value=value, terms_used=M,
                           truncation_est=p.lam * abs(s_full - s_half))


def a_coeff(params: BesselSumParams, m: int) -> float:
    """Power coefficient of (a/2)^(2m) in the equal-argument expansion, m != n."""
    p = params
    if m == p.n:
        raise RangeError("m = n is the logarithmic term, not a power coefficient")
    z = zeta(p.theta - 2 * m)
    lg = (math.lgamma(1.0 + p.mu + p.nu + 2 * m) - math.lgamma(m + 1.0)
          - math.lgamma(1.0 + p.mu + m) - math.lgamma(1.0 + p.nu + m)
          - math.lgamma(1.0 + p.mu + p.nu + m))
    return (-1.0) ** m * z * math.exp(lg)


def f_m(params: BesselSumParams, m: int, chi: float) -> float:
    """Terminating Gauss factor 2F1(-m, -m-mu; 1+nu; chi); all terms positive."""
    t = 1.0
    tot = 1.0
    for k in range(int(m)):
        t *= (m - k) * (m + params.mu - k) * chi / ((1.0 + params.nu + k) * (k + 1.0))
        tot += t
    return tot


def b_coeff(params: BesselSumParams, m: int, chi: float | None = None) -> float:
    """Power coefficient (before the overall 1/Gamma(1+nu)) in the two-argument
    expansion, m != n."""
    p = params
    if m == p.n:
        raise RangeError("m = n is the logarithmic term, not a power coefficient")
    chi = p.chi if chi is None else chi
    z = zeta(p.theta - 2 * m)
    return ((-1.0) ** m * z / (math.factorial(int(m)) * math.gamma(1.0 + p.mu + m))
            * f_m(p, m, chi))


def upsilon(params: BesselSumParams) -> float:
    """Coefficient of the logarithmic (m = n) term, equal-argument case."""
    p = params
    return (EULER_GAMMA - math.log(0.5 * p.a) - _psi(p.alpha)
            + 0.5 * (_psi(p.n + 1.0) + _psi(p.n + 1.0 + p.mu)
                     + _psi(p.n + 1.0 + p.nu) + _psi(p.n + 1.0 + p.mu + p.nu)))


def upsilon_hat(params: BesselSumParams) -> float:
    """Coefficient of the logarithmic (m = n) term, two-argument case."""
    p = params
    return (EULER_GAMMA - math.log(0.5 * p.a)
            + 0.5 * (_psi(p.n + 1.0 + p.mu) + _psi(p.n + 1.0)))


def cal_d_coeff(n: int, k: int, mu: float) -> float:
    """D_k(n) plus the mu-shifted psi difference k!*[psi(n+1+mu)-psi(n+1+mu-k)],
    both in exact harmonic form."""
    if not (1 <= k <= n):
        raise RangeError(f"cal_d_coeff needs 1 <= k <= n, got k={k}, n={n}")
    extra = 0.0
    for j in range(1, k + 1):
        extra += 1.0 / (n + mu + 1.0 - j)
    return d_coeff(n, k) + math.factorial(k) * extra


def _delta_ksum(params: BesselSumParams, chi: float) -> float:
    p = params
    tot = 0.0
    for k in range(1, p.n + 1):
        tot += (math.comb(p.n, k) * gen_binomial(p.n + p.mu, k)
                * cal_d_coeff(p.n, k, p.mu) * chi ** k / pochhammer(1.0 + p.nu, k))
    return tot


def delta_n(params: BesselSumParams, chi: float,
            cfg: SeriesConfig | None = None, via: str = "series") -> EvalResult:
    """The Delta_n(chi) combination: finite k-sum plus a weighted
    3F2(1,1,1-mu; n+nu+2, n+2; chi).

    via="series" sums the 3F2 directly; via="theorem1" (chi = 1 only) routes it
    through the closed form with c = 1-mu, d = n+nu+2, enabling a three-way
    consistency check against `delta_n_at_1_closed`.
    """
    p = params
    if not (0.0 < chi <= 1.0 + _CHI_ONE_TOL):
        raise DomainError(f"chi must lie in (0, 1], got {chi}")
    chi = min(chi, 1.0)
    ksum = _delta_ksum(p, chi)
    pref = (pochhammer(p.mu, p.n + 1) * chi ** (p.n + 1)
            / (pochhammer(1.0 + p.nu, p.n + 1) * (p.n + 1)))
    if pref == 0.0:
        # mu = 0 kills the 3F2 contribution entirely
        return EvalResult(value=complex(ksum), err_est=5e-16 * abs(ksum),
                          terms_used=p.n, converged=True)
    if via == "series":
        r = sum_3f2(1.0, 1.0, 1.0 - p.mu, p.n + p.nu + 2.0, p.n + 2.0, chi, cfg)
        f3, err, terms, conv = r.value, r.err_est, r.terms_used, r.converged
    elif via == "theorem1":
        if abs(chi - 1.0) > _CHI_ONE_TOL:
            raise DomainError("via='theorem1' applies at chi = 1 only")
        r = theorem1(Theorem1Params(c=1.0 - p.mu, d=p.n + p.nu + 2.0, n=p.n))
        f3, err, terms, conv = r.value, r.err_est, r.terms_used, r.converged
    else:
        raise DomainError("via must be 'series' or 'theorem1'")
    value = ksum + pref * f3
    return EvalResult(value=value, err_est=abs(pref) * err + 5e-16 * abs(value),
                      terms_used=terms + p.n, converged=conv)


def delta_n_at_1_closed(params: BesselSumParams) -> float:
    """Closed form of Delta_n at chi = 1 (gamma ratio times a psi bracket)."""
    p = params
    lg = (math.lgamma(p.alpha) + math.lgamma(1.0 + p.nu)
          - math.lgamma(1.0 + p.nu + p.n) - math.lgamma(1.0 + p.mu + p.nu + p.n))
    brace = (2.0 * _psi(p.alpha) - _psi(1.0 + p.nu + p.n)
             - _psi(1.0 + p.mu + p.nu + p.n))
    return math.exp(lg) * brace


def _zeta_signed_log(s: float) -> tuple:
    """(sign, log|zeta(s)|) for the odd arguments the expansions generate."""
    if s > 1.0:
        return (1.0, math.log(zeta(s)))
    return zeta_neg_odd_signed_log(int(round(-s)))


def expansion_equal(params: BesselSumParams, cfg: SeriesConfig | None = None) -> ExpansionResult:
    """Power-series evaluation of S(a,a) for 0 < a <= pi.

    Terms are assembled from signed log-magnitudes so the deep zeta growth
    (|zeta(-q)| overflows a double past q ~ 300) cancels against the gamma
    denominators without intermediate overflow.  Truncation: three consecutive
    sub-tolerance terms, capped at m = 200 with an honest geometric tail bound.
    """
    p = params
    cfg = cfg or SeriesConfig()
    if abs(p.a - p.b) > 1e-12:
        raise DomainError("equal-argument expansion needs a = b")
    if not (0.0 < p.a <= PI + 1e-12):
        raise DomainError(f"equal-argument expansion needs 0 < a <= pi, got a={p.a}")
    la = math.log(0.5 * p.a)

    special = ((-1.0) ** p.n * upsilon(p)
               * math.exp(2 * p.n * la + math.lgamma(p.alpha)
                          - math.lgamma(p.n + 1.0 + p.mu) - math.lgamma(p.n + 1.0 + p.nu)
                          - math.lgamma(p.n + 1.0 + p.mu + p.nu) - math.lgamma(p.n + 1.0)))
    total = special
    used = 1
    small_streak = 0
    last_mag = 0.0
    for m in range(_M_CAP + 1):
        if m == p.n:
            continue
        sz, lz = _zeta_signed_log(p.theta - 2 * m)
        logmag = (lz + math.lgamma(1.0 + p.mu + p.nu + 2 * m) - math.lgamma(m + 1.0)
                  - math.lgamma(1.0 + p.mu + m) - math.lgamma(1.0 + p.nu + m)
                  - math.lgamma(1.0 + p.mu + p.nu + m) + 2 * m * la)
        term = sz * (-1.0) ** m * math.exp(logmag)
        total += term
        used += 1
        last_mag = abs(term)
        if last_mag < cfg.rel_tol * abs(total):
            small_streak += 1
            if small_streak >= 3:
                break
        else:
            small_streak = 0
    rho = min((p.a / PI) ** 2, 0.999)
    return ExpansionResult(value=total, terms_used=used,
                           truncation_est=last_mag * rho / (1.0 - rho))


def expansion_unequal(params: BesselSumParams, cfg: SeriesConfig | None = None) -> ExpansionResult:
    """Power-series evaluation of S(a,b) for a >= b, 0 < a+b <= 2 pi.

    The b = a boundary (chi = 1) is accepted and routes Delta_n through its
    chi = 1 closed form, which is what makes the equal/unequal consistency
    check exact rather than a limit.
    """
    p = params
    cfg = cfg or SeriesConfig()
    if p.a < p.b:
        raise DomainError("two-argument expansion needs a >= b")
    if not (0.0 < p.a + p.b <= 2.0 * PI + 1e-12):
        raise DomainError(f"two-argument expansion needs 0 < a+b <= 2 pi, got a+b={p.a + p.b}")
    chi = min(p.chi, 1.0)
    la = math.log(0.5 * p.a)
    lg_nu = math.lgamma(1.0 + p.nu)

    if abs(chi - 1.0) <= _CHI_ONE_TOL:
        delta = delta_n_at_1_closed(p)
    else:
        delta = delta_n(p, chi, cfg, via="series").value.real
    fn = f_m(p, p.n, chi)
    special = ((-1.0) ** p.n * (upsilon_hat(p) * fn - 0.5 * delta)
               * math.exp(2 * p.n * la - lg_nu - math.lgamma(p.n + 1.0 + p.mu)
                          - math.lgamma(p.n + 1.0)))
    total = special
    used = 1
    small_streak = 0
    last_mag = 0.0
    for m in range(_M_CAP + 1):
        if m == p.n:
            continue
        sz, lz = _zeta_signed_log(p.theta - 2 * m)
        logmag = (lz - math.lgamma(m + 1.0) - math.lgamma(1.0 + p.mu + m)
                  + 2 * m * la - lg_nu + math.log(f_m(p, m, chi)))
        term = sz * (-1.0) ** m * math.exp(logmag)
        total += term
        used += 1
        last_mag = abs(term)
        if last_mag < cfg.rel_tol * abs(total):
            small_streak += 1
            if small_streak >= 3:
                break
        else:
            small_streak = 0
    rho = min(((p.a + p.b) / (2.0 * PI)) ** 2, 0.999)
    return ExpansionResult(value=total, terms_used=used,
                           truncation_est=last_mag * rho / (1.0 - rho))


def eq24_3f2(params: BesselSumParams) -> float:
    """Closed form for 3F2(1,1,1-mu; n+nu+2, n+2; 1), mu > 0.

    Algebraically this is theorem1 after c = 1-mu, d = n+nu+2, rearranged so
    only Pochhammers and psi values appear; it is regular for every mu > 0
    (integer mu included — (mu)_{n+1} never vanishes there).
    """
    p = params
    if p.mu <= 0.0:
        raise DomainError("requires mu > 0 (the (mu)_{n+1} prefactor degenerates)")
    front = ((p.n + 1) * pochhammer(1.0 + p.nu, p.n + 1)
             / pochhammer(p.mu, p.n + 1))
    brace = (pochhammer(1.0 + p.mu + p.nu + p.n, p.n) / pochhammer(1.0 + p.nu, p.n)
             * (2.0 * _psi(p.alpha) - _psi(1.0 + p.nu + p.n)
                - _psi(1.0 + p.mu + p.nu + p.n)))
    ksum = 0.0
    for k in range(1, p.n + 1):
        ksum += (math.comb(p.n, k) * gen_binomial(p.n + p.mu, k)
                 * cal_d_coeff(p.n, k, p.mu) / pochhammer(1.0 + p.nu, k))
    return front * (brace - ksum)


def psi_removal_identity(params: BesselSumParams) -> tuple:
    """Both sides of the finite-sum identity that trades the k-dependent psi
    differences for a single psi bracket (evaluated in the c = 1-mu,
    d = n+nu+2 variables); the verifier asserts lhs == rhs."""
    p = params
    lhs = 0.0
    for k in range(1, p.n + 1):
        harm = 0.0
        for j in range(1, k + 1):
            harm += 1.0 / (p.n + p.mu + 1.0 - j)
        lhs += (math.comb(p.n, k) * gen_binomial(p.n + p.mu, k)
                * math.factorial(k) * harm / math.gamma(1.0 + p.nu + k))
    rhs = (pochhammer(1.0 + p.mu + p.nu + p.n, p.n) / math.gamma(p.n + p.nu + 1.0)
           * (_psi(p.alpha) - _psi(1.0 + p.mu + p.nu + p.n)))
    return lhs, rhs
