"""Series engines for 2F1 and 3F2 on |x| <= 1 with algebraic tail correction.

Terms come from the ratio recurrence
    t_{k+1} = t_k * x * prod(upper+k) / (prod(lower+k) * (k+1)),
accumulated in geometrically growing numpy blocks (cumulative products), which
keeps the ~10^6-term unit-argument evaluations cheap.  At x = 1 the terms decay
like k^-(1+s) with s = sum(lower) - sum(upper) (complex in general; convergence
is governed by sigma = Re s); the tail after term K is modeled by the
Euler-Maclaurin form t_K*(K+1)^(-s)*K^s*((K+1)/s + 1/2) and added as a
correction, with a deliberately inflated error estimate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentError, DomainError, ParameterPoleError
from .special_fns import nonpositive_int_near

_UNIT_TOL = 1e-12
_CHECK_FROM = 1024      # no unit-argument stop checks before this many terms
_BLOCK_START = 64
_BLOCK_MAX = 65536


@dataclass(frozen=True)
class SeriesConfig:
    rel_tol: float = 1e-12
    max_terms: int = 10_000_000
    tail_mode: str = "algebraic_correction"

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise DomainError("SeriesConfig.rel_tol must lie in (0, 1)")
        if self.max_terms < 1:
            raise DomainError("SeriesConfig.max_terms must be >= 1")
        if self.tail_mode not in ("none", "algebraic_correction"):
            raise DomainError("SeriesConfig.tail_mode must be 'none' or 'algebraic_correction'")


@dataclass(frozen=True)
class EvalResult:
    value: complex
    err_est: float
    terms_used: int
    converged: bool


def _truncation_index(uppers) -> int | None:
    """Smallest m with an upper parameter at -m (series terms vanish past m)."""
    best = None
    for a in uppers:
        k = nonpositive_int_near(a)
        if k is not None:
            m = -k
            best = m if best is None else min(best, m)
    return best


def _pole_index(lowers) -> int | None:
    """Smallest q with a lower parameter at -q (denominator dies at term q+1)."""
    best = None
    for b in lowers:
        k = nonpositive_int_near(b)
        if k is not None:
            q = -k
            best = q if best is None else min(best, q)
    return best


def _power_tail(t_at_K: complex, K: int, s: complex) -> complex:
    """Tail sum_{k>K} C*k^-(1+s) given the term value at k=K: integral plus
    half-boundary Euler-Maclaurin terms, exact in the phase k^(-i*Im(s))."""
    scale = cmath.exp(-(1.0 + s) * math.log1p(1.0 / K))   # ((K+1)/K)^-(1+s)
    return t_at_K * scale * ((K + 1.0) / s + 0.5)


def _tail_correction(t_last: complex, K: int, s: complex, eta: complex) -> complex:
    """Tail of the hypergeometric series after term K at x = 1.

    Terms behave like C*k^-(1+s)*(1 + eta/k + O(1/k^2)) with s and eta exact
    rational functions of the parameters, so the tail is two power-law tails:
    exponent s with coefficient t_K/(1+eta/K), and exponent s+1 carrying the
    eta correction.  Leaving eta out loses tail*O(eta/K), which is the
    dominant model error once the term budget is modest.
    """
    if abs(eta) > 0.5 * K:        # asymptotic regime not reached; plain power law
        return _power_tail(t_last, K, s)
    t_pow = t_last / (1.0 + eta / K)
    return _power_tail(t_pow, K, s) + _power_tail(t_pow * eta / K, K, s + 1.0)


def _sum_hyp(uppers, lowers, x, cfg: SeriesConfig) -> EvalResult:
    xc = complex(x)
    ax = abs(xc)
    if ax > 1.0 + _UNIT_TOL:
        raise DomainError(f"series defined for |x| <= 1 only, got |x|={ax:.6g}")

    m_trunc = _truncation_index(uppers)
    q_pole = _pole_index(lowers)
    if q_pole is not None and (m_trunc is None or m_trunc > q_pole):
        raise ParameterPoleError(
            "lower parameter at a non-positive integer is reached before the "
            f"series truncates (pole enters at term {q_pole + 1})")

    unit = abs(ax - 1.0) <= _UNIT_TOL and m_trunc is None
    unit_pos = unit and abs(xc - 1.0) <= _UNIT_TOL
    sigma_c = sum(lowers) - sum(uppers)
    sigma = sigma_c.real
    # 1/k coefficient of the term asymptotics (see _tail_correction):
    # matching log-ratio expansions gives eta = (s + sum(a^2) - sum(b^2))/2.
    eta_c = (sigma_c + sum(u * u for u in uppers) - sum(b * b for b in lowers)) / 2.0
    if unit:
        if sigma <= 0.0:
            raise DivergentError(
                f"series diverges at |x|=1: Re(sum(lower)-sum(upper)) = {sigma:.6g} <= 0")
        if sigma < 0.5 and cfg.max_terms < 1_000_000:
            raise DomainError("sigma < 0.5 at |x|=1 requires max_terms >= 10^6")

    ups = np.asarray(uppers, dtype=complex)
    los = np.asarray(list(lowers) + [1.0], dtype=complex)   # the +[1] is the k! factor
    cap = cfg.max_terms if m_trunc is None else min(cfg.max_terms, m_trunc + 1)

    total = 1.0 + 0.0j          # t_0
    asum = 1.0                  # sum of |t_k|, for the rounding floor
    t_last = 1.0 + 0.0j
    k_next = 1                  # index of the next term to produce
    block = _BLOCK_START
    value = total
    err_est = math.inf
    converged = False

    while k_next < cap:
        b = min(block, cap - k_next)
        ks = np.arange(k_next - 1, k_next - 1 + b, dtype=float)
        ratios = np.full(b, xc, dtype=complex)
        for u in ups:
            ratios *= u + ks
        for lo in los:
            ratios /= lo + ks
        terms = t_last * np.cumprod(ratios)
        total += terms.sum()
        asum += np.abs(terms).sum()
        t_last = complex(terms[-1])
        k_next += b
        block = min(block * 2, _BLOCK_MAX)

        if m_trunc is not None:
            continue            # exact finite sum; run to the truncation index
        K = k_next - 1
        if unit:
            if k_next < _CHECK_FROM:
                continue
            tail_scale = abs(t_last) * (K + 1) / sigma
            if cfg.tail_mode == "algebraic_correction" and unit_pos:
                corr = _tail_correction(t_last, K, sigma_c, eta_c)
                raw = tail_scale * (2.0 / sigma + 1.0 / K)
            else:
                corr = 0.0 + 0.0j
                raw = tail_scale * (1.0 + 2.0 / sigma + 1.0 / K)
            if sigma < 0.5:
                raw *= 10.0
            cand = total + corr
            if raw <= cfg.rel_tol * abs(cand):
                value, err_est, converged = cand, raw, True
                break
        else:
            est = 2.0 * abs(t_last) * ax / (1.0 - ax)
            decaying = b < 2 or bool(np.all(np.abs(terms[1:]) <= np.abs(terms[:-1])))
            if decaying and est <= cfg.rel_tol * abs(total):
                value, err_est, converged = total, est, True
                break

    if not converged:
        K = max(k_next - 1, 1)
        if m_trunc is not None and k_next == m_trunc + 1:
            value, err_est, converged = total, 0.0, True
        elif unit:
            tail_scale = abs(t_last) * (K + 1) / sigma
            if cfg.tail_mode == "algebraic_correction" and unit_pos:
                value = total + _tail_correction(t_last, K, sigma_c, eta_c)
                err_est = tail_scale * (2.0 / sigma + 1.0 / K)
            else:
                value = total
                err_est = tail_scale * (1.0 + 2.0 / sigma + 1.0 / K)
            if sigma < 0.5:
                err_est *= 10.0
        elif ax < 1.0:
            value = total
            err_est = 2.0 * abs(t_last) * ax / (1.0 - ax) if ax > 0 else 0.0
        else:
            value = total
            err_est = abs(t_last) * (m_trunc + 1 - k_next if m_trunc else 1)

    floor = 5e-16 * asum
    if converged:
        thresh = max(cfg.rel_tol * abs(value), 1e-300)
        err_est = min(max(err_est, floor), thresh)
    else:
        err_est = max(err_est, floor)
    return EvalResult(value=value, err_est=float(err_est),
                      terms_used=k_next, converged=converged)


def sum_3f2(a1, a2, a3, b1, b2, x, cfg: SeriesConfig | None = None) -> EvalResult:
    """3F2(a1,a2,a3; b1,b2; x) by direct summation, |x| <= 1.

    At |x| = 1 convergence requires Re(b1+b2-a1-a2-a3) > 0 unless an upper
    parameter truncates the series.
    """
    cfg = cfg or SeriesConfig()
    return _sum_hyp((complex(a1), complex(a2), complex(a3)),
                    (complex(b1), complex(b2)), x, cfg)


def sum_2f1(a, b, c, x, cfg: SeriesConfig | None = None) -> EvalResult:
    """2F1(a,b; c; x) by direct summation, |x| <= 1; same engine as sum_3f2."""
    cfg = cfg or SeriesConfig()
    return _sum_hyp((complex(a), complex(b)), (complex(c),), x, cfg)


def gauss_sum_2f1_unit(a, b, c) -> complex:
    """2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).

    Assembled as exp of summed log-gammas (overflow-safe); a denominator gamma
    at a pole makes the value exactly 0, matching the entire 1/Gamma.
    """
    from .special_fns import log_cgamma
    import cmath

    a, b, c = complex(a), complex(b), complex(c)
    if (c - a - b).real <= 0.0:
        raise DomainError(f"Gauss sum needs Re(c-a-b) > 0, got {(c - a - b).real:.6g}")
    if nonpositive_int_near(c) is not None:
        raise ParameterPoleError("lower parameter c at a non-positive integer")
    if nonpositive_int_near(c - a) is not None or nonpositive_int_near(c - b) is not None:
        return 0.0 + 0.0j
    return cmath.exp(log_cgamma(c) + log_cgamma(c - a - b)
                     - log_cgamma(c - a) - log_cgamma(c - b))
