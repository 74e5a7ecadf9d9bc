"""Verification harness: seeded parameter grids, oracle comparisons, records.

Every closed form in the package is checked against an independent route
(usually the brute-force series engine) on rejection-sampled complex grids.
Sampling uses PCG64 streams spawned per (suite, family) so record streams are
reproducible and independent of how many points other families draw.
"""

from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .bessel_sums import (BesselSumParams, a_coeff, b_coeff, delta_n,
                          delta_n_at_1_closed, eq24_3f2, expansion_equal,
                          expansion_unequal, psi_removal_identity, s_direct)
from .closed_form import (LimitPolicy, Theorem1Params, eval_identity_lhs,
                          eval_identity_rhs, miller_paris, special_case,
                          theorem1)
from .errors import DomainError
from .hypergeom import EvalResult, SeriesConfig, sum_3f2
from .special_fns import PI

_ABS_FLOOR = 1e-12          # pass fallback for relative checks near zero values
_SUITE_INDEX = {"theorem1": 0, "miller_paris": 1, "identities": 2, "bessel": 3}


# ---------------------------------------------------------------- formatting

def format_float(x: float) -> str:
    return f"{float(x):.17g}"


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_complex(s: str) -> complex:
    """Parse 're+imi' / plain-real strings; rejects non-finite values."""
    t = str(s).strip().lower().replace(" ", "")
    if not t or "inf" in t or "nan" in t:
        raise ValueError(f"not a finite complex number: {s!r}")
    if t.endswith("i"):
        t = t[:-1] + "j"
    try:
        return complex(t)
    except ValueError as e:
        raise ValueError(f"cannot parse complex value {s!r}") from e


# ------------------------------------------------------------------- domain

@dataclass(frozen=True)
class ComplexRegion:
    re_min: float = -5.0
    re_max: float = 5.0
    im_min: float = -3.0
    im_max: float = 3.0

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise DomainError("ComplexRegion must be non-degenerate")

    def sample(self, rng) -> complex:
        return complex(rng.uniform(self.re_min, self.re_max),
                       rng.uniform(self.im_min, self.im_max))


def _draw(rng, region) -> complex:
    """Sample from a ComplexRegion or pick uniformly from an explicit list."""
    if isinstance(region, ComplexRegion):
        return region.sample(rng)
    seq = list(region)
    return complex(seq[int(rng.integers(0, len(seq)))])


@dataclass(frozen=True)
class GridSpec:
    n_values: tuple = (0, 1, 2, 3, 4, 5, 6, 7, 8)
    c_region: ComplexRegion = field(default_factory=ComplexRegion)
    d_region: ComplexRegion = field(default_factory=ComplexRegion)
    samples: int = 100
    seed: int = 42
    domain_margin: float = 0.75
    integer_exclusion_radius: float = 0.05

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError("GridSpec.samples must be >= 1")
        if self.domain_margin <= 0.0:
            raise DomainError("GridSpec.domain_margin must be > 0")
        if not self.n_values:
            raise DomainError("GridSpec.n_values must be non-empty")


@dataclass(frozen=True)
class VerificationRecord:
    suite: str
    identity: str
    params: str
    value_test: complex
    value_ref: complex
    value_alt: complex | None
    abs_dev: float
    rel_dev: float
    tol: float
    tol_kind: str               # "rel" | "abs"
    status: str                 # "pass" | "fail"
    wall_time_s: float


def _mk_record(suite, identity, params, v_test, v_ref, v_alt, tol, tol_kind, t0):
    vt, vr = complex(v_test), complex(v_ref)
    devs = [abs(vt - vr)]
    if v_alt is not None:
        va = complex(v_alt)
        devs += [abs(vt - va), abs(vr - va)]
    abs_dev = max(devs)
    rel_dev = abs_dev / max(abs(vr), 1e-300)
    if tol_kind == "rel":
        ok = rel_dev <= tol or abs_dev <= _ABS_FLOOR
    else:
        ok = abs_dev <= tol
    return VerificationRecord(
        suite=suite, identity=identity, params=params,
        value_test=vt, value_ref=vr, value_alt=None if v_alt is None else complex(v_alt),
        abs_dev=abs_dev, rel_dev=rel_dev, tol=tol, tol_kind=tol_kind,
        status="pass" if ok else "fail",
        wall_time_s=time.perf_counter() - t0)


def _rng(seed: int, suite_idx: int, family_idx: int):
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(suite_idx, family_idx))
    return np.random.Generator(np.random.PCG64(ss))


# ------------------------------------------------------------------ oracles

def unit_series_budget(sigma: float, target_rel: float) -> SeriesConfig:
    """Term budget for the unit-argument series tuned to an actual-accuracy
    target.

    The engine's own err_est is deliberately pessimistic (by roughly a factor
    K/sigma^2), so demanding err_est <= target would be hopeless for small
    sigma.  The corrected sum's true residual scales like K^-(1+sigma), which
    this budget inverts, with generous slack; converged=False at the cap is
    expected and fine — the value is what the budget controls.
    """
    if sigma <= 0.0:
        raise DomainError("unit-argument budget needs sigma > 0")
    k = (600.0 / target_rel) ** (1.0 / (1.0 + sigma))
    k = int(min(max(k, 4096.0), 4_000_000.0))
    return SeriesConfig(rel_tol=max(target_rel / 2.0, 1e-15), max_terms=k,
                        tail_mode="algebraic_correction")


def theorem1_oracle(c, d, n: int, target_rel: float) -> EvalResult:
    """Direct-summation value of 3F2(1,1,c; d,n+2; 1) at a given accuracy target."""
    sigma = (complex(d) - complex(c)).real + n
    return sum_3f2(1.0, 1.0, c, d, n + 2.0, 1.0, unit_series_budget(sigma, target_rel))


def richardson_limit(f, eps_values=(1e-3, 1e-4, 1e-5)):
    """Neville extrapolation of f(eps) to eps = 0.

    Returns (limit, err_est) with err_est the last extrapolation step size.
    """
    xs = [float(e) for e in eps_values]
    tab = [complex(f(e)) for e in xs]
    prev = tab[0]
    nlev = len(xs)
    for lvl in range(1, nlev):
        prev = tab[0]
        for i in range(nlev - lvl):
            tab[i] = (xs[i] * tab[i + 1] - xs[i + lvl] * tab[i]) / (xs[i] - xs[i + lvl])
    return tab[0], abs(tab[0] - prev)


# ----------------------------------------------------------------- sampling

def _near_int_within(z: complex, lo, hi, radius: float) -> bool:
    k = round(z.real)
    return lo <= k <= hi and abs(z - k) < radius


def _sample_theorem1_point(rng, grid: GridSpec, n: int, dc_int_exclusion=False):
    """Rejection-sample (c, d): inside the validity margin, c away from the
    removable integers 1..n+1, d away from 1 and the gamma poles."""
    r = grid.integer_exclusion_radius
    for _ in range(100_000):
        c = _draw(rng, grid.c_region)
        d = _draw(rng, grid.d_region)
        if (d - c).real + n < grid.domain_margin:
            continue
        if _near_int_within(c, 1, n + 1, r):
            continue
        if _near_int_within(d, -10 ** 9, 1, r):
            continue
        if dc_int_exclusion and _near_int_within(d - c, -10 ** 9, 1, r + 2e-3):
            continue
        return c, d
    raise DomainError("rejection sampling failed: incompatible grid constraints")


def _sample_mu_nu(rng, off_integers: bool, radius: float):
    for _ in range(100_000):
        mu = float(rng.uniform(0.0, 3.0))
        if mu < 0.05:
            continue
        if off_integers and abs(mu - round(mu)) < radius:
            continue
        nu = float(rng.uniform(0.0, 3.0))
        return mu, nu
    raise DomainError("rejection sampling failed for (mu, nu)")


def _pstr(**kv) -> str:
    parts = []
    for k, v in kv.items():
        if isinstance(v, complex):
            parts.append(f"{k}={format_complex(v)}")
        elif isinstance(v, float):
            parts.append(f"{k}={format_float(v)}")
        else:
            parts.append(f"{k}={v}")
    return ";".join(parts)


# ------------------------------------------------------------ family checks

def run_theorem1_checks(grid: GridSpec, count=None, tol=1e-8):
    rng = _rng(grid.seed, 0, 0)
    count = grid.samples if count is None else count
    recs = []
    for i in range(count):
        n = int(grid.n_values[i % len(grid.n_values)])
        c, d = _sample_theorem1_point(rng, grid, n)
        t0 = time.perf_counter()
        closed = theorem1(Theorem1Params(c=c, d=d, n=n))
        oracle = theorem1_oracle(c, d, n, tol / 20.0)
        recs.append(_mk_record("theorem1", "closed_vs_series", _pstr(c=c, d=d, n=n),
                               closed.value, oracle.value, None, tol, "rel", t0))
    return recs


_MP_GRID = [(m, p) for m in (1, 2, 3) for p in (1, 2, 3)]


def run_miller_paris_checks(grid: GridSpec, count=None, tol=1e-10):
    rng = _rng(grid.seed, 1, 0)
    count = grid.samples if count is None else count
    r = grid.integer_exclusion_radius
    recs = []
    for i in range(count):
        m, p = _MP_GRID[i % len(_MP_GRID)]
        for _ in range(100_000):
            a = _draw(rng, grid.c_region)
            c = _draw(rng, grid.c_region)
            d = _draw(rng, grid.d_region)
            if abs(a - 1.0) < r or _near_int_within(a, 1, m + p - 1, r):
                continue
            if _near_int_within(c, 1, m + p - 1, r):
                continue
            if (d + p - a - c).real < (m - 1) + grid.domain_margin:
                continue
            if _near_int_within(d, -10 ** 9, 0, r):
                continue
            if _near_int_within(d - a - c, -10 ** 9, 0, r):
                continue
            break
        else:
            raise DomainError("rejection sampling failed for miller_paris")
        t0 = time.perf_counter()
        closed = miller_paris(a, c, d, m, p)
        sigma = (d + p - a - c).real
        oracle = sum_3f2(a, c, m, d, m + p, 1.0, unit_series_budget(sigma, tol / 20.0))
        recs.append(_mk_record("miller_paris", "closed_vs_series",
                               _pstr(a=a, c=c, d=d, m=m, p=p),
                               closed, oracle.value, None, tol, "rel", t0))
    return recs


def run_richardson_checks(grid: GridSpec, count=None, tol=1e-7):
    """Continuity of the a -> 1 limit: extrapolated two-sum closed form vs the
    dedicated unit-parameter closed form (m=1, p=n+1)."""
    rng = _rng(grid.seed, 1, 1)
    count = grid.samples if count is None else count
    recs = []
    for i in range(count):
        n = int(grid.n_values[i % len(grid.n_values)])
        c, d = _sample_theorem1_point(rng, grid, n, dc_int_exclusion=True)
        t0 = time.perf_counter()
        ref = theorem1(Theorem1Params(c=c, d=d, n=n)).value
        lim, _ = richardson_limit(lambda e: miller_paris(1.0 - e, c, d, 1, n + 1))
        recs.append(_mk_record("miller_paris", "a_to_1_richardson",
                               _pstr(c=c, d=d, n=n), lim, ref, None, tol, "rel", t0))
    return recs


def run_eval_identity_checks(grid: GridSpec, count=None, tol=1e-10):
    rng = _rng(grid.seed, 2, 0)
    count = grid.samples if count is None else count
    r = grid.integer_exclusion_radius
    recs = []
    for i in range(count):
        p = 1 + i % 5
        for _ in range(100_000):
            c = _draw(rng, grid.c_region)
            d = _draw(rng, grid.d_region)
            if not _near_int_within(c, 1, p, r):
                break
        else:
            raise DomainError("rejection sampling failed for eval_identity")
        t0 = time.perf_counter()
        lhs = eval_identity_lhs(c, d, p)
        rhs = eval_identity_rhs(c, d, p)
        recs.append(_mk_record("identities", "eval_identity", _pstr(c=c, d=d, p=p),
                               lhs, rhs, None, tol, "rel", t0))
    return recs


def run_special_case_checks(grid: GridSpec, count=None, tol_closed=1e-12, tol_series=1e-8):
    rng = _rng(grid.seed, 2, 1)
    count = grid.samples if count is None else count
    recs = []
    for i in range(count):
        n = i % 2
        c, d = _sample_theorem1_point(rng, grid, n)
        params = Theorem1Params(c=c, d=d, n=n)
        t0 = time.perf_counter()
        sp = special_case(params)
        th = theorem1(params).value
        recs.append(_mk_record("identities", "special_vs_theorem1", _pstr(c=c, d=d, n=n),
                               sp, th, None, tol_closed, "rel", t0))
        t1 = time.perf_counter()
        orc = theorem1_oracle(c, d, n, tol_series / 20.0)
        recs.append(_mk_record("identities", "special_vs_series", _pstr(c=c, d=d, n=n),
                               sp, orc.value, th, tol_series, "rel", t1))
    return recs


def run_eq24_checks(grid: GridSpec, count=None, tol_closed=1e-10, tol_series=1e-8):
    rng = _rng(grid.seed, 2, 2)
    count = grid.samples if count is None else count
    recs = []
    for i in range(count):
        n = i % 6
        mu, nu = _sample_mu_nu(rng, True, grid.integer_exclusion_radius)
        bp = BesselSumParams(mu=mu, nu=nu, a=1.0, b=1.0, n=n)
        t0 = time.perf_counter()
        v24 = eq24_3f2(bp)
        th = theorem1(Theorem1Params(c=1.0 - mu, d=n + nu + 2.0, n=n)).value
        recs.append(_mk_record("identities", "eq24_vs_theorem1", _pstr(mu=mu, nu=nu, n=n),
                               v24, th, None, tol_closed, "rel", t0))
        t1 = time.perf_counter()
        orc = sum_3f2(1.0, 1.0, 1.0 - mu, n + nu + 2.0, n + 2.0, 1.0,
                      unit_series_budget(bp.alpha, tol_series / 20.0))
        recs.append(_mk_record("identities", "eq24_vs_series", _pstr(mu=mu, nu=nu, n=n),
                               v24, orc.value, th, tol_series, "rel", t1))
    return recs


def run_psi_removal_checks(grid: GridSpec, count=None, tol=1e-10):
    rng = _rng(grid.seed, 2, 3)
    count = grid.samples if count is None else count
    recs = []
    for i in range(count):
        n = i % 6
        mu, nu = _sample_mu_nu(rng, False, grid.integer_exclusion_radius)
        bp = BesselSumParams(mu=mu, nu=nu, a=1.0, b=1.0, n=n)
        t0 = time.perf_counter()
        lhs, rhs = psi_removal_identity(bp)
        recs.append(_mk_record("identities", "psi_removal", _pstr(mu=mu, nu=nu, n=n),
                               lhs, rhs, None, tol, "rel", t0))
    return recs


def run_delta_three_way_checks(grid: GridSpec, count=None, tol=1e-9):
    rng = _rng(grid.seed, 2, 4)
    count = grid.samples if count is None else count
    recs = []
    for i in range(count):
        n = i % 6
        mu, nu = _sample_mu_nu(rng, True, grid.integer_exclusion_radius)
        bp = BesselSumParams(mu=mu, nu=nu, a=1.0, b=1.0, n=n)
        t0 = time.perf_counter()
        v_series = delta_n(bp, 1.0, unit_series_budget(bp.alpha, tol / 20.0),
                           via="series").value
        v_thm = delta_n(bp, 1.0, via="theorem1").value
        v_closed = delta_n_at_1_closed(bp)
        recs.append(_mk_record("identities", "delta_three_way", _pstr(mu=mu, nu=nu, n=n),
                               v_series, v_closed, v_thm, tol, "rel", t0))
    return recs


def run_ab_coefficient_checks(grid: GridSpec, count=None, tol=1e-11):
    """Termwise power-coefficient identity between the equal-argument and the
    chi = 1 two-argument expansions, m <= 2n+3."""
    rng = _rng(grid.seed, 2, 5)
    count = grid.samples if count is None else count
    recs = []
    for i in range(count):
        n = i % 6
        mu, nu = _sample_mu_nu(rng, False, grid.integer_exclusion_radius)
        bp = BesselSumParams(mu=mu, nu=nu, a=1.0, b=1.0, n=n)
        t0 = time.perf_counter()
        g_nu = math.gamma(1.0 + nu)
        worst = (0.0, None, 1.0, 1.0)
        for m in range(2 * n + 4):
            if m == n:
                continue
            av = a_coeff(bp, m)
            bv = b_coeff(bp, m, 1.0) / g_nu
            rd = abs(av - bv) / max(abs(av), 1e-300)
            if rd >= worst[0]:
                worst = (rd, m, av, bv)
        recs.append(_mk_record("identities", "ab_coefficient",
                               _pstr(mu=mu, nu=nu, n=n, m_worst=worst[1]),
                               worst[2], worst[3], None, tol, "rel", t0))
    return recs


def run_epsilon_limit_checks(grid: GridSpec, count=None, tol=1e-6):
    """Removable-singularity policy at c = 1, n = 0 against the direct series."""
    rng = _rng(grid.seed, 2, 6)
    count = grid.samples if count is None else count
    r = grid.integer_exclusion_radius
    policy = LimitPolicy(mode="epsilon_limit", epsilon=1e-5)
    recs = []
    for i in range(count):
        for _ in range(100_000):
            d = _draw(rng, grid.d_region)
            if (d - 1.0).real < grid.domain_margin:
                continue
            if _near_int_within(d, -10 ** 9, 1, r):
                continue
            break
        else:
            raise DomainError("rejection sampling failed for epsilon_limit")
        t0 = time.perf_counter()
        v = theorem1(Theorem1Params(c=1.0, d=d, n=0), policy).value
        orc = sum_3f2(1.0, 1.0, 1.0, d, 2.0, 1.0,
                      unit_series_budget((d - 1.0).real, tol / 20.0))
        recs.append(_mk_record("identities", "epsilon_limit_c1", _pstr(d=d),
                               v, orc.value, None, tol, "rel", t0))
    return recs


_BESSEL_EQUAL_CASES = tuple((mu, nu, n, a)
                            for (mu, nu, n) in ((0.0, 0.0, 0), (0.5, 0.5, 1), (1.0, 0.0, 2))
                            for a in (0.5, 1.0, 2.0, 3.0))
_BESSEL_UNEQUAL_CASES = ((0.0, 0.0, 2.0, 1.0, 0), (0.5, 0.5, 2.0, 1.0, 1))


def run_bessel_checks(M: int = 100_000, tol: float = 1e-4):
    """Cross-method agreement on the fixed case grid, absolute tolerance."""
    recs = []
    for mu, nu, n, a in _BESSEL_EQUAL_CASES:
        bp = BesselSumParams(mu=mu, nu=nu, a=a, b=a, n=n)
        t0 = time.perf_counter()
        ex = expansion_equal(bp)
        ref = s_direct(bp, M)
        recs.append(_mk_record("bessel", "equal_vs_direct",
                               _pstr(mu=mu, nu=nu, a=a, b=a, n=n, M=M),
                               ex.value, ref.value, None, tol, "abs", t0))
    for mu, nu, a, b, n in _BESSEL_UNEQUAL_CASES:
        bp = BesselSumParams(mu=mu, nu=nu, a=a, b=b, n=n)
        boundary = abs((a + b) - 2.0 * PI) <= 1e-9
        pstr = _pstr(mu=mu, nu=nu, a=a, b=b, n=n, M=M)
        if boundary:
            pstr += ";boundary=1"
        t0 = time.perf_counter()
        ex = expansion_unequal(bp)
        ref = s_direct(bp, M)
        recs.append(_mk_record("bessel", "unequal_vs_direct", pstr,
                               ex.value, ref.value, None, tol, "abs", t0))
    return recs


# ------------------------------------------------------------------- suites

def run_identities_suite(grid: GridSpec, tol: float | None = None):
    S = grid.samples
    weights = (("eval_identity", 10), ("special_case", 10), ("eq24", 5),
               ("psi_removal", 5), ("delta", 3), ("ab", 2), ("epsilon", 1))
    wtot = sum(w for _, w in weights)
    counts = {name: max(1, (S * w) // wtot) for name, w in weights}
    recs = run_eval_identity_checks(grid, counts["eval_identity"], tol=tol or 1e-10)
    recs += run_special_case_checks(grid, counts["special_case"],
                                    tol_closed=tol or 1e-12, tol_series=tol or 1e-8)
    recs += run_eq24_checks(grid, counts["eq24"],
                            tol_closed=tol or 1e-10, tol_series=tol or 1e-8)
    recs += run_psi_removal_checks(grid, counts["psi_removal"], tol=tol or 1e-10)
    recs += run_delta_three_way_checks(grid, counts["delta"], tol=tol or 1e-9)
    recs += run_ab_coefficient_checks(grid, counts["ab"], tol=tol or 1e-11)
    recs += run_epsilon_limit_checks(grid, counts["epsilon"], tol=tol or 1e-6)
    return recs


def run_suite(name: str, grid: GridSpec, tol: float | None = None,
              bessel_m: int | None = None):
    if name == "theorem1":
        return run_theorem1_checks(grid, tol=tol or 1e-8)
    if name == "miller_paris":
        rich = max(1, grid.samples // 5)
        recs = run_miller_paris_checks(grid, grid.samples - rich, tol=tol or 1e-10)
        recs += run_richardson_checks(grid, rich, tol=tol or 1e-7)
        return recs
    if name == "identities":
        return run_identities_suite(grid, tol=tol)
    if name == "bessel":
        return run_bessel_checks(M=bessel_m or 100_000, tol=tol or 1e-4)
    raise DomainError(f"unknown suite {name!r}")


# ------------------------------------------------------------------ reports

_COLUMNS = ("suite", "identity", "params", "value_test", "value_ref", "value_alt",
            "abs_dev", "rel_dev", "tol", "tol_kind", "status", "wall_time_s")


def _record_cells(r: VerificationRecord) -> list:
    return [r.suite, r.identity, r.params,
            format_complex(r.value_test), format_complex(r.value_ref),
            "" if r.value_alt is None else format_complex(r.value_alt),
            format_float(r.abs_dev), format_float(r.rel_dev), format_float(r.tol),
            r.tol_kind, r.status, format_float(r.wall_time_s)]


def write_report(records, path: str, fmt: str = "table") -> str:
    """Write records (canonically sorted) as a CSV table or a JSONL stream.

    Floats carry 17 significant digits, so parsing a written report reproduces
    every numeric field bit-exactly.
    """
    if not records:
        raise ValueError("refusing to write an empty report")
    if fmt not in ("table", "objects"):
        raise ValueError(f"unknown report format {fmt!r}")
    recs = sorted(records, key=lambda r: (r.suite, r.identity, r.params))
    lines = []
    if fmt == "table":
        lines.append(",".join(_COLUMNS))
        for r in recs:
            lines.append(",".join(_record_cells(r)))
    else:
        for r in recs:
            lines.append(json.dumps(dict(zip(_COLUMNS, _record_cells(r))),
                                    separators=(",", ":")))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def parse_table(path: str):
    """Read a table-format report back into a list of dicts (strings kept)."""
    with open(path) as fh:
        rows = [line.rstrip("\n") for line in fh if line.strip()]
    header = rows[0].split(",")
    return [dict(zip(header, row.split(","))) for row in rows[1:]]


def summarize(records) -> dict:
    """Per-suite (passed, total) counts."""
    out: dict = {}
    for r in records:
        ok, tot = out.get(r.suite, (0, 0))
        out[r.suite] = (ok + (1 if r.status == "pass" else 0), tot + 1)
    return out
