"""Double Ohno sums and the connected integral that relates them.

Three layers:

  * composition sums O_{m,n}(k) of deformed zeta values, and their
    generating function O(k | lam, mu) as a chain integral with J
    kernels;
  * the connected integral I(k, l | lam, mu): two J chains joined by
    the Theta coupling built from hyperbolic gamma functions, plus the
    d(lam, mu) normalization, the initial and transport relations, and
    the Saalschutz identity they rest on;
  * the Omega coefficient tables on xy-words, whose equality
    Omega(y w x) = Omega(y tau(w) x) is the extended double Ohno
    relation.

The Theta stage couples the two chain lines only through the sum
T + U and the cross phase e^{-pi i w T U}.  On a shared uniform grid
the sum part is a discrete convolution, and the cross phase splits
into per-line chirps times a chirp on the sum grid, so the double sum
costs one convolution instead of a dense double loop.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import cache as _cache
from .hypgamma import log_G, log_G_line
from .ncseries import z_decompose
from .omega import cexpm1, inverse_x_variable, zeta_omega
from .quad import (ChainStage, EvalResult, QuadConfig, QuadError,
                   chain_line_integral, chain_pass, integrate_real_line,
                   _log_target)

__all__ = [
    "OhnoParams",
    "OhnoTable",
    "compositions",
    "double_ohno_sum",
    "hat_shift",
    "ohno_generating",
    "ohno_series",
    "d_norm",
    "connected_integral",
    "initial_relation",
    "transport_relation",
    "saalschutz_check",
    "ohno_table",
    "omega_Omega",
    "connected_expansion",
    "clear_connector_cache",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OhnoParams:
    """Generating-function parameters: the deformation point (lam, mu),
    the table order for (xi, eta) expansions, and an optional contour
    shift (each integral picks a valid default when eps is None)."""
    lam: complex = 0.0 + 0.0j
    mu: complex = 0.0 + 0.0j
    order: int = 2
    eps: float = 0.0

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be >= 0")


class OhnoTable:
    """Triangular table of coefficients indexed by (m, n), m+n <= order,
    with a parallel table of error estimates."""

    def __init__(self, order):
        self.order = int(order)
        self.coeffs = {}
        self.errs = {}

    def set(self, m, n, value, err=0.0):
        if m < 0 or n < 0 or m + n > self.order:
            raise ValueError("cell (%d, %d) outside order %d"
                             % (m, n, self.order))
        self.coeffs[(m, n)] = complex(value)
        self.errs[(m, n)] = float(err)

    def add(self, m, n, value, err=0.0):
        cur = self.coeffs.get((m, n), 0.0 + 0.0j)
        self.set(m, n, cur + complex(value),
                 self.errs.get((m, n), 0.0) + float(err))

    def get(self, m, n):
        return self.coeffs.get((m, n), 0.0 + 0.0j)

    def cells(self):
        return sorted(self.coeffs)

    def max_abs_diff(self, other):
        """Largest |difference| over the shared triangle."""
        top = min(self.order, other.order)
        worst = 0.0
        for m in range(top + 1):
            for n in range(top + 1 - m):
                worst = max(worst, abs(self.get(m, n) - other.get(m, n)))
        return worst

    def __str__(self):
        lines = []
        for m, n in self.cells():
            v = self.coeffs[(m, n)]
            lines.append("(%d,%d) %.12g%+.12gj" % (m, n, v.real, v.imag))
        return "\n".join(lines) or "(empty)"


# ---------------------------------------------------------------------------
# Composition sums

@lru_cache(maxsize=None)
def compositions(total, parts):
    """All tuples of `parts` non-negative integers summing to `total`,
    in lexicographic order."""
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def _check_admissible(k):
    k = tuple(int(e) for e in k)
    if not k or any(e < 1 for e in k) or k[-1] < 2:
        raise ValueError("index %r is not admissible" % (k,))
    return k


def double_ohno_sum(k, m, n, p, cfg=None):
    """O_{m,n}(k): the sum of zeta values over all ways of distributing
    extra weight m (first direction) and n (second direction) over the
    entries of the admissible index k."""
    k = _check_admissible(k)
    if m < 0 or n < 0:
        raise ValueError("m and n must be >= 0")
    cfg = cfg or QuadConfig()
    r = len(k)
    total = 0.0 + 0.0j
    err = 0.0
    count = 0
    for ms in compositions(m, r):
        for ns in compositions(n, r):
            shifted = tuple(k[a] + ms[a] + ns[a] for a in range(r))
            res = zeta_omega(shifted, p, cfg)
            total += complex(res.value)
            err += res.err_estimate
            count += 1
    return EvalResult(total, err, {"index": k, "m": m, "n": n,
                                   "terms": count})


def hat_shift(z, p):
    """(e^{2 pi i w z} - 1) / (2 pi i w), the variable in which the
    generating functions are power series."""
    hbar = p.hbar_value
    return complex(cexpm1(hbar * complex(z))) / hbar


# ---------------------------------------------------------------------------
# Generating integral with J kernels

def _j_kernel(kk, t, lam, mu, p):
    """J_k(t | lam, mu) = e^{2 pi i w (k-1) t} / [(1 - e^{2 pi i w (lam+t)})
    (1 - e^{2 pi i w (mu+t)}) (1 - e^{2 pi i w t})^{k-2}]."""
    hbar = p.hbar_value
    d1 = -cexpm1(hbar * (lam + t))
    d2 = -cexpm1(hbar * (mu + t))
    bad = np.minimum(np.abs(d1), np.abs(d2))
    if kk != 2:
        d0 = -cexpm1(hbar * t)
        bad = np.minimum(bad, np.abs(d0))
    if np.min(bad) < 1e-12:
        raise QuadError("J kernel pole on the contour", k=kk)
    num = np.exp(hbar * (kk - 1) * t)
    out = num / (d1 * d2)
    if kk != 2:
        out = out / d0 ** (kk - 2)
    return out


def _last_power_kernel(kk, t, p):
    """(e^{2 pi i w t} / (1 - e^{2 pi i w t}))^{k-1} via the stable form
    (e^{-2 pi i w t} - 1)^{-(k-1)}; the reciprocal is taken first so a
    huge base underflows to zero instead of overflowing."""
    den = cexpm1(-p.hbar_value * t)
    if np.min(np.abs(den)) < 1e-12:
        raise QuadError("power kernel pole on the contour", k=kk)
    return (1.0 / den) ** (kk - 1)


def _shift_margin(lam, mu):
    return max(abs(complex(lam)), abs(complex(mu)),
               abs(complex(lam) + complex(mu)))


def ohno_generating(k, op, p, cfg=None, eps=None):
    """O(k | lam, mu): the generating integral of the double Ohno sums,
    one J stage per index entry on the lines Re T_a = -a*eps."""
    k = _check_admissible(k)
    cfg = cfg or QuadConfig()
    w = p.omega
    r = len(k)
    if eps is None:
        eps = op.eps or 1.0 / (4.0 * r * w)
    if not 0.0 < eps < 1.0 / (2.0 * r * w):
        raise QuadError("contour shift outside (0, 1/2rw)", eps=eps)
    radius = eps / (3.0 * math.pi)
    if abs(complex(op.lam)) >= radius or abs(complex(op.mu)) >= radius:
        raise QuadError("deformation point outside the series region",
                        radius=radius)
    stages = [ChainStage(cum=(lambda t, kk=e: _j_kernel(kk, t, op.lam,
                                                        op.mu, p)))
              for e in k]
    pole = min(eps, 1.0 / w - r * eps) - _shift_margin(op.lam, op.mu)
    if pole <= 0.1 * eps:
        raise QuadError("contour too close to a kernel pole", dist=pole)
    dp = 0.8 * TWO_PI * w * (k[-1] - 1)
    pref = p.hbar_value ** sum(k)
    res = chain_line_integral(stages, eps, cfg, decay_plus=dp,
                              pole_dist=pole, prefactor=pref)
    res.meta.update(index=k, lam=complex(op.lam), mu=complex(op.mu))
    return res


def ohno_series(k, op, p, cfg=None):
    """Truncated double series sum_{m+n <= order} O_{m,n}(k) L^m M^n in
    the hatted variables; the error estimate folds in a geometric bound
    on the dropped tail."""
    k = _check_admissible(k)
    cfg = cfg or QuadConfig()
    lam_hat = hat_shift(op.lam, p)
    mu_hat = hat_shift(op.mu, p)
    rho = max(abs(lam_hat), abs(mu_hat))
    q = 4.0 * rho
    if q >= 0.5:
        raise QuadError("deformation too large for series truncation",
                        rho=rho)
    total = 0.0 + 0.0j
    err = 0.0
    top = 0.0
    for m in range(op.order + 1):
        for n in range(op.order + 1 - m):
            cell = double_ohno_sum(k, m, n, p, cfg)
            term = complex(cell.value) * lam_hat ** m * mu_hat ** n
            total += term
            err += cell.err_estimate * abs(lam_hat ** m * mu_hat ** n)
            if m + n == op.order:
                top += abs(term)
    err += top * q / (1.0 - q)
    return EvalResult(total, err, {"index": k, "order": op.order})


# ---------------------------------------------------------------------------
# Normalization d and the connected integral

def d_norm(lam, mu, ctx):
    """d(lam, mu) = (i/sqrt w) e^{pi i w (lam+mu-lam*mu)}
    G(i(ob - lam - 1/w)) G(i(ob - mu - 1/w)); equals i at w = 1 and
    lam = mu = 0."""
    w = ctx.p.omega
    ob = ctx.omega_bar
    lam = complex(lam)
    mu = complex(mu)
    logs = (log_G(1j * (ob - lam - 1.0 / w), ctx)
            + log_G(1j * (ob - mu - 1.0 / w), ctx))
    pref = (1j / math.sqrt(w)) * np.exp(1j * math.pi * w
                                        * (lam + mu - lam * mu))
    return complex(pref * np.exp(logs))


def _cached_line(ctx, x0, h, n, im):
    """log G on the ascending grid x0 + h*arange(n) at height im,
    memoized on the context.  A step-doubled grid is a subsample of its
    fine parent, so it is served by slicing."""
    def key_of(step, count):
        return (round(float(x0), 12), round(float(step), 12), int(count),
                round(float(im), 12))
    key = key_of(h, n)
    hit = ctx.line_cache.get(key)
    if hit is None:
        parent = ctx.line_cache.get(key_of(0.5 * h, 2 * n - 1))
        if parent is not None:
            hit = parent[::2]
        else:
            re = x0 + h * np.arange(n)
            hit = log_G_line(re, im, ctx)
        ctx.line_cache[key] = hit
    return hit


def _descending_log_line(ctx, tops, h, shift, height):
    """log G(i(ob + line + shift)) where line = -a*eps + i*ys runs over
    a grid with imaginary parts `tops` (ascending, spacing h); the G
    argument then has fixed height and descending real part."""
    n = len(tops)
    x0 = -float(tops[-1]) - shift.imag
    vals = _cached_line(ctx, x0, h, n, height)
    return vals[::-1]


def _connector_grid(eps, cfg, p, r, s, shift):
    """Shared grid for the two chains feeding the Theta stage.  The
    step resolves both the pole strip and the cross-phase chirp, whose
    local frequency grows linearly with |Im T|."""
    w = p.omega
    d0 = min(eps, min(1.0, 1.0 / w) - (r + s) * eps) - shift
    if d0 <= 1e-3:
        raise QuadError("contour too close to a kernel pole", dist=d0)
    ltol = _log_target(cfg)
    guard = ltol / TWO_PI
    dp = 1.6 * math.pi * w * eps * min(r, s)
    ym = ltol / TWO_PI + cfg.margin + guard
    yp = ltol / dp + cfg.margin + guard * (max(r, s) - 1)
    L = cfg.sharpness * math.log(1.0 / max(cfg.rel_tol, 1e-15))
    h_pole = TWO_PI * d0 * cfg.strip_safety / L
    chirp = math.pi * w * max(ym, yp)
    h = 1.0 / (1.0 / h_pole + chirp / math.pi)
    nm = int(math.ceil(ym / h / 2.0)) * 2
    npl = int(math.ceil(yp / h / 2.0)) * 2
    if nm + npl + 1 > cfg.max_chain_nodes:
        raise QuadError("connector grid above node budget",
                        nodes=nm + npl + 1)
    ys = h * np.arange(-nm, npl + 1)
    return h, ys, dp


def _prefix_stages(k, lam, mu, p):
    """J stages for all but the last entry, then the bare power kernel
    of the last entry (identity when it is 1)."""
    stages = [ChainStage(cum=(lambda t, kk=e: _j_kernel(kk, t, lam, mu, p)))
              for e in k[:-1]]
    last = k[-1]
    cum = None if last == 1 else (lambda t, kk=last:
                                  _last_power_kernel(kk, t, p))
    stages.append(ChainStage(cum=cum))
    return stages


def _theta_value(ctx, cfg, p, r, s, lam, mu, eps, h, ys, chi_t, chi_u, dp):
    """Assemble the coupled double sum for one grid resolution."""
    w = p.omega
    ob = ctx.omega_bar
    n = len(ys)
    lam = complex(lam)
    mu = complex(mu)
    both = lam + mu

    log_a = (_descending_log_line(ctx, ys, h, 0.0j, ob - r * eps)
             - _descending_log_line(ctx, ys, h, lam,
                                    ob - r * eps + lam.real)
             - _descending_log_line(ctx, ys, h, mu,
                                    ob - r * eps + mu.real))
    log_b = (_descending_log_line(ctx, ys, h, 0.0j, ob - s * eps)
             - _descending_log_line(ctx, ys, h, lam,
                                    ob - s * eps + lam.real)
             - _descending_log_line(ctx, ys, h, mu,
                                    ob - s * eps + mu.real))

    ysum = np.concatenate([ys[0] + ys[:-1], ys[-1] + ys])
    s_line = -(r + s) * eps + 1j * ysum
    x0_c = -float(ysum[-1]) - both.imag
    vals_c = _cached_line(ctx, x0_c, h, len(ysum),
                          ob - (r + s) * eps + both.real)
    log_c = vals_c[::-1] - np.log(-cexpm1(p.hbar_value * (s_line + both)))

    # cross phase e^{-pi i w T U} split into line chirps and a sum chirp
    f_t = np.exp((-math.pi * w * s * eps) * ys - 0.5j * math.pi * w * ys ** 2)
    f_u = np.exp((-math.pi * w * r * eps) * ys - 0.5j * math.pi * w * ys ** 2)
    f_sum = np.exp(0.5j * math.pi * w * ysum ** 2)
    const = np.exp(-1j * math.pi * w * r * s * eps * eps)

    a_vec = chi_t * np.exp(log_a) * f_t
    b_vec = chi_u * np.exp(log_b) * f_u
    conv = np.convolve(a_vec, b_vec)
    summand = conv * np.exp(log_c) * f_sum
    value = const * (1j ** (r + s)) * h * h * summand.sum()

    # boundary monitors: top/bottom rows of each line and of the sum
    c_abs = np.abs(np.exp(log_c))
    row_hi = float(np.sum(np.abs(b_vec) * c_abs[n - 1:]))
    col_hi = float(np.sum(np.abs(a_vec) * c_abs[n - 1:]))
    tail = h * h * (abs(a_vec[-1]) * row_hi / (dp * h)
                    + abs(b_vec[-1]) * col_hi / (dp * h)
                    + abs(a_vec[0]) * float(np.sum(np.abs(b_vec)
                                                   * c_abs[:n])) / (TWO_PI * h)
                    + abs(b_vec[0]) * float(np.sum(np.abs(a_vec)
                                                   * c_abs[:n])) / (TWO_PI * h))
    return value, tail


_CONN_MEMO = {}


def clear_connector_cache():
    _CONN_MEMO.clear()


def connected_integral(k, l, op, ctx, cfg=None, eps=None):
    """I(k, l | lam, mu): two J chains joined by the Theta coupling.

    Chain a of length r runs on Re T_a = -a*eps, likewise the second
    chain; the Theta factor depends on (T_r, U_s) only through the sum
    and the cross phase, evaluated by convolution on the shared grid.
    """
    k = tuple(int(e) for e in k)
    l = tuple(int(e) for e in l)
    if not k or not l or min(k) < 1 or min(l) < 1:
        raise QuadError("index entries must be >= 1", k=k, l=l)
    cfg = cfg or ctx.cfg
    p = ctx.p
    w = p.omega
    r, s = len(k), len(l)
    if eps is None:
        eps = op.eps or min(1.0, 1.0 / w) / (2.0 * (r + s + 2))
    if not 0.0 < (r + s + 2) * eps < min(1.0, 1.0 / w):
        raise QuadError("contour shift outside the convergence region",
                        eps=eps)
    lam, mu = complex(op.lam), complex(op.mu)
    if abs(lam) >= eps or abs(mu) >= eps:
        raise QuadError("deformation point outside the holomorphy region",
                        eps=eps)

    key = (k, l, repr(lam), repr(mu), repr(w), float(eps),
           cfg.fingerprint())
    hit = _CONN_MEMO.get(key)
    if hit is not None:
        return hit
    expr = "conn %s;%s lam=%r mu=%r eps=%r" % (
        ",".join(map(str, k)), ",".join(map(str, l)), lam, mu, float(eps))
    store = _cache.active()
    if store is not None:
        stored = store.get(expr, repr(w), cfg.fingerprint())
        if stored is not None:
            res = EvalResult(stored[0], stored[1],
                             {"k": k, "l": l, "eps": eps, "cached": True})
            _CONN_MEMO[key] = res
            return res

    shift = _shift_margin(lam, mu)
    h, ys, dp = _connector_grid(eps, cfg, p, r, s, shift)
    stages_t = _prefix_stages(k, lam, mu, p)
    stages_u = _prefix_stages(l, lam, mu, p)
    chi_t = chain_pass(stages_t, eps, h, ys)
    chi_u = chain_pass(stages_u, eps, h, ys)

    pref = p.hbar_value ** (sum(k) + sum(l))
    fine, tail = _theta_value(ctx, cfg, p, r, s, lam, mu, eps,
                              h, ys, chi_t, chi_u, dp)
    chi_t_c = chain_pass(stages_t, eps, 2 * h, ys[::2])
    chi_u_c = chain_pass(stages_u, eps, 2 * h, ys[::2])
    coarse, _ = _theta_value(ctx, cfg, p, r, s, lam, mu, eps,
                             2 * h, ys[::2], chi_t_c, chi_u_c, dp)
    value = pref * fine
    err = abs(pref) * (abs(fine - coarse) + tail) + cfg.abs_tol
    res = EvalResult(value, err,
                     {"k": k, "l": l, "eps": eps, "h": h,
                      "nodes": len(ys), "lam": lam, "mu": mu})
    if store is not None:
        store.put(expr, repr(w), cfg.fingerprint(), res.value,
                  res.err_estimate)
    _CONN_MEMO[key] = res
    return res


def index_up(k):
    k = tuple(k)
    return k[:-1] + (k[-1] + 1,)


def index_right(k):
    return tuple(k) + (1,)


def initial_relation(k, op, ctx, cfg=None):
    """Both sides of I(k, {1} | lam, mu) = d(lam, mu) O(k_up | lam, mu);
    returns (lhs, rhs) EvalResults with the d factor folded into rhs."""
    cfg = cfg or ctx.cfg
    lhs = connected_integral(k, (1,), op, ctx, cfg)
    d = d_norm(op.lam, op.mu, ctx)
    # the one-line integral picks its own contour shift
    op_gen = OhnoParams(lam=op.lam, mu=op.mu, order=op.order)
    gen = ohno_generating(index_up(k), op_gen, ctx.p, cfg)
    rhs = EvalResult(d * complex(gen.value), abs(d) * gen.err_estimate,
                     {"d": d, "index": index_up(k)})
    return lhs, rhs


def transport_relation(k, l, op, ctx, cfg=None, variant=1):
    """Residual data for the transport relations.

    variant 1:  I(k_right, l) = I(k, l_up) + LM * I(k_right_up, l_up)
    variant 2:  I(k_up, l)    = I(k, l_right) - LM * I(k_up, l_right_up)

    Returns (lhs, rhs) EvalResults.
    """
    cfg = cfg or ctx.cfg
    p = ctx.p
    lm = hat_shift(op.lam, p) * hat_shift(op.mu, p)
    if variant == 1:
        lhs = connected_integral(index_right(k), l, op, ctx, cfg)
        t1 = connected_integral(k, index_up(l), op, ctx, cfg)
        t2 = connected_integral(index_up(index_right(k)), index_up(l),
                                op, ctx, cfg)
        rhs_val = complex(t1.value) + lm * complex(t2.value)
    elif variant == 2:
        lhs = connected_integral(index_up(k), l, op, ctx, cfg)
        t1 = connected_integral(k, index_right(l), op, ctx, cfg)
        t2 = connected_integral(index_up(k), index_up(index_right(l)),
                                op, ctx, cfg)
        rhs_val = complex(t1.value) - lm * complex(t2.value)
    else:
        raise ValueError("variant must be 1 or 2")
    rhs = EvalResult(rhs_val,
                     t1.err_estimate + abs(lm) * t2.err_estimate,
                     {"variant": variant})
    return lhs, rhs


# ---------------------------------------------------------------------------
# Saalschutz identity

def saalschutz_check(u1, u2, u4, u5, ctx, cfg=None):
    """Both sides of the hyperbolic Saalschutz identity.

    lhs = int_R du exp((4 i ob - sum u) pi i w u) G(u-u4)G(u-u5) /
          (G(u+u1)G(u+u2)),
    rhs = (1/sqrt w) exp((u1 u2 - u4 u5 + i ob (u4+u5-u1-u2)) pi i w)
          G(-3 i ob + sum u) prod_{j=1,2; k=4,5} G(i ob - u_j - u_k).

    The contour is the straight real line, valid when every Im u_j is
    below ob (pole families separated) and Im sum u > 2 ob (decay at
    -infinity).  Returns (lhs EvalResult, rhs complex).
    """
    cfg = cfg or ctx.cfg
    p = ctx.p
    w = p.omega
    ob = ctx.omega_bar
    us = [complex(u1), complex(u2), complex(u4), complex(u5)]
    total = sum(us)
    gap = ob - max(u.imag for u in us)
    if gap <= 0.02:
        raise QuadError("pole lattice too close to the real line", gap=gap)
    if total.imag <= 2.0 * ob + 0.02:
        raise QuadError("no decay at -infinity: need Im(sum u) > 2*ob",
                        im_sum=total.imag)
    coeff = (4j * ob - total) * 1j * math.pi * w

    def f(x):
        logs = (log_G(x - us[2], ctx) + log_G(x - us[3], ctx)
                - log_G(x + us[0], ctx) - log_G(x + us[1], ctx))
        return np.exp(coeff * x + logs)

    dm = 0.9 * math.pi * w * (2.0 * total.imag - 4.0 * ob)
    dp = 0.9 * TWO_PI * (1.0 + w)
    osc = math.pi * w * (4.0 * ob + 2.0 * abs(total))
    lhs = integrate_real_line(f, cfg, decay=(dm, dp), osc=osc)
    lhs.meta["pole_gap"] = gap

    expo = (us[0] * us[1] - us[2] * us[3]
            + 1j * ob * (us[2] + us[3] - us[0] - us[1])) * 1j * math.pi * w
    logs = log_G(-3j * ob + total, ctx)
    for j in (0, 1):
        for kk in (2, 3):
            logs += log_G(1j * ob - us[j] - us[kk], ctx)
    rhs = complex(np.exp(expo + logs) / math.sqrt(w))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Coefficient tables

def ohno_table(k, order, p, cfg=None):
    """Table of O_{m,n}(k) for m+n <= order."""
    k = _check_admissible(k)
    table = OhnoTable(order)
    for m in range(order + 1):
        for n in range(order + 1 - m):
            cell = double_ohno_sum(k, m, n, p, cfg)
            table.set(m, n, cell.value, cell.err_estimate)
    return table


def omega_Omega(w, op, p, cfg=None):
    """Omega table of an XSeries whose X^j coefficients are words in
    y h x: each word contributes its O table shifted by (j, j)."""
    table = OhnoTable(op.order)
    for j, layer in enumerate(w.coeffs):
        if 2 * j > op.order:
            break
        sub = op.order - 2 * j
        for word, q in layer.items():
            idx = z_decompose(word)
            c = complex(q)
            for m in range(sub + 1):
                for n in range(sub + 1 - m):
                    cell = double_ohno_sum(idx, m, n, p, cfg)
                    table.add(m + j, n + j, c * complex(cell.value),
                              abs(c) * cell.err_estimate)
    return table


def connected_expansion(k, l, order, ctx, cfg=None, radius=None):
    """Coefficients Z_{m,n} of I(k, l | lam, mu)/d(lam, mu) as a series
    in the hatted variables, by least squares over a small product grid
    of phases."""
    if order > 2:
        raise ValueError("order above the supported expansion depth")
    cfg = cfg or ctx.cfg
    p = ctx.p
    w = p.omega
    r, s = len(k), len(l)
    eps = min(1.0, 1.0 / w) / (2.0 * (r + s + 2 + 2))
    rho0 = radius if radius is not None else eps / 8.0
    npts = order + 3
    cells = [(m, n) for m in range(order + 1)
             for n in range(order + 1 - m)]

    def fit(rho):
        # On a product grid of npts-th roots the monomial columns are
        # orthogonal, so truncation enters only through aliasing at
        # exponent gap npts; two radii expose that error directly.
        hats = rho * np.exp(2j * math.pi * np.arange(npts) / npts)
        rows = []
        vals = []
        errpt = 0.0
        for lh in hats:
            lam = complex(inverse_x_variable(lh, w))
            for mh in hats:
                mu = complex(inverse_x_variable(mh, w))
                pt = OhnoParams(lam=lam, mu=mu, order=order, eps=eps)
                conn = connected_integral(k, l, pt, ctx, cfg, eps=eps)
                dd = d_norm(lam, mu, ctx)
                vals.append(complex(conn.value) / dd)
                errpt = max(errpt, conn.err_estimate / abs(dd))
                rows.append([lh ** m * mh ** n for (m, n) in cells])
        a = np.array(rows)
        b = np.array(vals)
        sol, _, _, sv = np.linalg.lstsq(a, b, rcond=None)
        cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
        if cond > 1e8:
            raise QuadError("expansion fit is ill-conditioned", cond=cond)
        return sol, errpt

    sol_wide, _ = fit(rho0)
    sol, errpt = fit(rho0 / 2.0)
    table = OhnoTable(order)
    for (m, n), c, c_wide in zip(cells, sol, sol_wide):
        err = abs(c - c_wide) + errpt / max((rho0 / 2.0) ** (m + n), 1e-30)
        table.set(m, n, c, err)
    return table
