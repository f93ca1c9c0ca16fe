"""Hyperbolic gamma function G(z) = G(z | 1, 1/omega) in log scale.

Inside the strip |Im z| < omega_bar = (1 + 1/omega)/2 the function has
the integral representation

    log G(z) = i * int_0^inf dt/t ( sin(2 omega t z)
                                    / (2 sinh(omega t) sinh t) - z/t ).

Outside the strip, values are assembled from the two functional
equations

    G(z + i)       = -2i sinh(pi omega (z + i omega_bar)) G(z),
    G(z + i/omega) = -2i sinh(pi       (z + i omega_bar)) G(z)

and the reflection G(z) G(-z) = 1.  Poles sit on the lattice
-i(omega_bar + a + b/omega) and zeroes on its negative, a, b >= 0.

Everything works on horizontal lines (constant Im z): the contour
integrals that consume G only ever need values along such lines, and a
line shares one shift schedule, so evaluation is vectorized over Re z.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .omega import cexpm1 as _cexpm1_arr
from .quad import QuadConfig, QuadError, _gl_nodes, _log_target

__all__ = [
    "GammaContext",
    "log_G_strip",
    "log_G_line",
    "log_G",
    "G",
    "theta_kernel",
]


@dataclass
class GammaContext:
    """Evaluation context: deformation parameter, quadrature settings,
    relative margin kept to the strip boundary, and per-context caches
    (grid cache and line-value cache; read-only after warmup)."""

    p: object
    cfg: QuadConfig = field(default_factory=QuadConfig)
    margin: float = 0.05

    def __post_init__(self):
        self._grids = {}
        self.line_cache = {}

    @property
    def omega_bar(self):
        return self.p.omega_bar

    @property
    def core_band(self):
        """Half-height of the band where the strip integral converges
        at rate >= max(1, omega)."""
        return 0.5 * min(1.0, 1.0 / self.p.omega)


def _sin_minus_w(w):
    """sin(w) - w without cancellation for small |w|."""
    out = np.sin(w) - w
    small = np.abs(w) < 0.5
    if np.any(small):
        ws = np.where(small, w, 0.0)
        w2 = ws * ws
        series = (-ws * w2 / 6.0
                  * (1.0 - w2 / 20.0 * (1.0 - w2 / 42.0 * (1.0 - w2 / 72.0))))
        out = np.where(small, series, out)
    return out


def _sinhc_minus_1(x):
    """sinh(x)/x - 1 without cancellation for small |x| (x real > 0)."""
    out = np.sinh(x) / x - 1.0
    small = np.abs(x) < 0.5
    if np.any(small):
        xs = np.where(small, x, 1.0)
        x2 = xs * xs
        series = (x2 / 6.0
                  * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0))))
        out = np.where(small, series, out)
    return out


def _strip_integrand(t, z, w_om):
    """Integrand of the strip representation at nodes t (1-d, > 0)
    against arguments z (1-d), as a (t, z) matrix.

    For t < 2 uses the combined form
        [ (sin w - w) - w (S(wt)S(t) - 1) ] / (2 omega t^3 S(wt)S(t)),
    w = 2 omega t z, S(x) = sinh(x)/x, which is exact and stable at
    t -> 0.  For t >= 2 uses exponentials with all real exponents
    <= -kappa t, avoiding overflow for large cutoffs."""
    t = t[:, None]
    z = z[None, :]
    w = 2.0 * w_om * t * z
    lo = (t < 2.0)
    out = np.empty(np.broadcast_shapes(w.shape), dtype=complex)

    if np.any(lo):
        tl = np.where(lo, t, 1.0)
        wl = np.where(lo, w, 0.0)
        sa = _sinhc_minus_1(w_om * tl)
        sb = _sinhc_minus_1(tl)
        ssm1 = sa + sb + sa * sb
        numer = _sin_minus_w(wl) - wl * ssm1
        val = numer / (2.0 * w_om * tl ** 3 * (1.0 + ssm1))
        out = np.where(lo, val, out)

    hi = ~lo
    if np.any(hi):
        th = np.where(hi, t, 2.0)
        wh = np.where(hi, w, 0.0)
        rate = (w_om + 1.0) * th
        sin_part = (np.exp(1j * wh - rate) - np.exp(-1j * wh - rate)) / 2j
        denom = (1.0 - np.exp(-2.0 * w_om * th)) * (1.0 - np.exp(-2.0 * th))
        val = 2.0 * sin_part / denom / th - z / th ** 2
        out = np.where(hi, val, out)
    return out


def _strip_grid(ctx, xmax, immax):
    """Half-line quadrature nodes/weights/cutoff for the strip formula,
    cached per (bucketed xmax, bucketed immax)."""
    w = ctx.p.omega
    kappa = 1.0 + w - 2.0 * w * immax
    if kappa < 0.04 * (1.0 + w):
        raise QuadError("strip violated: argument too close to the "
                        "boundary Im z = omega_bar", immax=immax)
    key = (round(math.log(max(xmax, 1.0)) * 8),
           round(immax * 256), ctx.cfg.rel_tol)
    hit = ctx._grids.get(key)
    if hit is not None:
        return hit
    U = (_log_target(ctx.cfg) + 4.0) / kappa
    h = min(0.5, 0.4 * min(1.0, 1.0 / w),
            3.0 / (2.0 * w * xmax + 1e-9))
    n_panels = int(math.ceil(U / h))
    if n_panels * 16 > 600_000:
        raise QuadError("strip grid too large", panels=n_panels)
    gx, gw = _gl_nodes(16)
    edges = np.linspace(0.0, U, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
    weights = (half[:, None] * gw[None, :]).ravel()
    out = (nodes, weights, U)
    ctx._grids[key] = out
    return out


def log_G_strip(z, ctx):
    """log G on arguments inside the strip, via the half-line integral.
    Accepts a scalar or an array; vectorized with z-chunking."""
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    immax = float(np.max(np.abs(zs.imag))) if zs.size else 0.0
    if immax >= (1.0 - ctx.margin) * ctx.omega_bar:
        raise QuadError("strip violated", immax=immax,
                        bound=(1.0 - ctx.margin) * ctx.omega_bar)
    xmax = float(np.max(np.abs(zs.real))) if zs.size else 0.0
    nodes, weights, U = _strip_grid(ctx, xmax, immax)
    out = np.empty(zs.shape, dtype=complex)
    for a in range(0, zs.size, 256):
        blk = zs[a:a + 256]
        vals = _strip_integrand(nodes, blk, ctx.p.omega)
        out[a:a + 256] = weights @ vals - blk / U
    out = 1j * out
    return complex(out[0]) if scalar else out


def _log_m2i_sinh(v):
    """log(-2i sinh v), principal-branch pieces, stable for large |Re v|.
    Raises on sinh zeroes (poles/zeroes of G)."""
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    pos = v.real >= 0
    vv = np.where(pos, v, -v)
    em = -_cexpm1_arr(-2.0 * vv)
    bad = np.abs(em) < 1e-13
    if np.any(bad):
        raise QuadError("pole or zero of G hit on shift path",
                        v=complex(v.flat[int(np.argmax(bad))]))
    out = np.where(pos, vv - 0.5j * math.pi, vv + 0.5j * math.pi) \
        + np.log(em)
    return out


def _far_threshold(w):
    """|Re z| beyond which the quadratic asymptotic of log G is more
    accurate than the strip quadrature (error ~ e^{-2 pi min(w,1/w) x},
    driven below 1e-12)."""
    return max(6.0, 28.0 / (2.0 * math.pi * min(w, 1.0 / w)))


def _log_G_far(z, w):
    """log G in the far field: -i(pi w z^2/2 + pi(w + 1/w)/24) for
    Re z > 0, the negative of that for Re z < 0 (reflection)."""
    c0 = math.pi * (w + 1.0 / w) / 24.0
    quad = 0.5 * math.pi * w * z * z + c0
    sgn = np.where(z.real >= 0.0, -1.0, 1.0)
    return 1j * sgn * quad


def log_G_line(re, im, ctx):
    """log G(re + i*im) for a 1-d real array `re` on the horizontal
    line Im z = im.  One shift schedule serves the whole line; far from
    the imaginary axis the strip integral is replaced by the quadratic
    asymptotic."""
    re = np.atleast_1d(np.asarray(re, dtype=float))
    s0 = ctx.core_band
    if im < -s0:
        return -log_G_line(-re, -im, ctx)
    w = ctx.p.omega
    steps = []
    im_cur = float(im)
    big, small = max(1.0, 1.0 / w), min(1.0, 1.0 / w)
    while im_cur > s0 + 1e-12:
        step = big if im_cur - big >= -s0 - 1e-12 else small
        im_cur -= step
        steps.append(step)
    acc = np.zeros(re.shape, dtype=complex)
    im_next = float(im)
    for step in steps:
        im_next -= step
        zeta = re + 1j * (im_next + ctx.omega_bar)
        scale = math.pi * w if step == 1.0 else math.pi
        acc = acc + _log_m2i_sinh(scale * zeta)
    z0 = re + 1j * im_cur
    far = np.abs(re) >= _far_threshold(w)
    base = np.empty(re.shape, dtype=complex)
    if far.any():
        base[far] = _log_G_far(z0[far], w)
    near = ~far
    if near.any():
        base[near] = log_G_strip(z0[near], ctx)
    return acc + base


def log_G(z, ctx):
    """log G at scalar or array arguments (principal-branch pieces
    summed along the shift path; consumers exponentiate)."""
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    flat = zs.ravel()
    res = np.empty(flat.shape, dtype=complex)
    ims = np.round(flat.imag, 12)
    for im in np.unique(ims):
        sel = ims == im
        res[sel] = log_G_line(flat[sel].real, float(im), ctx)
    out = res.reshape(zs.shape)
    return complex(out.flat[0]) if scalar else out


def G(z, ctx):
    """G itself; raises on overflow rather than returning inf."""
    lg = log_G(z, ctx)
    mag = np.max(np.atleast_1d(np.asarray(lg)).real)
    if mag > 700.0:
        raise QuadError("G overflow; keep log scale", log_magnitude=mag)
    return np.exp(lg)


def theta_kernel(t, u, lam, mu, ctx):
    """Connector kernel

    Theta(t,u,lam,mu) = e^{-pi i w t u} / (1 - e^{2 pi i w (t+u+lam+mu)})
      * G(i(ob+t)) G(i(ob+u)) G(i(ob+t+u+lam+mu))
      / [G(i(ob+t+lam)) G(i(ob+t+mu)) G(i(ob+u+lam)) G(i(ob+u+mu))],

    symmetric in (t, u).  Assembled in log scale."""
    w = ctx.p.omega
    ob = ctx.omega_bar
    s = t + u + lam + mu
    den = 1.0 - np.exp(2j * math.pi * w * s)
    if abs(den) < 1e-12:
        raise QuadError("theta kernel pole", s=s)
    logs = (log_G(1j * (ob + t), ctx)
            + log_G(1j * (ob + u), ctx)
            + log_G(1j * (ob + s), ctx)
            - log_G(1j * (ob + t + lam), ctx)
            - log_G(1j * (ob + t + mu), ctx)
            - log_G(1j * (ob + u + lam), ctx)
            - log_G(1j * (ob + u + mu), ctx))
    return np.exp(logs - 1j * math.pi * w * t * u) / den
