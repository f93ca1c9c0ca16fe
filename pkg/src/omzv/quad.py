"""Quadrature on vertical lines in the complex plane.

Every integral in this package runs along contours Re t = -epsilon (or a
product of such lines), with integrands analytic in a strip around the
contour and exponentially decaying along it.  Three evaluators:

  integrate_line      adaptive Gauss-Legendre panels on one line
  integrate_halfline  adaptive GL panels on [0, infinity)
  integrate_multi     tensor trapezoid grid over a few lines

plus a chain evaluator for iterated integrals whose stage-a integrand
couples T_a to T_{a-1} only through the difference T_a - T_{a-1} (the
cumulative-variable form of all the nested sums here).  On a shared
uniform imaginary grid each stage is one discrete convolution, so depth
r costs r convolutions instead of an r-dimensional tensor.

Uniform (trapezoid) steps are spectrally accurate for these integrands:
the error decays like exp(-2*pi*d/h) where d is the width of the
analyticity strip, in practice the contour-to-pole distance.  Error
estimates come from step doubling plus boundary-tail monitors and are
deliberately conservative.
"""

import functools
import heapq
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "QuadConfig",
    "EvalResult",
    "QuadError",
    "integrate_line",
    "integrate_halfline",
    "integrate_real_line",
    "integrate_multi",
    "ChainStage",
    "measure_kernel",
    "chain_grid",
    "chain_pass",
    "chain_line_integral",
]

TWO_PI = 2.0 * math.pi


class QuadError(Exception):
    """Raised when a contour integral cannot be evaluated as configured."""

    def __init__(self, message, **detail):
        super().__init__(message)
        self.detail = detail


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    half_width: float = 0.0      # manual truncation override; 0 = automatic
    panel_order: int = 16
    max_panels: int = 4000
    max_dim: int = 6
    margin: float = 6.0          # additive truncation margin
    strip_safety: float = 0.8    # usable fraction of the pole distance
    sharpness: float = 2.2       # grid-step log factor (step doubling headroom)
    max_nodes: int = 40_000_000  # tensor-grid point budget
    max_chain_nodes: int = 200_000

    def fingerprint(self):
        """Short string identifying everything that affects values."""
        return ("p%d,r%.3g,a%.3g,w%.3g,m%.3g,s%.3g,q%.3g"
                % (self.panel_order, self.rel_tol, self.abs_tol,
                   self.half_width, self.margin, self.strip_safety,
                   self.sharpness))


DEFAULT_CONFIG = QuadConfig()


@dataclass
class EvalResult:
    value: complex
    err_estimate: float
    meta: dict = field(default_factory=dict)

    def __complex__(self):
        return complex(self.value)


def _decay_pair(decay):
    if decay is None:
        raise QuadError("decay hint required")
    if isinstance(decay, (tuple, list)):
        dm, dp = float(decay[0]), float(decay[1])
    else:
        dm = dp = float(decay)
    if dm <= 0.0 or dp <= 0.0:
        raise QuadError("decay hint must be positive", decay=decay)
    return dm, dp


def _log_target(cfg):
    tol = max(min(cfg.rel_tol, cfg.abs_tol) * 1e-2, 1e-16)
    return math.log(1.0 / tol)


# ---------------------------------------------------------------------------
# Adaptive Gauss-Legendre panels

@functools.lru_cache(maxsize=None)
def _gl_nodes(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _gl_eval(g, a, b, order):
    x, w = _gl_nodes(order)
    half = 0.5 * (b - a)
    vals = g(0.5 * (a + b) + half * x)
    return half * complex(np.sum(w * vals))


def _adaptive_segments(g, a, b, cfg, osc):
    """Globally adaptive GL quadrature of g on [a, b].

    Returns (value, err, nodes).  Panel error is the defect between one
    GL pass and the two-half refinement; the worst panel is split until
    the summed defect meets the tolerance.
    """
    order = max(4, cfg.panel_order)
    width = b - a
    w0 = min(2.0, width)
    if osc and osc > 0:
        w0 = min(w0, 6.0 / osc)
    n0 = max(4, int(math.ceil(width / w0)))
    edges = np.linspace(a, b, n0 + 1)
    nodes = 0

    heap = []
    total = 0.0 + 0.0j
    total_err = 0.0
    counter = 0

    def make(pa, pb):
        nonlocal nodes, counter
        coarse = _gl_eval(g, pa, pb, order)
        mid = 0.5 * (pa + pb)
        left = _gl_eval(g, pa, mid, order)
        right = _gl_eval(g, mid, pb, order)
        nodes += 3 * order
        fine = left + right
        err = abs(fine - coarse)
        counter += 1
        return (-err, counter, pa, pb, fine, err)

    for i in range(n0):
        item = make(edges[i], edges[i + 1])
        heapq.heappush(heap, item)
        total += item[4]
        total_err += item[5]

    while True:
        target = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= target or not heap:
            break
        if len(heap) >= cfg.max_panels:
            raise QuadError(
                "quadrature did not converge",
                panel=(heap[0][2], heap[0][3]),
                err=total_err, target=target, panels=len(heap))
        _, _, pa, pb, fine, err = heapq.heappop(heap)
        total -= fine
        total_err -= err
        mid = 0.5 * (pa + pb)
        for qa, qb in ((pa, mid), (mid, pb)):
            item = make(qa, qb)
            heapq.heappush(heap, item)
            total += item[4]
            total_err += item[5]

    return total, total_err, nodes


def integrate_line(f, eps, cfg=None, decay=None, osc=0.0):
    """Integral of f over the contour Re t = -eps, upward orientation:
    value ~ i * int_R f(-eps + i u) du.

    f must accept a complex numpy array.  decay is the exponential decay
    rate of |f| along the contour, a scalar or a (minus, plus) pair for
    the u -> -inf / +inf ends.
    """
    cfg = cfg or DEFAULT_CONFIG
    dm, dp = _decay_pair(decay)
    ltol = _log_target(cfg)
    if cfg.half_width > 0.0:
        um = up = cfg.half_width
    else:
        um = ltol / dm + cfg.margin
        up = ltol / dp + cfg.margin

    def g(u):
        return f(-eps + 1j * np.asarray(u))

    total, err, nodes = _adaptive_segments(g, -um, up, cfg, osc)
    tail = (abs(complex(g(np.array([-um]))[0])) / dm
            + abs(complex(g(np.array([up]))[0])) / dp)
    return EvalResult(1j * total, err + tail,
                      {"eps": eps, "U": (um, up), "nodes": nodes})


def integrate_real_line(f, cfg=None, decay=None, osc=0.0):
    """Integral of f over the real axis, left to right.

    f must accept a real numpy array.  decay is the exponential decay
    rate of |f|, a scalar or a (minus, plus) pair for x -> -inf / +inf.
    """
    cfg = cfg or DEFAULT_CONFIG
    dm, dp = _decay_pair(decay)
    ltol = _log_target(cfg)
    if cfg.half_width > 0.0:
        um = up = cfg.half_width
    else:
        um = ltol / dm + cfg.margin
        up = ltol / dp + cfg.margin

    def g(u):
        return f(np.asarray(u))

    total, err, nodes = _adaptive_segments(g, -um, up, cfg, osc)
    tail = (abs(complex(g(np.array([-um]))[0])) / dm
            + abs(complex(g(np.array([up]))[0])) / dp)
    return EvalResult(total, err + tail, {"U": (um, up), "nodes": nodes})


def integrate_halfline(f, cfg=None, decay=None, osc=0.0):
    """Integral of f over [0, infinity) for exponentially decaying f."""
    cfg = cfg or DEFAULT_CONFIG
    _, dp = _decay_pair(decay)
    up = cfg.half_width if cfg.half_width > 0.0 else _log_target(cfg) / dp + cfg.margin

    def g(u):
        return f(np.asarray(u))

    total, err, nodes = _adaptive_segments(g, 0.0, up, cfg, osc)
    tail = abs(complex(g(np.array([up]))[0])) / dp
    return EvalResult(total, err + tail, {"U": up, "nodes": nodes})


# ---------------------------------------------------------------------------
# Tensor trapezoid grid over several lines

def _axis_grid(eps, cfg, dm, dp, pole_dist):
    d = (pole_dist if pole_dist else eps) * cfg.strip_safety
    if d <= 0.0:
        raise QuadError("pole distance must be positive", eps=eps)
    L = cfg.sharpness * math.log(1.0 / max(cfg.rel_tol, 1e-15))
    h = TWO_PI * d / L
    ltol = _log_target(cfg)
    if cfg.half_width > 0.0:
        ym = yp = cfg.half_width
    else:
        ym = ltol / dm + cfg.margin
        yp = ltol / dp + cfg.margin
    nm = int(math.ceil(ym / h / 2.0)) * 2
    np_ = int(math.ceil(yp / h / 2.0)) * 2
    ys = h * np.arange(-nm, np_ + 1)
    return h, ys


def integrate_multi(f, eps_list, cfg=None, decays=None, pole_dist=None):
    """Iterated integral over the product of lines Re t_a = -eps_a.

    f(t_1, ..., t_d) must broadcast over numpy arrays.  decays is one
    hint (scalar or (minus, plus)) per axis.  Evaluated as an iterated
    trapezoid sum, innermost axis first, with a step-doubled error
    estimate.
    """
    cfg = cfg or DEFAULT_CONFIG
    dim = len(eps_list)
    if dim == 0:
        return EvalResult(1.0 + 0.0j, 0.0, {"dim": 0})
    if dim > cfg.max_dim:
        raise QuadError("dimension above configured maximum",
                        dim=dim, max_dim=cfg.max_dim)
    if decays is None or len(decays) != dim:
        raise QuadError("one decay hint per axis required")

    axes = []
    for a in range(dim):
        dm, dp = _decay_pair(decays[a])
        h, ys = _axis_grid(eps_list[a], cfg, dm, dp, pole_dist)
        axes.append((h, ys))

    npts = 1
    for h, ys in axes:
        npts *= len(ys)
    if npts > cfg.max_nodes:
        raise QuadError("tensor grid above node budget; use the chain "
                        "evaluator", nodes=npts)

    def tensor_sum(grids):
        arrs = []
        for a, (h, ys) in enumerate(grids):
            shape = [1] * dim
            shape[a] = len(ys)
            arrs.append((-eps_list[a] + 1j * ys).reshape(shape))
        # chunk the first axis to bound memory
        n0 = arrs[0].shape[0]
        block = max(1, int(4_000_000 // max(1, npts // max(n0, 1))))
        acc = 0.0 + 0.0j
        for i0 in range(0, n0, block):
            sub = [arrs[0][i0:i0 + block]] + arrs[1:]
            acc += complex(np.sum(f(*sub)))
        return acc

    s_fine = tensor_sum(axes)
    coarse = [(2 * h, ys[::2]) for h, ys in axes]
    s_coarse = tensor_sum(coarse)
    scale_f = np.prod([h for h, _ in axes])
    scale_c = np.prod([h for h, _ in coarse])
    v_fine = (1j ** dim) * scale_f * s_fine
    v_coarse = (1j ** dim) * scale_c * s_coarse
    err = abs(v_fine - v_coarse) + cfg.abs_tol
    meta = {"dim": dim, "eps": tuple(eps_list),
            "nodes": npts, "h": tuple(h for h, _ in axes)}
    return EvalResult(v_fine, err, meta)


# ---------------------------------------------------------------------------
# Convolution chains for iterated cumulative integrals

@dataclass(frozen=True)
class ChainStage:
    """One stage of an iterated integral in cumulative variables.

    cum:  kernel evaluated at the cumulative point T_a (None = 1)
    diff: kernel evaluated at the difference T_a - T_{a-1}; None means
          the standard measure 1/(e^{2 pi i t} - 1).
    """
    cum: object = None
    diff: object = None


def measure_kernel(delta):
    return 1.0 / (np.exp(TWO_PI * 1j * delta) - 1.0)


def chain_grid(eps, cfg, decay_plus, nstages, pole_dist=None):
    """Shared imaginary grid (h, ys) for a chain of nstages stages.

    The minus-side rate is always at least 2*pi (from the measure); the
    plus side uses the caller's hint plus one guard band per stage for
    kernels that do not decay upward until a later stage does.
    """
    dp = float(decay_plus)
    if dp <= 0.0:
        raise QuadError("decay hint must be positive", decay=decay_plus)
    d = (pole_dist if pole_dist else eps) * cfg.strip_safety
    if d <= 0.0:
        raise QuadError("pole distance must be positive", eps=eps)
    L = cfg.sharpness * math.log(1.0 / max(cfg.rel_tol, 1e-15))
    h = TWO_PI * d / L
    ltol = _log_target(cfg)
    guard = ltol / TWO_PI
    ym = ltol / TWO_PI + cfg.margin + guard
    yp = ltol / dp + cfg.margin + guard * max(0, nstages - 1)
    nm = int(math.ceil(ym / h / 2.0)) * 2
    npl = int(math.ceil(yp / h / 2.0)) * 2
    if nm + npl + 1 > cfg.max_chain_nodes:
        raise QuadError("chain grid above node budget", nodes=nm + npl + 1)
    ys = h * np.arange(-nm, npl + 1)
    return h, ys


def chain_pass(stages, eps, h, ys):
    """Run the convolution chain on the given grid.

    Returns chi, the stage-r integrand accumulated on the line
    Re T_r = -r*eps: the final integral is i^r * h * chi.sum() (times
    any caller prefactor).
    """
    n = len(ys)
    ydiff = h * np.arange(-(n - 1), n)
    chi = None
    for a, st in enumerate(stages, start=1):
        line = (-a * eps) + 1j * ys
        if chi is None:
            dline = (-eps) + 1j * ys
            dvals = st.diff(dline) if st.diff else measure_kernel(dline)
            chi = dvals
        else:
            dgrid = (-eps) + 1j * ydiff
            dvals = st.diff(dgrid) if st.diff else measure_kernel(dgrid)
            chi = h * np.convolve(chi, dvals)[n - 1:2 * n - 1]
        if st.cum is not None:
            chi = chi * st.cum(line)
    return chi


def chain_line_integral(stages, eps, cfg=None, decay_plus=None,
                        pole_dist=None, prefactor=1.0, grid=None,
                        state=False):
    """Iterated integral prod_a int dT_a diff_a(T_a - T_{a-1}) cum_a(T_a)
    over the lines Re T_a = -a*eps, evaluated by chained convolutions.

    With state=True the fine-grid chi array is returned in meta["state"]
    (no step doubling; the caller owns the error estimate).
    """
    cfg = cfg or DEFAULT_CONFIG
    r = len(stages)
    if r == 0:
        return EvalResult(complex(prefactor), 0.0, {"dim": 0})
    if r > cfg.max_dim:
        raise QuadError("dimension above configured maximum",
                        dim=r, max_dim=cfg.max_dim)
    if grid is None:
        h, ys = chain_grid(eps, cfg, decay_plus, r, pole_dist)
    else:
        h, ys = grid

    chi = chain_pass(stages, eps, h, ys)
    value = complex(prefactor) * (1j ** r) * h * chi.sum()
    dp = float(decay_plus) if decay_plus else TWO_PI
    tail = abs(prefactor) * (abs(chi[0]) / TWO_PI + abs(chi[-1]) / dp)
    meta = {"dim": r, "eps": eps, "h": h, "nodes": len(ys),
            "U": (float(-ys[0]), float(ys[-1]))}
    if state:
        meta["state"] = {"h": h, "ys": ys, "chi": chi, "shift": r * eps}
        return EvalResult(value, tail + cfg.abs_tol, meta)

    chi_c = chain_pass(stages, eps, 2 * h, ys[::2])
    value_c = complex(prefactor) * (1j ** r) * (2 * h) * chi_c.sum()
    err = abs(value - value_c) + tail + cfg.abs_tol
    return EvalResult(value, err, meta)
