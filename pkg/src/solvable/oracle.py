"""Independent numerical verification kernels.

Two tools, deliberately decoupled from the symbolic pipeline so they can
serve as oracles for it:

* composite 16-point Gauss-Legendre quadrature with worst-panel
  refinement and geometric truncation-window expansion for infinite
  endpoints (panel error from the embedded 8-point rule, tail error from
  the measured geometric decay of successive window blocks);

* a three-point finite-difference Hamiltonian -d^2/dx^2 + V(x) with
  Dirichlet (or ratio-matched) boundaries, whose eigenvalues are located
  by Sturm-sequence counting plus bisection, so the count of eigenvalues
  below any shift is exact.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, QuadratureNoConverge, SingularPoint
from .expr import Expr, differentiate, evaluate, simplify

__all__ = [
    "QuadResult", "integrate", "FDHamiltonian", "fd_hamiltonian",
    "fd_hamiltonian_indicial", "sturm_count", "eigenvalues_below",
    "richardson_eigenvalues", "residual_norm", "residual_grid",
]

_GL16 = np.polynomial.legendre.leggauss(16)
_GL8 = np.polynomial.legendre.leggauss(8)


def _as_array_function(f):
    """Accept Exprs, vectorized callables, and plain scalar callables."""
    if isinstance(f, Expr):
        return lambda xs: evaluate(f, xs)
    probe = np.array([0.5, 0.75])
    try:
        with np.errstate(all="ignore"):
            out = np.asarray(f(probe), dtype=float)
        if out.shape == probe.shape:
            return f
    except Exception:
        pass
    return lambda xs: np.array([float(f(float(x))) for x in np.asarray(xs)])


def _panel(f, a, b):
    """16-point value and |GL16 - GL8| error estimate on [a, b]."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    y16 = np.asarray(f(mid + half * _GL16[0]), dtype=float)
    y8 = np.asarray(f(mid + half * _GL8[0]), dtype=float)
    v16 = half * float(np.dot(_GL16[1], y16))
    v8 = half * float(np.dot(_GL8[1], y8))
    if not (np.all(np.isfinite(y16)) and np.all(np.isfinite(y8))):
        return v16, math.inf
    return v16, abs(v16 - v8)


@dataclass
class QuadResult:
    value: float
    error_estimate: float
    nodes: int
    window: tuple = (0.0, 0.0)

    def __iter__(self):  # allow value, err = integrate(...)
        return iter((self.value, self.error_estimate))


class _PanelHeap:
    """Max-heap on panel error with deterministic tie-breaking."""

    def __init__(self):
        self._heap = []
        self._counter = 0
        self.value = 0.0
        self.abs_value = 0.0
        self.error = 0.0
        self.nodes = 0

    def push(self, f, a, b):
        v, e = _panel(f, a, b)
        self.value += v
        self.abs_value += abs(v)
        self.error += e
        self.nodes += 24
        heapq.heappush(self._heap, (-e, self._counter, a, b, v))
        self._counter += 1
        return v, e

    def worst_error(self):
        return -self._heap[0][0] if self._heap else 0.0

    def refine_worst(self, f):
        neg_e, _, a, b, v = heapq.heappop(self._heap)
        self.value -= v
        self.abs_value -= abs(v)
        self.error += neg_e  # neg_e == -e
        mid = 0.5 * (a + b)
        self.push(f, a, mid)
        self.push(f, mid, b)


def integrate(f, interval, tol: float = 1e-10, rtol: float | None = None,
              max_nodes: int = 1 << 20) -> QuadResult:
    """Integrate f over the (possibly infinite) interval.

    Convergence target is max(tol, rtol * |integral|) with rtol
    defaulting to tol, so large-magnitude integrals are held to relative
    accuracy.  Finite endpoints are used as given; infinite sides are
    truncated by marching geometrically growing blocks until their
    contribution is negligible and decaying.  Raises QuadratureNoConverge
    when the error estimate still exceeds the target at the refinement
    cap.  Gauss nodes are strictly interior, so integrable endpoint
    singularities are allowed.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if rtol is None:
        rtol = tol
    f = _as_array_function(f)
    heap = _PanelHeap()

    if math.isinf(lo) and math.isinf(hi):
        core = (-1.0, 1.0)
    elif math.isinf(hi):
        core = (lo, lo + 1.0)
    elif math.isinf(lo):
        core = (hi - 1.0, hi)
    else:
        core = (lo, hi)
    for k in range(4):
        a = core[0] + (core[1] - core[0]) * k / 4.0
        heap.push(f, a, a + (core[1] - core[0]) / 4.0)

    tail_error = 0.0
    window = list(core)

    def target():
        return max(tol, rtol * abs(heap.value))

    def march(side):  # side = +1 (toward hi) or -1 (toward lo)
        nonlocal tail_error
        width = core[1] - core[0]
        edge = window[1] if side > 0 else window[0]
        prev = None
        quiet = 0
        for _ in range(70):
            a, b = (edge, edge + width) if side > 0 else (edge - width, edge)
            v, _e = heap.push(f, a, b)
            edge = b if side > 0 else a
            # stop once three consecutive blocks are negligible and the
            # measured block-to-block decay bounds the remaining tail
            # (a single small block may just straddle a sign change)
            if prev is not None and prev > 0 and abs(v) > 0:
                ratio = abs(v) / prev
            else:
                ratio = 0.0 if abs(v) == 0.0 else 0.5
            tail = abs(v) * ratio / (1.0 - ratio) if ratio < 0.9 else math.inf
            if abs(v) <= target() / 8.0 and tail <= target() / 8.0:
                quiet += 1
                if quiet >= 3:
                    tail_error += tail
                    break
            else:
                quiet = 0
            if abs(v) > 0:
                prev = abs(v)
            width *= 2.0
        else:
            tail_error = math.inf
        if side > 0:
            window[1] = edge
        else:
            window[0] = edge

    if math.isinf(hi):
        march(+1)
    if math.isinf(lo):
        march(-1)

    while heap.error + tail_error > target() / 2.0 and heap.nodes < max_nodes:
        if heap.worst_error() <= 6e-17 * heap.abs_value:
            break  # refinement is below the double-precision floor
        heap.refine_worst(f)

    err = heap.error + tail_error
    if not math.isfinite(err) or err > max(target(),
                                           1e-14 * heap.abs_value):
        raise QuadratureNoConverge(
            f"error estimate {err:.3g} exceeds target {target():.3g} "
            f"after {heap.nodes} nodes")
    return QuadResult(heap.value, err, heap.nodes, tuple(window))


# --- finite-difference Hamiltonian ---------------------------------------

@dataclass(frozen=True)
class FDHamiltonian:
    """Symmetric tridiagonal discretization of -d^2/dx^2 + V with
    Dirichlet walls at x_lo and x_hi; n is the subinterval count.

    left_ratio r imposes u_0 = r * u_1 instead of u_0 = 0, which matches
    a known power-law behavior at a singular left endpoint.
    """

    x_lo: float
    x_hi: float
    n: int
    grid: np.ndarray = field(repr=False)
    h: float
    diag: np.ndarray = field(repr=False)
    off: float


def fd_hamiltonian(potential, x_lo: float, x_hi: float, n: int,
                   left_ratio: float = 0.0) -> FDHamiltonian:
    if n < 16:
        raise ValueError("need at least 16 subintervals")
    h = (x_hi - x_lo) / n
    grid = x_lo + h * np.arange(1, n)
    v = _as_array_function(potential)(grid)
    diag = 2.0 / h ** 2 + np.asarray(v, dtype=float)
    diag = diag.copy()
    diag[0] -= left_ratio / h ** 2
    return FDHamiltonian(x_lo, x_hi, n, grid, h, diag, -1.0 / h ** 2)


def fd_hamiltonian_indicial(regular_potential, gamma: float,
                            x_lo: float, x_hi: float, n: int,
                            left_ratio: float = 0.0) -> FDHamiltonian:
    """FD Hamiltonian for V(r) = W(r) + gamma(gamma-1)/r^2 with the
    singular part discretized by the curvature of its own indicial
    solution r^gamma, so the stencil is exact on r^gamma.

    This tames (but cannot eliminate) the systematic error a uniform
    grid makes across the r^gamma cusp of a limit-circle endpoint.
    """
    if n < 16:
        raise ValueError("need at least 16 subintervals")
    h = (x_hi - x_lo) / n
    grid = x_lo + h * np.arange(1, n)
    w = np.asarray(_as_array_function(regular_potential)(grid), dtype=float)
    sing = ((grid - h) ** gamma - 2.0 * grid ** gamma
            + (grid + h) ** gamma) / (h * h * grid ** gamma)
    diag = 2.0 / h ** 2 + w + sing
    diag[0] -= left_ratio / h ** 2
    return FDHamiltonian(x_lo, x_hi, n, grid, h, diag, -1.0 / h ** 2)


def sturm_count(ham: FDHamiltonian, shifts):
    """Number of eigenvalues strictly below each shift (exact count via
    the sign changes of the Sturm sequence)."""
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    off2 = ham.off * ham.off
    q = ham.diag[0] - shifts
    count = (q < 0.0).astype(np.int64)
    tiny = 1e-290
    for d in ham.diag[1:]:
        q = np.where(q == 0.0, -tiny, q)
        q = (d - shifts) - off2 / q
        count += q < 0.0
    return count


def eigenvalues_below(ham: FDHamiltonian, e_max: float,
                      rtol: float = 1e-10) -> list:
    """All eigenvalues below e_max, each bracketed by Sturm counts and
    polished by bisection to rtol * max(1, |E|)."""
    k = int(sturm_count(ham, e_max)[0])
    if k == 0:
        return []
    lo0 = float(np.min(ham.diag)) + 2.0 * ham.off  # Gershgorin lower bound
    lo = np.full(k, lo0)
    hi = np.full(k, float(e_max))
    idx = np.arange(k)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        below = sturm_count(ham, mid) >= idx + 1
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
        if np.all(hi - lo <= rtol * np.maximum(1.0, np.abs(mid))):
            break
    return [float(v) for v in 0.5 * (lo + hi)]


def richardson_eigenvalues(potential, x_lo, x_hi, n, e_max,
                           left_ratio=0.0):
    """Raw eigenvalues at n and n/2 plus their h^2 Richardson combination
    (4 E_n - E_{n/2}) / 3, reported for the common low-lying states."""
    fine = eigenvalues_below(
        fd_hamiltonian(potential, x_lo, x_hi, n, left_ratio), e_max)
    coarse = eigenvalues_below(
        fd_hamiltonian(potential, x_lo, x_hi, n // 2, left_ratio), e_max)
    m = min(len(fine), len(coarse))
    extrap = [(4.0 * fine[i] - coarse[i]) / 3.0 for i in range(m)]
    return fine[:m], coarse[:m], extrap


# --- residual of candidate eigenpairs -------------------------------------

def residual_grid(interval, n: int = 400, clamp: float = 1e-3):
    """Evaluation grid clamped strictly inside the interval.

    Infinite ends default to |x| <= 10 (or 30 on half lines); a left
    endpoint at 0 is clamped to ``clamp`` because generated systems carry
    genuine 1/r^2 terms there.
    """
    lo, hi = interval
    if math.isinf(lo) and math.isinf(hi):
        return np.linspace(-10.0, 10.0, n)
    if math.isinf(hi):
        lo_c = lo + clamp if lo == 0.0 else lo + 1e-6 * max(1.0, abs(lo))
        return np.linspace(lo_c, lo + 30.0, n)
    if math.isinf(lo):
        hi_c = hi - 1e-6 * max(1.0, abs(hi))
        return np.linspace(hi - 30.0, hi_c, n)
    eps = 1e-6 * (hi - lo)
    return np.linspace(lo + eps, hi - eps, n)


def residual_norm(system, pair=None, n: int = 400) -> float:
    """max over a clamped grid of |(-psi'' + V psi - lam psi)| / (1 + |lam psi|).

    ``system`` needs ``potential`` (Expr) and ``interval`` attributes;
    ``pair`` is (lam, psi_expr), an index into known eigenpairs, or None
    for a generated system carrying its own (energy, psi).
    """
    if pair is None:
        lam, psi = system.energy, system.psi
    elif isinstance(pair, int):
        lam, psi = system.known_eigenpairs[pair]
    else:
        lam, psi = pair
    xs = residual_grid(system.interval, n)
    psi2 = differentiate(simplify(differentiate(simplify(psi))))
    try:
        pv = evaluate(psi, xs)
        vals = -evaluate(psi2, xs) + evaluate(system.potential, xs) * pv \
            - lam * pv
        scale = 1.0 + np.abs(lam * pv)
    except DomainError as exc:
        raise SingularPoint(str(exc)) from exc
    return float(np.max(np.abs(vals) / scale))
