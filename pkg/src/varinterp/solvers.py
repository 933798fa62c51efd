"""Trial-frequency optimization and weak-coefficient inference.

`find_omega` locates the stationary trial frequency of a reexpanded series
(turning points as fallback when no extremum exists).  `infer_coefficients`
runs the algorithm backwards: given leading strong-coupling coefficients, it
solves for unknown high-order weak coefficients together with the growth
constant c by damped Newton iteration on an analytic Jacobian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import strong_limit
from .errors import NoCandidate, NoConvergence, NoExtremum, SingularJacobian
from .reexpand import TrialFunction, build_trial
from .series import LaurentPoly, ScalingLaw, WeakSeries

__all__ = [
    "FrequencyResult",
    "InferenceProblem",
    "InferenceSolution",
    "GridPoint",
    "find_omega",
    "infer_coefficients",
    "extend_model",
    "interpolate_series",
    "interpolant",
]


@dataclass(frozen=True)
class FrequencyResult:
    Omega: float
    kind: str  # "extremum" | "turning_point"
    candidates: int


def _sign(x: float) -> int | None:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return None


def _scan_grid(lo: float, hi: float, points: int = 400) -> list[float]:
    return [lo * (hi / lo) ** (i / (points - 1)) for i in range(points)]


def _bracketed_roots(f, grid: list[float]) -> list[float]:
    vals = [f(x) for x in grid]
    roots = []
    for x0, x1, f0, f1 in zip(grid, grid[1:], vals, vals[1:]):
        if f0 == 0.0:
            roots.append(x0)
        elif f0 * f1 < 0:
            a, b, fa = x0, x1, f0
            for _ in range(200):
                m = 0.5 * (a + b)
                fm = f(m)
                if fm == 0.0:
                    a = b = m
                    break
                if fa * fm < 0:
                    b = m
                else:
                    a, fa = m, fm
                if b - a <= 1e-16 * b:
                    break
            roots.append(0.5 * (a + b))
    if vals and vals[-1] == 0.0:
        roots.append(grid[-1])
    return roots


def find_omega(
    t: TrialFunction,
    alpha: float,
    c_hint: float | None = None,
    curvature: int | None = None,
) -> FrequencyResult:
    """Stationary trial frequency for one coupling value.

    `curvature`, when given, is the sign of b0''(c) at the optimal growth
    constant; only extrema whose second derivative carries that sign continue
    into the strong-coupling limit, so candidates are filtered by it before
    the smallest positive one is taken.
    """
    if alpha < 0:
        raise ValueError(f"coupling must be nonnegative, got {alpha}")
    w = t.omega
    if alpha == 0.0:
        return FrequencyResult(Omega=w, kind="extremum", candidates=1)
    hi = 10.0 * w
    if c_hint is not None and alpha > 0:
        hi = max(hi, 10.0 * c_hint * alpha ** (1.0 / float(t.law.q)))
    else:
        hi = max(hi, 10.0 * alpha ** (1.0 / float(t.law.q)))
    grid = _scan_grid(1e-3 * w, hi)

    # turning points split the window into monotone pieces of dW/dOmega;
    # inserting them into the grid catches extremum pairs that straddle a
    # turning point more closely than the grid spacing (small-alpha regime)
    turning = _bracketed_roots(lambda x: t.deriv(alpha, x, 2), grid)
    fine = sorted(set(grid) | set(turning))
    roots = _bracketed_roots(lambda x: t.deriv(alpha, x, 1), fine)
    kind = "extremum"
    if not roots:
        roots = turning
        kind = "turning_point"
    if not roots:
        raise NoCandidate(f"no stationary point or turning point for alpha={alpha}")

    candidates = roots
    if kind == "extremum" and curvature is not None and len(roots) > 1:
        matching = [r for r in roots if t.deriv(alpha, r, 2) * curvature > 0]
        if matching:
            candidates = matching
    Omega = min(candidates)
    # Newton polish on the selecting derivative
    k = 1 if kind == "extremum" else 2
    for _ in range(40):
        d2 = t.deriv(alpha, Omega, 2) if k == 1 else _third_deriv(t, alpha, Omega)
        if d2 == 0.0:
            break
        step = t.deriv(alpha, Omega, k) / d2
        Omega -= step
        if abs(step) <= 1e-14 * Omega:
            break
    resid = abs(t.deriv(alpha, Omega, k))
    scale = t.deriv_scale(alpha, Omega, k)
    if resid > 1e-11 * max(scale, 1e-300):
        raise NoCandidate(
            f"stationary-point residual {resid:.3e} above certificate at alpha={alpha}"
        )
    return FrequencyResult(Omega=Omega, kind=kind, candidates=len(roots))


def _third_deriv(t: TrialFunction, alpha: float, Omega: float) -> float:
    # finite difference of the exact second derivative; only used to polish
    # turning points, whose certificate is on the second derivative itself
    h = 1e-6 * Omega
    return (t.deriv(alpha, Omega + h, 2) - t.deriv(alpha, Omega - h, 2)) / (2 * h)


@dataclass(frozen=True)
class InferenceProblem:
    known_a: tuple[Fraction, ...]
    unknown_count: int
    known_b: tuple[float, ...]
    law: ScalingLaw

    def __post_init__(self):
        if self.unknown_count < 1:
            raise ValueError("need at least one unknown coefficient")
        if len(self.known_b) != self.unknown_count:
            raise ValueError(
                "number of strong-coupling targets must equal the number of unknowns"
            )
        if not all(math.isfinite(b) for b in self.known_b):
            raise ValueError("strong-coupling targets must be finite")


@dataclass(frozen=True)
class InferenceSolution:
    extension: tuple[float, ...]
    c: float
    residuals: tuple[float, ...]
    iterations: int


def _basis_tables(p: InferenceProblem):
    """g[n][l], g'[n][l], g''[0][l] as Laurent polynomials in c."""
    k = len(p.known_a) - 1
    m = p.unknown_count
    N = k + m
    g: list[list[LaurentPoly]] = []
    gp: list[list[LaurentPoly]] = []
    for n in range(m):
        row = [strong_limit.coeff_basis_poly(l, N, p.law, n) for l in range(N + 1)]
        g.append(row)
        gp.append([q.diff() for q in row])
    gpp0 = [q.diff() for q in gp[0]]
    return g, gp, gpp0


def _newton_run(p: InferenceProblem, g, gp, gpp0, c0: float, max_iter: int = 200):
    k = len(p.known_a) - 1
    m = p.unknown_count
    N = k + m
    known = [float(a) for a in p.known_a]

    def full_a(z):
        return known + list(z[:m])

    def residual(z):
        a = full_a(z)
        c = z[m]
        F = []
        for n in range(m):
            F.append(sum(a[l] * _peval(g[n][l], c) for l in range(N + 1)) - p.known_b[n])
        F.append(sum(a[l] * _peval(gp[0][l], c) for l in range(N + 1)))
        return F

    def jacobian(z):
        a = full_a(z)
        c = z[m]
        J = []
        for n in range(m):
            row = [_peval(g[n][k + 1 + i], c) for i in range(m)]
            row.append(sum(a[l] * _peval(gp[n][l], c) for l in range(N + 1)))
            J.append(row)
        row = [_peval(gp[0][k + 1 + i], c) for i in range(m)]
        row.append(sum(a[l] * _peval(gpp0[l], c) for l in range(N + 1)))
        J.append(row)
        return J

    scale = [max(abs(b), 1.0) for b in p.known_b] + [1.0]

    def norm(F):
        return max(abs(f) / s for f, s in zip(F, scale))

    z = [0.0] * m + [c0]
    F = residual(z)
    best = norm(F)
    for it in range(1, max_iter + 1):
        if z[m] <= 0 or not all(math.isfinite(v) for v in z):
            break
        try:
            step = _solve_dense(jacobian(z), F)
        except SingularJacobian:
            break
        lam = 1.0
        improved = False
        for _ in range(30):
            trial = [zi - lam * si for zi, si in zip(z, step)]
            if trial[m] > 0:
                Ft = residual(trial)
                nt = norm(Ft)
                if nt < norm(F) or nt < 1e-15:
                    z, F = trial, Ft
                    improved = True
                    break
            lam *= 0.5
        if not improved:
            break
        best = min(best, norm(F))
        if norm(F) <= 1e-13:
            return z, F, it
    return None, best, max_iter


def _peval(poly: LaurentPoly, c: float) -> float:
    return 0.0 if poly.is_zero() else poly.eval(c)


def _solve_dense(J, F):
    """Gaussian elimination with partial pivoting for the tiny Newton system."""
    n = len(F)
    A = [row[:] + [F[i]] for i, row in enumerate(J)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(A[r][col]))
        if abs(A[piv][col]) < 1e-300:
            raise SingularJacobian("pivot vanished in Newton step")
        A[col], A[piv] = A[piv], A[col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            for cc in range(col, n + 1):
                A[r][cc] -= f * A[col][cc]
    x = [0.0] * n
    for r in range(n - 1, -1, -1):
        x[r] = (A[r][n] - sum(A[r][cc] * x[cc] for cc in range(r + 1, n))) / A[r][r]
    return x


def infer_coefficients(p: InferenceProblem) -> InferenceSolution:
    """Solve {b_n(c; a) = b_n*, db0/dc = 0} for the unknown coefficients and c.

    Multistart damped Newton; among converged solutions the one with the
    smallest positive c wins.
    """
    g, gp, gpp0 = _basis_tables(p)

    inits: list[float] = []
    try:
        prefix = WeakSeries(list(p.known_a) + [0] * p.unknown_count)
        inits.append(strong_limit.optimize_c(prefix, p.law).c)
    except (NoExtremum, ValueError):
        pass
    inits += [10.0 ** e for e in (-2, -1, 0, 1, 2)]

    solutions = []
    best_resid = math.inf
    for c0 in inits:
        z, F_or_best, its = _newton_run(p, g, gp, gpp0, c0)
        if z is None:
            best_resid = min(best_resid, F_or_best)
            continue
        c = z[p.unknown_count]
        if c > 0:
            if not any(abs(c - s[1]) <= 1e-8 * c for s in solutions):
                solutions.append((z, c, F_or_best, its))
    if not solutions:
        raise NoConvergence(
            f"Newton failed from all starting points (best residual {best_resid:.3e})",
            best_residual=best_resid,
        )
    z, c, F, its = min(solutions, key=lambda s: s[1])
    return InferenceSolution(
        extension=tuple(z[: p.unknown_count]),
        c=c,
        residuals=tuple(F),
        iterations=its,
    )


def extend_model(spec):
    """Infer the unknown tail coefficients of a builtin/user model.

    One unknown per known strong-coupling target; returns the extended spec
    together with the inference solution.
    """
    from dataclasses import replace

    problem = InferenceProblem(
        known_a=spec.weak.coeffs,
        unknown_count=len(spec.known_strong),
        known_b=tuple(spec.known_strong),
        law=spec.law,
    )
    sol = infer_coefficients(problem)
    extended = replace(spec, weak=spec.weak.extended(sol.extension))
    return extended, sol


@dataclass(frozen=True)
class GridPoint:
    alpha: float
    Omega: float
    value: float
    kind: str


def interpolate_series(
    weak: WeakSeries, law: ScalingLaw, omega: float, alphas
) -> list[GridPoint]:
    """find_omega + evaluation over a coupling grid (no prefactor handling)."""
    t = build_trial(weak, law, omega)
    try:
        sc = strong_limit.optimize_c(weak, law)
        c_hint = sc.c
        b0pp = sc.polys[0].diff().diff()
        curvature = _sign(b0pp.eval(sc.c)) if not b0pp.is_zero() else None
    except NoExtremum:
        c_hint = None
        curvature = None
    out = []
    for a in alphas:
        if a < 0:
            raise ValueError(f"grid values must be nonnegative, got {a}")
        r = find_omega(t, a, c_hint=c_hint, curvature=curvature)
        out.append(GridPoint(alpha=a, Omega=r.Omega, value=t.eval(a, r.Omega), kind=r.kind))
    return out


def interpolant(spec, couplings) -> list[GridPoint]:
    """Optimized approximant over a grid in the model's native coupling.

    The returned values carry the model's prefactor (e.g. the removed
    -alpha for the polaron energy); `alpha` in each point is the native
    coupling as supplied.
    """
    alphas = [spec.to_alpha(g) for g in couplings]
    pts = interpolate_series(spec.weak, spec.law, spec.omega, alphas)
    return [
        GridPoint(alpha=g, Omega=pt.Omega,
                  value=spec.apply_prefactor(pt.alpha, pt.value), kind=pt.kind)
        for g, pt in zip(couplings, pts)
    ]
