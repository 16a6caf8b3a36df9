"""Characteristic polynomials, their derivatives, roots and eigenvalue multiplicities.

Convention throughout: ``P(t) = det(A - t I) = sum(a_k * t**k)``, so the
leading coefficient is ``(-1)**n`` and ``a_0 = det A``.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .compound import adjugate_trace, higher_adjugate
from .errors import ConvergenceError, DomainError, RankError, ShapeError
from .matrix import Matrix, rank
from .scalars import EXACT, FLOAT, QQi, TolerancePolicy, to_scalar

__all__ = [
    "CharPoly",
    "SpectrumEntry",
    "EIGEN_TOL",
    "charpoly_via_adjugates",
    "charpoly_faddeev",
    "jacobi_derivative",
    "poly_derivative_eval",
    "aberth_roots",
    "cluster_multiplicities",
    "refine_cluster",
    "polish_on_matrix",
    "geometric_multiplicity",
    "adjugate_vanishes",
    "rational_roots",
    "spectrum",
    "is_algebraically_simple",
]

# Rank and zero decisions at an approximate eigenvalue need more room than
# the generic default: the shift A - lam I is only singular to within the
# eigenvalue error.
EIGEN_TOL = TolerancePolicy(relative_eps=1e-8)


@dataclass(frozen=True)
class CharPoly:
    """Coefficients ``a_0 .. a_n`` of ``P(t) = det(A - t I)``."""

    coeffs: tuple
    mode: str

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        return poly_derivative_eval(self, 0, t)

    def derivative_coeffs(self, j: int) -> tuple:
        if j < 0:
            raise DomainError(f"derivative order must be >= 0, got {j}")
        return tuple(self.coeffs[k] * (factorial(k) // factorial(k - j)) for k in range(j, len(self.coeffs)))

    def to_mode(self, mode: str) -> "CharPoly":
        return CharPoly(tuple(to_scalar(c, mode) for c in self.coeffs), mode)


@dataclass(frozen=True)
class SpectrumEntry:
    eigenvalue: object
    algebraic_multiplicity: int
    geometric_multiplicity: int
    cluster_radius: float


def _square(A: Matrix) -> int:
    if not A.is_square:
        raise DomainError(f"expected a square matrix, got {A.shape}")
    return A.nrows


def charpoly_via_adjugates(A: Matrix) -> CharPoly:
    """a_k = (-1)**k tr adj_k(A), with adj_0 = [det A] and adj_n = [1]."""
    n = _square(A)
    coeffs = []
    for k in range(n + 1):
        t = adjugate_trace(A, k)
        coeffs.append(-t if k % 2 else t)
    return CharPoly(tuple(coeffs), A.mode)


def charpoly_faddeev(A: Matrix) -> CharPoly:
    """Faddeev-LeVerrier trace recursion; independent of any minor computation."""
    n = _square(A)
    # c_k are the coefficients of det(t I - A); P(t) = (-1)**n times that.
    c = [to_scalar(0, A.mode)] * (n + 1)
    c[n] = to_scalar(1, A.mode)
    M = Matrix.zeros(n, n, A.mode)
    eye = Matrix.identity(n, A.mode)
    for k in range(1, n + 1):
        M = A @ M + eye.scale(c[n - k + 1])
        c[n - k] = -(A @ M).trace() / k
    sign = -1 if n % 2 else 1
    return CharPoly(tuple(x * sign for x in c), A.mode)


def jacobi_derivative(A: Matrix, lam, j: int):
    """P^(j)(lam) = (-1)**j * j! * tr adj_j(A - lam I)."""
    n = _square(A)
    if not 1 <= j <= n:
        raise DomainError(f"derivative order {j} outside 1..{n}")
    t = adjugate_trace(A.shift(lam), j)
    return t * ((-1) ** j * factorial(j))


def poly_derivative_eval(p: CharPoly, j: int, lam):
    """P^(j)(lam) by coefficient differentiation and Horner's rule."""
    if j < 0:
        raise DomainError(f"derivative order must be >= 0, got {j}")
    lam = to_scalar(lam, p.mode)
    if j > p.degree:
        return to_scalar(0, p.mode)
    acc = to_scalar(0, p.mode)
    for c in reversed(p.derivative_coeffs(j)):
        acc = acc * lam + c
    return acc


def is_algebraically_simple(A: Matrix, lam, tol: TolerancePolicy = EIGEN_TOL) -> bool:
    """lam simple  <=>  P'(lam) != 0  <=>  tr adj(A - lam I) != 0."""
    t = adjugate_trace(A.shift(lam), 1)
    if A.exact:
        return bool(t)
    n = A.nrows
    ref = max(A.max_abs(), abs(lam), 1.0)
    return abs(t) > tol.threshold(n * ref ** (n - 1))


# -- roots ---------------------------------------------------------------------


def _horner2(coeffs, z):
    """Value and first derivative at z; coeffs low to high."""
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth_roots(p: CharPoly, tol: float = 1e-12, max_iter: int = 500, polish: int = 5) -> list[complex]:
    """All roots of ``p`` with multiplicity, by simultaneous Aberth-Ehrlich iteration.

    Converged when every iterate satisfies
    ``|P(z)| <= tol * (1 + |z|)**n * max|a_k|``.  Sweeps then continue until
    the step sizes stop shrinking for ``polish`` consecutive sweeps, which
    matters for multiple roots where the residual test is met early.
    """
    coeffs = [complex(c) for c in p.coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        raise DomainError("polynomial of degree < 1 has no roots to find")
    lead = coeffs[-1]
    if n == 1:
        return [-coeffs[0] / lead]
    amax = max(abs(c) for c in coeffs)
    radius = 1.0 + max(abs(c / lead) for c in coeffs[:-1])
    z = [radius * cmath.exp(1j * (2 * math.pi * i / n + 0.4)) for i in range(n)]

    def residual(zs):
        return max(abs(_horner2(coeffs, zi)[0]) / ((1 + abs(zi)) ** n * amax) for zi in zs)

    def sweep() -> float:
        step = 0.0
        for i in range(n):
            val, der = _horner2(coeffs, z[i])
            if val == 0:
                continue
            if der == 0:
                # stationary point: nudge off it deterministically
                delta = 1e-8 * (1 + abs(z[i]))
            else:
                s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
                ratio = val / der
                denom = 1 - ratio * s
                delta = ratio / denom if denom != 0 else ratio
            z[i] -= delta
            step = max(step, abs(delta) / (1 + abs(z[i])))
        return step

    best, best_res = list(z), residual(z)
    it = 0
    while it < max_iter:
        res = residual(z)
        if res < best_res:
            best, best_res = list(z), res
        if res <= tol:
            break
        sweep()
        it += 1
    else:
        raise ConvergenceError(
            f"Aberth iteration did not converge in {max_iter} sweeps (residual {best_res:.3e})",
            best=best,
            residual=best_res,
        )
    smallest, stale = math.inf, 0
    while it < max_iter and stale < polish:
        step = sweep()
        it += 1
        if step <= 1e-16:
            break
        if step < 0.9 * smallest:
            smallest, stale = step, 0
        else:
            stale += 1
    if residual(z) > tol:
        z = best
    return list(z)


def _cluster(roots, cluster_tol: float, bound=None):
    """Split roots into clusters.

    A group of m roots is accepted as one cluster when its radius about the
    centroid is at most ``scale * cluster_tol ** (2 / m)``: an m-fold root
    splits like eps**(1/m), so larger groups may spread wider.
    ``bound(c, m, others)`` may widen that allowance to a polynomial-specific
    estimate.  Groups are grown from each seed by nearest neighbours and
    taken largest first.
    """
    scale = max([1.0] + [abs(r) for r in roots])
    remaining = list(roots)
    groups = []
    while remaining:
        best = None
        for i, seed in enumerate(remaining):
            order = sorted(range(len(remaining)), key=lambda j: (abs(remaining[j] - seed), j))
            for m in range(len(remaining), 1, -1):
                if best is not None and m < best[0]:
                    break
                members = order[:m]
                pts = [remaining[j] for j in members]
                c = sum(pts) / m
                rad = max(abs(x - c) for x in pts)
                allowed = scale * cluster_tol ** (2 / m)
                if bound is not None and rad > allowed:
                    others = [r for g in groups for r in g] + [remaining[j] for j in order[m:]]
                    allowed = max(allowed, bound(c, m, others))
                if rad <= allowed:
                    if best is None or m > best[0] or rad < best[1]:
                        best = (m, rad, members)
                    break
        if best is None:
            groups.extend([r] for r in remaining)
            break
        members = set(best[2])
        groups.append([remaining[j] for j in sorted(members)])
        remaining = [r for j, r in enumerate(remaining) if j not in members]
    return groups


def coefficient_noise(p: CharPoly, other: CharPoly | None = None) -> list[float]:
    """Absolute error estimate for each coefficient of a float polynomial.

    A rounding term proportional to the coefficient, plus the disagreement
    with ``other`` when an independently computed copy is supplied.
    """
    a = [complex(c) for c in p.coeffs]
    unit = 4 * len(a) * sys.float_info.epsilon
    noise = [unit * abs(c) for c in a]
    if other is not None:
        noise = [e + abs(x - complex(y)) for e, x, y in zip(noise, a, other.coeffs)]
    return noise


def root_spread_bound(p: CharPoly, noise, gamma: float = 4.0):
    """``bound(c, members, others)``: how far the roots of a cluster may scatter.

    Perturbing the coefficients by ``noise`` moves an m-fold root c by about
    ``(E(c) / |a_n prod(c - r)|) ** (1/m)``, the product over the roots outside
    the cluster and ``E(c) = sum noise_k |c|**k``.  ``gamma`` leaves room for
    the iteration settling anywhere in that ball.  The allowance never exceeds
    half the distance to the nearest outside root.
    """
    lead = abs(complex(p.coeffs[-1]))

    def bound(c, m, others):
        gaps = [abs(c - r) for r in others]
        d = lead * math.prod(gaps)
        if d == 0:
            return 0.0
        err = sum(e * abs(c) ** k for k, e in enumerate(noise))
        allowed = gamma * (err / d) ** (1 / m)
        return min(allowed, 0.5 * min(gaps)) if gaps else allowed

    return bound


def refine_cluster(p: CharPoly, center: complex, m: int, limit: float, steps: int = 8) -> complex:
    """Sharpen the centre of an m-root cluster by Newton's method on P^(m-1).

    An m-fold root of P is a simple root of P^(m-1), so this recovers the
    full working precision that the cluster centroid lacks.  The centroid is
    kept if Newton moves farther than ``limit`` from it.
    """
    if m < 1:
        raise DomainError("cluster size must be >= 1")
    d0 = [complex(c) for c in p.derivative_coeffs(m - 1)]
    d1 = [complex(c) for c in p.derivative_coeffs(m)]
    z = complex(center)
    for _ in range(steps):
        f, _ = _horner2(d0, z)
        g, _ = _horner2(d1, z)
        if g == 0:
            break
        dz = f / g
        z -= dz
        if abs(dz) <= 1e-16 * (1 + abs(z)):
            break
    return z if abs(z - center) <= limit else complex(center)


def polish_on_matrix(A: Matrix, center: complex, m: int, limit: float, steps: int = 6) -> complex:
    """Newton's method for an m-fold eigenvalue, driven by the matrix itself.

    ``f(z) = tr adj_{m-1}(A - zI)`` is a multiple of P^(m-1)(z) and has a
    simple root there; by the Jacobi formula ``f'(z) = -m tr adj_m(A - zI)``.
    Shifted principal minors avoid the coefficient rounding that limits
    :func:`refine_cluster` on badly scaled matrices.  Iteration stops once the
    steps stop shrinking; the start is kept if the result leaves ``limit``.
    """
    Af = A.to_mode(FLOAT)
    z = complex(center)
    last = math.inf
    for _ in range(steps):
        B = Af.shift(z)
        f = complex(adjugate_trace(B, m - 1))
        g = complex(adjugate_trace(B, m))
        if f == 0 or g == 0:
            break
        dz = f / (m * g)
        if abs(dz) >= last:
            break
        z += dz
        last = abs(dz)
        if last <= 4 * sys.float_info.epsilon * (1 + abs(z)):
            break
    return z if abs(z - center) <= limit else complex(center)


def _refine_groups(p: CharPoly, groups, A: Matrix | None = None):
    """(refined centre, size, radius) for each cluster.

    Centres are sharpened on the polynomial and then, when ``A`` is given,
    on the matrix.
    """
    out = []
    for a, g in enumerate(groups):
        c = sum(g) / len(g)
        rad = max(abs(x - c) for x in g)
        others = [abs(x - c) for b, h in enumerate(groups) if b != a for x in h]
        limit = 0.5 * min(others) if others else 1.0 + abs(c)
        z = refine_cluster(p, c, len(g), limit)
        if A is not None:
            z = polish_on_matrix(A, z, len(g), limit - abs(z - c))
        out.append((z, len(g), rad))
    return out


def cluster_multiplicities(
    roots,
    A: Matrix,
    tol: TolerancePolicy = EIGEN_TOL,
    cluster_tol: float | None = None,
    root_tol: float = 1e-12,
    refine: bool = True,
) -> list[SpectrumEntry]:
    """Group approximate roots into eigenvalues with both multiplicities.

    ``cluster_tol`` defaults to ``max(1e-6, 1e3 * root_tol)``; the allowed
    spread is widened by :func:`root_spread_bound`, with the coefficient noise
    read off the disagreement between the two characteristic polynomial
    routes.  With ``refine`` the reported eigenvalue is the cluster centre
    sharpened by :func:`refine_cluster`; otherwise the plain centroid.
    """
    if cluster_tol is None:
        cluster_tol = max(1e-6, 1e3 * root_tol)
    Af = A.to_mode(FLOAT)
    p = charpoly_via_adjugates(Af)
    bound = root_spread_bound(p, coefficient_noise(p, charpoly_faddeev(Af)))
    groups = _cluster([complex(r) for r in roots], cluster_tol, bound)
    if refine:
        centres = _refine_groups(p, groups, Af)
    else:
        centres = [(sum(g) / len(g), len(g), max(abs(x - sum(g) / len(g)) for x in g)) for g in groups]
    out = []
    for c, m, rad in centres:
        out.append(SpectrumEntry(c, m, geometric_multiplicity(Af, c, tol), rad))
    out.sort(key=lambda e: (complex(e.eigenvalue).real, complex(e.eigenvalue).imag))
    return out


def adjugate_vanishes(B: Matrix, j: int, M: Matrix, tol: TolerancePolicy = EIGEN_TOL, upper: Matrix | None = None) -> bool:
    """Is ``M = adj_j(B)`` zero?

    Exact: identically.  Float: relative to the next adjugate, since
    ``max|adj_j| / max|adj_{j+1}|`` tracks the singular value
    ``sigma_{n-j}(B)``, which is what a rank decision on B compares against
    ``tol * max|B|``.
    """
    if M.exact:
        return not any(M.entries())
    n = B.nrows
    if upper is None:
        upper = higher_adjugate(B, j + 1)
    ref = upper.max_abs() * comb(n, j)
    return M.max_abs() <= tol.absolute_floor + tol.relative_eps * B.max_abs() * ref


def geometric_multiplicity(A: Matrix, lam, tol: TolerancePolicy = EIGEN_TOL) -> int:
    """dim ker(A - lam I), found as the first k with adj_k(A - lam I) != 0.

    That adjugate must have rank one; ``n`` is returned when A == lam I.
    """
    n = _square(A)
    B = A.shift(lam)
    ref = max(A.max_abs(), abs(lam))
    if B.is_zero(tol, scale=ref):
        return n
    if rank(B, tol) == n:
        raise DomainError(f"{lam} is not an eigenvalue (A - lam I has full rank)")
    adj = {j: higher_adjugate(B, j) for j in range(1, n + 1)}
    for j in range(1, n):
        M = adj[j]
        if adjugate_vanishes(B, j, M, tol, adj[j + 1]):
            continue
        r = rank(M, tol)
        if r != 1:
            raise RankError(f"first nonvanishing adjugate adj_{j} has rank {r}, expected 1")
        return j
    raise RankError("all higher adjugates vanish although A != lam I")


def rational_roots(p: CharPoly) -> list[tuple[QQi, int]]:
    """Rational roots with multiplicity for a polynomial with rational coefficients."""
    if p.mode != EXACT:
        raise DomainError("rational root search needs exact coefficients")
    if any(c.im for c in p.coeffs):
        raise DomainError("rational root search needs real coefficients")
    fr = [c.re for c in p.coeffs]
    den = math.lcm(*(f.denominator for f in fr))
    ints = [int(f * den) for f in fr]
    while len(ints) > 1 and ints[-1] == 0:
        ints.pop()
    found = []
    zero_mult = 0
    while len(ints) > 1 and ints[0] == 0:
        ints.pop(0)
        zero_mult += 1
    if zero_mult:
        found.append((QQi(0), zero_mult))
    if len(ints) <= 1:
        return found

    def divisors(m):
        m = abs(m)
        small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
        return sorted(set(small + [m // d for d in small]))

    def divide(cs, r):
        # synthetic division by (t - r); cs low to high
        out = [Fraction(0)] * (len(cs) - 1)
        carry = Fraction(0)
        for k in range(len(cs) - 1, 0, -1):
            carry = carry * r + cs[k]
            out[k - 1] = carry
        remainder = carry * r + cs[0]
        return out, remainder

    cs = [Fraction(c) for c in ints]
    candidates = sorted(
        {s * Fraction(a, b) for a in divisors(ints[0]) for b in divisors(ints[-1]) for s in (1, -1)}
    )
    for r in candidates:
        mult = 0
        while len(cs) > 1:
            q, rem = divide(cs, r)
            if rem:
                break
            cs = q
            mult += 1
        if mult:
            found.append((QQi(r), mult))
    return found


def spectrum(
    A: Matrix,
    tol: TolerancePolicy = EIGEN_TOL,
    root_tol: float = 1e-12,
    cluster_tol: float | None = None,
    max_iter: int = 500,
) -> list[SpectrumEntry]:
    """Eigenvalues with multiplicities.

    Float matrices go through Aberth iteration and clustering.  Exact matrices
    report their rational eigenvalues exactly (cluster radius 0) and the
    remaining ones as floating approximations.
    """
    n = _square(A)
    if A.mode == FLOAT:
        roots = aberth_roots(charpoly_via_adjugates(A), tol=root_tol, max_iter=max_iter)
        return cluster_multiplicities(roots, A, tol, cluster_tol, root_tol)
    p = charpoly_via_adjugates(A)
    entries = []
    rest = n
    exact_roots = rational_roots(p) if not any(c.im for c in p.coeffs) else []
    cs = list(p.coeffs)
    for r, m in exact_roots:
        entries.append(SpectrumEntry(r, m, geometric_multiplicity(A, r), 0.0))
        rest -= m
        for _ in range(m):
            # deflate by (t - r)
            out = [QQi(0)] * (len(cs) - 1)
            carry = QQi(0)
            for k in range(len(cs) - 1, 0, -1):
                carry = carry * r + cs[k]
                out[k - 1] = carry
            cs = out
    if rest:
        roots = aberth_roots(CharPoly(tuple(cs), EXACT), tol=root_tol, max_iter=max_iter)
        Af = A.to_mode(FLOAT)
        if cluster_tol is None:
            cluster_tol = max(1e-6, 1e3 * root_tol)
        pf = CharPoly(tuple(cs), EXACT).to_mode(FLOAT)
        bound = root_spread_bound(pf, coefficient_noise(pf))
        for c, m, rad in _refine_groups(pf, _cluster(roots, cluster_tol, bound), Af):
            entries.append(SpectrumEntry(c, m, geometric_multiplicity(Af, c, tol), rad))
    entries.sort(key=lambda e: (complex(e.eigenvalue).real, complex(e.eigenvalue).imag))
    return entries
