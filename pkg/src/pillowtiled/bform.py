"""Numerical contraction pairing on superelliptic curves.

The curve is w^N = prod (z - z_i)^{a_i}; holomorphic 1-forms are found by
exact valuation arithmetic in the shape z^j prod (z - z_i)^{t_i} w^{-b} dz.
The pairing of two forms against a quadratic differential q = w^{-c} R(z) dz^2,

    B(alpha, beta) = integral of (alpha beta / q) |q|,

is pushed down to the sphere: summing over the deck group w -> zeta w
multiplies each term by zeta^{-(b1+b2-c)}, so entries with
b1 + b2 != c (mod N) vanish exactly and the rest become single-valued
integrals of

    N * f1 f2 * P^{-m} * |P|^{-c/N} * conj(R)/|R|,      m = (b1+b2-c)/N,

with P = prod (z - z_i)^{a_i}.  The Hodge products reduce the same way
(nonzero only for b1 = b2).  Integrands have known power-law behavior
|z - s|^{gamma} at finitely many points, so the quadrature uses a smooth
partition of unity: disks around each singular point with Gauss-Jacobi
radial rule matched to gamma and a trapezoid angular rule, the chart swap
z -> 1/z for the neighborhood of infinity, and tensor Gauss-Legendre
panels on the smooth remainder.  Refinement levels double every node
count; the error estimate is the last inter-level delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

__all__ = [
    "SuperellipticCurve",
    "EigenForm",
    "CurveDifferential",
    "BFormReport",
    "holomorphic_basis",
    "pairing_matrices",
    "theta_spectrum",
]


@dataclass(frozen=True)
class SuperellipticCurve:
    """w^N = prod (z - branch[i])^{a[i]} with 0 < a_i <= N."""

    N: int
    branch: tuple[complex, ...]
    a: tuple[int, ...]

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        branch = tuple(complex(z) for z in self.branch)
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "branch", branch)
        object.__setattr__(self, "a", a)
        if len(branch) != len(a):
            raise ValueError("need one exponent per branch point")
        if len(set(branch)) != len(branch):
            raise ValueError("branch points must be distinct")
        if any(not (0 < x <= self.N) for x in a):
            raise ValueError("exponents must satisfy 0 < a_i <= N")
        if math.gcd(self.N, *a) != 1:
            raise ValueError("gcd of exponents and N must be 1")

    @property
    def total_exponent(self) -> int:
        return sum(self.a)

    @property
    def dk(self) -> tuple[int, ...]:
        return tuple(math.gcd(self.N, ai) for ai in self.a)

    @property
    def a_inf(self) -> int:
        r = (-self.total_exponent) % self.N
        return r if r else self.N

    @property
    def e_inf(self) -> int:
        return self.N // math.gcd(self.N, self.a_inf)

    @property
    def genus(self) -> int:
        chi = 2 * self.N
        for ai in self.a:
            d = math.gcd(self.N, ai)
            chi -= d * (self.N // d - 1)
        d = math.gcd(self.N, self.a_inf)
        chi -= d * (self.N // d - 1)
        if chi % 2:
            raise ValueError("branch data has odd Euler characteristic")
        return (2 - chi) // 2


@dataclass(frozen=True)
class EigenForm:
    """Holomorphic form z^power * prod (z - z_i)^{shifts[i]} * w^{-b} dz.

    ``valuations`` lists the common vanishing order at the points over
    each branch value, then over infinity, in that order.
    """

    b: int
    power: int
    shifts: tuple[int, ...]
    valuations: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.power + sum(self.shifts)


def _form_poly(curve: SuperellipticCurve, form: EigenForm, z):
    out = np.asarray(z, dtype=complex) ** form.power
    for zi, t in zip(curve.branch, form.shifts):
        if t:
            out = out * (z - zi) ** t
    return out


def _form_order_at(curve: SuperellipticCurve, form: EigenForm, s: complex) -> int:
    ord_ = form.power if s == 0 else 0
    for zi, t in zip(curve.branch, form.shifts):
        if zi == s:
            ord_ += t
    return ord_


def holomorphic_basis(curve: SuperellipticCurve) -> list[EigenForm]:
    """All holomorphic eigenforms, sorted by character then degree.

    For each character b the minimal shift at z_i is the least t with
    e_i t + (e_i - 1) >= b a_i / d_i, and the extra polynomial degree is
    bounded by the vanishing condition at infinity.  The count must equal
    the genus, which is a theorem for this family of curves; a mismatch
    means the valuation arithmetic is broken, so it fails hard.
    """
    N = curve.N
    A = curve.total_exponent
    e_inf = curve.e_inf
    d_inf = math.gcd(N, curve.a_inf)
    forms: list[EigenForm] = []
    for b in range(1, N):
        shifts = []
        for ai in curve.a:
            # smallest integer t with t >= b*ai/N - 1 + 1/e_i
            ei = N // math.gcd(N, ai)
            t = math.ceil(Fraction(b * ai, N) - 1 + Fraction(1, ei))
            shifts.append(t)
        shifts = tuple(shifts)
        # degree cap: b*A/N - 1 - 1/e_inf, as an exact floor
        cap = math.floor(Fraction(b * A, N) - 1 - Fraction(1, e_inf))
        for j in range(0, cap - sum(shifts) + 1):
            vals = []
            for ai, zi, t in zip(curve.a, curve.branch, shifts):
                d = math.gcd(N, ai)
                ei = N // d
                extra = j if zi == 0 else 0
                vals.append(ei * (t + extra) + ei - 1 - b * ai // d)
            D = j + sum(shifts)
            vals.append(b * A // d_inf - e_inf * D - e_inf - 1)
            form = EigenForm(b=b, power=j, shifts=shifts, valuations=tuple(vals))
            if any(v < 0 for v in form.valuations):
                raise RuntimeError("candidate form fails its own valuation table")
            forms.append(form)
    if len(forms) != curve.genus:
        raise RuntimeError(
            f"basis count {len(forms)} does not match genus {curve.genus}; "
            "valuation arithmetic is inconsistent"
        )
    return forms


@dataclass(frozen=True)
class CurveDifferential:
    """q = w^{-wpow} * prod (z-y_j)^{m_j} / prod (z-x_i) * dz^2.

    With wpow = 0 this is the pullback of a base differential; the
    ``zero_orders``/``finite_poles``/call protocol matches the sampler in
    the coverings module, so those objects can be passed wherever this
    type is accepted.
    """

    wpow: int = 0
    zero_orders: tuple[tuple[complex, int], ...] = ()
    finite_poles: tuple[complex, ...] = ()

    def __call__(self, z):
        num = np.ones_like(np.asarray(z, dtype=complex))
        for point, m in self.zero_orders:
            num = num * (z - point) ** m
        for point in self.finite_poles:
            num = num / (z - point)
        return num


def _q_parts(q):
    """(wpow, rational part R, its zero orders, poles) for either q type."""
    wpow = getattr(q, "wpow", 0)
    return wpow, q, tuple(q.zero_orders), tuple(q.finite_poles)


def _q_order_at_infinity(q) -> int:
    num = sum(m for _, m in q.zero_orders)
    return -num + len(q.finite_poles)


def _pullback_has_simple_pole(curve: SuperellipticCurve, q) -> bool:
    wpow, _, zero_orders, poles = _q_parts(q)
    N = curve.N
    exponent = {z: a for z, a in zip(curve.branch, curve.a)}
    base_order = {z: -1 for z in poles}
    for z, m in zero_orders:
        base_order[z] = m
    for z in set(curve.branch) | set(base_order):
        bo = base_order.get(z, 0)
        ai = exponent.get(z)
        if ai is None:
            up = bo - 0  # unbranched: order copies, w is a unit
            e = 1
            w_ord = 0
        else:
            d = math.gcd(N, ai)
            e = N // d
            w_ord = ai // d
            up = e * bo + 2 * (e - 1) - wpow * w_ord
        if up == -1:
            return True
    # infinity
    d = math.gcd(N, curve.a_inf)
    e = curve.N // d
    base_inf = _q_order_at_infinity(q) - 4
    w_ord_inf = -curve.total_exponent // d if d else 0
    up = e * base_inf + 2 * (e - 1) - wpow * w_ord_inf
    return up == -1


@dataclass(frozen=True)
class BFormReport:
    """Pairing matrix, Hodge Gram matrix, and normalized spectrum."""

    B: tuple[tuple[complex, ...], ...]
    H: tuple[tuple[complex, ...], ...]
    theta: tuple[float, ...]
    quad_error: float
    q_has_simple_pole: bool
    gap: float | None


def theta_spectrum(report: BFormReport) -> tuple[float, ...]:
    return report.theta


# ---------------------------------------------------------------- quadrature


def _bump01(x):
    """Smooth cutoff: 1 for x <= 0, 0 for x >= 1."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        f = np.where(x > 0, np.exp(-1.0 / np.maximum(x, 1e-300)), 0.0)
        g = np.where(x < 1, np.exp(-1.0 / np.maximum(1 - x, 1e-300)), 0.0)
    return g / (f + g)


def _chi_profile(rho, radius):
    """Radial partition-of-unity factor: 1 inside radius/2, 0 outside radius."""
    return _bump01(2.0 * rho / radius - 1.0)


class _Region:
    """Node/weight layout for one (curve, q) geometry at one refinement level.

    The smooth background region is tiled by a graded quadtree whose
    cells shrink toward the singular centers, so the partition-of-unity
    transition annuli are resolved; refinement raises the Gauss-Legendre
    order on that fixed mesh, and doubles the polar node counts.
    """

    def __init__(self, centers: list[complex], level: int):
        self.centers = centers
        if centers:
            rad = []
            for i, c in enumerate(centers):
                dmin = min(
                    (abs(c - o) for j, o in enumerate(centers) if j != i),
                    default=2.0,
                )
                rad.append(min(0.35 * dmin, 1.5))
            self.radii = rad
            far = max(abs(c) + r for c, r in zip(centers, rad))
        else:
            self.radii = []
            far = 1.0
        self.r_out = 2.0 * max(far, 1.0)
        self.u_rad = 1.0 / self.r_out
        self.n_rad = 14 * (2 ** level)
        self.n_ang = 18 * (2 ** level)
        self.n_gl = 5 * (2 ** level)
        self._panel_cache = None

    def _cells(self):
        """Graded quadtree leaves (center, half-width) covering the support
        of the background integrand, pruned where the mask vanishes."""
        out: list[tuple[complex, float]] = []
        stack = [(0.0 + 0.0j, 2.0 * self.r_out)]
        while stack:
            c, h = stack.pop()
            diag = h * math.sqrt(2.0)
            # fully beyond the far cutoff: mask is identically zero
            if abs(c) - diag >= 2.0 * self.r_out:
                continue
            split = False
            dead = False
            for s, r in zip(self.centers, self.radii):
                d = abs(c - s)
                if d + diag <= 0.5 * r:
                    dead = True
                    break
                # resolve the transition annulus and grade with distance
                target = 0.25 * max(d - r, 0.5 * r)
                if h > target and h > r / 16.0:
                    split = True
            if dead:
                continue
            if split:
                q = h / 2.0
                stack.extend(
                    (c + q * (dx + 1j * dy), q)
                    for dx in (-1.0, 1.0)
                    for dy in (-1.0, 1.0)
                )
            else:
                out.append((c, h))
        return out

    def disk_sum(self, g, center, radius, gamma):
        x, wj = roots_jacobi(self.n_rad, 0.0, gamma + 1.0)
        rho = radius * (x + 1.0) / 2.0
        ang = 2.0 * np.pi * np.arange(self.n_ang) / self.n_ang
        z = center + rho[:, None] * np.exp(1j * ang)[None, :]
        vals = g(z)
        w2 = (
            wj
            * _chi_profile(rho, radius)
            * rho ** (-gamma)
            * (radius / 2.0) ** (gamma + 2.0)
            * (2.0 * np.pi / self.n_ang)
        )
        return complex(np.sum(vals * w2[:, None]))

    def infinity_sum(self, g, gamma_inf):
        def g_u(u):
            return g(1.0 / u) * np.abs(u) ** (-4.0)

        return self.disk_sum(g_u, 0.0, self.u_rad, gamma_inf)

    def _panel_nodes(self):
        if self._panel_cache is None:
            xg, wg = leggauss(self.n_gl)
            cells = self._cells()
            cc = np.array([c for c, _ in cells])
            hh = np.array([h for _, h in cells])
            offs = xg[:, None] + 1j * xg[None, :]
            zz = cc[:, None, None] + hh[:, None, None] * offs[None, :, :]
            w2 = wg[:, None] * wg[None, :]
            ww = (hh ** 2)[:, None, None] * w2[None, :, :]
            zz = zz.ravel()
            ww = ww.ravel()
            mask = np.ones_like(ww)
            for c, r in zip(self.centers, self.radii):
                mask *= 1.0 - _chi_profile(np.abs(zz - c), r)
            with np.errstate(divide="ignore"):
                u = np.where(np.abs(zz) > 0, 1.0 / np.abs(zz), np.inf)
            mask *= 1.0 - _chi_profile(u, self.u_rad)
            self._panel_cache = (zz, ww * mask)
        return self._panel_cache

    def plane_sum(self, g):
        zz, ww = self._panel_nodes()
        live = ww != 0.0
        vals = np.zeros_like(zz)
        vals[live] = g(zz[live])
        return complex(np.sum(vals * ww))

    def integrate(self, g, gammas: dict, gamma_inf: float):
        total = 0.0 + 0.0j
        for c, r in zip(self.centers, self.radii):
            total += self.disk_sum(g, c, r, float(gammas.get(c, 0.0)))
        total += self.infinity_sum(g, float(gamma_inf))
        total += self.plane_sum(g)
        return total


def _entry_exponents(curve, f1, f2, q_centers, weight_at, weight_inf):
    """Radial exponents of one matrix entry at every singular center."""
    gammas = {}
    for s in q_centers:
        g = _form_order_at(curve, f1, s) + _form_order_at(curve, f2, s)
        gammas[s] = g + weight_at(s)
    gamma_inf = -(f1.degree + f2.degree) + weight_inf
    for s, gm in gammas.items():
        if gm <= -2:
            raise RuntimeError(f"non-integrable exponent {gm} at {s}")
    if gamma_inf <= -2:
        raise RuntimeError(f"non-integrable exponent {gamma_inf} at infinity")
    return gammas, gamma_inf


def _poly_eval(curve, z):
    P = np.ones_like(np.asarray(z, dtype=complex))
    for zi, ai in zip(curve.branch, curve.a):
        P = P * (z - zi) ** ai
    return P


def pairing_matrices(curve: SuperellipticCurve, q, basis=None, *, levels: int = 3) -> BFormReport:
    """Contraction pairing B, Hodge Gram H, and the normalized spectrum.

    ``q`` is a base differential (pullback) or a CurveDifferential with a
    w-power.  Entries killed by the deck character are exact zeros; the
    rest are quadratures at ``levels`` refinement levels, with the error
    estimate taken from the last two levels.
    """
    if basis is None:
        basis = holomorphic_basis(curve)
    g_count = len(basis)
    wpow, R, zero_orders, poles = _q_parts(q)
    N = curve.N
    A = curve.total_exponent

    centers = list(curve.branch)
    for z, _ in zero_orders:
        if z not in centers:
            centers.append(z)
    for z in poles:
        if z not in centers:
            centers.append(z)
    exponent = {z: a for z, a in zip(curve.branch, curve.a)}

    def phase(z):
        r = R(z)
        mag = np.abs(r)
        return np.where(mag == 0, 1.0 + 0.0j, np.conj(r) / np.maximum(mag, 1e-300))

    def b_entry_fn(f1, f2, m):
        def g(z):
            P = _poly_eval(curve, z)
            val = N * _form_poly(curve, f1, z) * _form_poly(curve, f2, z)
            if m:
                val = val * P ** (-m)
            if wpow:
                val = val * np.abs(P) ** (-wpow / N)
            return val * phase(z)

        return g

    def h_entry_fn(f1, f2, b):
        def g(z):
            P = _poly_eval(curve, z)
            return (
                N
                * _form_poly(curve, f1, z)
                * np.conj(_form_poly(curve, f2, z))
                * np.abs(P) ** (-2.0 * b / N)
            )

        return g

    values: list[tuple[np.ndarray, np.ndarray]] = []
    for level in range(levels):
        region = _Region(centers, level)
        B = np.zeros((g_count, g_count), dtype=complex)
        H = np.zeros((g_count, g_count), dtype=complex)
        for i, f1 in enumerate(basis):
            for j in range(i, g_count):
                f2 = basis[j]
                if (f1.b + f2.b - wpow) % N == 0:
                    m = (f1.b + f2.b - wpow) // N
                    gammas, ginf = _entry_exponents(
                        curve, f1, f2, centers,
                        lambda s: -(m + wpow / N) * exponent.get(s, 0),
                        (m + wpow / N) * A - 4,
                    )
                    val = region.integrate(b_entry_fn(f1, f2, m), gammas, ginf)
                    B[i, j] = B[j, i] = val
                if f1.b == f2.b:
                    b = f1.b
                    gammas, ginf = _entry_exponents(
                        curve, f1, f2, centers,
                        lambda s: -2.0 * b * exponent.get(s, 0) / N,
                        2.0 * b * A / N - 4,
                    )
                    val = region.integrate(h_entry_fn(f1, f2, b), gammas, ginf)
                    H[i, j] = val
                    if i != j:
                        H[j, i] = np.conj(val)
        values.append((B, H))

    B, H = values[-1]
    if len(values) >= 2:
        Bp, Hp = values[-2]
        quad_error = float(max(np.max(np.abs(B - Bp)), np.max(np.abs(H - Hp)), 0.0)) \
            if g_count else 0.0
    else:
        quad_error = 0.0

    if g_count:
        try:
            np.linalg.cholesky(H)
        except np.linalg.LinAlgError:
            raise RuntimeError("Hodge Gram matrix is not positive definite") from None
        evals, evecs = np.linalg.eigh(H)
        Hm = evecs @ np.diag(evals ** -0.5) @ evecs.conj().T
        Mmat = Hm @ B @ Hm.T
        theta = tuple(float(s) for s in np.linalg.svd(Mmat, compute_uv=False))
        if theta and theta[0] > 1.0 + 1e-3:
            raise RuntimeError(
                f"spectrum exceeds the contraction bound: {theta[0]}"
            )
        gap = 1.0 - theta[0] if theta else None
    else:
        theta = ()
        gap = None

    return BFormReport(
        B=tuple(tuple(B[i]) for i in range(g_count)),
        H=tuple(tuple(H[i]) for i in range(g_count)),
        theta=theta,
        quad_error=quad_error,
        q_has_simple_pole=_pullback_has_simple_pole(curve, q),
        gap=gap,
    )
