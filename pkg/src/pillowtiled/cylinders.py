"""Horizontal cylinders, the orbit-averaged area Siegel-Veech term, and the
exact sum rule for the non-negative Lyapunov spectrum.

Because strata here retain their marked points, every horizontal lattice
circle carries a vertex and therefore counts as singular; each cycle of h
is its own height-1 cylinder.  The combinatorial Siegel-Veech quantity of
an orbit is the average over orbit members of sum(height/width) over
cylinders, times a fixed normalization:

    KAPPA_SV = 1/2

The constant is calibrated, not guessed: the degenerate family at p = 3
must produce sv_term = 1/6 (the unique value making the exact Lyapunov
sum vanish), and the same constant must then reproduce 1/10 at p = 5,
1/14 at p = 7, and sv_term = 1 on the orientable control of degree 2
(whose Lyapunov sum is exactly 1).  All four checks land on 1/2 on the
nose; :func:`calibrate` re-derives the constant and raises
:class:`CalibrationError` if any case ever disagrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .orbit import OrbitGraph, enumerate_state_orbit
from .permsurf import (
    Origami,
    PillowCover,
    Stratum,
    orientation_double_cover,
    pillow_stratum,
)
from .permutations import cycles

__all__ = [
    "KAPPA_SV",
    "CalibrationError",
    "CylinderDecomposition",
    "EKZReport",
    "calibrate",
    "ekz_sum",
    "horizontal_cylinders",
    "sv_raw",
    "sv_term",
]

KAPPA_SV = Fraction(1, 2)


class CalibrationError(RuntimeError):
    """The hardcoded Siegel-Veech normalization failed a calibration case."""


@dataclass(frozen=True)
class CylinderDecomposition:
    """Horizontal cylinders as (width, height) pairs; widths sum the area."""

    cylinders: tuple[tuple[int, int], ...]
    direction: str = "horizontal"

    def area(self) -> int:
        return sum(w * h for w, h in self.cylinders)

    def modulus_sum(self) -> Fraction:
        """sum of height/width, the quantity the Siegel-Veech term averages."""
        return sum((Fraction(h, w) for w, h in self.cylinders), Fraction(0))


def horizontal_cylinders(o: Origami) -> CylinderDecomposition:
    """Rows of the tiling as cylinders.

    Marked points are retained, so every row boundary is singular and all
    cylinders have height 1 and width = row length.
    """
    cyls = tuple(sorted(((len(c), 1) for c in cycles(o.h)), reverse=True))
    dec = CylinderDecomposition(cyls)
    assert dec.area() == o.d
    return dec


def sv_raw(G: OrbitGraph) -> Fraction:
    """Orbit average of sum(h/w), before normalization."""
    total = Fraction(0)
    for o in G.origamis():
        total += horizontal_cylinders(o).modulus_sum()
    return total / G.size


def sv_term(G: OrbitGraph, kappa: Fraction = KAPPA_SV) -> Fraction:
    """Normalized area Siegel-Veech term of a complete double-cover orbit."""
    return kappa * sv_raw(G)


def _cyclic_cover(N: int, a: tuple[int, ...]) -> PillowCover:
    return PillowCover(N, *[tuple((x + ai) % N for x in range(N)) for ai in a])


def _family_member(p: int) -> PillowCover:
    k = (p - 1) // 2
    return _cyclic_cover(p, (1, k, k, p))


def calibrate(orbit_cap: int = 10_000) -> Fraction:
    """Re-derive KAPPA_SV from scratch and cross-validate it.

    The p=3 member fixes the constant; p=5, p=7 and the orientable degree-2
    control must then come out right with the *same* constant, otherwise no
    single normalization exists and we fail loudly.
    """

    def raw(cover: PillowCover) -> Fraction:
        o, iota = orientation_double_cover(cover)
        return sv_raw(enumerate_state_orbit(o, iota, cap=orbit_cap))

    kappa = Fraction(1, 6) / raw(_family_member(3))
    checks = [
        (_family_member(5), Fraction(1, 10)),
        (_family_member(7), Fraction(1, 14)),
    ]
    for cover, want in checks:
        got = kappa * raw(cover)
        if got != want:
            raise CalibrationError(
                f"kappa={kappa} gives sv_term={got}, expected {want}"
            )
    # orientable control: Lyapunov sum is exactly 1 and the formula gives
    # sv_term = 1 - kappa_term + pole_term = 1 for the degree-2 cover
    control = _cyclic_cover(2, (1, 1, 1, 1))
    got = kappa * raw(control)
    if got != 1:
        raise CalibrationError(f"control cover: sv_term={got}, expected 1")
    if kappa != KAPPA_SV:
        raise CalibrationError(
            f"re-derived kappa={kappa} disagrees with hardcoded {KAPPA_SV}"
        )
    return kappa


@dataclass(frozen=True)
class EKZReport:
    """Exact sum rule for the non-negative Lyapunov exponents.

    lyap_sum = kappa_term - pole_term + sv_term, with
    kappa_term = (1/24) * sum m(m+4)/(m+2) over orders m >= 0 and
    pole_term = n/8 for n simple poles.  The decomposition splits n as
    (2g-2) + sum m/(m+2) + residual; when lyap_sum = 0 the residual equals
    12*sv_term (algebraic identity).  ``residual_is_12x_sv`` records
    whether that factor-12 relation holds for this input; the two
    quantities are stored separately and never conflated.
    """

    stratum: Stratum
    n: int
    kappa_term: Fraction
    pole_term: Fraction
    sv_term: Fraction
    lyap_sum: Fraction
    decomposition: tuple[Fraction, Fraction, Fraction]
    bound_chain: tuple[Fraction, Fraction, Fraction] | None
    residual_is_12x_sv: bool


def ekz_sum(stratum: Stratum, n: int, sv: Fraction) -> EKZReport:
    """Assemble the exact report; raises on inconsistent pole data."""
    if stratum.kind != "quadratic":
        raise ValueError("the sum rule here applies to quadratic strata")
    if n != stratum.num_poles:
        raise ValueError(
            f"n={n} but the stratum lists {stratum.num_poles} simple poles"
        )
    zeros = [m for m in stratum.orders if m >= 0]
    kappa_term = sum(
        (Fraction(m * (m + 4), 24 * (m + 2)) for m in zeros), Fraction(0)
    )
    pole_term = Fraction(n, 8)
    sv = Fraction(sv)
    lyap_sum = kappa_term - pole_term + sv
    g = stratum.genus
    partial = sum((Fraction(m, m + 2) for m in zeros), Fraction(0))
    residual = Fraction(n) - (2 * g - 2) - partial
    decomposition = (Fraction(2 * g - 2), partial, residual)
    assert decomposition[0] + decomposition[1] + decomposition[2] == n
    bound_chain = None
    if lyap_sum == 0:
        bound_chain = (Fraction(2 * g - 2), Fraction(2 * g - 2) + partial, Fraction(n))
        assert bound_chain[0] <= bound_chain[1] <= bound_chain[2]
    return EKZReport(
        stratum=stratum,
        n=n,
        kappa_term=kappa_term,
        pole_term=pole_term,
        sv_term=sv,
        lyap_sum=lyap_sum,
        decomposition=decomposition,
        bound_chain=bound_chain,
        residual_is_12x_sv=(residual == 12 * sv),
    )


def ekz_for_cover(p: PillowCover, orbit_cap: int = 10_000) -> EKZReport:
    """Convenience: orbit, Siegel-Veech term and sum rule for one cover."""
    o, iota = orientation_double_cover(p)
    G = enumerate_state_orbit(o, iota, cap=orbit_cap)
    s = pillow_stratum(p)
    return ekz_sum(s, s.num_poles, sv_term(G))
