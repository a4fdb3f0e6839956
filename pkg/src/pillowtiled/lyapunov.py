"""Monte-Carlo estimation of the homological transport exponents.

A random geodesic direction is drawn from the Gauss measure and unfolded
into continued-fraction digits; the digit string R^{a1} L^{a2} R^{a3}...
drives the surface through canonical double-cover states while exact
integer matrices (one per digit, assembled from cached per-state data)
push orthonormal frames through the invariant and anti-invariant parts
of first homology.  Growth rates are read off QR diagonals a la
Benettin; everything is normalized by the log-growth of the tautological
2-vector, whose own exponent is 1 by construction.

Large digits are cheap: each generator permutes the finite set of
canonical states along a cycle, so gen^a factors as (partial walk) x
(full-cycle product)^q, and the full-cycle power is computed by exact
integer binary powering before any float touches it.

Runs are bitwise reproducible for a fixed seed (single PCG64 stream for
the dynamics, a second derived stream for the bootstrap).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import lattice
from .cocycle import StateCache, induced_cocycle  # noqa: F401  (re-export)
from .cylinders import ekz_for_cover
from .homology import homology_basis  # noqa: F401  (re-export)
from .orbit import DEFAULT_ORBIT_CAP, OrbitCapExceeded
from .permsurf import PillowCover, orientation_double_cover

__all__ = [
    "LyapunovEstimate",
    "DegeneracyCertificate",
    "run_monte_carlo",
    "certify_degenerate",
    "homology_basis",
    "induced_cocycle",
]

_DIGIT_CAP = 10**12
_REFRESH_DIGITS = 25  # float continued-fraction digits stay honest this long
_BOOTSTRAP_RESAMPLES = 200


def _matpow(M: list[list[int]], q: int) -> list[list[int]]:
    n = len(M)
    R = lattice.eye(n)
    base = M
    while q:
        if q & 1:
            R = lattice.matmul(base, R)
        q >>= 1
        if q:
            base = lattice.matmul(base, base)
    return R


class _GenCycle:
    """States visited by repeating one generator, with cumulative products.

    ``states[j]`` is the state after j moves (states[0] is the anchor, and
    the move from states[-1] returns to it); ``cum_plus[j]``/``cum_minus[j]``
    are the exact products of the first j per-move matrices.
    """

    __slots__ = ("states", "cum_plus", "cum_minus")

    def __init__(self, cache: StateCache, key, gen: str):
        st = cache.state(key)
        kp, km = st.splitting.dim_plus, st.splitting.dim_minus
        self.states = [key]
        self.cum_plus = [lattice.eye(kp)]
        self.cum_minus = [lattice.eye(km)]
        cur = key
        while True:
            tr = cache.transition(cur, gen)
            self.cum_plus.append(lattice.matmul([list(r) for r in tr.plus], self.cum_plus[-1]))
            self.cum_minus.append(lattice.matmul([list(r) for r in tr.minus], self.cum_minus[-1]))
            cur = tr.target
            if cur == key:
                break
            self.states.append(cur)


class _Walker:
    """Digit-level driver over the canonical state graph."""

    def __init__(self, cover: PillowCover):
        o, iota = orientation_double_cover(cover)
        self.cache = StateCache()
        self.key = self.cache.canonical_key(o, iota)
        st = self.cache.state(self.key)
        self.dim_plus = st.splitting.dim_plus
        self.dim_minus = st.splitting.dim_minus
        self._cycles: dict[tuple, _GenCycle] = {}
        self._memo: dict[tuple, tuple] = {}

    def digit(self, gen: str, a: int):
        """Float matrices of gen^a from the current state; advances the state."""
        memo_key = (self.key, gen, a)
        hit = self._memo.get(memo_key)
        if hit is None:
            ck = (self.key, gen)
            cyc = self._cycles.get(ck)
            if cyc is None:
                cyc = self._cycles[ck] = _GenCycle(self.cache, self.key, gen)
            L = len(cyc.states)
            q, r = divmod(a, L)
            Mp, Mm = cyc.cum_plus[r], cyc.cum_minus[r]
            if q:
                Mp = lattice.matmul(Mp, _matpow(cyc.cum_plus[L], q))
                Mm = lattice.matmul(Mm, _matpow(cyc.cum_minus[L], q))
            hit = (
                np.array(Mp, dtype=float).reshape(self.dim_plus, self.dim_plus),
                np.array(Mm, dtype=float).reshape(self.dim_minus, self.dim_minus),
                cyc.states[r],
            )
            self._memo[memo_key] = hit
        self.key = hit[2]
        return hit[0], hit[1]


@dataclass(frozen=True)
class LyapunovEstimate:
    """Normalized non-negative exponents of one Monte-Carlo run.

    ``lambda_plus`` lists the invariant-part exponents (top of the
    filtration first, one per quotient handle); ``lambda_minus`` the
    anti-invariant ones, whose leading entry is the tautological 1 up to
    sampling error.  Both are clamped below at zero, the exact floor for
    the upper half of a symplectic spectrum.
    """

    lambda_plus: tuple[float, ...]
    stderr_plus: tuple[float, ...]
    lambda_minus: tuple[float, ...]
    stderr_minus: tuple[float, ...]
    steps: int
    seed: int
    blocks: int
    taut_time: float
    block_slopes: tuple[float, ...]
    warnings: tuple[str, ...]

    @property
    def converged(self) -> bool:
        return not self.warnings

    @property
    def sum_plus(self) -> float:
        return float(sum(self.lambda_plus))


def _flush(frame, logs):
    if frame is None:
        return None
    Q, R = np.linalg.qr(frame)
    logs += np.log(np.abs(np.diag(R)))
    return Q


def run_monte_carlo(
    cover: PillowCover,
    steps: int,
    seed: int,
    *,
    block: int = 20,
    renorm: int = 20,
) -> LyapunovEstimate:
    """Estimate the non-negative exponent spectrum of one cover.

    ``steps`` counts continued-fraction digits, ``block`` the number of
    equal segments used for the bootstrap error bars, ``renorm`` the
    re-orthonormalization cadence in elementary moves.
    """
    if steps < block:
        raise ValueError("steps must be at least the number of blocks")
    if block < 2:
        raise ValueError("need at least two blocks for error bars")
    if renorm < 1:
        raise ValueError("renorm must be positive")
    walker = _Walker(cover)
    mp, mm = walker.dim_plus // 2, walker.dim_minus // 2
    rng = np.random.Generator(np.random.PCG64(seed))

    def frame(dim, m):
        if m == 0:
            return None
        Q, _ = np.linalg.qr(rng.standard_normal((dim, m)))
        return Q

    Fp = frame(walker.dim_plus, mp)
    Fm = frame(walker.dim_minus, mm)
    vec = rng.standard_normal(2)
    u = vec / np.hypot(*vec)

    logs_p = np.zeros(mp)
    logs_m = np.zeros(mm)
    taut = 0.0
    boundaries = [steps * (k + 1) // block for k in range(block)]
    bi = 0
    prev = (logs_p.copy(), logs_m.copy(), 0.0, 0)
    rows = []

    x = 0.0
    digits_since_refresh = _REFRESH_DIGITS  # force an initial draw
    moves_since_renorm = 0
    use_T = True
    for step in range(steps):
        if digits_since_refresh >= _REFRESH_DIGITS or x <= 1e-9:
            x = 2.0 ** rng.random() - 1.0
            digits_since_refresh = 0
        a = int(1.0 / x)
        x = 1.0 / x - a
        if a > _DIGIT_CAP:
            a = _DIGIT_CAP
            x = 0.0  # forces a refresh on the next digit
        gen = "T" if use_T else "L"
        use_T = not use_T
        Mp, Mm = walker.digit(gen, a)
        if Fp is not None:
            Fp = Mp @ Fp
        if Fm is not None:
            Fm = Mm @ Fm
        if gen == "T":
            w = (u[0] + a * u[1], u[1])
        else:
            w = (u[0], u[1] + a * u[0])
        nrm = math.hypot(*w)
        taut += math.log(nrm)
        u = np.array(w) / nrm
        digits_since_refresh += 1
        moves_since_renorm += a
        at_boundary = step + 1 == boundaries[bi]
        if moves_since_renorm >= renorm or at_boundary:
            Fp = _flush(Fp, logs_p)
            Fm = _flush(Fm, logs_m)
            moves_since_renorm = 0
        if at_boundary:
            rows.append((
                logs_p - prev[0],
                logs_m - prev[1],
                taut - prev[2],
                step + 1 - prev[3],
            ))
            prev = (logs_p.copy(), logs_m.copy(), taut, step + 1)
            bi += 1

    warnings = []
    slopes = tuple(float(r[2]) / r[3] for r in rows)
    mean_slope = sum(slopes) / len(slopes)
    if mean_slope <= 0:
        warnings.append("tautological growth is not positive")
    elif (max(slopes) - min(slopes)) / mean_slope > 0.2:
        warnings.append(
            "tautological slope varies by more than 20% across blocks; "
            "increase steps"
        )

    dl_p = np.stack([r[0] for r in rows])
    dl_m = np.stack([r[1] for r in rows])
    dt = np.array([r[2] for r in rows])
    brng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, 0xB5))))
    idx = brng.integers(0, len(rows), size=(_BOOTSTRAP_RESAMPLES, len(rows)))
    denom = np.maximum(dt[idx].sum(axis=1), 1e-9)[:, None]

    def spectrum(logs, dl):
        if logs.size == 0:
            return (), ()
        lam = np.maximum(logs / taut, 0.0)
        boots = dl[idx].sum(axis=1) / denom
        err = boots.std(axis=0, ddof=1)
        return tuple(float(v) for v in lam), tuple(float(e) for e in err)

    lam_p, err_p = spectrum(logs_p, dl_p)
    lam_m, err_m = spectrum(logs_m, dl_m)
    if any(e > 0.1 for e in err_p + err_m):
        warnings.append("bootstrap error above 0.1; increase steps")

    return LyapunovEstimate(
        lambda_plus=lam_p,
        stderr_plus=err_p,
        lambda_minus=lam_m,
        stderr_minus=err_m,
        steps=steps,
        seed=seed,
        blocks=block,
        taut_time=taut,
        block_slopes=slopes,
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class DegeneracyCertificate:
    """Joint verdict of the sampled and exact degeneracy channels."""

    description: str
    epsilon: float
    steps: int
    seeds: tuple[int, ...]
    estimates: tuple[LyapunovEstimate, ...]
    max_lambda_plus: float
    measured_degenerate: bool
    exact_sum: Fraction | None
    exact_degenerate: bool | None
    criterion_degenerate: bool | None
    verdict: str
    contradiction: bool
    report: str


def certify_degenerate(
    target,
    epsilon: float,
    *,
    steps: int = 20_000,
    seeds: tuple[int, ...] = (1, 2, 3),
    orbit_cap: int = DEFAULT_ORBIT_CAP,
) -> DegeneracyCertificate:
    """Decide whether the invariant-part spectrum vanishes.

    ``target`` is a pillowcase cover or a cyclic-cover specification.  The
    Monte-Carlo channel must agree with the exact sum rule (and, for cyclic
    covers, with the closed-form criterion); any disagreement is reported
    as a contradiction and the certificate fails.
    """
    if not (0.0 < epsilon < 0.1):
        raise ValueError("epsilon must lie strictly between 0 and 0.1")
    seeds = tuple(seeds)
    if len(seeds) < 3:
        raise ValueError("need at least three independent seeds")
    criterion: bool | None = None
    if isinstance(target, PillowCover):
        cover = target
        description = str(cover)
    else:
        from .coverings import CyclicCoverSpec, cyclic_to_pillow, is_determinant_locus

        if not isinstance(target, CyclicCoverSpec):
            raise TypeError("target must be a PillowCover or CyclicCoverSpec")
        cover = cyclic_to_pillow(target)
        criterion = bool(is_determinant_locus(target))
        description = f"cyclic cover N={target.N} a={target.a}"

    estimates = tuple(run_monte_carlo(cover, steps, s) for s in seeds)
    maxes = [max(e.lambda_plus) for e in estimates if e.lambda_plus]
    max_lp = max(maxes, default=0.0)
    measured = max_lp < epsilon

    exact_sum: Fraction | None
    try:
        exact_sum = ekz_for_cover(cover, orbit_cap=orbit_cap).lyap_sum
        exact_deg: bool | None = exact_sum == 0
    except OrbitCapExceeded:
        exact_sum = None
        exact_deg = None

    channels = {"monte-carlo": measured}
    if exact_deg is not None:
        channels["sum-rule"] = exact_deg
    if criterion is not None:
        channels["criterion"] = criterion
    agree = len(set(channels.values())) == 1
    if agree:
        verdict = "PASS" if measured else "FAIL"
        report = (
            f"all channels agree: {'degenerate' if measured else 'non-degenerate'}"
            f" (max lambda_plus = {max_lp:.4g}"
            + (f", exact sum = {exact_sum}" if exact_sum is not None else "")
            + ")"
        )
        contradiction = False
    else:
        verdict = "FAILED"
        contradiction = True
        states = ", ".join(
            f"{name}={'degenerate' if val else 'non-degenerate'}"
            for name, val in channels.items()
        )
        report = (
            f"channels disagree: {states}; max lambda_plus = {max_lp:.4g}"
            + (f", exact sum = {exact_sum}" if exact_sum is not None else "")
        )
    return DegeneracyCertificate(
        description=description,
        epsilon=epsilon,
        steps=steps,
        seeds=seeds,
        estimates=estimates,
        max_lambda_plus=max_lp,
        measured_degenerate=measured,
        exact_sum=exact_sum,
        exact_degenerate=exact_deg,
        criterion_degenerate=criterion,
        verdict=verdict,
        contradiction=contradiction,
        report=report,
    )
