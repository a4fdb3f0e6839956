"""Cyclic pillowcase covers, degeneracy criteria, and locus bookkeeping.

A cyclic datum (N, a1..a4) with sum(a) divisible by N and
gcd(a1,..,a4,N) = 1 describes the degree-N cover where the loop around
corner i acts by x -> x + a_i on Z/N.  The convention 0 < a_i <= N makes
a_i = N the "unbranched at corner i" case.  Everything downstream
(ramification tables, genus, pole counts, bound checks) is exact integer
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .permsurf import PillowCover, Stratum, pillow_stratum
from .permutations import Perm, compose_all, cycles, identity, is_permutation

__all__ = [
    "CyclicCoverSpec",
    "Ramification",
    "CoverReport",
    "BoundVerdict",
    "DeterminantVerdict",
    "LocusSpec",
    "LocusMetadata",
    "BaseDifferential",
    "cyclic_to_pillow",
    "cover_report",
    "is_determinant_locus",
    "check_bounds",
    "locus_metadata",
    "sample_base_differential",
    "iter_specs",
]


@dataclass(frozen=True)
class CyclicCoverSpec:
    """Combinatorial datum of a cyclic cover of the pillowcase."""

    N: int
    a: tuple[int, int, int, int]

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if len(a) != 4:
            raise ValueError("need exactly four corner integers")
        if any(not (0 < x <= self.N) for x in a):
            raise ValueError("corner integers must satisfy 0 < a_i <= N")
        if math.gcd(*a, self.N) != 1:
            raise ValueError("gcd(a_1, a_2, a_3, a_4, N) must be 1")
        if sum(a) % self.N != 0:
            raise ValueError("sum of corner integers must be divisible by N")


@dataclass(frozen=True)
class Ramification:
    """Cycle data of one corner monodromy: ``cycles`` orbits of length
    ``length`` each (length 1 means the corner is unbranched there)."""

    corner: int
    cycles: int
    length: int


def _ram_table(s: CyclicCoverSpec) -> tuple[Ramification, ...]:
    out = []
    for i, ai in enumerate(s.a):
        g = math.gcd(s.N, ai)
        out.append(Ramification(corner=i, cycles=g, length=s.N // g))
    return tuple(out)


def cyclic_to_pillow(s: CyclicCoverSpec) -> PillowCover:
    """The cover itself: each corner loop acts by translation on Z/N."""
    perms = [tuple((x + ai) % s.N for x in range(s.N)) for ai in s.a]
    return PillowCover(s.N, *perms)


def ramification_table(s: CyclicCoverSpec) -> tuple[Ramification, ...]:
    return _ram_table(s)


@dataclass(frozen=True)
class CoverReport:
    """Summary of one cover: genus, stratum, pole and branch counts."""

    degree: int
    genus: int
    stratum: Stratum
    n: int
    branch_count: int
    galois: bool = True


def cover_report(s: CyclicCoverSpec) -> CoverReport:
    stratum = pillow_stratum(cyclic_to_pillow(s))
    branch = sum(1 for r in _ram_table(s) if r.length > 1)
    return CoverReport(
        degree=s.N,
        genus=stratum.genus,
        stratum=stratum,
        n=stratum.num_poles,
        branch_count=branch,
    )


@dataclass(frozen=True)
class DeterminantVerdict:
    """Boolean plus the reason; truthiness is the flag itself."""

    flag: bool
    reason: str

    def __bool__(self) -> bool:
        return self.flag


def is_determinant_locus(s: CyclicCoverSpec) -> DeterminantVerdict:
    """Whether the cyclic cover is forced to be degenerate.

    Primary form: some corner integer equals N (that corner loop acts
    trivially).  Cross-checked against the ramification table: branching
    at three or fewer of the four corners.  The two must agree.
    """
    trivial = [i for i, ai in enumerate(s.a) if ai == s.N]
    flag = bool(trivial)
    branch = sum(1 for r in _ram_table(s) if r.length > 1)
    assert flag == (branch <= 3), "determinant-locus criteria disagree"
    if flag:
        which = ", ".join(str(i + 1) for i in trivial)
        reason = f"corner(s) {which} unbranched (a_i = N)"
    else:
        reason = "all four corners branched"
    return DeterminantVerdict(flag=flag, reason=reason)


@dataclass(frozen=True)
class BoundVerdict:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    lhs: int | None = None
    rhs: int | None = None


def check_bounds(r: CoverReport, degenerate: bool) -> list[BoundVerdict]:
    """Pole-count, degree, and unbranched-pole bounds for degenerate covers.

    The degree bound applies only to covers branched at all four corners;
    the unbranched-pole bound only to Galois covers.  Non-degenerate input
    skips everything.
    """
    out = []
    if degenerate and r.genus >= 1:
        need = max(2 * r.genus - 2, 2)
        out.append(BoundVerdict(
            "pole-count", "pass" if r.n >= need else "fail", r.n, need))
    else:
        out.append(BoundVerdict("pole-count", "skipped"))
    if degenerate and r.branch_count == 4:
        need = 3 * (r.genus - 1)
        out.append(BoundVerdict(
            "degree", "pass" if r.degree >= need else "fail", r.degree, need))
    else:
        out.append(BoundVerdict("degree", "skipped"))
    if degenerate and r.galois:
        free = 4 - r.branch_count
        out.append(BoundVerdict(
            "unbranched-pole", "pass" if free >= 1 else "fail", free, 1))
    else:
        out.append(BoundVerdict("unbranched-pole", "skipped"))
    return out


def iter_specs(N: int):
    """All valid corner data for one N, lexicographically."""
    for a1 in range(1, N + 1):
        for a2 in range(1, N + 1):
            for a3 in range(1, N + 1):
                a4 = N - (a1 + a2 + a3) % N
                if math.gcd(a1, a2, a3, a4, N) == 1:
                    yield CyclicCoverSpec(N, (a1, a2, a3, a4))


@dataclass(frozen=True)
class LocusSpec:
    """A stratum datum on the base sphere plus a fixed 3-point cover.

    ``m``: zero orders of the base differential away from the cover's
    branch locus; ``k``: its number of simple poles; ``cover``: monodromy
    (h0, h1, hinf) of a connected cover branched only over 0, 1, infinity,
    with the loop product (0 first, then 1, then infinity) trivial.
    """

    m: tuple[int, ...]
    k: int
    cover: tuple[Perm, Perm, Perm]

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        object.__setattr__(self, "m", m)
        if any(x < 1 for x in m):
            raise ValueError("zero orders must be positive")
        if sum(m) - self.k != -4:
            raise ValueError("orders minus pole count must equal -4")
        h0, h1, hinf = self.cover
        d = len(h0)
        for p in (h0, h1, hinf):
            if not is_permutation(p) or len(p) != d:
                raise ValueError("cover monodromy must be same-degree permutations")
        if compose_all(hinf, h1, h0) != identity(d):
            raise ValueError("monodromy product around 0, 1, infinity must be trivial")
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for p in (h0, h1, hinf):
                if p[x] not in seen:
                    seen.add(p[x])
                    frontier.append(p[x])
        if len(seen) != d:
            raise ValueError("cover monodromy must be transitive")

    @property
    def degree(self) -> int:
        return len(self.cover[0])

    @property
    def r(self) -> int:
        return len(self.m)


@dataclass(frozen=True)
class LocusMetadata:
    n: int
    dim: int
    target_stratum: Stratum
    genus_y: int


def locus_metadata(L: LocusSpec) -> LocusMetadata:
    """Pole count, dimension, and pulled-back stratum of a locus datum.

    The base differential has simple poles at 0, 1, infinity and at k-3
    further unbranched points, and zeros of orders m_j at unbranched
    points.  A cover point of ramification e over a simple pole has order
    e - 2 upstairs; unbranched fibers copy their base order d times.
    """
    d = L.degree
    fixed = sum(sum(1 for x in range(d) if p[x] == x) for p in L.cover)
    n = fixed + d * (L.k - 3)
    orders = []
    total_cycles = 0
    for p in L.cover:
        for c in cycles(p):
            orders.append(len(c) - 2)
            total_cycles += 1
    orders.extend([-1] * (d * (L.k - 3)))
    for mj in L.m:
        orders.extend([mj] * d)
    two_minus_2g = total_cycles - d
    if two_minus_2g % 2 != 0:
        raise ValueError("cover data does not close up to a surface")
    genus_y = (2 - two_minus_2g) // 2
    stratum = Stratum(kind="quadratic", orders=tuple(sorted(orders)), genus=genus_y)
    return LocusMetadata(
        n=n,
        dim=L.r + L.k - 2,
        target_stratum=stratum,
        genus_y=genus_y,
    )


@dataclass(frozen=True)
class BaseDifferential:
    """Rational quadratic differential on the sphere with exact orders.

    Zeros of order m_j at the y_j, simple poles at 0, 1, the x_i, and at
    infinity (the last automatic from degree bookkeeping).
    """

    zero_orders: tuple[tuple[complex, int], ...]
    finite_poles: tuple[complex, ...]

    def order_at(self, z) -> int:
        for point, m in self.zero_orders:
            if point == z:
                return m
        if z in self.finite_poles:
            return -1
        return 0

    @property
    def order_at_infinity(self) -> int:
        num = sum(m for _, m in self.zero_orders)
        den = len(self.finite_poles)
        return -num + den - 4

    def total_order(self) -> int:
        return sum(m for _, m in self.zero_orders) \
            - len(self.finite_poles) + self.order_at_infinity

    def __call__(self, z: complex) -> complex:
        num = 1.0 + 0.0j
        for point, m in self.zero_orders:
            num *= (z - point) ** m
        den = 1.0 + 0.0j
        for point in self.finite_poles:
            den *= z - point
        return num / den


def sample_base_differential(m, k: int, zeros=(), poles=()) -> BaseDifferential:
    """q = prod (z-y_j)^{m_j} / [z (z-1) prod (z-x_i)] dz^2.

    ``zeros`` lists the y_j (one per entry of ``m``), ``poles`` the k-3
    finite poles besides 0 and 1; the simple pole at infinity comes out of
    the degree count on its own.
    """
    m = tuple(int(x) for x in m)
    zeros = tuple(zeros)
    poles = tuple(poles)
    if sum(m) - k != -4:
        raise ValueError("orders minus pole count must equal -4")
    if len(zeros) != len(m):
        raise ValueError("need one zero location per order")
    if len(poles) != k - 3:
        raise ValueError(f"need exactly {k - 3} finite poles besides 0 and 1")
    marked = [0, 1, *poles, *zeros]
    if len(set(marked)) != len(marked):
        raise ValueError("marked points must be pairwise distinct")
    q = BaseDifferential(
        zero_orders=tuple(zip(zeros, m)),
        finite_poles=(0, 1, *poles),
    )
    assert q.order_at_infinity == -1
    assert q.total_order() == -4
    return q
