"""Dedekind's criterion, Ore's theorem and prime common index divisors."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .ffield import FqPoly, count_monic_irreducibles, fp_poly, fq_factor, fp_factor
from .polygon import (
    NewtonPolygon,
    ResidualPoly,
    Side,
    newton_polygon,
    phi_expand,
    residual_poly_from_expansion,
    residue_field,
)
from .zx import INFINITY, IntPoly, _vp, check_prime, discriminant

SCHEMA_ORE = "oreindex.ore/1"
SCHEMA_VERDICT = "oreindex.verdict/1"

# guard against runaway recentering; far above anything a separable input needs
MAX_BRANCH_DEPTH = 400


class RegularizationError(ValueError):
    """A first-order linear recentering cannot make F regular."""


def lift(phibar: FqPoly) -> IntPoly:
    """Monic integer lift with coefficients in [0, p)."""
    return IntPoly(phibar.monic().coeffs)


def dedekind_divides_index(F: IntPoly, p: int) -> bool:
    """Dedekind's criterion: True iff p divides (Z_K : Z[alpha])."""
    check_prime(p)
    if not F.is_monic():
        raise ValueError("F must be monic")
    factors = fp_factor(fp_poly(F.coeffs, p))
    prod = IntPoly((1,))
    for phibar, l in factors:
        prod = prod * lift(phibar) ** l
    M = (F - prod).exact_div(p)
    Mbar = fp_poly(M.coeffs, p)
    for phibar, l in factors:
        if l >= 2 and (Mbar.is_zero() or (Mbar % phibar).is_zero()):
            return True
    return False


@dataclass
class SideReport:
    side: Side
    residual: ResidualPoly
    factors: list[tuple[FqPoly, int]]

    @property
    def regular(self) -> bool:
        return all(a == 1 for _, a in self.factors)

    def to_dict(self) -> dict:
        return {
            **self.side.to_dict(),
            "residual": self.residual.poly.format(),
            "factors": [
                {"factor": psi.format(), "degree": psi.degree, "multiplicity": a}
                for psi, a in self.factors
            ],
            "regular": self.regular,
        }


@dataclass
class PhiReport:
    phi: IntPoly
    multiplicity: int
    polygon: NewtonPolygon
    sides: list[SideReport]
    index: int

    @property
    def regular(self) -> bool:
        return all(s.regular for s in self.sides)

    def shapes(self) -> list[tuple[int, int]]:
        """(e, f) for every residual factor of multiplicity one."""
        return [
            (s.side.e, self.phi.degree * psi.degree)
            for s in self.sides
            for psi, a in s.factors
            if a == 1
        ]

    def to_dict(self) -> dict:
        return {
            "phi": str(self.phi),
            "multiplicity": self.multiplicity,
            "index": self.index,
            "regular": self.regular,
            "vertices": [list(v) for v in self.polygon.principal_vertices],
            "sides": [s.to_dict() for s in self.sides],
        }


def analyze_phi(F: IntPoly, p: int, phi: IntPoly, multiplicity: int | None = None) -> PhiReport:
    """Polygon, residual polynomials and their factorizations for one phi."""
    exp = phi_expand(F, phi, p)
    if exp.valuations[0] == INFINITY:
        raise ValueError(f"{phi} divides F exactly; F is reducible")
    poly = newton_polygon(exp)
    F_phi = residue_field(phi, p)
    sides = []
    for S in poly.principal_sides:
        R = residual_poly_from_expansion(exp, S, F_phi)
        sides.append(SideReport(S, R, fq_factor(R.poly)))
    if multiplicity is None:
        multiplicity = sum(S.length for S in poly.principal_sides)
    return PhiReport(phi, multiplicity, poly, sides, phi.degree * poly.lattice_count())


@dataclass
class OreReport:
    p: int
    F: IntPoly
    factors: list[PhiReport]

    @property
    def index_lower_bound(self) -> int:
        return sum(r.index for r in self.factors)

    @property
    def p_regular(self) -> bool:
        return all(r.regular for r in self.factors)

    @property
    def shapes(self) -> list[tuple[int, int]]:
        """Prime-ideal shapes (e, f); complete only when p_regular."""
        return sorted(s for r in self.factors for s in r.shapes())

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_ORE,
            "polynomial": str(self.F),
            "p": self.p,
            "factors": [r.to_dict() for r in self.factors],
            "index_lower_bound": self.index_lower_bound,
            "p_regular": self.p_regular,
            "shapes": [list(s) for s in self.shapes],
            "shapes_complete": self.p_regular,
        }


def _check_separable(F: IntPoly) -> None:
    if F.degree >= 2 and discriminant(F) == 0:
        raise ValueError("F is inseparable")


def ore_analysis(F: IntPoly, p: int, check_separable: bool = True) -> OreReport:
    check_prime(p)
    if not F.is_monic():
        raise ValueError("F must be monic")
    if check_separable:
        _check_separable(F)
    reports = []
    for phibar, l in fp_factor(fp_poly(F.coeffs, p)):
        phi = lift(phibar)
        # any lift works; step away from lifts that are exact factors of F
        while phi_expand(F, phi, p).valuations[0] == INFINITY:
            phi = phi + p
        reports.append(analyze_phi(F, p, phi, l))
    return OreReport(p, F, reports)


@dataclass
class Regularization:
    s: int
    phi: IntPoly
    report: PhiReport
    steps: int


def _linear_root(psi: FqPoly) -> int:
    # psi is monic y + c over F_p
    return -psi.coeffs[0] % psi.field.p


def regularize_linear(F: IntPoly, p: int, u: int, max_steps: int | None = None) -> Regularization:
    """Find s = u (mod p) making F (x - s)-regular by recentering s <- s + t p^k.

    Raises RegularizationError when a non-squarefree residual is not a
    single repeated root on a side of integer slope.
    """
    check_prime(p)
    if F(u) % p:
        raise ValueError(f"x - {u} does not divide F mod {p}")
    if max_steps is None:
        d = discriminant(F)
        if d == 0:
            raise ValueError("F is inseparable")
        max_steps = _vp(d, p) // 2 + 1
    s = u
    for steps in range(max_steps + 1):
        phi = IntPoly.linear(s)
        rep = analyze_phi(F, p, phi)
        bad = [(sr, psi, a) for sr in rep.sides for psi, a in sr.factors if a > 1]
        if not bad:
            return Regularization(s, phi, rep, steps)
        if len(bad) > 1:
            raise RegularizationError(
                f"phi = {phi}: {len(bad)} repeated residual factors; one recentering cannot fix them"
            )
        sr, psi, a = bad[0]
        if sr.side.e != 1 or psi.degree != 1:
            raise RegularizationError(
                f"phi = {phi}: side {sr.side} slope {sr.side.slope_str()} has residual "
                f"{sr.residual.poly.format()} beyond first-order recentering"
            )
        s += _linear_root(psi) * p**sr.side.h
    raise RegularizationError(f"no regular element after {max_steps} recenterings")


@dataclass
class Census:
    """Prime ideals above p that the first-order analysis certifies.

    ``certain`` holds (e, f) per ideal; ``uncertain`` holds (e, f0, a) for a
    residual factor of degree f0 (times deg phi) and multiplicity a that could
    not be resolved: it accounts for between 1 and a ideals, each of residue
    degree a multiple of f0.
    """

    certain: list[tuple[int, int]] = field(default_factory=list)
    uncertain: list[tuple[int, int, int]] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.uncertain

    def lower_counts(self) -> Counter:
        return Counter(f for _, f in self.certain)

    def upper_counts(self) -> Counter:
        c = self.lower_counts()
        for _, f0, a in self.uncertain:
            for j in range(1, a + 1):
                c[f0 * j] += a // j
        return c


def _side_line(phi: IntPoly, rep_side: SideReport) -> str:
    S = rep_side.side
    fac = " * ".join(
        f"({psi.format()})" + (f"^{a}" if a > 1 else "") for psi, a in rep_side.factors
    )
    return (
        f"phi = {phi}: side {S} slope {S.slope_str()} degree {S.degree}: "
        f"R = {rep_side.residual.poly.format()} = {fac}"
    )


def _count_side(census: Census, phi: IntPoly, sr: SideReport, F: IntPoly, p: int,
                s: int | None, depth: int) -> None:
    census.trace.append(_side_line(phi, sr))
    e = sr.side.e
    for psi, a in sr.factors:
        f = phi.degree * psi.degree
        if a == 1:
            census.certain.append((e, f))
            census.trace.append(f"  ({psi.format()}) gives one prime with e = {e}, f = {f}")
        elif s is not None and e == 1 and psi.degree == 1:
            t = _linear_root(psi)
            s2 = s + t * p**sr.side.h
            census.trace.append(
                f"  ({psi.format()})^{a} repeated: recenter x - {s2} (s + {t}*{p}^{sr.side.h})"
            )
            _branch(census, F, p, s2, sr.side.h, a, depth + 1)
        else:
            census.uncertain.append((e, f, a))
            census.trace.append(
                f"  ({psi.format()})^{a} unresolved: between 1 and {a} primes, f multiple of {f}"
            )


def _branch(census: Census, F: IntPoly, p: int, s: int, k: int, mult: int, depth: int) -> None:
    if depth > MAX_BRANCH_DEPTH:
        census.uncertain.append((1, 1, mult))
        census.trace.append(f"  recentering depth limit reached at x - {s}")
        return
    phi = IntPoly.linear(s)
    exp = phi_expand(F, phi, p)
    if exp.valuations[0] == INFINITY:
        # s is a rational root; a center this close to it sees the same other roots
        d = discriminant(F)
        if d == 0:
            raise ValueError("F is inseparable")
        s += p ** (_vp(d, p) + k + 2)
        phi = IntPoly.linear(s)
        exp = phi_expand(F, phi, p)
    poly = newton_polygon(exp)
    F_phi = residue_field(phi, p)
    steep = [S for S in poly.principal_sides if S.slope < -k]
    if sum(S.length for S in steep) != mult:
        raise RuntimeError(
            f"branch at x - {s}: sides steeper than -{k} have length "
            f"{sum(S.length for S in steep)}, expected {mult}"
        )
    for S in steep:
        R = residual_poly_from_expansion(exp, S, F_phi)
        sr = SideReport(S, R, fq_factor(R.poly))
        _count_side(census, phi, sr, F, p, s, depth)


def ideal_census(F: IntPoly, p: int, report: OreReport | None = None) -> Census:
    """Certain and unresolved prime ideals above p, refining linear branches."""
    report = report or ore_analysis(F, p, check_separable=False)
    census = Census()
    for rep in report.factors:
        phi = rep.phi
        s = -phi[0] if phi.degree == 1 else None
        for sr in rep.sides:
            _count_side(census, phi, sr, F, p, s, 0)
    return census


@dataclass
class IndexDivisorVerdict:
    p: int
    divides: str  # "yes" | "no" | "undetermined"
    witness_f: int | None = None
    P_f: int | None = None
    N_f: int | None = None
    counts: dict[int, int] = field(default_factory=dict)
    complete: bool = True
    trace: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERDICT,
            "p": self.p,
            "divides": self.divides,
            "witness_f": self.witness_f,
            "P_f": self.P_f,
            "N_f": self.N_f,
            "counts": {str(f): c for f, c in sorted(self.counts.items())},
            "complete": self.complete,
            "trace": list(self.trace),
        }


def index_divisor_verdict(F: IntPoly, p: int) -> IndexDivisorVerdict:
    """Decide whether p is a prime common index divisor of Q[x]/(F).

    Uses the criterion P_f > N_f for some f, counting only ideals the
    polygon analysis certifies.
    """
    check_prime(p)
    if not F.is_monic():
        raise ValueError("F must be monic")
    n = F.degree
    if p > n:
        # P_f <= n / f <= N_f for every f once p > n
        assert all(n // f <= count_monic_irreducibles(p, f) for f in range(1, n + 1))
        return IndexDivisorVerdict(
            p, "no", trace=[f"p = {p} > deg F = {n}: P_f <= {n} < {p} = N_1 <= N_f"]
        )
    census = ideal_census(F, p)
    lower = census.lower_counts()
    counts = dict(sorted(lower.items()))
    for f in sorted(lower):
        N = count_monic_irreducibles(p, f)
        if lower[f] > N:
            trace = census.trace + [f"P_{f} >= {lower[f]} > N_{f} = {N}"]
            return IndexDivisorVerdict(p, "yes", f, lower[f], N, counts, census.complete, trace)
    upper = census.upper_counts()
    if all(upper[f] <= count_monic_irreducibles(p, f) for f in upper):
        trace = census.trace + [
            "P_f <= N_f for every f: "
            + ", ".join(f"P_{f} <= {upper[f]} <= N_{f} = {count_monic_irreducibles(p, f)}"
                        for f in sorted(upper))
        ]
        return IndexDivisorVerdict(p, "no", None, None, None, counts, census.complete, trace)
    trace = census.trace + ["first-order data cannot separate P_f from N_f"]
    return IndexDivisorVerdict(p, "undetermined", None, None, None, counts, False, trace)
