"""Checkers for the two degree-p^r families.

``mono``: F = x^(p^r) + p^v a x^m + p^u b, a non-monogenic polynomial whose
field is generated by theta = alpha^x / p^y with x*u - y*p^r = 1.

``dpr``: F = x^(p^r) + a x^m + b with p^(p+1) | a and b^(p-1) = 1 mod p^(p+1),
for which p is a common index divisor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ore import analyze_phi, index_divisor_verdict
from .polygon import Side, newton_polygon, phi_expand
from .zx import (
    IntPoly,
    _vp,
    check_prime,
    discriminant,
    is_eisenstein,
    is_prime,
    p_free_part,
    squarefree_by_trial,
)

SCHEMA_MONO = "oreindex.families.mono/1"
SCHEMA_DPR = "oreindex.families.dpr/1"


class PreconditionError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass
class PolygonMismatch(Exception):
    """The computed polygon does not contain a predicted side."""

    F: str
    phi: str
    expected: list[tuple[tuple[int, int], tuple[int, int]]]
    missing: list[tuple[tuple[int, int], tuple[int, int]]]
    vertices: list[tuple[int, int]]

    def __str__(self) -> str:
        return f"{self.F} at phi = {self.phi}: predicted sides {self.missing} not found; vertices {self.vertices}"


# ---------------------------------------------------------------- mono


@dataclass(frozen=True)
class MonoFamilyInstance:
    p: int
    r: int
    v: int
    u: int
    m: int
    a: int
    b: int

    @property
    def n(self) -> int:
        return self.p**self.r

    @property
    def F(self) -> IntPoly:
        c = [0] * (self.n + 1)
        c[self.n] = 1
        c[self.m] += self.p**self.v * self.a
        c[0] += self.p**self.u * self.b
        return IntPoly(c)

    @property
    def bezout(self) -> tuple[int, int]:
        """(x, y) with x*u - y*p^r = 1 and 0 <= x < p^r."""
        x = pow(self.u, -1, self.n)
        return x, (x * self.u - 1) // self.n

    @property
    def delta_p(self) -> int:
        return p_free_part(discriminant(self.F), self.p)

    def violations(self) -> list[str]:
        out = []
        if not is_prime(self.p):
            return [f"p = {self.p} is not prime"]
        if self.r < 1:
            out.append(f"r = {self.r} must be positive")
        for name in ("a", "b", "u"):
            if getattr(self, name) % self.p == 0:
                out.append(f"p divides {name} = {getattr(self, name)}")
        if not 2 <= self.u <= self.v:
            out.append(f"need 2 <= u <= v, got u = {self.u}, v = {self.v}")
        if self.r >= 1 and not 1 <= self.m < self.n:
            out.append(f"need 1 <= m < p^r = {self.n}, got m = {self.m}")
        return out


@dataclass
class MonoFamilyReport:
    instance: MonoFamilyInstance
    single_side: bool
    phi_index: int
    theta: tuple[int, int]
    theta_minpoly: IntPoly
    eisenstein_at_p: bool
    delta_p: int
    delta_p_squarefree: bool | None

    @property
    def poly_index_positive(self) -> bool:
        return self.phi_index > 0

    def to_dict(self) -> dict:
        i = self.instance
        return {
            "schema": SCHEMA_MONO,
            "p": i.p, "r": i.r, "v": i.v, "u": i.u, "m": i.m, "a": i.a, "b": i.b,
            "polynomial": str(i.F),
            "single_side": self.single_side,
            "phi_index": self.phi_index,
            "poly_index_positive": self.poly_index_positive,
            "theta": {"x": self.theta[0], "y": self.theta[1]},
            "theta_minpoly": str(self.theta_minpoly),
            "eisenstein_at_p": self.eisenstein_at_p,
            "delta_p": str(self.delta_p),
            "delta_p_squarefree": (
                "unknown" if self.delta_p_squarefree is None else self.delta_p_squarefree
            ),
        }


def _mulmod(f: IntPoly, g: IntPoly, F: IntPoly) -> IntPoly:
    return (f * g) % F


def _powmod(f: IntPoly, e: int, F: IntPoly) -> IntPoly:
    result, base = IntPoly((1,)), f % F
    while e:
        if e & 1:
            result = _mulmod(result, base, F)
        e >>= 1
        if e:
            base = _mulmod(base, base, F)
    return result


def charpoly_of_power(F: IntPoly, x_exp: int) -> IntPoly:
    """Characteristic polynomial of alpha^x_exp, alpha a root of monic F.

    This is Res_t(F(t), z - t^x_exp); it is computed as the characteristic
    polynomial of multiplication by t^x_exp on Z[t]/(F) (Faddeev-LeVerrier).
    """
    if not F.is_monic():
        raise ValueError("F must be monic")
    n = F.degree
    g = _powmod(IntPoly.x(), x_exp, F)
    # column j holds the coordinates of g * t^j
    cols = []
    col = g
    for _ in range(n):
        cols.append([col[i] for i in range(n)])
        col = _mulmod(col, IntPoly.x(), F)
    A = [[cols[j][i] for j in range(n)] for i in range(n)]

    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = _matmul(A, M)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            AM[i][i] += c_prev
        M = AM
        AMk = _matmul(A, M)
        tr = sum(AMk[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - k] = -tr // k
    return IntPoly(coeffs)


def _matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def theta_minpoly(F: IntPoly, x_exp: int, y_pow: int, p: int) -> IntPoly:
    """Monic integer polynomial g with g(alpha^x_exp / p^y_pow) = 0.

    Raises ValueError if the scaled characteristic polynomial is not integral.
    """
    check_prime(p)
    h = charpoly_of_power(F, x_exp)
    # certificate: h(alpha^x) = 0 in Z[t]/(F)
    ax = _powmod(IntPoly.x(), x_exp, F)
    acc = IntPoly()
    for c in reversed(h.coeffs):
        acc = _mulmod(acc, ax, F) + c
    if not (acc % F).is_zero():
        raise ArithmeticError("characteristic polynomial does not annihilate alpha^x")
    n = h.degree
    g = []
    for i, c in enumerate(h.coeffs):
        q = Fraction(c, p ** (y_pow * (n - i)))
        if q.denominator != 1:
            raise ValueError(
                f"coefficient of z^{i} is {q}: alpha^{x_exp}/{p}^{y_pow} is not integral"
            )
        g.append(int(q))
    return IntPoly(g)


def mono_family_check(inst: MonoFamilyInstance, trial_bound: int = 10**6) -> MonoFamilyReport:
    bad = inst.violations()
    if bad:
        raise PreconditionError(bad)
    F = inst.F
    exp = phi_expand(F, IntPoly.x(), inst.p)
    poly = newton_polygon(exp)
    expected = Side((0, inst.u), (inst.n, 0))
    single = poly.principal_sides == (expected,) and expected.degree == 1
    x, y = inst.bezout
    g = theta_minpoly(F, x, y, inst.p)
    dp = inst.delta_p
    return MonoFamilyReport(
        inst,
        single_side=single,
        phi_index=poly.lattice_count(),
        theta=(x, y),
        theta_minpoly=g,
        eisenstein_at_p=is_eisenstein(g, inst.p),
        delta_p=dp,
        delta_p_squarefree=squarefree_by_trial(dp, trial_bound),
    )


# ---------------------------------------------------------------- dpr


@dataclass
class DprReport:
    p: int
    r: int
    m: int
    a: int
    b: int
    conditions_ok: bool
    predicted_sides: list[tuple[tuple[int, int], tuple[int, int]]]
    side_count_ge: int
    P1: int
    N1: int
    helper_identity: dict[int, tuple[int, int]] = field(default_factory=dict)
    engine_verdict: str = ""

    @property
    def common_index_divisor(self) -> bool:
        return self.P1 > self.N1

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_DPR,
            "p": self.p, "r": self.r, "m": self.m, "a": self.a, "b": self.b,
            "polynomial": str(dpr_poly(self.p, self.r, self.m, self.a, self.b)),
            "conditions_ok": self.conditions_ok,
            "predicted_sides": [[list(s), list(e)] for s, e in self.predicted_sides],
            "side_count_ge": self.side_count_ge,
            "P1": self.P1,
            "N1": self.N1,
            "common_index_divisor": self.common_index_divisor,
            "engine_verdict": self.engine_verdict,
            "helper_identity": {
                str(k): {"lhs": l, "rhs": r} for k, (l, r) in sorted(self.helper_identity.items())
            },
        }


def dpr_poly(p: int, r: int, m: int, a: int, b: int) -> IntPoly:
    n = p**r
    c = [0] * (n + 1)
    c[n] = 1
    c[m] += a
    c[0] += b
    return IntPoly(c)


def dpr_violations(p: int, r: int, m: int, a: int, b: int) -> list[str]:
    if not is_prime(p) or p == 2:
        return [f"p = {p} must be an odd prime"]
    out = []
    if r < p:
        out.append(f"need r >= p, got r = {r}")
    if r >= 1 and not 1 <= m < p**r:
        out.append(f"need 1 <= m < p^r, got m = {m}")
    mod = p ** (p + 1)
    if a % mod:
        out.append(f"a = {a} is not 0 mod {p}^{p + 1}")
    if pow(b, p - 1, mod) != 1 % mod:
        out.append(f"b^{p - 1} = {pow(b, p - 1, mod)} mod {p}^{p + 1}, expected 1")
    return out


def helper_identity(p: int, b: int, k: int) -> tuple[int, int]:
    """(v_p((-b)^(p^k) + b), v_p(b^(p-1) - 1)); equal whenever p does not divide b."""
    return _vp((-b) ** (p**k) + b, p), _vp(b ** (p - 1) - 1, p)


def predicted_dpr_sides(p: int, r: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Sides (p^(r-j-1), j+1)-(p^(r-j), j) for j = 0..p that have integral endpoints."""
    return [((p ** (r - j - 1), j + 1), (p ** (r - j), j)) for j in range(p + 1) if j + 1 <= r]


def dpr_family_check(p: int, r: int, m: int, a: int, b: int, run_engine: bool = True) -> DprReport:
    bad = dpr_violations(p, r, m, a, b)
    if bad:
        raise PreconditionError(bad)
    F = dpr_poly(p, r, m, a, b)
    identity = {k: helper_identity(p, b, k) for k in range(1, r + 1)}
    if any(l != rr for l, rr in identity.values()):
        raise ArithmeticError(f"helper identity fails: {identity}")
    phi = IntPoly((b, 1))
    rep = analyze_phi(F, p, phi)
    sides = {(s.start, s.end) for s in rep.polygon.principal_sides}
    predicted = predicted_dpr_sides(p, r)
    missing = [s for s in predicted if s not in sides]
    first = rep.polygon.principal_sides[0]
    if r == p:
        # (p^(r-p-1), p+1) is not a lattice point: the (p+1)-th side is the first
        # one, ending at (1, p) and starting at height at least p + 1
        if not (first.start[0] == 0 and first.start[1] >= p + 1 and first.end == (1, p)):
            missing.append(((0, p + 1), (1, p)))
        else:
            predicted = [(first.start, first.end)] + predicted
    if missing:
        raise PolygonMismatch(
            str(F), str(phi), predicted, missing, list(rep.polygon.principal_vertices)
        )
    degree_one = sum(1 for s in rep.polygon.principal_sides if s.degree == 1)
    P1 = sum(1 for _, f in rep.shapes() if f == 1)
    engine = index_divisor_verdict(F, p).divides if run_engine else ""
    return DprReport(
        p, r, m, a, b,
        conditions_ok=True,
        predicted_sides=sorted(predicted),
        side_count_ge=degree_one,
        P1=P1,
        N1=p,
        helper_identity=identity,
        engine_verdict=engine,
    )
