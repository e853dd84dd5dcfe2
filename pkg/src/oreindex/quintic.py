"""Closed-form index-divisor conditions for x^5 + a*x^2 + b, checked against the engine.

Two readings of the conditions are available.  ``printed`` evaluates them as
stated (residues of a read modulo 27 where the statement gives an incoherent
modulus).  ``derived`` evaluates the conditions that follow from carrying the
polygon argument through, which differ from the printed ones in a handful
of places recorded in the decisions ledger:

* p = 2, a = 2 mod 4, v2(b) = 3: the congruence is b2 + a2 = 4 mod 8.
* p = 2, a = 4 mod 8: v2(b) = 2 + 2k; k >= 2 uses b2 + a2 = 0 mod 8 and
  k = 1 needs a regular element.
* p = 3: C = b + a^3 - a^5 (not b + a^5 - a^3), B = F'(-a), the parity of
  v3(C) matters, and every class a = +-2 mod 9 is covered, not only the
  residues listed mod 27.
* both primes: a pair with p^3 | a and p^5 | b defines the same field as
  (a/p^3, b/p^5).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ffield import fp_factor, fp_poly
from .ore import IndexDivisorVerdict, RegularizationError, index_divisor_verdict, regularize_linear
from .zx import IntPoly, _vp, is_irreducible_Q

READINGS = ("printed", "derived")
SCHEMA_QUINTIC = "oreindex.quintic/1"


def quintic(a: int, b: int) -> IntPoly:
    return IntPoly((b, 0, a, 0, 0, 1))


def _unit(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def _normalize(a: int, b: int, p: int) -> tuple[int, int, int]:
    """Strip x -> p*x scalings; returns (a', b', number of steps)."""
    steps = 0
    while b and a % p**3 == 0 and b % p**5 == 0:
        a, b = a // p**3, b // p**5
        steps += 1
    return a, b, steps


@dataclass
class ConditionResult:
    divides: bool
    tag: str | None  # "T2.3-1", ..., "T2.4-5", or None
    note: str = ""

    def to_dict(self) -> dict:
        return {"divides": self.divides, "matched_condition": self.tag or "none", "note": self.note}


def _regular_element(a: int, b: int, p: int, u: int) -> int | None:
    try:
        return regularize_linear(quintic(a, b), p, u).s
    except RegularizationError:
        return None


# ---------------------------------------------------------------- p = 2


def _p2_printed(a: int, b: int) -> ConditionResult:
    if b == 0 or b % 2:
        return ConditionResult(False, None)
    vb = _vp(b, 2)
    b2 = _unit(b, 2)
    if a % 2 == 1:
        if vb % 2 == 0 and (b2 + a) % 4 == 0:
            return ConditionResult(True, "T2.3-1")
        return ConditionResult(False, None)
    if a % 4 == 2:
        a2 = _unit(a, 2)
        if vb % 2 == 1 and vb >= 3 and (b2 + a2) % 8 == 0:
            return ConditionResult(True, "T2.3-2")
        return ConditionResult(False, None)
    if a % 8 == 4:
        a2 = _unit(a, 2)
        if vb == 4 and (b2 + a2) % 8 == 0:
            return ConditionResult(True, "T2.3-3")
    return ConditionResult(False, None)


def _p2_derived(a: int, b: int) -> ConditionResult:
    if b == 0 or b % 2:
        return ConditionResult(False, None)
    a, b, steps = _normalize(a, b, 2)
    note = f"scaled x -> 2^{steps}x" if steps else ""
    if b % 2:
        # after scaling b is a unit, so no case applies
        return ConditionResult(False, None, note)
    vb = _vp(b, 2)
    b2 = _unit(b, 2)
    if a % 2 == 1:
        ok = vb % 2 == 0 and (b2 + a) % 4 == 0
        return ConditionResult(ok, "T2.3-1" if ok else None, note)
    if a % 4 == 2:
        a2 = _unit(a, 2)
        if vb % 2 == 1 and vb >= 3:
            k = (vb - 1) // 2
            ok = (b2 + a2 + 2 ** (3 * k - 1)) % 8 == 0
            return ConditionResult(ok, "T2.3-2" if ok else None, note)
        return ConditionResult(False, None, note)
    if a % 8 == 4 and vb % 2 == 0 and vb >= 4:
        a2 = _unit(a, 2)
        k = (vb - 2) // 2
        if k >= 2:
            ok = (b2 + a2) % 8 == 0
            return ConditionResult(ok, "T2.3-3" if ok else None, note)
        s = _regular_element(a, b, 2, 0)
        if s is None:
            return ConditionResult(False, None, "no first-order regular element")
        F = quintic(a, b)
        ok = _vp(F(s), 2) > 2 * _vp(F.derivative()(s), 2) - 2
        return ConditionResult(ok, "T2.3-3" if ok else None, (note + f" regular s = {s}").strip())
    return ConditionResult(False, None, note)


def thm_p2_condition(a: int, b: int, reading: str = "printed") -> ConditionResult:
    """Closed-form test whether 2 is a common index divisor of Q[x]/(x^5 + ax^2 + b)."""
    _check_reading(reading)
    return _p2_printed(a, b) if reading == "printed" else _p2_derived(a, b)


# ---------------------------------------------------------------- p = 3


def _s_test_printed(a: int, b: int, s: int) -> bool:
    c = b + a * s * s + s**5
    d = -2 * a * s + 5 * s**4
    vc, vd = _vp(c, 3), _vp(d, 3)
    if vc > 2 * vd - 1:
        return True
    return vc < 2 * vd - 1 and (_unit(c, 3) - a) % 3 == 0


def _p3_printed(a: int, b: int) -> ConditionResult:
    if b == 0 or b % 3:
        return ConditionResult(False, None)
    vb = _vp(b, 3)
    if vb % 2 == 0 and a % 9 in (1, 8) and (_unit(b, 3) * a) % 3 == 2:
        return ConditionResult(True, "T2.4-1")
    r27 = a % 27
    C = b + a**3 - a**5
    B = -2 * a * a + 5 * a**4
    if r27 in (7, 20) and (b - (a**3 - a**5)) % 81 == 0:
        vc, vB = _vp(C, 3), _vp(B, 3)
        if vc > 2 * vB - 1 or (vc < 2 * vB - 1 and (_unit(C, 3) - a) % 3 == 0):
            return ConditionResult(True, "T2.4-2")
        if (
            vc == 2 * vB - 1
            and (_unit(C, 3) + a) % 3 == 0
            and (_unit(B, 3) + a) % 3 == 0
        ):
            s = _regular_element(a, b, 3, -a)
            if s is None:
                return ConditionResult(False, None, "no first-order regular element")
            if _s_test_printed(a, b, s):
                return ConditionResult(True, "T2.4-3", f"regular s = {s}")
        return ConditionResult(False, None)
    for residues, shift, tag in (((2, 11), -27, "T2.4-4"), ((16, 25), 27, "T2.4-5")):
        if r27 in residues and (b - (shift + a**5 - a**3)) % 81 == 0:
            s = _regular_element(a, b, 3, -a)
            if s is None:
                return ConditionResult(False, None, "no first-order regular element")
            if _s_test_printed(a, b, s):
                return ConditionResult(True, tag, f"regular s = {s}")
            return ConditionResult(False, None)
    return ConditionResult(False, None)


def _p3_derived(a: int, b: int) -> ConditionResult:
    if b == 0 or b % 3:
        return ConditionResult(False, None)
    a, b, steps = _normalize(a, b, 3)
    note = f"scaled x -> 3^{steps}x" if steps else ""
    if b % 3:
        # after scaling b is a unit, so no case applies
        return ConditionResult(False, None, note)
    if a % 3 == 0:
        return ConditionResult(False, None, note)
    vb = _vp(b, 3)
    r9 = a % 9
    if r9 in (1, 8):
        ok = vb % 2 == 0 and (_unit(b, 3) * a) % 3 == 2
        return ConditionResult(ok, "T2.4-1" if ok else None, note)
    if r9 in (4, 5):
        return ConditionResult(False, None, note)
    # a = +-2 mod 9: x contributes one degree-one prime, x + a must contribute three
    r27 = a % 27
    side_tag = "T2.4-4" if r27 in (2, 11) else "T2.4-5" if r27 in (16, 25) else None
    F = quintic(a, b)
    outcome, tag = _three_primes_at(F, a, -a, side_tag)
    if outcome == "repeat":
        s = _regular_element(a, b, 3, -a)
        if s is None:
            return ConditionResult(False, None, (note + " no first-order regular element").strip())
        outcome, _ = _three_primes_at(F, a, s, side_tag)
        note = (note + f" regular s = {s}").strip()
        if outcome == "repeat":
            return ConditionResult(False, None, note + " still irregular")
    return ConditionResult(outcome, tag if outcome else None, note)


def _three_primes_at(F: IntPoly, a: int, s: int, side_tag: str | None):
    """Does x - s (s = -a mod 3, a = +-2 mod 9) give three degree-one primes over 3?

    Returns (True | False | "repeat", tag); "repeat" means a residual
    polynomial at this center has a repeated root.
    """
    C, B = F(s), F.derivative()(s)
    A3 = ((10 * s**3 + a) // 3) % 3
    vc, vB = _vp(C, 3), _vp(B, 3)
    if vc <= 2:
        return False, None
    if vc == 3:
        # one side of slope -1 and degree 3
        c1 = (B // 9) % 3 if vB == 2 else 0
        factors = fp_factor(fp_poly([(C // 27) % 3, c1, A3, 1], 3))
        if any(m > 1 for _, m in factors):
            return "repeat", side_tag
        return all(g.degree == 1 for g, _ in factors), side_tag
    if vB == 2:
        # (1,2)-(3,0) is one side of slope -1 and degree 2: y^2 + A3*y + B3
        B3 = (B // 9) % 3
        if (A3 * A3 - 4 * B3) % 3 == 0:
            return "repeat", side_tag
        return False, None
    C3 = _unit(C, 3) % 3
    if vc > 2 * vB - 1:
        return True, "T2.4-2"
    if vc < 2 * vB - 1:
        # single side (0,vc)-(2,1): degree 2 iff vc is odd, y^2 = -C3/A3
        return vc % 2 == 1 and (C3 + A3) % 3 == 0, "T2.4-2"
    # degree-2 side through (1,vB): A3*y^2 + B3*y + C3
    B3 = _unit(B, 3) % 3
    if (B3 * B3 - 4 * A3 * C3) % 3 == 0:
        return "repeat", "T2.4-3"
    return False, None


def thm_p3_condition(a: int, b: int, reading: str = "printed") -> ConditionResult:
    """Closed-form test whether 3 is a common index divisor of Q[x]/(x^5 + ax^2 + b)."""
    _check_reading(reading)
    return _p3_printed(a, b) if reading == "printed" else _p3_derived(a, b)


def _check_reading(reading: str) -> None:
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}; expected one of {READINGS}")


# ---------------------------------------------------------------- assembly

_CONDITIONS = {2: thm_p2_condition, 3: thm_p3_condition}


@dataclass
class QuinticVerdict:
    a: int
    b: int
    irreducible: bool
    reading: str = "printed"
    by_theorem: dict[int, ConditionResult] = field(default_factory=dict)
    by_engine: dict[int, IndexDivisorVerdict] = field(default_factory=dict)
    alternate: dict[int, ConditionResult] = field(default_factory=dict)
    consistent: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def common_index_divisors(self) -> list[int]:
        return [p for p, v in sorted(self.by_engine.items()) if v.divides == "yes"]

    def to_dict(self, trace: bool = False) -> dict:
        def engine(v: IndexDivisorVerdict) -> dict:
            d = v.to_dict()
            if not trace:
                d.pop("trace")
            return d

        return {
            "schema": SCHEMA_QUINTIC,
            "a": self.a,
            "b": self.b,
            "polynomial": str(quintic(self.a, self.b)),
            "irreducible": self.irreducible,
            "reading": self.reading,
            "by_theorem": {str(p): r.to_dict() for p, r in sorted(self.by_theorem.items())},
            "alternate_reading": {str(p): r.to_dict() for p, r in sorted(self.alternate.items())},
            "by_engine": {str(p): engine(v) for p, v in sorted(self.by_engine.items())},
            "common_index_divisors": self.common_index_divisors,
            "consistent": self.consistent,
            "notes": list(self.notes),
        }


def quintic_verdict(a: int, b: int, reading: str = "printed", primes=(2, 3, 5)) -> QuinticVerdict:
    """Closed form and engine verdicts for x^5 + ax^2 + b."""
    _check_reading(reading)
    F = quintic(a, b)
    if not is_irreducible_Q(F):
        return QuinticVerdict(a, b, False, reading, notes=["reducible over Q"])
    other = "derived" if reading == "printed" else "printed"
    v = QuinticVerdict(a, b, True, reading)
    for p in primes:
        v.by_engine[p] = index_divisor_verdict(F, p)
    for p, cond in _CONDITIONS.items():
        if p not in primes:
            continue
        res = cond(a, b, reading)
        alt = cond(a, b, other)
        v.by_theorem[p] = res
        v.alternate[p] = alt
        eng = v.by_engine[p].divides
        if eng == "undetermined":
            v.consistent = False
            v.notes.append(f"p={p}: engine undetermined")
        elif res.divides != (eng == "yes"):
            v.consistent = False
            v.notes.append(
                f"p={p}: {reading} {res.tag or 'none'} says {_yn(res.divides)}, engine {eng}; "
                f"{other} reading {alt.tag or 'none'} says {_yn(alt.divides)}"
                + (" (agrees with engine)" if alt.divides == (eng == "yes") else "")
            )
        if res.note:
            v.notes.append(f"p={p}: {res.note}")
    for p in primes:
        if p >= 5 and v.by_engine[p].divides != "no":
            v.consistent = False
            v.notes.append(f"p={p}: engine says {v.by_engine[p].divides}, expected no")
    return v


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"
