"""Cyclic resultants and the finite-level comparison of polynomial ideals.

Everything that compares two polynomials through their layers
Z/m[t]/(t^n - 1) lives here: the Weber order check, stripping common
cyclotomic factors, Fried-sequence comparison and bounded reconstruction,
and the search for twist units v making (f) and (g(t^v)) equal level by
level. Agreement over finitely many levels is evidence only; every report
carries ``finite_level_only: True`` to say so.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .bigpoly import (IntPoly, cyclotomic, cyclotomic_divisors, exact_div,
                      normalize_unit, resultant)
from .errors import EmptySequence, NonDivisorClosedLevels, ZeroPolynomial
from .quotring import (FinAbGroup, TruncRingCtx, ideal_equal, ideal_lattice, quotient_group,
                       reduce, twist)


def _nonzero(*polys: IntPoly) -> None:
    for p in polys:
        if p.is_zero():
            raise ZeroPolynomial("zero polynomial not allowed here")


def cyclic_resultant(f: IntPoly, n: int) -> int:
    """r_n(f) = resultant(f, t^n - 1)."""
    _nonzero(f)
    if n < 1:
        raise ValueError("n must be >= 1")
    return resultant(f, IntPoly.t_pow_minus_one(n))


def cyclic_resultants(f: IntPoly, N: int) -> list[int]:
    return [cyclic_resultant(f, n) for n in range(1, N + 1)]


@dataclass(frozen=True)
class CycResSeq:
    poly: IntPoly
    values: tuple[int, ...]

    @classmethod
    def compute(cls, f: IntPoly, N: int) -> CycResSeq:
        return cls(f, tuple(cyclic_resultants(f, N)))

    @property
    def N(self) -> int:
        return len(self.values)

    @property
    def abs_values(self) -> list[int]:
        return [abs(v) for v in self.values]

    def to_record(self) -> dict:
        return {"N": self.N, "abs_values": [str(v) for v in self.abs_values]}


def sequence_from_record(rec: dict) -> list[int]:
    vals = [int(v) for v in rec["abs_values"]]
    if "N" in rec and int(rec["N"]) != len(vals):
        raise ValueError(f"sequence record says N={rec['N']} but has {len(vals)} values")
    return vals


# ---------------------------------------------------------------------------


@dataclass
class WeberReport:
    n: int
    resultant: int
    group: FinAbGroup
    status: str  # "pass" | "fail" | "vanishing_resultant"
    passed: bool

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "resultant": str(self.resultant),
            "abs_resultant": str(abs(self.resultant)),
            "group": self.group.to_record(),
            "status": self.status,
            "passed": self.passed,
        }


def weber_check(f: IntPoly, n: int) -> WeberReport:
    """Compare Z[t]/(f, t^n - 1), computed by Smith form, with |r_n(f)|."""
    r = cyclic_resultant(f, n)
    ctx = TruncRingCtx(n, 0)
    grp = quotient_group([reduce(f, ctx)], ctx)
    if r:
        ok = grp.rank == 0 and grp.order == abs(r)
        return WeberReport(n, r, grp, "pass" if ok else "fail", ok)
    ok = grp.rank >= 1
    return WeberReport(n, r, grp, "vanishing_resultant" if ok else "fail", ok)


def strip_common_cyclotomic(f: IntPoly, g: IntPoly) -> tuple[IntPoly, IntPoly, list[int]]:
    """Divide out cyclotomic factors common to f and g, with multiplicity.

    >>> a, b, ms = strip_common_cyclotomic(IntPoly([-1, 0, 1]), IntPoly([1, 2, 2, 1]))
    >>> a, b, ms
    (IntPoly('t - 1'), IntPoly('t^2 + t + 1'), [2])
    """
    _nonzero(f, g)
    stripped: list[int] = []
    while True:
        common = sorted(set(cyclotomic_divisors(f)) & set(cyclotomic_divisors(g)))
        if not common:
            return f, g, stripped
        for m in common:
            phi = cyclotomic(m)
            f = exact_div(f, phi)
            g = exact_div(g, phi)
            stripped.append(m)


def equal_up_to_unit(f: IntPoly, g: IntPoly) -> bool:
    _nonzero(f, g)
    return normalize_unit(f)[0] == normalize_unit(g)[0]


def default_fried_bound(f: IntPoly, g: IntPoly) -> int:
    return 4 * (f.degree + g.degree) + 12


@dataclass
class FriedReport:
    N: int
    agree: bool
    first_mismatch: int | None
    abs_f: list[int]
    abs_g: list[int]

    def to_record(self) -> dict:
        return {
            "N": self.N,
            "agree": self.agree,
            "first_mismatch": self.first_mismatch,
            "abs_values_f": [str(v) for v in self.abs_f],
            "abs_values_g": [str(v) for v in self.abs_g],
            "note": f"agreement is evidence up to N={self.N}, not proof",
            "finite_level_only": True,
        }


def fried_verify(f: IntPoly, g: IntPoly, N: int | None = None) -> FriedReport:
    """Compare |r_n(f)| and |r_n(g)| for n = 1..N, stopping at the first mismatch."""
    _nonzero(f, g)
    if N is None:
        N = default_fried_bound(f, g)
    if N < 1:
        raise ValueError("N must be >= 1")
    af, ag = [], []
    for n in range(1, N + 1):
        a, b = abs(cyclic_resultant(f, n)), abs(cyclic_resultant(g, n))
        af.append(a)
        ag.append(b)
        if a != b:
            return FriedReport(N, False, n, af, ag)
    return FriedReport(N, True, None, af, ag)


def fried_pair(p: int = 2, q: int = 3) -> tuple[IntPoly, IntPoly]:
    """F = Phi_pq Phi_p^2q Phi_pq^2 and G = Phi_p^2q^2 Phi_pq^2."""
    F = cyclotomic(p * q) * cyclotomic(p * p * q) * cyclotomic(p * q * q)
    G = cyclotomic(p * p * q * q) * cyclotomic(p * q) * cyclotomic(p * q)
    return F, G


def first_distinguishing_level(f: IntPoly, g: IntPoly, max_n: int) -> tuple[int | None, dict]:
    """Smallest n <= max_n where Z[t]/(f, t^n-1) and Z[t]/(g, t^n-1) differ as groups."""
    seen = {}
    for n in range(1, max_n + 1):
        ctx = TruncRingCtx(n, 0)
        gf = quotient_group([reduce(f, ctx)], ctx)
        gg = quotient_group([reduce(g, ctx)], ctx)
        seen[n] = (gf, gg)
        if gf != gg:
            return n, seen
    return None, seen


# ---------------------------------------------------------------------------
# bounded reconstruction


def reciprocal_candidates(d_max: int, h_max: int):
    """Reciprocal polynomials of degree <= d_max, height <= h_max, in
    unit-normal form (nonzero constant term, positive leading coefficient)."""
    for d in range(d_max + 1):
        half = d // 2 + 1
        for lead in range(1, h_max + 1):
            for rest in itertools.product(range(-h_max, h_max + 1), repeat=half - 1):
                front = (lead,) + rest
                coeffs = front + front[: d + 1 - half][::-1]
                yield IntPoly(coeffs)


@dataclass
class ReconstructionReport:
    N: int
    d_max: int
    h_max: int
    candidates: list[IntPoly]
    vanishing_levels: list[int]
    examined: int

    @property
    def unique(self) -> bool:
        return len(self.candidates) == 1

    def to_record(self) -> dict:
        rec = {
            "N": self.N,
            "deg_max": self.d_max,
            "height_max": self.h_max,
            "examined": self.examined,
            "candidates": [c.to_record() for c in self.candidates],
            "candidates_text": [str(c) for c in self.candidates],
            "vanishing_levels": self.vanishing_levels,
            "fried_hypothesis_holds": not self.vanishing_levels,
            "finite_level_only": True,
        }
        if self.vanishing_levels:
            rec["note"] = (f"sequence vanishes at n={self.vanishing_levels[0]}; "
                           "nonvanishing hypothesis fails, uniqueness not expected")
        else:
            rec["note"] = f"match is evidence up to N={self.N} within the search bounds"
        return rec


def reconstruct(seq: list[int], d_max: int, h_max: int) -> ReconstructionReport:
    """All bounded reciprocal candidates whose |r_1..r_N| equal ``seq``.

    Candidates are filtered one level at a time, cheapest first.
    """
    if not seq:
        raise EmptySequence("empty cyclic resultant sequence")
    if d_max < 0 or h_max < 1:
        raise ValueError("need d_max >= 0 and h_max >= 1")
    seq = [abs(int(v)) for v in seq]
    pool = list(reciprocal_candidates(d_max, h_max))
    examined = len(pool)
    for n, target in enumerate(seq, start=1):
        pool = [f for f in pool if abs(cyclic_resultant(f, n)) == target]
        if not pool:
            break
    pool.sort()
    vanishing = [n for n, v in enumerate(seq, start=1) if v == 0]
    return ReconstructionReport(len(seq), d_max, h_max, pool, vanishing, examined)


def reconstruct_reciprocal(seq: list[int], d_max: int, h_max: int) -> list[IntPoly]:
    return reconstruct(seq, d_max, h_max).candidates


# ---------------------------------------------------------------------------
# twist matching across levels


def unit_residues(n: int) -> list[int]:
    """Representatives of (Z/n)^*, taken in 1..n (so level 1 gives [1])."""
    return [v for v in range(1, n + 1) if gcd(v, n) == 1]


def divisor_closure(levels) -> list[int]:
    out = set()
    for n in levels:
        out.update(d for d in range(1, n + 1) if n % d == 0)
    return sorted(out)


def check_divisor_closed(levels) -> list[int]:
    lv = sorted(set(int(n) for n in levels))
    if not lv or lv[0] < 1:
        raise NonDivisorClosedLevels("levels must be a nonempty set of positive integers")
    present = set(lv)
    for n in lv:
        for d in range(1, n):
            if n % d == 0 and d not in present:
                raise NonDivisorClosedLevels(f"level {n} present but its divisor {d} is not")
    return lv


@dataclass
class TwistMatchReport:
    levels: list[int]
    modulus: int
    candidates: dict[int, list[int]]
    maps_consistent: bool
    compatible: bool
    family: dict[int, int] | None
    witness_level: int | None
    finite_level_only: bool = field(default=True)

    def to_record(self) -> dict:
        return {
            "levels": self.levels,
            "modulus": self.modulus,
            "candidates": {str(n): self.candidates[n] for n in self.levels},
            "maps_consistent": self.maps_consistent,
            "compatible": self.compatible,
            "verdict": ("compatible family exists among tested levels" if self.compatible
                        else "no compatible family"),
            "family": None if self.family is None else {str(n): v for n, v in self.family.items()},
            "witness_level": self.witness_level,
            "finite_level_only": self.finite_level_only,
        }


def twist_candidates(f: IntPoly, g: IntPoly, ctx: TruncRingCtx) -> list[int]:
    """All v in (Z/n)^* with twist((f), v) == (g) in the layer ``ctx``."""
    I_f = ideal_lattice([reduce(f, ctx)], ctx)
    I_g = ideal_lattice([reduce(g, ctx)], ctx)
    return [v for v in unit_residues(ctx.n) if ideal_equal(twist(I_f, v), I_g)]


def profinite_ideal_match(f: IntPoly, g: IntPoly, levels, m: int = 0) -> TwistMatchReport:
    """Search level by level for units v with (f(t^v)) = (g(t)).

    For each level n the candidate set V_n is found exhaustively. Then the
    reduction maps V_n' -> V_n (n | n') are checked, and a compatible family
    is searched for as a residue class modulo lcm(levels) that reduces into
    every V_n.
    """
    _nonzero(f, g)
    lv = check_divisor_closed(levels)
    cands = {n: twist_candidates(f, g, TruncRingCtx(n, m)) for n in lv}

    witness = next((n for n in lv if not cands[n]), None)
    maps_ok = True
    for n, n2 in itertools.combinations(lv, 2):
        if n2 % n == 0:
            image = {v % n or n for v in cands[n2]}
            if not image <= set(v % n or n for v in cands[n]):
                maps_ok = False
                if witness is None:
                    witness = n2

    family = None
    if witness is None:
        family, witness = _compatible_family(lv, cands)
    compatible = family is not None and maps_ok
    return TwistMatchReport(lv, m, cands, maps_ok, compatible, family, witness)


def _compatible_family(levels: list[int], cands: dict[int, list[int]]):
    # residues x mod L such that x mod n lies in V_n for every processed n
    L = 1
    sols = [0]
    for n in levels:
        allowed = {v % n for v in cands[n]}
        newL = L * n // gcd(L, n)
        sols = [x for s in sols for x in range(s, newL, L) if x % n in allowed]
        L = newL
        if not sols:
            return None, n
    x = sols[0]
    return {n: (x % n) or n for n in levels}, None
