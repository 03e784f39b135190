"""Finite layers Z/m[t]/(t^n - 1) of the completed group ring.

A layer is a :class:`TruncRingCtx`; ``m == 0`` means integer coefficients.
Ideals are stored as the canonical row HNF of their additive lattice in
Z^n (for ``m > 0`` the lattice always contains ``m*Z^n``), so two ideals
are equal exactly when their bases are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from . import intmat
from .bigpoly import IntPoly
from .errors import CtxMismatch, IncompatibleLevels, NotAUnit, NotStabilized


@dataclass(frozen=True, order=True)
class TruncRingCtx:
    n: int
    m: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"level n must be >= 1, got {self.n}")
        if self.m < 0:
            raise ValueError(f"modulus m must be >= 0, got {self.m}")

    def is_above(self, other: TruncRingCtx) -> bool:
        """True when ``self`` maps onto ``other`` by a transition map."""
        if self.n % other.n:
            return False
        if self.m == 0:
            return True
        return other.m != 0 and self.m % other.m == 0

    def __str__(self):
        coeff = "Z" if self.m == 0 else f"Z/{self.m}"
        return f"{coeff}[t]/(t^{self.n}-1)"


@dataclass(frozen=True)
class RingElem:
    ctx: TruncRingCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.n:
            raise ValueError("coefficient vector length must equal ctx.n")
        if self.ctx.m:
            m = self.ctx.m
            if any(not 0 <= c < m for c in self.coeffs):
                object.__setattr__(self, "coeffs", tuple(c % m for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], ctx: TruncRingCtx) -> RingElem:
        return cls(ctx, tuple(coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __mul__(self, other: RingElem) -> RingElem:
        return ring_mul(self, other)

    def __add__(self, other: RingElem) -> RingElem:
        _same_ctx(self.ctx, other.ctx)
        return RingElem(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> RingElem:
        return RingElem(self.ctx, tuple(-a for a in self.coeffs))

    def lift(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def to_record(self) -> dict:
        return {"n": self.ctx.n, "m": self.ctx.m, "coeffs": [str(c) for c in self.coeffs]}


@dataclass(frozen=True)
class IdealLattice:
    ctx: TruncRingCtx
    basis: tuple[tuple[int, ...], ...]

    def is_zero(self) -> bool:
        """The zero ideal: empty for m == 0, m*Z^n otherwise."""
        return self.basis == _zero_basis(self.ctx)

    def is_unit_ideal(self) -> bool:
        return self.basis == _identity_basis(self.ctx.n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, x: RingElem) -> bool:
        return intmat.contains(self.basis, x.coeffs)

    def is_shift_closed(self) -> bool:
        return all(intmat.contains(self.basis, _shift(row)) for row in self.basis)

    def to_record(self) -> dict:
        return {"n": self.ctx.n, "m": self.ctx.m,
                "hnf": [[str(x) for x in row] for row in self.basis]}


@dataclass(frozen=True)
class FinAbGroup:
    """Z^rank plus Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2."""

    rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(d < 2 for d in f) or any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"not an invariant factor chain: {f}")

    @classmethod
    def from_diagonal(cls, rank: int, diag: Iterable[int]) -> FinAbGroup:
        return cls(rank, tuple(d for d in diag if d > 1))

    @property
    def order(self) -> int | None:
        """Group order, or None when the group is infinite."""
        return None if self.rank else prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"

    def to_record(self) -> dict:
        return {"rank": self.rank, "invariant_factors": [str(d) for d in self.invariant_factors]}


# ---------------------------------------------------------------------------


def _same_ctx(a: TruncRingCtx, b: TruncRingCtx) -> None:
    if a != b:
        raise CtxMismatch(f"context mismatch: {a} vs {b}")


def _zero_basis(ctx: TruncRingCtx) -> tuple[tuple[int, ...], ...]:
    if ctx.m == 0:
        return ()
    return tuple(tuple(ctx.m if i == j else 0 for j in range(ctx.n)) for i in range(ctx.n))


def _identity_basis(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _shift(row: Sequence[int]) -> list[int]:
    # multiplication by t
    return [row[-1]] + list(row[:-1])


def _lattice(rows: Iterable[Sequence[int]], ctx: TruncRingCtx) -> IdealLattice:
    return IdealLattice(ctx, tuple(intmat.hnf(list(rows), ctx.n, ctx.m)))


def reduce(f: IntPoly, ctx: TruncRingCtx) -> RingElem:
    """Image of f under Z[t] -> Z/m[t]/(t^n - 1)."""
    out = [0] * ctx.n
    for i, c in enumerate(f.coeffs):
        out[i % ctx.n] += c
    return RingElem(ctx, tuple(out))


def ring_mul(a: RingElem, b: RingElem) -> RingElem:
    _same_ctx(a.ctx, b.ctx)
    n = a.ctx.n
    out = [0] * n
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    out[(i + j) % n] += x * y
    return RingElem(a.ctx, tuple(out))


def multiplication_matrix(f: RingElem) -> list[list[int]]:
    """Row i holds the coefficients of t^i * f (cyclic shifts of f)."""
    row = list(f.coeffs)
    rows = []
    for _ in range(f.ctx.n):
        rows.append(row)
        row = _shift(row)
    return rows


def ideal_lattice(gens: Sequence[RingElem], ctx: TruncRingCtx) -> IdealLattice:
    """Lattice of the ideal generated by ``gens`` in the layer ``ctx``."""
    rows = []
    for g in gens:
        _same_ctx(g.ctx, ctx)
        rows.extend(multiplication_matrix(g))
    return _lattice(rows, ctx)


def ideal_equal(I: IdealLattice, J: IdealLattice) -> bool:
    _same_ctx(I.ctx, J.ctx)
    return I.basis == J.basis


def lattice_group(basis: Sequence[Sequence[int]], n: int) -> FinAbGroup:
    """Z^n modulo the row span of ``basis``."""
    diag = intmat.smith_diagonal(basis)
    return FinAbGroup.from_diagonal(n - len(diag), diag)


def quotient_group(gens: Sequence[RingElem], ctx: TruncRingCtx) -> FinAbGroup:
    """Additive group of the layer ring modulo the ideal generated by ``gens``."""
    return lattice_group(ideal_lattice(gens, ctx).basis, ctx.n)


def annihilator(f: RingElem) -> IdealLattice:
    """Ann(f) in the layer ring: ``{x : x * f = 0}`` as a lattice in Z^n."""
    ctx = f.ctx
    return IdealLattice(ctx, tuple(intmat.left_kernel(multiplication_matrix(f), ctx.n, ctx.m)))


def _check_unit(v: int, n: int) -> int:
    if gcd(v, n) != 1:
        raise NotAUnit(f"{v} is not a unit modulo {n}")
    return v % n


def _twist_vec(coeffs: Sequence[int], v: int, n: int) -> list[int]:
    out = [0] * n
    for i, c in enumerate(coeffs):
        out[(i * v) % n] += c
    return out


def twist(x: RingElem | IdealLattice, v: int):
    """Apply the automorphism t -> t^v (v a unit mod n)."""
    ctx = x.ctx
    v = _check_unit(v, ctx.n)
    if isinstance(x, RingElem):
        return RingElem(ctx, tuple(_twist_vec(x.coeffs, v, ctx.n)))
    return _lattice((_twist_vec(row, v, ctx.n) for row in x.basis), ctx)


def _check_transition(src: TruncRingCtx, target: TruncRingCtx) -> None:
    if not src.is_above(target):
        raise IncompatibleLevels(f"no transition map {src} -> {target}")


def _fold(coeffs: Sequence[int], target: TruncRingCtx) -> list[int]:
    out = [0] * target.n
    for i, c in enumerate(coeffs):
        out[i % target.n] += c
    return out


def transition(x: RingElem, target: TruncRingCtx) -> RingElem:
    """Transition map of the inverse system: fold exponents, reduce coefficients."""
    _check_transition(x.ctx, target)
    return RingElem(target, tuple(_fold(x.coeffs, target)))


def push_lattice(I: IdealLattice, target: TruncRingCtx) -> IdealLattice:
    """Image of an ideal under the (surjective) transition map."""
    _check_transition(I.ctx, target)
    return _lattice((_fold(row, target) for row in I.basis), target)


def intersect(I: IdealLattice, J: IdealLattice) -> IdealLattice:
    _same_ctx(I.ctx, J.ctx)
    ctx = I.ctx
    return IdealLattice(ctx, tuple(intmat.intersect(I.basis, J.basis, ctx.n, ctx.m)))


def doubling_schedule(target: TruncRingCtx, n_max: int = 32, m_max: int = 128) -> list[TruncRingCtx]:
    """Levels ``(n*2^k, m*2^k)`` capped componentwise at ``(n_max, m_max)``."""
    if target.m == 0:
        raise IncompatibleLevels("target layer must be finite (m > 0)")
    out = [target]
    n, m = target.n, target.m
    while n < n_max or m < m_max:
        n = min(2 * n, max(n_max, target.n))
        m = min(2 * m, max(m_max, target.m))
        out.append(TruncRingCtx(n, m))
    return out


def annihilator_images(f: IntPoly, target: TruncRingCtx,
                       schedule: Sequence[TruncRingCtx]) -> Iterator[tuple[TruncRingCtx, IdealLattice]]:
    """Running intersection of the images of Ann(f) pushed down to ``target``."""
    if target.m == 0:
        raise IncompatibleLevels("target layer must be finite (m > 0)")
    for level in schedule:
        _check_transition(level, target)
    running = None
    for level in schedule:
        image = push_lattice(annihilator(reduce(f, level)), target)
        running = image if running is None else intersect(running, image)
        yield level, running


def stable_annihilator_image(f: IntPoly, target: TruncRingCtx,
                             schedule: Sequence[TruncRingCtx]) -> IdealLattice:
    """Stable image of the annihilators Ann(f) at the ``target`` layer.

    Stability is declared when two consecutive schedule levels give the same
    image; the inverse limit of annihilators vanishes iff this is zero.
    """
    prev = None
    for _, image in annihilator_images(f, target, schedule):
        if prev is not None and image == prev:
            return image
        prev = image
    raise NotStabilized(f"images at {target} did not stabilize over {len(schedule)} levels")
