"""Formal algebra of tempered representations of the real Weil group.

An irreducible is either a unitary character of ℝ^× pulled back through the
abelianization, ``Char(a, t)`` = sgn^a·|·|^{it}, or the two-dimensional induced
representation ``Disc(k, t)`` = D_k ⊗ |·|^{it} with k ≥ 1.  Twists t live in
``fractions.Fraction`` so that equality (hence canonical forms, duals, tensor
bookkeeping) is exact.

A ``WeilRep`` is a finite multiset of irreducibles.  The tensor rules are the
classical ones:

    Char(a,s) ⊗ Char(b,t) = Char(a+b mod 2, s+t)
    Char(a,s) ⊗ Disc(k,t) = Disc(k, s+t)
    Disc(k,s) ⊗ Disc(l,t) = Disc(k+l, s+t) ⊕ Disc(|k−l|, s+t)      (k ≠ l)
    Disc(k,s) ⊗ Disc(k,t) = Disc(2k, s+t) ⊕ Char(0,s+t) ⊕ Char(1,s+t)

and are cross-checked numerically by the character traces in :func:`trace`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from collections.abc import Mapping
from typing import Iterable, Union

__all__ = [
    "CharRep",
    "DiscRep",
    "IrredRep",
    "SelfDualType",
    "WeilRep",
    "WeilElement",
    "dual",
    "self_dual_type",
    "irred_dim",
    "tensor",
    "trace",
    "irred_to_json",
    "irred_from_json",
    "weilrep_to_json",
    "weilrep_from_json",
]


def _as_fraction(t) -> Fraction:
    if isinstance(t, Fraction):
        return t
    if isinstance(t, int):
        return Fraction(t)
    if isinstance(t, str):
        return Fraction(t)
    raise TypeError(f"twist must be an exact rational, got {type(t).__name__}")


@dataclass(frozen=True, order=True)
class CharRep:
    """The character sgn^a · |·|^{it} of W_ℝ (one-dimensional)."""

    a: int
    t: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.a not in (0, 1):
            raise ValueError("sign exponent a must be 0 or 1")
        object.__setattr__(self, "t", _as_fraction(self.t))


@dataclass(frozen=True, order=True)
class DiscRep:
    """The discrete-series parameter D_k ⊗ |·|^{it} (two-dimensional), k ≥ 1.

    D_0 is reducible (it is Char(0) ⊕ Char(1)) and is rejected here.
    """

    k: int
    t: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError("D_k requires an integer k >= 1; D_0 is reducible "
                             "and must be entered as Char(0,t) + Char(1,t)")
        object.__setattr__(self, "t", _as_fraction(self.t))


IrredRep = Union[CharRep, DiscRep]


def _sort_key(rho: IrredRep):
    if isinstance(rho, CharRep):
        return (0, rho.a, rho.t)
    return (1, rho.k, rho.t)


class SelfDualType(Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    NOT_SELF_DUAL = "not-self-dual"


def irred_dim(rho: IrredRep) -> int:
    return 1 if isinstance(rho, CharRep) else 2


def dual(rho: IrredRep) -> IrredRep:
    """Contragredient: negate the unitary twist."""
    if isinstance(rho, CharRep):
        return CharRep(rho.a, -rho.t)
    return DiscRep(rho.k, -rho.t)


def self_dual_type(rho: IrredRep) -> SelfDualType:
    """Sign of the invariant pairing of a self-dual irreducible.

    Characters carry a symmetric pairing.  For D_k the invariant bilinear form
    is symmetric exactly when k is even: the form on the induced model is
    scaled by (−1)^k under the non-trivial Weil element.
    """
    if rho.t != 0:
        return SelfDualType.NOT_SELF_DUAL
    if isinstance(rho, CharRep):
        return SelfDualType.ORTHOGONAL
    return SelfDualType.ORTHOGONAL if rho.k % 2 == 0 else SelfDualType.SYMPLECTIC


class WeilRep:
    """A finite multiset of irreducible W_ℝ-representations, kept canonical."""

    __slots__ = ("_summands",)

    def __init__(self, items: Iterable = ()) -> None:
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict[IrredRep, int] = {}
        for item in items:
            if isinstance(item, (CharRep, DiscRep)):
                rho, mult = item, 1
            else:
                rho, mult = item
                mult = int(mult)
            if not isinstance(rho, (CharRep, DiscRep)):
                raise TypeError(f"not an irreducible: {rho!r}")
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
            acc[rho] = acc.get(rho, 0) + mult
        object.__setattr__(
            self,
            "_summands",
            tuple(sorted(acc.items(), key=lambda kv: _sort_key(kv[0]))),
        )

    @staticmethod
    def zero() -> "WeilRep":
        return WeilRep()

    @property
    def summands(self) -> tuple[tuple[IrredRep, int], ...]:
        return self._summands

    def constituents(self) -> list[IrredRep]:
        return [rho for rho, _ in self._summands]

    def mult(self, rho: IrredRep) -> int:
        for sigma, m in self._summands:
            if sigma == rho:
                return m
        return 0

    @property
    def dim(self) -> int:
        return sum(m * irred_dim(rho) for rho, m in self._summands)

    def dual(self) -> "WeilRep":
        return WeilRep((dual(rho), m) for rho, m in self._summands)

    def __add__(self, other: "WeilRep") -> "WeilRep":
        if not isinstance(other, WeilRep):
            return NotImplemented
        return WeilRep(list(self._summands) + list(other._summands))

    def __eq__(self, other) -> bool:
        return isinstance(other, WeilRep) and self._summands == other._summands

    def __hash__(self) -> int:
        return hash(self._summands)

    def __iter__(self):
        return iter(self._summands)

    def __len__(self) -> int:
        return len(self._summands)

    def __bool__(self) -> bool:
        return bool(self._summands)

    def __repr__(self) -> str:
        if not self._summands:
            return "WeilRep()"
        parts = []
        for rho, m in self._summands:
            head = f"{m}*" if m > 1 else ""
            parts.append(head + repr(rho))
        return "WeilRep[" + " + ".join(parts) + "]"


def _tensor_irred(rho: IrredRep, sigma: IrredRep) -> list[IrredRep]:
    s = rho.t + sigma.t
    if isinstance(rho, CharRep) and isinstance(sigma, CharRep):
        return [CharRep((rho.a + sigma.a) % 2, s)]
    if isinstance(rho, CharRep):
        return [DiscRep(sigma.k, s)]
    if isinstance(sigma, CharRep):
        return [DiscRep(rho.k, s)]
    if rho.k != sigma.k:
        return [DiscRep(rho.k + sigma.k, s), DiscRep(abs(rho.k - sigma.k), s)]
    return [DiscRep(2 * rho.k, s), CharRep(0, s), CharRep(1, s)]


def tensor(A: WeilRep, B: WeilRep) -> WeilRep:
    """Tensor product, extended bilinearly over the direct sums."""
    pieces: list[tuple[IrredRep, int]] = []
    for rho, m in A:
        for sigma, n in B:
            for tau in _tensor_irred(rho, sigma):
                pieces.append((tau, m * n))
    return WeilRep(pieces)


@dataclass(frozen=True)
class WeilElement:
    """A point of W_ℝ = ℂ^× ∪ j·ℂ^×: the value ``z`` with an optional j in front."""

    z: complex
    flip: bool = False

    def __post_init__(self) -> None:
        if self.z == 0:
            raise ValueError("z must be a nonzero complex number")


def trace(x, g: WeilElement) -> complex:
    """Character value of an irreducible or a WeilRep at a Weil-group element.

    Char(a,t) factors through w ↦ (sgn w)·|w|: at z it takes (z z̄)^{it}, at j·z
    the sign contributes (−1)^a.  Disc(k,t) has trace 2cos(kθ)(z z̄)^{it} on
    ℂ^× and vanishes off the identity component.
    """
    if isinstance(x, WeilRep):
        return sum(m * trace(rho, g) for rho, m in x)
    norm = (g.z * g.z.conjugate()).real  # z z̄ > 0
    twist = cmath.exp(1j * float(x.t) * math.log(norm))
    if isinstance(x, CharRep):
        return ((-1) ** x.a if g.flip else 1) * twist
    if g.flip:
        return 0j
    theta = cmath.phase(g.z)
    return 2 * math.cos(x.k * theta) * twist


def irred_to_json(rho: IrredRep) -> dict:
    if isinstance(rho, CharRep):
        return {"kind": "char", "a": rho.a, "t": str(rho.t)}
    return {"kind": "disc", "k": rho.k, "t": str(rho.t)}


def irred_from_json(obj: dict) -> IrredRep:
    kind = obj.get("kind")
    if kind == "char":
        return CharRep(int(obj["a"]), Fraction(str(obj["t"])))
    if kind == "disc":
        return DiscRep(int(obj["k"]), Fraction(str(obj["t"])))
    raise ValueError(f"unknown irreducible kind: {kind!r}")


def weilrep_to_json(A: WeilRep) -> list:
    return [{"rep": irred_to_json(rho), "mult": m} for rho, m in A]


def weilrep_from_json(arr) -> WeilRep:
    if not isinstance(arr, list):
        raise ValueError("a WeilRep is encoded as a list of {rep, mult} entries")
    out = []
    for entry in arr:
        out.append((irred_from_json(entry["rep"]), int(entry.get("mult", 1))))
    return WeilRep(out)
