"""Signature arithmetic for non-degenerate quadratic spaces over the reals.

Everything in this module is signature-level: over the reals a non-degenerate
quadratic space is determined up to isomorphism by its positive and negative
indices (p, q), so no Gram matrices are ever materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "NotAdmissible",
    "QuadSpace",
    "AdmissiblePair",
    "discriminant",
    "pure_inner_forms",
    "is_quasi_split",
    "quasi_split_form",
    "quasi_split_forms",
    "kottwitz_sign",
    "is_admissible_pair",
    "relevant_pairs",
    "space_to_json",
    "space_from_json",
]


class NotAdmissible(ValueError):
    """The pair (W, V) does not decompose as V = W ⟂ D ⟂ Z."""


@dataclass(frozen=True, order=True)
class QuadSpace:
    """A real quadratic space with positive index ``p`` and negative index ``q``."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("signature entries must be integers")
        if self.p < 0 or self.q < 0:
            raise ValueError(f"negative signature entry in ({self.p}, {self.q})")

    @property
    def dim(self) -> int:
        return self.p + self.q

    @property
    def delta(self) -> int:
        """Signature defect p − q."""
        return self.p - self.q

    def orthogonal_sum(self, other: "QuadSpace") -> "QuadSpace":
        return QuadSpace(self.p + other.p, self.q + other.q)

    def __repr__(self) -> str:
        return f"QuadSpace({self.p}, {self.q})"


def discriminant(V: QuadSpace) -> int:
    """Sign of the discriminant, (−1)^⌊dim/2⌋ · (−1)^q."""
    return -1 if (V.dim // 2 + V.q) % 2 else 1


def pure_inner_forms(V: QuadSpace) -> list[QuadSpace]:
    """All signatures with the same dimension and discriminant as ``V``.

    Same-discriminant at fixed dimension is the congruence p' ≡ p (mod 2).
    Returned with p descending; ``V`` itself is always a member.
    """
    d = V.dim
    top = d if (d - V.p) % 2 == 0 else d - 1
    return [QuadSpace(pp, d - pp) for pp in range(top, -1, -2)]


def is_quasi_split(V: QuadSpace) -> bool:
    """True iff SO(V) is quasi-split: |Δ| ≤ 1 (odd dim) or Δ ∈ {0, ±2} (even dim)."""
    if V.dim % 2:
        return abs(V.delta) <= 1
    return V.delta in (-2, 0, 2)


def quasi_split_forms(V: QuadSpace) -> list[QuadSpace]:
    """Quasi-split members of the pure inner class of ``V``, p descending.

    There is exactly one except in even dimension with Δ ≡ 2 (mod 4), where the
    class contains both (m+1, m−1) and (m−1, m+1).
    """
    return [W for W in pure_inner_forms(V) if is_quasi_split(W)]

def quasi_split_form(V: QuadSpace) -> QuadSpace:
    """The quasi-split pure inner form of ``V``; ties broken toward p ≥ q."""
    forms = quasi_split_forms(V)
    if not forms:  # cannot happen: every class contains a quasi-split form
        raise AssertionError(f"no quasi-split form in the class of {V}")
    if V.dim % 2 or V.delta % 4 == 0:
        assert len(forms) == 1
    return forms[0]


def kottwitz_sign(V: QuadSpace) -> int:
    """Kottwitz sign e(SO(V)): +1 for even dim, (−1)^{((p−q)²−1)/8} for odd."""
    if V.dim % 2 == 0:
        return 1
    return -1 if ((V.delta ** 2 - 1) // 8) % 2 else 1


@dataclass(frozen=True)
class AdmissiblePair:
    """W ⟂ D ⟂ Z = V with D an anisotropic line and Z split of dimension 2r."""

    W: QuadSpace
    V: QuadSpace
    r: int
    d_sign: int

    def __post_init__(self) -> None:
        if self.d_sign not in (1, -1):
            raise ValueError("d_sign must be ±1")
        if self.r < 0:
            raise ValueError("r must be non-negative")
        gap = self.V.dim - self.W.dim
        if gap != 2 * self.r + 1:
            raise ValueError("dim V − dim W must equal 2r + 1")
        if (
            self.V.p != self.W.p + self.r + (1 if self.d_sign > 0 else 0)
            or self.V.q != self.W.q + self.r + (1 if self.d_sign < 0 else 0)
        ):
            raise ValueError(f"({self.W}, {self.V}) is not W ⟂ D ⟂ Z shaped")

    @property
    def line(self) -> QuadSpace:
        """The anisotropic line D."""
        return QuadSpace(1, 0) if self.d_sign > 0 else QuadSpace(0, 1)

    @property
    def w_perp(self) -> QuadSpace:
        """Orthogonal complement of W in V, namely D ⟂ Z."""
        return QuadSpace(self.V.p - self.W.p, self.V.q - self.W.q)


def is_admissible_pair(W: QuadSpace, V: QuadSpace) -> AdmissiblePair | None:
    """Decompose V = W ⟂ D ⟂ Z if possible, returning the (r, d_sign) datum."""
    a, b = V.p - W.p, V.q - W.q
    if a < 0 or b < 0 or (a + b) % 2 == 0 or abs(a - b) != 1:
        return None
    return AdmissiblePair(W, V, min(a, b), 1 if a > b else -1)


def relevant_pairs(W: QuadSpace, V: QuadSpace) -> list[tuple[QuadSpace, QuadSpace]]:
    """The pairs (W_α, V_α = W_α ⟂ W^⟂) over pure inner forms W_α of W."""
    pair = is_admissible_pair(W, V)
    if pair is None:
        raise NotAdmissible(f"({W}, {V}) is not an admissible pair")
    perp = pair.w_perp
    return [(Wa, Wa.orthogonal_sum(perp)) for Wa in pure_inner_forms(W)]


def space_to_json(V: QuadSpace) -> dict:
    return {"p": V.p, "q": V.q}


def space_from_json(obj: dict) -> QuadSpace:
    if not isinstance(obj, dict) or set(obj) != {"p", "q"}:
        raise ValueError(f"expected {{'p': int, 'q': int}}, got {obj!r}")
    return QuadSpace(int(obj["p"]), int(obj["q"]))
