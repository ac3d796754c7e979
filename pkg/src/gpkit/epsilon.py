"""Archimedean local factors at the center of the functional equation.

Convention lock
---------------
Additive character ψ(x) = e^{2πix} on ℝ with its self-dual Haar measure, and
ψ_ℂ = ψ∘Tr on ℂ with self-dual measure 2·dx·dy.  Multiplicative Haar measures
are dx/|x| and 2 dx dy/|z|²_ℂ.  Under these conventions the sign character has
root number i, and more generally

    ε(1/2, sgn^a·|·|^{it}, ψ) = i^a          (independent of t)
    ε(1/2, D_k ⊗ |·|^{it}, ψ) = i^{k+1}      (independent of t)

The table is stored as exact exponents mod 4 (:class:`FourthRoot`).  It was
certified — before being relied on — by :func:`eps_numeric_oracle`, which knows
nothing of the table: it evaluates the local γ-factor at s = 1/2 by numerical
quadrature of Tate/Godement–Jacquet zeta integrals against Gaussian test
functions, on ℝ for characters and on ℂ (through induction in stages, with
λ(ℂ/ℝ, ψ) itself computed numerically as ε(1/2, sgn, ψ)) for the D_k.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy import integrate, special

from .weilrep import CharRep, DiscRep, IrredRep, WeilRep

__all__ = [
    "FourthRoot",
    "PsiConvention",
    "PSI",
    "NotSymplectic",
    "PoleAt",
    "QuadratureFailure",
    "eps_half",
    "eps_symplectic",
    "l_factor",
    "eps_numeric_oracle",
]


class NotSymplectic(ValueError):
    """ε came out imaginary: the input was not of symplectic type."""


class PoleAt(ArithmeticError):
    """The Γ-factor has a pole at the requested point."""


class QuadratureFailure(ArithmeticError):
    """Adaptive integration did not reach the requested accuracy."""


@dataclass(frozen=True)
class FourthRoot:
    """An exact fourth root of unity i^e, stored as the exponent e mod 4."""

    e: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", self.e % 4)

    def __mul__(self, other: "FourthRoot") -> "FourthRoot":
        return FourthRoot(self.e + other.e)

    @property
    def is_real(self) -> bool:
        return self.e % 2 == 0

    def as_sign(self) -> int:
        """This root as ±1; raises :class:`NotSymplectic` when imaginary."""
        if not self.is_real:
            raise NotSymplectic(f"i^{self.e} is not a sign")
        return 1 if self.e == 0 else -1

    @property
    def value(self) -> complex:
        return (1, 1j, -1, -1j)[self.e]

    def __str__(self) -> str:
        return ("1", "i", "-1", "-i")[self.e]


@dataclass(frozen=True)
class PsiConvention:
    """The one supported additive character of ℝ, kept for documentation."""

    formula: str = "psi(x) = exp(2*pi*i*x)"

    def value(self, x: float) -> complex:
        return cmath.exp(2j * math.pi * x)


PSI = PsiConvention()


def _base_exponent(rho: IrredRep) -> int:
    # Certified by eps_numeric_oracle under the PSI conventions; see module doc.
    if isinstance(rho, CharRep):
        return rho.a
    return (rho.k + 1) % 4


def eps_half(A: WeilRep | IrredRep) -> FourthRoot:
    """ε(1/2, A, ψ) as an exact fourth root; multiplicative over direct sums."""
    if isinstance(A, (CharRep, DiscRep)):
        return FourthRoot(_base_exponent(A))
    return FourthRoot(sum(m * _base_exponent(rho) for rho, m in A))


def eps_symplectic(A: WeilRep | IrredRep) -> int:
    """ε(1/2, A, ψ) asserted real, returned as ±1 (symplectic-type inputs)."""
    return eps_half(A).as_sign()


def _pole_check(real_part: Fraction, t: Fraction) -> None:
    if t == 0 and real_part <= 0 and real_part.denominator == 1:
        raise PoleAt(f"Gamma pole at argument {real_part}")


def _exact(s) -> Fraction:
    if isinstance(s, (Fraction, int)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(s)  # floats are exact binary rationals
    raise TypeError(f"cannot treat {type(s).__name__} as an exact rational")


def l_factor(rho: IrredRep, s) -> complex:
    """The local L-factor L(s, ρ) as a complex number.

    Char(a,t) ↦ π^{-(s+it+a)/2} Γ((s+it+a)/2);
    Disc(k,t) ↦ 2(2π)^{-(s+it+k/2)} Γ(s+it+k/2).
    """
    s = _exact(s)
    if isinstance(rho, CharRep):
        re, tw = (s + rho.a) / 2, rho.t / 2
        _pole_check(re, tw)
        w = complex(float(re), float(tw))
        return cmath.exp(-w * math.log(math.pi)) * complex(special.gamma(w))
    re, tw = s + Fraction(rho.k, 2), rho.t
    _pole_check(re, tw)
    w = complex(float(re), float(tw))
    return 2 * cmath.exp(-w * math.log(2 * math.pi)) * complex(special.gamma(w))


# ---------------------------------------------------------------------------
# numeric oracle
# ---------------------------------------------------------------------------

_QUAD_OPTS = dict(limit=250, epsabs=1e-11, epsrel=1e-11)

# Finite integration windows.  Every integrand below carries a factor
# e^{-πx²} (real side) or e^{-2πr²} (complex side), so the discarded tails are
# of order e^{-π·36} ≈ 1e-49 — twenty orders of magnitude below the oracle
# tolerance — while keeping the oscillatory Fourier kernels at frequencies the
# adaptive integrator can resolve.
_X_CUT = 6.0       # |x| cut for e^{-πx²}-weighted integrands
_U_LO, _U_HI = -90.0, 1.7   # x = e^u window for Mellin integrals (e^{1.7} ≈ 5.5)
_R_CUT = 4.0       # radial cut for e^{-2πr²}-weighted integrands


def _cquad(f, a, b) -> tuple[complex, float]:
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", category=integrate.IntegrationWarning)
        re, re_err = integrate.quad(lambda x: f(x).real, a, b, **_QUAD_OPTS)
        im, im_err = integrate.quad(lambda x: f(x).imag, a, b, **_QUAD_OPTS)
    return complex(re, im), re_err + im_err


class _ErrorBudget:
    def __init__(self, tol: float) -> None:
        self.tol = tol
        self.spent = 0.0

    def add(self, err: float, scale: float = 1.0) -> None:
        self.spent += err * scale
        if self.spent > self.tol:
            raise QuadratureFailure(
                f"accumulated quadrature error {self.spent:.2e} exceeds {self.tol:.2e}"
            )


def _fourier_real(f, y: float, budget: _ErrorBudget) -> complex:
    """f̂(y) = ∫ f(x) ψ(xy) dx with the plus-sign kernel of PSI."""
    val, err = _cquad(lambda x: f(x) * PSI.value(x * y), -_X_CUT, _X_CUT)
    budget.add(err)
    return val

def _mellin_real(f, a: int, s: float, t: float, budget: _ErrorBudget) -> complex:
    """∫_{ℝ^×} f(x) sgn(x)^a |x|^{s+it} d^×x via the substitution x = ±e^u."""
    sign = (-1) ** a

    def integrand(u: float) -> complex:
        x = math.exp(u)
        return (f(x) + sign * f(-x)) * cmath.exp((s + 1j * t) * u)

    val, err = _cquad(integrand, _U_LO, _U_HI)
    budget.add(err)
    return val


def _eps_oracle_char(a: int, t: float, budget: _ErrorBudget) -> complex:
    # Gaussian test functions matched to the parity of the character.
    if a == 0:
        f = lambda x: cmath.exp(-math.pi * x * x)
    else:
        f = lambda x: x * cmath.exp(-math.pi * x * x)

    fhat_cache: dict[float, complex] = {}

    def fhat(y: float) -> complex:
        if y not in fhat_cache:
            fhat_cache[y] = _fourier_real(f, y, budget)
        return fhat_cache[y]

    z_top = _mellin_real(fhat, a, 0.5, -t, budget)   # Z(f̂, χ^{-1}, 1-s) at s=1/2
    z_bot = _mellin_real(f, a, 0.5, t, budget)       # Z(f, χ, s) at s=1/2
    gamma = z_top / z_bot
    tt = Fraction(t).limit_denominator(10**9)
    return (
        gamma
        * l_factor(CharRep(a, tt), Fraction(1, 2))
        / l_factor(CharRep(a, -tt), Fraction(1, 2))
    )


@lru_cache(maxsize=1)
def _lambda_factor() -> complex:
    """λ(ℂ/ℝ, ψ) = ε(1/2, sgn, ψ), computed numerically."""
    return _eps_oracle_char(1, 0.0, _ErrorBudget(1e-7))


def _eps_oracle_disc(k: int, t: float, budget: _ErrorBudget) -> complex:
    """ε(1/2, D_k ⊗ |·|^{it}, ψ) = λ(ℂ/ℝ,ψ) · ε(1/2, χ_{k,t}, ψ_ℂ).

    The ℂ^×-side zeta integrals use f(z) = z̄^k e^{-2π|z|²}.  The angular
    integral in the ψ_ℂ-Fourier transform of f is carried out with the Bessel
    identity ∫₀^{2π} e^{i(x cos θ − kθ)} dθ = 2π i^k J_k(x), leaving radial
    integrals that are evaluated by adaptive quadrature:

        Z(f, χ, s)          = 4π ∫ r^{2s+k+2it-1} e^{-2πr²} dr
        Z(f̂, χ^{-1}, 1-s)  = 16π² i^k ∫ G(ρ) ρ^{1-2s-2it} dρ,
        G(ρ)                = ∫ r^{k+1} e^{-2πr²} J_k(4πrρ) dr.
    """

    def G(rho: float) -> float:
        val, err = integrate.quad(
            lambda r: r ** (k + 1) * math.exp(-2 * math.pi * r * r)
            * special.jv(k, 4 * math.pi * r * rho),
            0.0,
            _R_CUT,
            **_QUAD_OPTS,
        )
        budget.add(err, scale=0.1)
        return val

    def outer(rho: float) -> complex:
        return G(rho) * cmath.exp(-2j * t * math.log(rho)) if rho > 0 else 0j

    z_top_int, err = _cquad(outer, 0.0, _R_CUT)
    budget.add(err)
    z_top = 16 * math.pi**2 * 1j**k * z_top_int

    def radial(r: float) -> complex:
        return cmath.exp((k + 2j * t) * math.log(r)) * math.exp(-2 * math.pi * r * r)

    z_bot_int, err = _cquad(radial, 0.0, _R_CUT)
    budget.add(err)
    z_bot = 4 * math.pi * z_bot_int

    tt = Fraction(t).limit_denominator(10**9)
    eps_c = (
        (z_top / z_bot)
        * l_factor(DiscRep(k, tt), Fraction(1, 2))
        / l_factor(DiscRep(k, -tt), Fraction(1, 2))
    )
    return _lambda_factor() * eps_c


def eps_numeric_oracle(rho: IrredRep, tol: float = 1e-6) -> complex:
    """ε(1/2, ρ, ψ) by numerical quadrature of the local functional equation.

    Independent of the exact table in :func:`eps_half`; used to certify it.
    Raises :class:`QuadratureFailure` if the integrators cannot promise the
    requested tolerance.
    """
    budget = _ErrorBudget(tol / 10)
    if isinstance(rho, CharRep):
        return _eps_oracle_char(rho.a, float(rho.t), budget)
    if isinstance(rho, DiscRep):
        return _eps_oracle_disc(rho.k, float(rho.t), budget)
    raise TypeError(f"not an irreducible representation: {rho!r}")
