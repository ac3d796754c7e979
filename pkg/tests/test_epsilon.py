import math
from fractions import Fraction

import pytest

from gpkit.epsilon import (
    FourthRoot,
    NotSymplectic,
    PoleAt,
    PSI,
    eps_half,
    eps_numeric_oracle,
    eps_symplectic,
    l_factor,
)
from gpkit.weilrep import CharRep, DiscRep, WeilRep


def D(k, t=0):
    return DiscRep(k, Fraction(t))


def C(a, t=0):
    return CharRep(a, Fraction(t))


class TestFourthRoot:
    def test_values(self):
        assert [str(FourthRoot(e)) for e in range(4)] == ["1", "i", "-1", "-i"]
        assert FourthRoot(1).value == 1j
        assert FourthRoot(6).e == 2

    def test_multiplication(self):
        assert (FourthRoot(3) * FourthRoot(3)).e == 2
        assert (FourthRoot(1) * FourthRoot(1)).value == -1

    def test_as_sign(self):
        assert FourthRoot(2).as_sign() == -1
        assert FourthRoot(0).as_sign() == 1
        with pytest.raises(NotSymplectic):
            FourthRoot(1).as_sign()


@pytest.mark.parametrize(
    "rho,exponent",
    [
        (C(0), 0),
        (C(1), 1),
        (C(0, Fraction(1, 2)), 0),
        (C(1, Fraction(-5, 3)), 1),
        (D(1), 2),
        (D(2), 3),
        (D(3), 0),
        (D(4), 1),
        (D(1, Fraction(7, 2)), 2),
    ],
)
def test_eps_half_exponents(rho, exponent):
    """ε(1/2, ·) = i^a for characters, i^{k+1} for discrete pieces,
    independent of the unitary twist."""
    assert eps_half(rho).e == exponent


def test_eps_half_additive():
    assert eps_half(WeilRep([D(1), D(3)])).e == 2
    assert eps_half(WeilRep([(D(2), 2)])).e == 2
    assert eps_half(WeilRep.zero()).e == 0


def test_eps_symplectic():
    assert eps_symplectic(WeilRep([D(1), D(3)])) == -1
    assert eps_symplectic(WeilRep([(D(1), 2)])) == 1
    with pytest.raises(NotSymplectic):
        eps_symplectic(WeilRep([D(2)]))  # exponent 3: not ±1


def test_psi_convention():
    assert PSI.value(0.25) == pytest.approx(1j, abs=1e-12)
    assert "2" in PSI.formula and "pi" in PSI.formula.lower()


class TestLFactor:
    def test_char_values(self):
        assert l_factor(C(0), 1) == pytest.approx(1.0, abs=1e-12)
        # π^{-3/2} Γ(3/2) = 1/(2π)
        assert l_factor(C(1), 2) == pytest.approx(1 / (2 * math.pi), abs=1e-12)

    def test_disc_value(self):
        # 2(2π)^{-(s+k/2)} Γ(s+k/2) at s = 1/2, k = 1
        assert l_factor(D(1), Fraction(1, 2)) == pytest.approx(1 / math.pi, abs=1e-12)

    def test_pole_detection(self):
        with pytest.raises(PoleAt):
            l_factor(C(0), 0)
        with pytest.raises(PoleAt):
            l_factor(D(2), -1)
        # a nonzero twist moves the argument off the poles
        val = l_factor(C(0, Fraction(1, 2)), 0)
        assert val != 0

    def test_twist_conjugate_symmetry(self):
        a = l_factor(C(0, Fraction(1, 3)), Fraction(1, 2))
        b = l_factor(C(0, Fraction(-1, 3)), Fraction(1, 2))
        assert a == pytest.approx(b.conjugate(), rel=1e-12)
        assert a.imag != 0


@pytest.mark.parametrize("rho", [C(0), C(1), D(1)])
def test_oracle_matches_table_fast_cases(rho):
    got = eps_numeric_oracle(rho, tol=1e-6)
    assert abs(got - eps_half(rho).value) < 1e-6


def test_oracle_rejects_unknown():
    with pytest.raises(TypeError):
        eps_numeric_oracle(WeilRep([C(0)]))  # oracle works constituent-wise
