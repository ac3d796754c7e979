"""Tempered L-parameters of real special orthogonal groups.

A parameter for SO(V) is recorded through the composite with the standard
representation: a self-dual ``WeilRep`` M_V of dimension dim V − 1 (dim V odd,
symplectic ambient) or dim V (dim V even, orthogonal ambient).  Relative to
the ambient pairing sign the irreducible constituents are

* O-type:  self-dual with the same pairing sign as the ambient space — these
  index the component group;
* Sp-type: self-dual with the opposite sign — forced to even multiplicity;
* GL-type: not self-dual — forced to come in dual pairs of equal multiplicity.

On top of the validation sit the component group 𝒮_φ, the (B)/(P)/(E)
classification, eigenspace splittings, the distinguished character χ_φ of a
Gross–Prasad pair, and the endoscopic dichotomy identity it satisfies.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

from .epsilon import eps_half, eps_symplectic
from .quadspace import (
    AdmissiblePair,
    NotAdmissible,
    QuadSpace,
    is_admissible_pair,
    space_from_json,
    space_to_json,
)
from .weilrep import (
    CharRep,
    DiscRep,
    IrredRep,
    SelfDualType,
    WeilRep,
    dual,
    irred_dim,
    self_dual_type,
    tensor,
    weilrep_from_json,
    weilrep_to_json,
)

__all__ = [
    "Ambient",
    "ConstituentType",
    "InvalidParameter",
    "DimMismatch",
    "OddSpMultiplicity",
    "UnpairedGLType",
    "NotReduced",
    "OddHalfExponent",
    "CentralElement",
    "LParameter",
    "ComponentGroup",
    "ComponentElement",
    "GPPair",
    "GPCharacterTable",
    "validate",
    "enumerate_reduced",
    "ambient_of",
    "constituent_type",
    "component_group",
    "classify",
    "Classification",
    "is_reduced",
    "eigenspace_split",
    "gp_character",
    "endoscopic_split",
    "EndoscopicSplit",
    "SubParameter",
    "dichotomy_identity_check",
    "DichotomyReport",
    "make_gp_pair",
    "param_to_json",
    "param_from_json",
    "gp_pair_from_json",
]


class Ambient(Enum):
    SYMPLECTIC = "symplectic"   # dim V odd,  M_V symplectically self-dual
    ORTHOGONAL = "orthogonal"   # dim V even, M_V orthogonally self-dual


class ConstituentType(Enum):
    O = "O"
    SP = "Sp"
    GL = "GL"


class InvalidParameter(ValueError):
    """The WeilRep is not a parameter for the target space.

    ``violations`` lists every broken invariant, not just the first.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(violations))


class DimMismatch(InvalidParameter):
    pass


class OddSpMultiplicity(InvalidParameter):
    pass


class UnpairedGLType(InvalidParameter):
    pass


class NotReduced(ValueError):
    """Operation defined only for multiplicity-free all-O-type parameters."""


class OddHalfExponent(ArithmeticError):
    """A det(−Id)^{dim/2} exponent came out non-integral (invariant breach)."""


class CentralElement(ValueError):
    """The component element lies in the image of the center."""


def ambient_of(V: QuadSpace) -> Ambient:
    return Ambient.SYMPLECTIC if V.dim % 2 else Ambient.ORTHOGONAL


def constituent_type(rho: IrredRep, ambient: Ambient) -> ConstituentType:
    """O/Sp/GL relative to the ambient pairing sign."""
    sd = self_dual_type(rho)
    if sd is SelfDualType.NOT_SELF_DUAL:
        return ConstituentType.GL
    matches = (sd is SelfDualType.SYMPLECTIC) == (ambient is Ambient.SYMPLECTIC)
    return ConstituentType.O if matches else ConstituentType.SP


@dataclass(frozen=True)
class LParameter:
    rep: WeilRep
    ambient: Ambient
    target: QuadSpace

    def o_type_constituents(self) -> list[IrredRep]:
        return [
            rho
            for rho, _ in self.rep
            if constituent_type(rho, self.ambient) is ConstituentType.O
        ]


def validate(rep: WeilRep, V: QuadSpace) -> LParameter:
    """Check ``rep`` against the target space, reporting every violation."""
    ambient = ambient_of(V)
    expected = V.dim - 1 if V.dim % 2 else V.dim

    dim_violations: list[str] = []
    sp_violations: list[str] = []
    gl_violations: list[str] = []

    if rep.dim != expected:
        dim_violations.append(
            f"dim M = {rep.dim}, but SO({V.p},{V.q}) needs dimension {expected}"
        )
    for rho, m in rep:
        ctype = constituent_type(rho, ambient)
        if ctype is ConstituentType.SP and m % 2:
            sp_violations.append(
                f"Sp-type constituent {rho!r} has odd multiplicity {m}"
            )
        elif ctype is ConstituentType.GL and rep.mult(dual(rho)) != m:
            gl_violations.append(
                f"GL-type constituent {rho!r} (mult {m}) is not matched by its "
                f"dual (mult {rep.mult(dual(rho))})"
            )

    everything = sp_violations + gl_violations + dim_violations
    if sp_violations:
        raise OddSpMultiplicity(everything)
    if gl_violations:
        raise UnpairedGLType(everything)
    if dim_violations:
        raise DimMismatch(everything)
    return LParameter(rep, ambient, V)


@dataclass(frozen=True)
class ComponentElement:
    """An element of 𝒮_φ: a ±1 assignment on the O-type basis."""

    eps: tuple[tuple[IrredRep, int], ...]

    @classmethod
    def of(cls, basis, signs) -> "ComponentElement":
        signs = tuple(signs)
        if len(signs) != len(basis) or any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be ±1, one per basis constituent")
        return cls(tuple(zip(tuple(basis), signs)))

    def sign(self, rho: IrredRep) -> int:
        for sigma, s in self.eps:
            if sigma == rho:
                return s
        raise KeyError(f"{rho!r} is not in the component-group basis")

    @property
    def basis(self) -> tuple[IrredRep, ...]:
        return tuple(rho for rho, _ in self.eps)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(s for _, s in self.eps)

    @property
    def is_identity(self) -> bool:
        return all(s == 1 for _, s in self.eps)

    @property
    def is_all_minus(self) -> bool:
        return all(s == -1 for _, s in self.eps)

    def __mul__(self, other: "ComponentElement") -> "ComponentElement":
        if self.basis != other.basis:
            raise ValueError("component elements live in different groups")
        return ComponentElement.of(
            self.basis, (a * b for a, b in zip(self.signs, other.signs))
        )

    def minus_constituents(self) -> list[IrredRep]:
        return [rho for rho, s in self.eps if s == -1]


@dataclass(frozen=True)
class ComponentGroup:
    """𝒮_φ ≤ {±1}^{I_O}, cut out by Π ε_i = 1 over odd-dimensional i if any."""

    basis: tuple[IrredRep, ...]
    constraint: bool

    @property
    def rank(self) -> int:
        r = len(self.basis)
        return r - 1 if self.constraint else r

    @property
    def size(self) -> int:
        return 2 ** self.rank

    def _admits(self, signs: tuple[int, ...]) -> bool:
        if not self.constraint:
            return True
        prod = 1
        for rho, s in zip(self.basis, signs):
            if irred_dim(rho) % 2:
                prod *= s
        return prod == 1

    def elements(self) -> list[ComponentElement]:
        out = []
        for signs in product((1, -1), repeat=len(self.basis)):
            if self._admits(signs):
                out.append(ComponentElement.of(self.basis, signs))
        return out

    def identity(self) -> ComponentElement:
        return ComponentElement.of(self.basis, (1,) * len(self.basis))

    def element(self, signs) -> ComponentElement:
        el = ComponentElement.of(self.basis, signs)
        if not self._admits(el.signs):
            raise ValueError("signs violate the odd-dimension product constraint")
        return el


def component_group(phi: LParameter) -> ComponentGroup:
    basis = tuple(phi.o_type_constituents())
    constraint = any(irred_dim(rho) % 2 for rho in basis)
    return ComponentGroup(basis, constraint)


def _center_image(phi: LParameter) -> ComponentElement:
    """Image of −Id in 𝒮_φ: ε_i = (−1)^{m_i} on the O-type basis."""
    grp = component_group(phi)
    return ComponentElement.of(
        grp.basis, ((-1) ** phi.rep.mult(rho) for rho in grp.basis)
    )


def is_reduced(phi: LParameter) -> bool:
    """True iff every constituent is O-type with multiplicity one."""
    return all(
        constituent_type(rho, phi.ambient) is ConstituentType.O and m == 1
        for rho, m in phi.rep
    )


@dataclass(frozen=True)
class Classification:
    flags: frozenset[str]
    canonical: str
    explicit_condition: bool


def classify(phi: LParameter) -> Classification:
    """The (B)/(P)/(E) trichotomy flags, with P > B > E as canonical priority.

    * P: some constituent is GL-type, or Sp-type, or an O-type of multiplicity
      at least two — the parameter factors through a proper Levi/endoscopic
      degeneration.
    * B: dim V ≤ 3 (base cases).
    * E: neither, the genuinely new case.

    The explicit group-level condition S_φ ⊄ Z(Ŝ)·S°_φ — here: some element of
    𝒮_φ outside {1, image of −Id} — is also computed; on reduced parameters
    with dim M_V > 2 it provably coincides with ¬B ∧ ¬P, and that agreement is
    re-asserted at runtime on that domain.
    """
    degenerate = any(
        constituent_type(rho, phi.ambient) is not ConstituentType.O or m > 1
        for rho, m in phi.rep
    )
    flags = set()
    if degenerate:
        flags.add("P")
    if phi.target.dim <= 3:
        flags.add("B")
    if not flags:
        flags.add("E")

    grp = component_group(phi)
    allowed = {grp.identity(), _center_image(phi)}
    condition = any(el not in allowed for el in grp.elements())

    if is_reduced(phi) and phi.rep.dim > 2:
        if condition != ("E" in flags):
            raise AssertionError(
                f"explicit component-group condition disagrees with the "
                f"trichotomy on a reduced parameter: {phi!r}"
            )

    canonical = "P" if "P" in flags else ("B" if "B" in flags else "E")
    return Classification(frozenset(flags), canonical, condition)


def eigenspace_split(
    phi: LParameter, s: ComponentElement
) -> tuple[WeilRep, WeilRep]:
    """(plus, minus) eigenspace of ``s`` acting on M; reduced parameters only."""
    if not is_reduced(phi):
        raise NotReduced(f"{phi.rep!r} has non-O-type or repeated constituents")
    grp = component_group(phi)
    if s.basis != grp.basis:
        raise ValueError("component element does not match this parameter")
    if not grp._admits(s.signs):
        raise ValueError("component element violates the group constraint")
    minus = WeilRep(rho for rho in grp.basis if s.sign(rho) == -1)
    plus = WeilRep(rho for rho in grp.basis if s.sign(rho) == 1)
    if grp.constraint and minus.dim % 2:
        raise AssertionError("constrained eigenspaces must have even dimension")
    return plus, minus


@dataclass(frozen=True)
class GPPair:
    phiW: LParameter
    phiV: LParameter
    pair: AdmissiblePair


def make_gp_pair(phiW: LParameter, phiV: LParameter) -> GPPair:
    if phiW.ambient is phiV.ambient:
        raise InvalidParameter(
            ["a Gross–Prasad pair needs one even and one odd target space"]
        )
    pair = is_admissible_pair(phiW.target, phiV.target)
    if pair is None:
        raise NotAdmissible(
            f"({phiW.target}, {phiV.target}) is not an admissible pair"
        )
    return GPPair(phiW, phiV, pair)


def _det_minus_id_power(space_dim: int, half_of: int) -> int:
    """det(−Id)^{half_of/2} on a ``space_dim``-dimensional piece, as ±1."""
    if half_of % 2:
        raise OddHalfExponent(f"exponent {half_of}/2 is not an integer")
    return -1 if (space_dim * (half_of // 2)) % 2 else 1


def _chi_one_side(minus: WeilRep, other: WeilRep) -> int:
    """det(−Id_{minus})^{dim other/2} · det(−Id_{other})^{dim minus/2} · ε(minus ⊗ other)."""
    pref = _det_minus_id_power(minus.dim, other.dim)
    pref *= _det_minus_id_power(other.dim, minus.dim)
    return pref * eps_symplectic(tensor(minus, other))


class GPCharacterTable:
    """Precomputed root-number exponents of one Gross–Prasad pair.

    ε is additive over direct sums and the tensor product is bilinear, so
    every value of χ_φ — and both factors of the dichotomy identity — is a
    subset sum over the matrix ε(σ_i ⊗ ρ_j) of basis constituents.  Building
    the matrix costs one small tensor decomposition per entry; evaluation at
    a component element is then integer arithmetic, which is what makes
    exhaustive sweeps over 𝒮_{φ_W} × 𝒮_{φ_V} cheap.
    """

    def __init__(self, gp: GPPair):
        if not (is_reduced(gp.phiW) and is_reduced(gp.phiV)):
            raise NotReduced("character tables need reduced parameters")
        self.gp = gp
        self.groupW = component_group(gp.phiW)
        self.groupV = component_group(gp.phiV)
        self._dimsW = tuple(irred_dim(r) for r in self.groupW.basis)
        self._dimsV = tuple(irred_dim(r) for r in self.groupV.basis)
        self._exp = tuple(
            tuple(
                eps_half(tensor(WeilRep([sig]), WeilRep([rho]))).e
                for rho in self.groupV.basis
            )
            for sig in self.groupW.basis
        )

    def _block(self, rows, cols) -> int:
        return sum(self._exp[i][j] for i in rows for j in cols)

    # -- bitmask evaluation (bit i set ⟺ sign −1 on basis slot i) ----------

    @staticmethod
    def _masks(group: ComponentGroup, dims) -> list[int]:
        odd = [i for i, d in enumerate(dims) if d % 2]
        out = []
        for m in range(1 << len(dims)):
            if not group.constraint or (
                sum(1 for i in odd if m >> i & 1) % 2 == 0
            ):
                out.append(m)
        return out

    def _side_values(self, dims, exponents, other_dim) -> dict[int, int]:
        """±1 value of one χ factor for every minus-set bitmask."""
        vals = {}
        for m in range(1 << len(dims)):
            e = sum(x for i, x in enumerate(exponents) if m >> i & 1) % 4
            a = sum(d for i, d in enumerate(dims) if m >> i & 1)
            if e % 2 or a % 2:
                continue  # not a symplectic block; never reached by 𝒮-masks
            sign = _det_minus_id_power(a, other_dim)
            sign *= _det_minus_id_power(other_dim, a)
            vals[m] = sign * (1 if e == 0 else -1)
        return vals

    def mask_tables(self):
        """(masksW, masksV, valueW, valueV): χ(s) = valueW[mW] · valueV[mV].

        Masks run over the constraint-respecting elements of each component
        group; the two value maps are the one-sided χ factors.
        """
        rowsum = [sum(r) % 4 for r in self._exp]
        colsum = [
            sum(self._exp[i][j] for i in range(len(self._exp))) % 4
            for j in range(len(self.groupV.basis))
        ]
        masksW = self._masks(self.groupW, self._dimsW)
        masksV = self._masks(self.groupV, self._dimsV)
        valW = self._side_values(self._dimsW, rowsum, sum(self._dimsV))
        valV = self._side_values(self._dimsV, colsum, sum(self._dimsW))
        return masksW, masksV, valW, valV

    def element_of_mask(self, group: ComponentGroup, mask: int) -> ComponentElement:
        return ComponentElement.of(
            group.basis,
            (-1 if mask >> i & 1 else 1 for i in range(len(group.basis))),
        )

    def _factor(self, rows, cols) -> int:
        """χ one-sided factor for the sub-pair (rows of W-basis) × (cols of V-basis)."""
        a = sum(self._dimsW[i] for i in rows)
        b = sum(self._dimsV[j] for j in cols)
        sign = _det_minus_id_power(a, b) * _det_minus_id_power(b, a)
        e = self._block(rows, cols) % 4
        if e % 2:
            raise OddHalfExponent("non-symplectic tensor block in χ")
        return sign * (1 if e == 0 else -1)

    def _indices(self, s: tuple[ComponentElement, ComponentElement]):
        sW, sV = s
        if sW.basis != self.groupW.basis or sV.basis != self.groupV.basis:
            raise ValueError("component elements do not match this pair")
        minusW = tuple(i for i, sg in enumerate(sW.signs) if sg == -1)
        minusV = tuple(j for j, sg in enumerate(sV.signs) if sg == -1)
        return minusW, minusV

    def chi(self, s: tuple[ComponentElement, ComponentElement]) -> int:
        minusW, minusV = self._indices(s)
        allW = range(len(self.groupW.basis))
        allV = range(len(self.groupV.basis))
        return self._factor(minusW, allV) * self._factor(allW, minusV)

    def chi_table(self) -> dict:
        return {
            (sW, sV): self.chi((sW, sV))
            for sW in self.groupW.elements()
            for sV in self.groupV.elements()
        }

    def dichotomy(
        self, s: tuple[ComponentElement, ComponentElement]
    ) -> "DichotomyReport":
        sW, sV = s
        if sV.is_identity or sV.is_all_minus:
            raise CentralElement("s_V lies in {identity, all-(-1)}")
        minusW, minusV = self._indices(s)
        plusW = tuple(
            i for i in range(len(self.groupW.basis)) if i not in minusW
        )
        plusV = tuple(
            j for j in range(len(self.groupV.basis)) if j not in minusV
        )
        factor1 = self._factor(plusW, minusV)
        factor2 = self._factor(minusW, plusV)
        chi = self.chi(s)
        return DichotomyReport(factor1 * factor2 == chi, chi, factor1, factor2)


def gp_character(
    gp: GPPair, s: tuple[ComponentElement, ComponentElement]
) -> int:
    """χ_φ(s_W, s_V) = χ^V_{φ_W}(s_W) · χ^W_{φ_V}(s_V), exactly ±1.

    Each one-sided factor pairs the (−1)-eigenspace of one parameter against
    the full partner representation through the symplectic root number.
    """
    sW, sV = s
    _, minusW = eigenspace_split(gp.phiW, sW)
    _, minusV = eigenspace_split(gp.phiV, sV)
    return _chi_one_side(minusW, gp.phiV.rep) * _chi_one_side(minusV, gp.phiW.rep)


@dataclass(frozen=True)
class SubParameter:
    """One eigenspace half of a split parameter, with its target dimension."""

    rep: WeilRep
    target_dim: int


@dataclass(frozen=True)
class EndoscopicSplit:
    w_plus: SubParameter
    w_minus: SubParameter
    v_plus: SubParameter
    v_minus: SubParameter

    @property
    def cross_pairs(self) -> tuple[tuple[SubParameter, SubParameter], ...]:
        return ((self.w_plus, self.v_minus), (self.w_minus, self.v_plus))


def endoscopic_split(
    gp: GPPair, s: tuple[ComponentElement, ComponentElement]
) -> EndoscopicSplit:
    """Split both parameters by the ±1 eigenspaces of s = (s_W, s_V).

    ``s_V`` must avoid the central subgroup {identity, all −1}; otherwise the
    would-be endoscopic group is the group itself and :class:`CentralElement`
    is raised.  Target dimensions follow dim V_± = dim M_{V±} (+1 in the odd
    case); the two cross pairings always end up with odd dimension gaps, which
    is re-checked.
    """
    sW, sV = s
    if sV.is_identity or sV.is_all_minus:
        raise CentralElement("s_V lies in {identity, all-(-1)}")
    plusW, minusW = eigenspace_split(gp.phiW, sW)
    plusV, minusV = eigenspace_split(gp.phiV, sV)

    addV = 1 if gp.phiV.target.dim % 2 else 0
    addW = 1 if gp.phiW.target.dim % 2 else 0
    split = EndoscopicSplit(
        w_plus=SubParameter(plusW, plusW.dim + addW),
        w_minus=SubParameter(minusW, minusW.dim + addW),
        v_plus=SubParameter(plusV, plusV.dim + addV),
        v_minus=SubParameter(minusV, minusV.dim + addV),
    )
    for sub in (split.v_plus, split.v_minus):
        if not sub.target_dim < gp.phiV.target.dim:
            raise AssertionError("endoscopic halves must be proper")
    for a, b in split.cross_pairs:
        if (a.target_dim - b.target_dim) % 2 == 0:
            raise AssertionError("cross pairings must have odd dimension gaps")
    return split


@dataclass(frozen=True)
class DichotomyReport:
    ok: bool
    chi: int
    factor_wplus_vminus: int
    factor_wminus_vplus: int

    def breakdown(self) -> dict:
        return {
            "chi": self.chi,
            "factor_wplus_vminus": self.factor_wplus_vminus,
            "factor_wminus_vplus": self.factor_wminus_vplus,
            "product": self.factor_wplus_vminus * self.factor_wminus_vplus,
            "ok": self.ok,
        }


def dichotomy_identity_check(
    gp: GPPair, s: tuple[ComponentElement, ComponentElement]
) -> DichotomyReport:
    """Verify χ_{φ_{W+}×φ_{V−}}(1,−1) · χ_{φ_{W−}×φ_{V+}}(1,−1) = χ_φ(s).

    The left factors are the distinguished characters of the two endoscopic
    cross pairs, evaluated at the element that is trivial on the W half and
    all −1 on the V half.
    """
    split = endoscopic_split(gp, s)
    factor1 = _chi_one_side(split.v_minus.rep, split.w_plus.rep)
    factor2 = _chi_one_side(split.v_plus.rep, split.w_minus.rep)
    chi = gp_character(gp, s)
    return DichotomyReport(factor1 * factor2 == chi, chi, factor1, factor2)


def enumerate_reduced(V: QuadSpace, max_k: int) -> list[LParameter]:
    """All reduced parameters for SO(V) with discrete pieces D_k, k ≤ max_k.

    Reduced means multiplicity-free and all O-type: distinct D_odd in the
    symplectic ambient, and 1/sgn/distinct D_even in the orthogonal ambient,
    filling the required dimension exactly.
    """
    from itertools import combinations

    from fractions import Fraction

    if V.dim % 2:
        pool: list[IrredRep] = [
            DiscRep(k, Fraction(0)) for k in range(1, max_k + 1, 2)
        ]
        want = V.dim - 1
    else:
        pool = [CharRep(0, Fraction(0)), CharRep(1, Fraction(0))] + [
            DiscRep(k, Fraction(0)) for k in range(2, max_k + 1, 2)
        ]
        want = V.dim
    out = []
    for r in range(len(pool) + 1):
        for sub in combinations(pool, r):
            if sum(irred_dim(x) for x in sub) == want:
                out.append(validate(WeilRep(sub), V))
    return out


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def param_to_json(phi: LParameter) -> dict:
    return {"V": space_to_json(phi.target), "rep": weilrep_to_json(phi.rep)}


def param_from_json(obj: dict) -> LParameter:
    return validate(weilrep_from_json(obj["rep"]), space_from_json(obj["V"]))


def gp_pair_from_json(obj: dict) -> GPPair:
    return make_gp_pair(param_from_json(obj["phiW"]), param_from_json(obj["phiV"]))
