"""Cascade solver for superpotential and energy series.

The eigenvalue problem ``-u'' + v(x, lam) u = eps(lam) u`` is recast through
the logarithmic substitution ``W = -(ln u)'`` as the Riccati identity

    W^2 - W' = v - eps.

Expanding ``W``, ``v`` and ``eps`` in powers of the coupling ``lam`` turns the
identity into a cascade: the order-0 equation is solved in closed form by a
Coulomb-type (``c + p/x``) or oscillator-type (``c + w*x``) leading term, and
each order k >= 1 reduces to a *triangular* linear system for the polynomial
coefficients of ``w_k`` plus the scalar ``eps_k``, with inhomogeneity

    rhs_k = v_k - B_k,      B_k = sum_{m+n=k, m,n>=1} w_m w_n.

Excited levels come from a ladder of partner problems: rung r+1 has potential
``v_{r+1} = v_r + 2 W_r'`` order by order, and shares its spectrum with rung r
except for the lowest state removed at each step.  A single generic triangular
elimination serves all problem families; every solved rung is verified against
the exact Riccati identity before a chain is returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence, Union

from .errors import (
    ChainIncomplete,
    InvalidLeading,
    ResidualNonzero,
    UnsolvableOrder,
)
from .exact import (
    LambdaSeries,
    LaurentPoly,
    bernoulli_minus,
    rational_to_str,
)

__all__ = [
    "LeadingSuperpotential",
    "Hulthen",
    "Anharmonic",
    "GenericPerturbed",
    "ProblemFamily",
    "Rung",
    "ChainSolution",
    "family_name",
    "family_b",
    "rung_leading",
    "solve_leading",
    "potential_coefficient",
    "convolution_B",
    "solve_riccati_order",
    "solve_order",
    "riccati_residual",
    "solve_chain",
]


@dataclass(frozen=True)
class LeadingSuperpotential:
    """Closed-form order-0 superpotential ``pole/x + constant + linear*x``.

    Exactly one of the two shapes must hold: Coulomb-type (pole != 0,
    linear == 0) or oscillator-type (pole == 0, linear != 0).
    """

    pole: Fraction
    constant: Fraction
    linear: Fraction
    leading_energy: Fraction

    def __post_init__(self):
        object.__setattr__(self, "pole", Fraction(self.pole))
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "linear", Fraction(self.linear))
        object.__setattr__(self, "leading_energy", Fraction(self.leading_energy))
        coulomb = self.pole != 0 and self.linear == 0
        oscillator = self.pole == 0 and self.linear != 0
        if not (coulomb or oscillator):
            raise InvalidLeading(
                "leading superpotential must be Coulomb-type (pole != 0, linear == 0) "
                "or oscillator-type (pole == 0, linear != 0)"
            )

    @property
    def is_coulomb(self) -> bool:
        return self.pole != 0

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly({-1: self.pole, 0: self.constant, 1: self.linear})

    def order_zero_potential(self) -> LaurentPoly:
        """The potential this leading term solves: w^2 - w' + eps."""
        w = self.as_poly()
        return w * w - w.derivative() + LaurentPoly.constant(self.leading_energy)


@dataclass(frozen=True)
class Hulthen:
    """Screened Coulomb problem at angular momentum l (radial, x > 0)."""

    l: int

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("angular momentum must be non-negative")


@dataclass(frozen=True)
class Anharmonic:
    """Quartic perturbation of the harmonic oscillator on the full line."""


@dataclass(frozen=True)
class GenericPerturbed:
    """A solvable leading problem plus a polynomial perturbation at order lam.

    ``v_0(x, lam) = (w00^2 - w00' + eps00) + lam * perturbation(x)``.
    """

    leading: LeadingSuperpotential
    perturbation: LaurentPoly

    def __post_init__(self):
        mn = self.perturbation.min_exponent
        if mn is not None and mn < 0:
            raise ValueError("perturbation must be a pure polynomial (min exponent >= 0)")


ProblemFamily = Union[Hulthen, Anharmonic, GenericPerturbed]


def family_name(family: ProblemFamily) -> str:
    if isinstance(family, Hulthen):
        return "hulthen"
    if isinstance(family, Anharmonic):
        return "anharmonic"
    if isinstance(family, GenericPerturbed):
        return "generic"
    raise TypeError(f"unknown problem family {family!r}")


def family_b(family: ProblemFamily) -> int:
    """Base pole parameter of the chain: l + 1 for the screened Coulomb family."""
    return family.l + 1 if isinstance(family, Hulthen) else 0


def rung_leading(family: ProblemFamily, b: int, r: int) -> LeadingSuperpotential:
    """Order-0 solution for rung r of the partner ladder."""
    if isinstance(family, Hulthen):
        if b + r < 1:
            raise InvalidLeading(f"need b + r >= 1, got b={b}, r={r}")
        br = b + r
        return LeadingSuperpotential(
            pole=Fraction(-br),
            constant=Fraction(1, br),
            linear=Fraction(0),
            leading_energy=Fraction(-1, br * br),
        )
    if isinstance(family, Anharmonic):
        if r < 0:
            raise InvalidLeading("rung index must be non-negative")
        return LeadingSuperpotential(
            pole=Fraction(0),
            constant=Fraction(0),
            linear=Fraction(1),
            leading_energy=Fraction(2 * r + 1),
        )
    if isinstance(family, GenericPerturbed):
        return _generic_rung_leading(family.leading, r)
    raise TypeError(f"unknown problem family {family!r}")


def _generic_rung_leading(base: LeadingSuperpotential, r: int) -> LeadingSuperpotential:
    # Partner rule at order 0: v_{r,0} = v_{r-1,0} + 2 w_{r-1,0}'.  For a
    # Coulomb-type leading this shifts the pole by -1 per rung (keeping
    # pole*constant invariant); an oscillator-type leading is unchanged and
    # the energy climbs by 2*linear per rung.  Each shifted term is verified
    # against the order-0 Riccati identity for the shifted potential.
    lead = base
    v0 = base.order_zero_potential()
    for step in range(1, r + 1):
        v0 = v0 + 2 * lead.as_poly().derivative()
        if lead.is_coulomb:
            new_pole = lead.pole - 1
            if new_pole == 0:
                raise InvalidLeading(f"pole reaches 0 at rung {step}; ladder terminates")
            new_const = lead.constant * lead.pole / new_pole
            lead = LeadingSuperpotential(
                pole=new_pole,
                constant=new_const,
                linear=Fraction(0),
                leading_energy=lead.leading_energy + lead.constant**2 - new_const**2,
            )
        else:
            lead = LeadingSuperpotential(
                pole=Fraction(0),
                constant=lead.constant,
                linear=lead.linear,
                leading_energy=lead.leading_energy + 2 * lead.linear,
            )
        if lead.order_zero_potential() != v0:
            raise InvalidLeading(f"rung {step} leading term fails the order-0 Riccati identity")
    return lead


def solve_leading(family: ProblemFamily, b: int, r: int) -> tuple[LaurentPoly, Fraction]:
    """Order-0 superpotential and energy of rung r, as (polynomial, rational)."""
    lead = rung_leading(family, b, r)
    return lead.as_poly(), lead.leading_energy


@dataclass(frozen=True)
class Rung:
    """One solved partner problem: superpotential, energy and potential series."""

    index: int
    leading: LeadingSuperpotential
    w: tuple[LaurentPoly, ...]
    energy: tuple[Fraction, ...]
    potential: tuple[LaurentPoly, ...]

    @property
    def order(self) -> int:
        return len(self.w) - 1

    def superpotential_series(self) -> LambdaSeries:
        return LambdaSeries(self.w)

    def energy_series(self) -> LambdaSeries:
        return LambdaSeries(self.energy)

    def potential_series(self) -> LambdaSeries:
        return LambdaSeries(self.potential)


@dataclass(frozen=True)
class ChainSolution:
    """A fully solved partner ladder for one problem, truncated at order K."""

    family: ProblemFamily
    b: int
    r_max: int
    K: int
    rungs: tuple[Rung, ...]

    def rung(self, r: int) -> Rung:
        if not 0 <= r <= self.r_max:
            raise ChainIncomplete(f"rung {r} outside solved range 0..{self.r_max}")
        return self.rungs[r]

    def energy_coefficients(self, r: int) -> tuple[Fraction, ...]:
        return self.rung(r).energy

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "family": _family_to_json(self.family),
            "b": self.b,
            "rMax": self.r_max,
            "K": self.K,
            "rungs": [
                {
                    "r": rung.index,
                    "energy": [rational_to_str(e) for e in rung.energy],
                    "superpotential": [p.to_json() for p in rung.w],
                }
                for rung in self.rungs
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ChainSolution":
        family = _family_from_json(obj["family"])
        b = int(obj["b"])
        K = int(obj["K"])
        rungs = []
        for entry in obj["rungs"]:
            r = int(entry["r"])
            w = tuple(LaurentPoly.from_json(p) for p in entry["superpotential"])
            energy = tuple(Fraction(e) for e in entry["energy"])
            lead = rung_leading(family, b, r)
            potential = _rung_potentials(family, r, K, rungs)
            rungs.append(Rung(r, lead, w, energy, tuple(potential)))
        return cls(family, b, int(obj["rMax"]), K, tuple(rungs))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "ChainSolution":
        return cls.from_json(json.loads(text))


def _family_to_json(family: ProblemFamily) -> dict:
    name = family_name(family)
    if isinstance(family, Hulthen):
        return {"name": name, "l": family.l}
    if isinstance(family, Anharmonic):
        return {"name": name}
    return {
        "name": name,
        "leading": {
            "pole": rational_to_str(family.leading.pole),
            "constant": rational_to_str(family.leading.constant),
            "linear": rational_to_str(family.leading.linear),
            "leadingEnergy": rational_to_str(family.leading.leading_energy),
        },
        "perturbation": family.perturbation.to_json(),
    }


def _family_from_json(obj: dict) -> ProblemFamily:
    name = obj["name"]
    if name == "hulthen":
        return Hulthen(int(obj["l"]))
    if name == "anharmonic":
        return Anharmonic()
    if name == "generic":
        lead = obj["leading"]
        return GenericPerturbed(
            LeadingSuperpotential(
                Fraction(lead["pole"]),
                Fraction(lead["constant"]),
                Fraction(lead["linear"]),
                Fraction(lead["leadingEnergy"]),
            ),
            LaurentPoly.from_json(obj["perturbation"]),
        )
    raise ValueError(f"unknown family name {name!r}")


def _base_potential_order(family: ProblemFamily, k: int) -> LaurentPoly:
    """Order-k coefficient of the rung-0 potential expansion."""
    if isinstance(family, Hulthen):
        l = family.l
        if k == 0:
            return LaurentPoly({-2: Fraction(l * (l + 1)), -1: Fraction(-2)})
        h_k = -2 * bernoulli_minus(k)
        return LaurentPoly({k - 1: Fraction(h_k, factorial(k))})
    if isinstance(family, Anharmonic):
        if k == 0:
            return LaurentPoly.monomial(2)
        if k == 1:
            return LaurentPoly.monomial(4)
        return LaurentPoly.zero()
    if isinstance(family, GenericPerturbed):
        if k == 0:
            return family.leading.order_zero_potential()
        if k == 1:
            return family.perturbation
        return LaurentPoly.zero()
    raise TypeError(f"unknown problem family {family!r}")


def potential_coefficient(
    family: ProblemFamily, r: int, k: int, chain: "ChainSolution | Sequence[Rung] | None" = None
) -> LaurentPoly:
    """Order-k coefficient of the rung-r potential.

    Rung 0 comes from the family's coupling expansion; rung r >= 1 from the
    partner rule ``v_r = v_{r-1} + 2 w_{r-1}'`` applied order by order, which
    requires rung r-1 of `chain` to be solved through order k.
    """
    if k < 0 or r < 0:
        raise ValueError("indices must be non-negative")
    if r == 0:
        return _base_potential_order(family, k)
    rungs = chain.rungs if isinstance(chain, ChainSolution) else chain
    if rungs is None or len(rungs) < r:
        raise ChainIncomplete(f"rung {r - 1} not solved; cannot form rung {r} potential")
    prev = rungs[r - 1]
    if prev.order < k:
        raise ChainIncomplete(
            f"rung {r - 1} solved only to order {prev.order}; order {k} requested"
        )
    return prev.potential[k] + 2 * prev.w[k].derivative()


def convolution_B(
    rung: "Rung | Sequence[LaurentPoly]", k: int, alpha: int | None = None
) -> "LaurentPoly | Fraction":
    """The order-k self-convolution of a rung's superpotential, excluding the
    order-0 factors: ``B_k = sum_{m+n=k, m,n>=1} w_m w_n``.

    Returns the full polynomial, or the x^alpha coefficient when `alpha` is
    given.  Requires orders 1..k-1 of the rung to be solved.
    """
    w = rung.w if isinstance(rung, Rung) else tuple(rung)
    if k >= 1 and len(w) < k:
        raise ChainIncomplete(f"need orders 1..{k - 1} solved, have {len(w) - 1}")
    acc = LaurentPoly.zero()
    for m in range(1, k):
        acc = acc + w[m] * w[k - m]
    if alpha is None:
        return acc
    return acc.coeff(alpha)


def solve_riccati_order(
    leading: LeadingSuperpotential, rhs: LaurentPoly
) -> tuple[LaurentPoly, Fraction]:
    """Solve ``2 w_0 w - w' = rhs - eps`` for a polynomial ``w`` and scalar ``eps``.

    ``w_0`` is the rung's leading superpotential.  The system is triangular
    from the top exponent down; the constant row yields the energy coefficient.
    """
    mn = rhs.min_exponent
    if mn is not None and mn < 0:
        raise UnsolvableOrder(f"inhomogeneity has a pole (min exponent {mn})")
    top = rhs.max_exponent if rhs.max_exponent is not None else 0
    w: dict[int, Fraction] = {}
    if leading.is_coulomb:
        c, p = leading.constant, leading.pole
        if c == 0:
            raise UnsolvableOrder("Coulomb-type leading term with zero constant part")
        # row x^beta, beta >= 1:  2c*w_beta + (2p - beta - 1)*w_{beta+1} = rhs_beta
        for beta in range(top, 0, -1):
            val = (rhs.coeff(beta) - (2 * p - beta - 1) * w.get(beta + 1, Fraction(0))) / (2 * c)
            if val:
                w[beta] = val
        eps = rhs.coeff(0) - (2 * p - 1) * w.get(1, Fraction(0))
    else:
        c, om = leading.constant, leading.linear
        # row x^beta, beta >= 1:  2om*w_{beta-1} + 2c*w_beta - (beta+1)*w_{beta+1} = rhs_beta
        for beta in range(top, 0, -1):
            val = (
                rhs.coeff(beta)
                - 2 * c * w.get(beta, Fraction(0))
                + (beta + 1) * w.get(beta + 1, Fraction(0))
            ) / (2 * om)
            if val:
                w[beta - 1] = val
        w0 = w.pop(0, Fraction(0))
        eps = rhs.coeff(0) - 2 * c * w0 + w.get(1, Fraction(0))
        if w0:
            w[0] = w0
    return LaurentPoly(w), eps


def solve_order(chain: ChainSolution, r: int, k: int) -> tuple[LaurentPoly, Fraction]:
    """Re-derive order k >= 1 of rung r from the chain's lower-order data."""
    if k < 1:
        raise ValueError("solve_order handles k >= 1; order 0 is the leading solution")
    rung = chain.rung(r)
    if rung.order < k - 1:
        raise ChainIncomplete(f"rung {r} solved to order {rung.order}; need {k - 1}")
    if k > chain.K:
        raise ChainIncomplete(f"order {k} beyond chain truncation K={chain.K}")
    v_k = rung.potential[k]
    B_k = convolution_B(rung.w[:k], k)
    return solve_riccati_order(rung.leading, v_k - B_k)


def riccati_residual(
    W: LambdaSeries, v: LambdaSeries, eps: LambdaSeries, K: int
) -> list[LaurentPoly]:
    """Order-by-order residual ``C_k - w_k' - v_k + eps_k`` with C the
    self-convolution of W; identically zero for a valid solution."""
    out = []
    for k in range(K + 1):
        acc = W[0] * W[k]
        for m in range(1, k + 1):
            acc = acc + W[m] * W[k - m]
        acc = acc - W[k].derivative() - v[k] + LaurentPoly.constant(eps[k])
        out.append(acc)
    return out


def solve_chain(family: ProblemFamily, r_max: int, K: int) -> ChainSolution:
    """Solve rungs 0..r_max of the partner ladder through order K.

    Every rung is checked against the exact Riccati identity before the chain
    is returned; a failure raises ResidualNonzero.
    """
    if r_max < 0 or K < 0:
        raise ValueError("r_max and K must be non-negative")
    return _solve_chain_cached(family, r_max, K)


def _rung_potentials(
    family: ProblemFamily, r: int, K: int, rungs_below: Sequence[Rung]
) -> list[LaurentPoly]:
    return [potential_coefficient(family, r, k, rungs_below) for k in range(K + 1)]


@lru_cache(maxsize=256)
def _solve_chain_cached(family: ProblemFamily, r_max: int, K: int) -> ChainSolution:
    # Chains extend their one-rung-shorter prefix, so ladders of different
    # depths over the same family share all common rungs through the cache.
    b = family_b(family)
    below = _solve_chain_cached(family, r_max - 1, K).rungs if r_max > 0 else ()
    rung = _solve_rung(family, b, r_max, K, below)
    return ChainSolution(family, b, r_max, K, below + (rung,))


def _solve_rung(
    family: ProblemFamily, b: int, r: int, K: int, below: tuple[Rung, ...]
) -> Rung:
    lead = rung_leading(family, b, r)
    v = _rung_potentials(family, r, K, below)
    w = [lead.as_poly()]
    energy = [lead.leading_energy]
    for k in range(1, K + 1):
        B_k = convolution_B(w, k)
        w_k, eps_k = solve_riccati_order(lead, v[k] - B_k)
        w.append(w_k)
        energy.append(eps_k)
    rung = Rung(r, lead, tuple(w), tuple(energy), tuple(v))
    residuals = riccati_residual(
        rung.superpotential_series(), rung.potential_series(), rung.energy_series(), K
    )
    if any(res for res in residuals):
        bad = [k for k, res in enumerate(residuals) if res]
        raise ResidualNonzero(f"rung {r} violates the Riccati identity at orders {bad}")
    return rung
