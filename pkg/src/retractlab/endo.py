"""Endomorphisms of Q[x, y] given by the images of x and y.

Composition convention: ``apply(compose(phi, psi), p) == apply(phi, apply(psi, p))``,
i.e. ``compose(phi, psi)`` substitutes ``phi`` into the images of ``psi``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConstantInput
from .poly import X, Y, Polynomial
from .verdict import Verdict


@dataclass(frozen=True)
class Endomorphism:
    imgx: Polynomial
    imgy: Polynomial

    @classmethod
    def identity(cls) -> "Endomorphism":
        return cls(X, Y)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def to_json(self) -> dict:
        return {"x": self.imgx.to_str(), "y": self.imgy.to_str()}

    @classmethod
    def from_json(cls, data: dict) -> "Endomorphism":
        from .parsing import parse_polynomial

        return cls(parse_polynomial(data["x"]), parse_polynomial(data["y"]))

    @classmethod
    def parse(cls, fx: str, fy: str) -> "Endomorphism":
        from .parsing import parse_polynomial

        return cls(parse_polynomial(fx), parse_polynomial(fy))

    def __str__(self):
        return f"(x -> {self.imgx}, y -> {self.imgy})"


IDENTITY = Endomorphism.identity()


def apply(phi: Endomorphism, p: Polynomial) -> Polynomial:
    return p.subs(phi.imgx, phi.imgy)


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    return Endomorphism(apply(phi, psi.imgx), apply(phi, psi.imgy))


def iterate(phi: Endomorphism, k: int) -> Endomorphism:
    if k < 1:
        raise ValueError("iteration count must be >= 1")
    result = phi
    for _ in range(k - 1):
        result = compose(phi, result)
    return result


def jacobian_det(phi: Endomorphism) -> Polynomial:
    ux, uy = phi.imgx.partials()
    vx, vy = phi.imgy.partials()
    return ux * vy - uy * vx


def pair_jacobian(p: Polynomial, q: Polynomial) -> Polynomial:
    return jacobian_det(Endomorphism(p, q))


def is_injective(phi: Endomorphism) -> bool:
    # char 0: injective <=> images algebraically independent <=> D != 0
    return not jacobian_det(phi).is_zero()


def check_fixed(phi: Endomorphism, p: Polynomial) -> bool:
    return apply(phi, p) == p


@dataclass(frozen=True)
class CorollaryReport:
    jacobian_constant: bool
    psi_injective: bool
    recovers_p: bool
    phi_automorphism_verdict: Verdict

    @property
    def hypotheses_met(self) -> bool:
        return self.jacobian_constant and self.psi_injective and self.recovers_p

    @property
    def contradiction(self) -> bool:
        """True when all hypotheses hold yet phi was refuted as an automorphism."""
        return self.hypotheses_met and self.phi_automorphism_verdict.is_no

    @property
    def note(self) -> str:
        if not self.hypotheses_met:
            unmet = [
                name
                for name, ok in (
                    ("constant nonzero Jacobian of phi", self.jacobian_constant),
                    ("psi injective", self.psi_injective),
                    ("psi(phi(p)) = p", self.recovers_p),
                )
                if not ok
            ]
            return "hypotheses unmet: " + ", ".join(unmet)
        if self.contradiction:
            return "CONTRADICTION: hypotheses hold but phi is not an automorphism"
        return "hypotheses hold and phi is an automorphism"


def verify_corollary_instance(phi: Endomorphism, psi: Endomorphism, p: Polynomial) -> CorollaryReport:
    """Check one instance of: Jacobian-constant phi, injective psi with psi(phi(p)) = p."""
    from .reduction import is_automorphism

    if p.is_constant():
        raise ConstantInput("p must be non-constant")
    det = jacobian_det(phi)
    return CorollaryReport(
        jacobian_constant=det.degree == 0,
        psi_injective=is_injective(psi),
        recovers_p=apply(psi, apply(phi, p)) == p,
        phi_automorphism_verdict=is_automorphism(phi),
    )
