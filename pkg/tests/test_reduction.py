import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import nonconstant, rand_tame
from retractlab import (
    ConstantInput,
    Decomposition,
    DependentPair,
    ElemOnFirst,
    ElemOnSecond,
    Endomorphism,
    LinearMix,
    compose,
    elementary_reduce,
    find_mate,
    invert_automorphism,
    is_automorphism,
    is_coordinate,
    is_elementary_reduced,
    is_retract_generator,
    jacobian_det,
    pair_jacobian,
    parse_polynomial,
    subalgebra_membership,
)
from retractlab.endo import IDENTITY
from retractlab.reduction import step_from_json

P = parse_polynomial
E = Endomorphism.parse


class TestSteps:
    def test_elem_on_first(self):
        assert ElemOnFirst(-1, 3).apply(P("x + y^3"), P("y")) == (P("x"), P("y"))

    def test_elem_on_second(self):
        assert ElemOnSecond(2, 2).apply(P("x"), P("y")) == (P("x"), P("y + 2*x^2"))

    def test_linear_mix_inverse(self):
        mix = LinearMix(1, 2, 3, 4)
        p, q = mix.apply(P("x"), P("y"))
        assert mix.inverse().apply(p, q) == (P("x"), P("y"))

    def test_singular_mix_rejected(self):
        with pytest.raises(ValueError):
            LinearMix(1, 2, 2, 4)

    @pytest.mark.parametrize("step", [LinearMix("1/2", 0, "-3", 1), ElemOnFirst("3/2", 2), ElemOnSecond(-1, 3)])
    def test_json_round_trip(self, step):
        assert step_from_json(step.to_json()) == step

    def test_rationals_serialize_as_strings(self):
        assert ElemOnFirst("3/2", 2).to_json() == {"kind": "ElemOnFirst", "mu": "3/2", "k": 2}


class TestElementaryReduce:
    def test_cubic_shear(self):
        red = elementary_reduce(P("x + y^3"), P("y"))
        assert (red.first, red.second) == (P("x"), P("y"))
        assert red.steps == (ElemOnFirst(-1, 3),)

    def test_already_reduced(self):
        red = elementary_reduce(P("x"), P("y"))
        assert (red.first, red.second, red.steps) == (P("x"), P("y"), ())

    def test_no_move_on_powers(self):
        red = elementary_reduce(P("x^2"), P("y^3"))
        assert (red.first, red.second, red.steps) == (P("x^2"), P("y^3"), ())

    def test_errors(self):
        with pytest.raises(DependentPair):
            elementary_reduce(P("x+y"), P("(x+y)^2"))
        with pytest.raises(ConstantInput):
            elementary_reduce(P("3"), P("y"))

    @settings(max_examples=40)
    @given(nonconstant(max_degree=3, max_terms=4), nonconstant(max_degree=3, max_terms=4),
           st.integers(min_value=0, max_value=10**6))
    def test_monotone_and_subalgebra_preserving(self, p, q, seed):
        # hide a reducible structure on top of a random pair
        rng = random.Random(seed)
        k = rng.randint(2, 3)
        p2 = p + q**k * rng.choice([1, -2, 3])
        if pair_jacobian(p2, q).is_zero():
            return
        red = elementary_reduce(p2, q)
        a, b = p2, q
        for step in red.steps:
            before = a.degree + b.degree
            a, b = step.apply(a, b)
            assert a.degree + b.degree < before
        assert (a, b) == (red.first, red.second)
        assert is_elementary_reduced(red.first, red.second)
        if max(p2.degree, q.degree) <= 6:
            for f in (p2, q):
                expr = subalgebra_membership(f, red.first, red.second)
                assert expr is not None and expr.subs(red.first, red.second) == f
            for f in (red.first, red.second):
                assert subalgebra_membership(f, p2, q) is not None


class TestIsElementaryReduced:
    @pytest.mark.parametrize("p, q, expected", [("x^2", "y^3", True), ("x + y^2", "y", False), ("x", "y", True)])
    def test_examples(self, p, q, expected):
        assert is_elementary_reduced(P(p), P(q)) is expected


class TestIsAutomorphism:
    def test_shear_then_swap(self):
        v = is_automorphism(E("y", "x + y^2"))
        assert v.is_yes
        kinds = [type(s).__name__ for s in v.certificate.steps]
        assert kinds == ["ElemOnSecond", "LinearMix"]
        assert v.certificate.steps[1] == LinearMix(0, 1, 1, 0)
        assert v.certificate.replay() == E("y", "x + y^2")

    def test_nonconstant_jacobian(self):
        v = is_automorphism(E("x^2", "y"))
        assert v.is_no and v.reason == "non-constant Jacobian"

    def test_zero_jacobian(self):
        v = is_automorphism(E("x + y", "(x + y)^3"))
        assert v.is_no and v.reason == "non-injective"

    def test_affine(self):
        v = is_automorphism(E("x + y", "x - y"))
        assert v.is_yes
        assert v.certificate.replay() == E("x + y", "x - y")

    def test_identity_has_empty_certificate(self):
        v = is_automorphism(IDENTITY)
        assert v.certificate == Decomposition((), IDENTITY)

    @pytest.mark.parametrize("seed", range(25))
    def test_random_tame(self, seed):
        phi = rand_tame(random.Random(seed), max_degree=9)
        v = is_automorphism(phi)
        assert v.is_yes and not v.flags.get("stalled")
        dec = v.certificate
        assert dec.replay() == phi
        det = jacobian_det(phi)
        assert det.is_constant() and not det.is_zero()
        # the factors compose back to phi, and the inverse really inverts
        composed = IDENTITY
        for f in dec.factors():
            composed = compose(composed, f)
        assert composed == phi
        inv = invert_automorphism(dec)
        assert compose(phi, inv) == IDENTITY
        assert Decomposition.from_json(dec.to_json()) == dec


class TestMates:
    def test_examples(self):
        assert find_mate(P("x"), 1) == P("y")
        assert find_mate(P("x + y^2"), 1) == P("y")
        assert find_mate(P("x*y"), 3) is None

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            find_mate(P("x"), 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_mate_set_is_affine(self, seed):
        phi = rand_tame(random.Random(100 + seed), max_steps=3)
        p = phi.imgx
        bound = max(1, p.degree)
        q1 = find_mate(p, bound)
        assert q1 is not None and pair_jacobian(p, q1) == P("1")
        # q1 + p^j is another mate; the midpoint must be one as well
        q2 = q1 + p**2 * 3 if 2 * p.degree <= bound else q1 + P("5")
        mid = (q1 + q2) * Fraction(1, 2)
        assert pair_jacobian(p, q2) == P("1")
        assert pair_jacobian(p, mid) == P("1")


class TestIsCoordinate:
    def test_x(self):
        v = is_coordinate(P("x"))
        assert v.is_yes and v.certificate["mate"] == P("y")

    def test_shear(self):
        v = is_coordinate(P("x + y^2"))
        assert v.is_yes and v.certificate["mate"] == P("y")
        assert v.certificate["decomposition"].replay() == Endomorphism(P("x + y^2"), P("y"))

    def test_origin_obstruction(self):
        v = is_coordinate(P("x*y"))
        assert v.is_no and "origin" in v.reason and v.bounds is None

    def test_critical_point(self):
        v = is_coordinate(P("x + x*y"))
        assert v.is_no and "critical" in v.reason

    def test_low_bound_is_inconclusive(self):
        # every mate of x + (y + x^2)^2 is +-(y + x^2) plus a polynomial in p
        p = P("x + (y + x^2)^2")
        v = is_coordinate(p, bound=1)
        assert v.is_inconclusive and v.bounds == {"B_mate": 1}
        full = is_coordinate(p)
        assert full.is_yes and full.certificate["mate"].degree == 2

    def test_constant(self):
        with pytest.raises(ConstantInput):
            is_coordinate(P("2"))

    @pytest.mark.parametrize("seed", range(10))
    def test_coordinates_generate_retracts(self, seed):
        phi = rand_tame(random.Random(200 + seed), max_steps=3)
        v = is_coordinate(phi.imgx)
        assert v.is_yes
        assert not is_retract_generator(phi.imgx).is_no
