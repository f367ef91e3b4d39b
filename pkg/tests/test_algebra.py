import random
import warnings
from fractions import Fraction

import pytest

from wrapcheck import presentations as P
from wrapcheck.algebra import (
    AlgebraPresentation,
    ConcreteSubalgebra,
    DegeneratePresentation,
    GradedPolynomial,
    basis_and_dims,
    check_poincare_duality,
    cup_square_form,
    euler_characteristic,
    evaluate_polynomial,
    quotient_by_degree1,
)
from wrapcheck.corpusgen import random_pd_subalgebra
from wrapcheck.exterior import Multivector

from oracles import oracle_quotient_ranks


def mono(gens, coeff, *exps):
    return GradedPolynomial.monomial(gens, coeff, exps)


class TestGradedPolynomial:
    def test_koszul_sign_on_odd_swap(self):
        gens = (("x", 1), ("y", 1))
        x = mono(gens, 1, 1, 0)
        y = mono(gens, 1, 0, 1)
        assert x * y == -(y * x)

    def test_odd_square_vanishes_in_products(self):
        gens = (("x", 1),)
        x = mono(gens, 1, 1)
        assert (x * x).is_zero

    def test_odd_exponent_two_rejected(self):
        gens = (("x", 1),)
        with pytest.raises(ValueError):
            mono(gens, 1, 2)

    def test_even_generators_central(self):
        gens = (("w", 2), ("x", 1))
        w = mono(gens, 1, 1, 0)
        x = mono(gens, 1, 0, 1)
        assert w * x == x * w

    def test_mixed_degrees_rejected(self):
        gens = (("w", 2), ("x", 1))
        with pytest.raises(ValueError):
            GradedPolynomial(gens, ((Fraction(1), (1, 0)), (Fraction(1), (0, 1))))


class TestEvaluatePolynomial:
    def test_square_of_hyperbolic_class(self):
        gens = (("w", 2),)
        p = mono(gens, 1, 2)
        w = Multivector.blade(4, (1, 2)) + Multivector.blade(4, (3, 4))
        out = evaluate_polynomial(p, {"w": w}, 4)
        assert out == Multivector.blade(4, (1, 2, 3, 4), 2)

    def test_identity_substitution(self):
        gens = (("w", 1),)
        p = mono(gens, 1, 1)
        assert evaluate_polynomial(p, {"w": Multivector.blade(2, (1,))}, 2) == Multivector.blade(
            2, (1,)
        )

    def test_repeated_one_form_kills(self):
        gens = (("x", 1), ("y", 1))
        p = mono(gens, 1, 1, 1)
        e1 = Multivector.blade(2, (1,))
        assert evaluate_polynomial(p, {"x": e1, "y": e1}, 2).is_zero

    def test_missing_generator(self):
        gens = (("x", 1),)
        with pytest.raises(ValueError):
            evaluate_polynomial(mono(gens, 1, 1), {}, 2)

    def test_degree_mismatch(self):
        gens = (("w", 2),)
        with pytest.raises(ValueError):
            evaluate_polynomial(mono(gens, 1, 1), {"w": Multivector.blade(3, (1,))}, 3)


class TestBasisAndDims:
    @pytest.mark.parametrize(
        "presentation,want",
        [
            (P.sphere(2), (1, 0, 1)),
            (P.torus(2), (1, 2, 1)),
            (P.complex_projective(2), (1, 0, 1, 0, 1)),
            (P.genus_surface(2), (1, 4, 1)),
            (P.sum_s2xs2(3), (1, 0, 6, 0, 1)),
        ],
    )
    def test_known_ranks(self, presentation, want):
        assert basis_and_dims(presentation).ranks == want

    @pytest.mark.parametrize(
        "presentation",
        [
            P.sphere(2),
            P.sphere(3),
            P.torus(2),
            P.torus(3),
            P.complex_projective(2),
            P.genus_surface(2),
            P.sum_cp2(2, 1),
            P.heisenberg_nilmanifold(),
            P.filiform4_nilmanifold(),
            P.t3_skeleton_boundary(),
        ],
    )
    def test_agrees_with_word_model_oracle(self, presentation):
        assert basis_and_dims(presentation).ranks == oracle_quotient_ranks(presentation)

    def test_random_small_presentations_match_oracle(self):
        rng = random.Random(808)
        produced = 0
        while produced < 20:
            ngens = rng.randint(1, 4)
            n = rng.randint(2, 6)
            gens = tuple((f"g{i}", rng.randint(1, min(3, n))) for i in range(ngens))
            from wrapcheck.algebra import _monomials_of_degree

            relations = []
            for _ in range(rng.randint(0, 3)):
                deg = rng.randint(2, n)
                monos = _monomials_of_degree(gens, deg)
                if not monos:
                    continue
                terms = tuple(
                    (Fraction(rng.randint(-2, 2)), rng.choice(monos))
                    for _ in range(rng.randint(1, 2))
                )
                poly = GradedPolynomial(gens, terms)
                if not poly.is_zero:
                    relations.append(poly)
            fc_monos = _monomials_of_degree(gens, n)
            if not fc_monos:
                continue
            fc = GradedPolynomial.monomial(gens, 1, rng.choice(fc_monos))
            pres = AlgebraPresentation(gens, tuple(relations), n, fc)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                try:
                    ranks = basis_and_dims(pres).ranks
                except DegeneratePresentation:
                    continue
            assert ranks == oracle_quotient_ranks(pres)
            produced += 1

    def test_degenerate_presentation(self):
        gens = (("w", 2),)
        bad = AlgebraPresentation(
            gens, (mono(gens, 1, 1),), 2, mono(gens, 1, 1)
        )
        with pytest.raises(DegeneratePresentation):
            basis_and_dims(bad)

    def test_truncation_warning(self):
        # nothing kills x w or w^2 above degree 2; truncation must step in
        gens = (("x", 1), ("w", 2))
        pres = AlgebraPresentation(gens, (), 2, GradedPolynomial.monomial(gens, 1, (0, 1)))
        with pytest.warns(UserWarning, match="truncation"):
            basis_and_dims(pres)


class TestEulerCharacteristic:
    def test_values(self):
        assert euler_characteristic(P.torus(2)) == 0
        assert euler_characteristic(P.genus_surface(2)) == -2
        assert euler_characteristic(P.complex_projective(2)) == 3


class TestPoincareDuality:
    def test_torus_holds(self):
        assert check_poincare_duality(P.torus(2)).holds

    def test_designed_failure_at_degree_one(self):
        # x pairs with nothing: the degree-1 class is orthogonal to everything
        gens = (("x", 1), ("v", 2))
        pres = AlgebraPresentation(
            gens, (mono(gens, 1, 1, 1), mono(gens, 1, 0, 2)), 2, mono(gens, 1, 0, 1)
        )
        report = check_poincare_duality(pres)
        assert not report.holds
        assert report.failing_degree == 1

    def test_connected_sum_holds(self):
        assert check_poincare_duality(P.sum_s2xs2(3)).holds


class TestCupSquareForm:
    def test_t4_middle_form(self):
        gram, reps = cup_square_form(P.torus(4), 2)
        assert len(reps) == 6
        flat = [x for row in gram for x in row]
        assert sorted(set(map(abs, flat))) == [0, 1]

    def test_fundamental_class_fixes_signs_in_middle_degree(self):
        # an all-negative 4-manifold form must come out (0, k), not (k, 0)
        from wrapcheck.quadform import QuadraticForm, signature

        gram, _ = cup_square_form(P.sum_cp2(0, 2), 2)
        form = QuadraticForm(tuple(tuple(row) for row in gram))
        assert signature(form) == (0, 2)
        gram, _ = cup_square_form(P.sum_cp2(2, 0), 2)
        assert signature(QuadraticForm(tuple(tuple(row) for row in gram))) == (2, 0)

    def test_disc_minus_two_surface(self):
        # the basis normalization fixes the Gram only up to a global
        # rational scale, which preserves invariants in even rank
        from wrapcheck.quadform import QuadraticForm, discriminant, signature

        gram, _ = cup_square_form(P.nine_manifold_disc2(), 2)
        form = QuadraticForm(tuple(tuple(row) for row in gram))
        assert discriminant(form) == -2
        assert signature(form) == (3, 3)


class TestQuotientByDegree1:
    def test_full_exterior_three(self):
        A = ConcreteSubalgebra.from_generators(
            3, [Multivector.blade(3, (i,)) for i in (1, 2, 3)]
        )
        rep = quotient_by_degree1(A, Multivector.blade(3, (1,)))
        assert rep.dim_quotient == 4 and rep.dim_ideal == 4
        assert rep.pd_holds

    def test_smallest_case(self):
        A = ConcreteSubalgebra.from_generators(1, [Multivector.blade(1, (1,))])
        rep = quotient_by_degree1(A, Multivector.blade(1, (1,)))
        assert rep.dim_quotient == 1 and rep.dim_ideal == 1

    def test_plane_inside_bigger_ambient(self):
        A = ConcreteSubalgebra.from_generators(
            4, [Multivector.blade(4, (1,)), Multivector.blade(4, (2,))]
        )
        rep = quotient_by_degree1(A, Multivector.blade(4, (1,)))
        assert rep.dim_quotient == 2 and rep.dim_ideal == 2
        assert rep.pd_holds

    def test_zero_element_rejected(self):
        A = ConcreteSubalgebra.from_generators(2, [Multivector.blade(2, (1,))])
        with pytest.raises(ValueError):
            quotient_by_degree1(A, Multivector.zero(2))

    def test_non_pd_rejected(self):
        # span{1, e1, e12, e13}: top degree 2 has dimension 2
        layers = [
            [Multivector.scalar(3, 1)],
            [Multivector.blade(3, (1,))],
            [Multivector.blade(3, (1, 2)), Multivector.blade(3, (1, 3))],
            [],
        ]
        A = ConcreteSubalgebra(3, layers)
        with pytest.raises(ValueError, match="Poincare"):
            quotient_by_degree1(A, Multivector.blade(3, (1,)))

    def test_randomized_quotient_law(self):
        rng = random.Random(20240517)
        for _ in range(30):
            n = rng.randint(1, 5)
            A, x = random_pd_subalgebra(rng, n)
            rep = quotient_by_degree1(A, x)
            assert rep.dim_quotient == rep.dim_ideal
            assert rep.pd_holds

    def test_euler_characteristic_vanishes_with_degree_one(self):
        rng = random.Random(99)
        for _ in range(20):
            n = rng.randint(1, 5)
            A, _ = random_pd_subalgebra(rng, n)
            dims = A.dims()
            assert sum((-1) ** k * d for k, d in enumerate(dims)) == 0
