from fractions import Fraction

import pytest

from sullivan.algebra import (
    Element,
    GeneratorSpec,
    Monomial,
    SullivanModel,
    basis_of_degree,
    differential,
    mul,
    normalize_monomial,
    validate_model,
)


def cp2():
    free = SullivanModel.free([("x2", 2), ("x5", 5)])
    return free.with_differentials({"x5": free.gen("x2") ** 3})


def sphere2():
    free = SullivanModel.free([("y2", 2), ("y3", 3)])
    return free.with_differentials({"y3": free.gen("y2") ** 2})


class TestGeneratorSpec:
    def test_parity(self):
        assert GeneratorSpec("x", 3).is_odd
        assert not GeneratorSpec("x", 2).is_odd

    def test_rejects_bad_degree(self):
        with pytest.raises(ValueError):
            GeneratorSpec("x", 0)

    def test_rejects_bad_name(self):
        with pytest.raises(ValueError):
            GeneratorSpec("2x", 2)

    def test_rejects_bad_origin(self):
        with pytest.raises(ValueError):
            GeneratorSpec("x", 2, origin="total")


class TestNormalize:
    def setup_method(self):
        self.m = SullivanModel.free(
            [("z1", 1), ("a3", 3), ("b3", 3), ("x2", 2)]
        )

    def test_identity_word(self):
        mon, sign = normalize_monomial(self.m, ["z1", "a3"])
        assert mon == Monomial((("z1", 1), ("a3", 1))) and sign == 1

    def test_odd_swap_flips_sign(self):
        mon, sign = normalize_monomial(self.m, ["b3", "a3"])
        assert mon == Monomial((("a3", 1), ("b3", 1))) and sign == -1

    def test_even_moves_freely(self):
        mon, sign = normalize_monomial(self.m, ["x2", "z1"])
        assert mon == Monomial((("z1", 1), ("x2", 1))) and sign == 1

    def test_three_odd_cycle(self):
        # b a z -> two transpositions past a, one past z... count pairs out of order
        mon, sign = normalize_monomial(self.m, ["b3", "a3", "z1"])
        assert mon.exps == (("z1", 1), ("a3", 1), ("b3", 1))
        assert sign == -1  # (b,a), (b,z), (a,z) inverted: 3 pairs

    def test_odd_square_dies(self):
        assert normalize_monomial(self.m, ["a3", "a3"]) == (None, 0)

    def test_even_power_accumulates(self):
        mon, sign = normalize_monomial(self.m, ["x2", "x2", "x2"])
        assert mon == Monomial((("x2", 3),)) and sign == 1

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            normalize_monomial(self.m, ["nope"])


class TestProducts:
    def test_odd_anticommute(self):
        m = SullivanModel.free([("a3", 3), ("b3", 3)])
        a, b = m.gen("a3"), m.gen("b3")
        assert b * a == -(a * b)
        assert (a * b) * (a * b) == m.zero()

    def test_odd_square_zero(self):
        m = SullivanModel.free([("a3", 3)])
        assert m.gen("a3") * m.gen("a3") == m.zero()

    def test_even_commute(self):
        m = SullivanModel.free([("z1", 1), ("x2", 2)])
        z, x = m.gen("z1"), m.gen("x2")
        assert x * z == z * x

    def test_graded_commutativity_sample(self):
        m = SullivanModel.free([("z1", 1), ("x2", 2), ("a3", 3), ("x4", 4)])
        for na in m.generator_names:
            for nb in m.generator_names:
                a, b = m.gen(na), m.gen(nb)
                sign = (-1) ** (m.degree_of(na) * m.degree_of(nb))
                assert a * b == sign * (b * a)

    def test_scalar_arithmetic(self):
        m = SullivanModel.free([("x2", 2)])
        x = m.gen("x2")
        e = Fraction(3, 2) * x - x
        assert e == Fraction(1, 2) * x
        assert (e - e).is_zero()

    def test_pow(self):
        m = SullivanModel.free([("x2", 2)])
        assert m.gen("x2") ** 4 == m.monomial(Monomial((("x2", 4),)))
        assert m.gen("x2") ** 0 == m.unit()

    def test_mixed_model_rejected(self):
        a = SullivanModel.free([("x2", 2)])
        b = SullivanModel.free([("y2", 2)])
        with pytest.raises(ValueError):
            mul(a.gen("x2"), b.gen("y2"))

    def test_unhashable(self):
        m = SullivanModel.free([("x2", 2)])
        with pytest.raises(TypeError):
            hash(m.gen("x2"))


class TestDifferential:
    def test_on_generator(self):
        m = cp2()
        x2 = m.gen("x2")
        assert m.d("x5") == x2 ** 3
        assert m.d("x2").is_zero()

    def test_leibniz_product(self):
        m = cp2()
        # d(x2*x5) = x2 * d(x5), x2 closed and even
        assert differential(m.gen("x2") * m.gen("x5")) == m.gen("x2") ** 4

    def test_leibniz_sign_on_odd_prefix(self):
        m = sphere2()
        y2, y3 = m.gen("y2"), m.gen("y3")
        # d(y3*y2) = y2^3, no sign from the even tail
        assert (y3 * y2).d() == y2 ** 3
        # d(y3 * y3) = d(0) = 0 consistency
        assert (y3 * y3).d().is_zero()

    def test_leibniz_general(self):
        free = SullivanModel.free([("a2", 2), ("a3", 3), ("b2", 2), ("b5", 5)])
        m = free.with_differentials(
            {"a3": free.gen("a2") ** 2, "b5": free.gen("b2") ** 3}
        )
        x = m.gen("a3")
        y = m.gen("b5")
        lhs = (x * y).d()
        rhs = x.d() * y - x * y.d()  # |a3| odd
        assert lhs == rhs

    def test_d_squared_failure_detected(self):
        free = SullivanModel.free([("x2", 2), ("x3", 3), ("x5", 5)])
        bad = free.with_differentials(
            {"x2": free.gen("x3"), "x5": free.gen("x2") ** 3}
        )
        rep = validate_model(bad, require_minimal=False)
        assert not rep.ok
        assert rep.d_squared_failures == [("x5", "3*x2^2*x3")]

    def test_linearity(self):
        m = cp2()
        x2, x5 = m.gen("x2"), m.gen("x5")
        e = 2 * x5 + Fraction(1, 3) * x2 * x5
        assert m.d(e) == 2 * x2 ** 3 + Fraction(1, 3) * x2 ** 4


class TestBasis:
    def test_frozen_degree5_order(self):
        m = SullivanModel.free(
            [("z1", 1), ("z2", 2), ("x2", 2), ("x5", 5), ("z9", 9)]
        )
        names = [mo.format() for mo in basis_of_degree(m, 5)]
        assert names == ["x5", "z1*x2^2", "z1*z2*x2", "z1*z2^2"]

    def test_unit_in_degree_zero(self):
        m = SullivanModel.free([("x2", 2)])
        assert m.basis_of_degree(0) == (Monomial(),)
        assert m.basis_of_degree(-1) == ()

    @pytest.mark.parametrize(
        "k,dim",
        [(0, 1), (1, 0), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1)],
    )
    def test_sphere2_dimensions(self, k, dim):
        # Lambda(y2, y3): one monomial y2^a or y2^a*y3 per degree
        assert sphere2().dimension_of_degree(k) == dim

    def test_exterior_dims(self):
        m = SullivanModel.free([("a3", 3), ("b3", 3)])
        dims = [m.dimension_of_degree(k) for k in range(8)]
        assert dims == [1, 0, 0, 2, 0, 0, 1, 0]

    def test_cache_shared_across_diff_variants(self):
        free = SullivanModel.free([("y2", 2), ("y3", 3)])
        m = free.with_differentials({"y3": free.gen("y2") ** 2})
        assert free.basis_of_degree(6) is m.basis_of_degree(6)


class TestValidation:
    @pytest.mark.parametrize(
        "build",
        [cp2, sphere2],
        ids=["projective-plane", "two-sphere"],
    )
    def test_good_models(self, build):
        assert validate_model(build()).ok

    def test_minimality_violation(self):
        # a linear differential term is not decomposable
        free = SullivanModel.free([("u1", 1), ("v2", 2)])
        lin = free.with_differentials({"u1": free.gen("v2")})
        rep = validate_model(lin)
        assert not rep.ok and rep.nonminimal_terms == [("u1", "v2")]
        assert validate_model(lin, require_minimal=False).ok

    def test_degree_mismatch(self):
        free = SullivanModel.free([("x2", 2), ("x7", 7)])
        bad = free.with_differentials({"x7": free.gen("x2") ** 2})
        rep = validate_model(bad)
        assert rep.degree_failures and not rep.ok
        assert "not homogeneous" in rep.summary()

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            SullivanModel.free([("x2", 2), ("x2", 4)])

    def test_unknown_diff_target(self):
        free = SullivanModel.free([("x2", 2)])
        with pytest.raises(ValueError):
            free.with_differentials({"x9": free.gen("x2")})


class TestElementBasics:
    def test_degree(self):
        m = cp2()
        assert (m.gen("x2") ** 3).degree() == 6
        assert m.zero().degree() is None
        with pytest.raises(ValueError):
            (m.gen("x2") + m.gen("x5")).degree()

    def test_equality_ignores_differential(self):
        free = SullivanModel.free([("y2", 2), ("y3", 3)])
        m = free.with_differentials({"y3": free.gen("y2") ** 2})
        assert free.gen("y2") == m.gen("y2")

    def test_repr(self):
        m = cp2()
        e = m.gen("x5") - 2 * m.gen("x2") * m.gen("x5")
        assert repr(e) == "x5 - 2*x2*x5"
        assert repr(m.zero()) == "0"
        assert repr(m.constant(Fraction(-3, 4))) == "-3/4"
