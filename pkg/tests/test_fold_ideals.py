import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foldideals.arrangement import Arrangement, random_arrangement
from foldideals.exactalg import LinearForm
from foldideals.fold_ideals import (
    check_power_identity,
    colon_step_check,
    fold_ideal,
    split_identity_check,
    top_factorization_check,
)
from foldideals.groebner import maximal_ideal

from oracles import homogeneous_ideals_equal, homogeneous_member


@st.composite
def small_arrangements(draw):
    n = draw(st.integers(3, 5))
    return random_arrangement(n, 3, draw(st.integers(0, 5000)), lo=-2, hi=2)


@st.composite
def planar_multisets(draw):
    pool = ["x1", "x2", "x1+x2", "x1-x2", "x1+2*x2"]
    picks = draw(st.lists(st.sampled_from(pool), min_size=2, max_size=5))
    if len(set(picks)) < 2:
        picks.append("x2" if picks[0] != "x2" else "x1")
    return Arrangement.from_strings(picks, 2)


class TestGenerators:
    def test_pencil_pairs(self, pencil):
        F = fold_ideal(pencil, 2)
        assert len(F.generators) == 6
        assert F.subsets[0] == (0, 1)
        R = pencil.ring
        assert F.generators[0] == R.parse("x1*x2")
        assert F.generators[1] == R.parse("x1^2 + x1*x2")

    def test_extremes(self, pencil):
        assert fold_ideal(pencil, 0).ideal.is_unit()
        assert fold_ideal(pencil, 5).ideal.is_zero()
        (g,) = fold_ideal(pencil, 4).generators
        assert g.degree() == 4

    def test_multiplicities_kept(self):
        S = Arrangement.from_strings(["x1", "x1", "x2"], 2)
        F = fold_ideal(S, 2)
        assert len(F.generators) == 3
        assert F.generators[0] == S.ring.parse("x1^2")

    def test_negative_rejected(self, pencil):
        with pytest.raises(ValueError):
            fold_ideal(pencil, -1)

    @given(small_arrangements())
    def test_containment_chain(self, A):
        # I_{a+1} inside I_a inside m^a, checked degree-wise by linear algebra
        m = maximal_ideal(A.ring)
        for a in range(1, A.n + 1):
            gens = fold_ideal(A, a).generators
            for g in gens:
                assert g.degree() == a
                assert homogeneous_member(g, (m ** a).gens, A.ring)
            for g in fold_ideal(A, a + 1).generators:
                assert homogeneous_member(g, gens, A.ring)


class TestIdentities:
    def test_power_identity_examples(self, pencil, generic4):
        rep = check_power_identity(pencil)
        assert rep["min_distance"] == 1 and rep["pass"]
        rep = check_power_identity(generic4)
        assert rep["min_distance"] == 2 and rep["pass"]
        assert [c["a"] for c in rep["checked"]] == [1, 2]

    def test_power_identity_oracle(self, generic4):
        m = maximal_ideal(generic4.ring)
        assert homogeneous_ideals_equal(fold_ideal(generic4, 2).generators, (m ** 2).gens, generic4.ring)
        assert not homogeneous_ideals_equal(fold_ideal(generic4, 3).generators, (m ** 3).gens, generic4.ring)

    def test_colon_examples(self, pencil):
        R = pencil.ring
        assert colon_step_check(pencil, 0, 2)
        assert colon_step_check(pencil, R.parse("x1 + x2"), 3)
        assert colon_step_check(pencil, LinearForm((0, 0, 1)), 4)

    def test_colon_multiset(self):
        S = Arrangement.from_strings(["x1", "x1", "x2", "x1+x2", "x3", "x3"])
        for a in range(1, 6):
            assert all(colon_step_check(S, i, a) for i in range(S.n))

    def test_split_and_top(self, pencil):
        assert split_identity_check(pencil, 3, 2)
        assert top_factorization_check(pencil)
        assert top_factorization_check(Arrangement.from_strings(["x1", "x1", "x2", "x1+x2", "x3", "x3"]))

    @settings(max_examples=10)
    @given(small_arrangements(), st.integers(1, 4), st.integers(0, 4))
    def test_colon_and_split_random(self, A, a, i):
        i %= A.n
        assert colon_step_check(A, i, a)
        assert split_identity_check(A, i, a)

    @settings(max_examples=10)
    @given(small_arrangements())
    def test_power_identity_random(self, A):
        assert check_power_identity(A)["pass"]
        assert top_factorization_check(A)

    @settings(max_examples=15)
    @given(planar_multisets())
    def test_planar_multisets(self, S):
        assert check_power_identity(S)["pass"]
        assert top_factorization_check(S)
        for a in range(1, S.n + 1):
            assert colon_step_check(S, 0, a)
