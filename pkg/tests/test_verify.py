from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foldideals.arrangement import Arrangement, NotReducedError, random_arrangement
from foldideals.exactalg import Ring
from foldideals.fold_ideals import fold_ideal
from foldideals.verify import (
    claim4_check,
    cm_criterion,
    conjecture_scan,
    multisets,
    phi_kernel_check,
    predicted_betti,
    primary_decomposition_check,
    random_cases,
    series_from_betti,
    singular_locus,
    verify_a_n_minus_1,
    verify_k2,
    verify_main_theorem,
)

from oracles import intersection_points, macaulay_hf, span_rank

GENERIC5 = ["x1", "x2", "x3", "x1+x2+x3", "x1+2*x2+3*x3"]
ONE_TRIPLE5 = ["x1", "x2", "x1+x2", "x3", "x1+2*x2+3*x3"]
RANK2_4 = ["x1", "x2", "x1+x2", "x1-x2"]


def arr(forms, k=None):
    return Arrangement.from_strings(forms, k)


@st.composite
def rank3(draw, min_n=3, max_n=6):
    n = draw(st.integers(min_n, max_n))
    return random_arrangement(n, 3, draw(st.integers(0, 10_000)), lo=-2, hi=2)


class TestPrediction:
    def test_pencil(self, pencil):
        pred = predicted_betti(pencil)
        assert (pred.m, pred.p) == (6, 1)
        assert pred.ranks == (5, 6, 2) and pred.degrees == (2, 3, 4)

    def test_generic(self, generic4):
        assert predicted_betti(generic4).ranks == (6, 8, 3)
        assert predicted_betti(arr(GENERIC5)).ranks == (10, 15, 6)

    def test_n2_is_empty(self):
        assert predicted_betti(arr(["x1", "x2"])).table() == {}

    def test_rejects_multisets(self):
        with pytest.raises(NotReducedError):
            predicted_betti(arr(["x1", "x1", "x2"]))

    @given(rank3(min_n=3, max_n=8))
    def test_alternating_sum_is_one(self, A):
        pred = predicted_betti(A)
        assert pred.alternating_sum() == 1
        assert all(b >= 0 for b in pred.ranks)


class TestMainTheorem:
    @pytest.mark.parametrize("forms", [
        ["x1", "x2", "x1+x2", "x3"],
        ["x1", "x2", "x3", "x1+x2+x3"],
        GENERIC5,
        ONE_TRIPLE5,
        RANK2_4,
    ])
    def test_examples(self, forms):
        A = arr(forms)
        rep = verify_main_theorem(A)
        assert rep["pass"], rep["checks"]
        assert rep["regularity"] == A.n - 3

    def test_generic5_table(self):
        rep = verify_main_theorem(arr(GENERIC5))
        assert rep["betti"] == {"0,0": 1, "1,3": 10, "2,4": 15, "3,5": 6}

    @settings(max_examples=15)
    @given(rank3(min_n=3, max_n=6))
    def test_against_linear_algebra(self, A):
        # b1 from the span of the generators, the whole series from Macaulay ranks
        pred = predicted_betti(A)
        gens = fold_ideal(A, A.n - 2).generators
        if A.n > 2:
            assert span_rank(gens) == pred.ranks[0]
        top = A.n + 3
        assert series_from_betti(pred.table(), 3, top) == macaulay_hf(gens, A.ring, top)
        assert verify_main_theorem(A)["pass"]


class TestKernel:
    def test_pencil(self, pencil):
        rep = phi_kernel_check(pencil)
        assert rep["pass"] and rep["p"] == 1
        assert rep["kernel_hf"][:3] == [1, 1, 1]
        assert rep["certification"] == "HF-certified up to degree 8"

    def test_generic_kernel_vanishes(self, generic4):
        rep = phi_kernel_check(generic4)
        assert rep["pass"] and not any(rep["kernel_hf"])

    def test_rank4(self):
        A = arr(["x1", "x2", "x1+x2", "x3", "x4", "x3+x4"])
        rep = phi_kernel_check(A)
        assert rep["pass"] and rep["p"] == 2

    @settings(max_examples=10)
    @given(rank3(min_n=3, max_n=6))
    def test_random(self, A):
        assert phi_kernel_check(A, d_max=6)["pass"]


class TestCohenMacaulay:
    def test_examples(self, pencil, generic4):
        rep = cm_criterion(generic4)
        assert rep["pass"] and rep["cm_predicted"] and rep["pdim_computed"] == 3
        rep = cm_criterion(pencil)
        assert rep["pass"] and not rep["cm_computed"]
        rep = cm_criterion(arr(RANK2_4))
        assert rep["pass"] and rep["pdim_computed"] == 2 and rep["cm_computed"]

    def test_claim4(self, pencil):
        rep = claim4_check(pencil)
        assert rep["pass"] and rep["lhs"] == 5 and rep["applicable"]
        assert not claim4_check(arr(RANK2_4))["applicable"]

    @settings(max_examples=10)
    @given(rank3(min_n=4, max_n=6))
    def test_random(self, A):
        assert cm_criterion(A)["pass"]
        assert claim4_check(A)["pass"]


class TestTwoVariables:
    @pytest.mark.parametrize("forms", [
        ["x1", "x1", "x2"],
        ["x1", "x2", "x1+x2", "x1+x2"],
        ["x1", "x1", "x1", "x2", "x2"],
        ["x1", "x2", "x1+x2", "x1-x2", "x1+2*x2"],
    ])
    def test_verify_k2(self, forms):
        rep = verify_k2(arr(forms, 2))
        assert rep["pass"]

    def test_needs_two_variables(self, pencil):
        with pytest.raises(ValueError):
            verify_k2(pencil)

    @pytest.mark.parametrize("forms, s", [
        (["x1", "x1", "x2"], 2),
        (["x1", "x2", "x1+x2"], 3),
        (["x1", "x1", "x2", "x2"], 2),
        (["x1", "x2", "x1+x2", "x3"], 4),
        (["x1", "x1", "x2", "x3"], 3),
    ])
    def test_top_degree(self, forms, s):
        rep = verify_a_n_minus_1(arr(forms, 3 if any("x3" in f for f in forms) else 2))
        assert rep["pass"] and rep["s"] == s

    def test_multisets(self):
        R = Ring.standard(2)
        ms = multisets(["x1", "x2"], R, 3)
        assert len(ms) == 2 + 3 + 4
        assert all(S.k == 2 for S in ms)


class TestScan:
    def test_small_k2_family(self):
        R = Ring.standard(2)
        cases = [(str(S), S, a) for S in multisets(["x1", "x2", "x1+x2"], R, 4) for a in range(1, S.n + 1)]
        rep = conjecture_scan(cases)
        assert rep["pass"] and not rep["nonlinear"]
        assert [r["index"] for r in rep["cases"]] == list(range(len(cases)))

    def test_parallel_is_deterministic(self):
        cases = random_cases(3, 4)
        assert conjecture_scan(cases, jobs=2) == conjecture_scan(cases, jobs=1)

    def test_random_cases_seeded(self):
        assert [c[1] for c in random_cases(5, 3)] == [c[1] for c in random_cases(5, 3)]


class TestPrimaryDecomposition:
    def test_singular_locus_pencil(self, pencil):
        pts = singular_locus(pencil)
        assert len(pts) == 4
        triple = [P for P in pts if P.multiplicity == 3]
        assert len(triple) == 1 and triple[0].point == (0, 0, 1)

    @given(rank3(min_n=3, max_n=7))
    def test_singular_locus_oracle(self, A):
        found = {P.point: P.lines for P in singular_locus(A)}
        assert found == intersection_points(A.rows())

    @pytest.mark.parametrize("forms", [
        ["x1", "x2", "x1+x2", "x3"],
        ["x1", "x2", "x3", "x1+x2+x3"],
        ONE_TRIPLE5,
        ["x1", "x2", "x1+x2", "x1-x2", "x3"],
        ["x1", "x2", "x3", "x1+x2", "x1+x3"],
    ])
    def test_examples(self, forms):
        rep = primary_decomposition_check(arr(forms))
        assert rep["pass"], rep["checks"]

    def test_one_triple_point_saturation(self):
        rep = primary_decomposition_check(arr(ONE_TRIPLE5))
        assert [p["n_j"] for p in rep["points"]].count(3) == 1
        assert sorted(rep["saturation"]) == ["x1", "x2"]

    def test_generic_saturates_to_unit(self, generic4):
        assert primary_decomposition_check(generic4)["saturation"] == ["1"]

    def test_counts(self, pencil):
        pts = singular_locus(pencil)
        assert sum(comb(P.multiplicity, 2) for P in pts) == comb(pencil.n, 2)
