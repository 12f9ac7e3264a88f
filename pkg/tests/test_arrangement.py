from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from foldideals.arrangement import (
    Arrangement,
    ArrangementFileError,
    NotEssentialError,
    NotReducedError,
    circuits3,
    essentialize,
    is_generic3,
    load_arrangement,
    min_distance,
    p_of_arrangement,
    parse_arrangement,
    random_arrangement,
    rank,
    rank2_flats,
    reduced_support,
)
from foldideals.exactalg import LinearForm, Ring, matrix_rank

from oracles import flats_bruteforce, min_distance_bruteforce


@st.composite
def arrangements(draw, k=3, min_n=3, max_n=6):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 10_000))
    return random_arrangement(n, k, seed, lo=-2, hi=2)


class TestConstruction:
    def test_ring_inference(self):
        A = Arrangement.from_strings(["x1", "x2", "1 1 0", "x3"])
        assert A.k == 3 and A.n == 4
        assert A.forms[2] == LinearForm((1, 1, 0))

    def test_explicit_ring(self):
        R = Ring(("x", "y"))
        A = Arrangement.from_strings(["x", "y", "x-y"], R)
        assert A.polynomial(2) == R.parse("x-y")

    def test_zero_form_rejected(self):
        with pytest.raises(ValueError):
            Arrangement(Ring.standard(2), ((0, 0),))

    def test_reduced_support(self):
        S = Arrangement.from_strings(["x1", "2*x1", "x2", "x1"], 2)
        supp, mult = reduced_support(S)
        assert supp.n == 2 and mult == (3, 1)
        assert not S.is_reduced() and supp.is_reduced()

    def test_not_reduced_errors(self):
        S = Arrangement.from_strings(["x1", "x1", "x2"], 2)
        with pytest.raises(NotReducedError):
            rank2_flats(S)


class TestCombinatorics:
    def test_pencil(self, pencil):
        flats = [f.members for f in rank2_flats(pencil)]
        assert flats == [(0, 1, 2), (0, 3), (1, 3), (2, 3)]
        (c,) = circuits3(pencil)
        assert c.indices == (0, 1, 2) and c.coeffs == (1, 1, -1)
        assert p_of_arrangement(pencil) == 1
        assert not is_generic3(pencil)
        assert min_distance(pencil) == 1

    def test_generic(self, generic4):
        assert is_generic3(generic4)
        assert p_of_arrangement(generic4) == 0
        assert min_distance(generic4) == 2

    def test_rank_two_four_forms(self):
        A = Arrangement.from_strings(["x1", "x2", "x1+x2", "x1-x2"])
        assert len(circuits3(A)) == 4
        assert p_of_arrangement(A) == 3
        assert rank2_flats(A)[0].members == (0, 1, 2, 3)

    def test_doubled_form_distance(self):
        assert min_distance(Arrangement.from_strings(["x1", "x1", "x2"], 2)) == 1

    def test_not_essential(self):
        A = Arrangement.from_strings(["x1", "x2", "x1+x2"], 3)
        with pytest.raises(NotEssentialError):
            min_distance(A)

    @given(arrangements())
    def test_flats_partition_pairs(self, A):
        flats = rank2_flats(A)
        assert sum(comb(len(f), 2) for f in flats) == comb(A.n, 2)
        assert [f.members for f in flats] == flats_bruteforce(A.rows())

    @given(arrangements())
    def test_circuits_are_dependencies_in_big_flats(self, A):
        big = {f.members for f in rank2_flats(A) if len(f) >= 3}
        for c in circuits3(A):
            assert c.coeffs[0] == 1 and all(c.coeffs)
            combo = [sum(cf * A.forms[i].coeffs[j] for cf, i in zip(c.coeffs, c.indices)) for j in range(A.k)]
            assert not any(combo)
            assert any(set(c.indices) <= set(f) for f in big)
        assert len(circuits3(A)) == sum(comb(len(f), 3) for f in big)

    @given(arrangements(k=3, max_n=7))
    def test_min_distance_bruteforce_and_singleton(self, A):
        d = min_distance(A)
        assert d == min_distance_bruteforce(A.rows(), A.k)
        assert 1 <= d <= A.n - A.k + 1

    @given(arrangements(k=4, min_n=4, max_n=7))
    def test_min_distance_rank4(self, A):
        assert min_distance(A) == min_distance_bruteforce(A.rows(), 4)

    @given(arrangements(k=3, min_n=3, max_n=7))
    def test_flat_size_bound(self, A):
        # sum |X| - #flats >= n for essential rank-3 arrangements
        flats = rank2_flats(A)
        assert sum(len(f) for f in flats) - len(flats) >= A.n


class TestEssentialize:
    def test_drops_to_span(self):
        A = Arrangement.from_strings(["x1", "x2", "x1+x2"], 3)
        E, basis = essentialize(A)
        assert E.k == 2 and rank(E) == 2
        assert E.ring.names == ("z1", "z2")
        assert matrix_rank(basis) == 2

    @given(arrangements())
    def test_essential_is_fixed(self, A):
        E, _ = essentialize(A)
        assert E.k == A.k
        assert [f.members for f in rank2_flats(E)] == [f.members for f in rank2_flats(A)]


class TestFileFormat:
    def test_round_trip(self, pencil):
        assert parse_arrangement(pencil.to_text()) == pencil

    def test_comments_and_vectors(self):
        A = parse_arrangement("# pencil\nvars: x y z\nform: 1 1 0  # x+y\nform: z\n")
        assert A.ring.names == ("x", "y", "z")
        assert A.forms == (LinearForm((1, 1, 0)), LinearForm((0, 0, 1)))

    def test_inferred_ring(self):
        A = parse_arrangement("form: x1 - 1/2*x2\nform: x2\n")
        assert A.k == 2 and A.forms[0].coeffs == (1, Fraction(-1, 2))

    @pytest.mark.parametrize(
        "text, line, column, message",
        [
            ("vars: x y\nform: x +\n", 2, 9, "dangling operator"),
            ("vars: x y\nform: x + w\n", 2, 11, "unknown variable"),
            ("vars: x y\nwhat: x\n", 2, 1, "expected"),
            ("vars: x y\n", 1, None, "no 'form:' lines"),
            ("form: x1\nvars: x1\n", 2, 1, "must precede"),
        ],
    )
    def test_errors_report_position(self, text, line, column, message):
        with pytest.raises(ArrangementFileError, match=message) as info:
            parse_arrangement(text)
        assert info.value.line == line
        assert info.value.column == column
        assert str(info.value).startswith(f"line {line}")

    def test_load(self, tmp_path, pencil):
        p = tmp_path / "a.arr"
        p.write_text(pencil.to_text())
        assert load_arrangement(p) == pencil


class TestRandom:
    def test_deterministic(self):
        assert random_arrangement(6, 3, seed=7) == random_arrangement(6, 3, seed=7)
        assert random_arrangement(6, 3, seed=7) != random_arrangement(6, 3, seed=8)

    def test_properties(self):
        for seed in range(20):
            A = random_arrangement(5, 3, seed)
            assert A.is_reduced() and rank(A) == 3
