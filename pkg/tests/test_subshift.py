import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervalzeta.subshift import (
    AdjMatrix,
    fib_adjacency,
    fib_language,
    fib_numbers,
    sft_periodic_counts,
    vee_map,
)


class TestFibLanguage:
    def test_length_one(self):
        assert fib_language(1) == ["1", "2"]

    def test_length_two(self):
        assert fib_language(2) == ["12", "21", "22"]

    def test_length_three_count(self):
        assert len(fib_language(3)) == 5

    def test_empty_word(self):
        assert fib_language(0) == [""]

    def test_counts_follow_fibonacci(self):
        ell = fib_numbers(22)
        for n in range(0, 21):
            assert len(fib_language(n)) == ell[n + 2]


class TestFibNumbers:
    def test_seed(self):
        assert fib_numbers(1) == [0, 1]

    def test_small_values(self):
        assert fib_numbers(5) == [0, 1, 1, 2, 3, 5]

    def test_l2(self):
        assert fib_numbers(2)[2] == 1


class TestAdjacency:
    def test_fib_matrix(self):
        assert fib_adjacency().rows == ((0, 1), (1, 1))

    def test_trace_of_first_power(self):
        assert fib_adjacency().trace() == 1

    def test_trace_of_identity(self):
        assert fib_adjacency().identity().trace() == 2

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            AdjMatrix([[0, 1]])

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            AdjMatrix([[0, -1], [1, 1]])

    def test_json_round_trip(self):
        a = fib_adjacency()
        assert AdjMatrix.from_json(a.to_json()) == a


class TestPeriodicCounts:
    def test_fibonacci_traces(self):
        assert sft_periodic_counts(fib_adjacency(), 4) == [1, 3, 4, 7]

    def test_traces_equal_lucas_form(self):
        ell = fib_numbers(22)
        counts = sft_periodic_counts(fib_adjacency(), 20)
        for n in range(1, 21):
            assert counts[n - 1] == ell[n - 1] + ell[n + 1]

    def test_identity_counts(self):
        ident = AdjMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert sft_periodic_counts(ident, 5) == [3] * 5

    def test_full_shift(self):
        assert sft_periodic_counts(AdjMatrix([[2]]), 5) == [2, 4, 8, 16, 32]


class TestVeeMap:
    @pytest.mark.parametrize(
        "word,expected",
        [("2", "2"), ("1", "1"), ("12", "1"), ("2122", "212"), ("21", "21"), ("121", "11")],
    )
    def test_examples(self, word, expected):
        assert vee_map(word) == expected

    def test_rejects_forbidden_word(self):
        with pytest.raises(ValueError):
            vee_map("211")

    def test_rejects_foreign_alphabet(self):
        with pytest.raises(ValueError):
            vee_map("102")

    @given(st.integers(1, 10), st.data())
    @settings(max_examples=80)
    def test_branch_cost_accounting(self, n, data):
        # a 1 in the image pins two steps, a 2 one step; a trailing kept 1
        # covers only the final step of the input word
        words = fib_language(n)
        w = data.draw(st.sampled_from(words))
        v = vee_map(w)
        cost = 2 * v.count("1") + v.count("2")
        assert cost == len(w) + (1 if w.endswith("1") else 0)
