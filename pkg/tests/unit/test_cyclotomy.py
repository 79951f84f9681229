import pytest

from src.services.cyclotomy_service import (
    build_cosets,
    coset_stats,
    count_chains,
    count_odd_eps,
    coulter_mathews_cosets_check,
    epsilon,
    epsilon_table,
    geometric_cosets_check,
    leaders_of,
    n_choose_chain,
    n_p,
    n_t_closed_form,
    nu_parity_holds,
    shifted_window_check,
    small_cosets_check,
    welch_cosets_check,
)
from src.utils.errors import InvalidArgs, NotCoprime


class TestCosets:
    def test_binary_cosets_mod_7(self):
        table = build_cosets(2, 7)
        assert table.leaders == (0, 1, 3)
        assert table.sizes == {0: 1, 1: 3, 3: 3}
        assert table.coset(3) == (3, 6, 5)
        assert table.leader(5) == 3

    def test_ternary_cosets_mod_8(self):
        table = build_cosets(3, 8)
        assert table.leaders == (0, 1, 2, 4, 5)
        assert table.size(7) == 2
        assert table.same_coset(2, 6)

    def test_cosets_partition_the_residues(self):
        table = build_cosets(5, 24)
        elements = sorted(e for j in table for e in table.coset(j))
        assert elements == list(range(24))

    def test_q_must_be_coprime_to_n(self):
        with pytest.raises(NotCoprime):
            build_cosets(2, 6)

    def test_records(self):
        records = build_cosets(2, 7).records()
        assert records[1] == {"leader": 1, "size": 3, "elements": [1, 2, 4]}

    def test_leaders_of(self):
        assert leaders_of(build_cosets(2, 31), [3, 6, 12, 5]) == [3, 5]


class TestRhoNu:
    def test_stats_for_m3(self):
        stats = coset_stats(build_cosets(2, 7), 3)
        assert stats.rho == {0: 1, 1: 2, 3: 1}
        assert stats.nu == {0: 1, 1: 0, 3: 1}

    @pytest.mark.parametrize("m", [3, 5, 7, 9])
    def test_nu_parity(self, m):
        table = build_cosets(2, 2 ** m - 1)
        assert nu_parity_holds(table, coset_stats(table, m))

    def test_binary_only(self):
        with pytest.raises(InvalidArgs):
            coset_stats(build_cosets(3, 8), 2)


class TestEpsilon:
    def test_small_values(self):
        assert [epsilon(a, 3) for a in (1, 3, 5, 7)] == [3, 2, 1, 1]

    def test_b_sets_for_t3(self):
        table = epsilon_table(3)
        assert table.b_sets == {1: (1, 2, 4), 3: (3, 6), 5: (5,), 7: (7,)}
        assert table.odd_leaders() == [1, 5, 7]

    @pytest.mark.parametrize("t, expected", [(1, 1), (2, 1), (3, 3), (4, 5), (5, 11)])
    def test_n_t(self, t, expected):
        assert count_odd_eps(t) == expected
        assert n_t_closed_form(t) == expected

    def test_t_must_be_positive(self):
        with pytest.raises(InvalidArgs):
            epsilon_table(0)


class TestChains:
    def test_recursion_matches_binomial(self):
        assert n_choose_chain(5, 3) == 6
        assert n_choose_chain(7, 1) == 1

    @pytest.mark.parametrize("J", range(1, 9))
    def test_recursion_matches_enumeration(self, J):
        for t in range(1, J + 1):
            assert n_choose_chain(J, t) == count_chains(J, t)

    def test_invalid_arguments(self):
        with pytest.raises(InvalidArgs):
            n_choose_chain(2, 3)

    def test_n_p_gate(self):
        assert n_p(6, 3) == 0
        assert n_p(5, 3) == 1
        assert n_p(4, 2) == 0


class TestLemmaChecks:
    def test_welch_five_cosets(self):
        assert welch_cosets_check(build_cosets(2, 127), 7).holds
        assert welch_cosets_check(build_cosets(2, 511), 9).holds

    def test_small_cosets(self):
        assert small_cosets_check(build_cosets(2, 127), 7, 3).holds
        # j = 7 falls in C_0 when m = 3
        assert not small_cosets_check(build_cosets(2, 7), 3, 3).holds

    def test_kasami_window(self):
        m, h = 11, 2
        assert shifted_window_check(build_cosets(2, 2 ** m - 1), m, h, 2 ** (m - h)).holds

    def test_niho_window(self):
        m = 9
        h = (m - 1) // 4
        assert shifted_window_check(build_cosets(2, 2 ** m - 1), m, h, 2 ** (2 * h)).holds

    def test_geometric_exponents(self):
        assert geometric_cosets_check(build_cosets(3, 3 ** 6 - 1), 3, 6, 3).holds
        assert geometric_cosets_check(build_cosets(5, 5 ** 6 - 1), 5, 6, 3).holds

    def test_coulter_mathews_exponents(self):
        assert coulter_mathews_cosets_check(build_cosets(3, 3 ** 7 - 1), 7, 3).holds
