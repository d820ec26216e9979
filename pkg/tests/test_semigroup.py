import numpy as np
import pytest

import oracles
from semiwilson.errors import FormatError, NotAssociative, OutOfRangeEntry, UnsupportedOrder
from semiwilson.semigroup import (
    Semigroup,
    adjoin_identity,
    canonical_form,
    compute_center,
    cyclic_group,
    direct_product,
    find_neutral,
    generate_semigroups,
    idempotents,
    left_zero,
    n3,
    parse_cayley,
    power_profile,
    relabel,
    render_cayley,
    symmetric_group3,
    validate_associativity,
)

ORDER3 = oracles.associative_tables(3)


def test_associativity_examples():
    assert validate_associativity([[0]]) is None
    assert validate_associativity([[0, 1], [1, 0]]) is None
    t = [[0, 1], [0, 0]]
    assert validate_associativity(t) == oracles.first_failure(t)


def test_associativity_matches_brute_force_on_all_order2_tables():
    for t in oracles.all_tables(2):
        assert validate_associativity(t) == oracles.first_failure(t)


def test_out_of_range_entry():
    with pytest.raises(OutOfRangeEntry):
        validate_associativity([[0, 2], [1, 0]])
    with pytest.raises(NotAssociative):
        Semigroup([[1, 0], [0, 0]])


def test_center_examples():
    assert compute_center(cyclic_group(3)) == [0, 1, 2]
    assert compute_center(left_zero(2)) == []
    assert compute_center(n3()) == [0, 1, 2]
    assert compute_center(symmetric_group3()) == [0]


def test_center_and_neutral_match_brute_force():
    for t in ORDER3:
        S = Semigroup(t)
        assert compute_center(S) == oracles.center(t)
        assert find_neutral(S) == oracles.neutral(t)
        assert idempotents(S) == [x for x in range(3) if t[x][x] == x]


def test_power_profiles():
    assert (power_profile(n3(), 0).index, power_profile(n3(), 0).period) == (1, 1)
    assert (power_profile(cyclic_group(4), 1).index, power_profile(cyclic_group(4), 1).period) == (1, 4)
    a = n3().element("a")
    assert (power_profile(n3(), a).index, power_profile(n3(), a).period) == (2, 1)
    for t in ORDER3:
        S = Semigroup(t)
        for x in range(3):
            p = power_profile(S, x)
            assert (p.index, p.period) == oracles.powers(t, x)


def test_neutral_examples():
    assert find_neutral(cyclic_group(3)) == 0
    assert find_neutral(left_zero(2)) is None
    assert n3().name(find_neutral(n3())) == "1"


def test_generation_counts_match_oracle():
    for order in (1, 2, 3):
        assert len(generate_semigroups(order)) == len(oracles.associative_tables(order))
        assert len(generate_semigroups(order, dedup=True)) == oracles.isomorphism_classes(order)
    assert [S.table.tolist() for S in generate_semigroups(3)] == ORDER3
    with pytest.raises(UnsupportedOrder):
        generate_semigroups(4)


def test_canonical_form_is_relabeling_invariant():
    S = symmetric_group3()
    perm = [3, 0, 5, 1, 4, 2]
    assert canonical_form(relabel(S.table, perm)) == canonical_form(S.table)
    T = Semigroup(relabel(S.table, perm))
    assert T.table[perm[1], perm[3]] == perm[S.mul(1, 3)]


def test_builders():
    P9 = direct_product(n3(), n3())
    assert P9.n == 9 and P9.is_commutative
    assert P9.name(P9.element("a1")) == "a1"
    S3 = symmetric_group3()
    assert not S3.is_commutative and find_neutral(S3) == 0
    M = adjoin_identity(left_zero(2))
    assert M.n == 3 and M.name(find_neutral(M)) == "e"
    assert compute_center(M) == [2]


def test_element_lookup_prefers_names():
    S = n3()
    assert S.element("1") == 2
    assert S.element(1) == 1
    assert cyclic_group(4).element("3") == 3
    with pytest.raises(ValueError):
        S.element("b")


def test_cayley_round_trip_is_byte_exact():
    for t in ORDER3:
        S = Semigroup(t)
        text = render_cayley(S)
        assert render_cayley(parse_cayley(text)) == text
    S = n3()
    text = render_cayley(S)
    assert text.endswith("names: 0,a,1\n")
    assert parse_cayley(text) == S and parse_cayley(text).names == S.names


def test_cayley_comments_and_blank_lines():
    S = parse_cayley("# Z2\n\n2\n  # indented comment\n0 1\n\n1 0\n")
    assert np.array_equal(S.table, cyclic_group(2).table) and S.names is None


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("2\n0 1\n1 x\n", 3, 3),
        ("2\n0 1\n1 5\n", 3, 3),
        ("2\n0 1\n", 2, 1),
        ("two\n", 1, 1),
        ("2\n0 1 1\n1 0\n", 2, 6),
        ("2\n1 0\n0 0\n", 2, 1),
    ],
)
def test_cayley_errors_name_line_and_column(text, line, col):
    with pytest.raises(FormatError) as info:
        parse_cayley(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


def test_table_is_read_only():
    S = cyclic_group(3)
    with pytest.raises(ValueError):
        S.table[0, 0] = 1
    assert np.array_equal(S.table, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
