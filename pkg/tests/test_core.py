import pytest

from kanon.core import (
    Alphabet,
    Database,
    InfeasibleError,
    anonymize_partition,
    disagreement_columns,
    group_cost,
    is_k_anonymous,
    normalize_partition,
    suppress,
)


def db(*rows):
    return Database.from_rows(rows)


def test_alphabet_rejects_star_and_repeats():
    with pytest.raises(ValueError):
        Alphabet(("0", "*"))
    with pytest.raises(ValueError):
        Alphabet(("0", "0"))
    assert "1" in Alphabet(("0", "1"))


def test_database_validation():
    with pytest.raises(ValueError, match="row 1"):
        Database.from_rows([["0", "1"], ["0"]])
    with pytest.raises(ValueError, match="not in alphabet"):
        Database(Alphabet(("0",)), (("1",),))
    d = db(("a", "b"), ("c", "d"))
    assert (d.n, d.m) == (2, 2)
    assert not d.has_stars


def test_disagreement_columns():
    d = db("abc", "abd")
    assert disagreement_columns(d, [0]) == set()
    assert disagreement_columns(d, [0, 1]) == {2}
    assert disagreement_columns(db("ab", "ab"), [0, 1]) == set()


def test_group_cost_examples():
    assert group_cost(db("000", "001"), [0, 1]) == 2
    assert group_cost(db("00", "01", "10"), [0, 1, 2]) == 6
    with pytest.raises(ValueError, match="empty"):
        group_cost(db("0"), [])
    with pytest.raises(ValueError, match="distinct"):
        group_cost(db("0", "1"), [0, 0])


def test_suppress_keeps_agreeing_cells():
    assert suppress(db("ab", "ac"), [0, 1]) == ("a", "*")


def test_anonymize_partition():
    assert anonymize_partition(db("01", "01", "01"), [[0, 1, 2]]).total_cost == 0
    sol = anonymize_partition(db("00", "11", "00", "11"), [[0, 2], [1, 3]])
    assert sol.total_cost == 0 and sol.min_group_size == 2
    sol = anonymize_partition(db("00", "01", "10"), [[2, 0, 1]])
    assert sol.total_cost == 6
    assert sol.released_rows() == (("*", "*"),) * 3


def test_partition_must_cover():
    with pytest.raises(ValueError, match="uncovered"):
        normalize_partition([[0]], 2)
    with pytest.raises(ValueError, match="repeated"):
        normalize_partition([[0, 1], [1]], 2)


def test_is_k_anonymous():
    assert is_k_anonymous(db("0", "1"), 1)
    assert is_k_anonymous(db("01", "01", "01"), 3)
    assert not is_k_anonymous(db("0", "1"), 2)
    with pytest.raises(ValueError):
        is_k_anonymous(db("0"), 0)


def test_infeasible_is_value_error():
    assert issubclass(InfeasibleError, ValueError)
