import itertools
import random

import pytest

from resonance.errors import ParseError, ResourceLimitError
from resonance.oracle import as_blocks, naive_product_set
from resonance.partitions import (
    MultisetFamily,
    NumberPartition,
    OrderedSetPartition,
    SetPartition,
    bell,
    compose,
    enumerate_ordered,
    enumerate_partitions,
    format_weights,
    fubini,
    parse_weights,
    product_set,
    restrict,
)

P = SetPartition.parse
O = OrderedSetPartition.parse


def test_number_partition_sorts_and_prints_descending():
    lam = NumberPartition.parse("8,4,2^3,1^6")
    assert lam.parts == (1,) * 6 + (2, 2, 2, 4, 8)
    assert str(lam) == "8,4,2^3,1^6"
    assert NumberPartition.of(3, 1, 2).parts == (1, 2, 3)


@pytest.mark.parametrize("bad", ["", "0", "1,,2", "a", "2^0", "-1"])
def test_weight_grammar_rejects(bad):
    with pytest.raises((ParseError, ValueError)):
        NumberPartition.parse(bad)


def test_weight_grammar_round_trip():
    assert parse_weights("3, 2^2 ,1") == [3, 2, 2, 1]
    assert format_weights([3, 2, 2, 1]) == "3,2^2,1"


def test_set_partition_grammar():
    p = P("{1,2}{3}")
    assert p.n == 3 and p.blocks == ((0, 1), (2,))
    assert str(p) == "{1,2}{3}"
    assert P("{3}{2,1}") == p
    with pytest.raises((ParseError, ValueError)):
        P("{1,2}{2,3}")
    with pytest.raises((ParseError, ValueError)):
        P("{1}{3}")


def test_ordered_grammar_and_unorder():
    o = O("({2,3},{1})")
    assert o.blocks == ((1, 2), (0,))
    assert str(o) == "({2,3},{1})"
    assert o.unorder() == P("{1}{2,3}")


def test_compose_examples():
    assert compose(O("({1,2})"), O("({1},{2,3})")) == O("({1,2,3})")
    assert compose(OrderedSetPartition.identity(2), O("({1,3},{2})")) == O("({1,3},{2})")
    assert compose(O("({2},{1})"), O("({1},{2,3})")) == O("({2,3},{1})")
    with pytest.raises(ValueError):
        compose(O("({1},{2},{3})"), O("({1},{2,3})"))


def test_compose_associative_exhaustive_small():
    for n in range(1, 4):
        for c in enumerate_ordered(n):
            for b in enumerate_ordered(len(c)):
                for a in enumerate_ordered(len(b)):
                    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_restrict_examples():
    assert restrict(P("{1,2}{3}"), [0, 2]) == P("{1}{2}")
    assert restrict(P("{1,2,3}"), [1, 2]) == P("{1,2}")
    assert restrict(P("{1,4}{2,3}"), [0, 1, 3]) == P("{1,3}{2}")
    with pytest.raises(ValueError):
        restrict(P("{1,2}"), [])
    with pytest.raises(ValueError):
        restrict(P("{1,2}"), [5])


def test_restrict_transitive():
    for pi in enumerate_partitions(5):
        for B in itertools.combinations(range(5), 3):
            for A_local in itertools.combinations(range(3), 2):
                A = [B[i] for i in A_local]
                assert restrict(restrict(pi, B), A_local) == restrict(pi, A)


def test_product_set_examples():
    got = product_set([P("{1,2}")], [P("{1}")])
    assert got == {P("{1,2}{3}"), P("{1,2,3}")}
    assert product_set(enumerate_partitions(2), enumerate_partitions(2)) == set(enumerate_partitions(4))
    assert product_set([], [P("{1}")]) == frozenset()
    with pytest.raises(ValueError):
        product_set([P("{1}")], [P("{1}")], [0], [0])


def _labelled(p, labels):
    return frozenset(frozenset(labels[i] for i in b) for b in p.blocks)


def test_product_set_matches_filter_exhaustively():
    rng = random.Random(3)
    for n in range(2, 6):
        for size in range(1, n):
            for A in itertools.combinations(range(n), size):
                B = [i for i in range(n) if i not in A]
                Pi = rng.sample(enumerate_partitions(len(A)), k=min(2, bell(len(A))))
                Lam = rng.sample(enumerate_partitions(len(B)), k=min(2, bell(len(B))))
                mine = {as_blocks(p) for p in product_set(Pi, Lam, A, B)}
                theirs = naive_product_set([_labelled(p, A) for p in Pi], [_labelled(q, B) for q in Lam], A, B)
                assert mine == set(theirs)


def test_enumeration_counts_and_bounds():
    assert [len(enumerate_partitions(n)) for n in (1, 3, 4)] == [1, 5, 15]
    assert [bell(n) for n in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]
    assert [fubini(n) for n in range(1, 6)] == [1, 3, 13, 75, 541]
    assert len(enumerate_ordered(4)) == 75
    assert len(set(enumerate_partitions(6))) == bell(6)
    with pytest.raises(ResourceLimitError):
        enumerate_partitions(13)
    with pytest.raises(ResourceLimitError):
        enumerate_ordered(10)


def test_multiset_family():
    fam = MultisetFamily(3, ((2, 0), (1,)))
    assert fam.blocks == ((0, 2), (1,)) and fam.is_partition()
    assert fam.to_partition() == P("{1,3}{2}")
    assert not MultisetFamily(3, ((0, 0), (1,))).is_partition()
    with pytest.raises(ValueError):
        MultisetFamily(2, ((),))
