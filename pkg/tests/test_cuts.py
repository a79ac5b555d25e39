import itertools
import random

import pytest

from resonance.cuts import (
    Cut,
    act,
    canonical_form,
    cut_from_weights,
    decode_vector,
    encode_vector,
    enumerate_resonances,
    from_symbolic,
    is_cut,
    parse_symbolic,
    resonance_equal,
    span_closure,
    to_symbolic,
)
from resonance.errors import InvalidCutError, ParseError, ResourceLimitError
from resonance.oracle import naive_is_cut, naive_orbit_equal, naive_span_closure
from resonance.partitions import OrderedSetPartition

O = OrderedSetPartition.parse


def pm(*vectors):
    out = {tuple(0 for _ in vectors[0])}
    for v in vectors:
        out |= {tuple(v), tuple(-x for x in v)}
    return frozenset(out)


def test_span_closure_examples():
    assert span_closure([(1, -1)], 2) == pm((1, -1))
    assert span_closure([], 3) == {(0, 0, 0)}
    assert span_closure([(1, -1, 0), (0, 1, -1)], 3) == pm((1, -1, 0), (0, 1, -1), (1, 0, -1))


def test_is_cut_reports_violations():
    assert is_cut([(0, 0), (1, -1), (-1, 1)], 2)
    bad = is_cut([(0, 0), (1, -1)], 2)
    assert not bad and bad.violation == (-1, 1)
    mixed = is_cut([(0, 0), (1, 0), (-1, 0)], 2)
    assert not mixed and mixed.violation in {(1, 0), (-1, 0)}
    assert not is_cut([(1, -1), (-1, 1)], 2)


def test_cut_from_weights_examples():
    assert cut_from_weights([1, 1]).elements == pm((1, -1))
    assert cut_from_weights([1, 2]).is_trivial()
    assert cut_from_weights([1, 1, 2]).elements == pm((1, -1, 0), (1, 1, -1))
    with pytest.raises(ResourceLimitError):
        cut_from_weights([1] * 15)


def test_act_examples():
    S = Cut(3, pm((1, -1, -1)))
    assert act(O("({1},{2,3})"), S).elements == pm((1, -1))
    T = Cut(3, pm((1, -1, -1), (0, 1, -1)))
    assert act(O("({1},{2,3})"), T).elements == pm((1, -1))
    for W in (S, T, cut_from_weights([1, 2, 3, 4])):
        assert act(OrderedSetPartition.identity(W.n), W) == W
    with pytest.raises(ValueError):
        act(O("({1},{2})"), S)


def test_symbolic_examples():
    assert from_symbolic("(a,a)").elements == pm((1, -1))
    assert from_symbolic("(2a,a,a)").elements == pm((1, -1, -1), (0, 1, -1))
    six = from_symbolic("a+b,b+c,a+d,b+d,c+d,2d")
    listed = Cut(6, pm((1, 1, 0, -1, -1, 0), (0, 1, 1, 0, -1, -1), (1, 0, -1, -1, 0, 1)))
    assert len(six) == 7 and resonance_equal(six, listed)


def test_symbolic_rendering():
    assert str(to_symbolic(cut_from_weights([1, 1, 2]))) == "(a,a,2a)"
    assert str(to_symbolic(Cut(3, pm((1, -1, -1))))) == "(a+b,a,b)"
    assert str(to_symbolic(Cut(2, pm((1, -1))))) == "(a,a)"


@pytest.mark.parametrize("text", ["", "()", "(a,)", "(1,a)", "(a b)", "(a,,b)", "3"])
def test_symbolic_parse_errors(text):
    with pytest.raises(ParseError):
        parse_symbolic(text)


def test_symbolic_rejects_non_mixed_complement():
    with pytest.raises(InvalidCutError):
        from_symbolic("(a,0)")
    with pytest.raises(InvalidCutError):
        from_symbolic("(a,a,0)")


def test_canonical_form_examples():
    assert resonance_equal(cut_from_weights([1, 1, 2]), cut_from_weights([2, 1, 1]))
    assert not resonance_equal(cut_from_weights([1, 1, 2]), cut_from_weights([1, 1, 1]))
    assert canonical_form(cut_from_weights([1, 2, 4])) == canonical_form(Cut.trivial(3))


def test_canonical_form_orbit_invariant():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 7)
        S = cut_from_weights([rng.randint(1, 5) for _ in range(n)])
        sigma = list(range(n))
        rng.shuffle(sigma)
        assert canonical_form(S.permute(sigma)) == canonical_form(S)
        assert canonical_form(canonical_form(S).to_cut()) == canonical_form(S)


def test_encoding_round_trip():
    for x in itertools.product((-1, 0, 1), repeat=4):
        assert decode_vector(encode_vector(x), 4) == x


def test_enumeration_counts():
    assert [len(enumerate_resonances(n)) for n in range(1, 5)] == [1, 2, 5, 27]
    with pytest.raises(ResourceLimitError):
        enumerate_resonances(6)


def _brute_force_resonances(n):
    # every cut is the span closure of at most n-1 independent sign vectors
    mixed = [x for x in itertools.product((-1, 0, 1), repeat=n) if 1 in x and -1 in x]
    halves = [x for x in mixed if x[next(i for i, v in enumerate(x) if v)] == 1]
    cuts = {frozenset({(0,) * n})}
    for r in range(1, n):
        for gens in itertools.combinations(halves, r):
            closed = naive_span_closure(gens, n)
            if naive_is_cut(closed, n):
                cuts.add(closed)
    reps = []
    for c in cuts:
        S = Cut(n, c)
        if not any(naive_orbit_equal(S, T) for T in reps):
            reps.append(S)
    return reps


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(n):
    brute = _brute_force_resonances(n)
    found = [r.to_cut() for r in enumerate_resonances(n)]
    assert len(brute) == len(found)
    for S in found:
        assert sum(naive_orbit_equal(S, T) for T in brute) == 1


def test_enumeration_length_five():
    reps = enumerate_resonances(5)
    assert len(reps) == 682
    assert all(is_cut(r.to_cut().elements, 5) for r in reps)
