import random

from hypothesis import given, settings
from hypothesis import strategies as st

from resonance import homotopy as ht
from resonance.cuts import act, canonical_form, cut_from_weights, from_symbolic, negate, to_symbolic
from resonance.partitions import OrderedSetPartition, SetPartition, compose, restrict
from resonance.relative import closure_partition, closure_set
from resonance.sequential import classify

weights = st.lists(st.integers(1, 6), min_size=1, max_size=5)


def ordered_partition(n, k, rng):
    """Random ordered partition of range(n) into k nonempty blocks."""
    labels = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(labels)
    return OrderedSetPartition(n, tuple(tuple(i for i in range(n) if labels[i] == b) for b in range(k)))


@st.composite
def chain(draw):
    # block counts line up so every composition is defined
    n = draw(st.integers(1, 5))
    m = draw(st.integers(1, n))
    k = draw(st.integers(1, m))
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    return ordered_partition(k, draw(st.integers(1, k)), rng), ordered_partition(m, k, rng), ordered_partition(n, m, rng)


@st.composite
def set_partitions(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return SetPartition.from_labels(labels)


@given(weights)
def test_cut_closed_under_negation(lam):
    S = cut_from_weights(lam)
    assert all(negate(x) in S for x in S.elements)
    assert tuple([0] * len(lam)) in S


@given(chain(), weights)
@settings(max_examples=60)
def test_act_laws(parts, lam):
    pi, nu, rho = parts
    S = cut_from_weights((lam * 5)[:rho.n])
    assert act(OrderedSetPartition.identity(rho.n), S) == S
    assert act(compose(nu, rho), S) == act(nu, act(rho, S))
    assert act(compose(pi, compose(nu, rho)), S) == act(compose(compose(pi, nu), rho), S)


@given(chain())
def test_compose_associative(parts):
    pi, nu, rho = parts
    assert compose(pi, compose(nu, rho)) == compose(compose(pi, nu), rho)
    assert compose(OrderedSetPartition.identity(len(rho)), rho) == rho


@given(weights, st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_canonical_form_is_orbit_invariant(lam, rng):
    S = cut_from_weights(lam)
    sigma = list(range(len(lam)))
    rng.shuffle(sigma)
    T = S.permute(sigma)
    assert canonical_form(T) == canonical_form(S)
    assert canonical_form(S).to_cut().n == S.n


@given(weights)
@settings(max_examples=60)
def test_symbolic_round_trip(lam):
    S = cut_from_weights(lam)
    assert from_symbolic(to_symbolic(S)) == S
    assert from_symbolic(str(to_symbolic(S))) == S


@given(set_partitions(), st.data())
def test_restrict_transitive(pi, data):
    outer = sorted(data.draw(st.sets(st.integers(0, pi.n - 1), min_size=1)))
    inner = sorted(data.draw(st.sets(st.sampled_from(outer), min_size=1)))
    relabelled = [outer.index(i) for i in inner]
    assert restrict(restrict(pi, outer), relabelled) == restrict(pi, inner)
    assert restrict(pi, range(pi.n)) == pi


@given(st.lists(st.integers(1, 4), min_size=2, max_size=5), st.data())
@settings(max_examples=60, deadline=None)
def test_closure_extensive_and_idempotent(lam, data):
    S = cut_from_weights(lam)
    labels = data.draw(st.lists(st.integers(0, len(lam) - 1), min_size=len(lam), max_size=len(lam)))
    pi = SetPartition.from_labels(labels)
    cl = closure_partition(pi, S)
    assert pi in cl
    assert closure_set(cl, S) == cl


@given(st.lists(st.integers(1, 20), min_size=1, max_size=7))
def test_sequential_implications(lam):
    r = classify(lam)
    assert not r.division_chain or r.strongly_sequential
    assert not r.strongly_sequential or r.sequential


def classes():
    terms = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=3)
    return st.one_of(st.just(ht.POINT), terms.map(lambda t: ht.HomotopyClass("wedge", tuple(t))))


@given(classes(), classes(), classes())
def test_wedge_and_smash_laws(a, b, c):
    assert ht.wedge(a, b) == ht.wedge(b, a)
    assert ht.wedge(ht.wedge(a, b), c) == ht.wedge(a, ht.wedge(b, c))
    assert ht.wedge(a, ht.POINT) == a
    assert ht.smash(a, ht.POINT) == ht.POINT
    assert ht.smash(a, ht.wedge(b, c)) == ht.wedge(ht.smash(a, b), ht.smash(a, c))
    u = ht.undetermined("open")
    assert ht.wedge(a, u).is_undetermined
    assert ht.smash(ht.POINT, u) == ht.POINT
