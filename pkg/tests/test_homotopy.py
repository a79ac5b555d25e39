import random

import pytest

from resonance import homotopy as ht
from resonance.errors import InvariantViolation
from resonance.homotopy import POINT, smash, susp, term, undetermined, wedge
from resonance.oracle import naive_division_edges, naive_paths
from resonance.sequential import is_division_chain

FLAGSHIP = [8, 4] + [2] * 3 + [1] * 6


def W(*terms):
    return ht.HomotopyClass("wedge", tuple(terms))


def test_algebra_examples():
    assert smash(POINT, term(3, 1)) == POINT
    assert susp(term(2, 0), 1) == term(2, 1)
    assert smash(W((1, 0), (2, 1)), term(1, 1)) == W((2, 1), (3, 2))
    assert wedge(POINT, term(1, 0)) == term(1, 0)
    assert wedge(POINT, POINT) == POINT
    u = undetermined("open")
    assert wedge(u, term(1, 0)).is_undetermined
    assert wedge(POINT, u).is_undetermined
    assert smash(u, term(1, 0)).is_undetermined
    assert susp(u).is_undetermined


def _random_class(rng):
    r = rng.random()
    if r < 0.15:
        return POINT
    return W(*[(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(1, 3))])


def test_algebra_laws():
    rng = random.Random(21)
    for _ in range(500):
        a, b, c = (_random_class(rng) for _ in range(3))
        assert wedge(a, b) == wedge(b, a)
        assert smash(a, b) == smash(b, a)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
        assert smash(smash(a, b), c) == smash(a, smash(b, c))
        assert smash(a, wedge(b, c)) == wedge(smash(a, b), smash(a, c))
        assert smash(a, ht.UNIT) == a
        assert susp(smash(a, b)) == smash(susp(a), b)


def test_power_one_examples():
    assert ht.type_power_one(2, 1, 2) == term(2, 1)
    assert ht.render(ht.type_power_one(2, 1, 2)) == "S^3"
    assert ht.type_power_one(3, 2, 5).is_point
    assert ht.type_power_one(3, 1, 5).is_point


def test_two_primes_examples():
    assert ht.type_two_primes(0, 2, 3, 3, 2) == term(2, 1)
    assert ht.type_two_primes(2, 2, 3, 3, 2).is_point
    assert ht.type_two_primes(0, 2, 2, 3, 2).is_point


def test_sequential_examples():
    assert ht.type_sequential([1, 2, 4, 8, 8]).is_point
    assert ht.type_sequential([1, 1, 2]) == term(2, 1) == ht.type_power_one(2, 1, 2)
    assert ht.type_sequential([2, 3, 5]).is_undetermined


def test_akblm_examples():
    assert ht.type_akblm(3, 1, 2, 1, 2) == W((3, 1), (3, 1))
    assert ht.type_akblm(3, 2, 2, 1, 2).is_point
    assert ht.type_akblm(5, 1, 2, 2, 1) == ht.type_sequential([5, 2, 2, 1])


def test_division_graph_flagship():
    G = ht.division_graph(FLAGSHIP)
    assert G.edges == ((0, 1, 0), (0, 2, 3), (0, 3, 3), (0, 4, 2), (2, 3, 1), (2, 4, 1), (3, 4, 0))
    assert not G.out_edges(1)
    paths = ht.complete_paths(G)
    assert sorted((p.length, p.weight) for p in paths) == [(1, 2), (2, 3), (2, 4), (3, 4)]
    dot = G.to_dot()
    assert dot.count("->") == 7 and 'label="w=3"' in dot


def test_division_graph_edge_rule():
    for a in range(2, 7):
        for l in range(1, 20):
            G = ht.division_graph([a] + [1] * l)
            edges = {(x, y): w for x, y, w in G.edges}
            if l % a == 0:
                assert edges[(0, 2)] == l // a
            if (l - 1) % a == 0:
                assert edges[(1, 2)] == (l - 1) // a
            for x, y, w in G.edges:
                if y - x >= 2:
                    assert (x, y - 1) in edges


def test_graph_matches_oracle():
    rng = random.Random(13)
    for _ in range(300):
        bases = [1]
        for _ in range(rng.randint(0, 4)):
            bases.append(bases[-1] * rng.randint(2, 4))
        lam = [b for b in bases for _ in range(rng.randint(1, 3))]
        G = ht.division_graph(lam)
        chain = is_division_chain(lam)
        assert list(G.edges) == naive_division_edges(chain.bases, chain.mults)
        assert sorted((p.vertices, p.length, p.weight) for p in ht.complete_paths(G)) == naive_paths(G)


def test_single_part_graph_and_empty_graph():
    G = ht.division_graph([5])
    [p] = ht.complete_paths(G)
    assert (p.length, p.weight) == (1, 0)
    assert ht.type_division_chain([5]) == term(1, 0)
    assert ht.type_division_chain([3, 1, 1, 1, 1, 1]).is_point


def test_division_chain_examples():
    assert ht.render(ht.type_division_chain(FLAGSHIP)) == "S^5 v S^8 v S^10 v S^11"
    for a in range(2, 6):
        for m in range(1, 5):
            assert ht.type_division_chain([a] + [1] * (a * m)) == term(m + 1, m)
    assert ht.type_division_chain([2] + [1] * 5) == term(4, 2) == ht.type_power_one(2, 1, 5)
    assert ht.type_division_chain([2, 2, 1]).is_point
    with pytest.raises(ValueError):
        ht.division_graph([2, 3])


def test_top_multiplicity_two_is_point_by_both_routes():
    rng = random.Random(17)
    for _ in range(100):
        bases = [1]
        for _ in range(rng.randint(1, 3)):
            bases.append(bases[-1] * rng.randint(2, 3))
        lam = [b for b in bases[:-1] for _ in range(rng.randint(1, 3))] + [bases[-1]] * 2
        assert ht.type_division_chain(lam).is_point
        assert ht.type_sequential(lam).is_point


def test_dispatcher_examples():
    ans = ht.homotopy_type(FLAGSHIP)
    assert ht.render(ans.result) == "S^5 v S^8 v S^10 v S^11"
    assert any("division chain" in t for t in ans.trace)
    ans = ht.homotopy_type([3, 2, 1, 1])
    assert ans.result == W((3, 1), (3, 1)) and ht.render(ans.result) == "S^4 v S^4"
    assert any("a > b*l" in t for t in ans.trace)
    ans = ht.homotopy_type([1, 5, 6, 10])
    assert ans.status == "undetermined" and "not sequential" in ans.result.reason
    assert ht.homotopy_type([1, 2, 4]).result == term(3, 0)
    assert ht.homotopy_type([1, 2, 4, 8, 8]).result.is_point


def test_verify_mode_agrees_on_many_partitions():
    rng = random.Random(23)
    for _ in range(200):
        lam = [rng.randint(1, 9) for _ in range(rng.randint(1, 7))]
        ht.homotopy_type(lam, verify=True)


def test_verify_mode_raises_on_disagreement(monkeypatch):
    real = ht._routes

    def broken(parts):
        routes = real(parts)
        return routes + [("broken rule", lambda: term(99, 0))]

    monkeypatch.setattr(ht, "_routes", broken)
    with pytest.raises(InvariantViolation):
        ht.homotopy_type([2, 1, 1], verify=True)


def test_betti_examples():
    assert ht.betti(W((3, 2), (5, 3), (6, 4), (7, 4))) == {5: 1, 8: 1, 10: 1, 11: 1}
    assert ht.betti(POINT) == {}
    assert ht.betti(W((3, 1), (3, 1))) == {4: 2}
    with pytest.raises(ValueError):
        ht.betti(undetermined("open"))


def test_symbolic_rendering():
    assert ht.render(ht.type_division_chain(FLAGSHIP), "symbolic") == \
        "F(1)^3 ∧ S^2 v F(1)^5 ∧ S^3 v F(1)^6 ∧ S^4 v F(1)^7 ∧ S^4"


def test_json_round_trip():
    for lam in (FLAGSHIP, [3, 2, 1, 1], [1, 5, 6, 10], [1, 2, 4, 8, 8], [2, 3, 5]):
        ans = ht.homotopy_type(lam)
        data = ht.to_json(ans)
        assert data["schema_version"] == 1
        again = ht.from_json(data)
        assert again.result == ans.result and ht.to_json(again) == data
