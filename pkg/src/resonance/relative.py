"""Closures of partitions under a cut, relative cuts, and direct products.

The family closure is generated by two moves: merging two blocks, and
replacing Plus(x) by Minus(x) inside a block that contains Plus(x). Swaps
act inside one block and commute with merges, so every reachable family is
obtained by grouping the original blocks and then moving each merged block
inside its own swap class. Swaps are reversible (x and -x both lie in a
cut), so swap classes are equivalence classes and can be memoised. That
factorisation is what the engine computes; the naive fixpoint over whole
families lives in :mod:`resonance.oracle`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .cuts import Cut, cut_from_weights, is_mixed, minus, plus, span_closure
from .errors import IncompleteClosureError, InvalidCutError, NotClosedError, ResourceLimitError
from .partitions import (
    MultisetFamily,
    SetPartition,
    enumerate_partitions,
    iter_partitions,
    product_set,
)

DEFAULT_SIZE_CAP = 24
DEFAULT_STATE_CAP = 500_000
DEFAULT_EQUALITY_BOUND = 10

Counts = tuple[int, ...]


# -- swap classes ------------------------------------------------------------

class SwapSystem:
    """Swap moves of a cut acting on multisets of coordinates (as count vectors)."""

    def __init__(self, S: Cut, size_cap: int = DEFAULT_SIZE_CAP, state_cap: int = DEFAULT_STATE_CAP):
        self.cut = S
        self.n = S.n
        self.moves = [(tuple(sorted(plus(x))), tuple(sorted(minus(x))))
                      for x in S.sorted() if any(x)]
        self.weight = orthogonal_weight(S)
        self.size_cap = size_cap
        self.state_cap = state_cap
        self._class_of: dict[Counts, frozenset] = {}

    def bounded(self) -> bool:
        return self.weight is not None

    def swap_class(self, start: Counts) -> frozenset:
        hit = self._class_of.get(start)
        if hit is not None:
            return hit
        seen = {start}
        stack = [start]
        truncated = False
        while stack:
            cur = stack.pop()
            for p, m in self.moves:
                if any(cur[i] == 0 for i in p):
                    continue
                nxt = list(cur)
                for i in p:
                    nxt[i] -= 1
                for i in m:
                    nxt[i] += 1
                nxt = tuple(nxt)
                if nxt in seen:
                    continue
                if self.weight is None and sum(nxt) > self.size_cap:
                    truncated = True
                    continue
                seen.add(nxt)
                if len(seen) > self.state_cap:
                    raise IncompleteClosureError(
                        f"swap class exceeded {self.state_cap} states", frozenset(seen))
                stack.append(nxt)
        cls = frozenset(seen)
        if truncated:
            raise IncompleteClosureError(
                f"no positive weight is orthogonal to the cut and the block-size cap "
                f"{self.size_cap} was reached; the closure may be incomplete", cls)
        for member in cls:
            self._class_of[member] = cls
        return cls

    def set_members(self, block_mask: int) -> tuple[int, ...]:
        """Bitmasks of the genuine sets in the swap class of a set."""
        start = tuple((block_mask >> i) & 1 for i in range(self.n))
        return _set_masks(self.swap_class(start))


@lru_cache(maxsize=4096)
def _set_masks(cls: frozenset) -> tuple[int, ...]:
    out = []
    for c in cls:
        if all(v <= 1 for v in c):
            out.append(sum(1 << i for i, v in enumerate(c) if v))
    return tuple(sorted(out))


@lru_cache(maxsize=1024)
def orthogonal_weight(S: Cut):
    """A positive integer weight orthogonal to every element, or None."""
    return linalg.positive_orthogonal_weight(S.generators(), S.n)


@lru_cache(maxsize=256)
def swap_system(S: Cut) -> SwapSystem:
    return SwapSystem(S)


def _mask(block: Iterable[int]) -> int:
    return sum(1 << i for i in block)


def _blocks_of(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def _groupings(m: int):
    """Set partitions of range(m) as lists of index tuples."""
    for p in iter_partitions(m):
        yield p.blocks


# -- closures -----------------------------------------------------------------

def _check_sizes(pi_n: int, S: Cut) -> None:
    if pi_n != S.n:
        raise ValueError(f"partition of [{pi_n}] does not match a {S.n}-cut")


def closure_partition(pi: SetPartition, S: Cut) -> frozenset[SetPartition]:
    """All genuine partitions reachable from pi by merges and swaps."""
    _check_sizes(pi.n, S)
    return _closure_cached(pi, S)


@lru_cache(maxsize=4096)
def _closure_cached(pi: SetPartition, S: Cut) -> frozenset[SetPartition]:
    sys = swap_system(S)
    n = S.n
    full = (1 << n) - 1
    masks = [_mask(b) for b in pi.blocks]
    out: set[SetPartition] = set()
    for grouping in _groupings(len(masks)):
        options = []
        for g in grouping:
            u = 0
            for j in g:
                u |= masks[j]
            options.append(sys.set_members(u))
        options.sort(key=len)

        def cover(k: int, used: int, chosen: list[int]):
            if k == len(options):
                if used == full:
                    out.add(SetPartition(n, tuple(_blocks_of(c, n) for c in chosen)))
                return
            for c in options[k]:
                if c & used == 0:
                    chosen.append(c)
                    cover(k + 1, used | c, chosen)
                    chosen.pop()

        cover(0, 0, [])
    return frozenset(out)


def swap_reachable_partitions(pi: SetPartition, S: Cut) -> frozenset[SetPartition]:
    """Genuine partitions reachable from pi by swap moves alone (no merges)."""
    _check_sizes(pi.n, S)
    sys = swap_system(S)
    n = S.n
    full = (1 << n) - 1
    options = [sys.set_members(_mask(b)) for b in pi.blocks]
    out = set()
    for combo in itertools.product(*options):
        used = 0
        ok = True
        for c in combo:
            if c & used:
                ok = False
                break
            used |= c
        if ok and used == full:
            out.add(SetPartition(n, tuple(_blocks_of(c, n) for c in combo)))
    return frozenset(out)


def substratum_contained(nu: SetPartition, pi: SetPartition, S: Cut) -> bool:
    """Whether nu lies in the closure of pi, by matching nu's blocks to groups of pi's."""
    _check_sizes(pi.n, S)
    _check_sizes(nu.n, S)
    if len(nu.blocks) > len(pi.blocks):
        return False
    sys = swap_system(S)
    w = sys.weight
    pm = [_mask(b) for b in pi.blocks]
    nm = [_mask(b) for b in nu.blocks]

    def weigh(mask: int) -> int:
        if w is None:
            return 0
        return sum(w[i] for i in range(S.n) if mask >> i & 1)

    pw = [weigh(m) for m in pm]
    nw = [weigh(m) for m in nm]

    def rec(rest_pi: tuple[int, ...], rest_nu: tuple[int, ...]) -> bool:
        if not rest_pi:
            return not rest_nu
        if not rest_nu:
            return False
        first, others = rest_pi[0], rest_pi[1:]
        for r in range(len(others) + 1):
            for extra in itertools.combinations(others, r):
                group = (first,) + extra
                gw = sum(pw[j] for j in group)
                u = 0
                for j in group:
                    u |= pm[j]
                for t in rest_nu:
                    if w is not None and nw[t] != gw:
                        continue
                    if nm[t] in sys.set_members(u):
                        remaining = tuple(j for j in others if j not in extra)
                        if rec(remaining, tuple(s for s in rest_nu if s != t)):
                            return True
        return False

    return rec(tuple(range(len(pm))), tuple(range(len(nm))))


def closure_set(Pi: Iterable[SetPartition], S: Cut) -> frozenset[SetPartition]:
    out: set[SetPartition] = set()
    for pi in Pi:
        out |= closure_partition(pi, S)
    return frozenset(out)


def is_closed(Pi: Iterable[SetPartition], S: Cut) -> bool:
    Pi = frozenset(Pi)
    return all(closure_partition(pi, S) <= Pi for pi in Pi)


def closure_family(A: MultisetFamily, S: Cut, state_cap: int = DEFAULT_STATE_CAP) -> frozenset[MultisetFamily]:
    """Every family reachable from A (blocks kept as a multiset, never collapsed)."""
    _check_sizes(A.n, S)
    sys = swap_system(S)
    n = S.n
    base = [tuple(Counter(b).get(i, 0) for i in range(n)) for b in A.blocks]
    out: set[MultisetFamily] = set()
    for grouping in _groupings(len(base)):
        classes = []
        for g in grouping:
            u = tuple(sum(base[j][i] for j in g) for i in range(n))
            classes.append(sorted(sys.swap_class(u)))
        for combo in itertools.product(*classes):
            out.add(MultisetFamily(n, tuple(
                tuple(i for i in range(n) for _ in range(c[i])) for c in combo)))
            if len(out) > state_cap:
                raise IncompleteClosureError(f"family closure exceeded {state_cap} states", frozenset(out))
    return frozenset(out)


# -- relative cuts --------------------------------------------------------------

def associated_partition(s: Sequence[int]) -> SetPartition:
    """Blocks Minus(s) and Plus(s), everything else a singleton."""
    n = len(s)
    return SetPartition.with_block(n, sorted(minus(s)), sorted(plus(s)))


def subtract(S: Cut, Pi: Iterable[SetPartition], check: bool = True) -> frozenset:
    Pi = frozenset(Pi)
    if check and not is_closed(Pi, S):
        raise NotClosedError("the partitions to remove are not closed under the cut")
    origin = (0,) * S.n
    return frozenset(s for s in S.elements if s == origin or associated_partition(s) not in Pi)


@dataclass(frozen=True)
class RelativeCut:
    n: int
    surviving: frozenset
    at_infinity: frozenset

    def __post_init__(self):
        object.__setattr__(self, "surviving", frozenset(tuple(s) for s in self.surviving))
        object.__setattr__(self, "at_infinity", frozenset(self.at_infinity))
        for s in self.surviving:
            if len(s) != self.n:
                raise ValueError(f"surviving vector {s} has wrong length")
        for p in self.at_infinity:
            if p.n != self.n:
                raise ValueError(f"partition {p} is not a partition of [{self.n}]")

    @classmethod
    def plain(cls, S: Cut) -> "RelativeCut":
        """A cut with nothing at infinity."""
        return cls(S.n, S.elements, frozenset())

    def permute(self, sigma: Sequence[int]) -> "RelativeCut":
        return act_relative(sigma, self)


def relative_invariant_violations(rc: RelativeCut) -> list[str]:
    problems = []
    spanned = Cut(rc.n, span_closure(rc.surviving, rc.n))
    if not all(is_mixed(x) for x in spanned.elements if any(x)):
        problems.append("span of the surviving elements is not a cut")
        return problems
    kept = subtract(spanned, rc.at_infinity, check=False)
    if kept != rc.surviving:
        problems.append("surviving elements differ from span minus the partitions at infinity")
    if not is_closed(rc.at_infinity, spanned):
        problems.append("partitions at infinity are not closed under the spanned cut")
    return problems


def validate_relative(rc: RelativeCut) -> RelativeCut:
    problems = relative_invariant_violations(rc)
    if problems:
        raise InvalidCutError("; ".join(problems))
    return rc


def quotient(S: Cut, Pi: Iterable[SetPartition]) -> RelativeCut:
    Pi = frozenset(Pi)
    return RelativeCut(S.n, subtract(S, Pi), Pi)


def relative_from_gluing(S: Cut, pi: SetPartition) -> RelativeCut:
    Pi = closure_partition(pi, S)
    return RelativeCut(S.n, subtract(S, Pi, check=False), Pi)


def act_relative(sigma: Sequence[int], rc: RelativeCut) -> RelativeCut:
    """Relabel coordinate i as sigma[i] in both components."""
    sigma = list(sigma)
    if sorted(sigma) != list(range(rc.n)):
        raise ValueError(f"{sigma} is not a permutation of range({rc.n})")
    surv = frozenset(_permute(s, sigma) for s in rc.surviving)
    inf = frozenset(p.permute(sigma) for p in rc.at_infinity)
    return RelativeCut(rc.n, surv, inf)


def _permute(s, sigma):
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[sigma[i]] = v
    return tuple(out)


def _signatures(rc: RelativeCut) -> list[tuple]:
    sig = []
    for i in range(rc.n):
        p = sum(1 for s in rc.surviving if s[i] == 1)
        m = sum(1 for s in rc.surviving if s[i] == -1)
        sizes = Counter()
        for part in rc.at_infinity:
            for b in part.blocks:
                if i in b:
                    sizes[len(b)] += 1
                    break
        sig.append((p, m, tuple(sorted(sizes.items()))))
    return sig


def find_isomorphism(rc1: RelativeCut, rc2: RelativeCut, bound: int = DEFAULT_EQUALITY_BOUND):
    """A permutation carrying rc1 onto rc2, or None."""
    if rc1.n != rc2.n:
        return None
    n = rc1.n
    if len(rc1.surviving) != len(rc2.surviving) or len(rc1.at_infinity) != len(rc2.at_infinity):
        return None
    if rc1 == rc2:
        return list(range(n))
    if n > bound:
        raise ResourceLimitError(f"relative equality search is limited to n <= {bound}")
    sig1, sig2 = _signatures(rc1), _signatures(rc2)
    if sorted(sig1) != sorted(sig2):
        return None
    order = sorted(range(n), key=lambda i: sum(1 for j in range(n) if sig2[j] == sig1[i]))
    surv1 = list(rc1.surviving)
    surv2 = list(rc2.surviving)
    sigma = [None] * n
    used = [False] * n

    def projection(vectors, coords):
        return Counter(tuple(v[c] for c in coords) for v in vectors)

    def rec(k: int):
        if k == n:
            cand = act_relative(sigma, rc1)
            return cand == rc2
        i = order[k]
        for j in range(n):
            if used[j] or sig2[j] != sig1[i]:
                continue
            sigma[i] = j
            used[j] = True
            dom = order[:k + 1]
            if projection(surv1, dom) == projection(surv2, [sigma[d] for d in dom]) and rec(k + 1):
                return True
            used[j] = False
            sigma[i] = None
        return False

    return list(sigma) if rec(0) else None


def relative_equal(rc1: RelativeCut, rc2: RelativeCut, bound: int = DEFAULT_EQUALITY_BOUND) -> bool:
    return find_isomorphism(rc1, rc2, bound) is not None


# -- direct products -----------------------------------------------------------

def direct_product(rc1: RelativeCut, rc2: RelativeCut, bound: int = 12) -> RelativeCut:
    n, m = rc1.n, rc2.n
    if n + m > bound:
        raise ResourceLimitError(f"direct product on {n + m} coordinates exceeds bound {bound}")
    surv = frozenset(s + t for s in rc1.surviving for t in rc2.surviving)
    inf: set[SetPartition] = set()
    if rc1.at_infinity:
        inf |= product_set(rc1.at_infinity, enumerate_partitions(m))
    if rc2.at_infinity:
        inf |= product_set(enumerate_partitions(n), rc2.at_infinity)
    return RelativeCut(n + m, surv, frozenset(inf))


def arrange_product(factors: Sequence[RelativeCut], split: Sequence[Sequence[int]]) -> RelativeCut:
    """Product of the factors, with coordinate j of factor f placed at split[f][j]."""
    if len(factors) != len(split):
        raise ValueError("one index list per factor is required")
    for f, idx in zip(factors, split):
        if len(idx) != f.n:
            raise ValueError(f"factor of length {f.n} given {len(idx)} coordinates")
    flat = [i for idx in split for i in idx]
    if sorted(flat) != list(range(len(flat))):
        raise ValueError("coordinate split must partition range(n)")
    prod = factors[0]
    for f in factors[1:]:
        prod = direct_product(prod, f)
    return act_relative(flat, prod)


def verify_factorization(rc: RelativeCut, factors: Sequence[RelativeCut], split: Sequence[Sequence[int]]) -> bool:
    if sum(f.n for f in factors) != rc.n:
        raise ValueError("factor lengths do not add up to the relative cut's length")
    return relative_equal(rc, arrange_product(factors, split))


# -- instances of the factorisation lemmas -------------------------------------

@dataclass(frozen=True)
class FactorizationInstance:
    relative: RelativeCut
    factors: tuple[RelativeCut, ...]
    split: tuple[tuple[int, ...], ...]
    note: str = ""

    def holds(self) -> bool:
        return verify_factorization(self.relative, self.factors, self.split)


def power_one_instance(a: int, k: int, l: int) -> FactorizationInstance:
    """Gluing a ones in (1^l, a^k) splits off a free (1^k) factor."""
    if a < 2 or k < 1 or l < a:
        raise ValueError("need a >= 2, k >= 1 and l >= a")
    n = l + k
    S = cut_from_weights([1] * l + [a] * k)
    rc = relative_from_gluing(S, SetPartition.with_block(n, range(a)))
    T = cut_from_weights([1] * l)
    left = relative_from_gluing(T, SetPartition.with_block(l, range(a)))
    right = RelativeCut.plain(cut_from_weights([1] * k))
    return FactorizationInstance(rc, (left, right), (tuple(range(l)), tuple(range(l, n))),
                                 f"(1^{l},{a}^{k}) glued on the first {a} ones")


def two_primes_instance(a: int, b: int, k: int, l: int, m: int) -> FactorizationInstance:
    """Gluing abar copies of a in (a^k, b^l, g^m), g = lcm(a, b)."""
    from math import lcm

    if not b > a >= 2:
        raise ValueError("need b > a >= 2")
    g = lcm(a, b)
    abar, bbar = g // a, g // b
    if k < abar:
        raise ValueError(f"need k >= {abar}")
    n = k + l + m
    S = cut_from_weights([a] * k + [b] * l + [g] * m)
    rc = relative_from_gluing(S, SetPartition.with_block(n, range(abar)))
    T = cut_from_weights([1] * k)
    left = relative_from_gluing(T, SetPartition.with_block(k, range(abar)))
    right = RelativeCut.plain(cut_from_weights([1] * l + [bbar] * m))
    return FactorizationInstance(rc, (left, right), (tuple(range(k)), tuple(range(k, n))),
                                 f"({a}^{k},{b}^{l},{g}^{m}) glued on the first {abar} copies of {a}")


def sequential_instance(lam: Sequence[int]) -> FactorizationInstance:
    """Gluing the block I(lam) of a sequential partition splits off (1^mm)."""
    from .sequential import i_max, mm as top_multiplicity

    parts = sorted(lam)
    n = len(parts)
    k = top_multiplicity(parts)
    S = cut_from_weights(parts)
    T = cut_from_weights(parts[:n - k]) if n > k else None
    U = RelativeCut.plain(cut_from_weights([1] * k))
    split = (tuple(range(n - k)), tuple(range(n - k, n)))
    block = i_max(parts)
    if T is None:
        raise ValueError("all parts are equal; there is nothing to split")
    if block is None:
        return FactorizationInstance(RelativeCut.plain(S), (RelativeCut.plain(T), U), split,
                                     "no gluing block; top parts are independent")
    rc = relative_from_gluing(S, SetPartition.with_block(n, sorted(block)))
    left = relative_from_gluing(T, SetPartition.with_block(n - k, sorted(block)))
    return FactorizationInstance(rc, (left, U), split, f"glued on {sorted(i + 1 for i in block)}")
