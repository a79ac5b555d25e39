"""Slow reference implementations used to cross-check the engine.

Nothing here imports engine algorithms: only the value types
(Cut, SetPartition, RelativeCut, ResonanceGraph) are shared.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .cuts import Cut
from .errors import IncompleteClosureError
from .partitions import SetPartition
from .relative import RelativeCut


# -- exact rank, fraction-free -----------------------------------------------

def _int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss elimination on integer rows."""
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            m[i] = [(m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) // prev for j in range(ncols)]
        prev = m[rank][c]
        rank += 1
        if rank == len(m):
            break
    return rank


def naive_span_closure(vectors: Iterable[Sequence[int]], n: int) -> frozenset:
    base = [tuple(v) for v in vectors]
    r = _int_rank(base) if base else 0
    out = set()
    for x in itertools.product((-1, 0, 1), repeat=n):
        if _int_rank(base + [x]) == r:
            out.add(x)
    return frozenset(out)


def naive_cut_from_weights(weights: Sequence[int]) -> frozenset:
    return frozenset(x for x in itertools.product((-1, 0, 1), repeat=len(weights))
                     if sum(a * b for a, b in zip(x, weights)) == 0)


def naive_is_cut(vectors: Iterable[Sequence[int]], n: int) -> bool:
    V = frozenset(tuple(v) for v in vectors)
    if (0,) * n not in V:
        return False
    if any(any(x) and not (1 in x and -1 in x) for x in V):
        return False
    return naive_span_closure(V, n) == V


# -- orbits -------------------------------------------------------------------

def _perm_vec(x, sigma):
    out = [0] * len(x)
    for i, v in enumerate(x):
        out[sigma[i]] = v
    return tuple(out)


def naive_orbit_equal(S: Cut, T: Cut) -> bool:
    if S.n != T.n or len(S.elements) != len(T.elements):
        return False
    target = T.elements
    return any(frozenset(_perm_vec(x, sigma) for x in S.elements) == target
               for sigma in itertools.permutations(range(S.n)))


def naive_act(blocks: Sequence[Sequence[int]], S: Cut) -> frozenset:
    out = set()
    for t in itertools.product((-1, 0, 1), repeat=len(blocks)):
        for s in S.elements:
            if all(s[i] == t[j] for j, b in enumerate(blocks) for i in b):
                out.add(t)
                break
    return frozenset(out)


# -- partitions ------------------------------------------------------------------

def all_partitions(ground: Sequence[int]) -> list[frozenset]:
    """Partitions of an arbitrary finite ground set, as frozensets of frozensets."""
    ground = list(ground)
    if not ground:
        return [frozenset()]
    first, rest = ground[0], ground[1:]
    out = []
    for sub in all_partitions(rest):
        out.append(sub | {frozenset([first])})
        for b in sub:
            out.append((sub - {b}) | {b | {first}})
    return out


def as_blocks(p: SetPartition) -> frozenset:
    return frozenset(frozenset(b) for b in p.blocks)


def from_blocks(n: int, blocks) -> SetPartition:
    return SetPartition(n, tuple(tuple(sorted(b)) for b in blocks))


def trace(blocks: frozenset, subset) -> frozenset:
    sub = frozenset(subset)
    return frozenset(b & sub for b in blocks if b & sub)


def naive_product_set(Pi, Lambda, A: Sequence[int], B: Sequence[int]) -> frozenset:
    """Filter all partitions of A ∪ B; Pi and Lambda are given in the labels of A and B."""
    Pi = {frozenset(frozenset(b) for b in p) for p in Pi}
    Lambda = {frozenset(frozenset(b) for b in p) for p in Lambda}
    out = set()
    for p in all_partitions(sorted(set(A) | set(B))):
        if trace(p, A) in Pi and trace(p, B) in Lambda:
            out.add(p)
    return frozenset(out)


# -- closure: literal fixpoint over families --------------------------------------

def _state(blocks) -> tuple:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def naive_family_closure(blocks, S: Cut, semantics: str = "multiset", merge: str = "sum",
                         size_cap: int | None = None, state_cap: int = 2_000_000) -> frozenset:
    """All families reachable from ``blocks`` by merges and swaps.

    semantics='set' collapses identical blocks; merge='max' merges multisets by
    maximum multiplicity instead of by sum.
    """
    moves = []
    for x in S.elements:
        p = tuple(i for i, v in enumerate(x) if v == 1)
        m = tuple(i for i, v in enumerate(x) if v == -1)
        if p:
            moves.append((p, m))

    def norm(bs):
        st = _state(bs)
        if semantics == "set":
            st = tuple(sorted(set(st)))
        return st

    def merged(b1, b2):
        if merge == "sum":
            return b1 + b2
        c1, c2 = {}, {}
        for v in b1:
            c1[v] = c1.get(v, 0) + 1
        for v in b2:
            c2[v] = c2.get(v, 0) + 1
        out = []
        for v in sorted(set(c1) | set(c2)):
            out += [v] * max(c1.get(v, 0), c2.get(v, 0))
        return tuple(out)

    start = norm(blocks)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        nxt_states = []
        for i in range(len(cur)):
            for j in range(i + 1, len(cur)):
                rest = cur[:i] + cur[i + 1:j] + cur[j + 1:]
                nxt_states.append(rest + (merged(cur[i], cur[j]),))
        for i, b in enumerate(cur):
            for p, m in moves:
                lst = list(b)
                ok = True
                for v in p:
                    if v in lst:
                        lst.remove(v)
                    else:
                        ok = False
                        break
                if ok:
                    nxt_states.append(cur[:i] + cur[i + 1:] + (tuple(lst + list(m)),))
        for st in nxt_states:
            st = norm(st)
            if st in seen:
                continue
            if size_cap is not None and sum(len(b) for b in st) > size_cap:
                continue
            seen.add(st)
            if len(seen) > state_cap:
                raise IncompleteClosureError("oracle family closure exceeded its state cap", frozenset(seen))
            stack.append(st)
    return frozenset(seen)


def naive_closure(pi: SetPartition, S: Cut, semantics: str = "multiset", merge: str = "sum",
                  size_cap: int | None = None) -> frozenset:
    fams = naive_family_closure(pi.blocks, S, semantics, merge, size_cap)
    out = set()
    for st in fams:
        flat = [v for b in st for v in b]
        if sorted(flat) == list(range(S.n)):
            out.add(SetPartition(S.n, st))
    return frozenset(out)


def naive_swap_only(pi: SetPartition, S: Cut) -> frozenset:
    """Partitions reachable from pi by swaps alone (families kept as multisets)."""
    moves = [(tuple(i for i, v in enumerate(x) if v == 1), tuple(i for i, v in enumerate(x) if v == -1))
             for x in S.elements if any(x)]
    start = _state(pi.blocks)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for i, b in enumerate(cur):
            for p, m in moves:
                lst = list(b)
                if all(v in lst for v in p):
                    for v in p:
                        lst.remove(v)
                    st = _state(cur[:i] + cur[i + 1:] + (tuple(lst + list(m)),))
                    if st not in seen:
                        seen.add(st)
                        stack.append(st)
    return frozenset(SetPartition(S.n, st) for st in seen
                     if sorted(v for b in st for v in b) == list(range(S.n)))


def naive_assoc(s) -> frozenset:
    n = len(s)
    p = frozenset(i for i in range(n) if s[i] == 1)
    m = frozenset(i for i in range(n) if s[i] == -1)
    blocks = {frozenset([i]) for i in range(n) if s[i] == 0}
    blocks |= {b for b in (p, m) if b}
    return frozenset(blocks)


def naive_relative(S: Cut, pi: SetPartition) -> RelativeCut:
    Pi = naive_closure(pi, S)
    keys = {as_blocks(p) for p in Pi}
    surv = frozenset(s for s in S.elements if not any(s) or naive_assoc(s) not in keys)
    return RelativeCut(S.n, surv, Pi)


# -- direct product splits ----------------------------------------------------------

def _restrict_relabel(p: frozenset, coords: Sequence[int]) -> frozenset:
    idx = {c: k for k, c in enumerate(coords)}
    return frozenset(frozenset(idx[v] for v in b) for b in trace(p, coords))


def split_finder(rc: RelativeCut):
    """First bipartition (A, B) along which rc is literally a direct product.

    Returns ((A, B), (left, right)) with the factors in relabelled coordinates,
    or None.
    """
    n = rc.n
    inf = {as_blocks(p) for p in rc.at_infinity}
    allp = all_partitions(range(n))
    for r in range(1, n):
        for A in itertools.combinations(range(n), r):
            if 0 not in A:
                continue
            B = tuple(i for i in range(n) if i not in A)
            # surviving must be the full product of its projections
            pa = {tuple(s[i] for i in A) for s in rc.surviving}
            pb = {tuple(s[i] for i in B) for s in rc.surviving}
            if len(pa) * len(pb) != len(rc.surviving):
                continue
            parts_a = all_partitions(range(len(A)))
            parts_b = all_partitions(range(len(B)))
            # Pi_A: rho with every extension into B at infinity
            lift_a = {rho for rho in parts_a
                      if all(q in inf for q in allp if _restrict_relabel(q, A) == rho)}
            lift_b = {rho for rho in parts_b
                      if all(q in inf for q in allp if _restrict_relabel(q, B) == rho)}
            prod = {q for q in allp
                    if _restrict_relabel(q, A) in lift_a or _restrict_relabel(q, B) in lift_b}
            if prod != inf:
                continue
            surv_ok = {tuple(a) + tuple(b) for a in pa for b in pb}
            reordered = {tuple(s[i] for i in A) + tuple(s[i] for i in B) for s in rc.surviving}
            if surv_ok != reordered:
                continue
            left = RelativeCut(len(A), frozenset(pa), frozenset(from_blocks(len(A), p) for p in lift_a))
            right = RelativeCut(len(B), frozenset(pb), frozenset(from_blocks(len(B), p) for p in lift_b))
            return (A, B), (left, right)
    return None


def naive_relative_equal(rc1: RelativeCut, rc2: RelativeCut) -> bool:
    if rc1.n != rc2.n:
        return False
    inf2 = {as_blocks(p) for p in rc2.at_infinity}
    for sigma in itertools.permutations(range(rc1.n)):
        if frozenset(_perm_vec(s, sigma) for s in rc1.surviving) != rc2.surviving:
            continue
        mapped = {frozenset(frozenset(sigma[i] for i in b) for b in p.blocks) for p in rc1.at_infinity}
        if mapped == inf2:
            return True
    return False


# -- number partitions ------------------------------------------------------------------

def naive_is_sequential(lam: Sequence[int]) -> bool:
    parts = sorted(lam)
    n = len(parts)
    for assign in itertools.product((0, 1, 2), repeat=n):
        I = [i for i in range(n) if assign[i] == 1]
        J = [i for i in range(n) if assign[i] == 2]
        if not I or sum(parts[i] for i in I) != sum(parts[j] for j in J):
            continue
        q = max(I + J)
        if q not in I:
            continue
        if not any(sum(parts[j] for j in sub) == parts[q]
                   for r in range(len(J) + 1) for sub in itertools.combinations(J, r)):
            return False
    return True


def naive_i_max(lam: Sequence[int]):
    parts = sorted(lam)
    n = len(parts)
    best = None
    for r in range(2, n + 1):
        for sub in itertools.combinations(range(n), r):
            if sum(parts[i] for i in sub) != parts[-1]:
                continue
            if best is None or _lex_literal(set(sub), best):
                best = set(sub)
    return None if best is None else frozenset(best)


def _lex_literal(A: set, B: set) -> bool:
    if A > B:
        return True
    a, b = sorted(A), sorted(B)
    k, m = len(a), len(b)
    for q in range(min(k, m)):
        if a[k - 1 - q] != b[m - 1 - q]:
            return a[k - 1 - q] > b[m - 1 - q]
    return False


# -- paths ------------------------------------------------------------------------------

def naive_paths(G) -> list[tuple[tuple[int, ...], int, int]]:
    """(vertex sequence, edge count, weight) for every path 0 -> n, by DFS."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for x, y, w in G.edges:
        adj.setdefault(x, []).append((y, w))
    out = []

    def dfs(v, path, wt):
        if v == G.n:
            out.append((tuple(path), len(path) - 1, wt))
            return
        for y, w in adj.get(v, []):
            dfs(y, path + [y], wt + w)

    dfs(0, [0], 0)
    return sorted(out)


def naive_division_edges(bases: Sequence[int], mults: Sequence[int]) -> list[tuple[int, int, int]]:
    """Edges straight from the divisibility rule, vertices 0..n, m_0 = 1."""
    n = len(bases)
    out = []
    for x in range(n):
        for d in range(1, n - x + 1):
            y = x + d
            s = Fraction(0)
            for j in range(x + 1, y):
                s += bases[j - 1] * mults[j - 1]
            if x >= 1:
                s += bases[x - 1] * (mults[x - 1] - 1)
            q = s / bases[y - 1]
            if q.denominator == 1:
                out.append((x, y, int(q)))
    return out


# -- complexity by subset enumeration -------------------------------------------------------

def naive_complexity(S: Cut, candidates: Sequence[SetPartition], max_size: int):
    """Smallest subset of candidates whose removal lowers the rank, by brute force."""
    elements = [s for s in S.elements if any(s)]
    if not elements:
        return None
    full_rank = _int_rank(elements)
    closures = [{as_blocks(p) for p in naive_closure(pi, S)} for pi in candidates]
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(range(len(candidates)), size):
            gone = set().union(*(closures[i] for i in combo))
            kept = [s for s in elements if naive_assoc(s) not in gone]
            if _int_rank(kept) < full_rank:
                return size
    return None
