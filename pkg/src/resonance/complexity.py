"""How many partitions must be sent to infinity before the surviving identities lose rank."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .cuts import Cut, cut_from_weights
from .errors import ResourceLimitError
from .partitions import NumberPartition, SetPartition, iter_partitions
from .relative import associated_partition, closure_partition

LITERAL_PROPER = "literal"
TRANSPOSITIONS = "transpositions"
MODES = (LITERAL_PROPER, TRANSPOSITIONS)
DEFAULT_BOUND_N = 10
DEFAULT_MAX_SIZE = 6
DEFAULT_FRONTIER_CAP = 2_000_000


@dataclass(frozen=True)
class ComplexityResult:
    """status: 'exact', 'unbounded' (no candidate set lowers the rank) or 'lower_bound'."""

    status: str
    value: int | None
    witness: tuple[SetPartition, ...]
    mode: str
    search_bound: int

    def __str__(self) -> str:
        if self.status == "exact":
            return str(self.value)
        if self.status == "unbounded":
            return "unbounded"
        return f"> {self.search_bound}"

    def as_dict(self) -> dict:
        return {"status": self.status, "value": self.value, "mode": self.mode,
                "search_bound": self.search_bound, "witness": [str(p) for p in self.witness]}


def candidates(n: int, mode: str) -> list[SetPartition]:
    if mode == TRANSPOSITIONS:
        return [SetPartition.with_block(n, (i, j)) for i, j in itertools.combinations(range(n), 2)]
    if mode == LITERAL_PROPER:
        return [p for p in iter_partitions(n) if not p.is_discrete()]
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def removal_mask(S: Cut, pi: SetPartition, elements: Sequence) -> int:
    closed = closure_partition(pi, S)
    mask = 0
    for k, s in enumerate(elements):
        if associated_partition(s) in closed:
            mask |= 1 << k
    return mask


def _rank_of(elements, mask_kept: int, n: int) -> int:
    return linalg.rank([e for k, e in enumerate(elements) if mask_kept >> k & 1], n)


def complexity(S: Cut, mode: str = TRANSPOSITIONS, max_size: int = DEFAULT_MAX_SIZE,
               bound_n: int = DEFAULT_BOUND_N, frontier_cap: int = DEFAULT_FRONTIER_CAP) -> ComplexityResult:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if max_size < 1:
        raise ValueError("max_size must be positive")
    n = S.n
    if n > bound_n:
        raise ResourceLimitError(f"complexity search is limited to n <= {bound_n}")
    elements = [s for s in S.sorted() if any(s)]
    if not elements:
        return ComplexityResult("unbounded", None, (), mode, max_size)
    full = (1 << len(elements)) - 1
    target = linalg.rank(elements, n)

    # distinct nonzero removal masks, each with its first candidate in order
    first: dict[int, SetPartition] = {}
    for pi in candidates(n, mode):
        m = removal_mask(S, pi, elements)
        if m and m not in first:
            first[m] = pi
    masks = list(first)

    rank_memo: dict[int, int] = {}

    def drops(removed: int) -> bool:
        if removed not in rank_memo:
            rank_memo[removed] = _rank_of(elements, full & ~removed, n)
        return rank_memo[removed] < target

    union_all = 0
    for m in masks:
        union_all |= m
    if not masks or not drops(union_all):
        return ComplexityResult("unbounded", None, (), mode, max_size)

    level: dict[int, tuple[int, ...]] = {}
    for idx, m in enumerate(masks):
        level.setdefault(m, (idx,))
    for size in range(1, max_size + 1):
        for u, wit in sorted(level.items(), key=lambda kv: kv[1]):
            if drops(u):
                return ComplexityResult("exact", size, tuple(first[masks[i]] for i in wit), mode, max_size)
        if size == max_size:
            break
        nxt: dict[int, tuple[int, ...]] = {}
        for u, wit in level.items():
            for idx in range(wit[-1] + 1, len(masks)):
                v = u | masks[idx]
                if v == u:
                    continue
                cand = wit + (idx,)
                if v not in nxt or cand < nxt[v]:
                    nxt[v] = cand
        if len(nxt) > frontier_cap:
            raise ResourceLimitError(f"complexity search frontier exceeded {frontier_cap} unions")
        level = nxt
    return ComplexityResult("lower_bound", None, (), mode, max_size)


def replay_witness(S: Cut, witness: Sequence[SetPartition]) -> bool:
    """Recompute the surviving span for a witness and report whether it dropped."""
    removed_parts = set()
    for pi in witness:
        removed_parts |= closure_partition(pi, S)
    kept = [s for s in S.elements if any(s) and associated_partition(s) not in removed_parts]
    everything = [s for s in S.elements if any(s)]
    return linalg.rank(kept, S.n) < linalg.rank(everything, S.n)


# -- a family of high complexity ------------------------------------------------

def default_offset(n: int) -> int:
    return 4 * sum(3 ** i for i in range(n)) + 1


def high_complexity_family(n: int, N: int | None = None) -> NumberPartition:
    """(a_1..a_n, N+a_1..N+a_n) with a_i = 3^(i-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    a = [3 ** i for i in range(n)]
    N = default_offset(n) if N is None else int(N)
    if N < 1:
        raise ValueError("N must be positive")
    return NumberPartition(tuple(a + [N + v for v in a]))


def expected_family_cut(n: int) -> frozenset:
    """Vectors (x, y) with sum(y) = 0 and x = -y."""
    out = set()
    for y in itertools.product((-1, 0, 1), repeat=n):
        if sum(y) == 0:
            out.add(tuple(-v for v in y) + tuple(y))
    return frozenset(out)


def verify_family_cut(lam) -> bool:
    parts = list(lam)
    if len(parts) % 2:
        raise ValueError("family partitions have an even number of parts")
    n = len(parts) // 2
    return cut_from_weights(parts).elements == expected_family_cut(n)
