"""Set partitions, ordered set partitions, multiset families, number partitions.

Ground sets are always ``range(n)`` internally. The text grammar is 1-based,
as in ``{1,2}{3}`` or ``({1,2},{3})``; :meth:`SetPartition.parse` and
``str()`` translate.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, ResourceLimitError

DEFAULT_PARTITION_BOUND = 12
DEFAULT_ORDERED_BOUND = 9

Block = tuple[int, ...]


@dataclass(frozen=True)
class NumberPartition:
    """Positive parts, always stored in non-decreasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(int(p) for p in self.parts))
        if not parts:
            raise ValueError("a number partition needs at least one part")
        if parts[0] < 1:
            raise ValueError(f"parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "NumberPartition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "NumberPartition":
        return cls(tuple(parse_weights(text)))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return format_weights(sorted(self.parts, reverse=True))


_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_weights(text: str) -> list[int]:
    """Parse ``8,4,2^3,1^6`` into an explicit list (input order kept)."""
    if not text or not text.strip():
        raise ParseError("empty weight list")
    out: list[int] = []
    for term in text.strip().strip("()").split(","):
        m = _TERM.match(term)
        if not m:
            raise ParseError(f"bad weight term {term!r}")
        base, mult = int(m.group(1)), int(m.group(2) or 1)
        if base < 1 or mult < 1:
            raise ParseError(f"weights and multiplicities must be positive: {term!r}")
        out.extend([base] * mult)
    return out


def format_weights(weights: Sequence[int]) -> str:
    terms = []
    for value, grp in itertools.groupby(weights):
        k = len(list(grp))
        terms.append(str(value) if k == 1 else f"{value}^{k}")
    return ",".join(terms)


def _fmt_block(block: Iterable[int]) -> str:
    return "{" + ",".join(str(i + 1) for i in block) + "}"


_BLOCK = re.compile(r"\{([^{}]*)\}")


def _parse_blocks(text: str) -> list[list[int]]:
    body = text.strip()
    if not body:
        raise ParseError("empty partition text")
    blocks = []
    pos = 0
    for m in _BLOCK.finditer(body):
        gap = body[pos:m.start()].strip().strip(",").strip()
        if gap:
            raise ParseError(f"unexpected text {gap!r} in {text!r}")
        items = [s.strip() for s in m.group(1).split(",") if s.strip()]
        try:
            blocks.append([int(s) - 1 for s in items])
        except ValueError as exc:
            raise ParseError(f"bad block {m.group(0)!r}") from exc
        pos = m.end()
    if body[pos:].strip().strip(","):
        raise ParseError(f"trailing text in {text!r}")
    if not blocks:
        raise ParseError(f"no blocks in {text!r}")
    return blocks


def _check_cover(n: int, blocks: Sequence[Sequence[int]]) -> None:
    seen: set[int] = set()
    for b in blocks:
        if not b:
            raise ValueError("empty block")
        for i in b:
            if not 0 <= i < n:
                raise ValueError(f"element {i + 1} outside [1..{n}]")
            if i in seen:
                raise ValueError(f"element {i + 1} appears twice")
            seen.add(i)
    if len(seen) != n:
        raise ValueError(f"blocks do not cover [1..{n}]")


@dataclass(frozen=True)
class SetPartition:
    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        _check_cover(self.n, blocks)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "SetPartition":
        blocks = _parse_blocks(text)
        size = n if n is not None else sum(len(b) for b in blocks)
        try:
            return cls(size, tuple(tuple(b) for b in blocks))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @classmethod
    def discrete(cls, n: int) -> "SetPartition":
        return cls(n, tuple((i,) for i in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> "SetPartition":
        return cls(n, (tuple(range(n)),))

    @classmethod
    def with_block(cls, n: int, block: Iterable[int], *more: Iterable[int]) -> "SetPartition":
        """Partition whose nonsingleton blocks are the given ones."""
        chosen = [tuple(block), *map(tuple, more)]
        used = {i for b in chosen for i in b}
        rest = [(i,) for i in range(n) if i not in used]
        return cls(n, tuple(b for b in chosen if b) + tuple(rest))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "SetPartition":
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(len(labels), tuple(tuple(g) for g in groups.values()))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "".join(_fmt_block(b) for b in self.blocks)

    def labels(self) -> tuple[int, ...]:
        lab = [0] * self.n
        for k, b in enumerate(self.blocks):
            for i in b:
                lab[i] = k
        return tuple(lab)

    def permute(self, sigma: Sequence[int]) -> "SetPartition":
        """Relabel element i as sigma[i]."""
        return SetPartition(self.n, tuple(tuple(sigma[i] for i in b) for b in self.blocks))

    def is_discrete(self) -> bool:
        return len(self.blocks) == self.n


@dataclass(frozen=True)
class OrderedSetPartition:
    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        _check_cover(self.n, blocks)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "OrderedSetPartition":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError(f"ordered partitions are written as ({{..}},{{..}}): {text!r}")
        blocks = _parse_blocks(body[1:-1])
        size = n if n is not None else sum(len(b) for b in blocks)
        try:
            return cls(size, tuple(tuple(b) for b in blocks))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @classmethod
    def identity(cls, n: int) -> "OrderedSetPartition":
        return cls(n, tuple((i,) for i in range(n)))

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> "OrderedSetPartition":
        return cls(len(perm), tuple((p,) for p in perm))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "(" + ",".join(_fmt_block(b) for b in self.blocks) + ")"

    def unorder(self) -> SetPartition:
        return SetPartition(self.n, self.blocks)


@dataclass(frozen=True)
class MultisetFamily:
    """A multiset of non-empty multisubsets of range(n), stored canonically."""

    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            if b[0] < 0 or b[-1] >= self.n:
                raise ValueError(f"block {b} outside range({self.n})")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_partition(cls, pi: SetPartition) -> "MultisetFamily":
        return cls(pi.n, pi.blocks)

    def is_partition(self) -> bool:
        flat = [i for b in self.blocks for i in b]
        return len(flat) == self.n and len(set(flat)) == self.n

    def to_partition(self) -> SetPartition:
        return SetPartition(self.n, self.blocks)

    def __str__(self) -> str:
        return "".join(_fmt_block(b) for b in self.blocks)


def compose(pi: OrderedSetPartition, nu: OrderedSetPartition) -> OrderedSetPartition:
    """Block i of the result is the union of nu's blocks indexed by pi's block i."""
    if pi.n != len(nu.blocks):
        raise ValueError(f"pi is a partition of [{pi.n}] but nu has {len(nu.blocks)} blocks")
    return OrderedSetPartition(nu.n, tuple(
        tuple(sorted(i for j in block for i in nu.blocks[j])) for block in pi.blocks))


def restrict(pi: SetPartition, subset: Iterable[int]) -> SetPartition:
    """Trace of pi on a subset, relabelled order-preservingly onto range(|subset|)."""
    sub = sorted(set(subset))
    if not sub:
        raise ValueError("cannot restrict to the empty set")
    if sub[0] < 0 or sub[-1] >= pi.n:
        raise ValueError(f"{[i + 1 for i in sub]} is not a subset of [1..{pi.n}]")
    index = {e: k for k, e in enumerate(sub)}
    traces = (tuple(index[i] for i in b if i in index) for b in pi.blocks)
    return SetPartition(len(sub), tuple(t for t in traces if t))


def trace_blocks(pi: SetPartition, subset: Iterable[int]) -> frozenset[frozenset[int]]:
    """Restriction in the original labels (no relabelling)."""
    sub = set(subset)
    return frozenset(frozenset(b) & sub for b in map(frozenset, pi.blocks) if frozenset(b) & sub)


def product_set(
    Pi: Iterable[SetPartition],
    Lambda: Iterable[SetPartition],
    first: Sequence[int] | None = None,
    second: Sequence[int] | None = None,
) -> frozenset[SetPartition]:
    """All partitions of first ∪ second whose traces lie in Pi and Lambda.

    Pi lives on range(|first|) and Lambda on range(|second|); ``first`` and
    ``second`` name their positions in the union (default: first block of
    coordinates, then the rest). A partition with prescribed traces is the
    same thing as a partial matching between the blocks of the two traces.
    """
    Pi, Lambda = list(Pi), list(Lambda)
    if not Pi or not Lambda:
        return frozenset()
    na, nb = Pi[0].n, Lambda[0].n
    first = list(range(na)) if first is None else list(first)
    second = list(range(na, na + nb)) if second is None else list(second)
    if len(first) != na or len(second) != nb:
        raise ValueError("ground-set sizes do not match the partitions")
    if set(first) & set(second):
        raise ValueError("ground sets overlap")
    union = sorted(first + second)
    relabel = {e: k for k, e in enumerate(union)}
    fa = [relabel[e] for e in first]
    fb = [relabel[e] for e in second]
    out = set()
    for p in Pi:
        pa = [tuple(fa[i] for i in b) for b in p.blocks]
        for q in Lambda:
            qb = [tuple(fb[i] for i in b) for b in q.blocks]
            for matching in _partial_matchings(len(pa), len(qb)):
                blocks = []
                used_b = set()
                for i, blk in enumerate(pa):
                    j = matching.get(i)
                    if j is None:
                        blocks.append(blk)
                    else:
                        blocks.append(blk + qb[j])
                        used_b.add(j)
                blocks.extend(qb[j] for j in range(len(qb)) if j not in used_b)
                out.add(SetPartition(len(union), tuple(blocks)))
    return frozenset(out)


def _partial_matchings(a: int, b: int) -> Iterator[dict[int, int]]:
    def rec(i: int, used: frozenset, cur: dict):
        if i == a:
            yield dict(cur)
            return
        yield from rec(i + 1, used, cur)
        for j in range(b):
            if j not in used:
                cur[i] = j
                yield from rec(i + 1, used | {j}, cur)
                del cur[i]

    yield from rec(0, frozenset(), {})


def _restricted_growth(n: int) -> Iterator[list[int]]:
    labels = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield labels
            return
        for v in range(top + 2):
            labels[i] = v
            yield from rec(i + 1, max(top, v))

    if n == 0:
        yield []
        return
    yield from rec(1, 0)


def iter_partitions(n: int) -> Iterator[SetPartition]:
    for labels in _restricted_growth(n):
        yield SetPartition.from_labels(labels)


def enumerate_partitions(n: int, bound: int = DEFAULT_PARTITION_BOUND) -> list[SetPartition]:
    if n < 1:
        raise ValueError("n must be positive")
    if n > bound:
        raise ResourceLimitError(f"P({n}) exceeds the enumeration bound {bound}")
    return list(iter_partitions(n))


def enumerate_ordered(n: int, bound: int = DEFAULT_ORDERED_BOUND) -> list[OrderedSetPartition]:
    if n < 1:
        raise ValueError("n must be positive")
    if n > bound:
        raise ResourceLimitError(f"OP({n}) exceeds the enumeration bound {bound}")
    return [OrderedSetPartition(n, order)
            for p in iter_partitions(n)
            for order in itertools.permutations(p.blocks)]


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def fubini(n: int) -> int:
    from math import comb

    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]
