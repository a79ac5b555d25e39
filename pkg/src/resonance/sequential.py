"""Sequential, strongly sequential and division-chain number partitions.

Parts are indexed 0-based in ascending order. An identity is a pair of
disjoint index sets (I, J) with equal part sums; the identities are exactly
the non-origin elements of the cut of the partition, one per ± pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cuts import cut_from_weights
from .errors import InvariantViolation

DEFAULT_IDENTITY_BOUND = 16


def _parts(lam) -> list[int]:
    parts = sorted(int(v) for v in lam)
    if not parts or parts[0] < 1:
        raise ValueError("a number partition needs positive parts")
    return parts


def lex_greater(A, B) -> bool:
    """Order on index sets: strict superset, or larger at the first place the
    descending sequences differ. Agrees with comparing sum(2**i)."""
    A, B = set(A), set(B)
    if A > B:
        return True
    a, b = sorted(A, reverse=True), sorted(B, reverse=True)
    for x, y in zip(a, b):
        if x != y:
            return x > y
    return False


def mm(lam) -> int:
    parts = _parts(lam)
    return sum(1 for p in parts if p == parts[-1])


def i_max(lam) -> frozenset[int] | None:
    """Lexicographically largest index set of size >= 2 summing to the top part."""
    parts = _parts(lam)
    target = parts[-1]
    cand = [i for i in range(len(parts) - 1) if parts[i] < target]
    prefix = [0]
    for i in cand:
        prefix.append(prefix[-1] + parts[i])
    chosen: list[int] = []

    # high indices first, include before exclude: the first hit has the largest bitmask
    def rec(k: int, remaining: int):
        if remaining == 0:
            return len(chosen) >= 2
        if k < 0 or prefix[k + 1] < remaining:
            return False
        i = cand[k]
        if parts[i] <= remaining:
            chosen.append(i)
            if rec(k - 1, remaining - parts[i]):
                return True
            chosen.pop()
        return rec(k - 1, remaining)

    return frozenset(chosen) if rec(len(cand) - 1, target) else None


def subset_sum_exists(values: Sequence[int], target: int) -> bool:
    reach = 1
    for v in values:
        reach |= reach << v
    return bool(reach >> target & 1)


def _subset_witness(values: Sequence[int], target: int) -> bool:
    return target == 0 or subset_sum_exists(values, target)


def identities(lam, bound: int = DEFAULT_IDENTITY_BOUND) -> list[tuple[frozenset, frozenset]]:
    """(I, J) pairs with the largest involved index in I, one per identity."""
    parts = _parts(lam)
    out = []
    for x in cut_from_weights(parts, bound=bound).elements:
        if not any(x):
            continue
        q = max(i for i, v in enumerate(x) if v)
        if x[q] == -1:
            continue
        out.append((frozenset(i for i, v in enumerate(x) if v == 1),
                    frozenset(i for i, v in enumerate(x) if v == -1)))
    return sorted(out, key=lambda p: (sorted(p[0]), sorted(p[1])))


def sequential_witness(lam, bound: int = DEFAULT_IDENTITY_BOUND):
    """First identity violating sequentiality, or None."""
    parts = _parts(lam)
    for I, J in identities(parts, bound):
        q = max(I)
        if not _subset_witness([parts[j] for j in J], parts[q]):
            return I, J
    return None


def is_sequential_bool(lam, bound: int = DEFAULT_IDENTITY_BOUND) -> bool:
    return sequential_witness(lam, bound) is None


def strong_condition(lam) -> bool:
    parts = _parts(lam)
    block = i_max(parts)
    if block is None:
        return True
    q = max(block)
    return subset_sum_exists([parts[i] for i in block if i != q], parts[q])


def is_strongly_sequential(lam, bound: int = DEFAULT_IDENTITY_BOUND) -> bool:
    return is_sequential_bool(lam, bound) and strong_condition(lam)


def merge_i(lam) -> tuple[int, ...]:
    parts = _parts(lam)
    block = i_max(parts)
    if block is None:
        raise ValueError(f"{parts} has no gluing block")
    rest = [p for i, p in enumerate(parts) if i not in block]
    return tuple(sorted(rest + [sum(parts[i] for i in block)]))


@dataclass(frozen=True)
class DivisionChain:
    bases: tuple[int, ...]
    mults: tuple[int, ...]

    def __iter__(self):
        return iter((self.bases, self.mults))


def is_division_chain(lam) -> DivisionChain | None:
    parts = _parts(lam)
    bases = sorted(set(parts))
    if any(bases[i + 1] % bases[i] for i in range(len(bases) - 1)):
        return None
    return DivisionChain(tuple(bases), tuple(parts.count(b) for b in bases))


@dataclass(frozen=True)
class SequentialReport:
    parts: tuple[int, ...]
    sequential: bool
    strongly_sequential: bool
    division_chain: bool
    mm: int
    I_max: frozenset | None
    witness: tuple | None = None
    chain: DivisionChain | None = field(default=None)

    def as_dict(self) -> dict:
        w = None
        if self.witness is not None:
            I, J = self.witness
            w = {"I": sorted(i + 1 for i in I), "J": sorted(j + 1 for j in J),
                 "identity": " + ".join(str(self.parts[j]) for j in sorted(J)) + " = "
                 + " + ".join(str(self.parts[i]) for i in sorted(I))}
        return {
            "parts": list(self.parts),
            "sequential": self.sequential,
            "strongly_sequential": self.strongly_sequential,
            "division_chain": self.division_chain,
            "mm": self.mm,
            "I": None if self.I_max is None else sorted(i + 1 for i in self.I_max),
            "witness": w,
            "chain": None if self.chain is None else
            {"bases": list(self.chain.bases), "mults": list(self.chain.mults)},
        }


def classify(lam, bound: int = DEFAULT_IDENTITY_BOUND) -> SequentialReport:
    parts = tuple(_parts(lam))
    witness = sequential_witness(parts, bound)
    seq = witness is None
    strong = seq and strong_condition(parts)
    chain = is_division_chain(parts)
    report = SequentialReport(parts, seq, strong, chain is not None, mm(parts), i_max(parts), witness, chain)
    if report.division_chain and not report.strongly_sequential:
        raise InvariantViolation(f"division chain {parts} classified as not strongly sequential")
    if report.strongly_sequential and not report.sequential:
        raise InvariantViolation(f"{parts} strongly sequential but not sequential")
    return report


is_sequential = classify
