"""Sign vectors, cuts, the action of ordered partitions, symbolic forms, orbits."""

from __future__ import annotations

import itertools
import re
import string
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import linalg
from .errors import InvalidCutError, ParseError, ResourceLimitError
from .partitions import OrderedSetPartition

SignVector = tuple[int, ...]

DEFAULT_WEIGHT_BOUND = 14
DEFAULT_SPAN_BOUND = 16
DEFAULT_LEAF_CAP = 200_000
ENUMERATION_BOUND = 5


def plus(x: SignVector) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(x) if v == 1)


def minus(x: SignVector) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(x) if v == -1)


def negate(x: SignVector) -> SignVector:
    return tuple(-v for v in x)


def is_mixed(x: SignVector) -> bool:
    return 1 in x and -1 in x


def format_vector(x: SignVector) -> str:
    return "(" + ",".join(str(v) for v in x) + ")"


@dataclass(frozen=True)
class Cut:
    """A set of sign vectors of length n. Construction does not validate;
    use :func:`is_cut` or :meth:`validated`."""

    n: int
    elements: frozenset

    def __post_init__(self):
        elems = frozenset(tuple(int(v) for v in x) for x in self.elements)
        for x in elems:
            if len(x) != self.n:
                raise ValueError(f"vector {x} has length {len(x)}, expected {self.n}")
            if any(v not in (-1, 0, 1) for v in x):
                raise ValueError(f"vector {x} has entries outside {{-1,0,1}}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def trivial(cls, n: int) -> "Cut":
        return cls(n, frozenset({(0,) * n}))

    def validated(self) -> "Cut":
        report = is_cut(self.elements, self.n)
        if not report:
            raise InvalidCutError(report.reason, report.violation)
        return self

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.elements

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[SignVector]:
        return sorted(self.elements, key=encode_vector)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def generators(self) -> list[SignVector]:
        """Representatives of the ± pairs (first nonzero entry positive)."""
        return [x for x in self.sorted() if any(x) and x[next(i for i, v in enumerate(x) if v)] == 1]

    def permute(self, sigma: Sequence[int]) -> "Cut":
        return Cut(self.n, frozenset(permute_vector(x, sigma) for x in self.elements))

    def __str__(self) -> str:
        return "{" + ",".join(format_vector(x) for x in self.sorted()) + "}"


def permute_vector(x: SignVector, sigma: Sequence[int]) -> SignVector:
    """Move coordinate i to position sigma[i]."""
    out = [0] * len(x)
    for i, v in enumerate(x):
        out[sigma[i]] = v
    return tuple(out)


# -- span closure -----------------------------------------------------------

def span_closure(vectors: Iterable[Sequence[int]], n: int, bound: int = DEFAULT_SPAN_BOUND) -> frozenset:
    vecs = [tuple(int(v) for v in x) for x in vectors]
    for x in vecs:
        if len(x) != n:
            raise ValueError(f"vector {x} has length {len(x)}, expected {n}")
    if n > bound:
        raise ResourceLimitError(f"span closure in dimension {n} exceeds bound {bound}")
    complement = linalg.nullspace([x for x in vecs if any(x)], n)
    return frozenset(linalg.sign_vectors_orthogonal(complement, n))


@dataclass(frozen=True)
class CutReport:
    ok: bool
    reason: str = ""
    violation: SignVector | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_cut(vectors: Iterable[Sequence[int]], n: int | None = None) -> CutReport:
    vecs = {tuple(int(v) for v in x) for x in vectors}
    if n is None:
        if not vecs:
            return CutReport(False, "empty set has no origin")
        n = len(next(iter(vecs)))
    if (0,) * n not in vecs:
        return CutReport(False, "origin missing", (0,) * n)
    for x in sorted(vecs, key=encode_vector):
        if any(x) and not is_mixed(x):
            return CutReport(False, f"{format_vector(x)} is not mixed-sign", x)
    closed = span_closure(vecs, n)
    extra = sorted(closed - vecs, key=encode_vector)
    if extra:
        return CutReport(False, f"not span-closed: {format_vector(extra[0])} lies in the span", extra[0])
    return CutReport(True)


def make_cut(vectors: Iterable[Sequence[int]], n: int) -> Cut:
    """Span-close the input and validate the result as a cut."""
    return Cut(n, span_closure(vectors, n)).validated()


def cut_from_weights(weights: Sequence[int], bound: int = DEFAULT_WEIGHT_BOUND) -> Cut:
    lam = [int(v) for v in weights]
    n = len(lam)
    if n == 0:
        raise ValueError("empty weight vector")
    if any(v <= 0 for v in lam):
        raise ValueError("weights must be positive")
    if n > bound:
        raise ResourceLimitError(f"{n} weights exceed the enumeration bound {bound}")
    return Cut(n, frozenset(linalg.sign_vectors_orthogonal([lam], n)))


# -- action of ordered set partitions --------------------------------------

def act(pi: OrderedSetPartition, S: Cut) -> Cut:
    """Sign vectors t with some s in S equal to t_j on every block j of pi."""
    if pi.n != S.n:
        raise ValueError(f"partition of [{pi.n}] cannot act on a {S.n}-cut")
    out = set()
    for s in S.elements:
        t = []
        for block in pi.blocks:
            v = s[block[0]]
            if any(s[i] != v for i in block):
                break
            t.append(v)
        else:
            out.add(tuple(t))
    return Cut(len(pi.blocks), frozenset(out))


# -- orbits and canonical forms --------------------------------------------

_CODE = {0: 0, 1: 1, -1: 2}
_DECODE = {0: 0, 1: 1, 2: -1}


def encode_vector(x: SignVector) -> int:
    code = 0
    for v in x:
        code = (code << 2) | _CODE[v]
    return code


def decode_vector(code: int, n: int) -> SignVector:
    return tuple(_DECODE[(code >> (2 * (n - 1 - i))) & 3] for i in range(n))


@dataclass(frozen=True)
class Resonance:
    """Orbit representative: the least sorted code tuple over relabellings."""

    n: int
    codes: tuple[int, ...]

    def to_cut(self) -> Cut:
        return Cut(self.n, frozenset(decode_vector(c, self.n) for c in self.codes))

    def is_trivial(self) -> bool:
        return len(self.codes) == 1

    def __len__(self) -> int:
        return len(self.codes)


def _ranks(sigs: list) -> list[int]:
    order = {s: k for k, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _refine(rows: list[SignVector], n: int, colors: list[int]) -> list[int]:
    """Alternate row/column colour refinement until the column partition is stable."""
    col = list(colors)
    while True:
        row_col = _ranks([tuple(sorted((r[j], col[j]) for j in range(n) if r[j])) for r in rows])
        sigs = [(col[i], tuple(sorted((r[i], row_col[k]) for k, r in enumerate(rows) if r[i])))
                for i in range(n)]
        new = _ranks(sigs)
        if len(set(new)) == len(set(col)):
            return new
        col = new


def _twin_classes(rows: frozenset, n: int, colors: list[int]) -> list[int]:
    """Class id per column; i ~ j when swapping columns i and j fixes the set."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if colors[i] != colors[j] or find(i) == find(j):
                continue
            swapped = True
            for r in rows:
                if r[i] != r[j]:
                    t = list(r)
                    t[i], t[j] = t[j], t[i]
                    if tuple(t) not in rows:
                        swapped = False
                        break
            if swapped:
                parent[find(j)] = find(i)
    return [find(i) for i in range(n)]


def canonical_form(S: Cut, leaf_cap: int = DEFAULT_LEAF_CAP) -> Resonance:
    n = S.n
    rows = sorted(S.elements)
    if n == 0:
        return Resonance(0, tuple(sorted(encode_vector(r) for r in rows)))
    start = _refine(rows, n, [0] * n)
    twins = _twin_classes(S.elements, n, start)
    best: list = [None]
    leaves = [0]

    def relabel(colors):
        return tuple(sorted(encode_vector(permute_vector(r, colors)) for r in rows))

    def search(colors: list[int]):
        if len(set(colors)) == n:
            leaves[0] += 1
            if leaves[0] > leaf_cap:
                raise ResourceLimitError(f"canonical form search exceeded {leaf_cap} leaves")
            code = relabel(colors)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        tried = set()
        for v in range(n):
            if colors[v] != target or twins[v] in tried:
                continue
            tried.add(twins[v])
            ind = [2 * c + (0 if i == v else 1) if c == target else 2 * c for i, c in enumerate(colors)]
            search(_refine(rows, n, _ranks(ind)))

    search(start)
    return Resonance(n, best[0])


def resonance_equal(S: Cut, T: Cut) -> bool:
    if S.n != T.n or len(S.elements) != len(T.elements):
        return False
    if S.elements == T.elements:
        return True
    return canonical_form(S) == canonical_form(T)


def enumerate_resonances(n: int, bound: int = ENUMERATION_BOUND) -> list[Resonance]:
    """All n-resonances, trivial first, then by size and code."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > bound:
        raise ResourceLimitError(f"resonance enumeration is limited to n <= {bound}")
    mixed = [x for x in linalg.sign_vectors_orthogonal([], n) if is_mixed(x)]
    seen = {canonical_form(Cut.trivial(n))}
    frontier = [Cut.trivial(n)]
    while frontier:
        nxt = []
        for S in frontier:
            covered = set(S.elements)
            base = S.generators()
            for v in mixed:
                if v in covered:
                    continue
                T = Cut(n, span_closure(base + [v], n))
                covered |= T.elements
                if not all(is_mixed(x) for x in T.elements if any(x)):
                    continue
                key = canonical_form(T)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key.to_cut())
        frontier = nxt
    return sorted(seen, key=lambda r: (len(r.codes), r.codes))


# -- symbolic notation ------------------------------------------------------

@dataclass(frozen=True)
class SymbolicResonance:
    """n integer linear forms; ``coefficients[i][p]`` multiplies parameter p."""

    coefficients: tuple[tuple[int, ...], ...]
    params: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.coefficients)

    def __str__(self) -> str:
        return "(" + ",".join(_format_form(row, self.params) for row in self.coefficients) + ")"


def _format_form(row: Sequence[int], params: Sequence[str]) -> str:
    out = ""
    for c, p in zip(row, params):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        out += f"{sign}{mag}{p}"
    return out or "0"


def _param_names(k: int) -> tuple[str, ...]:
    letters = string.ascii_lowercase
    if k <= len(letters):
        return tuple(letters[:k])
    return tuple(f"p{i}" for i in range(k))


def _nonnegative_basis(basis: list, n: int, tries: int = 5000):
    """Re-solve the basis on other free coordinates until every form has
    nonnegative coefficients; None if no such choice turns up."""
    k = len(basis)
    for count, free in enumerate(itertools.combinations(range(n), k)):
        if count >= tries:
            return None
        order = list(free) + [i for i in range(n) if i not in free]
        red, pivots = linalg.rref([[row[i] for i in order] for row in basis], n)
        if pivots != list(range(k)):
            continue
        rows = []
        for r in red[:k]:
            back = [0] * n
            for pos, i in enumerate(order):
                back[i] = r[pos]
            rows.append(linalg.primitive(back))
        if all(v >= 0 for row in rows for v in row):
            return rows
    return None


def to_symbolic(S: Cut) -> SymbolicResonance:
    basis = linalg.nullspace([x for x in S.elements if any(x)], S.n)
    if not basis:
        raise InvalidCutError("span of the cut is everything; no parameters remain")
    basis = _nonnegative_basis(basis, S.n) or basis
    names = _param_names(len(basis))
    coeffs = tuple(tuple(b[i] for b in basis) for i in range(S.n))
    return SymbolicResonance(coeffs, names)


_SYM_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([a-z][a-z0-9]*)|([+-]?)\s*(\d+)")


def parse_symbolic(text: str) -> SymbolicResonance:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        raise ParseError("empty symbolic expression")
    forms: list[dict[str, int]] = []
    for raw in body.split(","):
        if re.search(r"[a-z0-9]\s+[a-z0-9]", raw):
            raise ParseError(f"missing operator in {raw.strip()!r}")
        expr = re.sub(r"\s+", "", raw)
        if not expr:
            raise ParseError(f"empty linear form in {text!r}")
        form: dict[str, int] = {}
        pos = 0
        while pos < len(expr):
            m = _SYM_TERM.match(expr, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse {expr[pos:]!r} in {raw!r}")
            if m.group(3):
                if pos > 0 and not m.group(1):
                    raise ParseError(f"missing operator before {m.group(0)!r} in {raw!r}")
                coef = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
                form[m.group(3)] = form.get(m.group(3), 0) + coef
            else:
                if int(m.group(5)) != 0:
                    raise ParseError(f"constant term {m.group(0)!r} in {raw!r}; forms must be linear")
            pos = m.end()
        forms.append(form)
    params = tuple(sorted({p for f in forms for p in f}))
    if not params:
        raise ParseError("symbolic expression has no parameters")
    return SymbolicResonance(tuple(tuple(f.get(p, 0) for p in params) for f in forms), params)


def from_symbolic(expr: SymbolicResonance | str) -> Cut:
    sym = parse_symbolic(expr) if isinstance(expr, str) else expr
    n = sym.n
    columns = [tuple(row[p] for row in sym.coefficients) for p in range(len(sym.params))]
    elems = frozenset(linalg.sign_vectors_orthogonal(columns, n))
    bad = next((x for x in sorted(elems, key=encode_vector) if any(x) and not is_mixed(x)), None)
    if bad is not None:
        raise InvalidCutError(f"orthogonal complement contains {format_vector(bad)}, which is not mixed-sign", bad)
    return Cut(n, elems)
