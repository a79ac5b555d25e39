"""Formal homotopy types of strata and the rules that decide them.

A determined answer is a wedge of terms F(1)^alpha ∧ S^beta. With F(1) a
circle every term is the sphere S^(alpha+beta). The rules below hold for
any model in which F(1^l) is contractible for l >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import InvariantViolation
from .sequential import (
    i_max,
    is_division_chain,
    is_sequential_bool,
    mm as top_multiplicity,
    strong_condition,
    subset_sum_exists,
)

SCHEMA_VERSION = 1


# -- the algebra -------------------------------------------------------------

def _term_key(t):
    return (t[0] + t[1], t[0], t[1])


@dataclass(frozen=True)
class HomotopyClass:
    """kind is 'point', 'wedge' or 'undetermined'."""

    kind: str
    terms: tuple[tuple[int, int], ...] = ()
    reason: str = ""
    carrier: str = ""

    def __post_init__(self):
        if self.kind not in ("point", "wedge", "undetermined"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "wedge":
            if not self.terms:
                raise ValueError("a wedge needs at least one term")
            if any(a < 0 or b < 0 for a, b in self.terms):
                raise ValueError("exponents must be nonnegative")
            object.__setattr__(self, "terms", tuple(sorted(self.terms, key=_term_key)))

    @property
    def is_point(self) -> bool:
        return self.kind == "point"

    @property
    def is_undetermined(self) -> bool:
        return self.kind == "undetermined"

    def sphere_dims(self) -> list[int]:
        return [a + b for a, b in self.terms]

    def __str__(self) -> str:
        return render(self, "symbolic")


POINT = HomotopyClass("point")
UNIT = HomotopyClass("wedge", ((0, 0),))
F1 = HomotopyClass("wedge", ((1, 0),))


def term(alpha: int, beta: int = 0) -> HomotopyClass:
    return HomotopyClass("wedge", ((alpha, beta),))


def undetermined(reason: str, carrier: str = "") -> HomotopyClass:
    return HomotopyClass("undetermined", reason=reason, carrier=carrier)


def wedge(*classes: HomotopyClass) -> HomotopyClass:
    terms: list = []
    for c in classes:
        if c.kind == "undetermined":
            return c
        terms.extend(c.terms)
    return HomotopyClass("wedge", tuple(terms)) if terms else POINT


def smash(*classes: HomotopyClass) -> HomotopyClass:
    # a contractible factor wins even over an unresolved one
    if any(c.kind == "point" for c in classes):
        return POINT
    for c in classes:
        if c.kind == "undetermined":
            return c
    out = [(0, 0)]
    for c in classes:
        out = [(a1 + a2, b1 + b2) for a1, b1 in out for a2, b2 in c.terms]
    return HomotopyClass("wedge", tuple(out))


def susp(c: HomotopyClass, k: int = 1) -> HomotopyClass:
    if k < 0:
        raise ValueError("suspension count must be nonnegative")
    if c.kind == "point" or k == 0:
        return c
    if c.kind == "undetermined":
        return undetermined(c.reason, f"susp^{k}({c.carrier})" if c.carrier else "")
    return HomotopyClass("wedge", tuple((a, b + k) for a, b in c.terms))


def f1_power(k: int) -> HomotopyClass:
    return term(k, 0)


def ones(k: int) -> HomotopyClass:
    """Type of (1^k): the unit, F(1), or contractible."""
    if k == 0:
        return UNIT
    return F1 if k == 1 else POINT


# -- rules for specific families ---------------------------------------------

def type_power_one(a: int, k: int, l: int) -> HomotopyClass:
    """(a^k, 1^l) with a >= 2."""
    if a < 2 or k < 1 or l < 1:
        raise ValueError("need a >= 2 and k, l >= 1")
    m, eps = divmod(l, a)
    if k != 1 or eps >= 2:
        return POINT
    return term(m + eps + 1, m)


def _scaled_power_one(c: int, k: int, l: int) -> HomotopyClass:
    """(c^k, 1^l) allowing empty multiplicities."""
    if k == 0:
        return ones(l)
    if l == 0:
        return ones(k)
    return type_power_one(c, k, l)


def type_two_primes(m: int, a: int, k: int, b: int, l: int) -> HomotopyClass:
    """(g^m, a^k, b^l) with g = lcm(a, b) and b > a >= 2."""
    if not b > a >= 2:
        raise ValueError("need b > a >= 2")
    if min(m, k, l) < 0:
        raise ValueError("multiplicities must be nonnegative")
    g = a * b // gcd(a, b)
    abar, bbar = g // a, g // b
    # too few copies of a (or b) to reach g: those parts are free
    if k < abar:
        return smash(f1_power(k), _scaled_power_one(bbar, m, l))
    if l < bbar:
        return smash(f1_power(l), _scaled_power_one(abar, m, k))
    x, e1 = divmod(k, abar)
    y, e2 = divmod(l, bbar)
    if m in (0, 1) and e1 in (0, 1) and e2 in (0, 1):
        return term(x + y + m + e1 + e2, x + y + m - 1)
    return POINT


def type_sequential(lam: Sequence[int]) -> HomotopyClass:
    parts = tuple(sorted(int(v) for v in lam))
    if parts and not is_sequential_bool(parts):
        raise ValueError(f"{parts} is not sequential")
    return _type_sequential(parts)


@lru_cache(maxsize=None)
def _type_sequential(parts: tuple[int, ...]) -> HomotopyClass:
    if not parts:
        return UNIT
    n = len(parts)
    k = top_multiplicity(parts)
    block = i_max(parts)
    if block is None:
        return smash(_type_sequential(parts[:n - k]), ones(k))
    if k >= 2:
        return POINT
    if strong_condition(parts):
        mu = tuple(p for i, p in enumerate(parts) if i not in block)
        return wedge(smash(F1, _type_sequential(parts[:n - 1])),
                     susp(smash(F1, _type_sequential(mu))))
    return undetermined(
        "sequential but not strongly sequential; the gluing triple does not split",
        f"F(1) ∧ F(Q(T, ν↓T)) for T = {list(parts[:n - 1])}, ν glued on "
        f"{sorted(i + 1 for i in block)}")


def type_akblm(a: int, k: int, b: int, l: int, m: int) -> HomotopyClass:
    """(a^k, b^l, 1^m) with b > 1 and a = b*l + r, r >= 1."""
    if b <= 1 or min(k, l) < 1 or m < 0:
        raise ValueError("need b > 1, k, l >= 1 and m >= 0")
    r = a - b * l
    if r < 1:
        raise ValueError(f"need a > b*l, got a={a}, b*l={b * l}")
    top = ones(k)
    lower = _scaled_power_one(b, l, m)
    if m < r:
        return smash(top, lower)
    upper = _scaled_power_one(a, 1, m - r)
    if l == 1 and m < b and k == 1:
        _check_sphere_order(a, b, m, upper, lower)
    return wedge(susp(smash(top, upper)), smash(top, lower))


def _check_sphere_order(a: int, b: int, m: int, upper: HomotopyClass, lower: HomotopyClass) -> None:
    """When neither piece is contractible the smaller sphere must sit below the larger."""
    if upper.is_point or lower.is_point:
        return
    d = a - b
    x, e1 = divmod(m, b)
    y, e2 = divmod(m - d, b + d)
    if not (e1 <= 1 and e2 <= 1):
        raise InvariantViolation(f"unexpected residues for a={a}, b={b}, m={m}")
    if not 2 * x + e1 > 2 * y + e2:
        raise InvariantViolation(f"sphere dimensions out of order for a={a}, b={b}, m={m}")


# -- division chains and the path graph --------------------------------------

@dataclass(frozen=True)
class ResonanceGraph:
    bases: tuple[int, ...]          # b_1 < ... < b_n
    mults: tuple[int, ...]          # m_1 ... m_n
    edges: tuple[tuple[int, int, int], ...]   # (x, y, weight), sorted

    @property
    def n(self) -> int:
        return len(self.bases)

    def out_edges(self, x: int) -> list[tuple[int, int]]:
        return [(y, w) for (s, y, w) in self.edges if s == x]

    def to_dot(self) -> str:
        lines = ["digraph G {", "  rankdir=LR;"]
        for v in range(self.n + 1):
            lines.append(f'  {v} [label="{v}"];')
        for x, y, w in self.edges:
            lines.append(f'  {x} -> {y} [label="w={w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def division_graph(lam) -> ResonanceGraph:
    chain = is_division_chain(lam)
    if chain is None:
        raise ValueError(f"{sorted(lam)} is not a division chain")
    b = (None,) + chain.bases
    m = (1,) + chain.mults
    n = len(chain.bases)
    edges = []
    for x in range(n):
        for y in range(x + 1, n + 1):
            total = sum(b[j] * m[j] for j in range(x + 1, y))
            if x > 0:
                total += b[x] * (m[x] - 1)
            if total % b[y] == 0:
                edges.append((x, y, total // b[y]))
    return ResonanceGraph(chain.bases, chain.mults, tuple(edges))


@dataclass(frozen=True)
class CompletePath:
    vertices: tuple[int, ...]
    length: int
    weight: int

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.vertices[1:]))


def complete_paths(G: ResonanceGraph) -> list[CompletePath]:
    """All 0 -> n paths, by dynamic programming from the sink, in lex order."""
    n = G.n
    suffixes: dict[int, list[tuple[tuple[int, ...], int]]] = {n: [((n,), 0)]}
    for x in range(n - 1, -1, -1):
        acc = []
        for y, w in sorted(G.out_edges(x)):
            for verts, wt in suffixes.get(y, []):
                acc.append(((x,) + verts, wt + w))
        suffixes[x] = acc
    return sorted((CompletePath(v, len(v) - 1, w) for v, w in suffixes[0]), key=lambda p: p.vertices)


def type_division_chain(lam) -> HomotopyClass:
    chain = is_division_chain(lam)
    if chain is None:
        raise ValueError(f"{sorted(lam)} is not a division chain")
    if chain.mults[-1] >= 2:
        return POINT
    paths = complete_paths(division_graph(lam))
    if not paths:
        return POINT
    return HomotopyClass("wedge", tuple((p.length + p.weight, p.weight) for p in paths))


# -- dispatcher ---------------------------------------------------------------

@dataclass
class HomotopyAnswer:
    result: HomotopyClass
    trace: list[str] = field(default_factory=list)
    parts: tuple[int, ...] = ()

    @property
    def status(self) -> str:
        return {"point": "point", "wedge": "determined", "undetermined": "undetermined"}[self.result.kind]


def free_parts(parts: Sequence[int]) -> list[int]:
    """Indices of parts that occur in no identity among the parts."""
    from .cuts import cut_from_weights

    S = cut_from_weights(parts, bound=max(len(parts), 14))
    used = set()
    for x in S.elements:
        used.update(i for i, v in enumerate(x) if v)
    return [i for i in range(len(parts)) if i not in used]


def _as_power_one(parts):
    vals = sorted(set(parts))
    if len(vals) == 2 and vals[0] == 1:
        a = vals[1]
        return a, parts.count(a), parts.count(1)
    return None


def _as_two_primes(parts):
    vals = sorted(set(parts))
    if len(vals) not in (2, 3):
        return None
    for a in vals:
        for b in vals:
            if not b > a >= 2 or b % a == 0:
                continue
            g = a * b // gcd(a, b)
            rest = set(vals) - {a, b}
            if rest <= {g}:
                return parts.count(g), a, parts.count(a), b, parts.count(b)
    return None


def _as_akblm(parts):
    vals = sorted(set(parts))
    if len(vals) != 3 or vals[0] != 1:
        return None
    _, b, a = vals
    l = parts.count(b)
    if a - b * l >= 1:
        return a, parts.count(a), b, l, parts.count(1)
    return None


def _routes(parts: tuple[int, ...]):
    """Every rule whose preconditions hold, most specific first."""
    out = []
    if is_division_chain(parts) is not None:
        out.append(("path graph of a division chain", lambda: type_division_chain(parts)))
    p1 = _as_power_one(parts)
    if p1 is not None:
        a, k, l = p1
        out.append((f"one heavy part value a={a} over ones (k={k}, l={l})",
                    lambda: type_power_one(a, k, l)))
    p2 = _as_two_primes(parts)
    if p2 is not None:
        m, a, k, b, l = p2
        out.append((f"two non-dividing values with their lcm (m={m}, a={a}, k={k}, b={b}, l={l})",
                    lambda: type_two_primes(m, a, k, b, l)))
    p3 = _as_akblm(parts)
    if p3 is not None:
        a, k, b, l, m = p3
        out.append((f"(a^k, b^l, 1^m) with a > b*l (a={a}, k={k}, b={b}, l={l}, m={m})",
                    lambda: type_akblm(a, k, b, l, m)))
    if is_sequential_bool(parts):
        out.append(("gluing recursion for sequential partitions", lambda: type_sequential(parts)))
    return out


def homotopy_type(lam, model: str = "circle", verify: bool = False) -> HomotopyAnswer:
    if model not in ("circle", "symbolic"):
        raise ValueError(f"unknown model {model!r}")
    parts = tuple(sorted(int(v) for v in lam))
    if not parts or parts[0] < 1:
        raise ValueError("need a nonempty partition with positive parts")
    trace = [f"normalised to ({','.join(map(str, parts))})"]
    free = free_parts(parts)
    core = tuple(p for i, p in enumerate(parts) if i not in free)
    if free:
        trace.append(f"split off {len(free)} part(s) in no identity "
                     f"({','.join(str(parts[i]) for i in free)}), each a smash factor F(1)")
    prefix = f1_power(len(free)) if free else UNIT

    if not core:
        result = prefix
        trace.append("no identities remain")
        answer = HomotopyAnswer(result, trace, parts)
    else:
        routes = _routes(core)
        if not routes:
            trace.append("not sequential and no family rule applies")
            answer = HomotopyAnswer(undetermined(
                "no rule covers this partition (it is not sequential)",
                f"F({','.join(map(str, core))})"), trace, parts)
        else:
            name, fn = routes[0]
            core_type = fn()
            trace.append(f"rule: {name}")
            if core_type.is_undetermined:
                for alt_name, alt in routes[1:]:
                    alt_type = alt()
                    if not alt_type.is_undetermined:
                        trace.append(f"first rule undetermined; rule: {alt_name}")
                        core_type = alt_type
                        break
            answer = HomotopyAnswer(smash(prefix, core_type), trace, parts)

    if verify:
        _verify_routes(parts, answer.result, answer.trace)
    return answer


def _verify_routes(parts: tuple[int, ...], result: HomotopyClass, trace: list[str]) -> None:
    determined = {}
    for label, val in [("stripped", result)] + [(n, fn()) for n, fn in _routes(parts)]:
        if not val.is_undetermined:
            determined[label] = val
    values = set(determined.values())
    if len(values) > 1:
        detail = "; ".join(f"{k}: {render(v, 'symbolic')}" for k, v in determined.items())
        raise InvariantViolation(f"rules disagree on {parts}: {detail}")
    trace.append(f"verified: {len(determined)} determined route(s) agree")


# -- rendering ---------------------------------------------------------------

def render(h: HomotopyClass, model: str = "circle") -> str:
    if h.kind == "point":
        return "point"
    if h.kind == "undetermined":
        return f"undetermined ({h.reason})"
    if model == "circle":
        return " v ".join(f"S^{a + b}" for a, b in sorted(h.terms, key=_term_key))
    pieces = []
    for a, b in h.terms:
        if a == 0 and b == 0:
            pieces.append("S^0")
        elif b == 0:
            pieces.append(f"F(1)^{a}")
        elif a == 0:
            pieces.append(f"S^{b}")
        else:
            pieces.append(f"F(1)^{a} ∧ S^{b}")
    return " v ".join(pieces)


def betti(h: HomotopyClass, model: str = "circle") -> dict[int, int]:
    """Reduced Betti numbers of a wedge of spheres (F(1) a circle)."""
    if model != "circle":
        raise ValueError("Betti numbers need the circle model")
    if h.is_undetermined:
        raise ValueError("cannot read Betti numbers off an undetermined class")
    out: dict[int, int] = {}
    for a, b in h.terms:
        if a < 1:
            raise InvariantViolation(f"term ({a},{b}) has no F(1) factor")
        out[a + b] = out.get(a + b, 0) + 1
    return dict(sorted(out.items()))


def to_json(answer: HomotopyAnswer, model: str = "circle") -> dict:
    h = answer.result
    wedge_terms = []
    if h.kind == "wedge":
        for a, b in sorted(h.terms, key=lambda t: (t[0] + t[1], t[0])):
            wedge_terms.append({"alpha": a, "beta": b, "sphere_dim": a + b})
    out = {
        "schema_version": SCHEMA_VERSION,
        "status": answer.status,
        "wedge": wedge_terms,
        "trace": list(answer.trace),
        "model": model,
        "parts": list(answer.parts),
    }
    if h.kind == "undetermined":
        out["reason"] = h.reason
        out["carrier"] = h.carrier
    if h.kind != "undetermined" and model == "circle":
        out["betti"] = {str(d): r for d, r in betti(h).items()} if h.kind == "wedge" else {}
    return out


def from_json(data: dict) -> HomotopyAnswer:
    status = data["status"]
    if status == "point":
        h = POINT
    elif status == "undetermined":
        h = undetermined(data.get("reason", ""), data.get("carrier", ""))
    else:
        h = HomotopyClass("wedge", tuple((t["alpha"], t["beta"]) for t in data["wedge"]))
    return HomotopyAnswer(h, list(data.get("trace", [])), tuple(data.get("parts", ())))
