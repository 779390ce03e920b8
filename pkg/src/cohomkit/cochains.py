"""Normalized inhomogeneous cochains on a finite group, trivial action.

A degree-n cochain stores a sparse map from n-tuples of non-identity element
indices to values (Q/Z or Z); tuples containing the identity read as zero and
are never stored.  The coboundary is

    (df)(g1, ..., g_{n+1}) = f(g2, ..., g_{n+1})
        + sum_{i=1..n} (-1)^i f(g1, ..., g_i*g_{i+1}, ..., g_{n+1})
        + (-1)^{n+1} f(g1, ..., g_n)

with any argument tuple containing the identity contributing zero; on the
normalized subcomplex this closes, so results stay normalized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import lcm
from typing import Iterable, Mapping, Union

from .groups import FiniteGroup, GroupHom
from .qz import QZ

QZ_KIND = "qz"
INT_KIND = "int"
Value = Union[QZ, int]


class CochainError(ValueError):
    pass


@dataclass(frozen=True)
class Cochain:
    group: FiniteGroup
    degree: int
    kind: str
    entries: Mapping[tuple[int, ...], Value] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0:
            raise CochainError("degree must be >= 0")
        if self.kind not in (QZ_KIND, INT_KIND):
            raise CochainError(f"unknown coefficient kind {self.kind!r}")
        order = self.group.order
        clean = {}
        for key, val in self.entries.items():
            key = tuple(key)
            if len(key) != self.degree:
                raise CochainError(f"tuple {key} has arity {len(key)}, degree is {self.degree}")
            for idx in key:
                if not (1 <= idx < order):
                    raise CochainError(f"tuple {key}: index {idx} is the identity or out of range")
            if self.kind == QZ_KIND and not isinstance(val, QZ):
                raise CochainError(f"entry {key}: expected QZ value, got {type(val).__name__}")
            if self.kind == INT_KIND and not isinstance(val, int):
                raise CochainError(f"entry {key}: expected int value, got {type(val).__name__}")
            if val:
                clean[key] = val
        object.__setattr__(self, "entries", clean)

    # -- access --

    def value(self, key: tuple[int, ...]) -> Value:
        zero = QZ(0) if self.kind == QZ_KIND else 0
        if any(i == 0 for i in key):
            return zero
        return self.entries.get(tuple(key), zero)

    def is_zero(self) -> bool:
        return not self.entries

    def support(self):
        return self.entries.keys()

    def _compatible(self, other: "Cochain"):
        if (self.group.table != other.group.table or self.degree != other.degree
                or self.kind != other.kind):
            raise CochainError("cochain mismatch (group, degree, or coefficients)")

    # -- module structure --

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        out = dict(self.entries)
        for key, val in other.entries.items():
            s = out.get(key)
            out[key] = val if s is None else s + val
        return Cochain(self.group, self.degree, self.kind, out)

    def __neg__(self) -> "Cochain":
        return Cochain(self.group, self.degree, self.kind,
                       {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, k: int) -> "Cochain":
        return Cochain(self.group, self.degree, self.kind,
                       {key: val * k for key, val in self.entries.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.group.table == other.group.table
                and self.degree == other.degree and self.kind == other.kind
                and self.entries == other.entries)

    def __repr__(self):
        return (f"Cochain({self.group.name}, degree={self.degree}, kind={self.kind}, "
                f"nnz={len(self.entries)})")


def zero_cochain(group: FiniteGroup, degree: int, kind: str = QZ_KIND) -> Cochain:
    return Cochain(group, degree, kind, {})


def coboundary(f: Cochain) -> Cochain:
    """Sparse coboundary: scatter each support entry into the (n+1)-tuples
    whose alternating sum reads it, so cost scales with the support."""
    g = f.group
    order = g.order
    n = f.degree
    table = g.table
    acc: dict[tuple[int, ...], Value] = {}

    def put(key, val):
        s = acc.get(key)
        acc[key] = val if s is None else s + val

    inv = g.inv_table
    last_sign = -1 if (n + 1) % 2 else 1
    for key, val in f.entries.items():
        nval = -val
        lastval = val if last_sign == 1 else nval
        for x in range(1, order):
            put((x,) + key, val)                       # f(g2..g_{n+1})
            put(key + (x,), lastval)
        for i in range(n):                              # merged argument i+1
            signed = nval if (i + 1) % 2 else val
            target = key[i]
            head, tail = key[:i], key[i + 1:]
            for a in range(1, order):
                b = table[inv[a]][target]
                if b != 0:
                    put(head + (a, b) + tail, signed)
    return Cochain(g, n + 1, f.kind, acc)


def coboundary_at(f: Cochain, key: tuple[int, ...]) -> Value:
    """Direct evaluation of (df) at one (n+1)-tuple."""
    g = f.group
    n = f.degree
    if len(key) != n + 1:
        raise CochainError(f"tuple {key} has arity {len(key)}, expected {n + 1}")
    total = f.value(key[1:])
    for i in range(n):
        merged = key[:i] + (g.table[key[i]][key[i + 1]],) + key[i + 2:]
        v = f.value(merged)
        total = total - v if i % 2 == 0 else total + v
    v = f.value(key[:n])
    return total + v if (n + 1) % 2 == 0 else total - v


def is_cocycle(f: Cochain) -> bool:
    return coboundary(f).is_zero()


def pullback(hom: GroupHom, f: Cochain) -> Cochain:
    """(h*f)(g1..gn) = f(h(g1), ..., h(gn)) on the source group."""
    if hom.target.table != f.group.table:
        raise CochainError("pullback target group does not match cochain group")
    preimages: list[list[int]] = [[] for _ in range(hom.target.order)]
    for x in range(1, hom.source.order):
        preimages[hom.images[x]].append(x)
    acc: dict[tuple[int, ...], Value] = {}
    for key, val in f.entries.items():
        fibers = [preimages[t] for t in key]
        if any(not fib for fib in fibers):
            continue
        stack = [()]
        for fib in fibers:
            stack = [partial + (x,) for partial in stack for x in fib]
        for tup in stack:
            acc[tup] = val
    return Cochain(hom.source, f.degree, f.kind, acc)


def average_last(f: Cochain) -> Cochain:
    """Degree-lowering averaging: (af)(g1..g_{n-1}) = sum_h f(g1..g_{n-1}, h).

    For any cocycle z of degree k this satisfies d(af) = (-1)^k |G| z, which is
    the exact torsion witness used throughout the engine.
    """
    if f.degree == 0:
        raise CochainError("cannot average a degree-0 cochain")
    acc: dict[tuple[int, ...], Value] = {}
    for key, val in f.entries.items():
        head = key[:-1]
        if any(i == 0 for i in head):
            continue
        s = acc.get(head)
        acc[head] = val if s is None else s + val
    return Cochain(f.group, f.degree - 1, f.kind, acc)


def torsion_primitive(z: Cochain) -> Cochain:
    """A cochain w with dw = |G| * z, valid whenever z is a cocycle."""
    w = average_last(z)
    return w if z.degree % 2 == 0 else -w


def lcm_denominator(f: Cochain) -> int:
    if f.kind != QZ_KIND:
        raise CochainError("denominator lcm only applies to Q/Z cochains")
    n = 1
    for val in f.entries.values():
        n = lcm(n, val.den)
    return n


# -- tuple/index correspondence (lexicographic, identity excluded) --

def tuple_to_index(order: int, key: tuple[int, ...]) -> int:
    base = order - 1
    idx = 0
    for t in key:
        idx = idx * base + (t - 1)
    return idx


def index_to_tuple(order: int, degree: int, idx: int) -> tuple[int, ...]:
    base = order - 1
    out = []
    for _ in range(degree):
        idx, r = divmod(idx, base)
        out.append(r + 1)
    return tuple(reversed(out))


def cochain_dimension(order: int, degree: int) -> int:
    return (order - 1) ** degree


def to_int_vector(f: Cochain, scale: int = 1) -> dict[int, int]:
    """Sparse integer vector of an int cochain (optionally pre-scaled)."""
    if f.kind != INT_KIND:
        raise CochainError("expected an int cochain")
    order = f.group.order
    return {tuple_to_index(order, k): v * scale for k, v in f.entries.items()}


def scaled_lift_vector(f: Cochain, denominator: int) -> dict[int, int]:
    """Integer vector of denominator * (canonical lift of f), lift in [0, 1)."""
    if f.kind != QZ_KIND:
        raise CochainError("expected a Q/Z cochain")
    order = f.group.order
    out = {}
    for key, val in f.entries.items():
        num = val.num * denominator
        if num % val.den:
            raise CochainError("denominator does not clear the cochain")
        out[tuple_to_index(order, key)] = num // val.den
    return out


def from_int_vector(group: FiniteGroup, degree: int, vec: Mapping[int, int]) -> Cochain:
    order = group.order
    return Cochain(group, degree, INT_KIND,
                   {index_to_tuple(order, degree, i): v for i, v in vec.items()})


def qz_from_scaled_vector(group: FiniteGroup, degree: int, vec: Mapping[int, int],
                          denominator: int) -> Cochain:
    """Q/Z cochain with entries vec[i]/denominator mod 1."""
    order = group.order
    entries = {}
    for i, v in vec.items():
        q = QZ(v, denominator)
        if q:
            entries[index_to_tuple(order, degree, i)] = q
    return Cochain(group, degree, QZ_KIND, entries)


def random_qz_cochain(group: FiniteGroup, degree: int, rng,
                      denominator: int, density: float = 0.5) -> Cochain:
    """Random normalized cochain with values in (1/denominator)Z / Z."""
    if denominator < 1:
        raise CochainError("denominator must be >= 1")
    entries = {}
    for key in product(range(1, group.order), repeat=degree):
        if rng.random() >= density:
            continue
        q = QZ(rng.randrange(denominator), denominator)
        if q:
            entries[key] = q
    return Cochain(group, degree, QZ_KIND, entries)
