"""Group cohomology with circle-group coefficients, computed exactly.

Coefficients live in Q/Z with the trivial group action.  Everything is
reduced to integer linear algebra through the connecting isomorphism
H^n(G, Q/Z) ~ torsion of H^{n+1}(G, Z) for n >= 1: the torsion of the
integral cohomology in degree n+1 is read off the invariant factors of the
single integer coboundary matrix C^n(G, Z) -> C^{n+1}(G, Z) on normalized
cochains, because the image of that matrix sits inside the (saturated)
integral cocycle lattice and every class is killed by |G|.

Two elimination engines share the work.  A batched factors-only engine
(sweep module) answers "what is the group" cheaply even at the top of the
size budget.  The journaled engine (linalg module) additionally replays row
and column operations, which powers

  * cokernel vectors   -> explicit generating cocycles,
  * forward replay     -> coordinates of an arbitrary cocycle,
  * integral solves    -> coboundary tests and primitives,

and is built lazily, on the first query that needs it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cochains import (
    Cochain,
    CochainError,
    coboundary,
    cochain_dimension,
    from_int_vector,
    index_to_tuple,
    is_cocycle,
    lcm_denominator,
    qz_from_scaled_vector,
    torsion_primitive,
    tuple_to_index,
    zero_cochain,
)
from .groups import FiniteGroup
from .linalg import SparseElimination
from .qz import QZ
from .sweep import SweepElimination

DEFAULT_SIZE_BUDGET = 161051
SIZE_BUDGET_ENV = "COHOMKIT_SIZE_BUDGET"


class SizeBudgetError(RuntimeError):
    """Raised when a requested computation exceeds the cochain size budget."""


def size_budget() -> int:
    raw = os.environ.get(SIZE_BUDGET_ENV)
    if raw is None:
        return DEFAULT_SIZE_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise SizeBudgetError(f"invalid {SIZE_BUDGET_ENV} value: {raw!r}")


def differential_rows(group: FiniteGroup, degree: int):
    """Rows of the integer coboundary matrix C^degree -> C^{degree+1}.

    Rows are indexed by non-identity (degree+1)-tuples in lexicographic
    order, columns by degree-tuples.  Yields (row_index, {col: coeff}).
    """
    n = degree
    order = group.order
    table = group.table
    t = order - 1
    pows = [t ** k for k in range(n)]

    def col_index(key: tuple[int, ...]) -> int:
        idx = 0
        for j, g in enumerate(key):
            idx += (g - 1) * pows[n - 1 - j]
        return idx

    last_sign = -1 if n % 2 == 0 else 1
    for row_index, key in enumerate(product(range(1, order), repeat=n + 1)):
        row: dict[int, int] = {}

        def put(sub: tuple[int, ...], val: int) -> None:
            if 0 in sub:
                return
            c = col_index(sub)
            s = row.get(c, 0) + val
            if s:
                row[c] = s
            else:
                del row[c]

        put(key[1:], 1)
        sign = -1
        for i in range(1, n + 1):
            m = table[key[i - 1]][key[i]]
            if m:
                put(key[:i - 1] + (m,) + key[i + 1:], sign)
            sign = -sign
        put(key[:n], last_sign)
        if row:
            yield row_index, row


_elim_cache: dict[tuple, SparseElimination] = {}
_factor_cache: dict[tuple, SweepElimination] = {}
_cohomology_cache: dict[tuple, "CohomologyGroup"] = {}


def clear_caches() -> None:
    _elim_cache.clear()
    _factor_cache.clear()
    _cohomology_cache.clear()


def get_elimination(group: FiniteGroup, degree: int) -> SparseElimination:
    """Journaled elimination of the coboundary matrix out of degree `degree`.

    The elimination runs mod |G|^2: every interesting invariant factor
    divides |G| (the averaging identity kills the torsion by |G|), so factors
    survive the reduction and stay distinguishable from free summands, while
    all arithmetic stays on small bounded residues.
    """
    key = (group.cache_key(), degree)
    elim = _elim_cache.get(key)
    if elim is None:
        _check_budget(group, degree)
        nrows = cochain_dimension(group.order, degree + 1)
        ncols = cochain_dimension(group.order, degree)
        # max() keeps the trivial group legal; its matrices are empty anyway
        elim = SparseElimination(nrows, ncols, modulus=max(group.order ** 2, 2))
        for i, entries in differential_rows(group, degree):
            elim.add_row(i, entries)
        elim.run()
        _elim_cache[key] = elim
    return elim


def get_factor_elimination(group: FiniteGroup, degree: int):
    """Factors-only elimination of the same coboundary matrix.

    The batched engine keeps no operation journal, so it is the cheap way to
    invariant factors near the top of the size budget.  When a journaled
    elimination is already cached it is reused instead of building a second
    copy of the matrix.
    """
    key = (group.cache_key(), degree)
    if key in _elim_cache:
        return _elim_cache[key]
    elim = _factor_cache.get(key)
    if elim is None:
        _check_budget(group, degree)
        nrows = cochain_dimension(group.order, degree + 1)
        ncols = cochain_dimension(group.order, degree)
        elim = SweepElimination(nrows, ncols, modulus=max(group.order ** 2, 2))
        for i, entries in differential_rows(group, degree):
            elim.add_row(i, entries)
        elim.run()
        _factor_cache[key] = elim
    return elim


@dataclass
class CohomologyGroup:
    group: FiniteGroup
    degree: int
    invariant_factors: list[int]
    _generators: list[Cochain] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def describe(self) -> str:
        if not self.invariant_factors:
            return f"H^{self.degree} = 0"
        parts = " + ".join(f"Z/{f}" for f in self.invariant_factors)
        return f"H^{self.degree} = {parts}"

    @property
    def elimination(self) -> SparseElimination:
        """The journaled elimination behind coordinates and generators."""
        return get_elimination(self.group, self.degree)

    @property
    def generators(self) -> list[Cochain]:
        """Explicit generating cocycles, one per invariant factor.

        Built on first access; the i-th generator has the i-th unit vector
        as its class coordinates.
        """
        if self._generators is None:
            self._generators = _build_generators(self)
        return self._generators


def _check_budget(group: FiniteGroup, degree: int) -> None:
    cells = cochain_dimension(group.order, degree + 1)
    budget = size_budget()
    if cells > budget:
        raise SizeBudgetError(
            f"degree-{degree} computation for a group of order {group.order} "
            f"needs {cells} cells, over the budget of {budget} "
            f"(override with {SIZE_BUDGET_ENV})")


def compute_cohomology(group: FiniteGroup, degree: int) -> CohomologyGroup:
    """H^degree(group, Q/Z), invariant factors in ascending divisibility order.

    Factors are computed eagerly with the batched engine; generating
    cocycles and class coordinates pull in the journaled elimination on
    first use.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    key = (group.cache_key(), degree)
    cached = _cohomology_cache.get(key)
    if cached is not None:
        return cached
    _check_budget(group, degree)
    elim = get_factor_elimination(group, degree)
    factors = elim.nontrivial_factors()
    for f in factors:
        # torsion beyond the group order means a free summand leaked through
        # the torsion-only reduction: a bug, never a valid answer
        assert group.order % f == 0, \
            f"invariant factor {f} does not divide the group order"
    result = CohomologyGroup(group, degree, factors)
    _cohomology_cache[key] = result
    return result


def _build_generators(cohomology: CohomologyGroup) -> list[Cochain]:
    group = cohomology.group
    degree = cohomology.degree
    elim = get_elimination(group, degree)
    pivots = elim.nontrivial_pivots()
    factors = [elim.pivot_factor(s) for _, _, s in pivots]
    assert factors == cohomology.invariant_factors, \
        "journaled and batched eliminations disagree on invariant factors"
    generators = []
    for r, c, s in pivots:
        # the column transform turns the pivot relation around: with
        # x = V e_c we get D x = s * (U^-1 e_r) up to the working modulus,
        # so x / gcd(s, M), twisted by the unit s/gcd, is a cocycle whose
        # class has this pivot's unit coordinate vector
        x = elim.apply_col_transform({c: 1})
        denom = elim.pivot_factor(s)
        unit = pow((s // denom) % denom, -1, denom) if denom > 1 else 1
        vec = {j: (v * unit) % denom for j, v in x.items() if (v * unit) % denom}
        gen = qz_from_scaled_vector(group, degree, vec, denom)
        # identity witnesses: the generator is a cocycle and |G| times its
        # integral image bounds, which certifies the torsion-only reduction
        assert is_cocycle(gen), "generator failed the cocycle check"
        zc = from_int_vector(group, degree + 1, _bockstein_vector(gen))
        w = torsion_primitive(zc)
        assert coboundary(w) == zc.scale(group.order), \
            "averaging identity failed on a generator"
        generators.append(gen)
    for i, gen in enumerate(generators):
        coords = class_coordinates(gen, cohomology)
        expected = [1 if j == i else 0 for j in range(len(factors))]
        assert coords == expected, "generator coordinates are not unit vectors"
    return generators


def _bockstein_vector(f: Cochain) -> dict[int, int]:
    """Integer vector of the connecting cocycle d(lift f), indexed over
    (degree+1)-tuples.

    Computed as d(N * lift f) / N with N the common denominator, so the cost
    stays proportional to the support of f.
    """
    if f.kind != "qz":
        raise CochainError("connecting map needs circle-valued cochains")
    group = f.group
    n = f.degree
    scale = lcm_denominator(f)
    lifted = Cochain(group, n, "int", {
        key: val.num * (scale // val.den) for key, val in f.entries.items()})
    zc = coboundary(lifted)
    order = group.order
    out: dict[int, int] = {}
    for key, v in zc.entries.items():
        q, rem = divmod(v, scale)
        if rem:
            raise CochainError("cochain is not a cocycle: lift coboundary "
                               "is non-integral")
        if q:
            out[tuple_to_index(order, key)] = q
    return out


def class_coordinates(f: Cochain, cohomology: CohomologyGroup | None = None
                      ) -> list[int]:
    """Coordinates of a cocycle's class in the invariant-factor basis.

    The i-th coordinate is reduced modulo the i-th invariant factor, and the
    i-th generator from compute_cohomology maps to the i-th unit vector.
    Raises if f is not a cocycle.
    """
    if not is_cocycle(f):
        raise CochainError("class coordinates are only defined for cocycles")
    if cohomology is None:
        cohomology = compute_cohomology(f.group, f.degree)
    elim = cohomology.elimination
    z = _bockstein_vector(f)
    y = elim.apply_row_transform(z)
    pivot_value = {r: s for r, _, s in elim.pivots}
    coords = []
    for r, _, s in elim.nontrivial_pivots():
        v = y.pop(r, 0)
        coords.append(v % elim.pivot_factor(s))
    order = f.group.order
    for r, v in y.items():
        if not v:
            continue
        s = pivot_value.get(r)
        if s is not None:
            assert v % elim.pivot_factor(s) == 0, \
                "cocycle image escapes the coboundary lattice"
        else:
            # a pivotless row spans a free direction of the cokernel; over
            # the integers |G|*z is a coboundary (averaging identity), and
            # its transformed image vanishes there mod |G|^2, so a genuine
            # cocycle can leave at most a multiple of the group order
            assert v % order == 0, \
                "cocycle image escapes the coboundary lattice"
    return coords


def is_coboundary(f: Cochain, method: str = "bockstein") -> bool:
    """Exact coboundary test for a circle-valued cochain.

    method="bockstein": checks that the integral connecting cocycle of f
    lies in the image of the integer coboundary matrix (journal replay).
    method="bounded": independent route through a single modular solve with
    a denominator bound; see the modular module.
    """
    if f.kind != "qz":
        raise CochainError("coboundary test expects circle-valued cochains")
    if method == "bounded":
        from .modular import is_coboundary_bounded
        return is_coboundary_bounded(f)
    if method != "bockstein":
        raise ValueError(f"unknown method {method!r}")
    if f.degree == 0:
        return f.is_zero()
    if f.degree == 1:
        # trivial action: the degree-0 coboundary map vanishes
        if not is_cocycle(f):
            raise CochainError("coboundary test expects a cocycle")
        return f.is_zero()
    if not is_cocycle(f):
        raise CochainError("coboundary test expects a cocycle")
    elim = get_elimination(f.group, f.degree)
    return elim.solvable(_bockstein_vector(f))


def coboundary_primitive(f: Cochain) -> Cochain:
    """A circle-valued g with dg = f, for f an exact cocycle.

    Strategy: one solve pulls the connecting cocycle z back to an integer
    cochain u with du = z exactly.  A modular journal only gives du = z up to
    a multiple M*w, but w is then an integer cocycle and the averaging
    homotopy produces the missing primitive of m*w, closing the gap.  Once u
    is exact, F - u is a rational cocycle and averaging divides it by |G|,
    again exactly: no rounding anywhere.
    """
    group = f.group
    n = f.degree
    if n == 0:
        raise CochainError("degree-0 cochains have no primitives")
    if n == 1 and f.is_zero():
        return zero_cochain(group, 0, "qz")
    if not is_cocycle(f):
        raise CochainError("primitive requested for a non-cocycle")
    elim = get_elimination(group, n)
    z = _bockstein_vector(f)
    x = elim.solve(z)
    if x is None:
        raise CochainError("cochain is not a coboundary")
    order = group.order
    u_cochain = from_int_vector(group, n, x)
    if elim.modulus:
        mod = elim.modulus
        gap = from_int_vector(group, n + 1, z) - coboundary(u_cochain)
        w_entries = {}
        for key, v in gap.entries.items():
            q, rem = divmod(v, mod)
            if rem:
                raise CochainError("modular solve left a non-divisible gap")
            w_entries[key] = q
        if w_entries:
            w = Cochain(group, n + 1, "int", w_entries)
            u_cochain = u_cochain + torsion_primitive(w).scale(mod // order)
    # rational cocycle F - u, kept as Fractions keyed by tuples
    rational: dict[tuple[int, ...], Fraction] = {}
    for key, val in f.entries.items():
        rational[key] = val.as_fraction()
    for key, val in u_cochain.entries.items():
        s = rational.get(key, Fraction(0)) - val
        if s:
            rational[key] = s
        else:
            rational.pop(key, None)
    # averaging: w(g_1..g_{n-1}) = sum_h c(g_1..g_{n-1}, h), d w = (-1)^n |G| c
    acc: dict[tuple[int, ...], Fraction] = {}
    for key, val in rational.items():
        head = key[:-1]
        if 0 in head:
            continue
        s = acc.get(head, Fraction(0)) + val
        if s:
            acc[head] = s
        else:
            acc.pop(head, None)
    scale = Fraction(1 if n % 2 == 0 else -1, order)
    entries = {}
    for key, val in acc.items():
        q = QZ.from_fraction(val * scale)
        if q:
            entries[key] = q
    g = Cochain(group, n - 1, "qz", entries)
    assert coboundary(g) == f, "primitive does not bound the cochain"
    return g
