"""Groebner bases, normal forms and elimination ideals.

Buchberger's algorithm with the sugar selection strategy and the
Gebauer-Moeller installation of both Buchberger criteria.  Every heavy entry
point takes a :class:`Deadline`; running past it raises
:class:`~chowkit.errors.DeadlineExceeded` instead of hanging.

Projective workflows (ideals homogeneous in the blocks being eliminated) go
through :func:`projective_eliminate`, which dehomogenizes on coordinate
charts.  Plain :func:`eliminate` is affine elimination.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field, replace
from operator import add, sub
from typing import Sequence

from ._backend import ONE, ZERO
from .errors import DeadlineExceeded, NotPrincipal, PreconditionError, SpaceMismatch, ZeroIdeal
from .poly import MonomialOrder, Poly, VariableSpace, is_homogeneous_in, normalize_primitive


@dataclass(frozen=True)
class Deadline:
    max_basis_size: int = 5000
    max_total_degree: int = 60
    wall_budget: float = 60.0
    expires_at: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.max_basis_size <= 0 or self.max_total_degree <= 0 or self.wall_budget <= 0:
            raise PreconditionError("deadline limits must be positive")

    def arm(self) -> "Deadline":
        """Start the wall clock (idempotent: an armed deadline is returned as is)."""
        if self.expires_at is not None:
            return self
        return replace(self, expires_at=time.monotonic() + self.wall_budget)

    def out_of_time(self) -> bool:
        return self.expires_at is not None and time.monotonic() > self.expires_at


DEFAULT_DEADLINE = Deadline()


@dataclass(frozen=True)
class IdealGens:
    space: VariableSpace
    gens: tuple

    def __init__(self, space: VariableSpace, gens: Sequence[Poly] = (), grading: Sequence[str] = None):
        gens = tuple(g for g in gens if not g.is_zero())
        for g in gens:
            if g.space != space:
                raise SpaceMismatch(f"generator over {g.space}, ideal over {space}")
        if grading:
            for i, g in enumerate(gens):
                for block in grading:
                    if not is_homogeneous_in(g, [block]):
                        raise PreconditionError(f"generator {i + 1} not homogeneous in block {block!r}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "gens", gens)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return any(g.is_constant() for g in self.gens)

    def __add__(self, other):
        if isinstance(other, IdealGens):
            other = other.gens
        return IdealGens(self.space, self.gens + tuple(other))


@dataclass(frozen=True)
class GroebnerBasis:
    space: VariableSpace
    order: MonomialOrder
    basis: tuple
    reduced: bool = True

    def __len__(self):
        return len(self.basis)

    def is_unit(self):
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def leading_monomials(self):
        key = self.order.key(self.space)
        return [max(g.items(), key=lambda t: key(t[0]))[0] for g in self.basis]


# ----------------------------------------------------------------------------
# dict-level kernel

def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Kernel:
    """Shared state for one run: negated-key cache and deadline bookkeeping."""

    def __init__(self, key, dl: Deadline):
        self.key = key
        self.dl = dl
        self._nk = {}
        self.pairs = 0
        self.maxdeg = 0

    def nkey(self, m):
        k = self._nk.get(m)
        if k is None:
            k = self._nk[m] = tuple(-v for v in self.key(m))
        return k

    def lead(self, p):
        return min(p, key=self.nkey)

    def normal_form(self, p, reducers, tail=True):
        """Reduce dict ``p`` by monic ``reducers`` [(lm, poly)]."""
        p = dict(p)
        heap = [(self.nkey(m), m) for m in p]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = p.get(m)
            if c is None:
                continue
            for lm, g in reducers:
                if _divides(lm, m):
                    q = tuple(map(sub, m, lm))
                    for gm, gc in g.items():
                        t = tuple(map(add, gm, q))
                        old = p.get(t)
                        if old is None:
                            p[t] = -c * gc
                            heapq.heappush(heap, (self.nkey(t), t))
                        else:
                            v = old - c * gc
                            if v:
                                p[t] = v
                            else:
                                del p[t]
                    break
            else:
                del p[m]
                rem[m] = c
                if not tail:
                    rem.update(p)
                    return rem
        return rem

    def check(self, basis_size):
        if self.dl.out_of_time():
            raise DeadlineExceeded("wall budget", self.pairs, self.maxdeg, basis_size)
        if basis_size > self.dl.max_basis_size:
            raise DeadlineExceeded("basis size", self.pairs, self.maxdeg, basis_size)


def _monic(p, lm):
    c = p[lm]
    if c == 1:
        return p
    inv = ONE / c
    return {m: v * inv for m, v in p.items()}


def _groebner(polys, key, dl: Deadline):
    """Reduced monic Groebner basis of dict polynomials (sorted by leading monomial)."""
    k = _Kernel(key, dl)
    polys = [p for p in polys if p]
    if not polys:
        return []
    nv = len(next(iter(polys[0])))
    unit = (0,) * nv
    for p in polys:
        if len(p) == 1 and unit in p:
            return [{unit: ONE}]

    basis = []  # index -> (lm, poly, sugar)
    active = []  # indices in the current basis
    pairs = []

    def reducers():
        return [(basis[i][0], basis[i][1]) for i in active]

    def update(h):
        nonlocal active, pairs
        lmh = basis[h][0]
        cands = list(active)
        lcms = {g: _lcm(lmh, basis[g][0]) for g in cands}
        kept = []
        for idx, g in enumerate(cands):
            if _coprime(lmh, basis[g][0]):
                kept.append(g)
                continue
            lg = lcms[g]
            others = cands[idx + 1:] + kept
            if not any(_divides(lcms[o], lg) for o in others if o != g):
                kept.append(g)
        new_pairs = [g for g in kept if not _coprime(lmh, basis[g][0])]
        filtered = []
        for pr in pairs:
            _, _, i, j, lij = pr
            if (
                _divides(lmh, lij)
                and _lcm(basis[i][0], lmh) != lij
                and _lcm(basis[j][0], lmh) != lij
            ):
                continue
            filtered.append(pr)
        for g in new_pairs:
            lij = lcms[g]
            filtered.append((_pair_sugar(g, h, lij), key(lij), g, h, lij))
        pairs = filtered
        active = [g for g in active if not _divides(lmh, basis[g][0])] + [h]

    def _pair_sugar(i, j, lij):
        d = sum(lij)
        return max(basis[i][2] + d - sum(basis[i][0]), basis[j][2] + d - sum(basis[j][0]))

    def add_poly(p, sugar):
        lm = k.lead(p)
        p = _monic(p, lm)
        deg = max(sum(m) for m in p)
        k.maxdeg = max(k.maxdeg, deg)
        if deg > dl.max_total_degree:
            raise DeadlineExceeded("total degree", k.pairs, k.maxdeg, len(active))
        basis.append((lm, p, sugar))
        update(len(basis) - 1)

    for p in sorted(polys, key=lambda p: (max(sum(m) for m in p), k.nkey(k.lead(p)))):
        h = k.normal_form(p, reducers())
        if h:
            if len(h) == 1 and unit in h:
                return [{unit: ONE}]
            add_poly(h, max(sum(m) for m in p))
        k.check(len(active))

    while pairs:
        k.check(len(active))
        best = min(range(len(pairs)), key=pairs.__getitem__)
        sugar, _, i, j, lij = pairs.pop(best)
        k.pairs += 1
        lmi, fi, _ = basis[i]
        lmj, fj, _ = basis[j]
        qi = tuple(map(sub, lij, lmi))
        qj = tuple(map(sub, lij, lmj))
        s = {}
        for m, c in fi.items():
            s[tuple(map(add, m, qi))] = c
        for m, c in fj.items():
            t = tuple(map(add, m, qj))
            v = s.get(t, ZERO) - c
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        if not s:
            continue
        h = k.normal_form(s, reducers())
        if h:
            if len(h) == 1 and unit in h:
                return [{unit: ONE}]
            add_poly(h, sugar)

    # interreduce: the active set is minimal; reduce tails.
    final = []
    for i in active:
        lm, p, _ = basis[i]
        others = [(basis[j][0], basis[j][1]) for j in active if j != i]
        tail = dict(p)
        del tail[lm]
        red = k.normal_form(tail, others)
        red[lm] = ONE
        final.append((lm, red))
    final.sort(key=lambda t: k.nkey(t[0]), reverse=True)
    return [p for _, p in final]


# ----------------------------------------------------------------------------
# public API

def _check_space(p: Poly, space: VariableSpace):
    if p.space != space:
        raise SpaceMismatch(f"{p.space} vs {space}")


def buchberger(ideal: IdealGens, order: MonomialOrder, dl: Deadline = DEFAULT_DEADLINE) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order`` (monic, sorted ascending)."""
    dl = dl.arm()
    key = order.key(ideal.space)
    dicts = [dict(g.items()) for g in ideal.gens]
    basis = _groebner(dicts, key, dl)
    polys = tuple(Poly(ideal.space, p, _trusted=True) for p in basis)
    return GroebnerBasis(ideal.space, order, polys, True)


def reduce(p: Poly, gb: GroebnerBasis) -> Poly:
    """Normal form of ``p`` modulo ``gb``; zero iff ``p`` lies in the ideal."""
    _check_space(p, gb.space)
    if p.is_zero():
        return p
    key = gb.order.key(gb.space)
    k = _Kernel(key, DEFAULT_DEADLINE)
    reducers = []
    for g in gb.basis:
        d = dict(g.items())
        lm = k.lead(d)
        reducers.append((lm, _monic(d, lm)))
    return Poly(gb.space, k.normal_form(dict(p.items()), reducers), _trusted=True)


def in_ideal(p: Poly, gb: GroebnerBasis) -> bool:
    return reduce(p, gb).is_zero()


def eliminate(ideal: IdealGens, drop_blocks: Sequence[str], dl: Deadline = DEFAULT_DEADLINE) -> IdealGens:
    """Generators of the elimination ideal, returned over the restricted space."""
    space = ideal.space
    for b in drop_blocks:
        if b not in space.offsets:
            raise PreconditionError(f"cannot drop unknown block {b!r}")
    order = MonomialOrder.block_elimination(list(drop_blocks))
    gb = buchberger(ideal, order, dl)
    target = space.without(drop_blocks)
    kept = [g for g in gb.basis if not any(g.involves_block(b) for b in drop_blocks)]
    return IdealGens(target, [normalize_primitive(g.transfer(target)) for g in kept])


def principal_generator(ideal: IdealGens, order: MonomialOrder = None, dl: Deadline = DEFAULT_DEADLINE) -> Poly:
    """The generator of a principal ideal, primitive-normalized."""
    order = order or MonomialOrder.grevlex()
    gb = buchberger(ideal, order, dl)
    if not gb.basis:
        raise ZeroIdeal("zero ideal has no principal generator", 0)
    if len(gb.basis) != 1:
        raise NotPrincipal(f"not principal ({len(gb.basis)} generators)", len(gb.basis))
    return normalize_primitive(gb.basis[0])


def intersect(a: IdealGens, b: IdealGens, dl: Deadline = DEFAULT_DEADLINE) -> IdealGens:
    """Ideal intersection via ``t*a + (1-t)*b`` and elimination of ``t``."""
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space} vs {b.space}")
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    if a.is_zero() or b.is_zero():
        return IdealGens(a.space, [])
    big = a.space.extended([("_t", 1)])
    t = Poly.var(big, "_t0")
    gens = [t * g.transfer(big) for g in a.gens] + [(1 - t) * g.transfer(big) for g in b.gens]
    elim = eliminate(IdealGens(big, gens), ["_t"], dl)
    return IdealGens(a.space, [g.transfer(a.space) for g in elim.gens])


def _chart_slots(space: VariableSpace, blocks: Sequence[str]):
    return itertools.product(*[range(space.size(b)) for b in blocks])


def dehomogenize(ideal: IdealGens, chart: dict) -> IdealGens:
    """Set ``block_slot = 1`` for each (block -> slot) in ``chart``."""
    values = {ideal.space.var_index(b, s): 1 for b, s in chart.items()}
    return IdealGens(ideal.space, [g.evaluate(values) for g in ideal.gens])


def projective_eliminate(
    ideal: IdealGens,
    drop_blocks: Sequence[str],
    dl: Deadline = DEFAULT_DEADLINE,
    charts: str = "all",
) -> IdealGens:
    """Eliminate blocks in which ``ideal`` is homogeneous, as projective factors.

    Computes ``(I : m^inf) ∩ k[rest]`` where ``m`` is the product of the
    irrelevant ideals of ``drop_blocks``, as the intersection over coordinate
    charts.  ``charts="first"`` stops at the first chart whose eliminant is a
    proper ideal, which is exact whenever the saturated ideal is prime.
    """
    dl = dl.arm()
    for i, g in enumerate(ideal.gens):
        for b in drop_blocks:
            if not is_homogeneous_in(g, [b]):
                raise PreconditionError(f"generator {i + 1} not homogeneous in block {b!r}")
    target = ideal.space.without(drop_blocks)
    acc = None
    for slots in _chart_slots(ideal.space, drop_blocks):
        local = dehomogenize(ideal, dict(zip(drop_blocks, slots)))
        elim = eliminate(local, drop_blocks, dl)
        if elim.is_unit():
            continue
        if charts == "first":
            return elim
        acc = elim if acc is None else intersect(acc, elim, dl)
        if acc.is_zero():
            return acc
    if acc is None:
        return IdealGens(target, [Poly.constant(target, 1)])
    if len(acc.gens) > 1:
        gb = buchberger(acc, MonomialOrder.grevlex(), dl)
        acc = IdealGens(target, [normalize_primitive(g) for g in gb.basis])
    return acc


def has_projective_solution(ideal: IdealGens, blocks: Sequence[str], dl: Deadline = DEFAULT_DEADLINE) -> bool:
    """True iff the multihomogeneous ideal has a zero with every block nonzero."""
    dl = dl.arm()
    for slots in _chart_slots(ideal.space, blocks):
        local = dehomogenize(ideal, dict(zip(blocks, slots)))
        if not buchberger(local, MonomialOrder.grevlex(), dl).is_unit():
            return True
    return False


def quotient_dimension(gb: GroebnerBasis, variables: Sequence[int] = None):
    """Number of standard monomials, or ``None`` if the quotient is infinite.

    ``variables`` restricts the count to those variable indices; the others
    must not occur in the basis.
    """
    nv = gb.space.total_vars
    variables = list(range(nv)) if variables is None else list(variables)
    if gb.is_unit():
        return 0
    lms = gb.leading_monomials()
    for v in variables:
        if not any(m[v] and sum(m) == m[v] for m in lms):
            return None
    count = 0
    seen = {(0,) * nv}
    frontier = [(0,) * nv]
    while frontier:
        nxt = []
        for m in frontier:
            count += 1
            for v in variables:
                e = list(m)
                e[v] += 1
                e = tuple(e)
                if e in seen or any(_divides(l, e) for l in lms):
                    continue
                seen.add(e)
                nxt.append(e)
        frontier = nxt
    return count


def same_ideal(a: IdealGens, b: IdealGens, dl: Deadline = DEFAULT_DEADLINE) -> bool:
    """Mutual membership of generators (order independent)."""
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space} vs {b.space}")
    order = MonomialOrder.grevlex()
    ga = buchberger(a, order, dl)
    gb = buchberger(b, order, dl)
    return all(in_ideal(g, ga) for g in b.gens) and all(in_ideal(g, gb) for g in a.gens)


def random_linear_form(space: VariableSpace, block: str, rng, bound: int = 20) -> Poly:
    coeffs = [rng.randint(-bound, bound) for _ in range(space.size(block))]
    if not any(coeffs):
        coeffs[0] = 1
    return Poly.linear_form(space, block, coeffs)


def generic_slice_count(
    ideal: IdealGens,
    cut_block: str,
    n_cuts: int,
    chart_blocks: Sequence[str],
    rng,
    dl: Deadline = DEFAULT_DEADLINE,
):
    """Length of ``V(ideal)`` cut by ``n_cuts`` random hyperplanes in ``cut_block``.

    One random affine chart ``l(block) = 1`` per entry of ``chart_blocks``.
    Returns the number of points counted with multiplicity, or ``None`` when
    the slice is positive dimensional.
    """
    gens = list(ideal.gens)
    for _ in range(n_cuts):
        gens.append(random_linear_form(ideal.space, cut_block, rng))
    for b in chart_blocks:
        gens.append(random_linear_form(ideal.space, b, rng) - 1)
    gb = buchberger(IdealGens(ideal.space, gens), MonomialOrder.grevlex(), dl)
    return quotient_dimension(gb)
