"""Cycles in projective space and their associated (Chow) forms.

A component ``Z`` of dimension ``n`` in ``P^r`` has a form ``F_Z(u_0..u_n)``,
of degree ``deg Z`` in each dual block ``u_i``, vanishing exactly when the
linear space ``u_0(x) = ... = u_n(x) = 0`` meets ``Z``.  It is computed by
eliminating ``x`` from the incidence ideal ``I(Z) + <u_i . x>``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import InstanceTooLarge, NotPrincipal, PreconditionError, UnstableCount
from .groebner import (
    DEFAULT_DEADLINE,
    Deadline,
    IdealGens,
    generic_slice_count,
    has_projective_solution,
    principal_generator,
    projective_eliminate,
)
from .poly import Poly, VariableSpace, is_homogeneous_in, multidegree, normalize_primitive

DEFAULT_SEED = 20240607


def dual_space(n: int, r: int, prefix: str = "u") -> VariableSpace:
    return VariableSpace([(f"{prefix}{i}", r + 1) for i in range(n + 1)])


def point_space(r: int, block: str = "x") -> VariableSpace:
    return VariableSpace([(block, r + 1)])


@dataclass(frozen=True)
class CycleComponent:
    ambient_r: int
    dim_n: int
    ideal: IdealGens
    multiplicity: int = 1

    def __post_init__(self):
        if not 0 <= self.dim_n < self.ambient_r:
            raise PreconditionError(f"need 0 <= dim {self.dim_n} < ambient {self.ambient_r}")
        if self.multiplicity < 1:
            raise PreconditionError("multiplicity must be positive")
        if self.ideal.space != point_space(self.ambient_r):
            raise PreconditionError(f"component ideal must live in one block x of size {self.ambient_r + 1}")
        for i, g in enumerate(self.ideal.gens):
            if not is_homogeneous_in(g, ["x"]):
                raise PreconditionError(f"generator {i + 1} not homogeneous")


@dataclass(frozen=True)
class Cycle:
    components: tuple

    def __init__(self, components: Sequence[CycleComponent]):
        components = tuple(components)
        if not components:
            raise PreconditionError("a cycle needs at least one component")
        shapes = {(c.ambient_r, c.dim_n) for c in components}
        if len(shapes) != 1:
            raise PreconditionError(f"components disagree on (ambient, dim): {sorted(shapes)}")
        object.__setattr__(self, "components", components)

    @property
    def ambient_r(self):
        return self.components[0].ambient_r

    @property
    def dim_n(self):
        return self.components[0].dim_n


@dataclass(frozen=True)
class ChowForm:
    n: int
    k: int
    r: int
    form: Poly

    def __post_init__(self):
        degs = multidegree(self.form)
        if degs != (self.k,) * (self.n + 1):
            raise PreconditionError(f"Chow form multidegree {degs} != {(self.k,) * (self.n + 1)}")


def linear_span_ideal(points: Sequence[Sequence], r: int) -> IdealGens:
    """Ideal of the linear span of the given points of ``P^r`` (rational entries)."""
    from fractions import Fraction

    rows = [[Fraction(v) for v in p] for p in points]
    # kernel of the point matrix = linear forms vanishing on the span
    m = [row[:] for row in rows]
    pivots = []
    rank = 0
    for col in range(r + 1):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    space = point_space(r)
    gens = []
    for free in (c for c in range(r + 1) if c not in pivots):
        vec = [Fraction(0)] * (r + 1)
        vec[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -m[row][free]
        gens.append(normalize_primitive(Poly.linear_form(space, "x", vec)))
    return IdealGens(space, gens)


def _incidence(Z: CycleComponent):
    n, r = Z.dim_n, Z.ambient_r
    space = VariableSpace([("x", r + 1)] + [(f"u{i}", r + 1) for i in range(n + 1)])
    gens = [g.transfer(space) for g in Z.ideal.gens]
    for i in range(n + 1):
        gens.append(
            sum(
                (Poly.var(space, f"u{i}{j}") * Poly.var(space, f"x{j}") for j in range(r + 1)),
                Poly.zero(space),
            )
        )
    return IdealGens(space, gens)


def degree_by_sections(Z: CycleComponent, dl: Deadline = DEFAULT_DEADLINE, seed: int = DEFAULT_SEED, trials: int = 2) -> int:
    """``deg Z`` as the length of ``Z`` cut by ``dim Z`` generic hyperplanes."""
    dl = dl.arm()
    rng = random.Random(seed)
    for _ in range(3):
        counts = [
            generic_slice_count(Z.ideal, "x", Z.dim_n, ["x"], rng, dl) for _ in range(trials)
        ]
        if counts[0] is None or counts[0] == 0:
            raise PreconditionError(f"dimension of the component is not {Z.dim_n}")
        if len(set(counts)) == 1:
            return counts[0]
    raise UnstableCount(f"generic section counts disagree: {counts}")


def chow_form_component(Z: CycleComponent, dl: Deadline = DEFAULT_DEADLINE, seed: int = DEFAULT_SEED) -> ChowForm:
    """Associated form of an irreducible component (multiplicity ignored)."""
    dl = dl.arm()
    elim = projective_eliminate(_incidence(Z), ["x"], dl, charts="first")
    if elim.is_unit():
        raise PreconditionError("empty component: the ideal has no projective zeros")
    form = principal_generator(elim, dl=dl)
    degs = multidegree(form)
    if len(set(degs)) != 1:
        raise NotPrincipal(f"eliminant has unequal block degrees {degs}; wrong dimension?")
    k = degs[0]
    expected = degree_by_sections(Z, dl, seed)
    if expected != k:
        raise PreconditionError(f"degree law violated: block degree {k} but deg Z = {expected}")
    return ChowForm(Z.dim_n, k, Z.ambient_r, form)


def chow_form_cycle(Z: Cycle, dl: Deadline = DEFAULT_DEADLINE, seed: int = DEFAULT_SEED) -> ChowForm:
    """Product of component forms raised to their multiplicities."""
    dl = dl.arm()
    space = dual_space(Z.dim_n, Z.ambient_r)
    total = Poly.constant(space, 1)
    k = 0
    for comp in Z.components:
        cf = chow_form_component(comp, dl, seed)
        total = total * cf.form.transfer(space) ** comp.multiplicity
        k += cf.k * comp.multiplicity
    return ChowForm(Z.dim_n, k, Z.ambient_r, normalize_primitive(total))


def _check_flags(n, r, flags):
    if len(flags) != n + 1:
        raise PreconditionError(f"need {n + 1} dual vectors, got {len(flags)}")
    for f in flags:
        if len(f) != r + 1:
            raise PreconditionError(f"dual vector {list(f)} should have {r + 1} entries")
        if not any(f):
            raise PreconditionError("dual vector is zero")


def meets(F: ChowForm, flags: Sequence[Sequence]) -> bool:
    """True iff ``F`` vanishes at ``(u_0, ..., u_n) = flags``."""
    _check_flags(F.n, F.r, flags)
    point = [v for f in flags for v in f]
    return F.form.transfer(dual_space(F.n, F.r)).value(point) == 0


def meets_by_solving(Z: CycleComponent, flags: Sequence[Sequence], dl: Deadline = DEFAULT_DEADLINE) -> bool:
    """Independent check: does ``{u_i(x) = 0}`` have a projective zero on ``Z``?"""
    _check_flags(Z.dim_n, Z.ambient_r, flags)
    space = Z.ideal.space
    gens = list(Z.ideal.gens) + [Poly.linear_form(space, "x", f) for f in flags]
    return has_projective_solution(IdealGens(space, gens), ["x"], dl)


def phi(n: int, k: int, r: int) -> int:
    """Projective dimension of the space of forms of degree ``k`` in each of ``n+1`` dual blocks."""
    if n < 0 or k < 1 or r < 1:
        raise PreconditionError(f"phi needs n >= 0, k >= 1, r >= 1 (got {n}, {k}, {r})")
    return comb(k + r, r) ** (n + 1) - 1


def _compositions(k, parts):
    """Exponent vectors of degree ``k`` in ``parts`` variables, descending lex."""
    if parts == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def chow_coefficient_monomials(n: int, k: int, r: int) -> list[tuple]:
    """Monomials indexing the coefficients ``c_a`` of a generic form in ``u_0..u_n``."""
    per_block = list(_compositions(k, r + 1))
    return [sum(combo, ()) for combo in itertools.product(per_block, repeat=n + 1)]


def generic_form(n: int, k: int, r: int, space: VariableSpace, coeff_block: str = "c") -> Poly:
    mons = chow_coefficient_monomials(n, k, r)
    out = Poly.zero(space)
    u_idx = []
    for i in range(n + 1):
        sl = space.block_slice(f"u{i}")
        u_idx.extend(range(sl.start, sl.stop))
    for a, mono in enumerate(mons):
        exp = [0] * space.total_vars
        for idx, e in zip(u_idx, mono):
            exp[idx] = e
        exp[space.var_index(coeff_block, a)] = 1
        out = out + Poly(space, {tuple(exp): 1})
    return out


def chow_membership_equations(
    n: int,
    k: int,
    r: int,
    S: IdealGens = None,
    dl: Deadline = DEFAULT_DEADLINE,
    max_eliminated: int = 6,
) -> list[Poly]:
    """Resultant equations ``P(F, u_1..u_n)`` cutting out associated forms supported in ``S``.

    ``F`` has generic coefficients ``c_a`` indexed by
    :func:`chow_coefficient_monomials`.  The returned polynomials live over
    blocks ``c, u1..un``; an empty list means no condition.
    """
    if k * (r + 1) > max_eliminated:
        raise InstanceTooLarge(
            f"{k * (r + 1)} eliminated variables exceeds the cap of {max_eliminated}"
        )
    if S is not None and S.space != point_space(r):
        raise PreconditionError(f"support ideal must live in block x of size {r + 1}")
    dl = dl.arm()
    ncoef = comb(k + r, r) ** (n + 1)
    pairs = [(a, b) for a in range(r + 1) for b in range(a + 1, r + 1)]
    work = VariableSpace(
        [("c", ncoef)]
        + [(f"u{i}", r + 1) for i in range(n + 1)]
        + [(f"x{j}", r + 1) for j in range(1, k + 1)]
        + [(f"s{i}", len(pairs)) for i in range(n + 1)]
    )
    F = generic_form(n, k, r, work)
    gens = []

    # 1. F(u_0, ...) proportional to prod_j u_0(x_j) as forms in u_0
    prod = Poly.constant(work, 1)
    for j in range(1, k + 1):
        prod = prod * sum(
            (Poly.var(work, f"u0{a}") * Poly.var(work, f"x{j}{a}") for a in range(r + 1)),
            Poly.zero(work),
        )
    fc = F.coefficients(["u0"])
    pc = prod.coefficients(["u0"])
    keys = sorted(set(fc) | set(pc), reverse=True)
    zero = Poly.zero(work)
    for a, b in itertools.combinations(keys, 2):
        gens.append(fc.get(a, zero) * pc.get(b, zero) - fc.get(b, zero) * pc.get(a, zero))

    # 2. points on the support
    if S is not None:
        for j in range(1, k + 1):
            gens.extend(g.transfer(work, {"x": f"x{j}"}) for g in S.gens)

    # 3. u_i(x_j) = 0 for i >= 1
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            gens.append(
                sum(
                    (Poly.var(work, f"u{i}{a}") * Poly.var(work, f"x{j}{a}") for a in range(r + 1)),
                    zero,
                )
            )

    # 4. F vanishes on every flag through x_j: F(x.s_0, ..., x.s_n) = sum phi_alpha M_alpha(s)
    s_blocks = [f"s{i}" for i in range(n + 1)]
    for j in range(1, k + 1):
        images = {}
        for i in range(n + 1):
            for b in range(r + 1):
                comp = zero
                for a in range(r + 1):
                    if a == b:
                        continue
                    p = pairs.index((min(a, b), max(a, b)))
                    entry = Poly.var(work, f"s{i}{p}")
                    if a > b:
                        entry = -entry
                    comp = comp + Poly.var(work, f"x{j}{a}") * entry
                images[work.var_index(f"u{i}", b)] = comp
        for coeff in F.substitute(images).coefficients(s_blocks).values():
            gens.append(coeff)

    x_blocks = [f"x{j}" for j in range(1, k + 1)]
    final = VariableSpace(
        [(b, r + 1) for b in x_blocks] + [("c", ncoef)] + [(f"u{i}", r + 1) for i in range(1, n + 1)]
    )
    ideal = IdealGens(final, [normalize_primitive(g.transfer(final)) for g in gens if not g.is_zero()])
    elim = projective_eliminate(ideal, x_blocks, dl, charts="all")
    return list(elim.gens)


def coefficient_equations(polys: Sequence[Poly], blocks: Sequence[str]) -> list[Poly]:
    """Split each ``P = sum P_alpha M_alpha(u)`` into its coefficients ``P_alpha``."""
    out = []
    for p in polys:
        for _, c in sorted(p.coefficients(blocks).items(), reverse=True):
            out.append(normalize_primitive(c))
    return out
