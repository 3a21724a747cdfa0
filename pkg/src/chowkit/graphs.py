"""Graph cycles of rational maps in ``P^N x P^M``.

* :func:`second_degree` counts the points of the graph over ``n`` generic
  hyperplanes of the target (``deg_2 = deg(map) * deg(image)``).
* :func:`pushforward_chow` builds the Chow form ``G`` of ``p_*(graph)`` and
  splits it as ``root^d``.
* :func:`compose` eliminates the middle factor of two correspondences.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ._backend import ONE, Q
from .chow import DEFAULT_SEED, ChowForm, dual_space
from .errors import NotPrincipal, PreconditionError, SpaceMismatch, UnstableCount
from .groebner import (
    DEFAULT_DEADLINE,
    Deadline,
    IdealGens,
    eliminate,
    generic_slice_count,
    principal_generator,
    projective_eliminate,
)
from .poly import (
    CANONICAL_ORDER,
    MonomialOrder,
    Poly,
    VariableSpace,
    is_homogeneous_in,
    multidegree,
    normalize_primitive,
)


def graph_space(N: int, M: int) -> VariableSpace:
    return VariableSpace([("x", N + 1), ("y", M + 1)])


@dataclass(frozen=True)
class GraphCycle:
    N: int
    M: int
    dim_n: int
    ideal: IdealGens
    segre_degree: int | None = None

    def __post_init__(self):
        if self.dim_n < 1:
            raise PreconditionError("graph dimension must be at least 1")
        if self.ideal.space != graph_space(self.N, self.M):
            raise SpaceMismatch(f"graph ideal must live over x:{self.N + 1} y:{self.M + 1}")
        bad = bihomogeneity_problems(self.ideal)
        if bad:
            raise PreconditionError(bad[0])


def bihomogeneity_problems(ideal: IdealGens) -> list[str]:
    return [
        f"generator {i + 1} not bihomogeneous"
        for i, g in enumerate(ideal.gens)
        if not (is_homogeneous_in(g, ["x"]) and is_homogeneous_in(g, ["y"]))
    ]


@dataclass(frozen=True)
class PushforwardResult:
    chow: ChowForm
    k: int
    d: int | None
    root: ChowForm | None
    note: str = ""

    @property
    def is_power(self) -> bool:
        return self.d is not None and self.d > 1


def second_degree(
    graph: GraphCycle,
    dl: Deadline = DEFAULT_DEADLINE,
    seed: int = DEFAULT_SEED,
    retries: int = 3,
) -> int:
    """Intersection number of the graph with ``n`` generic hyperplanes pulled back from ``P^M``."""
    dl = dl.arm()
    rng = random.Random(seed)
    seen = []
    for _ in range(retries):
        a = generic_slice_count(graph.ideal, "y", graph.dim_n, ["x", "y"], rng, dl)
        b = generic_slice_count(graph.ideal, "y", graph.dim_n, ["x", "y"], rng, dl)
        if a is None or b is None:
            raise PreconditionError("y-image lower-dimensional: generic slice is positive dimensional")
        if a == b:
            if a == 0:
                raise PreconditionError("y-image lower-dimensional: generic slice is empty")
            return a
        seen.append((a, b))
    raise UnstableCount(f"generic slice counts disagree after {retries} retries: {seen}")


def _divisors_desc(k):
    return [d for d in range(k, 0, -1) if k % d == 0]


def pushforward_chow(graph: GraphCycle, dl: Deadline = DEFAULT_DEADLINE, seed: int = DEFAULT_SEED) -> PushforwardResult:
    """Chow form of ``p_*(graph) = deg(map) * image`` and its largest power split."""
    dl = dl.arm()
    n, M = graph.dim_n, graph.M
    space = VariableSpace([("x", graph.N + 1), ("y", M + 1)] + [(f"v{i}", M + 1) for i in range(n + 1)])
    gens = [g.transfer(space) for g in graph.ideal.gens]
    for i in range(n + 1):
        gens.append(sum((Poly.var(space, f"v{i}{j}") * Poly.var(space, f"y{j}") for j in range(M + 1)), Poly.zero(space)))
    elim = projective_eliminate(IdealGens(space, gens), ["x", "y"], dl, charts="first")
    if elim.is_unit():
        raise PreconditionError("empty graph: the ideal has no zeros in P^N x P^M")
    try:
        image_form = principal_generator(elim, dl=dl)
    except NotPrincipal as exc:
        raise NotPrincipal(f"eliminant not principal: the y-image is not {n}-dimensional ({exc})", exc.basis_size) from exc
    degs = multidegree(image_form)
    if len(set(degs)) != 1:
        raise NotPrincipal(f"eliminant block degrees {degs} are unequal; the y-image is not {n}-dimensional")
    e = degs[0]
    k = second_degree(graph, dl, seed)
    if k % e:
        raise PreconditionError(f"deg_2 = {k} is not a multiple of the image degree {e}")
    G = normalize_primitive(image_form ** (k // e))
    vspace = dual_space(n, M, "v")
    G = G.transfer(vspace)
    chow = ChowForm(n, k, M, G)
    note = ""
    for d in _divisors_desc(k):
        root = dth_root(G, d)
        if root is not None:
            if d != k // e:
                note = f"largest uniform power {d} differs from deg_2/deg(image) = {k // e}; image may be reducible"
            return PushforwardResult(chow, k, d, ChowForm(n, k // d, M, root), note)
    raise AssertionError("d = 1 always succeeds")  # pragma: no cover


def dth_root(G: Poly, d: int, order: MonomialOrder = CANONICAL_ORDER) -> Poly | None:
    """Primitive ``H`` with ``normalize(H^d) == normalize(G)``, or ``None``.

    Leading-term root extraction followed by term-by-term recursion along
    ``order``; the candidate is confirmed by exact exponentiation.
    """
    if not isinstance(d, int) or d < 1:
        raise PreconditionError(f"root degree must be a positive int, got {d!r}")
    if G.is_zero():
        raise PreconditionError("d-th root of the zero polynomial")
    target = normalize_primitive(G, order)
    if d == 1:
        return target
    space = G.space
    key = order.key(space)
    lm, lc = target.leading_term(order)
    if any(e % d for e in lm):
        return None
    target = target.scale(ONE / lc)
    exps = list(target.items())
    max_exp = [max(m[i] for m, _ in exps) // d for i in range(space.total_vars)]
    min_deg = min(sum(m) for m, _ in exps)
    max_deg = max(sum(m) for m, _ in exps)
    lead = tuple(e // d for e in lm)
    H = {lead: ONE}
    lead_pow = Poly(space, {tuple(e * (d - 1) for e in lead): Q(d)}, _trusted=True)
    cap = 1
    for m in max_exp:
        cap *= m + 1
    for _ in range(cap + 1):
        residual = target - Poly(space, dict(H), _trusted=True) ** d
        if residual.is_zero():
            return normalize_primitive(Poly(space, H, _trusted=True), order)
        rm, rc = residual.leading_term(order)
        (dm, dc), = lead_pow.items()
        m = tuple(a - b for a, b in zip(rm, dm))
        if min(m) < 0 or any(a > b for a, b in zip(m, max_exp)):
            return None
        if sum(m) * d < min_deg or sum(m) * d > max_deg or key(m) >= key(lead):
            return None
        H[m] = H.get(m, 0) + rc / dc
    return None


def binary_power_quadrics(G: Poly, block: str) -> list:
    """Values of the 2x2 catalecticant minors of a binary form in ``block``.

    A binary form of degree ``d`` is the ``d``-th power of a linear form iff
    all these quadratic expressions in its coefficients vanish.
    """
    from math import comb

    sl = G.space.block_slice(block)
    if sl.stop - sl.start != 2:
        raise PreconditionError("binary forms only")
    d = G.total_degree()
    if any(sum(m) != d or any(m[:sl.start]) or any(m[sl.stop:]) for m, _ in G.items()):
        raise PreconditionError("expected a homogeneous binary form")
    coeffs = dict(G.items())
    g = []
    for i in range(d + 1):
        exp = [0] * G.space.total_vars
        exp[sl.start], exp[sl.start + 1] = d - i, i
        g.append(coeffs.get(tuple(exp), Q(0)) / comb(d, i))
    return [g[i] * g[j + 1] - g[i + 1] * g[j] for i in range(d) for j in range(i + 1, d)]


def compose(H: GraphCycle, G: GraphCycle, dl: Deadline = DEFAULT_DEADLINE) -> IdealGens:
    """Ideal over blocks ``x, z`` of the composite correspondence ``G o H``."""
    if H.M != G.N:
        raise SpaceMismatch(f"H lands in P^{H.M} but G starts in P^{G.N}")
    dl = dl.arm()
    space = VariableSpace([("x", H.N + 1), ("y", H.M + 1), ("z", G.M + 1)])
    gens = [g.transfer(space) for g in H.ideal.gens]
    gens += [g.transfer(space, {"x": "y", "y": "z"}) for g in G.ideal.gens]
    return projective_eliminate(IdealGens(space, gens), ["y"], dl, charts="all")


def as_graph(ideal: IdealGens, dim_n: int) -> GraphCycle:
    """Re-read an ideal over ``x, z`` (e.g. from :func:`compose`) as a graph over ``x, y``."""
    (xb, xs), (zb, zs) = ideal.space.blocks
    space = graph_space(xs - 1, zs - 1)
    gens = [g.transfer(space, {xb: "x", zb: "y"}) for g in ideal.gens]
    return GraphCycle(xs - 1, zs - 1, dim_n, IdealGens(space, gens))


def diagonal_graph(N: int, dim_n: int = None) -> GraphCycle:
    """Graph of the identity of ``P^N``: the 2x2 minors ``x_i y_j - x_j y_i``."""
    space = graph_space(N, N)
    gens = [
        Poly.var(space, f"x{i}") * Poly.var(space, f"y{j}") - Poly.var(space, f"x{j}") * Poly.var(space, f"y{i}")
        for i in range(N + 1)
        for j in range(i + 1, N + 1)
    ]
    return GraphCycle(N, N, N if dim_n is None else dim_n, IdealGens(space, gens))


def map_graph(N: int, images: Sequence[Poly], dl: Deadline = DEFAULT_DEADLINE) -> GraphCycle:
    """Graph of ``x -> [f_0(x) : ... : f_M(x)]`` for forms of equal degree over ``x:N+1``.

    The ideal is the kernel of ``y_i -> s * f_i(x)``, obtained by eliminating
    ``s``; it is prime, so base loci never add spurious components.
    """
    M = len(images) - 1
    if M < 1:
        raise PreconditionError("a map needs at least two image forms")
    src = VariableSpace([("x", N + 1)])
    degs = set()
    for f in images:
        if f.space != src:
            raise SpaceMismatch(f"image forms must live over x:{N + 1}")
        if f.is_zero() or not is_homogeneous_in(f, ["x"]):
            raise PreconditionError("image forms must be nonzero and homogeneous")
        degs.add(f.total_degree())
    if len(degs) != 1:
        raise PreconditionError(f"image forms have different degrees {sorted(degs)}")
    work = VariableSpace([("s", 1), ("x", N + 1), ("y", M + 1)])
    s_var = Poly.var(work, "s0")
    gens = [Poly.var(work, f"y{i}") - s_var * f.transfer(work) for i, f in enumerate(images)]
    elim = eliminate(IdealGens(work, gens), ["s"], dl)
    space = graph_space(N, M)
    return GraphCycle(N, M, N, IdealGens(space, [g.transfer(space) for g in elim.gens]))


def monomial_map_graph(N: int, images: Sequence[Sequence[int]], dl: Deadline = DEFAULT_DEADLINE) -> GraphCycle:
    """Graph of ``x -> [x^a_0 : ... : x^a_M]``; one exponent vector per image coordinate."""
    src = VariableSpace([("x", N + 1)])
    mons = []
    for exps in images:
        if len(exps) != N + 1:
            raise PreconditionError("each image monomial needs one exponent per source variable")
        mons.append(Poly(src, {tuple(exps): 1}))
    return map_graph(N, mons, dl)
