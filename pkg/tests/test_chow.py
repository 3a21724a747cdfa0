import itertools
import random
from fractions import Fraction

import pytest

from chowkit.chow import (
    ChowForm,
    Cycle,
    chow_coefficient_monomials,
    chow_form_component,
    chow_form_cycle,
    chow_membership_equations,
    degree_by_sections,
    dual_space,
    linear_span_ideal,
    meets,
    meets_by_solving,
    phi,
    CycleComponent,
)
from chowkit.errors import InstanceTooLarge, NotPrincipal, PreconditionError
from chowkit.poly import Poly, format_poly, normalize_primitive, parse_poly
from conftest import component, ideal, rational_point, space
from flags import point_on_conic, point_on_line, point_on_point, sample_flags
from test_groebner import _det

POINT = component(1, 0, "3*x0 - 2*x1")
LINE = component(3, 1, "x2", "x3")
CONIC = component(2, 1, "x0*x2 - x1^2")
TWISTED_CUBIC = component(3, 1, "x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")


def linear_form_of_point(p, sp, block="u0"):
    return normalize_primitive(Poly.linear_form(sp, block, p))


def test_point_in_p1():
    F = chow_form_component(component(1, 0, "x1"))
    assert format_poly(F.form) == "u00" and F.k == 1


def test_line_matches_determinant():
    F = chow_form_component(LINE)
    assert format_poly(F.form) == "u00*u11 - u01*u10"
    sp = F.form.space
    # Pluecker oracle: span of e0, e1 -> det of u_i(e_j)
    u = [[Poly.var(sp, f"u{i}{j}") for j in range(2)] for i in range(2)]
    assert F.form == normalize_primitive(_det(u))


def test_random_plane_in_p3_matches_pluecker():
    rng = random.Random(7)
    pts = [rational_point(rng, 3) for _ in range(3)]
    Z = CycleComponent(3, 2, linear_span_ideal(pts, 3))
    F = chow_form_component(Z)
    sp = F.form.space
    rows = [[Poly.linear_form(sp, f"u{i}", p) for p in pts] for i in range(3)]
    assert F.form == normalize_primitive(_det(rows))


def test_conic_matches_sylvester_resultant():
    F = chow_form_component(CONIC)
    assert F.k == 2
    sp = F.form.space
    # u_i restricted to (s^2, st, t^2) is the binary quadric u_i0 s^2 + u_i1 st + u_i2 t^2
    a = [Poly.var(sp, f"u0{j}") for j in range(3)]
    b = [Poly.var(sp, f"u1{j}") for j in range(3)]
    z = Poly.zero(sp)
    syl = [[a[0], a[1], a[2], z], [z, a[0], a[1], a[2]], [b[0], b[1], b[2], z], [z, b[0], b[1], b[2]]]
    assert F.form == normalize_primitive(_det(syl))


def test_twisted_cubic_degree_law():
    F = chow_form_component(TWISTED_CUBIC)
    assert F.k == 3 == degree_by_sections(TWISTED_CUBIC)


def test_degree_by_sections_examples():
    assert degree_by_sections(LINE) == 1
    assert degree_by_sections(CONIC) == 2
    assert degree_by_sections(component(2, 1, "x0^3 + x1^3 + x2^3")) == 3


def test_wrong_dimension_is_rejected():
    with pytest.raises((NotPrincipal, PreconditionError)):
        chow_form_component(component(3, 1, "x3"))  # a plane declared as a curve


def test_component_validation():
    with pytest.raises(PreconditionError):
        component(2, 1, "x0*x2 - x1")
    with pytest.raises(PreconditionError):
        component(2, 2, "x0")


@pytest.mark.parametrize("seed", range(20))
def test_points_give_linear_forms(seed):
    rng = random.Random(seed)
    p = rational_point(rng, 3)
    Z = CycleComponent(3, 0, linear_span_ideal([p], 3))
    F = chow_form_component(Z)
    assert F.form == linear_form_of_point(p, F.form.space)


def test_product_formula_two_points():
    p, q = [1, 0, 0], [0, 1, 2]
    Zp = CycleComponent(2, 0, linear_span_ideal([p], 2))
    Zq = CycleComponent(2, 0, linear_span_ideal([q], 2))
    F = chow_form_cycle(Cycle([Zp, Zq]))
    sp = F.form.space
    expected = normalize_primitive(Poly.linear_form(sp, "u0", p) * Poly.linear_form(sp, "u0", q))
    assert F.form == expected and F.k == 2
    assert format_poly(F.form) == "u00*u01 + 2*u00*u02"


def test_multiplicity_power():
    p = [1, -2, 3]
    Z = CycleComponent(2, 0, linear_span_ideal([p], 2), multiplicity=3)
    F = chow_form_cycle(Cycle([Z]))
    assert F.k == 3
    assert F.form == normalize_primitive(Poly.linear_form(F.form.space, "u0", p) ** 3)


def test_single_component_cycle_equals_component():
    assert chow_form_cycle(Cycle([CONIC])).form == chow_form_component(CONIC).form


def test_product_formula_curves():
    line = component(2, 1, "x2")
    F = chow_form_cycle(Cycle([CONIC, line]))
    G = normalize_primitive(chow_form_component(CONIC).form * chow_form_component(line).form)
    assert F.form == G and F.k == 3


def test_cycle_rejects_mixed_dimensions():
    with pytest.raises(PreconditionError):
        Cycle([LINE, component(3, 0, "x1", "x2", "x3")])


def test_meets_examples():
    F = chow_form_component(component(1, 0, "x1"))
    assert meets(F, [[0, 1]])
    assert not meets(F, [[1, 0]])
    C = chow_form_component(CONIC)
    # two independent forms vanishing at (1, 1, 1)
    assert meets(C, [[1, -1, 0], [0, 1, -1]])
    with pytest.raises(PreconditionError):
        meets(C, [[1, 0, 0]])
    with pytest.raises(PreconditionError):
        meets(C, [[0, 0, 0], [1, 0, 0]])


@pytest.mark.parametrize(
    "Z,sampler",
    [(POINT, point_on_point), (LINE, point_on_line), (CONIC, point_on_conic)],
    ids=["point", "line", "conic"],
)
def test_meets_agrees_with_solving(Z, sampler):
    rng = random.Random(99)
    F = chow_form_component(Z)
    hits = 0
    for _ in range(30):
        flags = sample_flags(rng, Z.dim_n, Z.ambient_r, sampler)
        got = meets(F, flags)
        assert got == meets_by_solving(Z, flags)
        hits += got
    assert 0 < hits < 30


def test_linear_subspace_block_symmetry():
    F = chow_form_component(LINE).form
    swapped = F.transfer(F.space, {"u0": "u1", "u1": "u0"})
    assert swapped == -F
    rng = random.Random(3)
    for _ in range(10):
        flags = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(2)]
        if all(any(f) for f in flags):
            Fc = ChowForm(1, 1, 3, F)
            assert meets(Fc, flags) == meets(Fc, flags[::-1])


def test_plane_three_block_symmetry():
    rng = random.Random(11)
    pts = [rational_point(rng, 3) for _ in range(3)]
    F = chow_form_component(CycleComponent(3, 2, linear_span_ideal(pts, 3))).form
    for perm in itertools.permutations(range(3)):
        G = F.transfer(F.space, {f"u{i}": f"u{j}" for i, j in enumerate(perm)})
        assert G == F or G == -F


def test_phi_examples():
    assert phi(0, 1, 1) == 1
    assert phi(1, 1, 1) == 3
    assert phi(1, 2, 2) == 35
    with pytest.raises(PreconditionError):
        phi(1, 0, 1)


@pytest.mark.parametrize("n,k,r", [(n, k, r) for n in range(3) for k in range(1, 4) for r in range(1, 4)])
def test_phi_brute_force(n, k, r):
    block = [m for m in itertools.product(range(k + 1), repeat=r + 1) if sum(m) == k]
    assert phi(n, k, r) == len(block) ** (n + 1) - 1
    assert len(chow_coefficient_monomials(n, k, r)) == phi(n, k, r) + 1


def test_membership_point_anywhere():
    assert chow_membership_equations(0, 1, 1) == []


def test_membership_fixed_point():
    S = ideal(space("x:2"), "x1")
    eqs = chow_membership_equations(0, 1, 1, S)
    assert [format_poly(e) for e in eqs] == ["c1"]


def test_membership_binary_quadrics_split():
    assert chow_membership_equations(0, 2, 1) == []


def test_membership_degenerate_conics():
    eqs = chow_membership_equations(0, 2, 2)
    assert len(eqs) == 1
    c = eqs[0]
    sp = c.space
    cs = [Poly.var(sp, f"c{i}") for i in range(6)]
    # u0^2, u0u1, u0u2, u1^2, u1u2, u2^2: symmetric matrix determinant
    half = Fraction(1, 2)
    m = [
        [cs[0], cs[1].scale(half), cs[2].scale(half)],
        [cs[1].scale(half), cs[3], cs[4].scale(half)],
        [cs[2].scale(half), cs[4].scale(half), cs[5]],
    ]
    assert c == normalize_primitive(_det(m))


def test_membership_instance_cap():
    with pytest.raises(InstanceTooLarge):
        chow_membership_equations(0, 4, 2)
