import random

import pytest

from kmarc.gf2tower import make_tower
from kmarc.plane import Line, ProjPoint, apply_collineation, bilinear
from kmarc.arcs import point_set, t_secants
from kmarc.constructions import build_hr, recurrence_set, trace_kernel
from kmarc.autos import (ClosureOverflowError, collineation_order,
                         elation_group, elations_with_axis, group_closure,
                         group_closure_mod_elations, line_covector,
                         make_elation, make_named, make_psi, make_rho,
                         make_sigma_prime, make_tau, make_theta, orbits,
                         stabilizes, verify_translation_arc)


@pytest.fixture(scope="module")
def t42():
    return make_tower(4, 2)


@pytest.fixture(scope="module")
def h42(t42):
    return build_hr(t42)


@pytest.fixture(scope="module")
def l0():
    return Line.polar(1, 0)


# -- orders of the named maps -----------------------------------------

def test_named_map_orders(t42):
    assert collineation_order(make_theta(t42).collineation) == t42.r + 1
    assert collineation_order(make_psi(t42).collineation) == 2
    assert collineation_order(make_rho(t42).collineation) == t42.r - 1
    assert collineation_order(make_tau(t42, 1).collineation) == 2


def test_sigma_prime_power(t42):
    sp = make_sigma_prime(t42).collineation
    acc = sp
    for _ in range(t42.m - 1):
        acc = acc.compose(sp)
    assert acc.frob == 0


def test_make_named_dispatch(t42):
    assert make_named(t42, "theta").name == "theta"
    assert make_named(t42, "elation", a=0, b=0).collineation.is_identity()
    with pytest.raises(ValueError):
        make_named(t42, "nope")


# -- elations ---------------------------------------------------------

def test_elation_composition(t42):
    rng = random.Random(20)
    for _ in range(10):
        a, b, c, d = (rng.choice(t42.field_F()) for _ in range(4))
        e1 = make_elation(t42, a, b).collineation
        e2 = make_elation(t42, c, d).collineation
        e12 = make_elation(t42, a ^ c, b ^ d).collineation
        assert e1.compose(e2).matrix == e12.matrix


def test_elation_group_order_and_stabilization(t42, h42):
    group = elation_group(t42)
    assert len(group) == (t42.q // t42.r) ** 2
    for e in group:
        assert stabilizes(e, h42)


def test_non_kernel_elation_moves_arc(t42, h42):
    v0 = set(trace_kernel(t42))
    a = next(x for x in t42.field_F() if x not in v0)
    assert not stabilizes(make_elation(t42, a, 0), h42)


def test_elations_with_axis(t42, l0):
    elations = elations_with_axis(t42, l0)
    assert len(elations) == t42.q ** 2
    assert len({e.canonical_key() for e in elations}) == t42.q ** 2
    w = line_covector(t42, l0)
    # each elation fixes the axis pointwise
    axis_pts = [ProjPoint.affine(p) for p in range(t42.order)
                if bilinear(t42, l0.u, p) == l0.mu]
    for e in elations[:10]:
        assert all(apply_collineation(e, p) == p for p in axis_pts)
    assert w[2] == 0  # l0 passes through the origin


# -- actions on U and the secants -------------------------------------

def test_theta_transitive_on_u(t42):
    U = [ProjPoint.affine(u) for u in recurrence_set(t42).U]
    parts = orbits([make_theta(t42)], U)
    assert len(parts) == 1 and len(parts[0]) == t42.r + 1


def test_psi_orbits_on_u(t42):
    U = [ProjPoint.affine(u) for u in recurrence_set(t42).U]
    parts = orbits([make_psi(t42)], U)
    sizes = sorted(len(p) for p in parts)
    assert sizes == [1] + [2] * (t42.r // 2)


def test_rho_fixes_l0_and_conjugate_ray(t42, h42, l0):
    rho = make_rho(t42)
    secants = t_secants(h42, t42.q // t42.r)
    assert l0 in secants
    i_ray = Line.polar(t42.polar_direction(t42.i_elem), 0)
    assert i_ray in secants
    on = {sec: [p for p in h42.points if bilinear(t42, sec.u, p) == 0]
          for sec in secants}
    for sec in (l0, i_ray):
        img = {apply_collineation(rho.collineation, ProjPoint.affine(p)).value
               for p in on[sec]}
        assert img == set(on[sec])
    # the remaining r - 1 secants fall in a single orbit
    others = [s for s in secants if s not in (l0, i_ray)]
    pts = [ProjPoint.affine(p) for s in others for p in on[s]]
    cover = orbits([rho], pts)
    moved_secants = {t42.polar_direction(p.value) for p in cover[0]}
    assert len(moved_secants) == len(others)


def test_rho_fixes_origin(t42):
    rho = make_rho(t42).collineation
    assert apply_collineation(rho, ProjPoint.affine(0)) == ProjPoint.affine(0)


def test_conjugated_psi_is_elation(t42, l0):
    rho = make_rho(t42).collineation
    psi = make_psi(t42).collineation
    axis_keys = {e.canonical_key() for e in elations_with_axis(t42, l0)}
    conj = psi
    acc = rho
    for _ in range(t42.r - 2):
        conj = acc.compose(psi).compose(acc.inverse())
        # an involution fixing some t-secant pointwise
        assert collineation_order(conj) == 2
        acc = acc.compose(rho)
    assert psi.canonical_key() in axis_keys


def test_stabilizers_of_hr(t42, h42):
    for nm in (make_theta(t42), make_psi(t42), make_rho(t42),
               make_sigma_prime(t42)):
        assert stabilizes(nm, h42), nm.name


def test_tau_stabilizes_h2():
    t = make_tower(2, 1)
    H = build_hr(t)
    assert stabilizes(make_tau(t), H)


def test_rho_parameter_validation(t42):
    with pytest.raises(ValueError):
        make_rho(t42, gamma=t42.i_elem)  # outside F'
    gamma = make_rho(t42).params["gamma"]
    bad_s = next(x for x in t42.field_F()
                 if t42.rel_trace(x) != (gamma ^ 1))
    with pytest.raises(ValueError, match="trace"):
        make_rho(t42, gamma=gamma, s=bad_s)
    with pytest.raises(ValueError):
        make_tau(t42)  # h > 1 needs a trace target


# -- group closures ---------------------------------------------------

def test_cyclic_closures(t42):
    assert group_closure([make_theta(t42)]) == t42.r + 1
    assert group_closure([make_psi(t42)]) == 2
    assert group_closure([]) == 1


def test_elation_closure(t42):
    v0 = trace_kernel(t42)
    gens = [make_elation(t42, v0[1], 0), make_elation(t42, v0[2], 0),
            make_elation(t42, 0, v0[1]), make_elation(t42, v0[2], v0[2])]
    assert group_closure(gens) == (t42.q // t42.r) ** 2


def test_closure_cap(t42):
    with pytest.raises(ClosureOverflowError):
        group_closure([make_theta(t42)], cap=2)


def test_quotient_closure_small():
    t = make_tower(2, 1)
    gens = [make_theta(t), make_psi(t), make_tau(t)]
    assert group_closure_mod_elations(t, gens) == 6


def test_quotient_closure_m4(t42):
    b = recurrence_set(t42).b
    gens = [make_theta(t42), make_psi(t42), make_rho(t42),
            make_tau(t42, b)]
    assert group_closure_mod_elations(t42, gens) == 60


# -- translation property ---------------------------------------------

def test_translation_arc(t42, h42, l0):
    assert verify_translation_arc(h42, t42.q // t42.r, l0) == "translation"


def test_translation_arc_errors(t42, h42):
    not_secant = Line.polar(1, t42.field_F()[1])
    with pytest.raises(ValueError, match="t-secant"):
        verify_translation_arc(h42, t42.q // t42.r, not_secant)
    t = make_tower(2, 1)
    H = build_hr(t)
    with pytest.raises(ValueError, match="t > 2"):
        verify_translation_arc(H, 2, Line.polar(1, 0))


def test_e0b_fixes_l0_cuts(t42, h42, l0):
    v0 = trace_kernel(t42)
    on_l0 = {p for p in h42.points if bilinear(t42, 1, p) == 0}
    for b in v0:
        e = make_elation(t42, 0, b).collineation
        img = {apply_collineation(e, ProjPoint.affine(p)).value
               for p in on_l0}
        assert img == on_l0
