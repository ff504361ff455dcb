import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricroots import exact, qdiv, roots, toric
from toricroots.errors import BadN, NotNTorsion, OutOfRange, SigmaTooSmall
from toricroots.qdiv import QDivisor
from toricroots.roots import Mode
from toricroots.toric import Fan

from oracles import a1_parametrization_eigensheaves, chart_oracle


def ints(D):
    return tuple(int(a) for a in D.coefficients)


# -- oracles ----------------------------------------------------------------


def brute_order(v, n):
    return next(i for i in range(1, n + 1) if all((i * x) % n == 0 for x in v))


# -- char_root_order / sublattice -------------------------------------------


@pytest.mark.parametrize(
    "v, n, expected",
    [((1, 0), 4, (4, 1)), ((2, 4), 6, (3, 2)), ((0, 0), 3, (1, 3))],
)
def test_char_root_order_examples(v, n, expected):
    assert roots.char_root_order(2, v, n) == expected


@given(st.lists(st.integers(-10, 10), min_size=1, max_size=3), st.integers(1, 12))
def test_char_root_order_brute(v, n):
    n_prime, d = roots.char_root_order(len(v), v, n)
    assert n_prime == brute_order(v, n)
    assert d * n_prime == n


def test_bad_n():
    with pytest.raises(BadN):
        roots.char_root_order(1, (1,), 0)
    with pytest.raises(BadN):
        roots.ramification_index(3, 0)


def test_root_sublattice_examples(a2, a1):
    assert roots.root_sublattice(a2, (1, 1), 2) == ((1, 1), (0, 2))
    B = roots.root_sublattice(a2, (2, 0), 2)
    assert exact.sublattice_index(B) == 1
    assert roots.root_sublattice(a1, (3,), 6) == ((2,),)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=2), st.integers(1, 8))
def test_root_sublattice_membership(v, n):
    fan = toric.affine_space(2)
    B = roots.root_sublattice(fan, v, n)
    assert exact.sublattice_index(B) == roots.char_root_order(2, v, n)[0]
    for e in itertools.product(range(-n, n + 1), repeat=2):
        inside = exact.solve_integer(exact.transpose(B), e) is not None
        assert inside == (exact.dot(v, e) % n == 0)


# -- ramification and pullback ----------------------------------------------


@pytest.mark.parametrize("ord_, n, e", [(4, 6, 3), (0, 5, 1), (7, 7, 1), (1, 9, 9), (-4, 6, 3)])
def test_ramification_index(ord_, n, e):
    assert roots.ramification_index(ord_, n) == e


def test_pullback_examples(a1, a2):
    assert ints(roots.pullback_divisor(a1, (2,), 3)) == (2,)
    assert ints(roots.pullback_divisor(a2, (1, 1), 2)) == (1, 1)
    assert ints(roots.pullback_divisor(a2, (6, -3), 3)) == (2, -1)


def test_pullback_a1_matches_parametrization(a1):
    # on k[s] with z = s^3, t = s^2 the function t has order 2 at s = 0
    assert ints(roots.pullback_divisor(a1, (2,), 3)) == (2,)


def test_component_fan_quadric(a2):
    cfan, basis = roots.component_fan(a2, (1, 1), 2)
    assert toric.class_group(cfan).torsion == (2,)
    assert toric.is_quasi_smooth(cfan) and not toric.is_smooth(cfan)


# -- normalized_char_root ---------------------------------------------------


def test_root_a2(a2):
    rd = roots.normalized_char_root(a2, (1, 1), 2)
    assert (rd.d, rd.n_prime) == (1, 2)
    assert exact.sublattice_index(rd.sublattice_basis) == 2
    assert rd.ramification == (2, 2)
    assert ints(rd.pullback) == (1, 1)
    assert [ints(s) for s in rd.eigensheaves] == [(0, 0), (0, 0)]
    assert rd.flat and rd.toroidal
    for i in range(2):
        coeffs, free = chart_oracle(a2, (1, 1), 2, i)
        assert coeffs == ints(rd.eigensheaves[i]) and free


def test_root_a1(a1):
    rd = roots.normalized_char_root(a1, (2,), 3)
    assert (rd.d, rd.n_prime, rd.ramification) == (1, 3, (3,))
    assert ints(rd.pullback) == (2,)
    assert [ints(s) for s in rd.eigensheaves] == [(0,), (0,), (1,)]
    assert [c[0] for c in map(ints, rd.eigensheaves)] == a1_parametrization_eigensheaves(2, 3)


def test_root_trivial_character(p2):
    rd = roots.normalized_char_root(p2, (0, 0), 2)
    assert (rd.d, rd.n_prime) == (2, 1)
    assert rd.ramification == (1, 1, 1)
    assert rd.component_fan == p2
    assert rd.sublattice_basis == exact.identity(2)


@pytest.mark.parametrize("a, n", [(1, 2), (1, 5), (2, 5), (3, 4), (5, 7), (-2, 5)])
def test_a1_roots_against_parametrization(a1, a, n):
    rd = roots.normalized_char_root(a1, (a,), n)
    assert [ints(s)[0] for s in rd.eigensheaves] == a1_parametrization_eigensheaves(a, n)


def test_non_flat_quadric_cone(quadric_cone):
    rd = roots.normalized_char_root(quadric_cone, (1, 1), 2)
    assert [ints(s) for s in rd.eigensheaves] == [(0, 0), (0, 1)]
    assert not rd.flat
    _, free = chart_oracle(quadric_cone, (1, 1), 2, 1)
    assert not free


def test_flat_quadric_cone(quadric_cone):
    rd = roots.normalized_char_root(quadric_cone, (1, 0), 2)
    assert rd.flat
    _, free = chart_oracle(quadric_cone, (1, 0), 2, 1)
    assert free


def test_non_simplicial_not_toroidal():
    fan = Fan(3, ((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)), ((0, 1, 2, 3),))
    assert not roots.normalized_char_root(fan, (1, 1, 1), 2).toroidal


@settings(max_examples=60, deadline=None)
@given(
    st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
    st.integers(1, 8),
)
def test_unit_invariance(v, w, n):
    fan = toric.projective_space(2)
    base = roots.normalized_char_root(fan, v, n)
    shifted = roots.normalized_char_root(fan, tuple(a + n * b for a, b in zip(v, w)), n)
    dw = toric.div_char(fan, w)
    for i in range(n):
        assert shifted.eigensheaves[i] == base.eigensheaves[i] + i * dw
    assert (shifted.d, shifted.n_prime, shifted.ramification, shifted.flat) == (
        base.d,
        base.n_prime,
        base.ramification,
        base.flat,
    )


def test_ramification_trivial_exactly_off_frac_support(p2):
    for v in itertools.product(range(-4, 5), repeat=2):
        for n in range(1, 7):
            D = F(1, n) * toric.div_char(p2, v)
            ram = [roots.ramification_index(o, n) for o in toric.pairings(p2, v)]
            assert {i for i, e in enumerate(ram) if e != 1} == qdiv.frac_support(D)


# -- epsilon and differential decompositions --------------------------------


@pytest.mark.parametrize("d, i, e", [(F(2), 5, 0), (F(1, 2), 1, 0), (F(1, 3), 1, 1), (F(1, 3), 2, 0), (F(1, 3), 0, 1)])
def test_epsilon(d, i, e):
    assert roots.epsilon(d, i) == e


def test_forms_example(a1):
    D = QDivisor.from_values(a1, ["1/2"])
    rows = roots.differential_decomposition(D, {0}, 2, Mode.FORMS)
    assert [(r.i, set(r.log_support), ints(r.twist)) for r in rows] == [(0, set(), (0,)), (1, {0}, (0,))]
    rows = roots.differential_decomposition(D, {0}, 2, Mode.FORMS_LOG)
    assert [set(r.log_support) for r in rows] == [{0}, {0}]


def test_forms_example_chart(a1):
    # On z = s^2: dz/z = 2 ds/s has a genuine log pole, while t * dz/z = 2 ds is regular.
    # In the eigenspace language: i = 0 forms pulled back are regular only without
    # log poles, i = 1 forms may carry a log pole along E.
    assert toric.log_form_membership((0,), [(1,)], (1,)) is toric.FormClass.LOG_POLE


def test_derivations_example(a1):
    D = QDivisor.from_values(a1, ["1/3"])
    rows = roots.differential_decomposition(D, {0}, 3, Mode.DERIVATIONS)
    assert [set(r.log_support) for r in rows] == [{0}, {0}, set()]


def test_decomposition_errors(a2, p1):
    D = QDivisor.from_values(a2, ["1/2", "1/3"])
    with pytest.raises(SigmaTooSmall):
        roots.differential_decomposition(D, {0}, 6, Mode.FORMS)
    with pytest.raises(NotNTorsion):
        roots.differential_decomposition(D, {0, 1}, 4, Mode.FORMS)
    with pytest.raises(NotNTorsion):
        roots.differential_decomposition(QDivisor.from_values(p1, ["1/2", 0]), {0}, 2, Mode.FORMS)
    with pytest.raises(OutOfRange):
        roots.differential_decomposition(D, {0, 1, 7}, 6, Mode.FORMS)


@settings(max_examples=80, deadline=None)
@given(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), st.integers(1, 9))
def test_decomposition_mode_consistency(v, n):
    fan = toric.affine_space(2)
    D = F(1, n) * toric.div_char(fan, v)
    sigma = qdiv.frac_support(D)
    a = roots.differential_decomposition(D, sigma, n, Mode.FORMS_LOG)
    b = roots.differential_decomposition(D, sigma, n, Mode.FORMS)
    c = roots.differential_decomposition(D, sigma, n, Mode.DERIVATIONS)
    d = roots.differential_decomposition(D, sigma, n, Mode.DERIVATIONS_LOG)
    assert [(r.twist, r.log_support) for r in a] == [(r.twist, r.log_support) for r in d]
    assert b[0].log_support == frozenset()
    assert c[0].log_support == qdiv.frac_support(D)
    for rows in (a, b, c, d):
        assert [r.twist for r in rows] == [qdiv.floor_div(i * D) for i in range(n)]


# -- codimension one model --------------------------------------------------


def test_codim1_examples():
    m = roots.codim1_model(6, 4)
    assert (m.g, m.n_prime, m.j, m.m_prime) == (2, 3, 2, 2)
    for n in range(1, 10):
        m = roots.codim1_model(n, 1)
        assert (m.g, m.n_prime, m.j) == (1, n, 1)
    m = roots.codim1_model(4, 0)
    assert (m.g, m.n_prime, m.j) == (4, 1, 1)


def test_codim1_decompose_examples():
    assert roots.codim1_decompose(roots.codim1_model(6, 4), 0) == (0, 0, 0)
    model = roots.codim1_model(4, 0)
    assert [roots.codim1_decompose(model, i) for i in range(4)] == [(0, i, 0) for i in range(4)]
    with pytest.raises(OutOfRange):
        roots.codim1_decompose(model, 4)


def test_codim1_exhaustive_small():
    model = roots.codim1_model(6, 4)
    for i in range(6):
        hits = [
            (a, b)
            for a in range(model.n_prime)
            for b in range(model.g)
            if (i - a * model.j) % model.n_prime == 0
            and ((i - a * model.j) // model.n_prime - b) % model.g == 0
        ]
        assert len(hits) == 1
        alpha, beta, gamma = roots.codim1_decompose(model, i)
        assert (alpha, beta) == hits[0]
        assert 4 * gamma + (2 * 4 // 6) * alpha + 2 * beta == (i * 4) // 6
        assert i == alpha * model.j + beta * model.n_prime + gamma * model.n


@given(st.integers(1, 40), st.integers(-40, 40))
def test_codim1_model_invariants(n, m):
    model = roots.codim1_model(n, m)
    g = math.gcd(n, m)
    assert model.g == g and n == g * model.n_prime and m == g * model.m_prime
    assert (model.j * m - g) % n == 0 and 1 <= model.j <= model.n_prime
