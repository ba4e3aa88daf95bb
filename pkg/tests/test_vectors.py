import itertools
import random

import pytest
from hypothesis import given, strategies as st

from iosub.automata import LinearSet, ParikhVector, SemilinearSet, parikh, regex_to_nfa
from iosub.errors import ArityMismatch, DimensionMismatch, NotExistentiallyLinear, UnknownDimension
from iosub.vectors import (
    ONE, Composed, DimClass, FromLinear, FunctionalVectorSet, Monomial, ScalarPolynomial,
    VectorFunction, classify_dimension, compose_sets, evaluate, from_semilinear, growth_witness,
    image_member_bounded, io_compose, is_existentially_linear, is_factored, is_i_linear,
    is_linear_representation, is_universally_linear, on, wtt,
)

X0, X1, X2 = Monomial.var(0), Monomial.var(1), Monomial.var(2)


def vf(dims, n, terms):
    return VectorFunction.build(dims, n, terms)


def pv(dims, *c):
    return ParikhVector(tuple(dims), c)


def two_plus_x():
    return from_semilinear(SemilinearSet(("a",), (LinearSet(pv("a", 2), (pv("a", 1),)),))).components[0]


SQUARE = vf("a", 1, {Monomial.var(0, 2): (1,)})
MIXED = vf("abc", 2, {Monomial.var(0, 2): (1, 0, 0), X1: (0, 1, 0), X0 * X1: (0, 0, 1)})


def nprime_function():
    f = two_plus_x()
    return io_compose(f, "a", f)


# -- monomials and polynomials ------------------------------------------------

def test_monomial_canonical():
    assert Monomial(((1, 1), (0, 2), (1, 1))).factors == ((0, 2), (1, 2))
    assert Monomial(((0, 0),)) == ONE
    assert str(X0 * X1) == "x0x1"


def test_polynomial_arithmetic():
    p = ScalarPolynomial({ONE: 2, X0: 1})
    q = ScalarPolynomial({ONE: 2, X1: 1})
    assert p * q == ScalarPolynomial({ONE: 4, X0: 2, X1: 2, X0 * X1: 1})
    assert (p + q).evaluate([1, 1]) == 6
    assert str(p) == "2 + x0"
    with pytest.raises(ValueError):
        ScalarPolynomial({ONE: -1})


# -- construction ---------------------------------------------------------------

def test_from_semilinear_examples():
    f = two_plus_x()
    assert f.term_map == {ONE: (2,), X0: (1,)}
    assert isinstance(f.provenance, FromLinear)
    assert from_semilinear(SemilinearSet(("a",), ())).components == ()
    (g,) = from_semilinear(parikh(regex_to_nfa("(a b | c)*"))).components
    assert g.term_map == {X0: (0, 0, 1), X1: (1, 1, 0)}


def test_invariants_checked():
    with pytest.raises(ArityMismatch):
        vf("a", 1, {X1: (1,)})
    with pytest.raises(DimensionMismatch):
        vf("ab", 1, [(X0, (1,))])
    with pytest.raises(DimensionMismatch):
        FunctionalVectorSet(("a", "b"), (two_plus_x(),))


def test_evaluate_examples():
    assert evaluate(SQUARE, [3]) == pv("a", 9)
    assert evaluate(vf("a", 0, {ONE: (4,)}), []) == pv("a", 4)
    assert evaluate(nprime_function(), [1, 0]) == pv("a", 6)
    with pytest.raises(ArityMismatch):
        evaluate(SQUARE, [1, 2])


def test_wtt_and_on_examples():
    f = two_plus_x()
    assert wtt(f, "a").terms == ()
    assert on(f, "a") == ScalarPolynomial({ONE: 2, X0: 1})
    g = vf("ab", 2, {X0 * X1: (1, 0), X1: (0, 1)})
    assert on(g, "b") == ScalarPolynomial({X1: 1})
    with pytest.raises(UnknownDimension):
        wtt(f, "z")


# -- composition ----------------------------------------------------------------

def test_io_compose_reproduces_composite_function():
    h = nprime_function()
    assert h.dims == ("a",)
    assert h.param_count == 2
    assert h.term_map == {ONE: (4,), X0: (2,), X1: (2,), X0 * X1: (1,)}
    assert isinstance(h.provenance, Composed) and is_factored(h.provenance)


def test_io_compose_zero_multiplier():
    f = vf("ab", 1, {ONE: (1, 0), X0: (2, 0)})
    g = vf("c", 1, {ONE: (5,)})
    h = io_compose(f, "b", g)
    assert h.dims == ("a", "b", "c")
    assert h.term_map == {ONE: (1, 0, 0), X0: (2, 0, 0)}


def test_io_compose_renames_dimension():
    f = vf("x", 1, {X0: (1,)})
    g = vf("t", 0, {ONE: (1,)})
    h = io_compose(f, "x", g)
    for a in range(4):
        assert evaluate(h, [a]).as_dict() == {"t": a, "x": 0}


def test_compose_sets_counts():
    e1 = FunctionalVectorSet(("a",), (two_plus_x(), SQUARE))
    e2 = FunctionalVectorSet(("a",), (two_plus_x(), SQUARE, vf("a", 0, {ONE: (1,)})))
    assert len(compose_sets(e1, "a", e2)) == 6
    assert len(compose_sets(e1, "a", FunctionalVectorSet(("a",), ()))) == 0
    with pytest.raises(UnknownDimension):
        compose_sets(e1, "q", e2)


# -- linearity ------------------------------------------------------------------

def test_i_linear_examples():
    assert not is_i_linear(SQUARE, 0)
    assert is_i_linear(MIXED, 1) and not is_i_linear(MIXED, 0)
    h = nprime_function()
    assert is_i_linear(h, 0) and is_i_linear(h, 1)
    with pytest.raises(ArityMismatch):
        is_i_linear(SQUARE, 1)


def test_existential_and_universal():
    assert not is_existentially_linear(SQUARE) and not is_universally_linear(SQUARE)
    assert is_existentially_linear(MIXED) and not is_universally_linear(MIXED)
    e = from_semilinear(parikh(regex_to_nfa("(a b | c)* a")))
    assert is_universally_linear(e)
    const = vf("a", 0, {ONE: (3,)})
    assert is_universally_linear(const) and not is_existentially_linear(const)


def test_linear_representation():
    assert all(is_linear_representation(f) for f in from_semilinear(parikh(regex_to_nfa("a (b | c)*"))).components)
    assert not is_linear_representation(nprime_function())
    assert is_linear_representation(vf("a", 0, {ONE: (4,)}))


def test_classify_examples():
    b = from_semilinear(parikh(regex_to_nfa("b"))).with_dims(("a", "b"))
    assert classify_dimension(b, "a") == DimClass.CONSTANT
    assert classify_dimension(from_semilinear(parikh(regex_to_nfa("a*"))), "a") == DimClass.LINEAR
    e = FunctionalVectorSet(("a",), (nprime_function(),))
    assert classify_dimension(e, "a") == DimClass.FUNCTIONAL
    with pytest.raises(UnknownDimension):
        classify_dimension(e, "b")


# -- growth -----------------------------------------------------------------------

def test_growth_witness_examples():
    w = growth_witness(FunctionalVectorSet(("a",), (nprime_function(),)))
    assert (w.K, w.A, w.component_index, w.param_index) == (4, 2, 0, 0)
    w = growth_witness(FunctionalVectorSet(("a",), (two_plus_x(),)))
    assert (w.K, w.A) == (2, 1)
    dummy = vf("ab", 1, {ONE: (1, 2)})
    w = growth_witness(FunctionalVectorSet(("a", "b"), (dummy,)))
    assert (w.K, w.A, w.degenerate) == (3, 0, True)


def test_growth_witness_zero_parameter_fallback():
    w = growth_witness(FunctionalVectorSet(("a",), (vf("a", 0, {ONE: (2,)}),)))
    assert (w.K, w.A, w.param_index, w.degenerate) == (2, 0, None, True)


def test_growth_witness_rejects_nonlinear():
    with pytest.raises(NotExistentiallyLinear):
        growth_witness(FunctionalVectorSet(("a",), (SQUARE,)))


def test_image_member_examples():
    h = nprime_function()
    assert image_member_bounded(h, pv("a", 9), 5)
    assert not image_member_bounded(h, pv("a", 5), 10)
    assert image_member_bounded(SQUARE, pv("a", 4), 3)
    with pytest.raises(DimensionMismatch):
        image_member_bounded(h, pv("ab", 1, 1), 2)


def test_image_member_frozen_composites():
    # composites up to 30, checked by trial division
    h = nprime_function()
    got = [n for n in range(31) if image_member_bounded(h, pv("a", n), 15)]
    assert got == [4, 6, 8, 9, 10, 12, 14, 15, 16, 18, 20, 21, 22, 24, 25, 26, 27, 28, 30]


# -- properties --------------------------------------------------------------------

def random_function(rng: random.Random, dims=("a", "x"), n=None):
    n = rng.randint(0, 2) if n is None else n
    terms = []
    monos = [ONE] + [Monomial.var(i, e) for i in range(n) for e in (1, 2)]
    if n >= 2:
        monos.append(Monomial.var(0) * Monomial.var(1))
    for m in rng.sample(monos, rng.randint(1, len(monos))):
        terms.append((m, tuple(rng.randint(0, 3) for _ in dims)))
    return VectorFunction.build(dims, n, terms)


seeds = st.integers(0, 10 ** 6)


@given(seeds)
def test_composition_soundness(seed):
    rng = random.Random(seed)
    f = random_function(rng, ("a", "x"))
    g = random_function(rng, ("a", "b"))
    h = io_compose(f, "x", g)
    for a in itertools.product(range(4), repeat=f.param_count):
        for b in itertools.product(range(4), repeat=g.param_count):
            lhs = evaluate(h, a + b)
            base = evaluate(wtt(f, "x").with_dims(h.dims), a)
            k = on(f, "x").evaluate(a)
            gv = evaluate(g.with_dims(h.dims), b)
            assert lhs.counts == tuple(p + k * q for p, q in zip(base.counts, gv.counts))


@given(seeds)
def test_canonical_form_is_order_independent(seed):
    rng = random.Random(seed)
    f = random_function(rng, n=2)
    items = list(f.terms)
    rng.shuffle(items)
    g = VectorFunction(f.dims, f.param_count, tuple(items))
    assert g == f
    for _ in range(50):
        a = [rng.randint(0, 6) for _ in range(f.param_count)]
        assert evaluate(f, a) == evaluate(g, a)


@given(seeds)
def test_factored_functions_are_universally_linear(seed):
    rng = random.Random(seed)
    leaves = ["a a*", "(a x | b)*", "x a* x", "a | x x", "(a b)* x"]
    e = from_semilinear(parikh(regex_to_nfa(rng.choice(leaves)))).with_dims(("a", "b", "x"))
    for _ in range(rng.randint(1, 3)):
        g = from_semilinear(parikh(regex_to_nfa(rng.choice(leaves))))
        e = compose_sets(e.with_dims(("x",)), "x", g)
    assert all(is_factored(f.provenance) for f in e.components)
    assert is_universally_linear(e)


@given(seeds)
def test_growth_witness_law(seed):
    rng = random.Random(seed)
    comps = [random_function(rng) for _ in range(rng.randint(1, 3))]
    e = FunctionalVectorSet(comps[0].dims, tuple(comps))
    try:
        w = growth_witness(e)
    except NotExistentiallyLinear:
        assert not is_existentially_linear(e)
        return
    f = e.components[w.component_index]
    for i in range(11):
        a = w.assignment_at(i)
        if f.param_count:
            assert evaluate(f, a).total() == w.K + i * w.A
        else:
            assert evaluate(f, ()).total() == w.K


@given(seeds)
def test_classification_is_strongest_label(seed):
    rng = random.Random(seed)
    comps = [random_function(rng) for _ in range(rng.randint(1, 3))]
    e = FunctionalVectorSet(comps[0].dims, tuple(comps))
    c = classify_dimension(e, "a")
    polys = [f.coordinate("a") for f in comps]
    constant = all(p.is_constant() for p in polys)
    affine = all(p.degree <= 1 for p in polys)
    assert (c == DimClass.CONSTANT) == constant
    assert (c == DimClass.LINEAR) == (affine and not constant)
    assert (c == DimClass.FUNCTIONAL) == (not affine)
