import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from iosub.analysis import (
    Verdict, a_linear_sufficient, check_pattern, combine_verdicts, detect_copy_pattern, dim_class,
    growth_report, leaf_parikh, linearity_of_set, linearity_report, parikh_of_derivation,
)
from iosub.automata import ParikhVector, accepts_epsilon, parse_word, regex_to_nfa, symbol_occurs
from iosub.derivation import (
    Leaf, StandardDerivation, enumerate_words, member, normalize, prepare, subst,
)
from iosub.vectors import (
    ONE, DimClass, FunctionalVectorSet, Monomial, VectorFunction,
    is_factored, sample_image, set_member_bounded,
)

import oracles
from conftest import CORPUS, corpus_params, random_derivation

W = parse_word


def std(text_base, *steps):
    return StandardDerivation(Leaf.parse(text_base), tuple((x, Leaf.parse(t)) for x, t in steps))


def vec(e, w):
    return ParikhVector.of_word(w, e.dims)


NPRIME = prepare(subst("a a a*", "a", "a a a*"))
ABC = prepare(subst("a*", "a", "a b | c"))


# -- Parikh images ------------------------------------------------------------------

def test_parikh_of_non_prime_lengths():
    e = parikh_of_derivation(NPRIME)
    assert e.dims == ("a",)
    (f,) = e.components
    x0, x1 = Monomial.var(0), Monomial.var(1)
    assert f.term_map == {ONE: (4,), x0: (2,), x1: (2,), x0 * x1: (1,)}
    assert str(f) == "<4> + x0<2> + x0x1<1> + x1<2>"


def test_parikh_of_leaf_only():
    sd = std("a*")
    assert parikh_of_derivation(sd) == leaf_parikh(sd.base.nfa)


def test_parikh_of_regular_io_example():
    e = parikh_of_derivation(ABC)
    assert e.dims == ("a", "b", "c")
    for w in enumerate_words(ABC, 8):
        assert set_member_bounded(e, vec(e, w), 8)
    # uniform copying never mixes the alternatives
    assert not set_member_bounded(e, ParikhVector(e.dims, (1, 1, 1)), 8)
    assert set_member_bounded(e, ParikhVector(e.dims, (3, 3, 0)), 8)


def _realized(d, e, param_bound=2):
    """Every value with parameters <= param_bound is the vector of a derived word."""
    for f in e.components:
        for _, v in sample_image(f, param_bound):
            words = enumerate_words(d, v.total(), v.as_dict())
            assert any(vec(e, w) == v for w in words), v


@pytest.mark.parametrize("d", corpus_params())
def test_parikh_pipeline_oracle(d):
    ef = prepare(d)
    e = parikh_of_derivation(ef)
    for w in enumerate_words(normalize(d), 8):
        assert set_member_bounded(e, vec(e, w), 8), w
    _realized(ef, e)


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_parikh_pipeline_random(seed):
    d = random_derivation(random.Random(seed))
    ef = prepare(d)
    e = parikh_of_derivation(ef)
    for w in oracles.io_words(d, 6):
        assert set_member_bounded(e, vec(e, w), 6), w
    _realized(ef, e, 1)


# -- linearity ----------------------------------------------------------------------

def test_linearity_examples():
    r = linearity_report(NPRIME)
    assert r.dims == {"a": DimClass.FUNCTIONAL}
    assert r.universally_linear and r.existentially_linear
    r = linearity_report(ABC)
    assert set(r.dims.values()) <= {DimClass.LINEAR, DimClass.CONSTANT}
    assert r.universally_linear
    r = linearity_report(std("b"), ["a"])
    assert r.dims == {"a": DimClass.CONSTANT}


def test_linearity_negative_control():
    square = VectorFunction.build(("a",), 1, {Monomial.var(0, 2): (1,)})
    r = linearity_of_set(FunctionalVectorSet(("a",), (square,)))
    assert not r.existentially_linear and not r.universally_linear
    assert r.witness is None


@pytest.mark.parametrize("d", corpus_params())
def test_corpus_images_are_factored_and_universally_linear(d):
    e = parikh_of_derivation(prepare(d))
    assert all(is_factored(f.provenance) for f in e.components)
    assert linearity_of_set(e).universally_linear


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_random_images_are_universally_linear(seed):
    d = random_derivation(random.Random(seed))
    assert linearity_report(prepare(d)).universally_linear


# single compositions L1[x := L2] where x occurs in L1 and L2 avoids the empty word
def random_composition(rng):
    while True:
        left = regex_to_nfa(oracles.random_regex(rng, rng.choice(["ax", "abx", "x"])))
        right = regex_to_nfa(oracles.random_regex(rng, rng.choice(["a", "ab", "b"])))
        if symbol_occurs(left, "x") and not accepts_epsilon(right) and right.alphabet:
            return StandardDerivation(Leaf(left), (("x", Leaf(right)),))


def check_composition_laws(sd):
    left, right = leaf_parikh(sd.base.nfa), leaf_parikh(sd.steps[0][1].nfa)
    composed = parikh_of_derivation(sd)
    lc = {s: dim_class(left, s) for s in ("a", "x")}
    ra = dim_class(right, "a")
    ca = dim_class(composed, "a")
    linear = {DimClass.CONSTANT, DimClass.LINEAR}
    if (lc["x"] == DimClass.CONSTANT or ra == DimClass.CONSTANT) and \
            lc["a"] in linear and ra in linear and lc["x"] in linear:
        assert ca in linear
    if "a" in sd.steps[0][1].alphabet and symbol_occurs(sd.steps[0][1].nfa, "a"):
        expect = lc["x"] == lc["a"] == ra == DimClass.CONSTANT
        assert (ca == DimClass.CONSTANT) == expect


@settings(max_examples=50)
@given(st.integers(0, 10 ** 6))
def test_composition_linearity_laws(seed):
    check_composition_laws(random_composition(random.Random(seed)))


def test_composition_laws_examples():
    # x-constant left: a-count 1 + 2n stays affine
    check_composition_laws(std("a x x", ("x", "a*")))
    # both sides varying: x0 * x1 appears
    sd = std("x*", ("x", "a a*"))
    assert dim_class(parikh_of_derivation(sd), "a") == DimClass.FUNCTIONAL
    check_composition_laws(sd)


# -- growth ----------------------------------------------------------------------

def test_growth_non_prime():
    rep = growth_report(NPRIME)
    w = rep.witness
    assert (w.K, w.A) == (4, 2)
    assert [s.length for s in rep.samples] == [4, 6, 8, 10, 12, 14]
    assert rep.verified
    assert all(len(s.word) == s.length for s in rep.samples)


def test_growth_trivial_cases():
    rep = growth_report(std("a*"))
    assert (rep.witness.K, rep.witness.A) == (0, 1)
    assert [s.length for s in rep.samples] == [0, 1, 2, 3, 4, 5] and rep.verified
    rep = growth_report(std("a b"))
    assert (rep.witness.K, rep.witness.A, rep.witness.degenerate) == (2, 0, True)
    assert rep.verified


@pytest.mark.parametrize("name", ["wcw", "cubes", "two_level", "sufficient", "abc_star"])
def test_growth_corpus(name):
    rep = growth_report(prepare(CORPUS[name]), samples=4)
    assert rep.verified


# -- sufficient condition -----------------------------------------------------------------

def test_sufficient_examples():
    r = a_linear_sufficient(std("x1 b", ("x1", "a*")), "a")
    assert r.verdict == Verdict.GUARANTEED_LINEAR
    r = a_linear_sufficient(std("x1 x2 x3", ("x1", "a"), ("x2", "b"), ("x3", "z*"), ("z", "a*")), "a")
    assert r.verdict == Verdict.UNKNOWN
    assert r.offending == ((("x3", "z", "a"), (("z", 3), ("a", 4))),)
    assert a_linear_sufficient(std("a* b"), "b").verdict == Verdict.GUARANTEED_LINEAR
    assert combine_verdicts([]) == Verdict.GUARANTEED_LINEAR


def _sufficient_sound(ef, a):
    results = [a_linear_sufficient(b, a) for b in ef.branches]
    if ef.branches and combine_verdicts(results) == Verdict.GUARANTEED_LINEAR:
        assert dim_class(parikh_of_derivation(ef), a) in {DimClass.CONSTANT, DimClass.LINEAR}


@pytest.mark.parametrize("d", corpus_params())
def test_sufficient_condition_sound_on_corpus(d):
    for a in "abc":
        _sufficient_sound(prepare(d), a)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_sufficient_condition_sound_random(seed):
    d = random_derivation(random.Random(seed))
    for a in "ab":
        _sufficient_sound(prepare(d), a)


# -- copy pattern ------------------------------------------------------------------

def test_copy_detector_examples():
    w = detect_copy_pattern(std("x x", ("x", "a a")), "a")
    assert (w.chain, w.y1, w.i1, w.y2, w.i2) == (("x", "a"), "x", 0, "a", 1)
    w = detect_copy_pattern(std("x x* x", ("x", "a a* a")), "a")
    assert (w.chain, w.y1, w.i1, w.y2, w.i2) == (("x", "a"), "x", 0, "a", 1)
    assert detect_copy_pattern(std("x b", ("x", "a")), "a") is None


# Leaves that satisfy the bare count hypothesis but whose copies do not line up.
NO_PATTERN = [
    # the heavy leaf for a sits in the base, outside the copies of y
    (std("a a x x* | a a x x* b", ("x", "y y* (a y)* y y"), ("y", "a b a*")), "a a a b a b a b"),
    # the heavy leaf for a is substituted beside y, not inside it
    (std("y y x* x b", ("x", "a a b"), ("y", "a b*")), "a b a b a a b b"),
    # y can expand to a word with no a at all
    (std("(y x)* x b* b", ("x", "y y* y a*"), ("y", "(a a)* b (b b)*")), "b b b b b b"),
]


@pytest.mark.parametrize("sd,word", NO_PATTERN)
def test_copy_detector_needs_aligned_copies(sd, word):
    w = W(word)
    assert member(sd, w) and not check_pattern(w, "a")
    assert detect_copy_pattern(sd, "a") is None


def test_check_pattern_examples():
    assert check_pattern(W("a a a a"), "a")
    assert not check_pattern(W("a b a"), "a")
    assert check_pattern(W("b a c a b a c a b"), "a")
    assert not check_pattern(W("a b a a c a"), "a")


def test_check_pattern_matches_brute_force():
    def brute(w):
        n = len(w)
        for i, j, k, l in itertools.combinations(range(n), 4):
            if w[i] == w[j] == w[k] == w[l] == "a" and w[i + 1:j] == w[k + 1:l] and l == k + (j - i):
                return True
        return False
    for w in oracles.all_words("ab", 8):
        assert check_pattern(w, "a") == brute(w), w


@pytest.mark.parametrize("d", corpus_params())
def test_copy_pattern_holds_on_corpus(d):
    ef = prepare(d)
    for a in sorted({s for b in ef.branches for s in b.terminals()}):
        w = detect_copy_pattern(ef, a)
        if w is None:
            continue
        assert w.y1 != w.y2 and w.i1 != w.i2 and {w.y1, w.y2} <= set(w.chain)
        branch = ef.branches[w.branch_index]
        for word in enumerate_words(branch, 10):
            assert check_pattern(word, a), word


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_copy_pattern_holds_random(seed):
    ef = prepare(random_derivation(random.Random(seed)))
    for a in "ab":
        w = detect_copy_pattern(ef, a)
        if w is not None:
            for word in enumerate_words(ef.branches[w.branch_index], 9):
                assert check_pattern(word, a), word
