"""Analyses over standard derivations: Parikh images as vector functions,
linearity verdicts, growth witnesses and the copy-pattern detector."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .automata import ParikhVector, all_words_exceed_count, format_word, parikh, word_key
from .derivation import (
    Derivation, EffectiveForm, StandardDerivation, enumerate_words, introducer_graph,
    maximal_chains, member,
)
from .errors import ResidualBinderDimension
from .vectors import (
    DimClass, FunctionalVectorSet, GrowthWitness, classify_dimension, compose_sets, evaluate,
    from_semilinear, growth_witness, is_existentially_linear, is_i_linear, is_universally_linear,
    union_sets,
)

Standardish = Union[StandardDerivation, EffectiveForm]


def _branches(d: Standardish) -> Tuple[StandardDerivation, ...]:
    return d.branches if isinstance(d, EffectiveForm) else (d,)


def leaf_parikh(nfa) -> FunctionalVectorSet:
    return from_semilinear(parikh(nfa))


def _branch_parikh(sd: StandardDerivation) -> FunctionalVectorSet:
    e = leaf_parikh(sd.base.nfa)
    for x, lf in sd.steps:
        if x not in e.dims:
            e = e.with_dims(e.dims + (x,))
        e = compose_sets(e, x, leaf_parikh(lf.nfa))
    terminals = sd.terminals()
    for dim in e.dims:
        if dim in terminals:
            continue
        for f in e.components:
            if not f.coordinate(dim).is_zero():
                raise ResidualBinderDimension(f"dimension {dim} survived composition")
    return FunctionalVectorSet(tuple(terminals), tuple(f.project(terminals) for f in e.components))


def parikh_of_derivation(d: Standardish) -> FunctionalVectorSet:
    """Parikh image as a union of composed vector functions over the terminals."""
    return union_sets([_branch_parikh(b) for b in _branches(d)])


# ---------------------------------------------------------------------------
# linearity


@dataclass(frozen=True)
class LinearityReport:
    dims: Dict[str, DimClass]
    existentially_linear: bool
    universally_linear: bool
    witness: Optional[Tuple[int, int]] = None  # (component, param) linear direction
    component_count: int = 0


def dim_class(e: FunctionalVectorSet, dim: str) -> DimClass:
    """classify_dimension with absent dimensions read as identically zero."""
    if dim not in e.dims:
        return DimClass.CONSTANT
    return classify_dimension(e, dim)


def linearity_of_set(e: FunctionalVectorSet, dims: Optional[Sequence[str]] = None) -> LinearityReport:
    dims = list(e.dims) if dims is None else list(dims)
    witness = None
    for ci, f in enumerate(e.components):
        param = next((l for l in range(f.param_count) if is_i_linear(f, l)), None)
        if param is not None:
            witness = (ci, param)
            break
    return LinearityReport(
        dims={a: dim_class(e, a) for a in dims},
        existentially_linear=is_existentially_linear(e),
        universally_linear=is_universally_linear(e),
        witness=witness,
        component_count=len(e.components),
    )


def linearity_report(d: Standardish, dims: Optional[Sequence[str]] = None) -> LinearityReport:
    return linearity_of_set(parikh_of_derivation(d), dims)


# ---------------------------------------------------------------------------
# growth


@dataclass(frozen=True)
class GrowthSample:
    i: int
    length: int
    assignment: Tuple[int, ...]
    vector: ParikhVector
    word: Optional[Tuple[str, ...]]
    member: bool


@dataclass(frozen=True)
class GrowthReport:
    witness: GrowthWitness
    samples: Tuple[GrowthSample, ...]

    @property
    def verified(self) -> bool:
        return all(s.member for s in self.samples)


def _realizing_word(d: Standardish, v: ParikhVector):
    bound = v.as_dict()
    for w in enumerate_words(d, v.total(), bound):
        if ParikhVector.of_word(w, v.dims) == v:
            return w
    return None


def growth_report(d: Standardish, samples: int = 6) -> GrowthReport:
    """Growth witness plus, for i < samples, a derived word of length K + iA.

    The word is found by bounded search for a word whose Parikh vector is
    the witness component evaluated at the i-th assignment, then confirmed
    with :func:`member`.
    """
    e = parikh_of_derivation(d)
    wit = growth_witness(e)
    f = e.components[wit.component_index]
    out = []
    for i in range(samples):
        a = wit.assignment_at(i)
        v = evaluate(f, a)
        w = _realizing_word(d, v)
        ok = w is not None and len(w) == wit.length_at(i) and member(d, w)
        out.append(GrowthSample(i, wit.length_at(i), a, v, w, ok))
    return GrowthReport(wit, tuple(out))


# ---------------------------------------------------------------------------
# sufficient condition for a-linearity


class Verdict(str, enum.Enum):
    GUARANTEED_LINEAR = "GuaranteedLinear"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SufficientResult:
    verdict: Verdict
    chains: Tuple[Tuple[str, ...], ...]
    offending: Tuple[Tuple[Tuple[str, ...], Tuple[Tuple[str, int], ...]], ...] = ()
    explanation: str = ""


def leaf_is_constant(nfa, y: str) -> bool:
    if y not in nfa.alphabet:
        return True
    return classify_dimension(leaf_parikh(nfa), y) == DimClass.CONSTANT


def a_linear_sufficient(sd: StandardDerivation, a: str) -> SufficientResult:
    """One-sided check: GuaranteedLinear means the derived language is a-linear.

    For each maximal chain C the hypothesis asks for at most one pair
    (x in C, leaf i) with L_i not x-constant, every other leaf being
    y-constant for every y in C.  That is the same as counting the
    (symbol, leaf) pairs of C that are not constant and requiring at most one.
    """
    chains = maximal_chains(introducer_graph(sd), a)
    leaves = sd.leaves
    offending = []
    for c in chains:
        bad = tuple((y, j) for y in c for j, lf in enumerate(leaves)
                    if not leaf_is_constant(lf.nfa, y))
        if len(bad) > 1:
            offending.append((tuple(c), bad))
    if offending:
        c, bad = offending[0]
        pairs = ", ".join(f"{y}@{j}" for y, j in bad)
        return SufficientResult(Verdict.UNKNOWN, tuple(map(tuple, chains)), tuple(offending),
                                f"chain {list(c)} has several non-constant leaves: {pairs}")
    return SufficientResult(Verdict.GUARANTEED_LINEAR, tuple(map(tuple, chains)), (),
                            "every chain has at most one non-constant (symbol, leaf) pair")


def combine_verdicts(results: Sequence[SufficientResult]) -> Verdict:
    if all(r.verdict == Verdict.GUARANTEED_LINEAR for r in results):
        return Verdict.GUARANTEED_LINEAR
    return Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# copy pattern


@dataclass(frozen=True)
class CopyWitness:
    branch_index: int
    chain: Tuple[str, ...]
    y1: str
    y2: str
    i1: int
    i2: int


def _chain_is_universal(sd: StandardDerivation, chain: Sequence[str], start: int) -> bool:
    """Every word of each chain member's leaf, from position start down, holds its successor."""
    step = {x: k + 1 for k, (x, _) in enumerate(sd.steps)}
    leaves = sd.leaves
    for p, q in zip(chain[start:], chain[start + 1:]):
        if p not in step or not all_words_exceed_count(leaves[step[p]].nfa, q, 0):
            return False
    return True


def detect_copy_pattern(e: Standardish, a: str) -> Optional[CopyWitness]:
    """First (chain, y1 above y2, i1 < i2) such that every word of L_{i1}
    holds y1 at least twice and every word of L_{i2} holds y2 at least twice.

    Beyond that hypothesis the search asks for what the copying argument
    uses: L_{i2} is the leaf of y2's predecessor on the chain, and every
    chain edge from y1 down to a is universal (each word of the upper leaf
    contains the lower symbol).  Then every derived word holds two equal
    expansions of y1, each with two equal expansions of y2, each with an a.
    Without these the pattern can fail, e.g. when L_{i2} is substituted
    outside the copies of y1 or y2 sometimes expands to a word without a.
    """
    for bi, sd in enumerate(_branches(e)):
        leaves = sd.leaves
        step = {x: k + 1 for k, (x, _) in enumerate(sd.steps)}
        heavy = {}

        def many(i, y):
            if (i, y) not in heavy:
                heavy[(i, y)] = all_words_exceed_count(leaves[i].nfa, y, 1)
            return heavy[(i, y)]

        for chain in maximal_chains(introducer_graph(sd), a):
            for p, y1 in enumerate(chain):
                if not _chain_is_universal(sd, chain, p):
                    continue
                for q in range(p + 1, len(chain)):
                    y2 = chain[q]
                    i2 = step.get(chain[q - 1])
                    if i2 is None or not many(i2, y2):
                        continue
                    for i1 in range(i2):
                        if many(i1, y1):
                            return CopyWitness(bi, tuple(chain), y1, y2, i1, i2)
    return None


def check_pattern(w: Sequence[str], a: str) -> bool:
    """Does w split as w1 a w' a w2 a w' a w3?"""
    w = tuple(w)
    pos = [i for i, s in enumerate(w) if s == a]
    for x1 in range(len(pos)):
        for x2 in range(x1 + 1, len(pos)):
            seg = w[pos[x1] + 1:pos[x2]]
            for x3 in range(x2 + 1, len(pos)):
                p3 = pos[x3]
                end = p3 + 1 + len(seg)
                if end < len(w) and w[p3 + 1:end] == seg and w[end] == a:
                    return True
    return False
