"""IO-derivations over regular leaves.

A derivation is a tree of :class:`Leaf`, :class:`Subst` and :class:`Union`
nodes.  ``Subst(left, x, right)`` denotes the union, over every word ``u`` of
``right``, of ``left`` with *every* occurrence of ``x`` replaced by that same
``u``.  An empty ``right`` therefore yields the empty language.

Normal forms:

* :func:`normalize` removes deleting and irrelevant substitutions and splits
  right operands that contain the empty word.
* :func:`standardize` flattens nested right operands into a left-nested chain
  ``L0[x1:=L1]...[xn:=Ln]`` with regular leaves (a :class:`StandardDerivation`)
  and distributes unions outward.
* :func:`fully_effective` splits a standard derivation by occurrence classes so
  that every binder occurs in every word it is applied to.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union as TUnion

from . import automata as au
from .automata import (
    EQ0, GE1, GT, LE, CountConstraint, Nfa, Word, accepts_epsilon, all_words_exceed_count,
    empty_nfa, epsilon_nfa, is_epsilon_only, nfa_enumerate, nfa_homomorphism, nfa_is_empty,
    nfa_member, normalize_nfa, regex_parse, regex_to_nfa, restrict_count, symbol_occurs,
    without_epsilon, word_key,
)
from .errors import DeletingStep, EpsilonUnsafe, NotValidated

Path = Tuple[str, ...]


# ---------------------------------------------------------------------------
# tree


@dataclass(frozen=True)
class Leaf:
    nfa: Nfa
    source: Optional[str] = field(default=None, compare=False)

    @classmethod
    def parse(cls, text: str) -> "Leaf":
        return cls(regex_to_nfa(regex_parse(text)), text)

    @property
    def alphabet(self):
        return self.nfa.alphabet

    @property
    def text(self) -> str:
        """Regex text for the leaf, recomputed from the automaton if needed."""
        if self.source is not None:
            return self.source
        return str(au.nfa_to_regex(self.nfa))

    def __str__(self):
        return "{" + self.text + "}"


@dataclass(frozen=True)
class Subst:
    left: "Derivation"
    sym: str
    right: "Derivation"

    def __str__(self):
        return f"{self.left}[{self.sym} := {self.right}]"


@dataclass(frozen=True)
class Union:
    children: Tuple["Derivation", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ValueError("Union needs at least one child")

    def __str__(self):
        return "union(" + ", ".join(map(str, self.children)) + ")"


Derivation = TUnion[Leaf, Subst, Union]


def leaf(text: str) -> Leaf:
    return Leaf.parse(text)


def subst(left, sym: str, right) -> Subst:
    """Convenience: string operands are parsed as regex leaves."""
    left = leaf(left) if isinstance(left, str) else left
    right = leaf(right) if isinstance(right, str) else right
    return Subst(left, sym, right)


def empty_leaf(alphabet: Iterable[str] = ()) -> Leaf:
    return Leaf(empty_nfa(alphabet), "empty")


def iter_nodes(d: Derivation, path: Path = ()):
    yield path, d
    if isinstance(d, Subst):
        yield from iter_nodes(d.left, path + ("left",))
        yield from iter_nodes(d.right, path + ("right",))
    elif isinstance(d, Union):
        for i, c in enumerate(d.children):
            yield from iter_nodes(c, path + (str(i),))


def format_path(path: Path) -> str:
    return "/" + "/".join(path)


def symbols(d: Derivation) -> set:
    out = set()
    for _, node in iter_nodes(d):
        if isinstance(node, Leaf):
            out.update(node.alphabet)
        elif isinstance(node, Subst):
            out.add(node.sym)
    return out


def binders(d: Derivation) -> List[str]:
    return [node.sym for _, node in iter_nodes(d) if isinstance(node, Subst)]


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    symbol: str
    path: str

    def __str__(self):
        return f"{self.kind} {self.symbol} at {self.path}"


def _alternatives(p, q) -> bool:
    """True when paths p and q part ways at a Union node."""
    for a, b in zip(p, q):
        if a != b:
            return a.isdigit() and b.isdigit()
    return False


def validate(d: Derivation) -> List[Diagnostic]:
    """Binder uniqueness and scope.

    A binder may occur in leaves of its own Subst node, on either side: on
    the left it is substituted, on the right it is an ordinary terminal of
    the substituted words (as in ``a*[a := a b | c]``).  Occurring anywhere
    else in the tree is a scope violation.  Symbols that are never bound are
    terminals.  Branches of a Union are independent, so they may reuse names.
    """
    diags = []
    nodes = list(iter_nodes(d))
    binds = [(path, node) for path, node in nodes if isinstance(node, Subst)]
    for i, (path, node) in enumerate(binds):
        if any(q.sym == node.sym and not _alternatives(p, path) for p, q in binds[:i]):
            diags.append(Diagnostic("DuplicateBinder", node.sym, format_path(path)))
    for bpath, node in binds:
        for lpath, lf in nodes:
            if (isinstance(lf, Leaf) and node.sym in lf.alphabet and lpath[:len(bpath)] != bpath
                    and not _alternatives(lpath, bpath)):
                diags.append(Diagnostic("OutOfScopeOccurrence", node.sym, format_path(lpath)))
    return diags


# ---------------------------------------------------------------------------
# bounded enumeration


def _within(w, bound):
    if not bound:
        return True
    return all(w.count(s) <= k for s, k in bound.items())


def io_apply(w: Sequence[str], x: str, u: Sequence[str]) -> Word:
    """Replace every occurrence of ``x`` in ``w`` by ``u``."""
    out = []
    for s in w:
        if s == x:
            out.extend(u)
        else:
            out.append(s)
    return tuple(out)


def _nonempty(d: Derivation) -> bool:
    if isinstance(d, Leaf):
        return not nfa_is_empty(d.nfa)
    if isinstance(d, Union):
        return any(_nonempty(c) for c in d.children)
    return _nonempty(d.left) and _nonempty(d.right)


def _check_eps_safe(d: Derivation, path: Path = ()) -> bool:
    """Raise on a right operand containing the empty word; return eps(d)."""
    if isinstance(d, Leaf):
        return accepts_epsilon(d.nfa)
    if isinstance(d, Union):
        return any([_check_eps_safe(c, path + (str(i),)) for i, c in enumerate(d.children)])
    left_eps = _check_eps_safe(d.left, path + ("left",))
    if _check_eps_safe(d.right, path + ("right",)):
        raise EpsilonUnsafe(format_path(path))
    return left_eps and _nonempty(d.right)


def _enum(d: Derivation, maxlen: int, bound) -> set:
    if isinstance(d, Leaf):
        return {w for w in nfa_enumerate(d.nfa, maxlen) if _within(w, bound)}
    if isinstance(d, Union):
        out = set()
        for c in d.children:
            out |= _enum(c, maxlen, bound)
        return out
    x = d.sym
    rights = _enum(d.right, maxlen, bound)
    if not rights:
        return set()
    left_bound = {s: k for s, k in bound.items() if s != x} if bound else None
    out = set()
    for v in _enum(d.left, maxlen, left_bound):
        k = v.count(x)
        if k == 0:
            out.add(v)
            continue
        for u in rights:
            if len(v) - k + k * len(u) <= maxlen:
                w = io_apply(v, x, u)
                if _within(w, bound):
                    out.add(w)
    return out


def enumerate_words(d, maxlen: int, bound: Optional[Dict[str, int]] = None) -> List[Word]:
    """Every derived word of length <= maxlen, sorted by (length, lexicographic).

    ``bound`` optionally caps the count of individual symbols; it prunes the
    search and filters the result.
    """
    if isinstance(d, EffectiveForm):
        words = set()
        for b in d.branches:
            words.update(enumerate_words(b, maxlen, bound))
        return sorted(words, key=word_key)
    d = as_derivation(d)
    diags = validate(d)
    if diags:
        raise NotValidated(diags)
    _check_eps_safe(d)
    return sorted(_enum(d, maxlen, bound or None), key=word_key)


# ---------------------------------------------------------------------------
# leaf rewriting helpers


def _rename_regex(r, old: str, new: str):
    if isinstance(r, au.Sym):
        return au.Sym(new) if r.name == old else r
    if isinstance(r, au.Concat):
        return au.Concat(tuple(_rename_regex(p, old, new) for p in r.parts))
    if isinstance(r, au.Alt):
        return au.Alt(tuple(_rename_regex(p, old, new) for p in r.parts))
    if isinstance(r, au.Star):
        return au.Star(_rename_regex(r.child, old, new))
    return r


def rename_leaf(lf: Leaf, old: str, new: str) -> Leaf:
    if old not in lf.alphabet:
        return lf
    n = lf.nfa
    trans = {(p, new if s == old else s, q) for p, s, q in n.transitions}
    alphabet = {new if s == old else s for s in n.alphabet}
    source = None
    if lf.source is not None:
        source = str(_rename_regex(regex_parse(lf.source), old, new))
    return Leaf(Nfa(n.state_count, trans, n.initial, n.final, alphabet), source)


def _erase_leaf(lf: Leaf, x: str) -> Leaf:
    if x not in lf.alphabet:
        return lf
    return Leaf(normalize_nfa(nfa_homomorphism(lf.nfa, {x: ()})))


def _restricted(lf: Leaf, constraints: Sequence[Tuple[str, CountConstraint]]) -> Leaf:
    n = lf.nfa
    gone = set()
    for s, c in constraints:
        n = restrict_count(n, s, c)
        if c == EQ0:
            gone.add(s)
    if gone:
        # the trimmed product has no moves on symbols forced to zero
        n = Nfa(n.state_count, n.transitions, n.initial, n.final, set(n.alphabet) - gone)
    return Leaf(n)


# ---------------------------------------------------------------------------
# normalization


def _eps(d: Derivation) -> bool:
    # valid for normalized derivations: right operands are non-empty and eps-free
    if isinstance(d, Leaf):
        return accepts_epsilon(d.nfa)
    if isinstance(d, Union):
        return any(_eps(c) for c in d.children)
    return _eps(d.left)


def _only_eps(d: Derivation) -> bool:
    if isinstance(d, Leaf):
        return is_epsilon_only(d.nfa)
    if isinstance(d, Union):
        return all(_only_eps(c) for c in d.children)
    return _only_eps(d.left)


def _is_empty_leaf(d: Derivation) -> bool:
    return isinstance(d, Leaf) and nfa_is_empty(d.nfa)


def _remove_eps(d: Derivation) -> Derivation:
    if isinstance(d, Leaf):
        if not accepts_epsilon(d.nfa):
            return d
        return Leaf(without_epsilon(d.nfa))
    if isinstance(d, Union):
        kids = [k for k in (_remove_eps(c) for c in d.children) if not _is_empty_leaf(k)]
        if not kids:
            return empty_leaf()
        return kids[0] if len(kids) == 1 else Union(tuple(kids))
    left = _remove_eps(d.left)
    if _is_empty_leaf(left):
        return left
    return Subst(left, d.sym, d.right)


def occurs(d: Derivation, c: str) -> bool:
    """Some word of the (normalized) derivation contains ``c``."""
    if isinstance(d, Leaf):
        return symbol_occurs(d.nfa, c)
    if isinstance(d, Union):
        return any(occurs(k, c) for k in d.children)
    via_sub = occurs(d.left, d.sym) and occurs(d.right, c)
    if c == d.sym:
        return via_sub
    return occurs(d.left, c) or via_sub


def _erase(d: Derivation, x: str) -> Derivation:
    if isinstance(d, Leaf):
        return _erase_leaf(d, x)
    if isinstance(d, Union):
        return Union(tuple(_erase(c, x) for c in d.children))
    return Subst(_erase(d.left, x), d.sym, _erase(d.right, x))


def normalize(d: Derivation) -> Derivation:
    """Language-preserving rewrite with no deleting or irrelevant Subst node
    and no right operand containing the empty word.  Empty subresults
    collapse to an empty leaf.
    """
    if isinstance(d, Leaf):
        return d
    if isinstance(d, Union):
        kids = [k for k in (normalize(c) for c in d.children) if not _is_empty_leaf(k)]
        if not kids:
            return empty_leaf()
        return kids[0] if len(kids) == 1 else Union(tuple(kids))
    left = normalize(d.left)
    right = normalize(d.right)
    x = d.sym
    if _is_empty_leaf(left) or _is_empty_leaf(right):
        return empty_leaf()
    if _only_eps(right):
        return normalize(_erase(left, x))
    if _eps(right):
        split = Union((Subst(left, x, _remove_eps(right)), _erase(left, x)))
        return normalize(split)
    if not occurs(left, x):
        return left
    return Subst(left, x, right)


# ---------------------------------------------------------------------------
# standard form


@dataclass(frozen=True)
class StandardDerivation:
    base: Leaf
    steps: Tuple[Tuple[str, Leaf], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((s, l) for s, l in self.steps))

    @property
    def binders(self) -> List[str]:
        return [s for s, _ in self.steps]

    @property
    def leaves(self) -> List[Leaf]:
        return [self.base] + [l for _, l in self.steps]

    def prefix(self, i: int) -> "StandardDerivation":
        return StandardDerivation(self.base, self.steps[:i])

    def terminals(self) -> List[str]:
        """Symbols that can survive into derived words."""
        leaves = self.leaves
        out = set()
        for lf in leaves:
            out.update(lf.alphabet)
        for i, x in enumerate(self.binders, start=1):
            if not any(x in leaves[j].alphabet for j in range(i, len(leaves))):
                out.discard(x)
        return sorted(out)

    def to_derivation(self) -> Derivation:
        d: Derivation = self.base
        for s, lf in self.steps:
            d = Subst(d, s, lf)
        return d

    def __str__(self):
        return str(self.base) + "".join(f"[{s} := {lf}]" for s, lf in self.steps)


@dataclass(frozen=True)
class EffectiveForm:
    branches: Tuple[StandardDerivation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))

    def to_derivation(self) -> Derivation:
        if not self.branches:
            return empty_leaf()
        ds = [b.to_derivation() for b in self.branches]
        return ds[0] if len(ds) == 1 else Union(tuple(ds))

    def __len__(self):
        return len(self.branches)

    def __str__(self):
        return " | ".join(map(str, self.branches)) or "{empty}"


def as_derivation(d) -> Derivation:
    if isinstance(d, (StandardDerivation, EffectiveForm)):
        return d.to_derivation()
    return d


class _Fresh:
    def __init__(self, taken):
        self.taken = set(taken)
        self.k = 0

    def __call__(self) -> str:
        while True:
            self.k += 1
            name = f"z{self.k}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def _std(d: Derivation, fresh: _Fresh) -> List[StandardDerivation]:
    if isinstance(d, Leaf):
        return [StandardDerivation(d)]
    if isinstance(d, Union):
        return [b for c in d.children for b in _std(c, fresh)]
    out = []
    for b1 in _std(d.left, fresh):
        for b2 in _std(d.right, fresh):
            steps = list(b1.steps) + [(d.sym, b2.base)]
            for y, lf in b2.steps:
                z = fresh()
                steps += [(y, Leaf(au.word_nfa((z,)), z)), (z, lf)]
            out.append(StandardDerivation(b1.base, tuple(steps)))
    return out


def separate_binders(sd: StandardDerivation, fresh) -> StandardDerivation:
    """Rename binders that also occur as terminals in their own or later leaves.

    ``a*[a := a b | c]`` becomes ``z1*[z1 := a b | c]``: the substituted
    symbol and the terminal ``a`` are different letters, so every binder ends
    up with a unique occurrence.
    """
    base, steps = sd.base, list(sd.steps)
    for i, (x, lf) in enumerate(steps):
        if not any(x in l.alphabet for _, l in steps[i:]):
            continue
        z = fresh()
        base = rename_leaf(base, x, z)
        for j in range(i):
            steps[j] = (steps[j][0], rename_leaf(steps[j][1], x, z))
        steps[i] = (z, lf)
    return StandardDerivation(base, tuple(steps))


def standardize(d: Derivation) -> EffectiveForm:
    """Union of standard derivations with the language of ``d``.

    Expects a validated, normalized derivation.  Fresh names ``z1, z2, ...``
    skip every symbol already present in ``d``.
    """
    fresh = _Fresh(symbols(d))
    branches = [separate_binders(b, fresh) for b in _std(d, fresh)]
    return EffectiveForm(tuple(branches))


def prepare(d: Derivation) -> EffectiveForm:
    """normalize, standardize and split into fully-effective branches."""
    diags = validate(d)
    if diags:
        raise NotValidated(diags)
    std = standardize(normalize(d))
    out = []
    for s in std.branches:
        for b in fully_effective(s).branches:
            if b not in out:
                out.append(b)
    return EffectiveForm(tuple(out))


# ---------------------------------------------------------------------------
# liveness and effectiveness


def _check_no_deleting(sd: StandardDerivation, strict: bool = False):
    for i, (x, lf) in enumerate(sd.steps, start=1):
        if is_epsilon_only(lf.nfa) or (strict and accepts_epsilon(lf.nfa)):
            raise DeletingStep(f"step {i} ({x})")


def liveness(sd: StandardDerivation) -> set:
    _check_no_deleting(sd)
    live = set()
    for j, (x, _) in enumerate(sd.steps):
        if symbol_occurs(sd.base.nfa, x) or any(
                sd.steps[i][0] in live and symbol_occurs(sd.steps[i][1].nfa, x) for i in range(j)):
            live.add(x)
    return live


def _split_presence(lf: Leaf, syms: Sequence[str]):
    """Non-empty occurrence classes of ``lf``: (leaf, set of present symbols)."""
    out = []
    for mask in itertools.product((False, True), repeat=len(syms)):
        cons = [(s, GE1 if m else EQ0) for s, m in zip(syms, mask)]
        r = _restricted(lf, cons)
        if not nfa_is_empty(r.nfa):
            out.append((r, frozenset(s for s, m in zip(syms, mask) if m)))
    if len(out) == 1:
        # the single class is the whole language
        out = [(lf, out[0][1])]
    return out


def fully_effective(sd: StandardDerivation) -> EffectiveForm:
    binders_ = sd.binders
    result = []
    for base, present in _split_presence(sd.base, [x for x in binders_ if x in sd.base.alphabet]):
        partial = [(present, ())]
        for i, (x, lf) in enumerate(sd.steps):
            later = [y for y in binders_[i + 1:] if y in lf.alphabet]
            nxt = []
            for p, steps in partial:
                if x not in p:
                    if not nfa_is_empty(lf.nfa):
                        nxt.append((p, steps))
                    continue
                for piece, s in _split_presence(lf, later):
                    nxt.append(((p - {x}) | s, steps + ((x, piece),)))
            partial = nxt
        result.extend(StandardDerivation(base, steps) for _, steps in partial)
    return EffectiveForm(tuple(result))


def prefix_words(sd: StandardDerivation, i: int, maxlen: int) -> List[Word]:
    return enumerate_words(sd.prefix(i), maxlen)


def is_effective(sd: StandardDerivation, maxlen: int = 8) -> bool:
    """Bounded check: every prefix word contains the next binder."""
    for i, (x, _) in enumerate(sd.steps):
        if any(x not in w for w in prefix_words(sd, i, maxlen)):
            return False
    return True


@dataclass(frozen=True)
class ThresholdBranch:
    derivation: StandardDerivation
    labels: Tuple[Tuple[int, str, str], ...]


def threshold_split(sd: StandardDerivation, thresholds: Sequence[Tuple[str, int]]) -> List[ThresholdBranch]:
    """Split every leaf into LE(t)/GT(t) count classes for the listed symbols.

    Labels are ``(leaf index, symbol, class)`` with leaf 0 the base.
    """
    options = []
    for k, lf in enumerate(sd.leaves):
        syms = [(s, t) for s, t in thresholds if s in lf.alphabet]
        opts = []
        for mask in itertools.product((False, True), repeat=len(syms)):
            cons = [(s, GT(t) if m else LE(t)) for (s, t), m in zip(syms, mask)]
            r = _restricted(lf, cons) if cons else lf
            if not nfa_is_empty(r.nfa):
                opts.append((r, tuple((k, s, str(c)) for s, c in cons)))
        if len(opts) == 1 and opts[0][0] is not lf:
            opts = [(lf, opts[0][1])]
        options.append(opts)
    out = []
    for combo in itertools.product(*options):
        base = combo[0][0]
        steps = tuple((x, c[0]) for (x, _), c in zip(sd.steps, combo[1:]))
        labels = tuple(l for c in combo for l in c[1])
        out.append(ThresholdBranch(StandardDerivation(base, steps), labels))
    return out


# ---------------------------------------------------------------------------
# membership


def _member_sd(sd: StandardDerivation, w: Word) -> bool:
    _check_no_deleting(sd, strict=True)
    alph = [set(sd.base.alphabet)]
    for _, lf in sd.steps:
        alph.append(alph[-1] | set(lf.alphabet))
    empty_step = [nfa_is_empty(lf.nfa) for _, lf in sd.steps]

    @lru_cache(maxsize=None)
    def mem(i: int, v: Word) -> bool:
        if i == 0:
            return nfa_member(sd.base.nfa, v)
        x, lf = sd.steps[i - 1]
        if empty_step[i - 1]:
            return False
        if x not in v and mem(i - 1, v):
            return True
        allowed = alph[i - 1]
        factors = {v[p:q] for p in range(len(v)) for q in range(p + 1, len(v) + 1)}
        for u in sorted(factors, key=word_key):
            if not nfa_member(lf.nfa, u):
                continue
            for cand in _unreplace(v, x, u, allowed):
                if mem(i - 1, cand):
                    return True
        return False

    return mem(len(sd.steps), tuple(w))


def _unreplace(w: Word, x: str, u: Word, allowed) -> set:
    """Words v with x in v, x only at the replaced positions, and v[x:=u] = w."""
    n, k = len(w), len(u)
    out = set()

    def go(p, acc, used):
        if p == n:
            if used:
                out.add(tuple(acc))
            return
        if w[p:p + k] == u and x in allowed:
            acc.append(x)
            go(p + k, acc, True)
            acc.pop()
        s = w[p]
        if s != x and s in allowed:
            acc.append(s)
            go(p + 1, acc, used)
            acc.pop()

    go(0, [], False)
    return out


def member(d, w: Sequence[str]) -> bool:
    """Exact membership.  Plain derivations are normalized and standardized first."""
    w = tuple(w)
    if isinstance(d, StandardDerivation):
        return _member_sd(d, w)
    if isinstance(d, EffectiveForm):
        return any(_member_sd(b, w) for b in d.branches)
    diags = validate(d)
    if diags:
        raise NotValidated(diags)
    return member(standardize(normalize(d)), w)


# ---------------------------------------------------------------------------
# introducers


@dataclass(frozen=True)
class IntroducerGraph:
    nodes: frozenset
    edges: frozenset

    def successors(self, b: str) -> List[str]:
        return sorted(c for p, c in self.edges if p == b)

    def predecessors(self, c: str) -> List[str]:
        return sorted(p for p, q in self.edges if q == c)


def introducer_graph(sd: StandardDerivation) -> IntroducerGraph:
    """Edge ``x_i -> c`` iff some word of ``L_i`` contains ``c``."""
    nodes = set(sd.binders)
    edges = set()
    for lf in sd.leaves:
        nodes.update(lf.alphabet)
    for x, lf in sd.steps:
        for c in lf.alphabet:
            if c != x and symbol_occurs(lf.nfa, c):
                edges.add((x, c))
    return IntroducerGraph(frozenset(nodes), frozenset(edges))


def introducer_set(g: IntroducerGraph, a: str) -> set:
    out = {a}
    stack = [a]
    while stack:
        c = stack.pop()
        for p in g.predecessors(c):
            if p not in out:
                out.add(p)
                stack.append(p)
    return out


def _is_chain(g: IntroducerGraph, chain: Sequence[str], a: str) -> bool:
    members = set(chain)
    for y in members - {chain[0], a}:
        pairs = [(p, s) for p in members - {y} for s in members - {y}
                 if (p, y) in g.edges and (y, s) in g.edges]
        if len(pairs) != 1:
            return False
    return True


def maximal_chains(g: IntroducerGraph, a: str) -> List[List[str]]:
    """Maximal chains of introducers of ``a``, each listed top-first, ``a`` last."""
    paths = []

    def back(path):
        paths.append(list(path))
        for p in g.predecessors(path[0]):
            if p not in path:
                back([p] + path)

    back([a])
    chains = [p for p in paths if _is_chain(g, p, a)]
    sets = [frozenset(c) for c in chains]
    out = []
    for c, s in zip(chains, sets):
        if not any(s < t for t in sets) and c not in out:
            out.append(c)
    return sorted(out, key=lambda c: (len(c), c))
