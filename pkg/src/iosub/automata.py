"""Regular-language kernel: regexes, NFAs, their algebra, and Parikh images.

Symbols are plain ``str`` names and words are tuples of symbols, so equal
names compare equal and sort by name.  Every automaton is an immutable
:class:`Nfa`; all operations return new values.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch, RegexSyntaxError

Symbol = str
Word = Tuple[str, ...]

SYMBOL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
KEYWORDS = frozenset({"eps", "empty"})


def parse_word(text: str) -> Word:
    """Whitespace-separated symbol names; the empty string is the empty word."""
    return tuple(text.split())


def format_word(w: Sequence[str]) -> str:
    return " ".join(w)


def word_key(w: Word):
    return (len(w), w)


# ---------------------------------------------------------------------------
# Regex AST


@dataclass(frozen=True)
class Empty:
    def __str__(self):
        return "empty"


@dataclass(frozen=True)
class Epsilon:
    def __str__(self):
        return "eps"


@dataclass(frozen=True)
class Sym:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Concat:
    parts: Tuple["Regex", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("Concat needs at least one part")

    def __str__(self):
        return " ".join(_paren(p, (Alt,)) for p in self.parts)


@dataclass(frozen=True)
class Alt:
    parts: Tuple["Regex", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("Alt needs at least one part")

    def __str__(self):
        return " | ".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class Star:
    child: "Regex"

    def __str__(self):
        return _paren(self.child, (Alt, Concat, Star)) + "*"


Regex = Union[Empty, Epsilon, Sym, Concat, Alt, Star]


def _paren(r, kinds):
    return f"({r})" if isinstance(r, kinds) else str(r)


def regex_symbols(r: Regex) -> frozenset:
    if isinstance(r, Sym):
        return frozenset([r.name])
    if isinstance(r, (Concat, Alt)):
        return frozenset().union(*(regex_symbols(p) for p in r.parts))
    if isinstance(r, Star):
        return regex_symbols(r.child)
    return frozenset()


_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|([()|*]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise RegexSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _RegexParser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        r = self.alt()
        tok, pos = self.peek()
        if tok:
            raise RegexSyntaxError(f"unexpected {tok!r}", pos)
        return r

    def alt(self):
        parts = [self.cat()]
        while self.peek()[0] == "|":
            self.take()
            parts.append(self.cat())
        return parts[0] if len(parts) == 1 else Alt(tuple(parts))

    def cat(self):
        parts = []
        while True:
            tok, _ = self.peek()
            if tok == "(" or (tok and SYMBOL_RE.fullmatch(tok)):
                parts.append(self.rep())
            else:
                break
        if not parts:
            tok, pos = self.peek()
            raise RegexSyntaxError(f"expected an atom, found {tok or 'end of input'!r}", pos)
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def rep(self):
        r = self.atom()
        while self.peek()[0] == "*":
            self.take()
            r = Star(r)
        return r

    def atom(self):
        tok, pos = self.take()
        if tok == "(":
            r = self.alt()
            close, cpos = self.take()
            if close != ")":
                raise RegexSyntaxError("expected ')'", cpos)
            return r
        if tok == "eps":
            return Epsilon()
        if tok == "empty":
            return Empty()
        return Sym(tok)


def regex_parse(text: str) -> Regex:
    return _RegexParser(text).parse()


# smart constructors, used when turning automata back into regexes

def _alt(a: Regex, b: Regex) -> Regex:
    if isinstance(a, Empty):
        return b
    if isinstance(b, Empty):
        return a
    parts = []
    for r in (a, b):
        parts.extend(r.parts if isinstance(r, Alt) else (r,))
    uniq = sorted(set(parts), key=lambda r: (str(r), repr(r)))
    # eps | X* == X*
    if Epsilon() in uniq and any(isinstance(p, Star) for p in uniq):
        uniq.remove(Epsilon())
    return uniq[0] if len(uniq) == 1 else Alt(tuple(uniq))


def _cat(a: Regex, b: Regex) -> Regex:
    if isinstance(a, Empty) or isinstance(b, Empty):
        return Empty()
    if isinstance(a, Epsilon):
        return b
    if isinstance(b, Epsilon):
        return a
    parts = []
    for r in (a, b):
        parts.extend(r.parts if isinstance(r, Concat) else (r,))
    return Concat(tuple(parts))


def _star(a: Regex) -> Regex:
    if isinstance(a, (Empty, Epsilon)):
        return Epsilon()
    if isinstance(a, Star):
        return a
    if isinstance(a, Alt) and Epsilon() in a.parts:
        rest = [p for p in a.parts if p != Epsilon()]
        inner = rest[0] if len(rest) == 1 else Alt(tuple(rest))
        return _star(inner)
    return Star(a)


# ---------------------------------------------------------------------------
# Automata

Transition = Tuple[int, Optional[str], int]


@dataclass(frozen=True)
class Nfa:
    """Finite automaton; a ``None`` label is an epsilon move."""

    state_count: int
    transitions: frozenset
    initial: frozenset
    final: frozenset
    alphabet: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "alphabet", tuple(sorted(set(self.alphabet))))
        alpha = set(self.alphabet)
        for p, label, q in self.transitions:
            if not (0 <= p < self.state_count and 0 <= q < self.state_count):
                raise ValueError(f"transition {(p, label, q)} leaves the state range")
            if label is not None and label not in alpha:
                raise ValueError(f"label {label!r} not in alphabet")
        for s in self.initial | self.final:
            if not 0 <= s < self.state_count:
                raise ValueError(f"state {s} out of range")

    @cached_property
    def out(self):
        adj = [[] for _ in range(self.state_count)]
        for p, label, q in sorted(self.transitions, key=_tkey):
            adj[p].append((label, q))
        return adj

    def closure(self, states: Iterable[int]) -> frozenset:
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for label, q in self.out[p]:
                if label is None and q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def step(self, states: Iterable[int], sym: str) -> frozenset:
        nxt = {q for p in states for label, q in self.out[p] if label == sym}
        return self.closure(nxt)

    def __repr__(self):
        return (f"Nfa(states={self.state_count}, alphabet={list(self.alphabet)}, "
                f"transitions={len(self.transitions)})")


def _tkey(t):
    p, label, q = t
    return (p, "" if label is None else label, label is not None, q)


EMPTY_NFA = Nfa(0, frozenset(), frozenset(), frozenset())


def empty_nfa(alphabet: Iterable[str] = ()) -> Nfa:
    return Nfa(0, frozenset(), frozenset(), frozenset(), tuple(alphabet))


def epsilon_nfa(alphabet: Iterable[str] = ()) -> Nfa:
    return Nfa(1, frozenset(), {0}, {0}, tuple(alphabet))


def word_nfa(w: Sequence[str], alphabet: Iterable[str] = ()) -> Nfa:
    trans = {(i, s, i + 1) for i, s in enumerate(w)}
    return Nfa(len(w) + 1, trans, {0}, {len(w)}, tuple(set(w) | set(alphabet)))


def regex_to_nfa(r: Union[Regex, str]) -> Nfa:
    """Thompson construction."""
    if isinstance(r, str):
        r = regex_parse(r)
    trans = set()
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0] - 1

    def build(node):
        s, f = new(), new()
        if isinstance(node, Epsilon):
            trans.add((s, None, f))
        elif isinstance(node, Sym):
            trans.add((s, node.name, f))
        elif isinstance(node, Concat):
            cur = s
            for part in node.parts:
                ps, pf = build(part)
                trans.add((cur, None, ps))
                cur = pf
            trans.add((cur, None, f))
        elif isinstance(node, Alt):
            for part in node.parts:
                ps, pf = build(part)
                trans.add((s, None, ps))
                trans.add((pf, None, f))
        elif isinstance(node, Star):
            ps, pf = build(node.child)
            trans.update({(s, None, ps), (pf, None, ps), (pf, None, f), (s, None, f)})
        return s, f

    start, end = build(r)
    return Nfa(counter[0], trans, {start}, {end}, regex_symbols(r))


def remove_epsilon(n: Nfa) -> Nfa:
    """Equivalent automaton without epsilon moves, over the same states."""
    if all(label is not None for _, label, _ in n.transitions):
        return n
    closures = [n.closure([p]) for p in range(n.state_count)]
    trans = set()
    for p in range(n.state_count):
        for r in closures[p]:
            for label, q in n.out[r]:
                if label is not None:
                    trans.add((p, label, q))
    final = {p for p in range(n.state_count) if closures[p] & n.final}
    return Nfa(n.state_count, trans, n.initial, final, n.alphabet)


def _determinize(n: Nfa) -> Nfa:
    e = remove_epsilon(n)
    start = frozenset(e.initial)
    index = {start: 0}
    order = [start]
    trans = set()
    i = 0
    while i < len(order):
        cur = order[i]
        for sym in e.alphabet:
            nxt = frozenset(q for p in cur for label, q in e.out[p] if label == sym)
            if not nxt:
                continue
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            trans.add((i, sym, index[nxt]))
        i += 1
    final = {index[s] for s in order if s & e.final}
    return Nfa(len(order), trans, {0}, final, e.alphabet)


def _minimize_dfa(d: Nfa) -> Nfa:
    """Moore partition refinement on a trimmed partial DFA."""
    d = trim(d)
    if d.state_count == 0:
        return d
    delta = {(p, label): q for p, label, q in d.transitions}
    block = [1 if p in d.final else 0 for p in range(d.state_count)]
    while True:
        sig = [(block[p],) + tuple(block[delta[(p, s)]] if (p, s) in delta else -1
                                   for s in d.alphabet) for p in range(d.state_count)]
        ids = {}
        new = [ids.setdefault(x, len(ids)) for x in sig]
        if len(ids) == len(set(block)):
            block = new
            break
        block = new
    trans = {(block[p], label, block[q]) for p, label, q in d.transitions}
    return Nfa(len(set(block)), trans, {block[p] for p in d.initial},
               {block[p] for p in d.final}, d.alphabet)


def trim(n: Nfa) -> Nfa:
    """Drop states that are not both reachable and co-reachable; renumber."""
    fwd = _reach(n.initial, n.out)
    back_adj = [[] for _ in range(n.state_count)]
    for p, label, q in n.transitions:
        back_adj[q].append((label, p))
    bwd = _reach(n.final, back_adj)
    live = sorted(fwd & bwd)
    if not live:
        return empty_nfa(n.alphabet)
    ren = {s: i for i, s in enumerate(live)}
    trans = {(ren[p], label, ren[q]) for p, label, q in n.transitions if p in ren and q in ren}
    return Nfa(len(live), trans, {ren[s] for s in n.initial if s in ren},
               {ren[s] for s in n.final if s in ren}, n.alphabet)


def _reach(start, adj):
    seen = set(start)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for _, q in adj[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def normalize_nfa(n: Nfa) -> Nfa:
    return trim(remove_epsilon(n))


def nfa_member(n: Nfa, w: Sequence[str]) -> bool:
    states = n.closure(n.initial)
    for sym in w:
        if not states:
            return False
        states = n.step(states, sym)
    return bool(states & n.final)


def nfa_is_empty(n: Nfa) -> bool:
    return trim(n).state_count == 0


def accepts_epsilon(n: Nfa) -> bool:
    return nfa_member(n, ())


def nfa_enumerate(n: Nfa, maxlen: int) -> list:
    """All accepted words of length <= maxlen, sorted by (length, lexicographic)."""
    e = normalize_nfa(n)
    if e.state_count == 0:
        return []
    # shortest distance to acceptance, for pruning dead prefixes
    dist = [None] * e.state_count
    back = [[] for _ in range(e.state_count)]
    for p, _, q in e.transitions:
        back[q].append(p)
    queue = deque()
    for f in e.final:
        dist[f] = 0
        queue.append(f)
    while queue:
        q = queue.popleft()
        for p in back[q]:
            if dist[p] is None:
                dist[p] = dist[q] + 1
                queue.append(p)
    out = []
    stack = [(frozenset(e.initial), ())]
    while stack:
        states, w = stack.pop()
        if states & e.final:
            out.append(w)
        budget = maxlen - len(w)
        if budget <= 0:
            continue
        succ = {}
        for p in states:
            for label, q in e.out[p]:
                if dist[q] is not None and dist[q] < budget:
                    succ.setdefault(label, set()).add(q)
        for label, qs in succ.items():
            stack.append((frozenset(qs), w + (label,)))
    out.sort(key=word_key)
    return out


def _disjoint(a: Nfa, b: Nfa):
    shift = a.state_count
    moved = {(p + shift, label, q + shift) for p, label, q in b.transitions}
    return shift, moved


def nfa_union(a: Nfa, b: Nfa) -> Nfa:
    shift, moved = _disjoint(a, b)
    return Nfa(a.state_count + b.state_count, a.transitions | moved,
               a.initial | {s + shift for s in b.initial},
               a.final | {s + shift for s in b.final},
               a.alphabet + b.alphabet)


def nfa_concat(a: Nfa, b: Nfa) -> Nfa:
    shift, moved = _disjoint(a, b)
    glue = {(f, None, s + shift) for f in a.final for s in b.initial}
    return Nfa(a.state_count + b.state_count, a.transitions | moved | glue,
               a.initial, {s + shift for s in b.final}, a.alphabet + b.alphabet)


def nfa_star(a: Nfa) -> Nfa:
    hub = a.state_count
    trans = set(a.transitions)
    trans |= {(hub, None, s) for s in a.initial}
    trans |= {(f, None, hub) for f in a.final}
    return Nfa(hub + 1, trans, {hub}, {hub}, a.alphabet)


def nfa_product_intersect(a: Nfa, b: Nfa) -> Nfa:
    """Product automaton; the alphabet is the intersection of both alphabets."""
    a, b = remove_epsilon(a), remove_epsilon(b)
    alphabet = tuple(set(a.alphabet) & set(b.alphabet))
    index = {}
    order = []

    def idx(pair):
        if pair not in index:
            index[pair] = len(order)
            order.append(pair)
        return index[pair]

    start = [idx((p, q)) for p in sorted(a.initial) for q in sorted(b.initial)]
    trans = set()
    i = 0
    while i < len(order):
        p, q = order[i]
        by_label = {}
        for label, q2 in b.out[q]:
            by_label.setdefault(label, []).append(q2)
        for label, p2 in a.out[p]:
            for q2 in by_label.get(label, ()):
                trans.add((i, label, idx((p2, q2))))
        i += 1
    final = {index[pq] for pq in order if pq[0] in a.final and pq[1] in b.final}
    return trim(Nfa(len(order), trans, start, final, alphabet))


def nfa_homomorphism(n: Nfa, h: Mapping[str, Sequence[str]]) -> Nfa:
    """Image of the language under the symbol-to-word map ``h``.

    Symbols outside ``h`` map to themselves; empty images become epsilon
    moves.
    """
    trans = set()
    count = n.state_count
    for p, label, q in n.transitions:
        image = (label,) if label is None or label not in h else tuple(h[label])
        if image == (None,) or not image:
            trans.add((p, None, q))
            continue
        cur = p
        for k, sym in enumerate(image):
            if k == len(image) - 1:
                nxt = q
            else:
                nxt, count = count, count + 1
            trans.add((cur, sym, nxt))
            cur = nxt
    alphabet = set()
    for s in n.alphabet:
        alphabet.update(h[s] if s in h else (s,))
    return Nfa(count, trans, n.initial, n.final, alphabet)


def nfa_inverse_homomorphism(n: Nfa, h: Mapping[str, Sequence[str]],
                             source_alphabet: Iterable[str]) -> Nfa:
    """Accepts ``w`` over ``source_alphabet`` iff ``h(w)`` is accepted by ``n``."""
    source = sorted(set(source_alphabet))
    trans = set()
    for p in range(n.state_count):
        start = n.closure([p])
        for s in source:
            states = start
            for sym in h.get(s, (s,)):
                states = n.step(states, sym)
            trans.update((p, s, q) for q in states)
    final = {p for p in range(n.state_count) if n.closure([p]) & n.final}
    return Nfa(n.state_count, trans, n.initial, final, source)


@dataclass(frozen=True)
class CountConstraint:
    """Constraint on the number of occurrences of one symbol."""

    kind: str
    threshold: int = 0

    def holds(self, count: int) -> bool:
        if self.kind == "EQ0":
            return count == 0
        if self.kind == "GE1":
            return count >= 1
        if self.kind == "LE":
            return count <= self.threshold
        if self.kind == "GT":
            return count > self.threshold
        raise ValueError(self.kind)

    def __str__(self):
        return self.kind if self.kind in ("EQ0", "GE1") else f"{self.kind}({self.threshold})"


EQ0 = CountConstraint("EQ0")
GE1 = CountConstraint("GE1")


def LE(t: int) -> CountConstraint:
    return CountConstraint("LE", t)


def GT(t: int) -> CountConstraint:
    return CountConstraint("GT", t)


def count_constraint_nfa(alphabet: Iterable[str], sym: str, constraint: CountConstraint) -> Nfa:
    """Counter automaton saturating at the constraint's cut-off."""
    alphabet = set(alphabet) | {sym}
    cap = {"EQ0": 0, "GE1": 1, "LE": constraint.threshold + 1,
           "GT": constraint.threshold + 1}[constraint.kind]
    trans = set()
    for c in range(cap + 1):
        for s in alphabet:
            if s != sym:
                trans.add((c, s, c))
        if c < cap:
            trans.add((c, sym, c + 1))
        elif constraint.kind != "EQ0":
            trans.add((c, sym, c))
    final = {c for c in range(cap + 1) if constraint.holds(c)}
    return Nfa(cap + 1, trans, {0}, final, alphabet)


def restrict_count(n: Nfa, sym: str, constraint: CountConstraint) -> Nfa:
    """Sublanguage of ``n`` whose words satisfy the count constraint."""
    return nfa_product_intersect(n, count_constraint_nfa(n.alphabet, sym, constraint))


def symbol_occurs(n: Nfa, sym: str) -> bool:
    """Some accepted word contains ``sym``."""
    if sym not in n.alphabet:
        return False
    return not nfa_is_empty(restrict_count(n, sym, GE1))


def all_words_exceed_count(n: Nfa, sym: str, threshold: int) -> bool:
    if nfa_is_empty(n):
        return False
    return nfa_is_empty(restrict_count(n, sym, LE(threshold)))


def without_epsilon(n: Nfa) -> Nfa:
    """The language minus the empty word."""
    plus = Nfa(2, {(i, s, 1) for i in (0, 1) for s in n.alphabet}, {0}, {1}, n.alphabet)
    return nfa_product_intersect(n, plus)


def is_epsilon_only(n: Nfa) -> bool:
    return accepts_epsilon(n) and nfa_is_empty(without_epsilon(n))


def nfa_to_regex(n: Nfa) -> Regex:
    """State elimination; used to print automata produced by rewriting."""
    e = normalize_nfa(n)
    if e.state_count == 0:
        return Empty()
    m = _minimize_dfa(_determinize(e))
    if m.state_count <= e.state_count:
        e = m
    k = e.state_count
    start, end = k, k + 1
    edges = {}

    def add(p, q, r):
        edges[(p, q)] = _alt(edges.get((p, q), Empty()), r)

    for p, label, q in sorted(e.transitions, key=_tkey):
        add(p, q, Sym(label))
    for s in sorted(e.initial):
        add(start, s, Epsilon())
    for f in sorted(e.final):
        add(f, end, Epsilon())
    for s in range(k):
        loop = _star(edges.pop((s, s), Empty()))
        ins = [(p, r) for (p, q), r in edges.items() if q == s]
        outs = [(q, r) for (p, q), r in edges.items() if p == s]
        for p, _ in ins:
            del edges[(p, s)]
        for q, _ in outs:
            del edges[(s, q)]
        for p, r_in in sorted(ins, key=lambda t: t[0]):
            for q, r_out in sorted(outs, key=lambda t: t[0]):
                add(p, q, _cat(_cat(r_in, loop), r_out))
    return edges.get((start, end), Empty())


# ---------------------------------------------------------------------------
# Parikh vectors and semilinear sets


@dataclass(frozen=True, order=True)
class ParikhVector:
    dims: Tuple[str, ...]
    counts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.dims) != len(self.counts):
            raise DimensionMismatch("dims and counts differ in length")
        if list(self.dims) != sorted(set(self.dims)):
            raise ValueError(f"dims must be sorted and unique: {self.dims}")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative count")

    @classmethod
    def of_word(cls, w: Sequence[str], dims: Iterable[str]) -> "ParikhVector":
        dims = tuple(sorted(set(dims)))
        pos = {d: i for i, d in enumerate(dims)}
        counts = [0] * len(dims)
        for s in w:
            counts[pos[s]] += 1
        return cls(dims, tuple(counts))

    @classmethod
    def from_dict(cls, counts: Mapping[str, int], dims: Iterable[str]) -> "ParikhVector":
        dims = tuple(sorted(set(dims)))
        return cls(dims, tuple(counts.get(d, 0) for d in dims))

    def __getitem__(self, sym: str) -> int:
        try:
            return self.counts[self.dims.index(sym)]
        except ValueError:
            return 0

    def as_dict(self) -> dict:
        return dict(zip(self.dims, self.counts))

    def total(self) -> int:
        return sum(self.counts)

    def __add__(self, other: "ParikhVector") -> "ParikhVector":
        if self.dims != other.dims:
            raise DimensionMismatch(f"{self.dims} vs {other.dims}")
        return ParikhVector(self.dims, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def is_zero(self) -> bool:
        return not any(self.counts)

    def __str__(self):
        return "<" + ", ".join(str(c) for c in self.counts) + ">"


@dataclass(frozen=True, order=True)
class LinearSet:
    base: ParikhVector
    periods: Tuple[ParikhVector, ...] = ()

    def __post_init__(self):
        periods = tuple(sorted(set(self.periods)))
        object.__setattr__(self, "periods", periods)
        for p in periods:
            if p.dims != self.base.dims:
                raise DimensionMismatch("period dims differ from base dims")

    @property
    def dims(self):
        return self.base.dims


@dataclass(frozen=True)
class SemilinearSet:
    dims: Tuple[str, ...]
    components: Tuple[LinearSet, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        comps = tuple(sorted(set(self.components)))
        for c in comps:
            if c.dims != self.dims:
                raise DimensionMismatch("component dims differ from set dims")
        object.__setattr__(self, "components", comps)

    def is_empty(self) -> bool:
        return not self.components


@lru_cache(maxsize=None)
def _in_cone(target: Tuple[int, ...], periods: Tuple[Tuple[int, ...], ...]) -> bool:
    """target is a natural combination of periods (all non-zero)."""
    if not any(target):
        return True
    if not periods:
        return False
    p, rest = periods[0], periods[1:]
    remaining = target
    while True:
        if _in_cone(remaining, rest):
            return True
        remaining = tuple(t - c for t, c in zip(remaining, p))
        if any(t < 0 for t in remaining):
            return False


def _linear_contains(base, periods, v) -> bool:
    diff = tuple(x - b for x, b in zip(v, base))
    if any(d < 0 for d in diff):
        return False
    return _in_cone(diff, periods)


def linear_member(ls: LinearSet, v: ParikhVector) -> bool:
    if v.dims != ls.dims:
        raise DimensionMismatch(f"{v.dims} vs {ls.dims}")
    return _linear_contains(ls.base.counts, tuple(p.counts for p in ls.periods), v.counts)


def semilinear_member(s: SemilinearSet, v: ParikhVector) -> bool:
    if v.dims != s.dims:
        raise DimensionMismatch(f"{v.dims} vs {s.dims}")
    return any(linear_member(c, v) for c in s.components)


def _simplify(comps: set) -> set:
    """Extensionally exact reductions on a set of (base, periods) pairs.

    Drops redundant periods, drops components contained in another one, and
    merges ``(b, P)`` with ``(b + p, Q)`` into ``(b, Q)`` when ``p`` is in
    ``Q``, ``P`` lies in the cone of ``Q`` and ``Q - {p}`` in the cone of ``P``.
    """
    def reduce_periods(periods):
        kept = sorted(periods)
        for p in sorted(periods, key=lambda v: (-sum(v), v)):
            others = tuple(q for q in kept if q != p)
            if _in_cone(p, others):
                kept = list(others)
        return tuple(sorted(kept))

    comps = {(b, reduce_periods(ps)) for b, ps in comps}
    changed = True
    while changed:
        changed = False
        kept = []
        order = sorted(comps, key=lambda c: (-len(c[1]), c))
        for a in order:
            if any(_linear_contains(b[0], b[1], a[0]) and all(_in_cone(p, b[1]) for p in a[1])
                   for b in kept):
                changed = True
                continue
            kept.append(a)
        comps = set(kept)
        merged = None
        for a in sorted(comps):
            for b in sorted(comps):
                if a == b:
                    continue
                for p in b[1]:
                    if tuple(x + y for x, y in zip(a[0], p)) != b[0]:
                        continue
                    rest = tuple(q for q in b[1] if q != p)
                    if all(_in_cone(q, b[1]) for q in a[1]) and all(_in_cone(q, a[1]) for q in rest):
                        merged = (a, b, (a[0], b[1]))
                        break
                if merged:
                    break
            if merged:
                break
        if merged:
            a, b, new = merged
            comps = (comps - {a, b}) | {new}
            changed = True
    return comps


def _simple_cycles(e: Nfa, dim_index):
    cycles = set()
    width = len(dim_index)
    for s in range(e.state_count):
        stack = [(s, (s,), (0,) * width)]
        while stack:
            q, path, vec = stack.pop()
            for label, r in e.out[q]:
                v2 = list(vec)
                v2[dim_index[label]] += 1
                v2 = tuple(v2)
                if r == s:
                    cycles.add((frozenset(path), v2))
                elif r > s and r not in path:
                    stack.append((r, path + (r,), v2))
    return cycles


def parikh(n: Nfa) -> SemilinearSet:
    """Semilinear Parikh image of the language of ``n``.

    Accepting runs are explored without repeating a state inside any stretch
    between two first visits; every other run is such a run plus simple cycles
    through its visited states.  Each explored run, paired with the simple
    cycles inside its visited set, gives one linear component.
    """
    dims = tuple(n.alphabet)
    e = normalize_nfa(n)
    if e.state_count > 1:
        m = _minimize_dfa(_determinize(e))
        if m.state_count <= e.state_count:
            e = m
    if e.state_count == 0:
        return SemilinearSet(dims, ())
    dim_index = {d: i for i, d in enumerate(dims)}
    width = len(dims)
    cycles = _simple_cycles(e, dim_index)

    bases = set()
    seen = set()
    stack = []
    for q0 in sorted(e.initial):
        cfg = (q0, frozenset([q0]), frozenset([q0]), (0,) * width)
        seen.add(cfg)
        stack.append(cfg)
    while stack:
        q, visited, seg, vec = stack.pop()
        if q in e.final:
            bases.add((visited, vec))
        for label, r in e.out[q]:
            if r not in visited:
                v2, s2 = visited | {r}, frozenset([r])
            elif r in seg:
                continue
            else:
                v2, s2 = visited, seg | {r}
            vec2 = list(vec)
            vec2[dim_index[label]] += 1
            cfg = (r, v2, s2, tuple(vec2))
            if cfg not in seen:
                seen.add(cfg)
                stack.append(cfg)

    comps = set()
    for visited, vec in bases:
        periods = tuple(sorted({v for states, v in cycles if states <= visited}))
        comps.add((vec, periods))
    comps = _simplify(comps)
    return SemilinearSet(dims, tuple(
        LinearSet(ParikhVector(dims, b), tuple(ParikhVector(dims, p) for p in ps))
        for b, ps in comps))
