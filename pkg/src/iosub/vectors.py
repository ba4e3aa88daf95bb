"""Vector functions with natural polynomial coefficients.

A :class:`VectorFunction` maps ``N^n`` to ``N^dims`` as a sum of
monomial-times-vector terms.  Coefficients are naturals, so no cancellation
ever happens and the linearity predicates can be read off the canonical
term map.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .automata import LinearSet, ParikhVector, SemilinearSet
from .errors import ArityMismatch, DimensionMismatch, NotExistentiallyLinear, UnknownDimension


@dataclass(frozen=True, order=True)
class Monomial:
    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: Dict[int, int] = {}
        for param, exp in self.factors:
            if exp < 0:
                raise ValueError("negative exponent")
            if exp:
                merged[param] = merged.get(param, 0) + exp
        object.__setattr__(self, "factors", tuple(sorted(merged.items())))

    @classmethod
    def var(cls, param: int, exp: int = 1) -> "Monomial":
        return cls(((param, exp),))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)

    def exponent(self, param: int) -> int:
        for p, e in self.factors:
            if p == param:
                return e
        return 0

    def params(self):
        return [p for p, _ in self.factors]

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.factors + other.factors)

    def shifted(self, offset: int) -> "Monomial":
        return Monomial(tuple((p + offset, e) for p, e in self.factors))

    def value(self, assignment: Sequence[int]) -> int:
        out = 1
        for p, e in self.factors:
            out *= assignment[p] ** e
        return out

    def __str__(self):
        if not self.factors:
            return "1"
        return "".join(f"x{p}" if e == 1 else f"x{p}^{e}" for p, e in self.factors)


ONE = Monomial()


class ScalarPolynomial:
    """Polynomial in the parameters with positive natural coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[Monomial, int], Iterable[Tuple[Monomial, int]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: Dict[Monomial, int] = {}
        for m, c in items:
            if c < 0:
                raise ValueError("coefficients must be natural")
            if c:
                merged[m] = merged.get(m, 0) + c
        object.__setattr__(self, "terms", dict(sorted(merged.items())))

    def __setattr__(self, name, value):
        raise AttributeError("ScalarPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> "ScalarPolynomial":
        return cls({ONE: c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = ScalarPolynomial.constant(other)
        return isinstance(other, ScalarPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "ScalarPolynomial") -> "ScalarPolynomial":
        return ScalarPolynomial(list(self.terms.items()) + list(other.terms.items()))

    def __mul__(self, other: "ScalarPolynomial") -> "ScalarPolynomial":
        return ScalarPolynomial([(m1 * m2, c1 * c2) for m1, c1 in self.terms.items()
                                 for m2, c2 in other.terms.items()])

    def evaluate(self, assignment: Sequence[int]) -> int:
        return sum(c * m.value(assignment) for m, c in self.terms.items())

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def is_affine(self) -> bool:
        return self.degree <= 1

    def constant_term(self) -> int:
        return self.terms.get(ONE, 0)

    def __repr__(self):
        return f"ScalarPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            if m == ONE:
                parts.append(str(c))
            else:
                parts.append(str(m) if c == 1 else f"{c}{m}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# provenance


@dataclass(frozen=True)
class FromLinear:
    linear: Optional[LinearSet]
    label: str = ""


@dataclass(frozen=True)
class Composed:
    dim: str
    left: "Provenance"
    right: "Provenance"


@dataclass(frozen=True)
class HandBuilt:
    note: str = ""


Provenance = Union[FromLinear, Composed, HandBuilt]


def is_factored(p: Provenance) -> bool:
    """Built only from linear leaves and compositions."""
    if isinstance(p, FromLinear):
        return True
    if isinstance(p, Composed):
        return is_factored(p.left) and is_factored(p.right)
    return False


VectorTerms = Tuple[Tuple[Monomial, Tuple[int, ...]], ...]


@dataclass(frozen=True)
class VectorFunction:
    dims: Tuple[str, ...]
    param_count: int
    terms: VectorTerms
    provenance: Provenance = field(default=HandBuilt(), compare=False)

    def __post_init__(self):
        dims = tuple(self.dims)
        if list(dims) != sorted(set(dims)):
            raise ValueError(f"dims must be sorted and unique: {dims}")
        object.__setattr__(self, "dims", dims)
        merged: Dict[Monomial, list] = {}
        for m, vec in self.terms:
            vec = tuple(vec)
            if len(vec) != len(dims):
                raise DimensionMismatch(f"term vector {vec} does not match dims {dims}")
            if any(p >= self.param_count for p in m.params()):
                raise ArityMismatch(f"monomial {m} exceeds {self.param_count} parameters")
            acc = merged.setdefault(m, [0] * len(dims))
            for i, c in enumerate(vec):
                if c < 0:
                    raise ValueError("negative vector entry")
                acc[i] += c
        canon = tuple((m, tuple(v)) for m, v in sorted(merged.items()) if any(v))
        object.__setattr__(self, "terms", canon)

    @classmethod
    def build(cls, dims: Iterable[str], param_count: int,
              terms: Union[Mapping, Iterable], provenance: Provenance = HandBuilt()):
        """Accepts vectors as count tuples or ``{symbol: count}`` dicts."""
        dims = tuple(sorted(set(dims)))
        items = terms.items() if isinstance(terms, Mapping) else terms
        fixed = []
        for m, vec in items:
            if isinstance(vec, Mapping):
                vec = tuple(vec.get(d, 0) for d in dims)
            elif isinstance(vec, ParikhVector):
                vec = vec.counts
            fixed.append((m, tuple(vec)))
        return cls(dims, param_count, tuple(fixed), provenance)

    @property
    def term_map(self) -> Dict[Monomial, Tuple[int, ...]]:
        return dict(self.terms)

    def coordinate(self, dim: str) -> ScalarPolynomial:
        if dim not in self.dims:
            raise UnknownDimension(dim)
        k = self.dims.index(dim)
        return ScalarPolynomial([(m, v[k]) for m, v in self.terms])

    def total_size(self) -> ScalarPolynomial:
        return ScalarPolynomial([(m, sum(v)) for m, v in self.terms])

    def with_dims(self, dims: Iterable[str]) -> "VectorFunction":
        """Same function over a superset of dimensions (new ones read 0)."""
        dims = tuple(sorted(set(dims) | set(self.dims)))
        if dims == self.dims:
            return self
        pos = [dims.index(d) for d in self.dims]
        terms = []
        for m, v in self.terms:
            vec = [0] * len(dims)
            for i, c in zip(pos, v):
                vec[i] = c
            terms.append((m, tuple(vec)))
        return VectorFunction(dims, self.param_count, tuple(terms), self.provenance)

    def project(self, dims: Iterable[str]) -> "VectorFunction":
        keep = tuple(sorted(set(dims)))
        pos = [self.dims.index(d) for d in keep]
        return VectorFunction(keep, self.param_count,
                              tuple((m, tuple(v[i] for i in pos)) for m, v in self.terms),
                              self.provenance)

    def shifted(self, offset: int) -> "VectorFunction":
        return VectorFunction(self.dims, self.param_count + offset,
                              tuple((m.shifted(offset), v) for m, v in self.terms),
                              self.provenance)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, v in self.terms:
            vec = "<" + ", ".join(map(str, v)) + ">"
            parts.append(vec if m == ONE else f"{m}{vec}")
        return " + ".join(parts)


@dataclass(frozen=True)
class FunctionalVectorSet:
    dims: Tuple[str, ...]
    components: Tuple[VectorFunction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "components", tuple(self.components))
        for f in self.components:
            if f.dims != self.dims:
                raise DimensionMismatch(f"component dims {f.dims} differ from {self.dims}")

    def with_dims(self, dims: Iterable[str]) -> "FunctionalVectorSet":
        dims = tuple(sorted(set(dims) | set(self.dims)))
        return FunctionalVectorSet(dims, tuple(f.with_dims(dims) for f in self.components))

    def __len__(self):
        return len(self.components)


def union_sets(sets: Sequence[FunctionalVectorSet]) -> FunctionalVectorSet:
    dims = sorted(set().union(*(s.dims for s in sets))) if sets else []
    comps = []
    for s in sets:
        comps.extend(s.with_dims(dims).components)
    return FunctionalVectorSet(tuple(dims), tuple(comps))


# ---------------------------------------------------------------------------
# operations


def from_semilinear(s: SemilinearSet) -> FunctionalVectorSet:
    comps = []
    for ci, ls in enumerate(s.components):
        terms = [(ONE, ls.base.counts)]
        terms += [(Monomial.var(j), p.counts) for j, p in enumerate(ls.periods)]
        comps.append(VectorFunction(s.dims, len(ls.periods), tuple(terms),
                                    FromLinear(ls, f"component {ci}")))
    return FunctionalVectorSet(s.dims, tuple(comps))


def evaluate(f: VectorFunction, assignment: Sequence[int]) -> ParikhVector:
    if len(assignment) != f.param_count:
        raise ArityMismatch(f"expected {f.param_count} values, got {len(assignment)}")
    out = [0] * len(f.dims)
    for m, v in f.terms:
        k = m.value(assignment)
        if k:
            for i, c in enumerate(v):
                out[i] += k * c
    return ParikhVector(f.dims, tuple(out))


def wtt(f: VectorFunction, dim: str) -> VectorFunction:
    """``f`` with coordinate ``dim`` zeroed."""
    if dim not in f.dims:
        raise UnknownDimension(dim)
    k = f.dims.index(dim)
    terms = tuple((m, v[:k] + (0,) + v[k + 1:]) for m, v in f.terms)
    return VectorFunction(f.dims, f.param_count, terms, f.provenance)


def on(f: VectorFunction, dim: str) -> ScalarPolynomial:
    return f.coordinate(dim)


def io_compose(f: VectorFunction, dim: str, g: VectorFunction) -> VectorFunction:
    """``wtt(f, dim) + on(f, dim) * g`` with ``g``'s parameters placed after ``f``'s."""
    if dim not in f.dims:
        raise UnknownDimension(dim)
    dims = sorted(set(f.dims) | set(g.dims))
    f2 = f.with_dims(dims)
    g2 = g.with_dims(dims)
    n1 = f.param_count
    terms = list(wtt(f2, dim).terms)
    for m1, c in on(f2, dim).terms.items():
        for m2, v in g2.terms:
            terms.append((m1 * m2.shifted(n1), tuple(c * x for x in v)))
    return VectorFunction(tuple(dims), n1 + g.param_count, tuple(terms),
                          Composed(dim, f.provenance, g.provenance))


def compose_sets(e1: FunctionalVectorSet, dim: str, e2: FunctionalVectorSet) -> FunctionalVectorSet:
    if dim not in e1.dims:
        raise UnknownDimension(dim)
    dims = tuple(sorted(set(e1.dims) | set(e2.dims)))
    comps = tuple(io_compose(f, dim, g) for f in e1.components for g in e2.components)
    return FunctionalVectorSet(dims, comps)


def is_i_linear(f: VectorFunction, param: int) -> bool:
    if not 0 <= param < f.param_count:
        raise ArityMismatch(f"parameter {param} out of range for {f.param_count}")
    return all(m.exponent(param) <= 1 for m, _ in f.terms)


def is_existentially_linear(x: Union[VectorFunction, FunctionalVectorSet]) -> bool:
    if isinstance(x, FunctionalVectorSet):
        return any(is_existentially_linear(f) for f in x.components)
    return any(is_i_linear(x, i) for i in range(x.param_count))


def is_universally_linear(x: Union[VectorFunction, FunctionalVectorSet]) -> bool:
    if isinstance(x, FunctionalVectorSet):
        return all(is_universally_linear(f) for f in x.components)
    return all(is_i_linear(x, i) for i in range(x.param_count))


def is_linear_representation(f: VectorFunction) -> bool:
    return all(m.degree <= 1 for m, _ in f.terms)


class DimClass(str, enum.Enum):
    CONSTANT = "Constant"
    LINEAR = "Linear"
    FUNCTIONAL = "Functional"

    def __str__(self):
        return self.value


def classify_dimension(e: FunctionalVectorSet, dim: str) -> DimClass:
    if dim not in e.dims:
        raise UnknownDimension(dim)
    polys = [f.coordinate(dim) for f in e.components]
    if all(p.is_constant() for p in polys):
        return DimClass.CONSTANT
    if all(p.is_affine() for p in polys):
        return DimClass.LINEAR
    return DimClass.FUNCTIONAL


@dataclass(frozen=True)
class GrowthWitness:
    component_index: int
    param_index: Optional[int]
    assignment: Tuple[int, ...]
    K: int
    A: int
    degenerate: bool = False

    def length_at(self, i: int) -> int:
        return self.K + i * self.A

    def assignment_at(self, i: int) -> Tuple[int, ...]:
        a = list(self.assignment)
        if self.param_index is not None:
            a[self.param_index] += i
        return tuple(a)


def growth_witness(e: FunctionalVectorSet) -> GrowthWitness:
    """Arithmetic progression of sizes realized by one linear direction.

    When no component is linear in any parameter but some component has no
    parameters at all, that component is returned as a degenerate witness
    with ``param_index=None`` and ``A = 0``.
    """
    for ci, f in enumerate(e.components):
        for l in range(f.param_count):
            if is_i_linear(f, l):
                total = f.total_size()
                base = (0,) * f.param_count
                K = total.evaluate(base)
                step = list(base)
                step[l] = 1
                A = total.evaluate(step) - K
                return GrowthWitness(ci, l, base, K, A, degenerate=(A == 0))
    for ci, f in enumerate(e.components):
        if f.param_count == 0:
            K = f.total_size().evaluate(())
            return GrowthWitness(ci, None, (), K, 0, degenerate=True)
    raise NotExistentiallyLinear("no component is linear in any parameter")


def image_member_bounded(f: VectorFunction, v: ParikhVector, param_bound: int) -> bool:
    """Exhaustive search for an assignment with every parameter <= param_bound.

    All coefficients are natural, so ``f`` is monotone in every parameter and
    partial assignments (unset parameters at 0) give lower bounds.
    """
    if v.dims != f.dims:
        raise DimensionMismatch(f"{v.dims} vs {f.dims}")
    target = v.counts
    n = f.param_count
    assignment = [0] * n

    def value():
        return evaluate(f, assignment).counts

    def search(i):
        cur = value()
        if any(c > t for c, t in zip(cur, target)):
            return False
        if i == n:
            return cur == target
        for k in range(param_bound + 1):
            assignment[i] = k
            cur = value()
            if any(c > t for c, t in zip(cur, target)):
                break
            if search(i + 1):
                return True
        assignment[i] = 0
        return False

    return search(0)


def set_member_bounded(e: FunctionalVectorSet, v: ParikhVector, param_bound: int) -> bool:
    return any(image_member_bounded(f, v, param_bound) for f in e.components)


def sample_image(f: VectorFunction, param_bound: int):
    """Every value of ``f`` over assignments with parameters <= param_bound."""
    for a in itertools.product(range(param_bound + 1), repeat=f.param_count):
        yield a, evaluate(f, a)
