"""Free graded-commutative algebras over Q with a degree +1 differential.

A model here is Lambda(V) = exterior(V_odd) (x) polynomial(V_even) on a
finite list of generators, each with a positive integer degree, together
with a differential d that raises degree by 1 and satisfies the graded
Leibniz rule

    d(x * y) = d(x) * y + (-1)^|x| x * d(y).

Monomials are kept in a canonical form: factors sorted by generator
declaration order, odd generators with exponent at most 1.  Reordering a
word of generators into canonical form picks up the Koszul sign
(-1)^k where k is the number of transposed odd-odd pairs; any odd
generator appearing twice kills the monomial.

Everything is exact: coefficients are fractions.Fraction throughout.
Models are immutable and hashable so degree-wise data (bases, boundary
matrices) can be memoized per model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

Scalar = Fraction | int

ORIGINS = ("plain", "base", "fiber")


@dataclass(frozen=True)
class GeneratorSpec:
    """One algebra generator: a name, a positive degree, and an origin tag.

    The origin tag ("base" / "fiber" / "plain") only matters for relative
    models, where quotienting by base generators must be possible.
    """

    name: str
    degree: int
    origin: str = "plain"

    def __post_init__(self):
        if not self.name or not self.name.isidentifier():
            raise ValueError(f"generator name must be an identifier: {self.name!r}")
        if self.degree < 1:
            raise ValueError(f"generator degree must be >= 1: {self.name} has {self.degree}")
        if self.origin not in ORIGINS:
            raise ValueError(f"unknown origin {self.origin!r} for generator {self.name}")

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class Monomial:
    """A canonical-form monomial: ((name, exponent), ...) in declaration order.

    The unit monomial is the empty tuple.  Instances are only meaningful
    relative to a model (the model supplies degrees and ordering).
    """

    exps: tuple[tuple[str, int], ...] = ()

    @property
    def is_unit(self) -> bool:
        return not self.exps

    @property
    def factor_count(self) -> int:
        # word length, counting exponents; decomposability means >= 2
        return sum(e for _, e in self.exps)

    def word(self) -> tuple[str, ...]:
        out = []
        for name, e in self.exps:
            out.extend([name] * e)
        return tuple(out)

    def format(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for name, e in self.exps:
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


def _format_coeff(c: Fraction) -> str:
    return str(c)


class Element:
    """A finite Q-linear combination of monomials in a fixed model.

    Supports +, -, scalar and element multiplication, and integer powers.
    Elements compare equal when they live over the same generator list and
    have identical term dictionaries; the differentials of the ambient
    models are irrelevant to equality.
    """

    __slots__ = ("model", "terms")

    def __init__(self, model: "SullivanModel", terms: Mapping[Monomial, Scalar] | None = None):
        self.model = model
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mon, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[mon] = c
        self.terms = clean

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int | None:
        """Common degree of all terms; None for 0; error if inhomogeneous."""
        if not self.terms:
            return None
        degs = {self.model.monomial_degree(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element, degrees {sorted(degs)}")
        return degs.pop()

    def coefficient(self, mon: Monomial) -> Fraction:
        return self.terms.get(mon, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        key = self.model.monomial_sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    # -- arithmetic ------------------------------------------------------

    def _check_same_model(self, other: "Element"):
        if self.model.generators != other.model.generators:
            raise ValueError("elements live over different generator lists")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.model.constant(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same_model(other)
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            terms[mon] = terms.get(mon, Fraction(0)) + c
        return Element(self.model, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.model, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Element) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Element(self.model, {m: c * v for m, v in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same_model(other)
        model = self.model
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mon, sign = model.multiply_monomials(ma, mb)
                if mon is None:
                    continue
                c = ca * cb * sign
                prev = out.get(mon, Fraction(0)) + c
                if prev:
                    out[mon] = prev
                elif mon in out:
                    del out[mon]
        return Element(model, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        out = self.model.unit()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.model.generators == other.model.generators and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Element is unhashable; compare with == or freeze via sorted_terms()")

    def d(self) -> "Element":
        return self.model.d(self)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mon, c in self.sorted_terms():
            if mon.is_unit:
                parts.append(_format_coeff(c))
            elif c == 1:
                parts.append(mon.format())
            elif c == -1:
                parts.append(f"-{mon.format()}")
            else:
                parts.append(f"{_format_coeff(c)}*{mon.format()}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


DiffTable = tuple[tuple[str, tuple[tuple[Monomial, Fraction], ...]], ...]


@dataclass(frozen=True)
class SullivanModel:
    """An immutable free graded-commutative model with differential.

    `generators` fixes the declaration order used for canonical monomial
    form.  `diff` maps each generator name to the term list of its
    differential; generators absent from `diff` have d = 0.  Build free
    models with `SullivanModel.free(...)`, then attach differentials with
    `with_differentials(...)`.
    """

    generators: tuple[GeneratorSpec, ...]
    diff: DiffTable = ()

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if g.name in seen:
                raise ValueError(f"duplicate generator name {g.name!r}")
            seen.add(g.name)
        for name, _ in self.diff:
            if name not in seen:
                raise ValueError(f"differential assigned to unknown generator {name!r}")

    # -- construction ----------------------------------------------------

    @classmethod
    def free(cls, gens: Iterable[GeneratorSpec | tuple]) -> "SullivanModel":
        specs = []
        for g in gens:
            if isinstance(g, GeneratorSpec):
                specs.append(g)
            else:
                specs.append(GeneratorSpec(*g))
        return cls(tuple(specs))

    def with_differentials(self, assignments: Mapping[str, "Element | None"]) -> "SullivanModel":
        """New model with d(name) = value for each given name (None means 0).

        Values may be elements of any model sharing this generator list.
        Unmentioned generators keep their current differential.  No
        validity check happens here; see `validate_model`.
        """
        table = {name: terms for name, terms in self.diff}
        for name, val in assignments.items():
            if name not in self.generator_index:
                raise ValueError(f"unknown generator {name!r}")
            if val is None or (isinstance(val, Element) and val.is_zero()):
                table.pop(name, None)
                continue
            if val.model.generators != self.generators:
                raise ValueError(f"d({name}) uses a different generator list")
            table[name] = tuple(sorted(val.terms.items(), key=lambda t: self.monomial_sort_key(t[0])))
        ordered = tuple((g.name, table[g.name]) for g in self.generators if g.name in table)
        return SullivanModel(self.generators, ordered)

    # -- lookups ---------------------------------------------------------

    @property
    def generator_index(self) -> Mapping[str, int]:
        return _generator_index(self.generators)

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def generator(self, name: str) -> GeneratorSpec:
        return self.generators[self.generator_index[name]]

    def degree_of(self, name: str) -> int:
        return self.generator(name).degree

    def is_odd(self, name: str) -> bool:
        return self.generator(name).is_odd

    def monomial_degree(self, mon: Monomial) -> int:
        return sum(self.degree_of(name) * e for name, e in mon.exps)

    def monomial_sort_key(self, mon: Monomial) -> tuple[int, ...]:
        vec = [0] * len(self.generators)
        idx = self.generator_index
        for name, e in mon.exps:
            vec[idx[name]] = e
        return tuple(vec)

    @property
    def is_simply_connected(self) -> bool:
        return all(g.degree >= 2 for g in self.generators)

    # -- element builders ------------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def constant(self, c: Scalar) -> Element:
        return Element(self, {Monomial(): Fraction(c)})

    def unit(self) -> Element:
        return self.constant(1)

    def gen(self, name: str) -> Element:
        if name not in self.generator_index:
            raise ValueError(f"unknown generator {name!r}")
        return Element(self, {Monomial(((name, 1),)): Fraction(1)})

    def monomial(self, mon: Monomial) -> Element:
        return Element(self, {mon: Fraction(1)})

    def element_from_terms(self, terms: Mapping[Monomial, Scalar]) -> Element:
        return Element(self, terms)

    # -- canonical form and products -------------------------------------

    def normalize_word(self, word: Sequence[str]) -> tuple[Monomial | None, int]:
        """Canonical monomial and Koszul sign for a word of generator names.

        Returns (None, 0) when an odd generator repeats.  The sign is
        (-1)^k, k the number of odd-odd pairs out of declaration order.
        """
        idx = self.generator_index
        positions = []
        for name in word:
            if name not in idx:
                raise ValueError(f"unknown generator {name!r}")
            positions.append(idx[name])
        odd_positions = [p for p in positions if self.generators[p].is_odd]
        inversions = 0
        for i in range(len(odd_positions)):
            for j in range(i + 1, len(odd_positions)):
                if odd_positions[i] > odd_positions[j]:
                    inversions += 1
        counts: dict[int, int] = {}
        for p in positions:
            counts[p] = counts.get(p, 0) + 1
        for p, e in counts.items():
            if self.generators[p].is_odd and e > 1:
                return None, 0
        exps = tuple(
            (self.generators[p].name, counts[p]) for p in sorted(counts)
        )
        return Monomial(exps), (-1) ** inversions

    def multiply_monomials(self, a: Monomial, b: Monomial) -> tuple[Monomial | None, int]:
        """Product of two canonical monomials: (canonical monomial, sign).

        (None, 0) when an odd generator would be squared.  Sign counts the
        odd-odd pairs (x in a, y in b) with x declared after y.
        """
        idx = self.generator_index
        merged: dict[int, int] = {}
        for name, e in a.exps:
            merged[idx[name]] = merged.get(idx[name], 0) + e
        for name, e in b.exps:
            p = idx[name]
            merged[p] = merged.get(p, 0) + e
            if self.generators[p].is_odd and merged[p] > 1:
                return None, 0
        a_odd = [idx[name] for name, e in a.exps if self.generators[idx[name]].is_odd]
        b_odd = [idx[name] for name, e in b.exps if self.generators[idx[name]].is_odd]
        inversions = sum(1 for x in a_odd for y in b_odd if x > y)
        exps = tuple((self.generators[p].name, merged[p]) for p in sorted(merged))
        return Monomial(exps), (-1) ** inversions

    # -- differential ----------------------------------------------------

    def d_of_generator(self, name: str) -> Element:
        for n, terms in self.diff:
            if n == name:
                return Element(self, dict(terms))
        if name not in self.generator_index:
            raise ValueError(f"unknown generator {name!r}")
        return self.zero()

    def d(self, x: "Element | str") -> Element:
        """Differential, extended from generators by the graded Leibniz rule."""
        if isinstance(x, str):
            return self.d_of_generator(x)
        if x.model.generators != self.generators:
            raise ValueError("element lives over a different generator list")
        out = self.zero()
        for mon, c in x.terms.items():
            out = out + c * self._d_monomial(mon)
        return out

    def _d_monomial(self, mon: Monomial) -> Element:
        word = mon.word()
        out = self.zero()
        prefix = self.unit()
        prefix_degree = 0
        for j, name in enumerate(word):
            dw = self.d_of_generator(name)
            if dw:
                rest = self.unit()
                for other in word[j + 1:]:
                    rest = rest * self.gen(other)
                sign = -1 if prefix_degree % 2 else 1
                out = out + sign * (prefix * dw * rest)
            prefix = prefix * self.gen(name)
            prefix_degree += self.degree_of(name)
        return out

    # -- bases -----------------------------------------------------------

    def basis_of_degree(self, k: int) -> tuple[Monomial, ...]:
        """All canonical monomials of total degree k, ascending in the
        exponent-vector lexicographic order."""
        if k < 0:
            return ()
        return _basis_of_degree(self.generators, k)

    def dimension_of_degree(self, k: int) -> int:
        return len(self.basis_of_degree(k))


@lru_cache(maxsize=None)
def _generator_index(generators: tuple[GeneratorSpec, ...]) -> Mapping[str, int]:
    return {g.name: i for i, g in enumerate(generators)}


@lru_cache(maxsize=None)
def _basis_of_degree(generators: tuple[GeneratorSpec, ...], k: int) -> tuple[Monomial, ...]:
    out: list[Monomial] = []

    def rec(i: int, rem: int, acc: list[tuple[str, int]]):
        if i == len(generators):
            if rem == 0:
                out.append(Monomial(tuple(acc)))
            return
        g = generators[i]
        max_e = 1 if g.is_odd else rem // g.degree
        for e in range(0, max_e + 1):
            if e * g.degree > rem:
                break
            if e:
                acc.append((g.name, e))
            rec(i + 1, rem - e * g.degree, acc)
            if e:
                acc.pop()

    rec(0, k, [])
    return tuple(out)


# -- validation ----------------------------------------------------------


@dataclass
class ValidationReport:
    """Outcome of the structural checks on a model."""

    ok: bool
    d_squared_failures: list[tuple[str, str]] = field(default_factory=list)
    degree_failures: list[tuple[str, str]] = field(default_factory=list)
    nonminimal_terms: list[tuple[str, str]] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)

    def summary(self) -> str:
        if self.ok:
            return "ok"
        lines = []
        for name, expr in self.degree_failures:
            lines.append(f"degree: d({name}) = {expr} is not homogeneous of degree deg({name})+1")
        for name, expr in self.d_squared_failures:
            lines.append(f"d*d: d(d({name})) = {expr} != 0")
        for name, mon in self.nonminimal_terms:
            lines.append(f"minimality: d({name}) has the non-decomposable term {mon}")
        lines.extend(self.messages)
        return "\n".join(lines)


def validate_model(model: SullivanModel, require_minimal: bool = True) -> ValidationReport:
    """Check degrees, d*d = 0, and (optionally) minimality.

    d*d = 0 is checked on generators only, which suffices by the Leibniz
    rule.  Minimality asks every term of every d(generator) to have at
    least two factors counted with multiplicity.
    """
    report = ValidationReport(ok=True)
    for g in model.generators:
        dval = model.d_of_generator(g.name)
        if dval.is_zero():
            continue
        degs = {model.monomial_degree(m) for m in dval.terms}
        if degs != {g.degree + 1}:
            report.degree_failures.append((g.name, repr(dval)))
        dd = model.d(dval)
        if not dd.is_zero():
            report.d_squared_failures.append((g.name, repr(dd)))
        if require_minimal:
            for mon in dval.terms:
                if mon.factor_count < 2:
                    report.nonminimal_terms.append((g.name, mon.format()))
    report.ok = not (report.d_squared_failures or report.degree_failures or report.nonminimal_terms)
    return report


# -- module-level aliases mirroring the operation names -------------------


def normalize_monomial(model: SullivanModel, word: Sequence[str]) -> tuple[Monomial | None, int]:
    return model.normalize_word(word)


def mul(a: Element, b: Element) -> Element:
    return a * b


def differential(x: Element) -> Element:
    return x.model.d(x)


def basis_of_degree(model: SullivanModel, k: int) -> tuple[Monomial, ...]:
    return model.basis_of_degree(k)
