"""Homotopy rank vectors and which of them carry an elliptic model.

A rank vector f records, per degree i, the rank f_i of the degree-i
rational homotopy.  For a model on such generators the formal dimension
is

    n = sum over odd i of i*f_i  -  sum over even i of (i-1)*f_i,

and finite-dimensional cohomology forces the classical numeric bounds
(at least as many odd ranks as even, odd degrees summing to at most
2n-1, even degrees to at most n).  `enumerate_candidates` lists every
vector passing those bounds for a given n; `realizable` then searches
for an actual minimal model with the right cohomology profile, by trying
differentials with coefficients from a small set and auditing Betti
numbers above the formal dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Element, GeneratorSpec, SullivanModel, validate_model
from .cohomology import BettiTable, betti, betti_table


@dataclass(frozen=True)
class RankVector:
    """Sparse map degree -> rank, degrees ascending, zero ranks dropped."""

    counts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        degs = [d for d, _ in self.counts]
        if degs != sorted(set(degs)):
            raise ValueError("degrees must be strictly ascending")
        for d, c in self.counts:
            if d < 1 or c < 1:
                raise ValueError(f"bad entry {d}:{c}")

    @classmethod
    def of(cls, ranks: Mapping[int, int]) -> "RankVector":
        return cls(tuple(sorted((d, c) for d, c in ranks.items() if c)))

    @classmethod
    def parse(cls, text: str) -> "RankVector":
        """Parse "2:1,3:2"; whitespace is tolerated."""
        ranks: dict[int, int] = {}
        text = text.strip()
        if not text:
            return cls(())
        for chunk in text.split(","):
            try:
                d, c = chunk.split(":")
                d, c = int(d), int(c)
            except ValueError:
                raise ValueError(f"expected degree:rank, got {chunk.strip()!r}")
            if d in ranks:
                raise ValueError(f"degree {d} repeated")
            ranks[d] = c
        return cls.of(ranks)

    def to_string(self) -> str:
        return ",".join(f"{d}:{c}" for d, c in self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def get(self, degree: int) -> int:
        return dict(self.counts).get(degree, 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.counts)

    @property
    def max_degree(self) -> int:
        return self.counts[-1][0] if self.counts else 0

    def total(self, parity: str | None = None) -> int:
        if parity == "odd":
            return sum(c for d, c in self.counts if d % 2 == 1)
        if parity == "even":
            return sum(c for d, c in self.counts if d % 2 == 0)
        return sum(c for _, c in self.counts)

    def weighted(self, parity: str) -> int:
        if parity == "odd":
            return sum(d * c for d, c in self.counts if d % 2 == 1)
        return sum(d * c for d, c in self.counts if d % 2 == 0)

    def padded(self, upto: int) -> tuple[int, ...]:
        m = self.as_dict()
        return tuple(m.get(i, 0) for i in range(1, upto + 1))

    def sort_key(self) -> tuple[int, ...]:
        # ascending lex on (f_1, f_2, ...); shared-length padding happens
        # implicitly since trailing zeros never flip a lex comparison here
        return self.padded(self.max_degree)

    def __str__(self):
        return "{" + ", ".join(f"{d}:{c}" for d, c in self.counts) + "}"


def canonical_sorted(vectors: Iterable[RankVector]) -> list[RankVector]:
    vs = list(vectors)
    upto = max((v.max_degree for v in vs), default=0)
    return sorted(vs, key=lambda v: v.padded(upto))


def formal_dimension(f: RankVector) -> int:
    return sum(d * c for d, c in f.counts if d % 2 == 1) - sum(
        (d - 1) * c for d, c in f.counts if d % 2 == 0
    )


def rank_vector_of_model(model: SullivanModel) -> RankVector:
    ranks: dict[int, int] = {}
    for g in model.generators:
        ranks[g.degree] = ranks.get(g.degree, 0) + 1
    return RankVector.of(ranks)


def feasibility_failures(f: RankVector, n: int) -> list[str]:
    """Which of the finite-cohomology numeric constraints fail for target n."""
    out = []
    if formal_dimension(f) != n:
        out.append(f"formal dimension {formal_dimension(f)} != {n}")
    if f.total("even") > f.total("odd"):
        out.append(f"even count {f.total('even')} exceeds odd count {f.total('odd')}")
    if f.weighted("odd") > 2 * n - 1:
        out.append(f"odd degree sum {f.weighted('odd')} exceeds {2 * n - 1}")
    if f.weighted("even") > n:
        out.append(f"even degree sum {f.weighted('even')} exceeds {n}")
    return out


def fh_feasible(f: RankVector, n: int) -> bool:
    return not feasibility_failures(f, n)


def enumerate_candidates(n: int) -> list[RankVector]:
    """All rank vectors feasible for formal dimension n, simply connected.

    Support lies in [2, 2n-1]; the weighted bounds box the search, then
    `fh_feasible` filters.  Output is in ascending lexicographic order on
    the padded sequences.
    """
    if n < 1:
        return []
    out: list[RankVector] = []
    degrees = range(2, 2 * n)

    def rec(i: int, odd_budget: int, even_budget: int, acc: list[tuple[int, int]]):
        if i >= 2 * n:
            f = RankVector(tuple(acc))
            if fh_feasible(f, n):
                out.append(f)
            return
        cap = odd_budget // i if i % 2 else even_budget // i
        for c in range(0, cap + 1):
            if c:
                acc.append((i, c))
            rec(
                i + 1,
                odd_budget - (i * c if i % 2 else 0),
                even_budget - (0 if i % 2 else i * c),
                acc,
            )
            if c:
                acc.pop()

    rec(2, 2 * n - 1, n, [])
    return canonical_sorted(out)


# -- realizability search -------------------------------------------------


@dataclass
class RealizabilityVerdict:
    """Result of the model search for one rank vector.

    status is "realized" (model and betti present), "unrealizable" (the
    whole coefficient box was exhausted), or "inconclusive" (budget ran
    out first).  `examined` counts complete differential assignments that
    passed d*d = 0.
    """

    status: str
    f: RankVector
    model: SullivanModel | None = None
    betti: BettiTable | None = None
    examined: int = 0
    note: str = ""


def generators_for(f: RankVector) -> list[GeneratorSpec]:
    gens = []
    for d, c in f.counts:
        if c == 1:
            gens.append(GeneratorSpec(f"g{d}", d))
        else:
            gens.extend(GeneratorSpec(f"g{d}_{j}", d) for j in range(1, c + 1))
    return gens


def _betti_profile_ok(model: SullivanModel, n: int, audit_bound: int) -> bool:
    # anything alive above the formal dimension disqualifies; check the
    # cheap low degrees first, then demand the top class
    for k in range(n + 1, audit_bound + 1):
        if betti(model, k):
            return False
    return betti(model, n) > 0


def _pure_even_part(free: SullivanModel, elem) -> "Element":
    even = {g.name for g in free.generators if not g.is_odd}
    terms = {
        m: c
        for m, c in elem.terms.items()
        if all(name in even for name, _ in m.exps)
    }
    return free.element_from_terms(terms)


def _even_monomials(free: SullivanModel, k: int):
    if k < 0:
        return []
    even = {g.name for g in free.generators if not g.is_odd}
    return [
        m
        for m in free.basis_of_degree(k)
        if all(name in even for name, _ in m.exps)
    ]


def _even_ideal_rank(free: SullivanModel, qs, kstar: int) -> int:
    """Rank, in the polynomial part of degree kstar, of the ideal slice
    generated by the pure-even relation candidates qs."""
    from .linalg import RationalMatrix

    basis = _even_monomials(free, kstar)
    index = {m: i for i, m in enumerate(basis)}
    cols = []
    for q in qs:
        if q.is_zero():
            continue
        for m in _even_monomials(free, kstar - q.degree()):
            prod = free.monomial(m) * q
            cols.append({index[mon]: c for mon, c in prod.terms.items()})
    if not cols:
        return 0
    return RationalMatrix.from_columns(cols, len(basis)).rank()


def realizable(
    f: RankVector,
    coeff_set: Sequence = (-1, 0, 1),
    audit_bound: int | None = None,
    max_models: int | None = None,
) -> RealizabilityVerdict:
    """Search for a minimal model on f's generators with an elliptic profile.

    Differentials are built in ascending generator degree; each candidate
    value is a combination of decomposable monomials of the right degree
    with coefficients from coeff_set.  d*d = 0 prunes as soon as it can,
    and so does a rank bound on the ideal the polynomial part must
    swallow: with the even generators closed, cohomology in an even
    degree just above n contains the cokernel of the relation ideal
    there, so branches that cannot reach full rank are dead.  A complete
    model passes when its Betti numbers vanish strictly above
    n = formal_dimension(f) up to audit_bound (default 2n+2) and the
    degree-n cohomology is nonzero.
    """
    if any(d < 2 for d in f.support):
        raise ValueError("search requires a simply connected rank vector")
    n = formal_dimension(f)
    if n < 1:
        return RealizabilityVerdict("unrealizable", f, note="formal dimension < 1")
    bound = audit_bound if audit_bound is not None else 2 * n + 2
    coeffs = tuple(Fraction(c) for c in coeff_set)
    free = SullivanModel.free(generators_for(f))
    order = sorted(free.generators, key=lambda g: g.degree)

    combos_by_degree: dict[int, list] = {}
    for g in order:
        if g.degree in combos_by_degree:
            continue
        cands = [
            m for m in free.basis_of_degree(g.degree + 1) if m.factor_count >= 2
        ]
        combos_by_degree[g.degree] = [cands, None]

    kstar = n + 1 if (n + 1) % 2 == 0 else n + 2
    dim_even_top = len(_even_monomials(free, kstar))
    evens_forced_closed = all(
        not combos_by_degree[g.degree][0] for g in order if not g.is_odd
    )

    def tail_capacity(idx: int) -> int:
        return sum(
            len(_even_monomials(free, kstar - h.degree - 1))
            for h in order[idx:]
            if h.is_odd
        )

    examined = 0
    out_of_budget = False

    def assignments_for(degree: int):
        cands, cached = combos_by_degree[degree]
        if cached is None:
            cached = list(itertools.product(coeffs, repeat=len(cands)))
            combos_by_degree[degree] = [cands, cached]
        return cands, cached

    def build(idx: int, current: SullivanModel, floor: dict[int, int], relations: tuple):
        nonlocal examined, out_of_budget
        if out_of_budget:
            return None
        if idx == len(order):
            examined += 1
            if max_models is not None and examined > max_models:
                out_of_budget = True
                return None
            if dim_even_top and all(
                current.d(g.name).is_zero() for g in order if not g.is_odd
            ):
                # cheap necessary check before the full Betti audit
                if _even_ideal_rank(free, relations, kstar) < dim_even_top:
                    return None
            if _betti_profile_ok(current, n, bound):
                return current
            return None
        g = order[idx]
        cands, combos = assignments_for(g.degree)
        # same-degree generators are interchangeable: enumerate their
        # choices in nondecreasing combo order to skip permuted copies
        start = floor.get(g.degree, 0)
        for ci in range(start, len(combos)):
            combo = combos[ci]
            val = free.zero()
            for c, mon in zip(combo, cands):
                if c:
                    val = val + c * free.monomial(mon)
            nxt = current.with_differentials({g.name: val})
            if not nxt.d(nxt.d(g.name)).is_zero():
                continue
            rel2 = relations
            if g.is_odd and not val.is_zero():
                rel2 = relations + (_pure_even_part(free, val),)
            if evens_forced_closed and dim_even_top:
                reach = _even_ideal_rank(free, rel2, kstar) + tail_capacity(idx + 1)
                if reach < dim_even_top:
                    continue
            found = build(idx + 1, nxt, {**floor, g.degree: ci}, rel2)
            if found is not None:
                return found
            if out_of_budget:
                return None
        return None

    witness = build(0, free, {}, ())
    if witness is not None:
        rep = validate_model(witness)
        assert rep.ok, rep.summary()
        return RealizabilityVerdict(
            "realized",
            f,
            model=witness,
            betti=betti_table(witness, n),
            examined=examined,
            note=f"coefficients from {sorted(set(map(str, coeffs)))}",
        )
    if out_of_budget:
        return RealizabilityVerdict(
            "inconclusive",
            f,
            examined=examined,
            note=f"budget of {max_models} complete models exhausted",
        )
    return RealizabilityVerdict(
        "unrealizable",
        f,
        examined=examined,
        note=f"no model with coefficients from {sorted(set(map(str, coeffs)))}"
        f" has the elliptic profile through degree {bound}",
    )
