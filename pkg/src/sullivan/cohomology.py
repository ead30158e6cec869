"""Cohomology of a model, degree by degree, with exact certificates.

The coboundary operator in each degree becomes a sparse rational matrix
over the monomial bases; Betti numbers come from ranks, and coboundary
questions come with a checkable answer either way: a primitive when the
class bounds, a linear functional vanishing on the image but not on the
candidate when it does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import Element, Monomial, SullivanModel
from .linalg import RationalMatrix, SparseVec, vec_dot


def element_to_vector(x: Element, k: int) -> SparseVec:
    """Coordinates of a degree-k element in the canonical monomial basis."""
    basis = x.model.basis_of_degree(k)
    index = {mon: i for i, mon in enumerate(basis)}
    out: SparseVec = {}
    for mon, c in x.terms.items():
        if mon not in index:
            raise ValueError(f"term {mon.format()} is not of degree {k}")
        out[index[mon]] = c
    return out


def vector_to_element(model: SullivanModel, vec: SparseVec, k: int) -> Element:
    basis = model.basis_of_degree(k)
    return model.element_from_terms({basis[i]: c for i, c in vec.items()})


@lru_cache(maxsize=None)
def coboundary_matrix(model: SullivanModel, k: int) -> RationalMatrix:
    """Matrix of d from degree k to degree k+1, columns over the k-basis."""
    source = model.basis_of_degree(k)
    cols = []
    for mon in source:
        dm = model.d(model.monomial(mon))
        cols.append(element_to_vector(dm, k + 1) if dm else {})
    return RationalMatrix.from_columns(cols, model.dimension_of_degree(k + 1))


@lru_cache(maxsize=None)
def betti(model: SullivanModel, k: int) -> int:
    if k < 0:
        return 0
    dim_k = model.dimension_of_degree(k)
    if dim_k == 0:
        return 0
    rank_out = coboundary_matrix(model, k).rank()
    rank_in = coboundary_matrix(model, k - 1).rank() if k > 0 else 0
    return dim_k - rank_out - rank_in


@dataclass(frozen=True)
class BettiTable:
    """Betti numbers b_0..b_top as a tuple."""

    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.values[k] if 0 <= k < len(self.values) else 0

    def __len__(self) -> int:
        return len(self.values)

    def nonzero_degrees(self) -> tuple[int, ...]:
        return tuple(k for k, b in enumerate(self.values) if b)

    def total(self) -> int:
        return sum(self.values)

    def format(self) -> str:
        return " ".join(f"b{k}={b}" for k, b in enumerate(self.values))


def betti_table(model: SullivanModel, top: int) -> BettiTable:
    return BettiTable(tuple(betti(model, k) for k in range(top + 1)))


def top_nonvanishing_degree(model: SullivanModel, bound: int) -> int | None:
    """Largest k <= bound with nonzero cohomology, scanning downward."""
    for k in range(bound, -1, -1):
        if betti(model, k):
            return k
    return None


@dataclass
class CoboundaryVerdict:
    """Answer to "is this cocycle exact", with a certificate either way.

    Exact: `witness` satisfies d(witness) = candidate.  Not exact:
    `functional` is a linear form on the candidate's degree, zero on every
    coboundary, nonzero on the candidate (stored over basis monomials).
    """

    is_coboundary: bool
    witness: Element | None = None
    functional: dict[Monomial, Fraction] | None = None


def is_coboundary(x: Element) -> CoboundaryVerdict:
    """Decide whether the cocycle x is d of something, with certificate."""
    model = x.model
    if x.is_zero():
        return CoboundaryVerdict(True, witness=model.zero())
    dx = model.d(x)
    if not dx.is_zero():
        raise ValueError("not a cocycle: d of the candidate is nonzero")
    k = x.degree()
    if k == 0:
        return CoboundaryVerdict(False, functional={Monomial(): Fraction(1)})
    mat = coboundary_matrix(model, k - 1)
    target = element_to_vector(x, k)
    y = mat.solve(target)
    if y is not None:
        witness = vector_to_element(
            model, {i: c for i, c in enumerate(y) if c}, k - 1
        )
        return CoboundaryVerdict(True, witness=witness)
    basis = model.basis_of_degree(k)
    for phi in mat.left_nullspace_basis():
        if vec_dot(phi, target):
            functional = {basis[i]: c for i, c in phi.items()}
            return CoboundaryVerdict(False, functional=functional)
    raise AssertionError("unsolvable system with no separating functional")


def evaluate_functional(functional: dict[Monomial, Fraction], x: Element) -> Fraction:
    return sum(
        (c * x.terms.get(mon, Fraction(0)) for mon, c in functional.items()),
        Fraction(0),
    )


def euler_characteristic(model: SullivanModel, top: int) -> int:
    return sum((-1) ** k * betti(model, k) for k in range(top + 1))
