"""Hom-algebra data model and axiom checkers.

A hom-algebra is a bilinear product together with a twist endomorphism that
is required to be a product morphism; a hom-Lie algebra carries an
antisymmetric bracket whose Jacobi identity is deformed by the twist::

    [phi(u), [v, w]] + [phi(v), [w, u]] + [phi(w), [u, v]] = 0

Constructors deliberately do not enforce these axioms (counterexamples must
be representable); the ``check_*`` functions verify them on all basis tuples,
which suffices by multilinearity, and report defect vectors rather than bare
booleans.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .exactlin import (
    Matrix,
    Scalar,
    Vector,
    ZERO,
    mat_inverse,
    rat,
)


class PreconditionError(ValueError):
    """An operation was invoked on input that fails its stated precondition."""


# ---------------------------------------------------------------------------
# check reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """Location and value of a failed identity.

    ``indices`` are 0-based basis positions (empty when the failure is not
    tied to particular basis vectors, e.g. a degenerate form, in which case
    the defect is a kernel vector).  Scalar defects are wrapped as
    1-dimensional vectors.
    """

    indices: tuple[int, ...]
    defect: Vector


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Optional[Witness] = None

    def __post_init__(self) -> None:
        if self.passed and self.witness is not None:
            raise ValueError("a passing check must not carry a witness")
        if not self.passed and self.witness is None:
            raise ValueError("a failing check must carry a witness")


@dataclass(frozen=True)
class CheckReport:
    """Named sub-checks with verdicts, plus informational flags.

    Flags (e.g. whether the twist is involutive) do not enter the overall
    verdict; they record facts that downstream operations use as
    preconditions.
    """

    checks: tuple[Check, ...]
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(f"no sub-check named {name!r}")

    def flag(self, name: str) -> bool:
        return self.flags[name]

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def prefixed(self, prefix: str) -> "CheckReport":
        return CheckReport(
            tuple(Check(f"{prefix}-{c.name}", c.passed, c.witness) for c in self.checks),
            {f"{prefix}-{k}": v for k, v in self.flags.items()},
        )


def merge_reports(*reports: CheckReport) -> CheckReport:
    checks: tuple[Check, ...] = ()
    flags: dict[str, bool] = {}
    for r in reports:
        checks += r.checks
        flags.update(r.flags)
    return CheckReport(checks, flags)


def _scan(name: str, failures: Iterable[tuple[tuple[int, ...], Vector]]) -> Check:
    """Build a check that fails on the first defect an iterator produces."""
    for indices, defect in failures:
        return Check(name, False, Witness(indices, defect))
    return Check(name, True)


def _matrix_check(name: str, lhs: Matrix, rhs: Matrix, tags: tuple[int, ...] = ()) -> Check:
    """Compare two matrices column by column, witnessing the first bad column."""
    diff = lhs - rhs
    for j in range(diff.cols):
        col = diff.col(j)
        if not col.is_zero():
            return Check(name, False, Witness(tags + (j,), col))
    return Check(name, True)


# ---------------------------------------------------------------------------
# structure tensors and algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureTensor:
    """Rank-3 array of structure constants for a bilinear product.

    ``coeffs[i][j][k]`` is the coefficient of the k-th basis vector in the
    product of the i-th and j-th basis vectors.  No algebraic axiom is
    enforced here; checkers do that.
    """

    dim: int
    coeffs: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise ValueError("dimension must be positive")
        if len(self.coeffs) != self.dim or any(
            len(plane) != self.dim or any(len(row) != self.dim for row in plane)
            for plane in self.coeffs
        ):
            raise ValueError("structure tensor must be dim x dim x dim")

    @staticmethod
    def zero(dim: int) -> "StructureTensor":
        z = ((ZERO,) * dim,) * dim
        return StructureTensor(dim, (z,) * dim)

    @staticmethod
    def from_triples(
        dim: int, triples: Iterable[tuple[int, int, int, Scalar]]
    ) -> "StructureTensor":
        """Build a tensor from sparse 0-based ``(i, j, k, coefficient)`` entries."""
        grid = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in triples:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise IndexError(f"triple ({i}, {j}, {k}) out of range for dimension {dim}")
            grid[i][j][k] += rat(c)
        return StructureTensor(
            dim, tuple(tuple(tuple(row) for row in plane) for plane in grid)
        )

    def entry(self, i: int, j: int, k: int) -> Fraction:
        return self.coeffs[i][j][k]

    def basis_product(self, i: int, j: int) -> Vector:
        """Product of the i-th and j-th basis vectors."""
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError(f"basis pair ({i}, {j}) out of range for dimension {self.dim}")
        return Vector(self.coeffs[i][j])

    def apply(self, u: Vector, v: Vector) -> Vector:
        """Bilinear extension of the product to arbitrary coordinate vectors."""
        out = [ZERO] * self.dim
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                c = ui * vj
                row = self.coeffs[i][j]
                for k in range(self.dim):
                    if row[k] != 0:
                        out[k] += c * row[k]
        return Vector(tuple(out))

    def left_mult(self, u: Vector) -> Matrix:
        """Matrix of ``v -> u * v``."""
        return Matrix.from_cols([self.apply(u, Vector.basis(self.dim, j)) for j in range(self.dim)])

    def right_mult(self, u: Vector) -> Matrix:
        """Matrix of ``v -> v * u``."""
        return Matrix.from_cols([self.apply(Vector.basis(self.dim, j), u) for j in range(self.dim)])

    def antisymmetrized(self) -> "StructureTensor":
        """Commutator tensor ``c[i][j][k] - c[j][i][k]`` (no 1/2 factor)."""
        return StructureTensor(
            self.dim,
            tuple(
                tuple(
                    tuple(
                        self.coeffs[i][j][k] - self.coeffs[j][i][k] for k in range(self.dim)
                    )
                    for j in range(self.dim)
                )
                for i in range(self.dim)
            ),
        )

    def is_antisymmetric(self) -> bool:
        return all(
            self.coeffs[i][j][k] == -self.coeffs[j][i][k]
            for i in range(self.dim)
            for j in range(i + 1)
            for k in range(self.dim)
        )

    def nonzero_triples(self) -> Iterator[tuple[int, int, int, Fraction]]:
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    c = self.coeffs[i][j][k]
                    if c != 0:
                        yield (i, j, k, c)

    def change_basis(self, forward: Matrix) -> "StructureTensor":
        """Express the product in new coordinates ``y = forward @ x``."""
        if forward.rows != self.dim or forward.cols != self.dim:
            raise ValueError("change of basis matrix has the wrong size")
        backward = mat_inverse(forward)
        products = [
            [
                forward.apply(self.apply(backward.col(i), backward.col(j)))
                for j in range(self.dim)
            ]
            for i in range(self.dim)
        ]
        return StructureTensor(
            self.dim,
            tuple(tuple(tuple(products[i][j]) for j in range(self.dim)) for i in range(self.dim)),
        )


@dataclass(frozen=True)
class HomAlgebra:
    """A bilinear product together with a twist endomorphism."""

    product: StructureTensor
    twist: Matrix

    def __post_init__(self) -> None:
        if not self.twist.is_square or self.twist.rows != self.product.dim:
            raise ValueError("twist must be square of the same dimension as the product")

    @property
    def dim(self) -> int:
        return self.product.dim


@dataclass(frozen=True)
class HomLieAlgebra:
    """An entrywise antisymmetric bracket together with a twist endomorphism.

    Only antisymmetry is enforced at construction; the twisted Jacobi
    identity and the morphism property are verified by :func:`check_hom_lie`
    so that defective candidates remain representable as raw tensors.
    """

    bracket: StructureTensor
    twist: Matrix

    def __post_init__(self) -> None:
        if not self.twist.is_square or self.twist.rows != self.bracket.dim:
            raise ValueError("twist must be square of the same dimension as the bracket")
        if not self.bracket.is_antisymmetric():
            raise ValueError("bracket tensor is not antisymmetric")

    @property
    def dim(self) -> int:
        return self.bracket.dim


def _twist_of_basis(twist: Matrix, i: int) -> Vector:
    return twist.col(i)


def is_involutive(twist: Matrix) -> bool:
    return twist @ twist == Matrix.identity(twist.rows)


def is_regular(twist: Matrix) -> bool:
    return twist.det() != 0


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def commutator(algebra: HomAlgebra) -> HomLieAlgebra:
    """Bracket candidate ``[u, v] = u*v - v*u`` with the same twist."""
    return HomLieAlgebra(algebra.product.antisymmetrized(), algebra.twist)


def hom_jacobi_defect(bracket: StructureTensor, twist: Matrix, i: int, j: int, k: int) -> Vector:
    """Cyclic sum ``[phi(e_i),[e_j,e_k]] + [phi(e_j),[e_k,e_i]] + [phi(e_k),[e_i,e_j]]``."""
    ei, ej, ek = (Vector.basis(bracket.dim, t) for t in (i, j, k))
    return (
        bracket.apply(twist.apply(ei), bracket.apply(ej, ek))
        + bracket.apply(twist.apply(ej), bracket.apply(ek, ei))
        + bracket.apply(twist.apply(ek), bracket.apply(ei, ej))
    )


def check_hom_lie(bracket: StructureTensor, twist: Matrix) -> CheckReport:
    """Verify the hom-Lie axioms for a bracket candidate.

    Sub-checks: entrywise antisymmetry, the twisted Jacobi identity on all
    basis triples, and the morphism property ``phi[u,v] = [phi(u), phi(v)]``
    on all basis pairs.  Whether the twist is regular (invertible) or
    involutive (squares to the identity) is reported as flags; downstream
    operations state which of the two they require.
    """
    n = bracket.dim

    def antisym_failures():
        for i in range(n):
            for j in range(i + 1):
                defect = bracket.basis_product(i, j) + bracket.basis_product(j, i)
                if not defect.is_zero():
                    yield (i, j), defect

    def jacobi_failures():
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    defect = hom_jacobi_defect(bracket, twist, i, j, k)
                    if not defect.is_zero():
                        yield (i, j, k), defect

    def morphism_failures():
        for i in range(n):
            for j in range(n):
                lhs = twist.apply(bracket.basis_product(i, j))
                rhs = bracket.apply(twist.col(i), twist.col(j))
                if lhs != rhs:
                    yield (i, j), lhs - rhs

    return CheckReport(
        (
            _scan("antisymmetry", antisym_failures()),
            _scan("hom-jacobi", jacobi_failures()),
            _scan("twist-morphism", morphism_failures()),
        ),
        {"regular": is_regular(twist), "involutive": is_involutive(twist)},
    )


def twisted_associator(product: StructureTensor, twist: Matrix, u: Vector, v: Vector, w: Vector) -> Vector:
    """``(u*v)*phi(w) - phi(u)*(v*w)``, the twist-deformed associator."""
    return product.apply(product.apply(u, v), twist.apply(w)) - product.apply(
        twist.apply(u), product.apply(v, w)
    )


def check_left_symmetric(algebra: HomAlgebra) -> CheckReport:
    """Verify that a hom-algebra is hom-left-symmetric.

    The defining identity is symmetry of the twisted associator in its first
    two arguments.  The twist must additionally be a product morphism (that
    is part of being a hom-algebra).  Whether the product is in fact
    hom-associative (twisted associator identically zero) is exposed as a
    flag; it is strictly stronger than left-symmetry.
    """
    n = algebra.dim
    product, twist = algebra.product, algebra.twist

    def morphism_failures():
        for i in range(n):
            for j in range(n):
                lhs = twist.apply(product.basis_product(i, j))
                rhs = product.apply(twist.col(i), twist.col(j))
                if lhs != rhs:
                    yield (i, j), lhs - rhs

    associators = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                associators[i, j, k] = twisted_associator(
                    product,
                    twist,
                    Vector.basis(n, i),
                    Vector.basis(n, j),
                    Vector.basis(n, k),
                )

    def symmetry_failures():
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    defect = associators[i, j, k] - associators[j, i, k]
                    if not defect.is_zero():
                        yield (i, j, k), defect

    hom_associative = all(v.is_zero() for v in associators.values())
    return CheckReport(
        (
            _scan("twist-morphism", morphism_failures()),
            _scan("left-symmetry", symmetry_failures()),
        ),
        {"hom-associative": hom_associative},
    )


def curvature(algebra: HomAlgebra, i: int, j: int, k: int) -> Vector:
    """Curvature tensor of the product evaluated on basis vectors.

    The tensor measures the failure of left multiplication to represent the
    commutator bracket through the twist::

        K(u, v)w = phi(u)*(v*w) - phi(v)*(u*w) - [u,v]*phi(w)

    It vanishes identically exactly when the product is hom-left-symmetric.
    """
    n = algebra.dim
    if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
        raise IndexError(f"basis triple ({i}, {j}, {k}) out of range for dimension {n}")
    return curvature_vec(
        algebra, Vector.basis(n, i), Vector.basis(n, j), Vector.basis(n, k)
    )


def curvature_vec(algebra: HomAlgebra, u: Vector, v: Vector, w: Vector) -> Vector:
    product, twist = algebra.product, algebra.twist
    bracket_uv = product.apply(u, v) - product.apply(v, u)
    return (
        product.apply(twist.apply(u), product.apply(v, w))
        - product.apply(twist.apply(v), product.apply(u, w))
        - product.apply(bracket_uv, twist.apply(w))
    )


def hom_bianchi_defect(algebra: HomAlgebra) -> CheckReport:
    """Compare the two cyclic sums of the Bianchi-type identity.

    For every basis triple the cyclic sum of ``[phi(u), [v, w]]`` (bracket =
    commutator of the product) must equal the cyclic sum of ``K(u, v)w``;
    this holds for every bilinear product and every linear twist.  The flag
    reports whether both sums vanish everywhere, i.e. whether the commutator
    satisfies the twisted Jacobi identity (hom-Lie admissibility).
    """
    n = algebra.dim
    bracket = algebra.product.antisymmetrized()
    twist = algebra.twist

    all_vanish = True
    first_failure: Optional[tuple[tuple[int, ...], Vector]] = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = hom_jacobi_defect(bracket, twist, i, j, k)
                ei, ej, ek = (Vector.basis(n, t) for t in (i, j, k))
                rhs = (
                    curvature_vec(algebra, ei, ej, ek)
                    + curvature_vec(algebra, ej, ek, ei)
                    + curvature_vec(algebra, ek, ei, ej)
                )
                if lhs != rhs and first_failure is None:
                    first_failure = ((i, j, k), lhs - rhs)
                if not lhs.is_zero():
                    all_vanish = False

    equality = (
        Check("cyclic-sums-equal", True)
        if first_failure is None
        else Check("cyclic-sums-equal", False, Witness(*first_failure))
    )
    return CheckReport((equality,), {"hom-lie-admissible": all_vanish})


def nijenhuis(bracket: StructureTensor, twist: Matrix, product_structure: Matrix, i: int, j: int) -> Vector:
    """Four times the Nijenhuis torsion of ``phi o K`` on a basis pair.

    Returns ``[Pu, Pv] - P[Pu, v] - P[u, Pv] + [u, v]`` with
    ``P = twist @ product_structure``; integrability means this vanishes for
    all pairs.  The factor 4 is kept to avoid divisions.
    """
    n = bracket.dim
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"basis pair ({i}, {j}) out of range for dimension {n}")
    if twist.rows != n or not twist.is_square:
        raise ValueError("twist must be square of the bracket dimension")
    if product_structure.rows != n or not product_structure.is_square:
        raise ValueError("product structure must be square of the bracket dimension")
    p = twist @ product_structure
    u, v = Vector.basis(n, i), Vector.basis(n, j)
    pu, pv = p.apply(u), p.apply(v)
    return (
        bracket.apply(pu, pv)
        - p.apply(bracket.apply(pu, v))
        - p.apply(bracket.apply(u, pv))
        + bracket.apply(u, v)
    )
