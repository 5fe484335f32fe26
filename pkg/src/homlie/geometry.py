"""Symplectic and pseudo-Riemannian structures on hom-Lie algebras.

The central construction is the twisted analogue of the Levi-Civita
connection: for a nondegenerate twist-compatible symmetric form there is a
unique product satisfying

    u*v - v*u = [u, v]                      (bracket recovery)
    <u*v, phi(w)> = -<phi(v), u*w>          (twisted metric invariance)

obtained here by solving, for each basis pair, the linear system whose k-th
equation is the twisted Koszul identity

    2<u*v, phi(e_k)> = <[u,v], phi(e_k)> + <[e_k,v], phi(u)> + <[e_k,u], phi(v)>.

The closed-form expression through the inverse form and inverse twist is
kept out of the code path and used as an independent oracle in the tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import Matrix, Vector, solve
from .homalg import (
    Check,
    CheckReport,
    HomLieAlgebra,
    PreconditionError,
    StructureTensor,
    Witness,
    _scan,
    is_involutive,
)


class KindMismatchError(ValueError):
    """A bilinear form of the wrong kind was passed to a checker."""


class FormKind(enum.Enum):
    SYMMETRIC = "symmetric"
    SKEW = "skew"


@dataclass(frozen=True)
class BilinearForm:
    """A square matrix tagged as symmetric (metric) or skew (symplectic).

    The matrix must match the tag exactly; degenerate forms are allowed here
    and rejected by the checkers, so that failing nondegeneracy shows up as
    a reported verdict rather than a constructor error.
    """

    matrix: Matrix
    kind: FormKind

    def __post_init__(self) -> None:
        if not self.matrix.is_square:
            raise ValueError("bilinear form matrix must be square")
        t = self.matrix.transpose()
        if self.kind is FormKind.SYMMETRIC and self.matrix != t:
            raise ValueError("matrix is not symmetric")
        if self.kind is FormKind.SKEW and self.matrix != -t:
            raise ValueError("matrix is not skew-symmetric")

    @staticmethod
    def symmetric(matrix: Matrix) -> "BilinearForm":
        return BilinearForm(matrix, FormKind.SYMMETRIC)

    @staticmethod
    def skew(matrix: Matrix) -> "BilinearForm":
        return BilinearForm(matrix, FormKind.SKEW)

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def value(self, u: Vector, v: Vector) -> Fraction:
        return u.dot(self.matrix.apply(v))

    def is_nondegenerate(self) -> bool:
        return self.matrix.det() != 0


def _scalar_witness(value: Fraction) -> Vector:
    return Vector.of(value)


def _nondegeneracy_check(matrix: Matrix) -> Check:
    if matrix.det() != 0:
        return Check("nondegenerate", True)
    from .exactlin import kernel_basis

    return Check("nondegenerate", False, Witness((), kernel_basis(matrix)[0]))


def check_symplectic(algebra: HomLieAlgebra, omega: BilinearForm) -> CheckReport:
    """Verify that a skew form makes the algebra symplectic.

    Sub-checks: nondegeneracy, invariance under the twist, and the twisted
    2-cocycle identity on all ordered basis triples::

        w([u,v], phi(w)) + w([w,u], phi(v)) + w([v,w], phi(u)) = 0
    """
    if omega.kind is not FormKind.SKEW:
        raise KindMismatchError("symplectic check expects a skew form")
    if omega.dim != algebra.dim:
        raise ValueError("form dimension does not match the algebra")
    n = algebra.dim
    twist, bracket = algebra.twist, algebra.bracket
    basis = [Vector.basis(n, i) for i in range(n)]
    twisted = [twist.col(i) for i in range(n)]

    def invariance_failures():
        for i in range(n):
            for j in range(n):
                defect = omega.value(twisted[i], twisted[j]) - omega.value(basis[i], basis[j])
                if defect != 0:
                    yield (i, j), _scalar_witness(defect)

    def cocycle_failures():
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    total = (
                        omega.value(bracket.basis_product(i, j), twisted[k])
                        + omega.value(bracket.basis_product(k, i), twisted[j])
                        + omega.value(bracket.basis_product(j, k), twisted[i])
                    )
                    if total != 0:
                        yield (i, j, k), _scalar_witness(total)

    return CheckReport(
        (
            _nondegeneracy_check(omega.matrix),
            _scan("twist-invariance", invariance_failures()),
            _scan("two-cocycle", cocycle_failures()),
        ),
        {"involutive": is_involutive(twist)},
    )


def check_metric(algebra: HomLieAlgebra, metric: BilinearForm) -> CheckReport:
    """Verify that a symmetric form is a twist-compatible pseudo-metric.

    Sub-checks: nondegeneracy and ``<phi(u), phi(v)> = <u, v>`` on all basis
    pairs.  When the twist is involutive the self-adjointness consequence
    ``<phi(u), v> = <u, phi(v)>`` is verified as an extra sub-check.
    """
    if metric.kind is not FormKind.SYMMETRIC:
        raise KindMismatchError("metric check expects a symmetric form")
    if metric.dim != algebra.dim:
        raise ValueError("form dimension does not match the algebra")
    n = algebra.dim
    twist = algebra.twist
    basis = [Vector.basis(n, i) for i in range(n)]
    twisted = [twist.col(i) for i in range(n)]

    def compatibility_failures():
        for i in range(n):
            for j in range(n):
                defect = metric.value(twisted[i], twisted[j]) - metric.value(basis[i], basis[j])
                if defect != 0:
                    yield (i, j), _scalar_witness(defect)

    checks = [
        _nondegeneracy_check(metric.matrix),
        _scan("twist-compatibility", compatibility_failures()),
    ]
    involutive = is_involutive(twist)
    if involutive:

        def self_adjoint_failures():
            for i in range(n):
                for j in range(n):
                    defect = metric.value(twisted[i], basis[j]) - metric.value(basis[i], twisted[j])
                    if defect != 0:
                        yield (i, j), _scalar_witness(defect)

        checks.append(_scan("twist-self-adjoint", self_adjoint_failures()))
    return CheckReport(tuple(checks), {"involutive": involutive})


def levi_civita(algebra: HomLieAlgebra, metric: BilinearForm) -> StructureTensor:
    """The unique bracket-compatible metric product, via Koszul-type solves.

    For each basis pair ``(i, j)`` the coordinates of ``e_i * e_j`` solve an
    n x n linear system assembled from the twisted Koszul identity; the
    system matrix ``2 <e_l, phi(e_k)>`` is invertible exactly when both the
    form and the twist are, so degenerate input surfaces as
    :class:`SingularMatrixError`.
    """
    if metric.kind is not FormKind.SYMMETRIC:
        raise KindMismatchError("the metric product needs a symmetric form")
    if metric.dim != algebra.dim:
        raise ValueError("form dimension does not match the algebra")
    n = algebra.dim
    twist, bracket = algebra.twist, algebra.bracket
    basis = [Vector.basis(n, i) for i in range(n)]
    twisted = [twist.col(i) for i in range(n)]

    system = Matrix.from_rows(
        [[2 * metric.value(basis[l], twisted[k]) for l in range(n)] for k in range(n)]
    )
    planes = []
    for i in range(n):
        rows = []
        for j in range(n):
            rhs = Vector(
                tuple(
                    metric.value(bracket.basis_product(i, j), twisted[k])
                    + metric.value(bracket.basis_product(k, j), twisted[i])
                    + metric.value(bracket.basis_product(k, i), twisted[j])
                    for k in range(n)
                )
            )
            rows.append(tuple(solve(system, rhs)))
        planes.append(tuple(rows))
    return StructureTensor(n, tuple(planes))


def symplectic_product(algebra: HomLieAlgebra, omega: BilinearForm) -> StructureTensor:
    """Left-symmetric product carried by an involutive symplectic algebra.

    Solves, for each basis pair, the defining identity

        w(a(u, v), phi(w)) = -w(phi(v), [u, w])

    which together with nondegeneracy pins the product down uniquely; the
    construction requires the symplectic checks to pass and the twist to be
    involutive, both enforced here.
    """
    report = check_symplectic(algebra, omega)
    if not report.passed:
        raise PreconditionError(
            "form is not symplectic for this algebra: " + report.failures()[0].name
        )
    if not is_involutive(algebra.twist):
        raise PreconditionError("the symplectic product needs an involutive twist")
    n = algebra.dim
    twist, bracket = algebra.twist, algebra.bracket
    basis = [Vector.basis(n, i) for i in range(n)]
    twisted = [twist.col(i) for i in range(n)]

    system = Matrix.from_rows(
        [[omega.value(basis[l], twisted[k]) for l in range(n)] for k in range(n)]
    )
    planes = []
    for i in range(n):
        rows = []
        for j in range(n):
            rhs = Vector(
                tuple(
                    -omega.value(twisted[j], bracket.basis_product(i, k))
                    for k in range(n)
                )
            )
            rows.append(tuple(solve(system, rhs)))
        planes.append(tuple(rows))
    return StructureTensor(n, tuple(planes))
