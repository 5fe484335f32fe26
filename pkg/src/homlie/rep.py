"""Representations of hom-Lie algebras, duals, admissibility and doubling.

A representation is a triple ``(V, A, rho)``: a space ``V``, an endomorphism
``A`` of ``V`` and a linear map ``rho`` from the algebra into endomorphisms
of ``V`` satisfying::

    rho(phi(u)) o A = A o rho(u)
    rho([u, v]) o A = rho(phi(u)) o rho(v) - rho(phi(v)) o rho(u)

The dual representation acts on the dual space by negated transposes; a
representation is admissible when its dual is again a representation, which
amounts to two transposed identities checked by :func:`check_admissible`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import Matrix, Vector
from .homalg import (
    Check,
    CheckReport,
    HomLieAlgebra,
    PreconditionError,
    StructureTensor,
    _matrix_check,
    is_involutive,
)


@dataclass(frozen=True)
class Representation:
    """Action of a hom-Lie algebra on a space with companion endomorphism.

    ``rho[i]`` is the matrix acting on the representation space for the i-th
    basis vector of the algebra; ``endo`` is the endomorphism playing the
    role the twist plays on the algebra side.
    """

    algebra: HomLieAlgebra
    endo: Matrix
    rho: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho", tuple(self.rho))
        m = self.endo.rows
        if not self.endo.is_square:
            raise ValueError("endomorphism must be square")
        if len(self.rho) != self.algebra.dim:
            raise ValueError("need one action matrix per algebra basis vector")
        for r in self.rho:
            if r.rows != m or r.cols != m:
                raise ValueError("action matrices must match the space dimension")

    @property
    def space_dim(self) -> int:
        return self.endo.rows

    def rho_of(self, u: Vector) -> Matrix:
        """Action of an arbitrary algebra element (linear extension)."""
        if u.dim != self.algebra.dim:
            raise ValueError("element has the wrong dimension")
        acc = Matrix.zeros(self.space_dim, self.space_dim)
        for i, c in enumerate(u):
            if c != 0:
                acc = acc + c * self.rho[i]
        return acc


def check_representation(r: Representation) -> CheckReport:
    """Verify the two defining identities on all basis vectors and pairs."""
    alg = r.algebra
    n = alg.dim
    checks: list[Check] = []

    def twist_compat() -> Check:
        for i in range(n):
            lhs = r.rho_of(alg.twist.col(i)) @ r.endo
            rhs = r.endo @ r.rho[i]
            c = _matrix_check("action-twist-compatibility", lhs, rhs, (i,))
            if not c.passed:
                return c
        return Check("action-twist-compatibility", True)

    def bracket_compat() -> Check:
        for i in range(n):
            for j in range(n):
                lhs = r.rho_of(alg.bracket.basis_product(i, j)) @ r.endo
                rhs = r.rho_of(alg.twist.col(i)) @ r.rho[j] - r.rho_of(alg.twist.col(j)) @ r.rho[i]
                c = _matrix_check("action-bracket-compatibility", lhs, rhs, (i, j))
                if not c.passed:
                    return c
        return Check("action-bracket-compatibility", True)

    checks.append(twist_compat())
    checks.append(bracket_compat())
    return CheckReport(tuple(checks), {"endomorphism-involutive": is_involutive(r.endo)})


def check_admissible(r: Representation) -> CheckReport:
    """Verify that the dual of *r* is again a representation.

    The input must itself be a representation (re-verified here rather than
    trusted); the admissibility conditions are the transposed identities::

        A o rho(phi(u)) = rho(u) o A
        A o rho([u, v]) = rho(u) o rho(phi(v)) - rho(v) o rho(phi(u))

    For the adjoint representation of an involutive algebra these hold
    automatically; the involutivity flag makes that shortcut visible.
    """
    base = check_representation(r)
    if not base.passed:
        raise PreconditionError("input is not a representation: " + base.failures()[0].name)

    alg = r.algebra
    n = alg.dim

    def first_identity() -> Check:
        for i in range(n):
            lhs = r.endo @ r.rho_of(alg.twist.col(i))
            rhs = r.rho[i] @ r.endo
            c = _matrix_check("dual-twist-compatibility", lhs, rhs, (i,))
            if not c.passed:
                return c
        return Check("dual-twist-compatibility", True)

    def second_identity() -> Check:
        for i in range(n):
            for j in range(n):
                lhs = r.endo @ r.rho_of(alg.bracket.basis_product(i, j))
                rhs = r.rho[i] @ r.rho_of(alg.twist.col(j)) - r.rho[j] @ r.rho_of(alg.twist.col(i))
                c = _matrix_check("dual-bracket-compatibility", lhs, rhs, (i, j))
                if not c.passed:
                    return c
        return Check("dual-bracket-compatibility", True)

    return CheckReport(
        (first_identity(), second_identity()),
        {
            "endomorphism-involutive": is_involutive(r.endo),
            "twist-involutive": is_involutive(alg.twist),
        },
    )


def adjoint_rep(algebra: HomLieAlgebra) -> Representation:
    """Adjoint representation ``u -> [u, .]`` with the twist as endomorphism."""
    n = algebra.dim
    rho = tuple(
        Matrix.from_cols([algebra.bracket.basis_product(i, j) for j in range(n)])
        for i in range(n)
    )
    return Representation(algebra, algebra.twist, rho)


def dual_rep(r: Representation) -> Representation:
    """Dual action on the dual space: transpose the endomorphism, negate and
    transpose each action matrix.  Applying it twice gives back *r*."""
    return Representation(
        r.algebra,
        r.endo.transpose(),
        tuple(-m.transpose() for m in r.rho),
    )


def semidirect_double(algebra: HomLieAlgebra, r: Representation) -> HomLieAlgebra:
    """Hom-Lie structure on the algebra plus its dual space.

    Requires an admissible representation whose space dimension matches the
    algebra dimension (the intended use is the adjoint action on the dual).
    The bracket is ``[u + a, v + b] = [u, v] + rho~(u)b - rho~(v)a`` with
    ``rho~(u) = -rho(u)^T``, and the twist acts blockwise as the algebra
    twist and the transposed endomorphism.
    """
    n = algebra.dim
    if r.space_dim != n:
        raise PreconditionError("doubling needs a representation space of the algebra dimension")
    if r.algebra != algebra:
        raise PreconditionError("representation does not act for this algebra")
    adm = check_admissible(r)
    if not adm.passed:
        raise PreconditionError("representation is not admissible: " + adm.failures()[0].name)

    dual_actions = [-r.rho[i].transpose() for i in range(n)]
    triples: list[tuple[int, int, int, object]] = []
    for i in range(n):
        for j in range(n):
            for k, c in enumerate(algebra.bracket.basis_product(i, j)):
                if c != 0:
                    triples.append((i, j, k, c))
    for i in range(n):
        for b in range(n):
            image = dual_actions[i].col(b)
            for k, c in enumerate(image):
                if c != 0:
                    triples.append((i, n + b, n + k, c))
                    triples.append((n + b, i, n + k, -c))
    bracket = StructureTensor.from_triples(2 * n, triples)
    twist = Matrix.block_diag(algebra.twist, r.endo.transpose())
    return HomLieAlgebra(bracket, twist)
