"""Almost product and para-Kahler structures on hom-Lie algebras.

An almost product structure is an involution ``K`` commuting with an
involutive twist; the composite ``P = phi o K`` is then an involution whose
+1/-1 eigenspaces decompose the algebra.  A para-Kahler structure asks for
``P`` to be skew-symmetric with respect to a pseudo-metric and invariant
under left multiplication by the metric product.  Everything a structure
theorem claims about such data (fundamental form symplectic, eigenspaces
isotropic and Lagrangian, product closure, restricted products agreeing
with the symplectic one) is re-verified on each run; theorems are treated
as regression tests, never as assumptions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import Matrix, Vector, in_span, kernel_basis
from .homalg import (
    Check,
    CheckReport,
    HomLieAlgebra,
    PreconditionError,
    Witness,
    _matrix_check,
    _scan,
    is_involutive,
    nijenhuis,
)
from .geometry import (
    BilinearForm,
    FormKind,
    check_metric,
    check_symplectic,
    levi_civita,
    symplectic_product,
)


@dataclass(frozen=True)
class ProductStructure:
    """Candidate almost product structure (validated by the checkers)."""

    matrix: Matrix

    def __post_init__(self) -> None:
        if not self.matrix.is_square:
            raise ValueError("product structure must be a square matrix")

    @property
    def dim(self) -> int:
        return self.matrix.rows


@dataclass(frozen=True)
class Decomposition:
    """Eigenspace split of ``phi o K`` into the +1 and -1 kernels.

    Bases are in reduced echelon coordinates; ``para_complex`` records
    whether the two eigenspaces have equal dimension.
    """

    plus: tuple[Vector, ...]
    minus: tuple[Vector, ...]
    para_complex: bool


def composite(algebra: HomLieAlgebra, structure: ProductStructure) -> Matrix:
    """The endomorphism ``phi o K`` all the para-conditions refer to."""
    return algebra.twist @ structure.matrix


def check_almost_product(algebra: HomLieAlgebra, structure: ProductStructure) -> CheckReport:
    """Verify ``phi^2 = Id``, ``K^2 = Id`` and ``phi K = K phi``."""
    if structure.dim != algebra.dim:
        raise ValueError("product structure dimension does not match the algebra")
    n = algebra.dim
    identity = Matrix.identity(n)
    k = structure.matrix
    phi = algebra.twist
    return CheckReport(
        (
            _matrix_check("twist-involutive", phi @ phi, identity),
            _matrix_check("square-is-identity", k @ k, identity),
            _matrix_check("commutes-with-twist", phi @ k, k @ phi),
        )
    )


def eigensplit(algebra: HomLieAlgebra, structure: ProductStructure) -> Decomposition:
    """Exact kernels of ``phi o K -/+ Id``; requires an almost product structure."""
    report = check_almost_product(algebra, structure)
    if not report.passed:
        raise PreconditionError(
            "not an almost product structure: " + report.failures()[0].name
        )
    n = algebra.dim
    p = composite(algebra, structure)
    identity = Matrix.identity(n)
    plus = tuple(kernel_basis(p - identity))
    minus = tuple(kernel_basis(p + identity))
    # (phi K)^2 = Id guarantees the two kernels together span the space.
    if len(plus) + len(minus) != n:
        raise PreconditionError("eigenspaces do not span; input is inconsistent")
    return Decomposition(plus, minus, len(plus) == len(minus))


def check_para_hermitian(
    algebra: HomLieAlgebra, metric: BilinearForm, structure: ProductStructure
) -> CheckReport:
    """Para-Hermitian verification: para-complex split, anti-compatibility
    of the metric with ``phi o K``, and vanishing Nijenhuis torsion."""
    metric_report = check_metric(algebra, metric)
    if not metric_report.passed:
        raise PreconditionError(
            "metric checks fail: " + metric_report.failures()[0].name
        )
    split = eigensplit(algebra, structure)  # also enforces the almost product checks
    n = algebra.dim
    p = composite(algebra, structure)
    basis = [Vector.basis(n, i) for i in range(n)]

    para_complex = (
        Check("para-complex", True)
        if split.para_complex
        else Check(
            "para-complex",
            False,
            Witness((len(split.plus), len(split.minus)), Vector.of(len(split.plus) - len(split.minus))),
        )
    )

    def anti_compat_failures():
        for i in range(n):
            for j in range(n):
                defect = metric.value(p.apply(basis[i]), p.apply(basis[j])) + metric.value(
                    basis[i], basis[j]
                )
                if defect != 0:
                    yield (i, j), Vector.of(defect)

    def torsion_failures():
        for i in range(n):
            for j in range(n):
                t = nijenhuis(algebra.bracket, algebra.twist, structure.matrix, i, j)
                if not t.is_zero():
                    yield (i, j), t

    return CheckReport(
        (
            para_complex,
            _scan("anti-compatibility", anti_compat_failures()),
            _scan("torsion-vanishes", torsion_failures()),
        )
    )


def check_para_kahler(
    algebra: HomLieAlgebra, metric: BilinearForm, structure: ProductStructure
) -> CheckReport:
    """Para-Kahler verification against the metric product.

    Sub-checks: skew-symmetry of ``P = phi o K`` for the metric, invariance
    ``L_u o P = P o L_u`` of ``P`` under all left multiplications of the
    metric product, and the two equivalent reformulations

        P(u) * P(v) = P(P(u) * v)        and        u * v = P(u * P(v))

    as cross-checks.  The metric product must be computable, so a
    degenerate form or twist raises :class:`SingularMatrixError`.
    """
    if structure.dim != algebra.dim or metric.dim != algebra.dim:
        raise ValueError("dimensions do not match the algebra")
    product = levi_civita(algebra, metric)
    n = algebra.dim
    p = composite(algebra, structure)
    basis = [Vector.basis(n, i) for i in range(n)]

    def skew_failures():
        for i in range(n):
            for j in range(n):
                defect = metric.value(p.apply(basis[i]), basis[j]) + metric.value(
                    basis[i], p.apply(basis[j])
                )
                if defect != 0:
                    yield (i, j), Vector.of(defect)

    def invariance() -> Check:
        for t in range(n):
            left = product.left_mult(basis[t])
            c = _matrix_check("left-multiplication-invariance", left @ p, p @ left, (t,))
            if not c.passed:
                return c
        return Check("left-multiplication-invariance", True)

    def first_form_failures():
        for i in range(n):
            for j in range(n):
                lhs = product.apply(p.apply(basis[i]), p.apply(basis[j]))
                rhs = p.apply(product.apply(p.apply(basis[i]), basis[j]))
                if lhs != rhs:
                    yield (i, j), lhs - rhs

    def second_form_failures():
        for i in range(n):
            for j in range(n):
                lhs = product.basis_product(i, j)
                rhs = p.apply(product.apply(basis[i], p.apply(basis[j])))
                if lhs != rhs:
                    yield (i, j), lhs - rhs

    return CheckReport(
        (
            _scan("composite-skew-symmetric", skew_failures()),
            invariance(),
            _scan("invariance-product-form", first_form_failures()),
            _scan("invariance-inverse-form", second_form_failures()),
        ),
        {"twist-involutive": is_involutive(algebra.twist)},
    )


def fundamental_form(
    algebra: HomLieAlgebra, metric: BilinearForm, structure: ProductStructure
) -> BilinearForm:
    """Skew form ``(u, v) -> <(phi o K)u, v>`` of a para-Kahler structure.

    The returned form is verified (not assumed) to pass the symplectic
    checks; inputs that are not genuinely para-Kahler are rejected.
    """
    report = check_para_kahler(algebra, metric, structure)
    if not report.passed:
        raise PreconditionError(
            "input is not para-Kahler: " + report.failures()[0].name
        )
    p = composite(algebra, structure)
    omega = BilinearForm.skew(p.transpose() @ metric.matrix)
    symplectic = check_symplectic(algebra, omega)
    if not symplectic.passed:
        raise PreconditionError(
            "fundamental form fails the symplectic checks ("
            + symplectic.failures()[0].name
            + "); the metric or product structure is inconsistent"
        )
    return omega


def theorem_battery(
    algebra: HomLieAlgebra, metric: BilinearForm, structure: ProductStructure
) -> CheckReport:
    """Re-verify the structural consequences of a para-Kahler structure.

    Checks, for both eigenspaces of ``phi o K``: isotropy for the metric,
    isotropy for the fundamental form together with the Lagrangian
    half-dimension count, closure of the metric product (``u * v`` stays in
    the eigenspace of ``v`` for every ``u``), stability under the twist, and
    agreement of the restricted metric product with the symplectic
    left-symmetric product.
    """
    pk = check_para_kahler(algebra, metric, structure)
    if not pk.passed:
        raise PreconditionError("input is not para-Kahler: " + pk.failures()[0].name)
    split = eigensplit(algebra, structure)
    omega = fundamental_form(algebra, metric, structure)
    product = levi_civita(algebra, metric)
    left_symmetric = symplectic_product(algebra, omega)
    n = algebra.dim
    basis = [Vector.basis(n, i) for i in range(n)]
    checks: list[Check] = []

    for label, space in (("plus", split.plus), ("minus", split.minus)):

        def metric_isotropy(space=space):
            for i, u in enumerate(space):
                for j, v in enumerate(space):
                    value = metric.value(u, v)
                    if value != 0:
                        yield (i, j), Vector.of(value)

        def form_isotropy(space=space):
            for i, u in enumerate(space):
                for j, v in enumerate(space):
                    value = omega.value(u, v)
                    if value != 0:
                        yield (i, j), Vector.of(value)

        def closure(space=space):
            for t in range(n):
                for j, v in enumerate(space):
                    image = product.apply(basis[t], v)
                    if not in_span(space, image):
                        yield (t, j), image

        def twist_stability(space=space):
            for j, v in enumerate(space):
                image = algebra.twist.apply(v)
                if not in_span(space, image):
                    yield (j,), image

        def restricted_match(space=space):
            for i, u in enumerate(space):
                for j, v in enumerate(space):
                    lhs = product.apply(u, v)
                    rhs = left_symmetric.apply(u, v)
                    if lhs != rhs:
                        yield (i, j), lhs - rhs

        checks.append(_scan(f"{label}-metric-isotropic", metric_isotropy()))
        checks.append(_scan(f"{label}-form-isotropic", form_isotropy()))
        checks.append(
            Check(f"{label}-lagrangian-dimension", True)
            if 2 * len(space) == n
            else Check(
                f"{label}-lagrangian-dimension",
                False,
                Witness((len(space),), Vector.of(2 * len(space) - n)),
            )
        )
        checks.append(_scan(f"{label}-product-closure", closure()))
        checks.append(_scan(f"{label}-twist-stable", twist_stability()))
        checks.append(_scan(f"{label}-restricted-product-match", restricted_match()))

    return CheckReport(tuple(checks))
