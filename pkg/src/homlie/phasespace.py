"""Phase spaces: left-symmetric doubles on a space plus its dual.

Forward direction: two involutive hom-left-symmetric algebras, one viewed
as acting on the dual of the other (the dual twist must be the transposed
twist), extend to a product on the direct sum::

    (u + a) * (v + b) = u*v - Lt_{phi*(a)} v - Lt_{phi(u)} b + a*b

where ``Lt`` is the transpose of a left multiplication with respect to the
coordinate pairing.  The bundle carries the canonical skew pairing form,
the hyperbolic metric and the reflection structure ``u + a -> phi(u) -
phi*(a)``; together these certify a para-Kahler structure whenever the
extension's commutator is a hom-Lie bracket.

Converse direction: a para-Kahler hom-Lie algebra splits into the two
eigenspaces of ``phi o K``; identifying the minus eigenspace with the dual
of the plus one through the metric pairing transports the metric product
into exactly the extension form above.  :func:`extract_phase_space`
performs the identification and certifies every transported product
formula before returning the bundle.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

from .exactlin import Matrix, SingularMatrixError, Vector, mat_inverse
from .homalg import (
    Check,
    CheckReport,
    HomAlgebra,
    HomLieAlgebra,
    PreconditionError,
    StructureTensor,
    Witness,
    _matrix_check,
    _scan,
    check_left_symmetric,
    curvature,
    is_involutive,
    merge_reports,
)
from .geometry import BilinearForm, check_metric, check_symplectic, levi_civita, symplectic_product
from .parakahler import (
    ProductStructure,
    check_almost_product,
    check_para_kahler,
    eigensplit,
    fundamental_form,
)


@dataclass(frozen=True)
class DualizedOperator:
    """An endomorphism of one summand, tagged with the side it acts on."""

    matrix: Matrix
    acts_on: str  # "primal" or "dual"


@dataclass(frozen=True)
class PhaseSpaceBundle:
    """Hom-algebra on a space plus its dual, with its canonical structures.

    Coordinates are split: the first half indexes the primal factor, the
    second half the dual factor.  ``omega`` is the canonical pairing form
    (block ``[[0, I], [-I, 0]]``), ``metric`` the hyperbolic pairing
    metric (block ``[[0, I], [I, 0]]``) and ``product_structure`` the
    reflection ``phi (+) -phi^T``.  ``transport`` records, when the bundle
    was extracted from a para-Kahler algebra, the change of basis from the
    source coordinates into the split coordinates.
    """

    primal: HomAlgebra
    dual: HomAlgebra
    total: HomAlgebra
    omega: BilinearForm
    metric: BilinearForm
    product_structure: ProductStructure
    transport: Optional[Matrix] = None

    def __post_init__(self) -> None:
        n = self.primal.dim
        if self.dual.dim != n or self.total.dim != 2 * n:
            raise ValueError("bundle factor dimensions are inconsistent")
        identity = Matrix.identity(n)
        canonical = Matrix.block([[Matrix.zeros(n, n), identity], [-identity, Matrix.zeros(n, n)]])
        if self.omega.matrix != canonical:
            raise ValueError("bundle form is not the canonical pairing form")
        if self.total.twist @ self.total.twist != Matrix.identity(2 * n):
            raise ValueError("bundle twist is not involutive")

    @property
    def half_dim(self) -> int:
        return self.primal.dim


def _embed_primal(v: Vector, n: int) -> Vector:
    return v.concat(Vector.zero(n))

def _embed_dual(v: Vector, n: int) -> Vector:
    return Vector.zero(n).concat(v)

def _split(v: Vector, n: int) -> tuple[Vector, Vector]:
    return Vector(v.entries[:n]), Vector(v.entries[n:])


def extend_product(primal: HomAlgebra, dual: HomAlgebra) -> PhaseSpaceBundle:
    """Extend two involutive hom-left-symmetric algebras to their double.

    Preconditions (all enforced): both factors pass
    :func:`check_left_symmetric`, both twists are involutive, and the dual
    twist is the transpose of the primal one.  The returned bundle's twist
    is verified to be a morphism of the extended product.
    """
    n = primal.dim
    if dual.dim != n:
        raise PreconditionError("factors must have the same dimension")
    for label, factor in (("primal", primal), ("dual", dual)):
        report = check_left_symmetric(factor)
        if not report.passed:
            raise PreconditionError(
                f"{label} factor is not hom-left-symmetric: " + report.failures()[0].name
            )
        if not is_involutive(factor.twist):
            raise PreconditionError(f"{label} factor twist is not involutive")
    if dual.twist != primal.twist.transpose():
        raise PreconditionError("dual twist must be the transpose of the primal twist")

    cp, cd = primal.product, dual.product
    fp, fd = primal.twist, dual.twist

    triples: list[tuple[int, int, int, object]] = []
    for i in range(n):
        for j in range(n):
            for k, c in enumerate(cp.basis_product(i, j)):
                if c != 0:
                    triples.append((i, j, k, c))
            for k, c in enumerate(cd.basis_product(i, j)):
                if c != 0:
                    triples.append((n + i, n + j, n + k, c))
    # mixed products: u * b = -Lt_{phi(u)} b lands in the dual factor,
    # a * v = -Lt_{phi*(a)} v lands in the primal factor
    for i in range(n):
        left_t = cp.left_mult(fp.col(i)).transpose()
        for b in range(n):
            for k, c in enumerate(left_t.col(b)):
                if c != 0:
                    triples.append((i, n + b, n + k, -c))
    for a in range(n):
        left_t = cd.left_mult(fd.col(a)).transpose()
        for j in range(n):
            for k, c in enumerate(left_t.col(j)):
                if c != 0:
                    triples.append((n + a, j, k, -c))

    product = StructureTensor.from_triples(2 * n, triples)
    twist = Matrix.block_diag(fp, fd)
    total = HomAlgebra(product, twist)

    for s in range(2 * n):
        for t in range(2 * n):
            lhs = twist.apply(product.basis_product(s, t))
            rhs = product.apply(twist.col(s), twist.col(t))
            if lhs != rhs:
                raise PreconditionError(
                    f"extension twist fails to be a product morphism at pair ({s}, {t})"
                )

    identity = Matrix.identity(n)
    zero = Matrix.zeros(n, n)
    omega = BilinearForm.skew(Matrix.block([[zero, identity], [-identity, zero]]))
    metric = BilinearForm.symmetric(Matrix.block([[zero, identity], [identity, zero]]))
    structure = ProductStructure(Matrix.block_diag(fp, -fd))
    return PhaseSpaceBundle(primal, dual, total, omega, metric, structure)


def rho_pair(bundle: PhaseSpaceBundle, i: int, a: int) -> tuple[DualizedOperator, DualizedOperator]:
    """The two mixed curvature operators attached to a basis pair.

    For the i-th primal and a-th dual basis vector, returns the operator on
    the primal factor and its dual partner on the dual factor::

        rho(u, a)  = -L_{phi(u)} Lt_{phi*(a)} + Lt_a L_u
                     - phi o Lt_{Lt_{phi(u)} a} - L_{Lt_{phi*(a)} u} o phi
        rho*(a, u) = -L_{phi*(a)} Lt_{phi(u)} + Lt_u L_a
                     - phi* o Lt_{Lt_{phi*(a)} u} - L_{Lt_{phi(u)} a} o phi*

    The second is verified to be the matrix transpose of the first (the
    duality pairing identity).
    """
    n = bundle.half_dim
    if not (0 <= i < n and 0 <= a < n):
        raise IndexError(f"basis pair ({i}, {a}) out of range for factor dimension {n}")
    cp, cd = bundle.primal.product, bundle.dual.product
    fp, fd = bundle.primal.twist, bundle.dual.twist

    left_u = cp.left_mult(Vector.basis(n, i))
    left_phi_u = cp.left_mult(fp.col(i))
    left_a = cd.left_mult(Vector.basis(n, a))
    left_phi_a = cd.left_mult(fd.col(a))

    beta = left_phi_u.transpose().apply(Vector.basis(n, a))   # Lt_{phi(u)} a, in the dual factor
    w = left_phi_a.transpose().apply(Vector.basis(n, i))      # Lt_{phi*(a)} u, in the primal factor
    left_beta = cd.left_mult(beta)
    left_w = cp.left_mult(w)

    primal_op = (
        -(left_phi_u @ left_phi_a.transpose())
        + left_a.transpose() @ left_u
        - fp @ left_beta.transpose()
        - left_w @ fp
    )
    dual_op = (
        -(left_phi_a @ left_phi_u.transpose())
        + left_u.transpose() @ left_a
        - fd @ left_w.transpose()
        - left_beta @ fd
    )
    if dual_op != primal_op.transpose():
        raise RuntimeError(
            "duality pairing violated between the mixed curvature operators; "
            "the bundle is inconsistent"
        )
    return DualizedOperator(primal_op, "primal"), DualizedOperator(dual_op, "dual")


def curvature_profile(bundle: PhaseSpaceBundle) -> CheckReport:
    """Verify the curvature shape of the extended product.

    The curvature tensor of the double vanishes on all pure tuples (both
    arguments primal or both dual, applied to anything) and on mixed pairs
    reduces to the operators of :func:`rho_pair`; all six identities are
    checked on every basis tuple.
    """
    n = bundle.half_dim
    total = bundle.total
    primal_idx = range(n)
    dual_idx = range(n, 2 * n)

    def vanishing(name, first, second, args):
        def failures():
            for i in first:
                for j in second:
                    for k in args:
                        value = curvature(total, i, j, k)
                        if not value.is_zero():
                            yield (i, j, k), value
        return _scan(name, failures())

    ops = {(i, a): rho_pair(bundle, i, a) for i in range(n) for a in range(n)}

    def mixed_primal_failures():
        for i in range(n):
            for a in range(n):
                expected = ops[i, a][0].matrix
                for j in range(n):
                    value = curvature(total, i, n + a, j)
                    primal_part, dual_part = _split(value, n)
                    if not dual_part.is_zero() or primal_part != expected.col(j):
                        yield (i, n + a, j), value - _embed_primal(expected.col(j), n)

    def mixed_dual_failures():
        for a in range(n):
            for i in range(n):
                expected = ops[i, a][1].matrix
                for b in range(n):
                    value = curvature(total, n + a, i, n + b)
                    primal_part, dual_part = _split(value, n)
                    if not primal_part.is_zero() or dual_part != expected.col(b):
                        yield (n + a, i, n + b), value - _embed_dual(expected.col(b), n)

    return CheckReport(
        (
            vanishing("vanishes-primal-pair-primal-arg", primal_idx, primal_idx, primal_idx),
            vanishing("vanishes-primal-pair-dual-arg", primal_idx, primal_idx, dual_idx),
            vanishing("vanishes-dual-pair-primal-arg", dual_idx, dual_idx, primal_idx),
            vanishing("vanishes-dual-pair-dual-arg", dual_idx, dual_idx, dual_idx),
            _scan("mixed-pair-matches-primal-operator", mixed_primal_failures()),
            _scan("mixed-pair-matches-dual-operator", mixed_dual_failures()),
        )
    )


def check_admissible_extension(bundle: PhaseSpaceBundle) -> CheckReport:
    """Decide whether the double carries a hom-Lie bracket, two ways.

    The extension's commutator satisfies the twisted Jacobi identity exactly
    when the mixed curvature operators are symmetric in their same-side
    arguments; both routes are computed and must agree.  Whether the
    extended product is itself hom-left-symmetric (equivalent to the mixed
    operators vanishing) is cross-checked the same way.
    """
    n = bundle.half_dim
    ops = {(i, a): rho_pair(bundle, i, a) for i in range(n) for a in range(n)}

    def primal_symmetry_failures():
        for a in range(n):
            for i in range(n):
                for j in range(i + 1, n):
                    lhs = ops[i, a][0].matrix.col(j)
                    rhs = ops[j, a][0].matrix.col(i)
                    if lhs != rhs:
                        yield (i, j, a), lhs - rhs

    def dual_symmetry_failures():
        for i in range(n):
            for a in range(n):
                for b in range(a + 1, n):
                    lhs = ops[i, a][1].matrix.col(b)
                    rhs = ops[i, b][1].matrix.col(a)
                    if lhs != rhs:
                        yield (a, b, i), lhs - rhs

    primal_sym = _scan("mixed-operator-symmetric-primal", primal_symmetry_failures())
    dual_sym = _scan("mixed-operator-symmetric-dual", dual_symmetry_failures())
    rho_symmetric = primal_sym.passed and dual_sym.passed

    from .homalg import check_hom_lie

    commutator_bracket = bundle.total.product.antisymmetrized()
    direct = check_hom_lie(commutator_bracket, bundle.total.twist)
    admissible = direct.check("hom-jacobi").passed

    operators_vanish = all(
        ops[i, a][0].matrix.is_zero() and ops[i, a][1].matrix.is_zero()
        for i in range(n)
        for a in range(n)
    )
    direct_ls = check_left_symmetric(bundle.total).check("left-symmetry").passed

    agreement = (
        Check("admissibility-route-agreement", True)
        if rho_symmetric == admissible
        else Check("admissibility-route-agreement", False, Witness((), Vector.of(1)))
    )
    ls_agreement = (
        Check("left-symmetry-route-agreement", True)
        if operators_vanish == direct_ls
        else Check("left-symmetry-route-agreement", False, Witness((), Vector.of(1)))
    )
    return CheckReport(
        (primal_sym, dual_sym, agreement, ls_agreement),
        {
            "hom-lie-admissible": admissible,
            "product-left-symmetric": direct_ls,
            "mixed-operators-vanish": operators_vanish,
        },
    )


def canonical_forms(bundle: PhaseSpaceBundle) -> CheckReport:
    """Full para-Kahler certificate for an admissible double.

    Verifies, over the extension's commutator bracket: the canonical pairing
    form is nondegenerate, twist-invariant and a twisted 2-cocycle; the
    hyperbolic metric is twist-compatible; the reflection structure is an
    almost product structure whose composite with the twist acts as
    ``u + a -> u - a``, is skew for the metric and commutes with every left
    multiplication of the extended product; and the extended product is
    exactly the metric product of the commutator bracket.
    """
    adm = check_admissible_extension(bundle)
    if not adm.flags["hom-lie-admissible"]:
        raise PreconditionError("the double does not carry a hom-Lie bracket")
    n = bundle.half_dim
    algebra = HomLieAlgebra(bundle.total.product.antisymmetrized(), bundle.total.twist)

    omega_report = check_symplectic(algebra, bundle.omega).prefixed("omega")
    metric_report = check_metric(algebra, bundle.metric).prefixed("metric")
    structure_report = check_almost_product(algebra, bundle.product_structure).prefixed("structure")

    p = bundle.total.twist @ bundle.product_structure.matrix
    identity = Matrix.identity(n)
    split_form = _matrix_check(
        "composite-splits-basis", p, Matrix.block_diag(identity, -identity)
    )

    basis = [Vector.basis(2 * n, t) for t in range(2 * n)]

    def skew_failures():
        for s in range(2 * n):
            for t in range(2 * n):
                defect = bundle.metric.value(p.apply(basis[s]), basis[t]) + bundle.metric.value(
                    basis[s], p.apply(basis[t])
                )
                if defect != 0:
                    yield (s, t), Vector.of(defect)

    def invariance() -> Check:
        for t in range(2 * n):
            left = bundle.total.product.left_mult(basis[t])
            c = _matrix_check("left-multiplication-invariance", left @ p, p @ left, (t,))
            if not c.passed:
                return c
        return Check("left-multiplication-invariance", True)

    metric_product = levi_civita(algebra, bundle.metric)
    coincidence = (
        Check("product-is-metric-product", True)
        if metric_product == bundle.total.product
        else Check(
            "product-is-metric-product",
            False,
            Witness((), Vector.of(1)),
        )
    )

    own = CheckReport(
        (
            split_form,
            _scan("composite-skew-symmetric", skew_failures()),
            invariance(),
            coincidence,
        )
    )
    return merge_reports(omega_report, metric_report, structure_report, own)


def extract_phase_space(
    algebra: HomLieAlgebra, metric: BilinearForm, structure: ProductStructure
) -> PhaseSpaceBundle:
    """Split a para-Kahler algebra into a phase-space bundle.

    The minus eigenspace of ``phi o K`` is identified with the dual of the
    plus eigenspace through the metric pairing (no rescaling to
    delta-duality; the change of basis is recorded on the bundle).  The
    metric product is transported into the split coordinates and certified
    to agree with the extension product of the restricted factors, and the
    mixed values of the symplectic left-symmetric product are certified
    against their closed forms.  A degenerate pairing between the
    eigenspaces is an error, not a silent quotient.
    """
    pk = check_para_kahler(algebra, metric, structure)
    if not pk.passed:
        raise PreconditionError("input is not para-Kahler: " + pk.failures()[0].name)
    metric_report = check_metric(algebra, metric)
    if not metric_report.passed:
        raise PreconditionError("metric checks fail: " + metric_report.failures()[0].name)
    split = eigensplit(algebra, structure)
    if not split.para_complex:
        raise PreconditionError("eigenspaces have unequal dimensions; no dual identification")
    m = len(split.plus)

    pairing = Matrix.from_rows(
        [[metric.value(w, u) for u in split.plus] for w in split.minus]
    )
    if pairing.det() == 0:
        raise SingularMatrixError("pairing between the eigenspaces is degenerate")

    into_split = mat_inverse(Matrix.from_cols(list(split.plus) + list(split.minus)))
    transport = Matrix.block_diag(Matrix.identity(m), pairing.transpose()) @ into_split
    transport_inv = mat_inverse(transport)

    product = levi_civita(algebra, metric)
    moved = product.change_basis(transport)
    moved_twist = transport @ algebra.twist @ transport_inv

    pp = moved_twist.submatrix(range(m), range(m))
    dd = moved_twist.submatrix(range(m, 2 * m), range(m, 2 * m))
    if not moved_twist.submatrix(range(m), range(m, 2 * m)).is_zero() or not moved_twist.submatrix(
        range(m, 2 * m), range(m)
    ).is_zero():
        raise PreconditionError("twist does not preserve the eigenspace split")
    if dd != pp.transpose():
        raise PreconditionError(
            "transported twist on the dual factor is not the transposed primal twist"
        )

    for i in range(m):
        for j in range(m):
            if any(moved.entry(i, j, k) != 0 for k in range(m, 2 * m)):
                raise PreconditionError("plus eigenspace is not closed under the product")
            if any(moved.entry(m + i, m + j, k) != 0 for k in range(m)):
                raise PreconditionError("minus eigenspace is not closed under the product")

    primal_tensor = StructureTensor(
        m,
        tuple(
            tuple(tuple(moved.entry(i, j, k) for k in range(m)) for j in range(m))
            for i in range(m)
        ),
    )
    dual_tensor = StructureTensor(
        m,
        tuple(
            tuple(tuple(moved.entry(m + i, m + j, m + k) for k in range(m)) for j in range(m))
            for i in range(m)
        ),
    )
    bundle = extend_product(HomAlgebra(primal_tensor, pp), HomAlgebra(dual_tensor, dd))
    if bundle.total.product != moved:
        raise PreconditionError(
            "transported metric product does not match the extension product formulas"
        )

    _certify_left_symmetric_values(algebra, metric, structure, bundle, transport)
    return dataclasses.replace(bundle, transport=transport)


def _certify_left_symmetric_values(
    algebra: HomLieAlgebra,
    metric: BilinearForm,
    structure: ProductStructure,
    bundle: PhaseSpaceBundle,
    transport: Matrix,
) -> None:
    """Check the mixed values of the symplectic product against closed forms.

    In split coordinates the left-symmetric product attached to the
    fundamental form takes the values::

        a(u, b) = Rt_{phi*(b)} u - adt_{phi(u)} b
        a(b, u) = -adt_{phi*(b)} u + Rt_{phi(u)} b

    built from the restricted products (``ad`` is the commutator action).
    """
    m = bundle.half_dim
    omega = fundamental_form(algebra, metric, structure)
    moved = symplectic_product(algebra, omega).change_basis(transport)
    cp, cd = bundle.primal.product, bundle.dual.product
    fp, fd = bundle.primal.twist, bundle.dual.twist

    for i in range(m):
        ad_phi_u = cp.left_mult(fp.col(i)) - cp.right_mult(fp.col(i))
        right_phi_u = cp.right_mult(fp.col(i))
        for a in range(m):
            ad_phi_a = cd.left_mult(fd.col(a)) - cd.right_mult(fd.col(a))
            right_phi_a = cd.right_mult(fd.col(a))

            expected = right_phi_a.transpose().apply(Vector.basis(m, i)).concat(
                -(ad_phi_u.transpose().apply(Vector.basis(m, a)))
            )
            if moved.basis_product(i, m + a) != expected:
                raise PreconditionError(
                    f"left-symmetric value on primal/dual pair ({i}, {a}) "
                    "does not match its closed form"
                )

            expected = (-(ad_phi_a.transpose().apply(Vector.basis(m, i)))).concat(
                right_phi_u.transpose().apply(Vector.basis(m, a))
            )
            if moved.basis_product(m + a, i) != expected:
                raise PreconditionError(
                    f"left-symmetric value on dual/primal pair ({a}, {i}) "
                    "does not match its closed form"
                )
