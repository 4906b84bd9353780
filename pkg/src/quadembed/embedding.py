"""Quadratic spaces realised inside an associative algebra.

An embedding carries the images of the space's basis inside a matrix
algebra, the bar isometry as a coordinate matrix, and optionally an entry
involution of the algebra.  From it the package builds the induced map into
doubled block matrices, checks its injectivity, exposes the symmetrised
triple product, and lifts entry involutions to the doubled algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .algmat import (
    AlgMatrix,
    ScalarCoeffs,
    CliffordCoeffs,
    algebra_basis,
    block2,
    parity_of_block_matrix,
    span_coords,
)
from .clifford import (
    CliffordElement,
    UniversalMap,
    extend_universal,
    monomial,
    standard_involution,
)
from .qspace import QuadraticSpace
from .scalars import (
    QQ,
    RingError,
    Scalar,
    ScalarMatrix,
    ShapeError,
    SpanSolver,
    ZZ,
    rank_over_fractions,
)


class EmbeddingError(ValueError):
    """The embedding data fails one of its defining identities."""


class InjectivityError(EmbeddingError):
    """Monomial images became linearly dependent."""


class ClosureError(EmbeddingError):
    """A product that must land back in the embedded space did not."""


class InvolutionError(EmbeddingError):
    """Entry involution is inconsistent with the requested lift form."""

    def __init__(self, message: str, basis_index: int | None = None):
        super().__init__(message)
        self.basis_index = basis_index


@dataclass(frozen=True)
class InvolutionForm:
    """Which table row the entry involution follows on embedded vectors.

    Form 1 fixes vectors up to the sign u; form 2 sends them to u times
    their bar image.  In both cases u squares to 1.
    """

    form: int
    u: Scalar

    def __post_init__(self):
        if self.form not in (1, 2):
            raise ValueError("form must be 1 or 2")
        if self.u * self.u != self.u.ring.one:
            raise ValueError("u must square to 1")


class Embedding:
    """Images of a quadratic space's basis inside a matrix algebra."""

    def __init__(
        self,
        space: QuadraticSpace,
        algebra,
        dim: int,
        rho,
        alpha: ScalarMatrix,
        involution: Optional[InvolutionForm] = None,
        a_star: Optional[Callable[[AlgMatrix], AlgMatrix]] = None,
    ):
        rho = tuple(rho)
        if len(rho) != space.rank:
            raise ShapeError("need one image per basis vector")
        for m in rho:
            if m.dim != dim:
                raise ShapeError("basis images must have the declared dimension")
            if m.algebra != algebra:
                raise RingError("basis images must share the coefficient algebra")
        if algebra.ring is not space.ring:
            raise RingError("algebra and space must share the base ring")
        if alpha.rows != space.rank or alpha.cols != space.rank:
            raise ShapeError("bar matrix must be rank x rank")
        if alpha.ring is not space.ring:
            raise RingError("bar matrix must live in the base ring")
        self.space = space
        self.algebra = algebra
        self.dim = dim
        self.rho = rho
        self.alpha = alpha
        self.involution = involution
        self.a_star = a_star

    @property
    def ring(self):
        return self.space.ring

    def identity_matrix(self) -> AlgMatrix:
        return AlgMatrix.identity(self.algebra, self.dim)

    def bar_coords(self, coords) -> list[Scalar]:
        return self.alpha.apply(self.space.coordinates(coords))

    def rho_of(self, coords) -> AlgMatrix:
        """Image of the vector with the given coordinates."""
        coords = self.space.coordinates(coords)
        total = AlgMatrix.zero(self.algebra, self.dim)
        for c, m in zip(coords, self.rho):
            if not c.is_zero:
                total = total + m.scale(c)
        return total

    def rho_bar_of(self, coords) -> AlgMatrix:
        return self.rho_of(self.bar_coords(coords))

    def to_json(self):
        if isinstance(self.algebra, ScalarCoeffs):
            algebra_json = {"kind": "scalars", "dim": self.dim}
        else:
            algebra_json = {
                "kind": "clifford",
                "dim": self.dim,
                "entry_space": self.algebra.space.to_json(),
            }
        data = {
            "space": self.space.to_json(),
            "algebra": algebra_json,
            "rho": [m.to_json()["entries"] for m in self.rho],
            "alpha": self.alpha.to_json(),
            "involution": None,
        }
        if self.involution is not None:
            data["involution"] = {"form": self.involution.form, "u": str(self.involution.u)}
        return data

    def __repr__(self):
        return (
            f"Embedding(rank={self.space.rank}, dim={self.dim}, "
            f"algebra={self.algebra.kind})"
        )


@dataclass
class ValidationReport:
    passed: bool
    failures: list

    def to_json(self):
        return {"passed": self.passed, "failures": list(self.failures)}


def validate_embedding(e: Embedding) -> ValidationReport:
    """Check every defining identity of the embedding, exactly.

    Failures are collected into the report rather than raised.
    """
    failures = []
    space = e.space
    n = space.rank
    one = e.identity_matrix()
    rho = e.rho
    rbar = [e.rho_bar_of(space.basis_vector(i)) for i in range(n)]

    for i in range(n):
        q = space.q_generator(i)
        if rho[i] * rbar[i] != one.scale(q):
            failures.append(f"rho(e{i+1})*bar(e{i+1}) != q(e{i+1})")
        if rbar[i] * rho[i] != one.scale(q):
            failures.append(f"bar(e{i+1})*rho(e{i+1}) != q(e{i+1})")
    for i in range(n):
        for j in range(i + 1, n):
            want = one.scale(space.bilinear_generators(i, j))
            if rho[i] * rbar[j] + rho[j] * rbar[i] != want:
                failures.append(f"polarised identity fails at ({i+1},{j+1})")
            if rbar[i] * rho[j] + rbar[j] * rho[i] != want:
                failures.append(f"mirrored polarised identity fails at ({i+1},{j+1})")

    # alpha preserves the form: checking q on basis vectors and the pairing
    # on basis pairs pins it down for every vector.
    for i in range(n):
        ai = e.bar_coords(space.basis_vector(i))
        if space.evaluate_q(ai) != space.q_generator(i):
            failures.append(f"bar map does not preserve q(e{i+1})")
    for i in range(n):
        ai = e.bar_coords(space.basis_vector(i))
        for j in range(i + 1, n):
            aj = e.bar_coords(space.basis_vector(j))
            if space.bilinear(ai, aj) != space.bilinear_generators(i, j):
                failures.append(f"bar map does not preserve <e{i+1},e{j+1}>")

    for i in range(n):
        if rho[i].is_zero():
            failures.append(f"rho(e{i+1}) is zero")
            continue
        others = [rho[j] for j in range(n) if j != i]
        if others and span_coords(others, rho[i]) is not None:
            failures.append(f"rho(e{i+1}) depends on the other basis images")

    return ValidationReport(not failures, failures)


@lru_cache(maxsize=None)
def _v_solver(e: Embedding) -> SpanSolver | None:
    if e.ring in (ZZ, QQ):
        return SpanSolver([m.flatten() for m in e.rho], e.ring)
    return None


def v_coordinates(e: Embedding, m: AlgMatrix) -> list[Scalar] | None:
    """Coordinates of a matrix inside the embedded copy of V, or None."""
    solver = _v_solver(e)
    if solver is not None:
        return solver.solve(m.flatten())
    return span_coords(list(e.rho), m)


class PhiMap:
    """The induced algebra map into doubled block matrices over A."""

    def __init__(self, e: Embedding, universal: UniversalMap, images):
        self.embedding = e
        self.universal = universal
        self.images = list(images)
        n = e.space.rank
        self.monomial_images = [universal.image_of_mask(m) for m in range(1 << n)]
        self.graded = all(
            parity_of_block_matrix(img) == bin(mask).count("1") % 2
            for mask, img in enumerate(self.monomial_images)
        )
        rows = ScalarMatrix.from_rows([img.flatten() for img in self.monomial_images])
        self.monomial_rank = rank_over_fractions(rows)
        self.injective = self.monomial_rank == 1 << n

    def __call__(self, x: CliffordElement) -> AlgMatrix:
        return self.universal(x)

    @property
    def one(self) -> AlgMatrix:
        return self.universal.one


def build_phi(e: Embedding) -> PhiMap:
    """Map generators to the doubled antidiagonal blocks and extend.

    Requires a validated embedding over Z or Q with a non-degenerate form;
    raises InjectivityError if the monomial images become dependent (which
    the theory rules out for non-degenerate forms).
    """
    if e.ring not in (ZZ, QQ):
        raise EmbeddingError("doubled map needs Z or Q coefficients")
    report = validate_embedding(e)
    if not report.passed:
        raise EmbeddingError(f"embedding axioms fail: {report.failures}")
    if not e.space.is_nondegenerate():
        raise EmbeddingError("quadratic space must be non-degenerate")
    zero = AlgMatrix.zero(e.algebra, e.dim)
    images = [
        block2(zero, e.rho[i], e.rho_bar_of(e.space.basis_vector(i)), zero)
        for i in range(e.space.rank)
    ]
    one = AlgMatrix.identity(e.algebra, 2 * e.dim)
    universal = extend_universal(e.space, images, one)
    phi = PhiMap(e, universal, images)
    if not phi.injective:
        raise InjectivityError(
            f"monomial image rank {phi.monomial_rank} < {1 << e.space.rank}"
        )
    return phi


def jordan_product(e: Embedding, v, w) -> list[Scalar]:
    """Coordinates of the symmetrised triple product v w v inside V.

    Also checks that the bar map intertwines the product, i.e. that taking
    bars of the inputs bars the output.
    """
    v = e.space.coordinates(v)
    w = e.space.coordinates(w)
    mv = e.rho_of(v)
    mw = e.rho_of(w)
    coords = v_coordinates(e, mv * mw * mv)
    if coords is None:
        raise ClosureError("triple product left the embedded space")
    mvb = e.rho_bar_of(v)
    mwb = e.rho_bar_of(w)
    bar_coords = v_coordinates(e, mvb * mwb * mvb)
    if bar_coords is None or bar_coords != e.bar_coords(coords):
        raise ClosureError("bar map does not intertwine the triple product")
    return coords


def check_alpha_order_two(e: Embedding) -> bool | None:
    """Whether the bar matrix squares to the identity.

    A holding identity is reported as True outright.  When it fails, the
    verdict depends on the hypothesis that the algebra unit sits bar-fixed
    inside V: with the hypothesis the failure is a genuine False, without
    it nothing is implied and the result is None.
    """
    squared = e.alpha * e.alpha == ScalarMatrix.identity(e.space.rank, e.ring)
    if squared:
        return True
    one_coords = v_coordinates(e, e.identity_matrix())
    if one_coords is None or e.bar_coords(one_coords) != one_coords:
        return None
    return False


class LiftedInvolution:
    """Block-level involution of the doubled algebra induced by an entry
    involution on A."""

    def __init__(self, e: Embedding, form: InvolutionForm):
        self.embedding = e
        self.form = form

    def __call__(self, m: AlgMatrix) -> AlgMatrix:
        if m.dim != 2 * self.embedding.dim:
            raise ShapeError("expected a doubled matrix")
        star = self.embedding.a_star
        a, b, c, d = m.blocks2()
        u = self.form.u
        minus_u = -u
        if self.form.form == 1:
            return block2(
                star(d), star(b).scale(minus_u), star(c).scale(minus_u), star(a)
            )
        return block2(star(a), star(c).scale(minus_u), star(b).scale(minus_u), star(d))


def lift_involution(e: Embedding, form: InvolutionForm | None = None) -> LiftedInvolution:
    """Lift the entry involution of A to the doubled algebra.

    Consistency on basis images is mandatory: form 1 requires star(rho) to
    be u*rho, form 2 requires u*bar(rho).  The entry involution itself is
    verified to be an order-2 anti-automorphism on a module basis of A,
    which carries the same properties to the lifted map; finally the lift
    must negate every doubled image of a basis vector.
    """
    if e.a_star is None:
        raise InvolutionError("no entry involution available on the algebra")
    if form is None:
        form = e.involution
    if form is None:
        raise InvolutionError("no involution form supplied")
    star = e.a_star
    u = form.u

    for i, m in enumerate(e.rho):
        want = m.scale(u) if form.form == 1 else e.rho_bar_of(e.space.basis_vector(i)).scale(u)
        if star(m) != want:
            raise InvolutionError(
                f"entry involution disagrees with form {form.form} on basis image {i+1}",
                basis_index=i,
            )

    basis = algebra_basis(e.algebra, e.dim)
    for x in basis:
        if star(star(x)) != x:
            raise InvolutionError("entry involution does not have order 2")
    for x in basis:
        sx = star(x)
        for y in basis:
            if star(x * y) != star(y) * sx:
                raise InvolutionError("entry involution is not an anti-automorphism")

    lifted = LiftedInvolution(e, form)
    zero = AlgMatrix.zero(e.algebra, e.dim)
    for i, m in enumerate(e.rho):
        z = block2(zero, m, e.rho_bar_of(e.space.basis_vector(i)), zero)
        if lifted(z) != -z:
            raise InvolutionError(
                f"lifted involution does not negate basis image {i+1}", basis_index=i
            )
    return lifted


def involutions_conflict_check(e: Embedding, witness=None) -> bool | None:
    """Whether the two lift forms are forced to disagree on some diag(S, S).

    On a vector v the form-1 lift fixes diag(rho(v), rho(v)) while the
    form-2 lift replaces the blocks by the bar image, so the two maps
    differ exactly when some embedded vector moves under bar.  Returns None
    when every vector is bar-fixed so the premise is empty.
    """
    space = e.space
    if witness is not None:
        coords = space.coordinates(witness)
        return e.rho_of(coords) != e.rho_bar_of(coords)
    for i in range(space.rank):
        v = space.basis_vector(i)
        if e.bar_coords(v) != v:
            return e.rho_of(v) != e.rho_bar_of(v)
    return None


def standard_involution_restriction(e: Embedding, phi: PhiMap | None = None) -> bool | None:
    """Whether the reversal involution of the Clifford algebra restricts to A.

    Needs every diag(a, a), for a in a module basis of A, to be certified
    inside the image of the doubled map; returns None when some diagonal
    escapes that image, True/False otherwise.
    """
    if phi is None:
        phi = build_phi(e)
    solver = SpanSolver([img.flatten() for img in phi.monomial_images], e.ring)
    zero = AlgMatrix.zero(e.algebra, e.dim)
    for a in algebra_basis(e.algebra, e.dim):
        diag = block2(a, zero, zero, a)
        coords = solver.solve(diag.flatten())
        if coords is None:
            return None
        element = CliffordElement(
            e.space, {m: c for m, c in enumerate(coords) if not c.is_zero}
        )
        image = phi(standard_involution(element))
        ia, ib, ic, id_ = image.blocks2()
        if not ib.is_zero() or not ic.is_zero() or ia != id_:
            return False
    return True


def clifford_self_embedding(space: QuadraticSpace) -> Embedding:
    """The tautological embedding: generators inside their own Clifford
    algebra (as 1x1 matrices), bar the identity, star the reversal."""
    algebra = CliffordCoeffs(space)

    def star(m: AlgMatrix) -> AlgMatrix:
        return AlgMatrix(
            algebra, [[standard_involution(x) for x in row] for row in m.entries]
        )

    rho = [
        AlgMatrix(algebra, [[monomial(space, 1 << i)]]) for i in range(space.rank)
    ]
    return Embedding(
        space,
        algebra,
        1,
        rho,
        ScalarMatrix.identity(space.rank, space.ring),
        involution=InvolutionForm(1, space.ring(-1)),
        a_star=star,
    )
