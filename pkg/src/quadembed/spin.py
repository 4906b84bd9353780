"""Norm-one groups and the spin representation over an embedded space.

Everything runs on a SpinContext: an embedding whose entry involution fixes
the embedded vectors pointwise (form 1 with u = 1) and whose algebra unit
sits inside V with bar-fixed coordinates.  The hyperbolic rank-6 Suslin
embedding is the worked test bed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algmat import AlgMatrix, ScalarCoeffs, block2
from .embedding import Embedding, build_phi, lift_involution, v_coordinates
from .scalars import (
    QQ,
    Scalar,
    ScalarMatrix,
    ShapeError,
    SpanSolver,
    ZZ,
    rank_over_fractions,
)


class SpinError(ValueError):
    """A spin-side precondition failed."""


class NormUndefinedError(SpinError):
    """g g* escaped the embedded space, so no norm value exists."""


@dataclass(frozen=True)
class EvenPair:
    """Diagonal pair (g1, g2) standing for the block matrix diag(g1, g2)."""

    g1: AlgMatrix
    g2: AlgMatrix


@dataclass(frozen=True)
class GroupElement:
    """An algebra element with a checked invertibility certificate."""

    matrix: AlgMatrix
    det: Scalar


class SpinContext:
    """Caches the doubled map, the lifted involution and the span solvers
    for one embedding, so group membership tests stay cheap."""

    def __init__(self, e: Embedding):
        if not isinstance(e.algebra, ScalarCoeffs):
            raise SpinError("spin machinery needs scalar matrix coefficients")
        if e.ring not in (ZZ, QQ):
            raise SpinError("spin machinery runs over Z or Q")
        if e.involution is None or e.involution.form != 1 or e.involution.u != e.ring.one:
            raise SpinError("need a form-1 involution fixing the embedded vectors")
        self.embedding = e
        self.space = e.space
        self.ring = e.ring
        self.star = e.a_star
        self.phi = build_phi(e)
        self.lifted = lift_involution(e)
        self.one_coords = v_coordinates(e, e.identity_matrix())
        if self.one_coords is None or e.bar_coords(self.one_coords) != self.one_coords:
            raise SpinError("the algebra unit must sit bar-fixed inside V")
        self._phi_solver = SpanSolver(
            [img.flatten() for img in self.phi.images], self.ring
        )
        even_images = [
            img
            for mask, img in enumerate(self.phi.monomial_images)
            if bin(mask).count("1") % 2 == 0
        ]
        self._even_solver = SpanSolver([m.flatten() for m in even_images], self.ring)
        self._scalar_solver = SpanSolver([e.identity_matrix().flatten()], self.ring)

    # -- membership ---------------------------------------------------

    def v_coords(self, m: AlgMatrix):
        return v_coordinates(self.embedding, m)

    def is_scalar(self, m: AlgMatrix) -> bool:
        return self._scalar_solver.solve(m.flatten()) is not None

    def diag(self, p: EvenPair) -> AlgMatrix:
        zero = AlgMatrix.zero(self.embedding.algebra, self.embedding.dim)
        return block2(p.g1, zero, zero, p.g2)

    def in_even_image(self, p: EvenPair) -> bool:
        """Whether diag(g1, g2) lies in the image of the even part."""
        return self._even_solver.solve(self.diag(p).flatten()) is not None

    def group_element(self, m: AlgMatrix) -> GroupElement:
        det = m.to_scalar_matrix().determinant()
        if not det.is_unit():
            raise SpinError("matrix determinant is not a unit")
        return GroupElement(m, det)

    @staticmethod
    def _matrix(g) -> AlgMatrix:
        return g.matrix if isinstance(g, GroupElement) else g

    # -- the norm-one groups -------------------------------------------

    def is_in_u0(self, p: EvenPair) -> bool:
        """diag pair with diag * diag-star = 1; under form 1 this pins g2
        as the inverse of g1-star, and both facts are checked."""
        if not self.in_even_image(p):
            return False
        x = self.diag(p)
        one2 = AlgMatrix.identity(self.embedding.algebra, 2 * self.embedding.dim)
        if x * self.lifted(x) != one2:
            return False
        one = self.embedding.identity_matrix()
        s1 = self.star(p.g1)
        return s1 * p.g2 == one and p.g2 * s1 == one

    def bullet(self, g, v) -> AlgMatrix:
        """The twisted conjugation action g . v = g rho(v) g-star."""
        m = self._matrix(g)
        return m * self.embedding.rho_of(v) * self.star(m)

    def is_in_g(self, g) -> bool:
        """Invertible and the action keeps every basis vector inside V."""
        m = self._matrix(g)
        if not m.to_scalar_matrix().determinant().is_unit():
            return False
        for i in range(self.space.rank):
            w = self.bullet(m, self.space.basis_vector(i))
            if self.v_coords(w) is None:
                return False
        return True

    def norm_d(self, g) -> Scalar:
        """q of the V-coordinates of g g-star."""
        m = self._matrix(g)
        coords = self.v_coords(m * self.star(m))
        if coords is None:
            raise NormUndefinedError("g g* left the embedded space")
        return self.space.evaluate_q(coords)

    def is_in_spin(self, p: EvenPair) -> bool:
        """Norm-one even pair whose conjugation preserves the vector image."""
        if not self.is_in_u0(p):
            return False
        x = self.diag(p)
        xinv = self.lifted(x)  # valid inverse inside the norm-one group
        for img in self.phi.images:
            conj = x * img * xinv
            if self._phi_solver.solve(conj.flatten()) is None:
                return False
        return True

    def conjugation_coords(self, p: EvenPair, v) -> list[Scalar] | None:
        """V-coordinates of x phi(v) x^{-1} for x = diag(p)."""
        x = self.diag(p)
        coords = self.space.coordinates(v)
        total = None
        for c, img in zip(coords, self.phi.images):
            if c.is_zero:
                continue
            part = img.scale(c)
            total = part if total is None else total + part
        if total is None:
            return [self.ring.zero] * self.space.rank
        return self._phi_solver.solve((x * total * self.lifted(x)).flatten())

    def chi(self, p: EvenPair) -> GroupElement:
        """Project a spin pair to its first component."""
        if not self.is_in_spin(p):
            raise SpinError("pair is not in the spin group")
        return self.group_element(p.g1)

    def chi_inverse(self, g) -> EvenPair:
        """Section g -> (g, (g*)^{-1}) of the projection."""
        m = self._matrix(g)
        if not self.is_in_g(m):
            raise SpinError("element is not in the twisted-conjugation group")
        if self.norm_d(m) != self.ring.one:
            raise SpinError("element does not have norm one")
        inv = self.star(m).to_scalar_matrix().inverse()
        return EvenPair(m, AlgMatrix.from_scalar_matrix(inv))

    # -- samplers -------------------------------------------------------

    def elementary(self, i: int, j: int, t) -> AlgMatrix:
        """I + t E_ij inside the coefficient matrix algebra."""
        if i == j:
            raise ShapeError("off-diagonal indices required")
        t = t if isinstance(t, Scalar) else self.ring(t)
        m = [[self.ring(1 if a == b else 0) for b in range(self.embedding.dim)]
             for a in range(self.embedding.dim)]
        m[i][j] = t
        return AlgMatrix.from_scalar_matrix(ScalarMatrix.from_rows(m))

    def sample_elementary_product(self, rng: random.Random, max_factors: int = 6) -> AlgMatrix:
        dim = self.embedding.dim
        out = AlgMatrix.identity(self.embedding.algebra, dim)
        for _ in range(rng.randint(1, max_factors)):
            i = rng.randrange(dim)
            j = rng.randrange(dim)
            while j == i:
                j = rng.randrange(dim)
            out = out * self.elementary(i, j, rng.randint(-2, 2))
        return out

    def sample_group_element(self, rng: random.Random, allow_scaling: bool = False) -> AlgMatrix:
        g = self.sample_elementary_product(rng)
        if allow_scaling and self.ring is QQ and rng.random() < 0.5:
            g = g.scale(self.ring(rng.choice([2, 3, 4])))
        return g

    def random_vector(self, rng: random.Random, bound: int = 4) -> list[Scalar]:
        return [self.ring(rng.randint(-bound, bound)) for _ in range(self.space.rank)]

    def random_norm_one_vector(self, rng: random.Random) -> list[Scalar]:
        """A vector with q = 1: either a coordinate permutation of the unit
        of V, or a sampled pair with a unimodular slot."""
        n = self.space.rank // 2
        if rng.random() < 0.25:
            k = rng.randrange(n)
            coords = [0] * (2 * n)
            coords[k] = 1
            coords[n + k] = 1
            return self.space.coordinates(coords)
        slot = rng.randrange(n)
        a = [rng.randint(-3, 3) for _ in range(n)]
        a[slot] = rng.choice([1, -1])
        b = [rng.randint(-3, 3) for _ in range(n)]
        partial = sum(a[i] * b[i] for i in range(n) if i != slot)
        b[slot] = (1 - partial) * a[slot]
        return self.space.coordinates(a + b)

    # -- seeded verifier for the four structural facts -------------------

    def lemma_checks(self, seed: int, samples: int) -> list["LemmaReport"]:
        reports = [
            self._check_bar_characterisation(seed, samples),
            self._check_norm_one_translation(seed, samples),
            self._check_star_norm_symmetry(seed, samples),
            self._check_norm_product_rule(seed, samples),
        ]
        return reports

    def _sample_seed(self, seed: int, label: str, i: int) -> str:
        return f"{seed}:{label}:{i}"

    def _check_bar_characterisation(self, seed: int, samples: int) -> "LemmaReport":
        """Perturbing the bar image breaks scalarity; the bar image itself
        is the unique completion making sum and product scalar."""
        failures = []
        e = self.embedding
        one = e.identity_matrix()
        for i in range(samples):
            skey = self._sample_seed(seed, "4.1", i)
            rng = random.Random(skey)
            while True:
                v = self.random_vector(rng)
                rows = ScalarMatrix.from_rows([self.one_coords, v])
                if rank_over_fractions(rows) == 2:
                    break
            r = self.ring(rng.choice([x for x in range(-4, 5) if x]))
            mv = e.rho_of(v)
            mbar = e.rho_bar_of(v)
            perturbed = mbar + one.scale(r)
            sum_scalar = self.is_scalar(mv + perturbed)
            prod_scalar = self.is_scalar(mv * perturbed)
            ok = not (sum_scalar and prod_scalar)
            good_sum = self.is_scalar(mv + mbar)
            good_prod = mv * mbar == one.scale(self.space.evaluate_q(v))
            if not (ok and good_sum and good_prod):
                failures.append({"seed": skey, "witness": _coords_json(v)})
        return LemmaReport("4.1", samples, failures)

    def _check_norm_one_translation(self, seed: int, samples: int) -> "LemmaReport":
        """bar(v1) + v2 v1 v2 is a multiple of v2 whenever q(v2) = 1."""
        failures = []
        e = self.embedding
        for i in range(samples):
            skey = self._sample_seed(seed, "4.2", i)
            rng = random.Random(skey)
            v1 = self.random_vector(rng)
            v2 = self.random_norm_one_vector(rng)
            m2 = e.rho_of(v2)
            target = e.rho_bar_of(v1) + m2 * e.rho_of(v1) * m2
            line = SpanSolver([m2.flatten()], self.ring)
            if line.solve(target.flatten()) is None:
                failures.append(
                    {"seed": skey, "witness": [_coords_json(v1), _coords_json(v2)]}
                )
        return LemmaReport("4.2", samples, failures)

    def _check_star_norm_symmetry(self, seed: int, samples: int) -> "LemmaReport":
        """q(g g*) = 1 forces q(g* g) = 1."""
        failures = []
        for i in range(samples):
            skey = self._sample_seed(seed, "4.3", i)
            rng = random.Random(skey)
            g = self.sample_group_element(rng)
            if self.norm_d(g) != self.ring.one:
                continue
            gs = self.star(g)
            coords = self.v_coords(gs * g)
            if coords is None or self.space.evaluate_q(coords) != self.ring.one:
                failures.append({"seed": skey, "witness": g.to_json()["entries"]})
        return LemmaReport("4.3", samples, failures)

    def _check_norm_product_rule(self, seed: int, samples: int) -> "LemmaReport":
        """q(g . v) = q(g g*) q(v), including non-norm-one g."""
        failures = []
        for i in range(samples):
            skey = self._sample_seed(seed, "4.4", i)
            rng = random.Random(skey)
            g = self.sample_group_element(rng, allow_scaling=True)
            v = self.random_vector(rng)
            d = self.norm_d(g)
            coords = self.v_coords(self.bullet(g, v))
            if coords is None:
                failures.append({"seed": skey, "witness": _coords_json(v)})
                continue
            if self.space.evaluate_q(coords) != d * self.space.evaluate_q(v):
                failures.append({"seed": skey, "witness": _coords_json(v)})
        return LemmaReport("4.4", samples, failures)


@dataclass
class LemmaReport:
    lemma: str
    samples: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "lemma": self.lemma,
            "samples": self.samples,
            "failures": list(self.failures),
        }


def _coords_json(coords) -> list[str]:
    return [str(c) for c in coords]
