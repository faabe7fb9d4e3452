"""Irreducible representations of the balanced algebra at a root of unity.

Construction
------------
``symplectic_basis`` block-diagonalizes the intersection form over the weight
lattice and returns basis pairs ``(alpha_i, beta_i)`` with
``theta(alpha_i, beta_i) = d_i`` in {1, 2} (d = 1 pairs first) plus the
puncture weight systems, which span the kernel.  Given a value of ``zeta`` on
every basis vector and scalars ``h_k`` with ``h_k^N = zeta(eta_k)``, the
representation is a tensor product of N-dimensional factors

    X_i v_j = zeta(alpha_i)^(1/N) q^(d_i j) v_j,
    Y_i v_j = zeta(beta_i)^(1/N) v_{j+1}      (indices mod N),

one factor per pair, with ``Z_{eta_k}`` acting by ``h_k``.  The dimension is
``N^(3g+s-3)`` and the factor relations are ``X_i Y_i = q^(d_i) Y_i X_i``.

Monomial evaluation decomposes a weight system over the basis,
``w = sum_u m_u gamma_u``, and applies the exact reordering phase

    rho(Z_w) = omega^(-2 sum_{u<v} m_u m_v theta(gamma_u, gamma_v))
               prod_u rho(Z_{gamma_u})^(m_u),

which is independent of the basis ordering.  The resulting scalar of
``rho(Z_w^N)`` is ``central_character(w)``: the product of the
``zeta(gamma_u)^(m_u)`` times ``epsilon`` raised to the same pairing sum.
When ``epsilon = +1`` (and always on basis vectors) this is just the
multiplicative extension of ``zeta``; when ``epsilon = -1`` the quadratic
sign is genuinely there, as a direct matrix-power computation confirms.

N-th roots ``zeta^(1/N)`` use the principal branch; any other choice gives an
isomorphic representation.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import AlgebraElement, BalancedAlgebra, frobenius, phase_eval, solve_chebyshev
from .lattice import skew_normal_form
from .traintrack import TriangulationTrack, puncture_weight, theta, theta_matrix, weight_lattice_basis


class RepresentationError(ValueError):
    """Inconsistent representation data (bad pairing, h_k^N != zeta(eta_k), ...)."""


@dataclass(frozen=True)
class SymplecticBasis:
    """Basis pairs with theta(alpha_i, beta_i) = d_i plus the puncture kernel vectors."""

    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]
    etas: tuple[tuple[int, ...], ...]

    @property
    def gamma_vectors(self) -> list[tuple[int, ...]]:
        return ([a for a, _, _ in self.pairs]
                + [b for _, b, _ in self.pairs]
                + list(self.etas))


def symplectic_basis(track: TriangulationTrack) -> SymplecticBasis:
    """Pair basis from the normal form of the intersection form, kernel from punctures."""
    basis = weight_lattice_basis(track)
    m = theta_matrix(track, basis)
    nf = skew_normal_form(m)
    tri = track.tri
    g, s = tri.genus, tri.punctures
    expected = [1] * g + [2] * (2 * g + s - 3)
    if list(nf.blocks) != expected:
        raise RepresentationError(f"unexpected block pattern {nf.blocks} for (g, s) = ({g}, {s})")

    def combine(coeffs) -> tuple[int, ...]:
        out = [0] * track.branch_count
        for c, vec in zip(coeffs, basis):
            for i, x in enumerate(vec):
                out[i] += c * x
        return tuple(out)

    pairs = []
    for i, d in enumerate(nf.blocks):
        alpha = combine(nf.U[2 * i])
        beta = combine(nf.U[2 * i + 1])
        pairs.append((alpha, beta, d))
    etas = tuple(puncture_weight(track, k) for k in range(s))
    return SymplecticBasis(tuple(pairs), etas)


@dataclass
class RepresentationSpec:
    """Input data of a representation: basis, zeta on the basis, puncture scalars."""

    algebra: BalancedAlgebra
    basis: SymplecticBasis
    zeta_alphas: list[complex]
    zeta_betas: list[complex]
    zeta_etas: list[complex]
    h: list[complex]
    tol: float = 1e-9

    def validate(self) -> None:
        params = self.algebra.params
        if params.N % 2 == 0:
            raise RepresentationError("N must be odd")
        m = len(self.basis.pairs)
        s = len(self.basis.etas)
        if not (len(self.zeta_alphas) == len(self.zeta_betas) == m and
                len(self.zeta_etas) == len(self.h) == s):
            raise RepresentationError("zeta/h lengths do not match the basis")
        for value in (*self.zeta_alphas, *self.zeta_betas, *self.zeta_etas, *self.h):
            if value == 0:
                raise RepresentationError("zeta and h values must be non-zero")
        track = self.algebra.track
        gammas = self.basis.gamma_vectors
        for i, (a, b, d) in enumerate(self.basis.pairs):
            if theta(track, a, b) != d or d not in (1, 2):
                raise RepresentationError(f"pair {i} does not pair to its block value")
        for i in range(len(gammas)):
            for j in range(i + 1, len(gammas)):
                v = theta(track, gammas[i], gammas[j])
                expect = self.basis.pairs[i][2] if (j == i + m and i < m) else 0
                if v != expect:
                    raise RepresentationError(
                        f"basis vectors {i}, {j} pair to {v}, expected {expect}")
        for k, (h_k, z) in enumerate(zip(self.h, self.zeta_etas)):
            if abs(h_k ** params.N - z) > self.tol * max(1.0, abs(z)):
                raise RepresentationError(
                    f"h[{k}]^N = {h_k ** params.N} differs from zeta(eta_{k}) = {z}")

    @property
    def dimension(self) -> int:
        return self.algebra.params.N ** len(self.basis.pairs)


def random_spec(algebra: BalancedAlgebra, seed: int = 0) -> RepresentationSpec:
    """Generic unit-modulus zeta values with compatible random puncture scalars."""
    rng = random.Random(seed)
    basis = symplectic_basis(algebra.track)
    N = algebra.params.N
    unit = lambda: cmath.exp(2j * cmath.pi * rng.random())
    zeta_alphas = [unit() for _ in basis.pairs]
    zeta_betas = [unit() for _ in basis.pairs]
    zeta_etas = [unit() for _ in basis.etas]
    h = [_principal_root(z, N) * cmath.exp(2j * cmath.pi * rng.randrange(N) / N)
         for z in zeta_etas]
    return RepresentationSpec(algebra, basis, zeta_alphas, zeta_betas, zeta_etas, h)


def _principal_root(z: complex, n: int) -> complex:
    return cmath.exp(cmath.log(z) / n)


class _IntSolver:
    """Exact decomposition of weight systems over a fixed lattice basis."""

    def __init__(self, gammas: list[tuple[int, ...]]):
        self.gammas = gammas
        n = len(gammas)
        cols = len(gammas[0])
        # Select n independent branch coordinates by fraction-free elimination.
        mat = [[Fraction(g[c]) for g in gammas] for c in range(cols)]  # cols x n
        idx: list[int] = []
        work: list[list[Fraction]] = []
        for c in range(cols):
            row = list(mat[c])
            # reduce against the rows already chosen (kept mutually reduced)
            for sel in work:
                lead = self._lead(sel)
                if row[lead] != 0:
                    f = row[lead] / sel[lead]
                    row = [x - f * y for x, y in zip(row, sel)]
            if any(x != 0 for x in row):
                work.append(row)
                idx.append(c)
            if len(idx) == n:
                break
        if len(idx) != n:
            raise RepresentationError("basis does not have full rank")
        self.idx = idx
        square = [[Fraction(gammas[j][c]) for j in range(n)] for c in idx]  # n x n
        self.inverse = self._invert(square)

    @staticmethod
    def _lead(row):
        for i, x in enumerate(row):
            if x != 0:
                return i
        raise ValueError("zero row")

    @staticmethod
    def _invert(mat):
        n = len(mat)
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
        for c in range(n):
            pivot = next(r for r in range(c, n) if aug[r][c] != 0)
            aug[c], aug[pivot] = aug[pivot], aug[c]
            p = aug[c][c]
            aug[c] = [x / p for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return [row[n:] for row in aug]

    def decompose(self, weights) -> list[int]:
        rhs = [Fraction(weights[c]) for c in self.idx]
        coeffs = [sum(self.inverse[r][c] * rhs[c] for c in range(len(rhs)))
                  for r in range(len(rhs))]
        out = []
        for x in coeffs:
            if x.denominator != 1:
                raise RepresentationError(f"weight system leaves the lattice: coefficient {x}")
            out.append(int(x))
        # exact verification against every branch coordinate
        for c in range(len(weights)):
            if sum(m * g[c] for m, g in zip(out, self.gammas)) != weights[c]:
                raise RepresentationError("decomposition failed to reproduce the weight system")
        return out


class Representation:
    """Matrices realizing the algebra on a tensor product of cyclic factors."""

    def __init__(self, spec: RepresentationSpec):
        spec.validate()
        self.spec = spec
        self.algebra = spec.algebra
        params = spec.algebra.params
        self.params = params
        N = params.N
        q = params.q
        pairs = spec.basis.pairs
        m = len(pairs)
        self.dim = N ** m

        x_factors = []
        y_factors = []
        for i, (_, _, d) in enumerate(pairs):
            za = _principal_root(spec.zeta_alphas[i], N)
            zb = _principal_root(spec.zeta_betas[i], N)
            x = np.diag([za * q ** (d * (j + 1)) for j in range(N)]).astype(complex)
            y = np.zeros((N, N), dtype=complex)
            for j in range(N):
                y[(j + 1) % N, j] = zb
            x_factors.append(x)
            y_factors.append(y)

        def embed(factor: np.ndarray, position: int) -> np.ndarray:
            out = np.eye(1, dtype=complex)
            for slot in range(m):
                out = np.kron(out, factor if slot == position else np.eye(N, dtype=complex))
            return out

        self.gamma_vectors = spec.basis.gamma_vectors
        self.zeta_gamma = list(spec.zeta_alphas) + list(spec.zeta_betas) + list(spec.zeta_etas)
        self.gamma_matrices: list[np.ndarray | complex] = (
            [embed(x, i) for i, x in enumerate(x_factors)]
            + [embed(y, i) for i, y in enumerate(y_factors)]
            + list(spec.h)  # eta generators act by scalars
        )
        self._solver = _IntSolver(self.gamma_vectors)
        self._theta = [[theta(self.algebra.track, a, b) for b in self.gamma_vectors]
                       for a in self.gamma_vectors]

    # -- evaluation ---------------------------------------------------------

    def decompose(self, weights) -> list[int]:
        return self._solver.decompose(weights)

    def _pairing_sum(self, coeffs) -> int:
        total = 0
        live = [(u, c) for u, c in enumerate(coeffs) if c]
        for a in range(len(live)):
            u, cu = live[a]
            for b in range(a + 1, len(live)):
                v, cv = live[b]
                total += cu * cv * self._theta[u][v]
        return total

    def monomial_matrix(self, weights) -> np.ndarray:
        coeffs = self.decompose(weights)
        phase = self.params.root_value(-2 * self._pairing_sum(coeffs))
        mat = np.eye(self.dim, dtype=complex) * phase
        for u, c in enumerate(coeffs):
            if c == 0:
                continue
            gen = self.gamma_matrices[u]
            if isinstance(gen, np.ndarray):
                mat = mat @ np.linalg.matrix_power(gen, c)
            else:
                mat = mat * gen ** c
        return mat

    def evaluate(self, x: AlgebraElement) -> np.ndarray:
        self.algebra.require_same(x)
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for w, coeff in x.terms.items():
            out += phase_eval(coeff, self.params) * self.monomial_matrix(w)
        return out

    def central_character(self, weights) -> complex:
        """The scalar of rho(Z_w^N): the epsilon-twisted multiplicative extension of zeta."""
        coeffs = self.decompose(weights)
        value = complex(self.params.epsilon ** (self._pairing_sum(coeffs) % 2))
        for u, c in enumerate(coeffs):
            if c:
                value *= self.zeta_gamma[u] ** c
        return value


def build(spec: RepresentationSpec) -> Representation:
    return Representation(spec)


# -- verification -------------------------------------------------------------

@dataclass
class CheckReport:
    dim: int
    deviations: dict[str, float] = field(default_factory=dict)
    commutant_dim: int | None = None
    passed: bool = False

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "max_deviation": {k: float(v) for k, v in self.deviations.items()},
            **({} if self.commutant_dim is None else {"commutant_dim": self.commutant_dim}),
            "pass": self.passed,
        }


def _maxabs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def _as_matrix(rep: Representation, u: int) -> np.ndarray:
    gen = rep.gamma_matrices[u]
    if isinstance(gen, np.ndarray):
        return gen
    return gen * np.eye(rep.dim, dtype=complex)


def commutant_dimension(rep: Representation, sv_cutoff: float = 1e-7) -> int:
    """Dimension of {X : [rho(Z_gamma), X] = 0 for all basis generators}."""
    d = rep.dim
    eye = np.eye(d, dtype=complex)
    blocks = []
    for u in range(2 * len(rep.spec.basis.pairs)):  # eta generators are scalar
        g = _as_matrix(rep, u)
        blocks.append(np.kron(g, eye) - np.kron(eye, g.T))
    if not blocks:
        return 1
    system = np.vstack(blocks)
    sv = np.linalg.svd(system, compute_uv=False)
    cutoff = sv_cutoff * max(1.0, float(sv[0]))
    rank = int(np.sum(sv > cutoff))
    return d * d - rank


def verify(rep: Representation, tol: float = 1e-9, seed: int = 0,
           scalar_samples: int = 5) -> CheckReport:
    """Commutation phases, N-th power scalars, puncture scalars, irreducibility."""
    params = rep.params
    N = params.N
    report = CheckReport(dim=rep.dim)
    gammas = rep.gamma_vectors
    n = len(gammas)

    dev = 0.0
    for u in range(n):
        gu = _as_matrix(rep, u)
        for v in range(u + 1, n):
            gv = _as_matrix(rep, v)
            phase = params.root_value(4 * rep._theta[u][v])
            dev = max(dev, _maxabs(gu @ gv - phase * (gv @ gu)))
    report.deviations["commutation"] = dev

    dev = 0.0
    for u in range(n):
        gu = _as_matrix(rep, u)
        target = rep.zeta_gamma[u] * np.eye(rep.dim, dtype=complex)
        dev = max(dev, _maxabs(np.linalg.matrix_power(gu, N) - target))
    report.deviations["power_scalar"] = dev

    dev = 0.0
    for k, eta in enumerate(rep.spec.basis.etas):
        mat = rep.evaluate(rep.algebra.monomial(eta))
        dev = max(dev, _maxabs(mat - rep.spec.h[k] * np.eye(rep.dim, dtype=complex)))
    report.deviations["puncture_scalar"] = dev

    rng = random.Random(seed)
    dev = 0.0
    for _ in range(scalar_samples):
        coeffs = [rng.randint(-2, 2) for _ in gammas]
        w = tuple(sum(c * g[i] for c, g in zip(coeffs, gammas))
                  for i in range(rep.algebra.track.branch_count))
        mat = np.linalg.matrix_power(rep.monomial_matrix(w), N)
        dev = max(dev, _maxabs(mat - rep.central_character(w) * np.eye(rep.dim, dtype=complex)))
    report.deviations["central_scalar"] = dev

    report.commutant_dim = commutant_dimension(rep)
    report.passed = (all(v <= tol for v in report.deviations.values())
                     and report.commutant_dim == 1)
    return report


def frobenius_compat(rep: Representation, tol: float = 1e-9, seed: int = 0,
                     n_random: int = 10) -> CheckReport:
    """Lifted commutative elements act by the central character.

    Basis monomials must act by their plain zeta value; random lattice
    vectors are compared both against the epsilon-twisted character and
    against the direct N-th matrix power of the monomial.
    """
    report = CheckReport(dim=rep.dim)
    iota_algebra = BalancedAlgebra(rep.algebra.track, rep.params.iota_params())
    eye = np.eye(rep.dim, dtype=complex)
    N = rep.params.N

    dev = 0.0
    for u, gamma in enumerate(rep.gamma_vectors):
        lifted = frobenius(iota_algebra.monomial(gamma), rep.algebra)
        dev = max(dev, _maxabs(rep.evaluate(lifted) - rep.zeta_gamma[u] * eye))
    report.deviations["basis_character"] = dev

    rng = random.Random(seed)
    dev_char = 0.0
    dev_power = 0.0
    gammas = rep.gamma_vectors
    for _ in range(n_random):
        coeffs = [rng.randint(-2, 2) for _ in gammas]
        w = tuple(sum(c * g[i] for c, g in zip(coeffs, gammas))
                  for i in range(rep.algebra.track.branch_count))
        lifted = frobenius(iota_algebra.monomial(w), rep.algebra)
        mat = rep.evaluate(lifted)
        dev_char = max(dev_char, _maxabs(mat - rep.central_character(w) * eye))
        oracle = np.linalg.matrix_power(rep.monomial_matrix(w), N)
        dev_power = max(dev_power, _maxabs(mat - oracle))
    report.deviations["random_character"] = dev_char
    report.deviations["matrix_power_oracle"] = dev_power
    report.passed = all(v <= tol for v in report.deviations.values())
    return report


def puncture_invariants(trace_value: complex, N: int) -> list[complex]:
    """The N candidate puncture scalars p with T_N(p) = -trace_value."""
    return solve_chebyshev(-trace_value, N)
