"""Exact arithmetic in the balanced root-of-unity torus algebra of a track.

Parameters
----------
The deformation parameter is a unit complex number ``w`` whose fourth power
``q = w^4`` is a primitive N-th root of unity, N odd.  Every such ``w`` is
``exp(2 pi i k / 4N)`` for some exponent ``k`` coprime to ``N``, so
:class:`AlgebraParams` stores the pair ``(N, k)`` and all phase arithmetic is
exact integer arithmetic on exponents modulo ``4N``.  Derived constants:
``epsilon = (w^{-2})^N = (-1)^k`` and ``iota = w^{N^2}``, a fourth root of
unity.  The algebra at ``iota`` is the same construction run at ``N = 1``
(``iota^4 = 1``), which is the commutative degeneration.

Elements
--------
The algebra has basis ``Z_w`` indexed by the integer weight systems of the
triangulation track, with product

    Z_a * Z_b = w^(2 theta(a, b)) Z_(a+b).

An element is a finite map  weight system -> phase polynomial,  where a phase
polynomial is a dict {exponent mod 4N: integer coefficient}: an integer
combination of powers of ``w``, reduced only by ``w^(4N) = 1``.  Equality is
equality of reduced representatives.  ``evaluate`` sends a phase polynomial
to a complex number for a concrete ``w``.

Monomials correspond to symmetrized ordered products of the edge generators:
``weyl_exponent`` computes the symmetrizing phase ``-sum_{u<v} k_u k_v
sigma_uv`` from the switch-sum vector, and ``ordered_product_normal_form``
reduces an arbitrary ordered generator string to (sorted exponent vector,
total phase), which is how permutation invariance of the symmetrized product
is tested.

Chebyshev utilities
-------------------
``chebyshev_coefficients``/``chebyshev_value`` implement the normalized
polynomials T_0 = 2, T_1 = x, T_{n+1} = x T_n - T_{n-1}, which satisfy
``T_n(a + 1/a) = a^n + 1/a^n`` and ``trace(M^n) = T_n(trace M)`` for unit
determinant 2x2 matrices.  ``solve_chebyshev`` returns all n solutions of
``T_n(x) = y``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .traintrack import TriangulationTrack, require_weight_system, theta
from .triangulation import sigma_matrix

TWO_PI = 2.0 * math.pi


# --- parameters ------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraParams:
    """Root data (N, k): w = exp(2 pi i k / 4N), q = w^4 primitive N-th root."""

    N: int
    root_exponent: int

    def __post_init__(self):
        if self.N < 1 or self.N % 2 == 0:
            raise ValueError(f"N must be odd and positive, got {self.N}")
        k = self.root_exponent % (4 * self.N)
        object.__setattr__(self, "root_exponent", k)
        if math.gcd(k, self.N) != 1:
            raise ValueError(f"w^4 must be a primitive {self.N}-th root: gcd({k}, {self.N}) != 1")

    @property
    def phase_order(self) -> int:
        return 4 * self.N

    @property
    def omega(self) -> complex:
        return self.root_value(1)

    @property
    def q(self) -> complex:
        return self.root_value(4)

    @property
    def epsilon(self) -> int:
        """(w^-2)^N = +-1; the sign splitting the two families of parameters."""
        return -1 if self.root_exponent % 2 else 1

    def root_value(self, exponent: int) -> complex:
        e = (exponent * self.root_exponent) % self.phase_order
        return cmath.exp(2j * math.pi * e / self.phase_order)

    def iota_params(self) -> "AlgebraParams":
        """Parameters of the commutative degeneration: iota = w^(N^2), N -> 1."""
        return AlgebraParams(1, (self.root_exponent * self.N) % 4)


def params_from_omega(N: int, omega: complex, tol: float = 1e-9) -> AlgebraParams:
    """Recover exact (N, k) parameters from a concrete unit-modulus w."""
    if abs(abs(omega) - 1.0) > tol:
        raise ValueError(f"w must have modulus 1, got |w| = {abs(omega)}")
    order = 4 * N
    k = round(cmath.phase(omega) / TWO_PI * order) % order
    candidate = AlgebraParams(N, k)
    if abs(candidate.omega - omega) > tol:
        raise ValueError(f"w is not a 4N-th root of unity for N = {N}")
    return candidate


def omega_candidates(N: int, epsilon: int | None = None) -> list[AlgebraParams]:
    """All parameter choices for a given odd N, optionally filtered by epsilon."""
    out = [AlgebraParams(N, k) for k in range(4 * N) if math.gcd(k, N) == 1]
    if epsilon is not None:
        out = [p for p in out if p.epsilon == epsilon]
    return out


# --- phase polynomials: dict exponent -> integer coefficient ---------------

Phase = dict


def phase_term(exponent: int, order: int, coeff: int = 1) -> Phase:
    if coeff == 0:
        return {}
    return {exponent % order: coeff}


def phase_add(p: Phase, q: Phase) -> Phase:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
        if out[e] == 0:
            del out[e]
    return out


def phase_mul(p: Phase, q: Phase, order: int) -> Phase:
    out: Phase = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = (e1 + e2) % order
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def phase_scale(p: Phase, factor: int) -> Phase:
    if factor == 0:
        return {}
    return {e: c * factor for e, c in p.items()}


def phase_shift(p: Phase, exponent: int, order: int) -> Phase:
    return {(e + exponent) % order: c for e, c in p.items()}


def phase_eval(p: Phase, params: AlgebraParams) -> complex:
    return sum((c * params.root_value(e) for e, c in p.items()), 0j)


# --- elements ---------------------------------------------------------------

class AlgebraElement:
    """Finite phase-weighted sum of basis monomials Z_w, w a weight system."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "BalancedAlgebra", terms: dict):
        self.algebra = algebra
        self.terms = {w: dict(p) for w, p in terms.items() if p}

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraElement)
                and self.algebra.params == other.algebra.params
                and self.terms == other.terms)

    def __hash__(self):
        raise TypeError("AlgebraElement is not hashable")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self.algebra.require_same(other)
        out = {w: dict(p) for w, p in self.terms.items()}
        for w, p in other.terms.items():
            out[w] = phase_add(out.get(w, {}), p)
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scaled(-1)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.mul(self, other)

    def scaled(self, factor: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {w: phase_scale(p, factor) for w, p in self.terms.items()})

    def scaled_by_root(self, exponent: int) -> "AlgebraElement":
        order = self.algebra.params.phase_order
        return AlgebraElement(self.algebra, {w: phase_shift(p, exponent, order) for w, p in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        return f"AlgebraElement({len(self.terms)} terms, N={self.algebra.params.N})"

    def to_json_dict(self) -> dict:
        return {
            "N": self.algebra.params.N,
            "root_exponent": self.algebra.params.root_exponent,
            "terms": [
                {"weights": list(w), "coeff": sorted([e, c] for e, c in p.items())}
                for w, p in sorted(self.terms.items())
            ],
        }


class BalancedAlgebra:
    """The algebra attached to a triangulation track at fixed root parameters."""

    def __init__(self, track: TriangulationTrack, params: AlgebraParams):
        if not isinstance(track, TriangulationTrack):
            raise TypeError("BalancedAlgebra needs the track of a triangulation")
        self.track = track
        self.params = params
        self.sigma = sigma_matrix(track.tri)
        self._theta_cache: dict[tuple, int] = {}

    # -- plumbing ---------------------------------------------------------

    def require_same(self, other_or_element) -> None:
        other = other_or_element.algebra if isinstance(other_or_element, AlgebraElement) else other_or_element
        if other.track is not self.track or other.params != self.params:
            raise ValueError("algebra parameter or track mismatch")

    def theta(self, a: tuple, b: tuple) -> int:
        key = (a, b)
        if key not in self._theta_cache:
            v = theta(self.track, a, b)
            self._theta_cache[key] = v
            self._theta_cache[(b, a)] = -v
        return self._theta_cache[key]

    # -- constructors -------------------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        return self.monomial((0,) * self.track.branch_count)

    def monomial(self, weights) -> AlgebraElement:
        """The basis element Z_w with coefficient exactly 1."""
        w = require_weight_system(self.track, weights)
        return AlgebraElement(self, {w: phase_term(0, self.params.phase_order)})

    def puncture_element(self, k: int) -> AlgebraElement:
        from .traintrack import puncture_weight

        return self.monomial(puncture_weight(self.track, k))

    # -- operations ----------------------------------------------------------

    def mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        self.require_same(x)
        self.require_same(y)
        order = self.params.phase_order
        out: dict = {}
        for wa, pa in x.terms.items():
            for wb, pb in y.terms.items():
                phase = (2 * self.theta(wa, wb)) % order
                coeff = phase_shift(phase_mul(pa, pb, order), phase, order)
                key = tuple(a + b for a, b in zip(wa, wb))
                merged = phase_add(out.get(key, {}), coeff)
                if merged:
                    out[key] = merged
                else:
                    out.pop(key, None)
        return AlgebraElement(self, out)

    def power(self, x: AlgebraElement, m: int) -> AlgebraElement:
        if m < 0:
            raise ValueError("power expects a non-negative exponent")
        result = self.one()
        for _ in range(m):
            result = self.mul(result, x)
        return result

    def weyl_exponent(self, sums) -> int:
        """Symmetrizing exponent -sum_{u<v} k_u k_v sigma_uv of a balanced switch-sum vector."""
        from .traintrack import from_switch_sums

        from_switch_sums(self.track, sums)  # raises ParityViolation when unbalanced
        n = len(sums)
        total = 0
        for u in range(n):
            for v in range(u + 1, n):
                total -= sums[u] * sums[v] * self.sigma[u][v]
        return total % self.params.phase_order

    def monomial_from_sums(self, sums) -> AlgebraElement:
        from .traintrack import from_switch_sums

        return self.monomial(from_switch_sums(self.track, sums))

    def element_from_json_dict(self, data: dict) -> AlgebraElement:
        if data.get("N") != self.params.N or data.get("root_exponent") != self.params.root_exponent:
            raise ValueError("element JSON carries different parameters")
        terms = {}
        for item in data["terms"]:
            w = require_weight_system(self.track, item["weights"])
            phase = {}
            for e, c in item["coeff"]:
                phase[e % self.params.phase_order] = c
            terms[w] = phase
        return AlgebraElement(self, terms)


def ordered_product_normal_form(sigma, factors, order: int) -> tuple[tuple[int, ...], int]:
    """Reduce an ordered generator string to its symmetrized normal form.

    ``factors`` is a sequence of (generator index, exponent) pairs describing
    the ordered product; the result is the total exponent vector together
    with the phase exponent of the symmetrized product, i.e. the bracket
    phase of the string plus the commutation phases that sort it by index.
    Permutations of the string leave the result unchanged.
    """
    n = len(sigma)
    # bracket phase of the string as written
    phase = 0
    fs = [(int(i), int(m)) for i, m in factors]
    for u in range(len(fs)):
        for v in range(u + 1, len(fs)):
            iu, mu = fs[u]
            iv, mv = fs[v]
            phase -= mu * mv * sigma[iu][iv]
    # insertion sort by generator index, tracking commutation phases
    work = list(fs)
    for a in range(1, len(work)):
        b = a
        while b > 0 and work[b - 1][0] > work[b][0]:
            (i, m), (j, mj) = work[b - 1], work[b]
            # Z_i^m Z_j^mj = w^(2 m mj sigma_ij) Z_j^mj Z_i^m
            phase += 2 * m * mj * sigma[i][j]
            work[b - 1], work[b] = work[b], work[b - 1]
            b -= 1
    vector = [0] * n
    for i, m in work:
        vector[i] += m
    return tuple(vector), phase % order


def frobenius(x: AlgebraElement, target: BalancedAlgebra) -> AlgebraElement:
    """Lift an element of the commutative degeneration along Z_w -> Z_(N w).

    The source must live at the iota parameters of ``target`` (same track);
    the coefficient exponents re-embed via iota = w^(N^2).
    """
    src = x.algebra
    if src.track is not target.track:
        raise ValueError("frobenius needs both algebras on the same track")
    if src.params != target.params.iota_params():
        raise ValueError("source parameters are not the iota degeneration of the target")
    N = target.params.N
    order = target.params.phase_order
    terms = {}
    for w, p in x.terms.items():
        nw = tuple(N * v for v in w)
        terms[nw] = {(e * N * N) % order: c for e, c in p.items()}
    return AlgebraElement(target, terms)


# --- Chebyshev utilities ----------------------------------------------------

def chebyshev_coefficients(n: int) -> list[int]:
    """Coefficients (ascending) of the normalized Chebyshev polynomial T_n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = [2], [0, 1]
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def chebyshev_value(n: int, x):
    """T_n(x) by the three-term recurrence; exact on ints, stable on complex."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = 2, x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, x * cur - prev
    return cur


def solve_chebyshev(y: complex, n: int) -> list[complex]:
    """All n solutions of T_n(x) = y.

    Write y = b + 1/b; then the solutions are a + 1/a over the n-th roots a
    of b (either quadratic root b gives the same solution set).
    """
    if n < 1:
        raise ValueError("n must be positive")
    y = complex(y)
    s = cmath.sqrt(y * y - 4)
    # the two quadratic roots multiply to 1; take the larger to avoid cancellation
    b = (y + s) / 2 if abs(y + s) >= abs(y - s) else (y - s) / 2
    r = abs(b) ** (1.0 / n)
    base = cmath.phase(b)
    out = []
    for j in range(n):
        a = r * cmath.exp(1j * (base + TWO_PI * j) / n)
        out.append(a + 1 / a)
    return out
