"""
Immutable value objects shared by the tfa modules.

Classes:
    TFShift: Time-frequency shift (x, xi) on Z_N x Z_N
    Lattice: Rectangular divisor lattice aZ_N x bZ_N
    GaborFrameData: Window, lattice, frame operator, frame bounds and dual window
    GaborMatrix: Matrix of an operator in a Gabor system
    PreparedKernel: Kernel with its Gabor matrix and STFT table
    Certificate: Certified operator-norm bound with its ingredients
    SearchConfig: Randomized search parameters with a recorded seed
    GapRow: One row of the Fourier-matrix gap experiment
"""

import math
from dataclasses import dataclass, field

import numpy as np
from django.core.exceptions import ValidationError

from core.tensors import Exponent

SEED_LIMIT = 2**64


@dataclass(frozen=True)
class TFShift:
    """
    Time-frequency shift pi(x, xi) = M_xi T_x on signals of length N.

    Attributes:
        N: Modulus
        x: Time shift, reduced mod N
        xi: Frequency shift, reduced mod N
    """

    N: int
    x: int = 0
    xi: int = 0

    def __post_init__(self):
        if int(self.N) < 1:
            raise ValidationError(f"Modulus N must be >= 1, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "x", int(self.x) % self.N)
        object.__setattr__(self, "xi", int(self.xi) % self.N)


@dataclass(frozen=True)
class Lattice:
    """
    Lattice {(ja, kb) : 0 <= j < N/a, 0 <= k < N/b} in Z_N x Z_N.

    Points are ordered with j outer and k inner, which is the row-major order
    used by coefficient arrays of shape (N/a, N/b).

    Attributes:
        N: Modulus
        a: Time step, divides N
        b: Frequency step, divides N
    """

    N: int
    a: int = 1
    b: int = 1

    def __post_init__(self):
        N, a, b = int(self.N), int(self.a), int(self.b)
        if N < 1:
            raise ValidationError(f"Modulus N must be >= 1, got {N}")
        if a < 1 or N % a:
            raise ValidationError(f"Time step a={a} must be a positive divisor of N={N}")
        if b < 1 or N % b:
            raise ValidationError(f"Frequency step b={b} must be a positive divisor of N={N}")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def full(cls, N):
        return cls(N, 1, 1)

    @property
    def time_count(self):
        return self.N // self.a

    @property
    def frequency_count(self):
        return self.N // self.b

    @property
    def shape(self):
        return (self.time_count, self.frequency_count)

    @property
    def size(self):
        return self.time_count * self.frequency_count

    @property
    def times(self):
        return np.arange(0, self.N, self.a)

    @property
    def frequencies(self):
        return np.arange(0, self.N, self.b)

    @property
    def points(self):
        return [(int(x), int(xi)) for x in self.times for xi in self.frequencies]

    @property
    def is_full(self):
        return self.a == 1 and self.b == 1

    def admits_frame(self):
        """Necessary density condition ab <= N, i.e. at least N lattice points."""
        return self.a * self.b <= self.N


@dataclass(frozen=True, eq=False)
class GaborFrameData:
    """
    A validated Gabor frame G(g, lattice) and its canonical dual.

    Attributes:
        window: Window g, shape (N,)
        lattice: Lattice
        frame_operator: S = sum over lattice of pi(l)g (pi(l)g)^H, shape (N, N)
        lower_bound: A, smallest eigenvalue of S
        upper_bound: B, largest eigenvalue of S
        dual_window: gamma = S^{-1} g
    """

    window: np.ndarray
    lattice: Lattice
    frame_operator: np.ndarray
    lower_bound: float
    upper_bound: float
    dual_window: np.ndarray

    @property
    def N(self):
        return self.lattice.N

    @property
    def condition_number(self):
        return self.upper_bound / self.lower_bound

    @property
    def is_tight(self):
        return math.isclose(self.lower_bound, self.upper_bound, rel_tol=1e-10)


@dataclass(frozen=True, eq=False)
class GaborMatrix:
    """
    Gabor matrix K_{l,m} = <A pi(m)gamma, pi(l)g> over lattice x lattice.

    Attributes:
        values: Rank-4 array indexed (l1, l2, m1, m2) by lattice indices (j, k, j', k')
        frame: GaborFrameData the matrix was taken in
    """

    values: np.ndarray
    frame: GaborFrameData

    @property
    def flat(self):
        """(#lattice) x (#lattice) matrix, rows l = (l1, l2) row-major."""
        size = self.frame.lattice.size
        return self.values.reshape(size, size)


@dataclass(frozen=True, eq=False)
class PreparedKernel:
    """
    A kernel with everything the certificates read from it, computed once.

    Attributes:
        kernel: K, shape (N, N)
        frame: GaborFrameData the Gabor matrix was taken in
        matrix: GaborMatrix of K in the frame
        table: V_G K with G = g (x) conj(gamma), indexed (x1, x2, xi1, xi2)
    """

    kernel: np.ndarray
    frame: GaborFrameData
    matrix: GaborMatrix
    table: np.ndarray


@dataclass(frozen=True)
class Certificate:
    """
    A certified operator-norm bound.

    Attributes:
        space_pair: Source and target spaces, e.g. "M^1 -> M^2"
        bound: Nonnegative bound, math.inf when nothing is certified
        method: How the bound was obtained
        ingredients: Norm values used, by name
        verdicts: Boundedness verdict per space pair
        endpoints: (B_1, B_inf) endpoint bounds when the bound comes from interpolation
    """

    space_pair: str
    bound: float
    method: str
    ingredients: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    endpoints: tuple | None = None

    @property
    def bounded(self):
        return math.isfinite(self.bound)

    def bound_at(self, p):
        """
        Riesz-Thorin bound B_1^{1/p} B_inf^{1-1/p} for the M^p member of the family.

        Args:
            p: Exponent (or coercible)

        Returns:
            float: The interpolated bound, never larger than self.bound
        """
        if self.endpoints is None:
            return self.bound
        p = Exponent.coerce(p)
        theta = 0.0 if p.is_infinite else 1.0 / p.finite
        first, last = self.endpoints
        if theta == 1.0:
            return first
        if theta == 0.0:
            return last
        return first**theta * last ** (1.0 - theta)


@dataclass(frozen=True)
class SearchConfig:
    """
    Parameters of randomized lower-bound searches.

    Attributes:
        trials: Number of independent random starts, >= 1
        ascent_steps: Maximal ascent steps per start, >= 0
        seed: 64-bit seed; trials draw from spawned PCG64 streams
    """

    trials: int = 64
    ascent_steps: int = 200
    seed: int = 42

    def __post_init__(self):
        if int(self.trials) < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if int(self.ascent_steps) < 0:
            raise ValidationError(f"ascent_steps must be >= 0, got {self.ascent_steps}")
        if not 0 <= int(self.seed) < SEED_LIMIT:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        for name in ("trials", "ascent_steps", "seed"):
            object.__setattr__(self, name, int(getattr(self, name)))

    def generator(self):
        return np.random.Generator(np.random.PCG64(self.seed))

    def trial_generators(self):
        """One independent generator per trial, split from the seed."""
        children = np.random.SeedSequence(self.seed).spawn(self.trials)
        return [np.random.Generator(np.random.PCG64(child)) for child in children]


@dataclass(frozen=True)
class GapRow:
    """
    Fourier-matrix gap experiment at one modulus.

    Attributes:
        N: Modulus
        schur: Schur-type bound (grows like N^{3/2})
        spectral: Computed l^2 operator norm of the Fourier matrix (1 up to rounding)
        certified: Bound from the embedding chain around the l^2 norm, N * spectral
        lower: Best search lower bound for the l^{inf,1} operator norm
        search: SearchConfig that produced the lower bound
    """

    N: int
    schur: float
    spectral: float
    certified: float
    lower: float
    search: SearchConfig

    @property
    def ratio(self):
        return self.schur / self.certified

    @property
    def consistent(self):
        return self.lower <= self.certified * (1 + 1e-12) and self.certified <= self.schur
