"""Truncated Fourier series on the circle and Taylor series on the disk.

Fourier coefficients are stored densely over ``n = -n_max .. n_max`` and
Taylor coefficients over ``n = 0 .. m_max``.  Truncation orders are always
explicit; nothing here picks one for the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, SeriesRangeError

DEFAULT_FOURIER_MODES = 64
DEFAULT_TAYLOR_MODES = 256

# exp() overflows float64 just above this
_EXP_LIMIT = 709.0


def _frozen(values, dtype=complex) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FourierCoeffs:
    """Coefficients ``c_n`` of ``sum_n c_n exp(i n theta)`` for ``|n| <= n_max``.

    ``coeffs[n + n_max]`` holds ``c_n``.
    """

    n_max: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _frozen(self.coeffs)
        if self.n_max < 0 or coeffs.shape != (2 * self.n_max + 1,):
            raise InvalidInputError(
                f"expected {2 * self.n_max + 1} coefficients for n_max={self.n_max}, "
                f"got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise InvalidInputError("Fourier coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_modes(cls, modes, n_max: int | None = None) -> "FourierCoeffs":
        """Build from a mapping or iterable of ``(n, value)`` pairs."""
        items = list(modes.items()) if isinstance(modes, dict) else list(modes)
        top = max((abs(int(n)) for n, _ in items), default=0)
        n_max = top if n_max is None else n_max
        if top > n_max:
            raise InvalidInputError(f"mode {top} exceeds n_max={n_max}")
        c = np.zeros(2 * n_max + 1, dtype=complex)
        for n, value in items:
            c[int(n) + n_max] += value
        return cls(n_max, c)

    @classmethod
    def constant(cls, value: float, n_max: int = 0) -> "FourierCoeffs":
        return cls.from_modes({0: value}, n_max=n_max)

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.n_max:
            return 0j
        return complex(self.coeffs[n + self.n_max])

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)

    def hermitian_defect(self) -> float:
        """Largest ``|c_{-n} - conj(c_n)|``; exactly zero for real data."""
        return float(np.max(np.abs(self.coeffs[::-1] - np.conj(self.coeffs))))

    def is_hermitian(self, tol: float = 0.0) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.coeffs))))
        return self.hermitian_defect() <= tol * scale

    def padded(self, n_max: int) -> "FourierCoeffs":
        if n_max < self.n_max:
            raise InvalidInputError("padding cannot shrink the mode range")
        c = np.zeros(2 * n_max + 1, dtype=complex)
        c[n_max - self.n_max : n_max + self.n_max + 1] = self.coeffs
        return FourierCoeffs(n_max, c)

    def rotated(self, phi: float) -> "FourierCoeffs":
        """Coefficients of ``theta -> f(theta + phi)``."""
        return FourierCoeffs(self.n_max, self.coeffs * np.exp(1j * self.modes * phi))

    def derivative(self) -> "FourierCoeffs":
        """Coefficients of ``d/dtheta``."""
        return FourierCoeffs(self.n_max, self.coeffs * (1j * self.modes))

    def __call__(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        phase = np.exp(1j * np.multiply.outer(theta, self.modes))
        return phase @ self.coeffs


@dataclass(frozen=True, eq=False)
class TaylorCoeffs:
    """Coefficients ``a_n`` of ``sum_{n<=m_max} a_n z^n``."""

    m_max: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _frozen(self.coeffs)
        if self.m_max < 0 or coeffs.shape != (self.m_max + 1,):
            raise InvalidInputError(
                f"expected {self.m_max + 1} coefficients for m_max={self.m_max}, "
                f"got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise InvalidInputError("Taylor coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_list(cls, values) -> "TaylorCoeffs":
        values = np.asarray(values, dtype=complex)
        return cls(len(values) - 1, values)

    def __getitem__(self, n: int) -> complex:
        if n < 0 or n > self.m_max:
            return 0j
        return complex(self.coeffs[n])

    def __call__(self, z) -> np.ndarray:
        """Horner evaluation."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for a in self.coeffs[::-1]:
            acc = acc * z + a
        return acc

    def __neg__(self) -> "TaylorCoeffs":
        return TaylorCoeffs(self.m_max, -self.coeffs)

    def scaled(self, factor: complex) -> "TaylorCoeffs":
        return TaylorCoeffs(self.m_max, self.coeffs * factor)

    def truncated(self, m_max: int) -> "TaylorCoeffs":
        c = np.zeros(m_max + 1, dtype=complex)
        keep = min(m_max, self.m_max) + 1
        c[:keep] = self.coeffs[:keep]
        return TaylorCoeffs(m_max, c)

    def derivative(self) -> "TaylorCoeffs":
        if self.m_max == 0:
            return TaylorCoeffs(0, [0j])
        n = np.arange(1, self.m_max + 1)
        return TaylorCoeffs(self.m_max - 1, self.coeffs[1:] * n)

    def primitive(self, constant: complex = 0j) -> "TaylorCoeffs":
        """Term-wise integral with prescribed value at the origin."""
        c = np.empty(self.m_max + 2, dtype=complex)
        c[0] = constant
        c[1:] = self.coeffs / np.arange(1, self.m_max + 2)
        return TaylorCoeffs(self.m_max + 1, c)

    def boundary_coeffs(self) -> FourierCoeffs:
        """Fourier coefficients of ``theta -> f(exp(i theta))``."""
        c = np.zeros(2 * self.m_max + 1, dtype=complex)
        c[self.m_max :] = self.coeffs
        return FourierCoeffs(self.m_max, c)


def samples_to_coeffs(samples) -> FourierCoeffs:
    """Trigonometric interpolant through ``2N+1`` equispaced samples.

    Sample ``k`` sits at ``theta_k = 2 pi k / (2N+1)``.  Real input yields
    coefficients that are Hermitian to exact equality.
    """
    samples = np.asarray(samples)
    count = samples.shape[0] if samples.ndim == 1 else -1
    if count < 3 or count % 2 == 0:
        raise InvalidInputError(
            f"need an odd number (>= 3) of one-dimensional samples, got shape {samples.shape}"
        )
    n_max = (count - 1) // 2
    if np.isrealobj(samples) or not np.any(np.imag(samples)):
        half = np.fft.rfft(np.real(samples).astype(float)) / count
        c = np.empty(count, dtype=complex)
        c[n_max:] = half
        c[:n_max] = np.conj(half[1:][::-1])
    else:
        full = np.fft.fft(samples.astype(complex)) / count
        c = np.concatenate([full[n_max + 1 :], full[: n_max + 1]])
    return FourierCoeffs(n_max, c)


def coeffs_to_samples(c: FourierCoeffs, count: int) -> np.ndarray:
    """Evaluate ``c`` at ``count`` equispaced angles ``2 pi k / count``."""
    if count < 2 * c.n_max + 1:
        raise InvalidInputError(f"count={count} aliases modes up to {c.n_max}")
    buf = np.zeros(count, dtype=complex)
    buf[: c.n_max + 1] = c.coeffs[c.n_max :]
    if c.n_max:
        buf[-c.n_max :] = c.coeffs[: c.n_max]
    return np.fft.ifft(buf) * count


def series_mul(a: TaylorCoeffs, b: TaylorCoeffs, m_out: int | None = None) -> TaylorCoeffs:
    """Truncated Cauchy product by direct convolution."""
    m_out = a.m_max + b.m_max if m_out is None else m_out
    prod = np.zeros(m_out + 1, dtype=complex)
    full = np.convolve(a.coeffs, b.coeffs)[: m_out + 1]
    prod[: len(full)] = full
    return TaylorCoeffs(m_out, prod)


def series_exp(F: TaylorCoeffs, m_out: int) -> TaylorCoeffs:
    """Power-series exponential truncated at degree ``m_out``.

    Uses ``n b_n = sum_{k=1}^{n} k F_k b_{n-k}`` with ``b_0 = exp(F_0)``.
    """
    if m_out < 0:
        raise InvalidInputError("m_out must be non-negative")
    f0 = complex(F.coeffs[0])
    if f0.real > _EXP_LIMIT:
        raise SeriesRangeError(f"exp(F_0) overflows: Re F_0 = {f0.real:g}")
    deg = min(F.m_max, m_out)
    kF = np.arange(deg + 1) * F.coeffs[: deg + 1]
    b = np.zeros(m_out + 1, dtype=complex)
    b[0] = np.exp(f0)
    for n in range(1, m_out + 1):
        top = min(n, deg)
        b[n] = np.dot(kF[1 : top + 1], b[n - 1 :: -1][:top]) / n
    if not np.all(np.isfinite(b)):
        raise SeriesRangeError("series exponential overflowed")
    return TaylorCoeffs(m_out, b)


def parseval_energy(c: FourierCoeffs) -> float:
    """Mean square ``(1/2pi) int |f|^2`` of the series, i.e. ``sum |c_n|^2``."""
    return float(np.sum(np.abs(c.coeffs) ** 2))


def tail_bound(a: TaylorCoeffs, rho: float, m_cut: int) -> float:
    """Cauchy-Schwarz bound on ``sup_{|z|<=rho} |sum_{n>m_cut} a_n z^n|``."""
    if not 0.0 < rho < 1.0:
        raise InvalidInputError(f"rho must lie in (0, 1), got {rho}")
    if not 0 <= m_cut <= a.m_max:
        raise InvalidInputError(f"m_cut={m_cut} outside [0, {a.m_max}]")
    tail = a.coeffs[m_cut + 1 :]
    if tail.size == 0:
        return 0.0
    coeff_norm = np.sqrt(np.sum(np.abs(tail) ** 2))
    # full geometric tail: also covers modes beyond m_max
    geo = np.sqrt(rho ** (2 * (m_cut + 1)) / (1.0 - rho**2))
    return float(coeff_norm * geo)


def random_band_limited(rng: np.random.Generator, n_max: int, amplitude: float = 1.0) -> FourierCoeffs:
    """Random real trigonometric polynomial of degree ``n_max`` with ``sup|u| <= amplitude``.

    Gaussian coefficients are rescaled so that ``sum |c_n| = amplitude``,
    which bounds the supremum.
    """
    if n_max < 0 or amplitude < 0:
        raise InvalidInputError("n_max and amplitude must be non-negative")
    pos = rng.standard_normal(n_max) + 1j * rng.standard_normal(n_max)
    c0 = rng.standard_normal()
    c = np.concatenate([np.conj(pos[::-1]), [c0], pos])
    total = float(np.sum(np.abs(c)))
    if total > 0:
        c = c * (amplitude / total)
    return FourierCoeffs(n_max, c)
