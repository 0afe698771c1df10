"""Truncated Fock-basis field states: coherent and squeezed coherent.

Coefficients are built in log-magnitude form so that states with mean photon
numbers in the thousands (where ``c_0`` alone underflows a double) are still
representable. Squeezed coherent states use the ``S(xi) D(beta)|0>`` ordering.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import mpmath
import numpy as np
from scipy.special import gammainc

from .errors import NumericalInstability, SchemaError, TruncationInsufficient
from .special import poisson_logpmf


TRUNCATION_EPS = 1e-10
VALIDATE_N = 30
VALIDATE_RTOL = 1e-8
VALIDATE_FLOOR = 1e-150
_TWO_PI = 2.0 * math.pi


def _reduce_phase(a: float) -> float:
    a = math.fmod(float(a), _TWO_PI)
    if a < 0.0:
        a += _TWO_PI
    return 0.0 if a == _TWO_PI else a


@dataclass(frozen=True)
class SqueezeParams:
    """Squeezed coherent state parameters: ``beta = beta_mag e^{i phi}``, ``xi = r e^{i theta}``."""

    beta_mag: float
    phi: float = 0.0
    r: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        for name in ("beta_mag", "phi", "r", "theta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.beta_mag < 0:
            raise ValueError("beta_mag must be >= 0")
        if self.r < 0:
            raise ValueError("r must be >= 0")
        object.__setattr__(self, "beta_mag", float(self.beta_mag))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "phi", _reduce_phase(self.phi))
        object.__setattr__(self, "theta", _reduce_phase(self.theta))

    @property
    def beta(self) -> complex:
        return self.beta_mag * complex(math.cos(self.phi), math.sin(self.phi))

    @property
    def phase_difference(self) -> float:
        """``2 phi - theta``; zero gives the minimum photon-number variance."""
        return 2.0 * self.phi - self.theta

    @property
    def stats(self) -> "PhotonStats":
        return photon_stats(self)


@dataclass(frozen=True)
class PhotonStats:
    mean: float
    variance: float

    @property
    def std(self) -> float:
        return math.sqrt(max(self.variance, 0.0))


@dataclass(frozen=True)
class TruncationPolicy:
    """How to choose ``n_max``.

    The default bound is ``ceil(mean + sigmas * std + pad)``. When ``n_max`` is
    given explicitly it is used as-is and an insufficient value raises
    :class:`TruncationInsufficient`. Otherwise, with ``adaptive`` set, the bound
    is grown until the truncated tail carries less than ``TRUNCATION_EPS``.
    """

    sigmas: float = 12.0
    pad: int = 20
    n_max: int | None = None
    adaptive: bool = True
    max_n: int = 5_000_000

    def initial(self, mean: float, variance: float) -> int:
        if self.n_max is not None:
            if self.n_max < 0:
                raise ValueError("n_max must be >= 0")
            return int(self.n_max)
        return int(math.ceil(mean + self.sigmas * math.sqrt(max(variance, 0.0)) + self.pad))

    def grow(self, n_max: int) -> int | None:
        if self.n_max is not None or not self.adaptive:
            return None
        nxt = int(math.ceil(n_max * 1.5)) + self.pad
        return nxt if nxt <= self.max_n else None


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True, eq=False)
class FieldState:
    """Immutable truncated state vector ``sum_n c_n |n>`` for ``n = 0..n_max``."""

    coeffs: np.ndarray
    kind: str = "custom"
    params: Any = None
    truncation_loss: float = 0.0
    n_max: int = field(init=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("coeffs must have at least one entry")
        if not np.all(np.isfinite(c)):
            raise ValueError("coeffs must be finite")
        norm = float(np.sum(c.real**2 + c.imag**2))
        if not (1.0 - TRUNCATION_EPS <= norm <= 1.0 + TRUNCATION_EPS):
            raise TruncationInsufficient(
                f"state norm {norm!r} outside [1 - {TRUNCATION_EPS}, 1]"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "n_max", c.size - 1)

    @classmethod
    def custom(cls, coeffs) -> "FieldState":
        """Wrap user amplitudes; they must already be normalized."""
        c = np.asarray(coeffs, dtype=np.complex128)
        loss = max(0.0, 1.0 - float(np.sum(np.abs(c) ** 2)))
        return cls(c, kind="custom", truncation_loss=loss)

    @classmethod
    def fock(cls, n: int) -> "FieldState":
        c = np.zeros(n + 1, dtype=np.complex128)
        c[n] = 1.0
        return cls(c, kind="custom", params={"fock": n})

    @cached_property
    def probabilities(self) -> np.ndarray:
        p = self.coeffs.real**2 + self.coeffs.imag**2
        p.setflags(write=False)
        return p

    @cached_property
    def sqrt_n(self) -> np.ndarray:
        s = np.sqrt(np.arange(self.n_max + 1, dtype=np.float64))
        s.setflags(write=False)
        return s

    @cached_property
    def mean_photon_number(self) -> float:
        return photon_stats_numeric(self).mean

    def support(self, tail: float = 1e-16) -> tuple[np.ndarray, np.ndarray]:
        """Weights and ``sqrt(n)`` sorted by descending weight.

        Terms with ``n = 0`` never contribute to the excitation probability and
        are dropped, as is the smallest-weight tail whose total mass is below
        ``tail``.
        """
        p = self.probabilities[1:]
        order = np.argsort(-p, kind="stable")
        w = p[order]
        # cumulative mass of the smallest entries, from the end
        tail_mass = np.cumsum(w[::-1])[::-1]
        keep = int(np.count_nonzero(tail_mass > tail))
        idx = order[:keep]
        return np.ascontiguousarray(w[:keep]), np.ascontiguousarray(self.sqrt_n[1:][idx])

    def describe(self) -> str:
        if self.kind == "coherent":
            a, ph = self.params
            return f"coherent(alpha={a:g}, phi={ph:g})"
        if self.kind == "squeezed_coherent":
            p = self.params
            return f"squeezed(beta={p.beta_mag:g}, phi={p.phi:g}, r={p.r:g}, theta={p.theta:g})"
        return f"custom(n_max={self.n_max})"

    def to_csv(self, path) -> None:
        write_state_csv(self, path)


# -- coherent -------------------------------------------------------------


def _coherent_log_coeffs(alpha_mag: float, n_max: int) -> np.ndarray:
    return 0.5 * poisson_logpmf(np.arange(n_max + 1), alpha_mag**2)


def make_coherent(alpha_mag: float, phi: float = 0.0, policy: TruncationPolicy = DEFAULT_POLICY) -> FieldState:
    """Coherent state ``|alpha>`` with ``c_n = e^{-|a|^2/2} a^n / sqrt(n!)``."""
    if not (math.isfinite(alpha_mag) and math.isfinite(phi)):
        raise ValueError("alpha_mag and phi must be finite")
    if alpha_mag < 0:
        raise ValueError("alpha_mag must be >= 0")
    alpha_mag = float(alpha_mag)
    phi = _reduce_phase(phi)
    lam = alpha_mag**2
    n_max = policy.initial(lam, lam)
    while True:
        # Poisson upper tail P(N > n_max) = P(n_max + 1, lam)
        loss = float(gammainc(n_max + 1, lam)) if lam > 0 else 0.0
        if loss <= TRUNCATION_EPS:
            break
        nxt = policy.grow(n_max)
        if nxt is None:
            raise TruncationInsufficient(
                f"n_max={n_max} leaves truncation loss {loss:.3g} for alpha={alpha_mag}"
            )
        n_max = nxt
    logmag = _coherent_log_coeffs(alpha_mag, n_max)
    n = np.arange(n_max + 1)
    coeffs = np.exp(logmag) * np.exp(1j * phi * n) if phi else np.exp(logmag).astype(np.complex128)
    return FieldState(coeffs, kind="coherent", params=(alpha_mag, phi), truncation_loss=loss)


# -- squeezed coherent ----------------------------------------------------

_RESCALE_HI = 1e150
_RESCALE_LO = 1e-150


def _log_c0(p: SqueezeParams) -> complex:
    t = math.tanh(p.r)
    beta = p.beta
    e_mth = complex(math.cos(p.theta), -math.sin(p.theta))
    return -0.5 * (p.beta_mag**2 - e_mth * beta * beta * t) - 0.5 * math.log(math.cosh(p.r))


def _squeezed_mantissas(p: SqueezeParams, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Run the photon-number recurrence with a running log scale.

    ``c_{n+1} = [(beta / cosh r) c_n - e^{i theta} tanh(r) sqrt(n) c_{n-1}] / sqrt(n+1)``

    Returns mantissas ``m_n`` and log scales ``s_n`` with ``c_n = c_0 m_n e^{s_n}``.
    """
    lead = p.beta / math.cosh(p.r)
    kappa = math.tanh(p.r) * complex(math.cos(p.theta), math.sin(p.theta))
    mant = np.empty(n_max + 1, dtype=np.complex128)
    scale = np.empty(n_max + 1, dtype=np.float64)
    prev, cur, s = 0j, 1 + 0j, 0.0
    mant[0], scale[0] = cur, s
    for n in range(n_max):
        nxt = (lead * cur - kappa * math.sqrt(n) * prev) / math.sqrt(n + 1)
        prev, cur = cur, nxt
        big = max(abs(prev), abs(cur))
        if big > _RESCALE_HI or (0.0 < big < _RESCALE_LO):
            prev /= big
            cur /= big
            s += math.log(big)
        mant[n + 1], scale[n + 1] = cur, s
    return mant, scale


def squeezed_coefficient_direct(p: SqueezeParams, n: int, dps: int = 40) -> mpmath.mpc:
    """Closed Hermite form of ``<n|S(xi)D(beta)|0>`` in arbitrary precision."""
    with mpmath.workdps(dps):
        r = mpmath.mpf(p.r)
        beta = mpmath.mpf(p.beta_mag) * mpmath.expjpi(mpmath.mpf(p.phi) / mpmath.pi)
        theta = mpmath.mpf(p.theta)
        if p.r == 0:
            return mpmath.exp(-abs(beta) ** 2 / 2) * beta**n / mpmath.sqrt(mpmath.factorial(n))
        t = mpmath.tanh(r)
        ch = mpmath.cosh(r)
        # same branch of e^{i theta/2} here and in z, so odd n keep their sign
        pref = mpmath.expj(theta * n / 2) * (t / 2) ** (mpmath.mpf(n) / 2) / mpmath.sqrt(mpmath.factorial(n) * ch)
        gauss = mpmath.exp(-(abs(beta) ** 2 - mpmath.expj(-theta) * beta**2 * t) / 2)
        z = beta * mpmath.expj(-theta / 2) / mpmath.sqrt(2 * ch * mpmath.sinh(r))
        return pref * gauss * mpmath.hermite(n, z)


def _validate_against_direct(p: SqueezeParams, mant, scale, log_c0: complex, upto: int) -> float:
    worst = 0.0
    with mpmath.workdps(40):
        lc0 = mpmath.mpc(log_c0.real, log_c0.imag)
        for n in range(upto + 1):
            direct = squeezed_coefficient_direct(p, n)
            rec = mpmath.mpc(mant[n].real, mant[n].imag) * mpmath.exp(lc0 + scale[n])
            # amplitudes below the floor underflow in double precision anyway
            denom = max(abs(direct), abs(rec), VALIDATE_FLOOR)
            err = float(abs(direct - rec) / denom)
            worst = max(worst, err)
    return worst


def make_squeezed_coherent(
    p: SqueezeParams,
    policy: TruncationPolicy = DEFAULT_POLICY,
    validate: bool = True,
) -> FieldState:
    """Squeezed coherent state ``S(xi) D(beta)|0>``.

    The Hermite closed form overflows long before the photon numbers needed
    at mean ~10^3, so coefficients come from the three-term recurrence in
    ``n``. With ``validate`` the first ``VALIDATE_N`` coefficients are checked
    against the Hermite form evaluated in arbitrary precision.
    """
    st = photon_stats(p)
    n_max = policy.initial(st.mean, st.variance)
    log_c0 = _log_c0(p)
    while True:
        mant, scale = _squeezed_mantissas(p, n_max)
        logmag = np.log(np.abs(mant), where=mant != 0, out=np.full(n_max + 1, -np.inf)) + scale + log_c0.real
        coeffs = np.exp(logmag) * np.exp(1j * (np.angle(mant) + log_c0.imag))
        coeffs[mant == 0] = 0.0
        norm = float(np.sum(coeffs.real**2 + coeffs.imag**2))
        if norm > 1.0 + TRUNCATION_EPS:
            raise NumericalInstability(f"recurrence norm {norm!r} exceeds 1 for {p}")
        loss = max(0.0, 1.0 - norm)
        if loss <= TRUNCATION_EPS:
            break
        nxt = policy.grow(n_max)
        if nxt is None:
            raise TruncationInsufficient(f"n_max={n_max} leaves truncation loss {loss:.3g} for {p}")
        n_max = nxt
    if validate:
        worst = _validate_against_direct(p, mant, scale, log_c0, min(VALIDATE_N, n_max))
        if worst > VALIDATE_RTOL:
            raise NumericalInstability(
                f"recurrence disagrees with Hermite form by {worst:.3g} relative for {p}"
            )
    coeffs /= math.sqrt(norm)
    return FieldState(coeffs, kind="squeezed_coherent", params=p, truncation_loss=loss)


# -- statistics -----------------------------------------------------------


def photon_stats(p: SqueezeParams) -> PhotonStats:
    """Closed-form mean and variance of the photon number."""
    r, b2 = p.r, p.beta_mag**2
    ch, sh = math.cosh(r), math.sinh(r)
    cd = math.cos(p.phase_difference)
    mean = b2 * (ch * ch + sh * sh - 2.0 * cd * sh * ch) + sh * sh
    var = b2 * (math.cosh(4 * r) - cd * math.sinh(4 * r)) + 2.0 * sh * sh * ch * ch
    return PhotonStats(mean, max(var, 0.0))


def photon_stats_numeric(s: FieldState) -> PhotonStats:
    """Moments of ``|c_n|^2`` summed over the truncated basis."""
    p = s.probabilities
    n = np.arange(s.n_max + 1, dtype=np.float64)
    total = math.fsum(p)
    mean = math.fsum(n * p) / total
    # central second moment is better conditioned than <n^2> - <n>^2
    var = math.fsum((n - mean) ** 2 * p) / total
    return PhotonStats(mean, var)


# -- Husimi Q -------------------------------------------------------------


def q_function_coherent(alpha_mag, Phi, X, Y):
    """Husimi Q of a coherent state, evaluated on (broadcast) ``X, Y``."""
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    expo = -(X**2 + Y**2 + alpha_mag**2) + 2.0 * alpha_mag * (X * np.cos(Phi) + Y * np.sin(Phi))
    return np.exp(expo) / np.pi


def q_function_squeezed(p: SqueezeParams, X, Y):
    """Husimi Q of ``S(xi)D(beta)|0>`` at ``alpha = X + iY``."""
    a = np.asarray(X, dtype=np.float64) + 1j * np.asarray(Y, dtype=np.float64)
    b = p.beta
    sech = 1.0 / math.cosh(p.r)
    t = math.tanh(p.r)
    e_th = complex(math.cos(p.theta), math.sin(p.theta))
    cross = 2.0 * (np.conj(a) * b).real
    sq = 2.0 * (np.conj(e_th) * (a * a - b * b)).real
    expo = -(np.abs(a) ** 2 + abs(b) ** 2) + cross * sech - 0.5 * sq * t
    return sech / np.pi * np.exp(expo)


# -- CSV ------------------------------------------------------------------

STATE_COLUMNS = ("n", "re_c", "im_c", "abs2_c")


def write_state_csv(s: FieldState, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(STATE_COLUMNS)
        for n, c in enumerate(s.coeffs):
            w.writerow((n, f"{c.real:.16e}", f"{c.imag:.16e}", f"{abs(c) ** 2:.16e}"))


def read_state_csv(path) -> FieldState:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != STATE_COLUMNS:
        raise SchemaError(f"{path}: expected header {','.join(STATE_COLUMNS)}")
    coeffs = np.array([complex(float(r[1]), float(r[2])) for r in rows[1:]])
    return FieldState.custom(coeffs)
