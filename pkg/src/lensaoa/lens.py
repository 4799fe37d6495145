"""Received-signal models for an ideal RF lens fed by a linear antenna array.

Closed-form single- and multi-carrier responses, the numerically integrated
aperture model used as an oracle for them, and the frequency-dependent
intensity-loss factor near the focal region.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import fresnel as _scipy_fresnel

SPEED_OF_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True)
class LensSpec:
    """Ideal lens: aperture, focal length, Fresnel number, design frequency."""

    aperture_d: float
    focal_f: float
    fresnel_k: float
    center_freq: float

    def __post_init__(self):
        for name in ("aperture_d", "focal_f", "fresnel_k", "center_freq"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")

    @classmethod
    def for_elements(cls, n_elements: int, center_freq: float) -> "LensSpec":
        """Critically sampled lens for ``n_elements`` antennas.

        Element spacing is half the center wavelength, the focal length is
        n_elements * lambda_c / 2 and the aperture twice that, which puts
        every non-peak element on a zero crossing of the center-frequency
        beam pattern.
        """
        lam = SPEED_OF_LIGHT / center_freq
        focal = n_elements * lam / 2.0
        aperture = 2.0 * focal
        fresnel_k = (aperture / 2.0) ** 2 / (lam * focal)
        return cls(aperture, focal, fresnel_k, center_freq)

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.center_freq

    @property
    def spacing(self) -> float:
        """Default antenna spacing: half the center wavelength."""
        return 0.5 * self.wavelength


@dataclass(frozen=True)
class CarrierGrid:
    """Evenly spaced sub-carrier frequencies around a center frequency."""

    f_c: float
    bandwidth: float
    freqs: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, f_c: float, bandwidth: float, n_subcarriers: int) -> "CarrierGrid":
        if f_c <= 0.0:
            raise ValueError("f_c must be > 0")
        if bandwidth < 0.0:
            raise ValueError("bandwidth must be >= 0")
        if n_subcarriers < 1:
            raise ValueError("need at least one sub-carrier")
        if n_subcarriers == 1:
            if bandwidth != 0.0:
                raise ValueError("a single carrier requires zero bandwidth")
            freqs = np.array([f_c])
        else:
            f_min = f_c - bandwidth / 2.0
            if f_min <= 0.0:
                raise ValueError("bandwidth too large for f_c")
            freqs = f_min + np.arange(n_subcarriers) * bandwidth / (n_subcarriers - 1)
        freqs.setflags(write=False)
        return cls(f_c, bandwidth, freqs)

    def __len__(self) -> int:
        return len(self.freqs)

    @property
    def f_min(self) -> float:
        return float(self.freqs[0])

    @property
    def f_max(self) -> float:
        return float(self.freqs[-1])

    @property
    def rho(self) -> np.ndarray:
        """Frequencies normalized by the maximum frequency."""
        return self.freqs / self.f_max

    @property
    def ratio_to_center(self) -> np.ndarray:
        """Frequencies normalized by the center frequency."""
        return self.freqs / self.f_c

    @property
    def wavelengths(self) -> np.ndarray:
        return SPEED_OF_LIGHT / self.freqs


def element_sine_angle(n, spacing, focal):
    """Sine of the angle subtended by element ``n`` seen from the lens center.

    The element sits a distance ``n * spacing`` along the focal arc, so its
    sine angle is d*n / sqrt((d*n)^2 + F^2).  Odd in ``n``; magnitude < 1.
    """
    n = np.asarray(n, dtype=float)
    if not np.all(np.isfinite(n)) or not np.isfinite(spacing) or not np.isfinite(focal):
        raise ValueError("element_sine_angle: inputs must be finite")
    if focal <= 0.0:
        raise ValueError("focal length must be > 0")
    x = n * spacing
    out = x / np.hypot(x, focal)
    return out if out.ndim else float(out)


def squinted_sine(f_m, f_c, sine_angle):
    """Effective sine angle sampled at frequency ``f_m``: (f_m / f_c) * sine."""
    if f_c <= 0.0:
        raise ValueError("f_c must be > 0")
    return (f_m / f_c) * sine_angle


def _response_amplitude(aperture_over_lambda, sine_target, sine_source):
    return np.sinc(aperture_over_lambda * (sine_target - sine_source))


def narrowband_response(theta, n, lens: LensSpec, spacing=None):
    """Single-carrier received sample at element ``n`` for a plane wave from ``theta``.

    Unit channel gain and zero constant phase; the amplitude is the classic
    aperture sinc in the sine-angle difference.
    """
    if abs(theta) > np.pi / 2:
        raise ValueError("|theta| must be <= pi/2")
    d = lens.spacing if spacing is None else spacing
    sine_n = element_sine_angle(n, d, lens.focal_f)
    amp = _response_amplitude(lens.aperture_d / lens.wavelength, sine_n, np.sin(theta))
    return complex(amp)


def multicarrier_response(theta, n, m, lens: LensSpec, grid: CarrierGrid,
                          spacing=None, element_sine=None):
    """Received sample at element ``n`` on sub-carrier ``m``.

    The element's sine angle is squinted by f_m / f_c and the beam width is
    set by the sub-carrier wavelength.  The residual intensity-loss factor is
    taken as 1 (it is orders of magnitude below the squint effects).
    ``element_sine`` overrides the physical element map, letting callers
    evaluate the response at a grid-defined sine angle.
    """
    if abs(theta) > np.pi / 2:
        raise ValueError("|theta| must be <= pi/2")
    if not 0 <= m < len(grid):
        raise IndexError("sub-carrier index out of range")
    if element_sine is None:
        d = lens.spacing if spacing is None else spacing
        element_sine = element_sine_angle(n, d, lens.focal_f)
    f_m = grid.freqs[m]
    lam_m = SPEED_OF_LIGHT / f_m
    squint = squinted_sine(f_m, grid.f_c, element_sine)
    amp = _response_amplitude(lens.aperture_d / lam_m, squint, np.sin(theta))
    return complex(amp)


def refractive_index(f_m, f_c, ref_index=1.5):
    """Lens refractive index at ``f_m``, inversely proportional to frequency."""
    return ref_index * f_c / f_m


def thin_lens_focal_shift(f_m, f_c, focal, ref_index=1.5):
    """Focal length at ``f_m`` under thin-lens scaling F * (n0 - 1) / (n_m - 1)."""
    n_m = refractive_index(f_m, f_c, ref_index)
    if n_m <= 1.0:
        raise ValueError("refractive index fell to <= 1; frequency too far from design")
    return focal * (ref_index - 1.0) / (n_m - 1.0)


def aperture_integral(theta, n, m, lens: LensSpec, grid: CarrierGrid,
                      steps=None, spacing=None, ref_index=1.5):
    """Numerically integrated aperture response, the oracle for the closed form.

    Integrates the incident plane wave against the lens phase profile over
    y in [-D/2, D/2] with composite Simpson quadrature and returns the
    integral normalized by the aperture.  The phase profile is linear in y
    with slope set by the squinted element sine; the constant term collects
    the focal-shift geometry of the off-design frequency.

    With ``steps=None`` the step count is doubled from 1024 until successive
    results differ by less than 1e-8.
    """
    if abs(theta) > np.pi / 2:
        raise ValueError("|theta| must be <= pi/2")
    if steps is not None and steps < 1024:
        raise ValueError("steps must be >= 1024")
    d = lens.spacing if spacing is None else spacing
    sine_n = element_sine_angle(n, d, lens.focal_f)
    f_m = grid.freqs[m]
    lam_m = SPEED_OF_LIGHT / f_m
    squint = squinted_sine(f_m, grid.f_c, sine_n)

    # constant phase: 2pi/lam * (2(F/cos(t_n) - F) - (Fd/cos(t_dn) - Fd)),
    # with the off-design focal length from thin-lens scaling and the
    # off-design ray angle from Snell's law.
    focal_d = thin_lens_focal_shift(f_m, grid.f_c, lens.focal_f, ref_index)
    sine_dn = squint
    if abs(sine_dn) >= 1.0:
        raise ValueError("squinted sine angle leaves the visible region")
    cos_n = np.sqrt(1.0 - sine_n ** 2)
    cos_dn = np.sqrt(1.0 - sine_dn ** 2)
    phi0 = (2.0 * np.pi / lam_m) * (
        2.0 * (lens.focal_f / cos_n - lens.focal_f)
        - (focal_d / cos_dn - focal_d)
    )

    half = lens.aperture_d / 2.0
    slope = (2.0 * np.pi / lam_m) * (np.sin(theta) - squint)

    def simpson(n_steps):
        y = np.linspace(-half, half, n_steps + 1)
        f = np.exp(-1j * (phi0 + slope * y))
        w = np.ones(n_steps + 1)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        val = (y[1] - y[0]) / 3.0 * np.sum(w * f)
        if not np.isfinite(val):
            raise ArithmeticError("aperture quadrature diverged")
        return val / lens.aperture_d

    if steps is not None:
        return complex(simpson(int(steps)))
    n_steps, prev = 1024, simpson(1024)
    while n_steps < 2 ** 18:
        n_steps *= 2
        cur = simpson(n_steps)
        if abs(cur - prev) < 1e-8:
            return complex(cur)
        prev = cur
    return complex(prev)


def fresnel_integrals(x):
    """Fresnel integrals (C(x), S(x)) with the pi t^2 / 2 convention."""
    s, c = _scipy_fresnel(x)
    return c, s


def intensity_loss(focal, focal_shifted, fresnel_k, wavelength):
    """Complex near-focus amplitude factor for an off-design focal length.

    (F/F_d) * exp(j 2 pi (F - F_d)/lambda) * integral_0^1 exp(-j u z^2 / 2) dz
    with u = 2 pi K (F - F_d) / F_d; the integral is evaluated through the
    Fresnel integrals.  Equal focal lengths give exactly 1.
    """
    if focal <= 0.0 or focal_shifted <= 0.0:
        raise ValueError("focal lengths must be > 0")
    u = 2.0 * np.pi * fresnel_k * (focal - focal_shifted) / focal_shifted
    if u == 0.0:
        integral = 1.0 + 0.0j
    else:
        b = np.sqrt(abs(u) / np.pi)
        c, s = fresnel_integrals(b)
        integral = np.sqrt(np.pi / abs(u)) * (c - 1j * np.sign(u) * s)
    phase = np.exp(2j * np.pi * (focal - focal_shifted) / wavelength)
    return complex((focal / focal_shifted) * phase * integral)
