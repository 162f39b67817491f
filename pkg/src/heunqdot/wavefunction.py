"""Polynomial radial states: assembly, closed-form normalization, moments.

A terminated series with coefficients A_0..A_n becomes a polynomial in r via

    y_p = A_p (sqrt(omega))^p / (p! (1+alpha)_p),   (1+alpha) = (2l+1)/t,

and the (unnormalized) radial functions are

    u(r) = r^(l+1/2) exp(-omega r^2/2) y(r),
    R(r) = r^l       exp(-omega r^2/2) y(r).

Normalization and moments reduce to Gamma integrals
int_0^inf exp(-mu r^p) r^(nu-1) dr = mu^(-nu/p) Gamma(nu/p) / p with p = 2,
so only Gamma at integer and half-integer arguments is ever needed; it is
computed by the exact recursion from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1.
An adaptive quadrature cross-check and a finite-difference residual evaluator
are provided so no closed form is trusted on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .model import effective_potential_term
from .termination import GammaConvention, Root, coefficient_chain


@dataclass(frozen=True)
class PolynomialSolution:
    """A terminated solution at fixed (n, l, t_star)."""

    n: int
    l: int
    t_star: float
    omega: float
    eta: float
    y_coeffs: tuple[float, ...]   # ascending powers of r, length n+1
    A_chain: tuple[float, ...]
    effective_degree: int


def rising_factorial(x: float, p: int) -> float:
    """(x)_p = x (x+1) ... (x+p-1); (x)_0 = 1."""
    out = 1.0
    for j in range(p):
        out *= x + j
    return out


def assemble_polynomial(n: int, l: int, t_star: float,
                        A_chain: list[float] | None = None,
                        convention: GammaConvention = GammaConvention.TABLE,
                        ) -> PolynomialSolution:
    """Convert the series coefficients to powers of r.

    The Pochhammer denominators (1+alpha)_p with 1+alpha = (2l+1)/t are
    strictly positive for omega > 0, l >= 0; a vanishing denominator would
    mean alpha hit a negative integer, which cannot happen on this branch.
    """
    if t_star <= 0:
        raise ValueError("t_star must be positive")
    if A_chain is None:
        A_chain, eff = coefficient_chain(n, l, t_star, convention)
    else:
        A_chain = list(A_chain)
        amax = max(abs(v) for v in A_chain)
        eff = 0
        for p, v in enumerate(A_chain):
            if abs(v) >= 1e-9 * amax:
                eff = p
    omega = 1.0 / (t_star * t_star)
    sw = 1.0 / t_star  # sqrt(omega)
    one_alpha = (2 * l + 1) * sw
    coeffs = []
    for p, a in enumerate(A_chain):
        poch = rising_factorial(one_alpha, p)
        if poch == 0.0:
            raise ValueError("Pochhammer denominator vanished: alpha is a "
                             "negative integer (impossible for omega > 0)")
        coeffs.append(a * sw ** p / (math.factorial(p) * poch))
    return PolynomialSolution(
        n=n, l=l, t_star=t_star, omega=omega,
        eta=(n + l + 1) * omega,
        y_coeffs=tuple(coeffs),
        A_chain=tuple(A_chain),
        effective_degree=eff,
    )


def from_root(n: int, l: int, root: Root,
              convention: GammaConvention = GammaConvention.TABLE,
              ) -> PolynomialSolution:
    return assemble_polynomial(n, l, root.t_star, convention=convention)


def gamma_half_integer(z) -> float:
    """Gamma(z) for z in {1/2, 1, 3/2, 2, ...} by the exact recursion.

    Gamma(1/2) = sqrt(pi), Gamma(1) = 1, Gamma(z+1) = z Gamma(z). Anything
    that is not a positive integer or half-integer is a domain error; the
    general Gamma function is never needed here.
    """
    z2 = z if isinstance(z, Fraction) else Fraction(z).limit_denominator(2)
    if z2.denominator > 2 or abs(float(z2) - float(z)) > 1e-12:
        raise ValueError(f"Gamma argument {z} is not a half-integer")
    if z2 <= 0:
        raise ValueError(f"Gamma argument {z} must be positive")
    if z2.denominator == 1:
        return float(math.factorial(z2.numerator - 1))
    # z = k + 1/2: Gamma = (2k)! / (4^k k!) sqrt(pi)
    k = (z2.numerator - 1) // 2
    return math.factorial(2 * k) / (4 ** k * math.factorial(k)) * math.sqrt(math.pi)


def square_coefficients(y_coeffs) -> np.ndarray:
    """Coefficients of y^2 by convolution; degree doubles."""
    y = np.asarray(y_coeffs, dtype=float)
    return np.convolve(y, y)


@dataclass(frozen=True)
class RadialState:
    """A normalized polynomial state; samplers are pure and shareable."""

    solution: PolynomialSolution
    N: float

    @property
    def omega(self) -> float:
        return self.solution.omega

    @property
    def l(self) -> int:
        return self.solution.l

    def y(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for c in reversed(self.solution.y_coeffs):
            out = out * r + c
        return out

    def u(self, r):
        """Unnormalized reduced radial function r^(l+1/2) e^(-w r^2/2) y."""
        r = np.asarray(r, dtype=float)
        return r ** (self.l + 0.5) * np.exp(-self.omega * r * r / 2) * self.y(r)

    def R(self, r):
        """Normalized 2D radial function N r^l e^(-w r^2/2) y."""
        r = np.asarray(r, dtype=float)
        return self.N * r ** self.l * np.exp(-self.omega * r * r / 2) * self.y(r)

    def sample(self, r):
        """(N*u, R) pairs for file emission; N*u == sqrt(r)*R."""
        return self.N * self.u(r), self.R(r)


def norm_integral_closed(solution: PolynomialSolution) -> float:
    """I = int_0^inf u^2 dr = (1/2) sum_k c_k t^(2(l+1)+k) Gamma(l+1+k/2)."""
    c = square_coefficients(solution.y_coeffs)
    t = solution.t_star
    l = solution.l
    acc = 0.0
    for k, ck in enumerate(c):
        acc += ck * t ** (2 * (l + 1) + k) * gamma_half_integer(Fraction(2 * l + 2 + k, 2))
    return acc / 2


def normalize(solution: PolynomialSolution) -> RadialState:
    """Closed-form Gamma-sum normalization; N = I^(-1/2)."""
    if not any(solution.y_coeffs):
        raise ValueError("cannot normalize the zero polynomial")
    I = norm_integral_closed(solution)
    if I <= 0:
        raise ValueError(f"non-positive norm integral {I}")
    return RadialState(solution=solution, N=1.0 / math.sqrt(I))


def moment(state: RadialState, k: int) -> float:
    """<r^k> with weight (N u)^2 dr (the 2D radial measure R^2 r dr)."""
    if k < 0:
        raise ValueError("moment power must be non-negative")
    sol = state.solution
    c = square_coefficients(sol.y_coeffs)
    t = sol.t_star
    l = sol.l
    acc = 0.0
    for j, cj in enumerate(c):
        nu = Fraction(2 * l + 2 + j + k, 2)  # l+1+(j+k)/2
        acc += cj * t ** (2 * (l + 1) + j + k) * gamma_half_integer(nu)
    return state.N ** 2 * acc / 2


# ---------------------------------------------------------------------------
# Independent quadrature cross-checks (Gauss-Kronrod via scipy)
# ---------------------------------------------------------------------------

def _r_cut(omega: float) -> float:
    return 20.0 / math.sqrt(omega)

def norm_integral_quad(solution: PolynomialSolution) -> float:
    state = RadialState(solution=solution, N=1.0)
    val, _ = integrate.quad(lambda r: state.u(r) ** 2, 0.0, _r_cut(solution.omega),
                            epsabs=1e-10, epsrel=1e-12, limit=200)
    return val


def moment_quad(state: RadialState, k: int) -> float:
    val, _ = integrate.quad(lambda r: r ** k * (state.N * state.u(r)) ** 2,
                            0.0, _r_cut(state.omega),
                            epsabs=1e-10, epsrel=1e-12, limit=200)
    return val


# ---------------------------------------------------------------------------
# ODE residual of the closed-form u on a grid
# ---------------------------------------------------------------------------

def residual(state: RadialState, r_grid=None, eta: float | None = None,
             coulomb_a: float = 0.5) -> float:
    """max |u'' + (2 eta - 2a/r - w^2 r^2 - (l^2-1/4)/r^2) u| / max |u''|.

    u'' comes from 4th-order central differences of the closed-form u, so the
    returned number measures how well the assembled state actually solves the
    radial equation (no threshold is imposed by this function).
    """
    sol = state.solution
    if eta is None:
        eta = sol.eta
    if r_grid is None:
        r_grid = np.linspace(0.1, 12.0 / math.sqrt(sol.omega), 8001)
    r = np.asarray(r_grid, dtype=float)
    if r.min() <= 0:
        raise ValueError("grid must not touch r = 0")
    h = r[1] - r[0]
    if not np.allclose(np.diff(r), h, rtol=1e-9):
        raise ValueError("grid must be uniform")
    u = state.u(r)
    upp = (-u[4:] + 16 * u[3:-1] - 30 * u[2:-2] + 16 * u[1:-3] - u[:-4]) / (12 * h * h)
    ri = r[2:-2]
    w = 2 * eta - effective_potential_term(ri, sol.omega, sol.l, coulomb_a)
    res = upp + w * u[2:-2]
    return float(np.max(np.abs(res)) / np.max(np.abs(upp)))
