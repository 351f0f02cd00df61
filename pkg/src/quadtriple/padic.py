"""The local field Q_p as exact data: valuations, the unramified additive
character psi (optionally rescaled), and shell integrals against psi.

Haar normalizations are fixed globally: meas(Z_p, dt) = 1 (self-dual for
unramified psi), meas(Z_p^x, d^x a) = 1, meas(K) = 1 for compact groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Cyc, Q, _is_prime, cyclotomic_e

INF = float("inf")  # valuation of 0


@dataclass(frozen=True)
class PAdicContext:
    """F = Q_p with residue cardinality q = p and uniformizer p.

    psi_scale = c defines psi_c(x) := psi(cx); the default c = 1 gives the
    unramified character, trivial on Z_p and nontrivial on p^{-1} Z_p.
    """

    p: int
    psi_scale: Fraction = field(default=Q(1))

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        object.__setattr__(self, "psi_scale", Q(self.psi_scale))
        if self.psi_scale == 0:
            raise ValueError("psi_scale must be nonzero")

    @property
    def q(self):
        return self.p

    @property
    def uniformizer(self):
        return Q(self.p)

    def with_scale(self, c):
        return PAdicContext(self.p, Q(c))

    def conjugate_character(self):
        """Context for psi-bar = psi_{-1} composed with the current scale."""
        return PAdicContext(self.p, -self.psi_scale)

    # -- valuations ----------------------------------------------------

    def val(self, x):
        """ord_p(x) for rational x; |x|_p = q^{-val(x)}. val(0) = +inf."""
        x = Q(x)
        if x == 0:
            return INF
        v = 0
        n = x.numerator
        while n % self.p == 0:
            n //= self.p
            v += 1
        d = x.denominator
        while d % self.p == 0:
            d //= self.p
            v -= 1
        return v

    def norm(self, x):
        v = self.val(x)
        return Q(0) if v == INF else Q(self.p) ** (-v)

    def vec_val(self, vec):
        """min of coordinate valuations (inf for the zero vector)."""
        return min((self.val(x) for x in vec), default=INF)

    def frac_part(self, x):
        """p-adic fractional part of rational x: the unique r in [0,1) with
        p-power denominator and x - r in Z_(p)."""
        x = Q(x)
        if x == 0:
            return Q(0)
        v = self.val(x)
        if v >= 0:
            return Q(0)
        pe = self.p ** (-v)
        # x = a / (b * p^{-v}) with p coprime to b
        a = x.numerator
        b = x.denominator // pe if x.denominator % pe == 0 else None
        if b is None:  # numerator carries the p-power
            raise AssertionError("negative valuation with integral denominator")
        r = (a * pow(b, -1, pe)) % pe
        return Q(r, pe)

    # -- the additive character ----------------------------------------

    def psi(self, x) -> Cyc:
        """psi(x) = e^{2 pi i {psi_scale * x}_p}."""
        return cyclotomic_e(self.frac_part(self.psi_scale * Q(x)))

    # -- basic integrals -------------------------------------------------

    def ball_additive_integral(self, c, m) -> Fraction:
        """int_{p^m Z_p} psi(c t) dt = q^{-m} if val(psi_scale*c) >= -m else 0."""
        c = Q(c) * self.psi_scale
        if c == 0 or self.val(c) >= -m:
            return Q(self.p) ** (-m)
        return Q(0)

    def shell_additive_integral(self, c, m) -> Fraction:
        """int_{ord(t) = m} psi(c t) dt (the shell p^m Z_p minus p^{m+1} Z_p).

        Values are rational: q^{-m}(1 - 1/q) on trivial shells, -q^{-m-1} on
        the first oscillating shell, 0 deeper.
        """
        return self.ball_additive_integral(c, m) - self.ball_additive_integral(c, m + 1)


@dataclass(frozen=True)
class ShellRange:
    """A finite window [lower, upper] of valuations."""

    lower: int
    upper: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower > upper")

    def __iter__(self):
        return iter(range(self.lower, self.upper + 1))
