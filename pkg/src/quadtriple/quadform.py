"""Quadratic spaces over Q_p: evaluation, Hilbert symbols, the quadratic
character chi_Q, Gaussian integrals of psi(Q(x)), and the Weil index.

Forms are diagonal (callers diagonalize over Q first). The Weil index is
computed intrinsically from stabilized Gauss sums, one code path for every p
including p = 2; classical tables appear only in tests as cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Cyc, Q
from .padic import PAdicContext


@dataclass(frozen=True)
class QuadraticSpace:
    """Q(v) = sum_j c_j v_j^2 with all c_j nonzero. Even dimension except
    where explicitly allowed (the scalar transform T works in any dimension;
    the Weil representation requires d even)."""

    coefficients: tuple

    def __init__(self, coefficients):
        coeffs = tuple(Q(c) for c in coefficients)
        if any(c == 0 for c in coeffs):
            raise ValueError("degenerate form: zero diagonal coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def dimension(self):
        return len(self.coefficients)

    def evaluate(self, v):
        if len(v) != self.dimension:
            raise ValueError(f"dimension mismatch: {len(v)} != {self.dimension}")
        return sum(c * Q(x) * Q(x) for c, x in zip(self.coefficients, v))

    def bilinear(self, u, v):
        """B(u,v) = Q(u+v) - Q(u) - Q(v) = 2 sum c_j u_j v_j."""
        return 2 * sum(c * Q(x) * Q(y) for c, x, y in zip(self.coefficients, u, v))

    def determinant(self):
        out = Q(1)
        for c in self.coefficients:
            out *= c
        return out

    def direct_sum(self, other):
        return QuadraticSpace(self.coefficients + other.coefficients)

    def scale(self, t):
        return QuadraticSpace(tuple(Q(t) * c for c in self.coefficients))


def _unit_part(x, p):
    """u with x = p^val * u, as a rational with val_p = 0."""
    x = Q(x)
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return Q(n, d), v


def _unit_mod(u, p, k):
    """Reduce a p-adic unit (rational) modulo p^k."""
    m = p ** k
    return (u.numerator * pow(u.denominator, -1, m)) % m


def legendre(u, p):
    """(u|p) for a unit u (rational allowed), odd p."""
    r = _unit_mod(Q(u), p, 1)
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, ctx: PAdicContext) -> int:
    """(a, b)_p by the classical closed formulas."""
    p = ctx.p
    a, b = Q(a), Q(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    u, alpha = _unit_part(a, p)
    v, beta = _unit_part(b, p)
    if p != 2:
        s = 1
        if alpha % 2 and beta % 2 and (p - 1) // 2 % 2:
            s = -s
        if beta % 2:
            s *= legendre(u, p)
        if alpha % 2:
            s *= legendre(v, p)
        return s
    eps_u = (_unit_mod(u, 2, 2) - 1) // 2 % 2          # (u-1)/2 mod 2
    eps_v = (_unit_mod(v, 2, 2) - 1) // 2 % 2
    om_u = (_unit_mod(u, 2, 3) ** 2 - 1) // 8 % 2       # (u^2-1)/8 mod 2
    om_v = (_unit_mod(v, 2, 3) ** 2 - 1) // 8 % 2
    e = eps_u * eps_v + alpha * om_v + beta * om_u
    return -1 if e % 2 else 1


# -- brute-force solubility oracle -----------------------------------------

def _square_class(x, p):
    """Canonical label (val mod 2, small unit data) of x modulo squares."""
    u, v = _unit_part(x, p)
    if p == 2:
        return (v % 2, _unit_mod(u, 2, 3))
    return (v % 2, legendre(u, p))


def _class_rep_int(cls, p):
    """Small positive integer in the square class labelled cls."""
    vpar, unit = cls
    if p == 2:
        rep = unit
    else:
        if unit == 1:
            rep = 1
        else:
            rep = next(r for r in range(2, p) if legendre(r, p) == -1)
    return rep * (p if vpar else 1)


@lru_cache(maxsize=None)
def _representable_classes(a_int, p):
    """Square classes of z^2 - a x^2 over candidates mod p^M.

    Precision M leaves >= 3 digits (p odd) / >= 3 bits above the valuation of
    any value with val <= 2, enough to read its square class; deeper values
    are rescalings of shallow ones (see tests vs the closed formula).
    """
    import numpy as np

    M = 6 if p == 2 else 3
    mod = p ** M
    r = np.arange(mod, dtype=np.int64)
    z2 = (r * r) % mod
    ax2 = (a_int % mod) * z2 % mod
    w = (z2[:, None] - ax2[None, :]) % mod  # all z^2 - a x^2 mod p^M
    w = np.unique(w)
    seen = set()
    qr = None
    if p != 2:
        units = np.arange(1, p)
        qr = {int(u): (1 if pow(int(u), (p - 1) // 2, p) == 1 else -1) for u in units}
    for val in np.nditer(w):
        ww = int(val)
        if ww == 0:
            continue
        v = 0
        while ww % p == 0:
            ww //= p
            v += 1
        if v > 2:
            continue
        if p == 2:
            seen.add((v % 2, ww % 8))
        else:
            seen.add((v % 2, qr[ww % p]))
    return frozenset(seen)


def hilbert_symbol_oracle(a, b, ctx: PAdicContext) -> int:
    """(a, b)_p decided by exhaustive solubility search for z^2 = a x^2 + b y^2
    (independent of the bimultiplicative closed formula)."""
    p = ctx.p
    a_cls = _square_class(a, p)
    b_cls = _square_class(b, p)
    triv = (0, 1)
    if a_cls == triv or b_cls == triv:
        return 1
    a_int = _class_rep_int(a_cls, p)
    return 1 if b_cls in _representable_classes(a_int, p) else -1


# -- the quadratic character and Weil index ---------------------------------

def signed_discriminant(space: QuadraticSpace):
    """(-1)^{d/2} * prod c_j (d even)."""
    d = space.dimension
    if d % 2:
        raise ValueError("signed discriminant needs even dimension")
    return Q(-1) ** (d // 2) * space.determinant()


def chi_Q(space: QuadraticSpace, a, ctx: PAdicContext, flip_sign=False) -> int:
    """chi_Q(a) = (a, (-1)^{d/2} det)_p. `flip_sign` negates the second
    argument; it exists only for the negative-control suite."""
    disc = signed_discriminant(space)
    if flip_sign:
        disc = -disc
    return hilbert_symbol(a, disc, ctx)


def chi_is_unramified(space: QuadraticSpace, ctx: PAdicContext) -> bool:
    """chi_Q trivial on units: automatic at odd p iff val(disc) is even."""
    disc = signed_discriminant(space)
    if ctx.p != 2:
        return ctx.val(disc) % 2 == 0
    for u in (3, 5, 7):
        if chi_Q(space, u, ctx) != 1:
            return False
    return True


def _quad_char_sum(beta, h, ctx: PAdicContext) -> Cyc:
    """sum_{t mod p^h} psi(beta t^2), exact, for h the period of the summand
    (h = -val(beta * scale) - val(2), as produced by gauss_sum_ball).

    In that regime the top-digit split t = t0 + p^{h-1} s makes the s-sum a
    full character sum, zero unless p | t0, giving the classical contraction
    S(beta, h) = p * S(beta p^2, h - 2). Small cases are enumerated directly.
    """
    p = ctx.p
    beta = Q(beta)
    if h <= 0:
        return Cyc.one()
    vb = ctx.val(beta * ctx.psi_scale)
    if vb >= 0:  # psi(beta t^2) = 1 on O
        return Cyc.from_rational(Q(p) ** h)
    if p ** h <= 4096:
        # accumulate exponent multiplicities in integers, one Cyc at the end:
        # x = beta*scale = a/(b p^e) with p coprime to b, and
        # psi(x t^2) = zeta_{p^e}^{a b^{-1} t^2}
        x = beta * ctx.psi_scale
        e = -vb
        pe = p ** e
        bprime = x.denominator // pe
        uint = (x.numerator * pow(bprime, -1, pe)) % pe
        counts = [0] * pe
        for t in range(p ** h):
            counts[(uint * t * t) % pe] += 1
        return Cyc(pe, {n: Q(cnt) for n, cnt in enumerate(counts) if cnt})
    val2 = 1 if p == 2 else 0
    assert h == -vb - val2 and h >= 2 and vb + 2 * h - 2 >= 0, \
        "quadratic character sum called off its canonical period"
    return Q(p) * _quad_char_sum(beta * p * p, h - 2, ctx)


def gauss_sum_ball(c, m, ctx: PAdicContext) -> Cyc:
    """int_{p^{-m} Z_p} psi(c u^2) du, exact cyclotomic."""
    p = ctx.p
    c = Q(c)
    if c == 0:
        return Cyc.from_rational(Q(p) ** m)
    beta = c * Q(p) ** (-2 * m)  # psi argument coefficient on O after u = p^{-m} t
    vb = ctx.val(beta * ctx.psi_scale)
    val2 = 1 if p == 2 else 0
    h = max(0, -vb - val2, (-vb + 1) // 2)
    total = _quad_char_sum(beta, h, ctx)
    return total * Q(p ** m, p ** h)


@lru_cache(maxsize=None)
def gauss_sum_stabilized(c, ctx: PAdicContext) -> Cyc:
    """The stabilized Gaussian S(c) = int psi(c u^2) du over p^{-m} Z_p, m >> 0.

    Stabilizes once shells of valuation -m oscillate to zero; guarded by an
    internal assertion on the documented window.
    """
    c = Q(c)
    vc = ctx.val(c * ctx.psi_scale)
    cap = max(2, (int(vc) if vc != float("inf") else 0) // 2 + 3) + (2 if ctx.p == 2 else 0)
    prev = gauss_sum_ball(c, 0, ctx)
    for m in range(1, cap + 2):
        cur = gauss_sum_ball(c, m, ctx)
        if cur == prev:
            nxt = gauss_sum_ball(c, m + 1, ctx)
            assert nxt == cur, "Gaussian failed to stabilize inside the window"
            return cur
        prev = cur
    raise AssertionError("Gaussian failed to stabilize inside the window")


def gaussian_constant(space: QuadraticSpace, ctx: PAdicContext) -> Cyc:
    """S(Q) = prod_j S(c_j): the stabilized integral of psi(Q(x))."""
    out = Cyc.one()
    for c in space.coefficients:
        out = out * gauss_sum_stabilized(c, ctx)
    return out


@lru_cache(maxsize=None)
def _quadratic_gauss_sum(p):
    """g_p = sum_{t mod p} e(t^2/p) in Q(zeta_p); g_p^2 = (-1|p) p."""
    total = Cyc.zero()
    for t in range(p):
        total = total + Cyc.root_of_unity(t * t % p, p)
    return total


def _phase(S: Cyc, ctx: PAdicContext) -> Cyc:
    """S / |S| for a stabilized Gaussian S (|S|^2 a power of q)."""
    p = ctx.p
    nsq = S.norm_sq()  # = q^{-delta}
    num, den = nsq.numerator, nsq.denominator
    delta = 0
    while den % p == 0:
        den //= p
        delta += 1
    while num % p == 0:
        num //= p
        delta -= 1
    assert num == 1 and den == 1, f"|S|^2 = {nsq} is not a power of q"
    if delta % 2 == 0:
        return S * Q(p) ** (delta // 2)
    # |S| = q^{-(delta+1)/2} * sqrt(p): divide out sqrt(p) via the Gauss sum
    T = S * Q(p) ** ((delta + 1) // 2)
    if p == 2:
        root2 = Cyc.root_of_unity(1, 8) + Cyc.root_of_unity(7, 8)  # sqrt 2
        return T / root2
    g = _quadratic_gauss_sum(p)
    if p % 4 == 1:  # g = sqrt p
        out = T / g
    else:  # g = i sqrt p, so sqrt p = g / i
        out = (T / g) * Cyc.root_of_unity(1, 4)
    return out


@lru_cache(maxsize=None)
def weil_index(space: QuadraticSpace, ctx: PAdicContext) -> Cyc:
    """gamma(Q, psi) = prod_j gamma(c_j x^2, psi), each factor the phase of its
    stabilized Gauss sum. An eighth root of unity."""
    out = Cyc.one()
    for c in space.coefficients:
        out = out * _phase(gauss_sum_stabilized(c, ctx), ctx)
    g8 = Cyc.one()
    for _ in range(8):
        g8 = g8 * out
    assert g8 == Cyc.one(), "Weil index is not an 8th root of unity"
    assert out.norm_sq() == 1
    return out


@dataclass
class QuadraticSpaceTriple:
    """Three even-dimensional quadratic spaces; Q = Q_1 + Q_2 + Q_3 on the sum."""

    spaces: tuple

    def __init__(self, spaces):
        spaces = tuple(spaces)
        if len(spaces) != 3:
            raise ValueError("need exactly three quadratic spaces")
        for s in spaces:
            if s.dimension % 2:
                raise ValueError("triple components must be even dimensional")
        self.spaces = spaces

    @property
    def dimensions(self):
        return tuple(s.dimension for s in self.spaces)

    @property
    def total_dimension(self):
        return sum(self.dimensions)

    def total_space(self) -> QuadraticSpace:
        coeffs = ()
        for s in self.spaces:
            coeffs += s.coefficients
        return QuadraticSpace(coeffs)

    def split_vector(self, v):
        d1, d2, d3 = self.dimensions
        v = tuple(Q(x) for x in v)
        if len(v) != d1 + d2 + d3:
            raise ValueError("dimension mismatch")
        return v[:d1], v[d1:d1 + d2], v[d1 + d2:]

    def evaluate_each(self, v1, v2, v3):
        return tuple(s.evaluate(vv) for s, vv in zip(self.spaces, (v1, v2, v3)))

    def chi(self, a1, a2, a3, ctx):
        """chi_Q(a1,a2,a3) = prod chi_{Q_i}(a_i)."""
        out = 1
        for s, a in zip(self.spaces, (a1, a2, a3)):
            out *= chi_Q(s, a, ctx)
        return out

    def chi_at_uniformizer(self, ctx):
        return tuple(chi_Q(s, ctx.uniformizer, ctx) for s in self.spaces)

    def weil_index(self, ctx):
        out = Cyc.one()
        for s in self.spaces:
            out = out * weil_index(s, ctx)
        return out

    def unramified(self, ctx):
        return ctx.p != 2 and all(chi_is_unramified(s, ctx) for s in self.spaces)

    def invariants(self, ctx):
        """Cached local invariants per space: (disc, Hasse, chi(pi), gamma)."""
        out = []
        for s in self.spaces:
            cs = s.coefficients
            hasse = 1
            for i in range(len(cs)):
                for j in range(i + 1, len(cs)):
                    hasse *= hilbert_symbol(cs[i], cs[j], ctx)
            out.append({
                "disc": signed_discriminant(s),
                "hasse": hasse,
                "chi_pi": chi_Q(s, ctx.uniformizer, ctx),
                "gamma": weil_index(s, ctx),
            })
        return out
