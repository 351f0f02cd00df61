"""The Weil representation of SL_2(F)^3 on Schwartz-Bruhat functions attached
to a triple of even-dimensional quadratic spaces, the scalar transform T, and
the vanishing subspaces it cuts out.

rho is defined on the generators n(t), diag(a, a^{-1}), w = (0 1; -1 0) and
extended along Bruhat factorizations; that the result is independent of the
factorization (rho(g1 g2) = rho(g1) rho(g2)) is enforced by the test suite and
pins every sign and normalization convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Cyc, Q
from .padic import PAdicContext
from .quadform import QuadraticSpace, chi_Q, gaussian_constant
from .schwartz import SBFunction


class SL2Element:
    """2x2 rational matrix with determinant exactly 1."""

    __slots__ = ("m",)

    def __init__(self, rows):
        m = tuple(tuple(Q(x) for x in row) for row in rows)
        if len(m) != 2 or any(len(r) != 2 for r in m):
            raise ValueError("need a 2x2 matrix")
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1:
            raise ValueError("determinant != 1")
        self.m = m

    @staticmethod
    def identity():
        return SL2Element([[1, 0], [0, 1]])

    @staticmethod
    def n(t):
        return SL2Element([[1, Q(t)], [0, 1]])

    @staticmethod
    def n_lower(t):
        return SL2Element([[1, 0], [Q(t), 1]])

    @staticmethod
    def torus(a):
        a = Q(a)
        return SL2Element([[a, 0], [0, 1 / a]])

    @staticmethod
    def w():
        return SL2Element([[0, 1], [-1, 0]])

    def __mul__(self, other):
        a, b = self.m, other.m
        return SL2Element([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])

    def inverse(self):
        (a, b), (c, d) = self.m
        return SL2Element([[d, -b], [-c, a]])

    def __eq__(self, other):
        return isinstance(other, SL2Element) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"SL2{self.m}"


def eps_conjugate(g: SL2Element) -> SL2Element:
    """diag(1,-1) g diag(1,-1): negates the off-diagonal entries."""
    (a, b), (c, d) = g.m
    return SL2Element([[a, -b], [-c, d]])


def bruhat_factor(g: SL2Element):
    """Word of generator tokens multiplying (left to right) to g.

    Tokens: ("n", t) for n(t), ("t", a) for diag(a, a^{-1}), ("w",).
    Lower-left zero gives torus * unipotent; otherwise one w appears.
    """
    (a, b), (c, d) = g.m
    word = []
    if c == 0:
        if a != 1:
            word.append(("t", a))
        if b != 0:
            word.append(("n", b / a))
        return word
    # g = n(a/c) w diag(-c, -1/c) n(d/c)
    if a != 0:
        word.append(("n", a / c))
    word.append(("w",))
    if c != -1:
        word.append(("t", -c))
    if d != 0:
        word.append(("n", d / c))
    return word


def word_to_matrix(word) -> SL2Element:
    g = SL2Element.identity()
    for tok in word:
        if tok[0] == "n":
            g = g * SL2Element.n(tok[1])
        elif tok[0] == "t":
            g = g * SL2Element.torus(tok[1])
        else:
            g = g * SL2Element.w()
    return g


@dataclass(frozen=True)
class Conventions:
    """Normalization switches. The defaults are the ones that make rho a
    homomorphism; the flips exist for the negative-control suite only."""

    chi_flip: bool = False
    gamma_conj: bool = False


DEFAULT_CONVENTIONS = Conventions()


@lru_cache(maxsize=None)
def weil_w_constant(space: QuadraticSpace, ctx: PAdicContext,
                    conv: Conventions = DEFAULT_CONVENTIONS) -> Cyc:
    """Coefficient of the w-action: the stabilized Gaussian integral of
    psi(Q(x)) times |det(2J)|, so that rho(w) = c_w * (psi(u^t 2J y)-transform)
    is unitary. Exact in Q(zeta_{p^k}) for every diagonal form."""
    dethess = Q(2) ** space.dimension * space.determinant()
    cw = gaussian_constant(space, ctx) * ctx.norm(dethess)
    if conv.gamma_conj:
        cw = cw.conj()
    return cw


def rho_generator(token, f: SBFunction, space: QuadraticSpace, ctx: PAdicContext,
                  conv: Conventions = DEFAULT_CONVENTIONS) -> SBFunction:
    kind = token[0]
    if kind == "n":
        return f.multiply_by_gaussian(token[1], space, ctx)
    if kind == "t":
        a = Q(token[1])
        chi = chi_Q(space, a, ctx, flip_sign=conv.chi_flip)
        factor = Q(chi) * ctx.norm(a) ** Q(space.dimension, 2)
        return f.dilate(a, ctx).scale(factor)
    if kind == "w":
        pairing = tuple(2 * c for c in space.coefficients)
        return f.fourier(pairing, ctx).scale(weil_w_constant(space, ctx, conv))
    raise ValueError(f"unknown token {token}")


def rho(g: SL2Element, f: SBFunction, space: QuadraticSpace, ctx: PAdicContext,
        conv: Conventions = DEFAULT_CONVENTIONS) -> SBFunction:
    """rho(g) f along a Bruhat factorization of g."""
    if space.dimension % 2:
        raise ValueError("Weil representation requires even dimension")
    if f.dimension != space.dimension:
        raise ValueError("function/space dimension mismatch")
    word = bruhat_factor(g)
    out = f
    for token in reversed(word):  # rho(g1 g2) = rho(g1) o rho(g2)
        out = rho_generator(token, out, space, ctx, conv)
        if len(out.terms) > 512:
            out = out.canonicalize(ctx)
    return out


def rho_triple(g_triple, f: SBFunction, triple, ctx: PAdicContext,
               conv: Conventions = DEFAULT_CONVENTIONS) -> SBFunction:
    """rho_1 x rho_2 x rho_3 acting on functions on V = V_1 + V_2 + V_3.

    Each slot's generator word acts on its own coordinate block; the three
    blocks commute, so slots are applied in order.
    """
    d1, d2, d3 = triple.dimensions
    if f.dimension != d1 + d2 + d3:
        raise ValueError("dimension mismatch")
    offsets = (0, d1, d1 + d2)
    out = f
    for slot, g in enumerate(g_triple):
        space = triple.spaces[slot]
        word = bruhat_factor(g)
        for token in reversed(word):
            out = _block_generator(token, out, space, offsets[slot], triple, ctx, conv)
            if len(out.terms) > 512:
                out = out.canonicalize(ctx)
    return out


def _block_generator(token, f, space, offset, triple, ctx, conv):
    """Apply a one-slot generator to the block [offset, offset+dim)."""
    d = space.dimension
    kind = token[0]
    if kind == "n":
        return f.multiply_by_gaussian(token[1], _BlockForm(space, offset, f.dimension), ctx)
    if kind == "t":
        a = Q(token[1])
        chi = chi_Q(space, a, ctx, flip_sign=conv.chi_flip)
        factor = Q(chi) * ctx.norm(a) ** Q(d, 2)
        return _block_dilate(f, a, offset, d, ctx).scale(factor)
    if kind == "w":
        cw = weil_w_constant(space, ctx, conv)
        return _block_fourier(f, tuple(2 * c for c in space.coefficients),
                              offset, ctx).scale(cw)
    raise ValueError(f"unknown token {token}")


class _BlockForm:
    """Quadratic form on F^D reading only a coordinate block; quacks like
    QuadraticSpace for SBFunction.multiply_by_gaussian (coefficients outside
    the block are 0, so they impose no refinement and contribute nothing)."""

    def __init__(self, space, offset, total_dim):
        self.space = space
        self.offset = offset
        self.coefficients = tuple(
            space.coefficients[i - offset] if offset <= i < offset + space.dimension
            else Q(0)
            for i in range(total_dim)
        )

    @property
    def dimension(self):
        return len(self.coefficients)

    def evaluate(self, v):
        return self.space.evaluate(v[self.offset:self.offset + self.space.dimension])


def _box_to_terms(center, levels, coeff, ctx):
    """Cube terms covering the box prod_i (center_i + p^{levels_i} O): split
    every coordinate to the finest level present."""
    p = ctx.p
    lam = max(levels)
    steps = [lam - l for l in levels]
    total = 1
    for s in steps:
        total *= p ** s
    if total > 200000:
        raise ValueError("box split too large; restrict test levels")
    out = []
    for flat in range(total):
        t = flat
        ctr = list(center)
        for i, s in enumerate(steps):
            if s:
                r = p ** s
                ctr[i] = ctr[i] + Q(p) ** levels[i] * (t % r)
                t //= r
        out.append((tuple(ctr), lam, coeff))
    return out


def _block_dilate(f, a, offset, d, ctx):
    """x_block -> f(a * x_block), other coordinates untouched."""
    a = Q(a)
    va = ctx.val(a)
    out = []
    for ctr, lv, coeff in f.terms:
        new_ctr = tuple(
            c / a if offset <= i < offset + d else c for i, c in enumerate(ctr)
        )
        levels = [lv - va if offset <= i < offset + d else lv
                  for i in range(f.dimension)]
        out.extend(_box_to_terms(new_ctr, levels, coeff, ctx))
    return SBFunction(f.dimension, out)


def _block_fourier(f, pairing, offset, ctx):
    """Fourier transform in the block coordinates only."""
    d = len(pairing)
    D = f.dimension
    out = []
    for ctr, k, coeff in f.terms:
        sub = SBFunction(d, [(ctr[offset:offset + d], k, coeff)])
        for c2, l2, v2 in sub.fourier(pairing, ctx).terms:
            center = ctr[:offset] + c2 + ctr[offset + d:]
            levels = [l2 if offset <= i < offset + d else k for i in range(D)]
            out.extend(_box_to_terms(center, levels, v2, ctx))
    return SBFunction(D, out)


# ---------------------------------------------------------------------------
# the scalar transform T and the vanishing spaces
# ---------------------------------------------------------------------------

def T_at(f: SBFunction, alpha, space: QuadraticSpace, ctx: PAdicContext) -> Cyc:
    """T(f)(alpha) = int f(v) psi(alpha Q(v)) dv, exact."""
    return f.multiply_by_gaussian(alpha, space, ctx).integrate(ctx)


@dataclass
class TTransformProfile:
    """Exact description of T(f) by shells: explicit window values plus the
    two stabilized tails (constant = int f for shallow alpha; for deep alpha
    the value is the zero-coset Gaussian, identically zero iff f vanishes on
    the coset of 0)."""

    window: dict                    # m -> list of (alpha, value) on ord = m
    shallow_from: int               # T(alpha) = shallow_value for ord >= this
    shallow_value: Cyc
    deep_below: int                 # ord < this is the deep regime
    deep_tail_zero: bool
    zero_coset_coeff: Cyc

    def is_identically_zero(self):
        if not self.shallow_value.is_zero() or not self.deep_tail_zero:
            return False
        return all(v.is_zero() for vals in self.window.values() for _, v in vals)


def t_transform(f: SBFunction, space: QuadraticSpace, ctx: PAdicContext,
                window=None) -> TTransformProfile:
    """Shell profile of T(f); the default window is provably sufficient to
    determine T(f) everywhere (derived from f's level and support)."""
    p = ctx.p
    val2 = 1 if p == 2 else 0
    k0, canon = f.canonical(ctx)
    if not canon:
        z = Cyc.zero()
        return TTransformProfile({}, 0, z, 0, True, z)
    # at p = 2 refine once more so every nonzero center coordinate has
    # val(a_j) < k - val2 (needed for the deep-shell vanishing bound)
    k = k0 + val2
    g = f.canonicalize(ctx).refine_to_level(k, ctx) if val2 else f.canonicalize(ctx)
    _, canon = g.canonical(ctx)

    cmin = min(ctx.val(c * ctx.psi_scale) for c in space.coefficients)
    r = f.support_radius_val(ctx)
    v0 = 2 * r + cmin  # val(scale * Q(v)) >= v0 on supp f
    shallow_from = -v0

    zero = (Q(0),) * f.dimension
    zc = Cyc.zero()
    deep_bounds = []
    for ctr, coeff in canon.items():
        if all(x == 0 for x in ctr):
            zc = coeff
            continue
        b = None
        for j, (aj, cj) in enumerate(zip(ctr, space.coefficients)):
            if aj == 0 or ctx.val(aj) >= k:
                continue
            assert ctx.val(aj) + val2 < k, "refinement invariant violated"
            bj = -k - ctx.val(2 * aj) - ctx.val(cj * ctx.psi_scale)
            b = bj if b is None else max(b, bj)
        assert b is not None, "nonzero canonical center with no small coordinate"
        deep_bounds.append(b)
    deep_below = min(deep_bounds) if deep_bounds else shallow_from

    if window is None:
        lo, hi = deep_below, shallow_from
    else:
        lo, hi = window.lower, window.upper + 1

    values = {}
    for m in range(lo, hi):
        e = max(shallow_from - m, 1)  # alpha matters mod p^{-v0}; classes mod p^e
        shell = []
        for u in range(1, p ** e):
            if u % p == 0:
                continue
            alpha = Q(u) * Q(p) ** m
            shell.append((alpha, T_at(f, alpha, space, ctx)))
        values[m] = shell

    return TTransformProfile(
        window=values,
        shallow_from=shallow_from,
        shallow_value=f.integrate(ctx),
        deep_below=deep_below,
        deep_tail_zero=zc.is_zero(),
        zero_coset_coeff=zc,
    )


def in_vanishing_space(f: SBFunction, space: QuadraticSpace, ctx: PAdicContext) -> bool:
    """Membership in {f : T(f) = 0 and f(0) = 0} (equivalently: rho(g)f(0) = 0
    for all g in SL_2(F))."""
    if not f.evaluate((Q(0),) * f.dimension, ctx).is_zero():
        return False
    prof = t_transform(f, space, ctx)
    return prof.is_identically_zero()
