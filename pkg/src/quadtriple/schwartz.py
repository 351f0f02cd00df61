"""Schwartz-Bruhat functions on F^d as finite combinations of coset
indicators 1_{a + p^k O^d}, with exact Fourier transform, integration, and
the multiplication operators needed by the Weil representation.

Terms may sit at mixed levels internally; the canonical form (one common
level, centers distinct mod p^k, no zero coefficients) is computed lazily
for equality tests and pointwise products.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Cyc, Q
from .padic import PAdicContext


def _as_cyc(c):
    return c if isinstance(c, Cyc) else Cyc.from_rational(c)


class SBFunction:
    """sum of coeff * 1_{center + p^level O^d}."""

    __slots__ = ("dimension", "terms", "_canon")

    def __init__(self, dimension, terms=()):
        self.dimension = dimension
        clean = []
        for center, level, coeff in terms:
            coeff = _as_cyc(coeff)
            if coeff.is_zero():
                continue
            if not (type(center) is tuple and center and type(center[0]) is Fraction):
                center = tuple(x if type(x) is Fraction else Q(x) for x in center)
            if len(center) != dimension:
                raise ValueError("center dimension mismatch")
            clean.append((center, int(level), coeff))
        self.terms = tuple(clean)
        self._canon = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(dimension):
        return SBFunction(dimension, [])

    @staticmethod
    def indicator(center, level, coeff=1):
        return SBFunction(len(center), [(center, level, coeff)])

    @staticmethod
    def lattice(dimension, level=0, coeff=1):
        """1_{p^level O^d}."""
        return SBFunction(dimension, [((Q(0),) * dimension, level, coeff)])

    # -- basic structure ---------------------------------------------------

    def is_formally_zero(self):
        return not self.terms

    def support_radius_val(self, ctx: PAdicContext):
        """r with supp(f) inside p^r O^d; None for the zero function."""
        r = None
        for center, level, _ in self.terms:
            m = level
            for x in center:
                if x != 0:
                    m = min(m, ctx.val(x))
            r = m if r is None else min(r, m)
        return r

    def max_level(self):
        return max((lv for _, lv, _ in self.terms), default=0)

    def refine_to_level(self, k, ctx: PAdicContext):
        """Rewrite every term at the common (finer) level k >= each level."""
        p = ctx.p
        out = []
        for center, level, coeff in self.terms:
            if level > k:
                raise ValueError("cannot coarsen a term")
            steps = k - level
            if steps == 0:
                out.append((center, level, coeff))
                continue
            reps = p ** steps
            idx = [0] * self.dimension
            scale = Q(p) ** level
            # enumerate sub-cube offsets center + p^level * j, j in [0, p^steps)^d
            total = reps ** self.dimension
            if total > 200000:
                raise ValueError(
                    f"refinement too large ({total} cosets); restrict test levels")
            for flat in range(total):
                t = flat
                offset = []
                for _ in range(self.dimension):
                    offset.append(t % reps)
                    t //= reps
                new_center = tuple(c + scale * j for c, j in zip(center, offset))
                out.append((new_center, k, coeff))
        return SBFunction(self.dimension, out)

    def canonical(self, ctx: PAdicContext):
        """(level, {reduced center: coeff}) with distinct centers mod p^level."""
        if self._canon is not None:
            return self._canon
        if not self.terms:
            self._canon = (0, {})
            return self._canon
        k = self.max_level()
        refined = self.refine_to_level(k, ctx)
        acc = {}
        pk = Q(ctx.p) ** k
        for center, _, coeff in refined.terms:
            key = tuple(pk * ctx.frac_part(x / pk) for x in center)
            cur = acc.get(key)
            acc[key] = coeff if cur is None else cur + coeff
        acc = {c: v for c, v in acc.items() if not v.is_zero()}
        self._canon = (k, acc)
        return self._canon

    def canonicalize(self, ctx: PAdicContext):
        k, acc = self.canonical(ctx)
        return SBFunction(self.dimension, [(c, k, v) for c, v in acc.items()])

    def is_zero(self, ctx: PAdicContext):
        return not self.canonical(ctx)[1]

    def equals(self, other, ctx: PAdicContext):
        if self.dimension != other.dimension:
            return False
        return (self - other).is_zero(ctx)

    # -- linear structure --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SBFunction):
            return NotImplemented
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch")
        return SBFunction(self.dimension, self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _as_cyc(c)
        return SBFunction(self.dimension,
                          [(ctr, lv, coeff * c) for ctr, lv, coeff in self.terms])

    def conj(self):
        return SBFunction(self.dimension,
                          [(ctr, lv, coeff.conj()) for ctr, lv, coeff in self.terms])

    # -- evaluation / integration ------------------------------------------

    def evaluate(self, x, ctx: PAdicContext) -> Cyc:
        x = tuple(Q(t) for t in x)
        if len(x) != self.dimension:
            raise ValueError("dimension mismatch")
        out = Cyc.zero()
        for center, level, coeff in self.terms:
            if all(ctx.val(xi - ci) >= level for xi, ci in zip(x, center)):
                out = out + coeff
        return out

    def integrate(self, ctx: PAdicContext) -> Cyc:
        out = Cyc.zero()
        qd = Q(ctx.p) ** (-self.dimension)
        for _, level, coeff in self.terms:
            out = out + coeff * qd ** level
        return out

    # -- multiplicative operators -------------------------------------------

    def dilate(self, a, ctx: PAdicContext):
        """x -> f(a x)."""
        a = Q(a)
        if a == 0:
            raise ValueError("dilation by zero")
        va = ctx.val(a)
        return SBFunction(
            self.dimension,
            [(tuple(c / a for c in ctr), lv - va, coeff)
             for ctr, lv, coeff in self.terms],
        )

    def translate(self, b):
        """x -> f(x + b)."""
        b = tuple(Q(t) for t in b)
        return SBFunction(
            self.dimension,
            [(tuple(c - t for c, t in zip(ctr, b)), lv, coeff)
             for ctr, lv, coeff in self.terms],
        )

    def multiply_pointwise(self, other, ctx: PAdicContext):
        ka, da = self.canonical(ctx)
        kb, db = other.canonical(ctx)
        if not da or not db:
            return SBFunction.zero(self.dimension)
        k = max(ka, kb)
        fa = self.canonicalize(ctx).refine_to_level(k, ctx).canonical(ctx)[1] \
            if ka < k else da
        fb = other.canonicalize(ctx).refine_to_level(k, ctx).canonical(ctx)[1] \
            if kb < k else db
        # after refining, reduce keys once more for safety
        def reduce_keys(d):
            pk = Q(ctx.p) ** k
            out = {}
            for c, v in d.items():
                key = tuple(pk * ctx.frac_part(x / pk) for x in c)
                out[key] = out.get(key, Cyc.zero()) + v
            return out
        fa, fb = reduce_keys(dict(fa)), reduce_keys(dict(fb))
        terms = []
        for c, v in fa.items():
            w = fb.get(c)
            if w is not None:
                terms.append((c, k, v * w))
        return SBFunction(self.dimension, terms)

    def multiply_by_character(self, freqs, ctx: PAdicContext):
        """x -> psi(sum_j freqs[j] x_j) f(x), exact via refinement."""
        freqs = tuple(Q(w) for w in freqs)
        need = 0
        for w in freqs:
            if w != 0:
                need = max(need, -ctx.val(w * ctx.psi_scale))
        out = []
        for ctr, lv, coeff in self.terms:
            k = max(lv, need)
            piece = SBFunction(self.dimension, [(ctr, lv, coeff)])
            piece = piece.refine_to_level(k, ctx)
            for c2, l2, v2 in piece.terms:
                phase = ctx.psi(sum(w * x for w, x in zip(freqs, c2)))
                out.append((c2, l2, v2 * phase))
        return SBFunction(self.dimension, out)

    def multiply_by_gaussian(self, t, space, ctx: PAdicContext):
        """x -> psi(t Q(x)) f(x) for a diagonal quadratic space Q."""
        t = Q(t)
        if t == 0:
            return self
        coeffs = space.coefficients
        if len(coeffs) != self.dimension:
            raise ValueError("dimension mismatch")
        val2 = 1 if ctx.p == 2 else 0
        vts = ctx.val(t * ctx.psi_scale)
        out = []
        for ctr, lv, coeff in self.terms:
            # psi(tQ(x + delta)) / psi(tQ(x)) = psi(t c_j (2 x_j delta_j +
            # delta_j^2)) must be 1 for val(delta) >= k and every x in the
            # coset; x_j can have valuation as small as min(val(a_j), lv)
            k = lv
            for cj, aj in zip(coeffs, ctr):
                if cj == 0:
                    continue
                vc = vts + ctx.val(cj)
                k = max(k, (-vc + 1) // 2)
                vmin = lv if aj == 0 else min(ctx.val(aj), lv)
                k = max(k, -(vc + val2 + vmin))
            piece = SBFunction(self.dimension, [(ctr, lv, coeff)])
            piece = piece.refine_to_level(max(k, lv), ctx)
            for c2, l2, v2 in piece.terms:
                phase = ctx.psi(t * space.evaluate(c2))
                out.append((c2, l2, v2 * phase))
        return SBFunction(self.dimension, out)

    # -- Fourier transform ---------------------------------------------------

    def fourier(self, pairing, ctx: PAdicContext):
        """f^(y) = int f(u) psi(u^t J y) du for a nonsingular symmetric J
        given as a diagonal tuple or a full matrix (rows of rationals).

        Term-by-term closed form: the transform of 1_{a + p^k O^d} is
        q^{-kd} psi(a^t J y) 1_{L}(y) with L = p^{-k} J^{-1} O^d; L is cut
        into cubes and the character folded in exactly.
        """
        d = self.dimension
        diag = None
        if isinstance(pairing, (list, tuple)) and pairing and not isinstance(
                pairing[0], (list, tuple)):
            diag = tuple(Q(c) for c in pairing)
            if len(diag) != d or any(c == 0 for c in diag):
                raise ValueError("singular or mismatched diagonal pairing")
        else:
            raise NotImplementedError("only diagonal pairings are used here")
        out = SBFunction.zero(d)
        qd = Q(ctx.p)
        for ctr, k, coeff in self.terms:
            box_levels = [-k - ctx.val(c) for c in diag]
            lam = max(box_levels)
            freqs = tuple(c * a for c, a in zip(diag, ctr))
            const = coeff * qd ** (-k * d)
            # the box Prod p^{m_j} O as cubes at level lam
            steps = [lam - m for m in box_levels]
            total = 1
            for s in steps:
                total *= ctx.p ** s
            if total > 200000:
                raise ValueError("dual box too large; restrict test levels")
            pieces = []
            for flat in range(total):
                t = flat
                center = []
                for j in range(d):
                    r = ctx.p ** steps[j]
                    center.append(Q(ctx.p) ** box_levels[j] * (t % r))
                    t //= r
                pieces.append((tuple(center), lam, const))
            piece_fn = SBFunction(d, pieces)
            if any(w != 0 for w in freqs):
                piece_fn = piece_fn.multiply_by_character(freqs, ctx)
            out = out + piece_fn
        return out

    def tensor(self, other, ctx: PAdicContext):
        """f x g on F^{d1+d2} (terms paired at the finer common level)."""
        out = []
        for c1, l1, v1 in self.terms:
            for c2, l2, v2 in other.terms:
                k = max(l1, l2)
                f1 = SBFunction(self.dimension, [(c1, l1, v1)]).refine_to_level(k, ctx)
                f2 = SBFunction(other.dimension, [(c2, l2, v2)]).refine_to_level(k, ctx)
                for a1, _, w1 in f1.terms:
                    for a2, _, w2 in f2.terms:
                        out.append((a1 + a2, k, w1 * w2))
        return SBFunction(self.dimension + other.dimension, out)

    def __repr__(self):
        n = len(self.terms)
        return f"SBFunction(d={self.dimension}, {n} term{'s' if n != 1 else ''})"
