"""Exact scalar arithmetic: rationals, prime-power cyclotomics, rational
functions in one variable, and C-finite (linear recurrence) sequences.

All downstream integrals and transforms are computed in these rings; floating
point appears only in optional display helpers and is never asserted on.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

Q = Fraction  # arbitrary-precision rationals, always in lowest terms


class UnsupportedConductorError(ValueError):
    """Raised when a value would need a conductor outside prime powers."""


def rat_to_str(x):
    """Serialize a rational as "num/den" (den omitted when 1)."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s):
    return Q(s)


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_power_split(n):
    """n = ell**k with ell prime, or None."""
    if n < 2:
        return None
    for ell in range(2, n + 1):
        if n % ell == 0:
            if not _is_prime(ell):
                return None
            k = 0
            m = n
            while m % ell == 0:
                m //= ell
                k += 1
            return (ell, k) if m == 1 else None
    return None


class Cyc:
    """Element of Q(zeta_N) for a prime-power conductor N.

    Stored in the power basis zeta^0, ..., zeta^{phi(N)-1}; reduction by the
    cyclotomic polynomial is applied after every operation, the conductor is
    shrunk to the minimal one, and equality is representation equality.
    Arithmetic between two irrational values requires conductors over the
    same prime (one side rational is always fine).
    """

    __slots__ = ("n", "c")

    def __init__(self, n, c, _normalized=False):
        self.n = n
        self.c = c
        if not _normalized:
            self._normalize()

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rational(x):
        x = Q(x)
        return Cyc(1, {} if x == 0 else {0: x}, _normalized=True)

    @staticmethod
    def zero():
        return Cyc(1, {}, _normalized=True)

    @staticmethod
    def one():
        return Cyc.from_rational(1)

    @staticmethod
    def root_of_unity(num, den):
        """e^{2 pi i num/den}; den must be a prime power."""
        num %= den
        g = math.gcd(num, den)
        num, den = num // g, den // g
        if den == 1:
            return Cyc.one()
        if den == 2:
            return Cyc.from_rational(-1)
        if _prime_power_split(den) is None:
            raise UnsupportedConductorError(f"conductor {den} is not a prime power")
        return Cyc(den, {num: Q(1)})

    # -- normal form ---------------------------------------------------

    def _reduce_exponents(self):
        """Rewrite exponents into the power basis 0..phi(n)-1 (single pass:
        after e mod n, one top-digit substitution lands inside the basis)."""
        n = self.n
        if n == 1:
            return
        ell, k = _prime_power_split(n)
        step = n // ell  # ell^{k-1}
        top = step * (ell - 1)  # phi(n)
        out = {}
        for e, v in self.c.items():
            if v == 0:
                continue
            e0 = e % n
            if e0 < top:
                out[e0] = out.get(e0, Q(0)) + v
            else:
                # zeta^{r + (ell-1)step} = -sum_{j<ell-1} zeta^{r + j step}
                r = e0 - top
                for j in range(ell - 1):
                    t = r + j * step
                    out[t] = out.get(t, Q(0)) - v
        self.c = out

    def _shrink_conductor(self):
        while self.n > 1:
            ell, k = _prime_power_split(self.n)
            if k == 1:
                if set(self.c) <= {0}:
                    self.n = 1
                    return
                return
            # value is in Q(zeta_{n/ell}) iff the basis support is in ell*Z
            if all(e % ell == 0 for e in self.c):
                self.c = {e // ell: v for e, v in self.c.items()}
                self.n //= ell
            else:
                return

    def _normalize(self):
        if self.n == 2:
            # zeta_2 = -1 is rational; fold before basis logic
            val = self.c.get(0, Q(0)) - self.c.get(1, Q(0))
            self.n, self.c = 1, ({0: val} if val else {})
            return
        self._reduce_exponents()
        self.c = {e: v for e, v in self.c.items() if v != 0}
        self._shrink_conductor()

    # -- predicates / conversions ---------------------------------------

    def is_zero(self):
        return not self.c

    def is_rational(self):
        return self.n == 1

    def to_rational(self):
        if self.n != 1:
            raise ValueError(f"not rational: {self}")
        return self.c.get(0, Q(0))

    def to_complex(self):
        """Double-precision rendering, for display only."""
        return sum(
            float(v) * cmath.exp(2j * cmath.pi * e / self.n) for e, v in self.c.items()
        ) if self.c else 0j

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Cyc):
            return x
        return Cyc.from_rational(x)

    def _common(self, other):
        """Lift self, other into one conductor."""
        a, b = self, Cyc._coerce(other)
        if a.n == b.n:
            return a, b, a.n
        if a.n == 1:
            return Cyc(b.n, {0: a.c.get(0, Q(0))}, _normalized=True), b, b.n
        if b.n == 1:
            return a, Cyc(a.n, {0: b.c.get(0, Q(0))}, _normalized=True), a.n
        la, _ = _prime_power_split(a.n)
        lb, _ = _prime_power_split(b.n)
        if la != lb:
            raise UnsupportedConductorError(
                f"mixed conductors {a.n} and {b.n}: composite conductors unsupported"
            )
        n = max(a.n, b.n)
        sa, sb = n // a.n, n // b.n
        # scaling exponents by p-powers keeps them inside the power basis,
        # so skip normalization (it would shrink the conductor right back)
        ac = {e * sa: v for e, v in a.c.items()}
        bc = {e * sb: v for e, v in b.c.items()}
        return Cyc(n, ac, _normalized=True), Cyc(n, bc, _normalized=True), n

    def __add__(self, other):
        a, b, n = self._common(other)
        c = dict(a.c)
        for e, v in b.c.items():
            c[e] = c.get(e, Q(0)) + v
        return Cyc(n, c)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, {e: -v for e, v in self.c.items()}, _normalized=True)

    def __sub__(self, other):
        return self + (-Cyc._coerce(other))

    def __rsub__(self, other):
        return Cyc._coerce(other) + (-self)

    def __mul__(self, other):
        a, b, n = self._common(other)
        if not a.c or not b.c:
            return Cyc.zero()
        c = {}
        for e1, v1 in a.c.items():
            for e2, v2 in b.c.items():
                e = e1 + e2
                c[e] = c.get(e, Q(0)) + v1 * v2
        return Cyc(n, c)

    __rmul__ = __mul__

    def conj(self):
        return Cyc(self.n, {(-e) % self.n if self.n > 1 else 0: v for e, v in self.c.items()})

    def norm_sq(self):
        """x * conj(x); rational for the values arising here (checked)."""
        return (self * self.conj()).to_rational()

    def inverse(self):
        """Multiplicative inverse via a linear solve in the power basis."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        if self.n == 1:
            return Cyc.from_rational(1 / self.to_rational())
        ell, _ = _prime_power_split(self.n)
        dim = (self.n // ell) * (ell - 1)
        # columns: self * zeta^j expressed in the basis
        cols = []
        for j in range(dim):
            prod = self * Cyc(self.n, {j: Q(1)})
            prod = prod._as_conductor(self.n)
            cols.append([prod.c.get(e, Q(0)) for e in range(dim)])
        # solve sum_j x_j * cols[j] = e_0 by Gaussian elimination
        m = [[cols[j][i] for j in range(dim)] + [Q(1) if i == 0 else Q(0)]
             for i in range(dim)]
        r = 0
        piv_cols = []
        for col in range(dim):
            piv = next((i for i in range(r, dim) if m[i][col] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            pv = m[r][col]
            m[r] = [x / pv for x in m[r]]
            for i in range(dim):
                if i != r and m[i][col] != 0:
                    f = m[i][col]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            piv_cols.append(col)
            r += 1
            if r == dim:
                break
        x = [Q(0)] * dim
        for i, col in enumerate(piv_cols):
            x[col] = m[i][dim]
        return Cyc(self.n, {j: x[j] for j in range(dim) if x[j] != 0})

    def __truediv__(self, other):
        other = Cyc._coerce(other)
        if other.is_rational():
            return self * Cyc.from_rational(1 / other.to_rational())
        return self * other.inverse()

    def _as_conductor(self, n):
        if self.n == n:
            return self
        if self.n == 1:
            return Cyc(n, dict(self.c), _normalized=True)
        s = n // self.n
        return Cyc(n, {e * s: v for e, v in self.c.items()}, _normalized=True)

    # -- comparison / io --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.from_rational(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.c.items()))))

    def __repr__(self):
        if self.is_zero():
            return "0"
        if self.n == 1:
            return rat_to_str(self.to_rational())
        parts = [f"{rat_to_str(v)}*z{self.n}^{e}" for e, v in sorted(self.c.items())]
        return " + ".join(parts)

    def serialize(self):
        """(conductor, [(exponent, "num/den"), ...])"""
        return (self.n, sorted((e, rat_to_str(v)) for e, v in self.c.items()))


def cyclotomic_e(r):
    """e^{2 pi i r} for rational r with prime-power denominator."""
    r = Q(r)
    return Cyc.root_of_unity(r.numerator % r.denominator, r.denominator)


# ----------------------------------------------------------------------
# dense polynomials over Fraction, low degree first
# ----------------------------------------------------------------------

def poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else Q(0)) + (b[i] if i < len(b) else Q(0))
                      for i in range(n)])


def poly_neg(a):
    return [-x for x in a]


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_scale(a, c):
    c = Q(c)
    return poly_trim([x * c for x in a])


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Q(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i in range(len(b)):
            a[k + i] -= c * b[i]
        a.pop()
    return poly_trim(q), poly_trim(a)


def poly_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        a = poly_scale(a, 1 / a[-1])  # monic
    return a


def poly_eval(p, x):
    acc = Q(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


class RationalFunction:
    """num/den with Fraction coefficients; den monic, gcd(num, den) = 1.

    Powers of the variable in the denominator are allowed, so Laurent
    expansions (finitely many negative-degree terms) are representable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = [Q(1)]
        self.num = [Q(c) for c in num]
        self.den = [Q(c) for c in den]
        if not _normalized:
            self._normalize()

    @staticmethod
    def const(c):
        c = Q(c)
        return RationalFunction([c] if c else [])

    @staticmethod
    def monomial(c, k):
        """c * u^k, k may be negative."""
        c = Q(c)
        if c == 0:
            return RationalFunction.const(0)
        if k >= 0:
            return RationalFunction([Q(0)] * k + [c])
        return RationalFunction([c], [Q(0)] * (-k) + [Q(1)])

    def _normalize(self):
        poly_trim(self.num)
        poly_trim(self.den)
        if not self.den:
            raise ZeroDivisionError("zero denominator")
        if not self.num:
            self.den = [Q(1)]
            return
        g = poly_gcd(self.num, self.den)
        if len(g) > 1:
            self.num = poly_divmod(self.num, g)[0]
            self.den = poly_divmod(self.den, g)[0]
        lead = self.den[-1]
        if lead != 1:
            self.num = [c / lead for c in self.num]
            self.den = [c / lead for c in self.den]

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        other = _rf(other)
        return RationalFunction(
            poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den)),
            poly_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(poly_neg(self.num), list(self.den), _normalized=True)

    def __sub__(self, other):
        return self + (-_rf(other))

    def __rsub__(self, other):
        return _rf(other) + (-self)

    def __mul__(self, other):
        other = _rf(other)
        return RationalFunction(poly_mul(self.num, other.num),
                                poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rf(other)
        if other.is_zero():
            raise ZeroDivisionError
        return RationalFunction(poly_mul(self.num, other.den),
                                poly_mul(self.den, other.num))

    def __rtruediv__(self, other):
        return _rf(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return poly_mul(self.num, other.den) == poly_mul(other.num, self.den)

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def evaluate(self, x):
        x = Q(x)
        d = poly_eval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return poly_eval(self.num, x) / d

    def substitute_inverse_scale(self, c):
        """f(u) -> f(1/(c*u)) as an exact rational function."""
        c = Q(c)
        d = max(len(self.num), len(self.den))
        # multiply num and den by (cu)^d: num(1/(cu))*(cu)^d = sum_i num_i c^{d-i} u^{d-i}
        num2 = [Q(0)] * (d + 1)
        for i, a in enumerate(self.num):
            num2[d - i] += a * c ** (d - i)
        den2 = [Q(0)] * (d + 1)
        for i, a in enumerate(self.den):
            den2[d - i] += a * c ** (d - i)
        return RationalFunction(num2, den2)

    def series_coefficients(self, lo, hi):
        """Laurent coefficients c_k for lo <= k < hi (expansion at u = 0)."""
        num, den = list(self.num), list(self.den)
        shift = 0
        while den and den[0] == 0:
            den = den[1:]
            shift -= 1  # num/den = u^{shift} * num/den'
        v = 0
        while num and num[0] == 0:
            num = num[1:]
            shift += 1
        if not num:
            return {k: Q(0) for k in range(lo, hi)}
        inv0 = 1 / den[0]
        coeffs = {}
        state = []  # series coefficients of num/den starting at degree 0
        need = hi - shift
        for k in range(max(0, need)):
            c = (num[k] if k < len(num) else Q(0))
            for j in range(1, min(k, len(den) - 1) + 1):
                c -= den[j] * state[k - j]
            state.append(c * inv0)
        for k in range(lo, hi):
            i = k - shift
            coeffs[k] = state[i] if 0 <= i < len(state) else Q(0)
        return coeffs

    def __repr__(self):
        def fmt(p):
            if not p:
                return "0"
            return " + ".join(f"{rat_to_str(c)}*u^{i}" for i, c in enumerate(p) if c != 0)
        if self.den == [Q(1)]:
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


def _rf(x):
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.const(x)


# ----------------------------------------------------------------------
# C-finite sequences
# ----------------------------------------------------------------------

class CFiniteSequence:
    """Sequence c_k, zero for k < offset, with an explicit prefix and a
    constant-coefficient linear recurrence c_k = sum_j rec[j] * c_{k-1-j}
    valid for all k >= rec_start.

    The prefix must cover [offset, rec_start + order) so every value is
    determined; construction checks the recurrence against any overlap.
    """

    __slots__ = ("offset", "prefix", "rec", "rec_start")

    def __init__(self, offset, prefix, rec=(), rec_start=None):
        self.offset = offset
        self.prefix = [Q(c) for c in prefix]
        self.rec = tuple(Q(c) for c in rec)
        if rec_start is None:
            rec_start = offset + len(self.prefix)
        self.rec_start = rec_start
        if self.rec:
            if self.rec_start > self.offset + len(self.prefix):
                raise ValueError("prefix does not reach the recurrence start")
            # verify the recurrence wherever the stored prefix overlaps it
            for k in range(self.rec_start, self.offset + len(self.prefix)):
                pred = sum(self.rec[j] * self.get(k - 1 - j) for j in range(len(self.rec)))
                if pred != self.get(k):
                    raise ValueError(f"recurrence fails at index {k}")

    def get(self, k):
        if k < self.offset:
            return Q(0)
        i = k - self.offset
        if i < len(self.prefix):
            return self.prefix[i]
        if not self.rec:
            return Q(0)
        # extend by the recurrence (memoized into prefix)
        while len(self.prefix) <= i:
            kk = self.offset + len(self.prefix)
            val = sum(self.rec[j] * self.get(kk - 1 - j) for j in range(len(self.rec)))
            self.prefix.append(val)
        return self.prefix[i]

    def window(self, lo, hi):
        return [self.get(k) for k in range(lo, hi)]

    def __eq__(self, other):
        if not isinstance(other, CFiniteSequence):
            return NotImplemented
        return cfinite_to_genfun(self) == cfinite_to_genfun(other)

    def __repr__(self):
        head = ", ".join(rat_to_str(c) for c in self.window(self.offset, self.offset + 8))
        return f"CFinite(offset={self.offset}, [{head}, ...], rec={self.rec})"


def cfinite_to_genfun(s: CFiniteSequence) -> RationalFunction:
    """Ordinary generating function sum_k c_k u^k (Laurent if offset < 0)."""
    if not s.rec:
        out = RationalFunction.const(0)
        for i, c in enumerate(s.prefix):
            if c:
                out = out + RationalFunction.monomial(c, s.offset + i)
        return out
    m = len(s.rec)
    # A(u) = 1 - rec[0] u - ... - rec[m-1] u^m annihilates the tail
    A = [Q(1)] + [-c for c in s.rec]
    # G * A is a Laurent polynomial supported in [offset, rec_start + m)
    hi = s.rec_start + m
    prod = {}
    for k in range(s.offset, hi):
        tot = Q(0)
        for j in range(m + 1):
            tot += A[j] * s.get(k - j)
        if tot:
            prod[k] = tot
    out = RationalFunction.const(0)
    Arf = RationalFunction(A)
    for k, c in prod.items():
        out = out + RationalFunction.monomial(c, k)
    return out / Arf


def genfun_to_cfinite(f: RationalFunction, offset_hint=None) -> CFiniteSequence:
    """Inverse of cfinite_to_genfun: expand a rational function into a
    C-finite sequence (exact; offset found from the Laurent expansion)."""
    num, den = list(f.num), list(f.den)
    if not num:
        return CFiniteSequence(0, [])
    shift = 0
    while den and den[0] == 0:
        den = den[1:]
        shift -= 1
    while num and num[0] == 0:
        num = num[1:]
        shift += 1
    c0 = den[0]
    den = [c / c0 for c in den]
    num = [c / c0 for c in num]
    m = len(den) - 1
    rec = tuple(-den[j] for j in range(1, m + 1))
    n_pref = max(len(num), m) + m
    state = []
    for k in range(n_pref):
        c = num[k] if k < len(num) else Q(0)
        for j in range(1, min(k, m) + 1):
            c -= den[j] * state[k - j]
        state.append(c)
    rec_start = shift + max(len(num), m)
    return CFiniteSequence(shift, state, rec, rec_start=rec_start)


def detect_linear_recurrence(values, max_order):
    """Find the shortest recurrence c_k = sum rec[j] c_{k-1-j} satisfied by
    the whole list (indices relative to the list). Returns a tuple or None.

    Order 0 (all zero tail) is reported as () when every value is 0.
    """
    n = len(values)
    values = [Q(v) for v in values]
    if all(v == 0 for v in values):
        return ()
    for m in range(1, max_order + 1):
        if n < 2 * m:
            break
        # solve the Hankel system from the first 2m terms, then verify all
        rows = [[values[i + j] for j in range(m)] + [values[i + m]]
                for i in range(n - m)]
        sol = _solve_ls_exact(rows, m)
        if sol is None:
            continue
        ok = True
        for k in range(m, n):
            if sum(sol[j] * values[k - m + j] for j in range(m)) != values[k]:
                ok = False
                break
        if ok:
            # rec[j] multiplies c_{k-1-j}: reverse
            return tuple(reversed(sol))
    return None


def _solve_ls_exact(rows, m):
    """Solve an overdetermined exact linear system (first m unknowns), or None."""
    mat = [list(r) for r in rows]
    piv_rows = []
    used = set()
    col_of = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            col_of.append(None)
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][col]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        col_of.append(r)
        r += 1
    sol = [Q(0)] * m
    for col in range(m):
        if col_of[col] is not None:
            sol[col] = mat[col_of[col]][m]
    # consistency of the remaining rows
    for row in rows:
        if sum(row[j] * sol[j] for j in range(m)) != row[m]:
            return None
    return sol
