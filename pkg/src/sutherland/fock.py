"""Finite charge/level sectors of the bosonic collective-field algebra.

The oscillator modes obey [rho(m), rho(n)] = m delta(m, -n); negative
modes create, rho(n) Omega = 0 for n >= 0, and Q counts charge.  A
sector is spanned by partition-labelled monomials R^c rho(-mu_1) ...
rho(-mu_k) Omega with total level <= L; that basis is orthogonal with
norm^2 = prod_k k^{m_k} m_k! over part multiplicities.

All operators built here conserve both charge and level, so their
truncated matrices are exact, not approximations: annihilators act
first, creators restore exactly the level that was removed.

Scalars live in the quadratic extension Q(sqrt(lambda)) since the cubic
collective Hamiltonian carries odd powers of sqrt(lambda); Quad keeps
them exact, and CQuad adds the imaginary unit needed while expanding the
shift generating functional.  The generating-functional route rebuilds
H_n (n <= 3) from vertex-operator data alone and must reproduce the
directly constructed matrices; the vertex product is normal ordered
(creation exponential on the left), which is the only reading of the
two half-field exponentials that yields finite coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _exact_sqrt(x: Fraction):
    """sqrt(x) as a Fraction when x is a perfect square, else None."""
    if x < 0:
        return None
    pn, pd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


class Quad:
    """Exact scalar p + r sqrt(lam) with Fraction components.

    When lam is a perfect square the radical part folds into the
    rational part, so equality is componentwise in all cases.
    """

    __slots__ = ("p", "r", "lam")

    def __init__(self, p, r, lam):
        lam = Fraction(lam)
        p, r = Fraction(p), Fraction(r)
        if r != 0:
            root = _exact_sqrt(lam)
            if root is not None:
                p, r = p + r * root, _ZERO
        self.p, self.r, self.lam = p, r, lam

    def _coerce(self, other):
        if isinstance(other, Quad):
            if other.lam != self.lam:
                raise ValueError("mixing scalars over different couplings")
            return other
        return Quad(other, 0, self.lam)

    def __add__(self, other):
        o = self._coerce(other)
        return Quad(self.p + o.p, self.r + o.r, self.lam)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Quad(self.p - o.p, self.r - o.r, self.lam)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Quad(
            self.p * o.p + self.r * o.r * self.lam,
            self.p * o.r + self.r * o.p,
            self.lam,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return Quad(-self.p, -self.r, self.lam)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.p == other and self.r == 0
        return (
            isinstance(other, Quad)
            and self.lam == other.lam
            and self.p == other.p
            and self.r == other.r
        )

    def __hash__(self):
        return hash((self.p, self.r, self.lam))

    def __float__(self):
        return float(self.p) + float(self.r) * math.sqrt(float(self.lam))

    def __repr__(self):
        if self.r == 0:
            return f"Quad({self.p})"
        return f"Quad({self.p} + {self.r} sqrt({self.lam}))"


class CQuad:
    """Complex scalar over Quad: re + i im."""

    __slots__ = ("re", "im")

    def __init__(self, re: Quad, im: Quad):
        self.re, self.im = re, im

    def __add__(self, other):
        return CQuad(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return CQuad(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return CQuad(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, f):
        return CQuad(self.re * f, self.im * f)

    def __neg__(self):
        return CQuad(-self.re, -self.im)

    def __eq__(self, other):
        return isinstance(other, CQuad) and self.re == other.re and self.im == other.im

    def is_zero(self):
        return self.re.p == 0 and self.re.r == 0 and self.im.p == 0 and self.im.r == 0

    def __repr__(self):
        return f"CQuad({self.re!r}, {self.im!r})"


# ---------------------------------------------------------------------------
# Sectors.
# ---------------------------------------------------------------------------

MAX_LEVEL = 12


def _partitions(total):
    """Partitions of `total` as non-increasing tuples."""
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, cap), 0, -1):
            rec(rest - part, part, acc + [part])

    rec(total, total if total else 1, [])
    return out


def _norm_sq(mu) -> Fraction:
    out = _ONE
    for part in set(mu):
        k = mu.count(part)
        out *= Fraction(part) ** k * factorial(k)
    return out


@dataclass(frozen=True)
class FockSector:
    """Charge-c states R^c rho(-mu_1)...rho(-mu_k) Omega with sum(mu) <= L."""

    charge: int
    max_level: int
    basis: tuple
    inner_products: tuple  # diagonal Gram entries, one per basis state

    @property
    def dim(self):
        return len(self.basis)

    def index(self, mu):
        return self._index[tuple(mu)]

    def level(self, i):
        return sum(self.basis[i])

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {mu: i for i, mu in enumerate(self.basis)}
        )


def build_sector(c: int, L: int) -> FockSector:
    """Enumerate the level-graded partition basis and its Gram form."""
    if L > MAX_LEVEL:
        raise ValueError(f"level cutoff {L} exceeds the desk-scale cap {MAX_LEVEL}")
    if L < 0:
        raise ValueError("level cutoff must be non-negative")
    basis = []
    for level in range(L + 1):
        basis.extend(sorted(_partitions(level)))
    basis = tuple(basis)
    return FockSector(c, L, basis, tuple(_norm_sq(mu) for mu in basis))


@dataclass(frozen=True)
class SectorOperator:
    """Dense matrix in the partition basis; matrix[i][j] = <i-component of Op e_j>."""

    sector: FockSector
    matrix: tuple
    level_shift: int = 0

    def entry(self, mu_out, mu_in):
        return self.matrix[self.sector.index(mu_out)][self.sector.index(mu_in)]

    def is_level_preserving(self) -> bool:
        s = self.sector
        return all(
            self.matrix[i][j] == 0
            for i in range(s.dim)
            for j in range(s.dim)
            if s.level(i) != s.level(j)
        )

    def is_gram_symmetric(self) -> bool:
        """Self-adjointness w.r.t. the Gram form: G M == (G M)^T."""
        s, m = self.sector, self.matrix
        g = s.inner_products
        return all(
            g[i] * m[i][j] == g[j] * m[j][i]
            for i in range(s.dim)
            for j in range(i + 1, s.dim)
        )


def _zero_matrix(dim, lam):
    z = Quad(0, 0, lam)
    return [[z for _ in range(dim)] for _ in range(dim)]


def _freeze(rows):
    return tuple(tuple(row) for row in rows)


def compose(A: SectorOperator, B: SectorOperator) -> SectorOperator:
    if A.sector is not B.sector and A.sector != B.sector:
        raise ValueError("operators live on different sectors")
    dim = A.sector.dim
    lam = A.matrix[0][0].lam if dim else _ONE
    out = _zero_matrix(dim, lam)
    for i in range(dim):
        for k in range(dim):
            a = A.matrix[i][k]
            if a == 0:
                continue
            rowb = B.matrix[k]
            for j in range(dim):
                if rowb[j] == 0:
                    continue
                out[i][j] = out[i][j] + a * rowb[j]
    return SectorOperator(A.sector, _freeze(out), A.level_shift + B.level_shift)


def commutator(A: SectorOperator, B: SectorOperator) -> SectorOperator:
    AB, BA = compose(A, B), compose(B, A)
    rows = [
        [AB.matrix[i][j] - BA.matrix[i][j] for j in range(A.sector.dim)]
        for i in range(A.sector.dim)
    ]
    return SectorOperator(A.sector, _freeze(rows), 0)


def frobenius_norm(A: SectorOperator) -> float:
    return math.sqrt(
        sum(float(x) ** 2 for row in A.matrix for x in row)
    )


def is_zero_operator(A: SectorOperator) -> bool:
    return all(x == 0 for row in A.matrix for x in row)


# ---------------------------------------------------------------------------
# Mode actions on partition monomials.
# ---------------------------------------------------------------------------


def _annihilate(mu, modes):
    """Apply prod rho(m) for m in modes; None if a mode finds no part."""
    parts = list(mu)
    coef = _ONE
    for m in modes:
        cnt = parts.count(m)
        if cnt == 0:
            return None
        coef *= m * cnt
        parts.remove(m)
    parts.sort(reverse=True)
    return coef, tuple(parts)


def _create(mu, modes):
    return tuple(sorted(list(mu) + list(modes), reverse=True))


# ---------------------------------------------------------------------------
# Direct operator builders.
# ---------------------------------------------------------------------------


def op_H0(sector: FockSector, lam) -> SectorOperator:
    """Diagonal lam c^2 / 2 + level."""
    lam = Fraction(lam)
    rows = _zero_matrix(sector.dim, lam)
    for i, mu in enumerate(sector.basis):
        rows[i][i] = Quad(lam * sector.charge**2 / 2 + sum(mu), 0, lam)
    return SectorOperator(sector, _freeze(rows))


def op_C(sector: FockSector, lam=1) -> SectorOperator:
    """Diagonal sum of squared parts, from sum_n n rho(-n) rho(n)."""
    lam = Fraction(lam)
    rows = _zero_matrix(sector.dim, lam)
    for i, mu in enumerate(sector.basis):
        rows[i][i] = Quad(sum(p * p for p in mu), 0, lam)
    return SectorOperator(sector, _freeze(rows))


def _apply_mode_term(rows, sector, col, mu, scalar, creators, annihilators):
    r = _annihilate(mu, annihilators)
    if r is None:
        return
    coef, tau = r
    sigma = _create(tau, creators)
    if sum(sigma) > sector.max_level:
        return
    i = sector.index(sigma)
    rows[i][col] = rows[i][col] + scalar * coef


def op_W3(sector: FockSector, lam) -> SectorOperator:
    """Cubic collective operator: one third of the zero-frequency part of
    the normal-ordered cube of the boson field, zero mode sqrt(lam) Q."""
    lam = Fraction(lam)
    L, c = sector.max_level, sector.charge
    rows = _zero_matrix(sector.dim, lam)
    root = Quad(0, 1, lam)
    third = Fraction(1, 3)
    triples = [
        (p, q, r)
        for p in range(-L, L + 1)
        for q in range(-L, L + 1)
        for r in (-p - q,)
        if -L <= r <= L
    ]
    for col, mu in enumerate(sector.basis):
        for p, q, r in triples:
            idx = (p, q, r)
            zeros = idx.count(0)
            scalar = Quad(third, 0, lam)
            for _ in range(zeros):
                scalar = scalar * root * c
            annihilators = sorted(m for m in idx if m > 0)
            if sum(annihilators) > sum(mu):
                continue
            creators = sorted((-m for m in idx if m < 0), reverse=True)
            _apply_mode_term(rows, sector, col, mu, scalar, creators, annihilators)
    return SectorOperator(sector, _freeze(rows))


def op_H(sector: FockSector, lam, zero_mode_offset=0) -> SectorOperator:
    """sqrt(lam) W3 - ((3 lam - 2)/12) Q + (1 - lam) C, plus an optional
    per-charge scalar offset.

    The offset calibrates the zero-mode ordering convention; fitting it
    so that the level-0 eigenvalue equals the constant-label energy at
    lam = 1 and lam = 2 gives exactly zero, which is the default.  At
    other couplings the raw level-0 value is lam^2 c^3 / 3 -
    (3 lam - 2) c / 12, which exceeds the constant-label energy by
    c (lam - 1)(lam - 2) / 12; that residual is deliberately surfaced
    by the tests rather than hidden here.
    """
    lam = Fraction(lam)
    root = Quad(0, 1, lam)
    w3 = op_W3(sector, lam)
    cop = op_C(sector, lam)
    rows = [
        [root * w3.matrix[i][j] + (1 - lam) * cop.matrix[i][j] for j in range(sector.dim)]
        for i in range(sector.dim)
    ]
    shift = Fraction(zero_mode_offset) - Fraction(3 * lam - 2, 12) * sector.charge
    for i in range(sector.dim):
        rows[i][i] = rows[i][i] + shift
    return SectorOperator(sector, _freeze(rows))


def op_H3(sector: FockSector, lam) -> SectorOperator:
    """Level-preserving matrix of the third-order collective operator.

    Local line: (lam/4) :rho^4: + (1/4) :(rho')^2: - ((3 lam - 2)/8)
    :rho^2:, all at zero total frequency.  Non-local corrections:
    -3 lam (lam - 1) Q C plus the mixed cubic terms
    -(3/2) sqrt(lam) (lam - 1) sum_k k [rho(-k) sum_{a+b=k} rho(a) rho(b)
    + sum_{a+b=k} rho(-a) rho(-b) rho(k)] and
    ((2 lam - 1)(lam - 1)/2) sum_k k^2 rho(-k) rho(k).
    """
    lam = Fraction(lam)
    L, c = sector.max_level, sector.charge
    rows = _zero_matrix(sector.dim, lam)
    root = Quad(0, 1, lam)

    quads = [
        (p, q, r, s)
        for p in range(-L, L + 1)
        for q in range(-L, L + 1)
        for r in range(-L, L + 1)
        for s in (-p - q - r,)
        if -L <= s <= L
    ]
    quarter_lam = Fraction(lam, 4)
    for col, mu in enumerate(sector.basis):
        lv = sum(mu)
        # (lam/4) :rho^4: zero-frequency part
        for idx in quads:
            zeros = idx.count(0)
            annihilators = sorted(m for m in idx if m > 0)
            if sum(annihilators) > lv:
                continue
            scalar = Quad(quarter_lam, 0, lam)
            for _ in range(zeros):
                scalar = scalar * root * c
            creators = sorted((-m for m in idx if m < 0), reverse=True)
            _apply_mode_term(rows, sector, col, mu, scalar, creators, annihilators)
        # mixed cubic corrections
        pref = Quad(0, Fraction(-3, 2) * (lam - 1), lam)
        for k in range(2, lv + 1):
            for a in range(1, k):
                b = k - a
                _apply_mode_term(
                    rows, sector, col, mu, pref * k, sorted((k,), reverse=True), [a, b]
                )
                _apply_mode_term(
                    rows, sector, col, mu, pref * k, sorted((a, b), reverse=True), [k]
                )
    # diagonal pieces
    for i, mu in enumerate(sector.basis):
        lv = sum(mu)
        cubes = sum(p**3 for p in mu)
        sq = sum(p * p for p in mu)
        d = (
            Fraction(1, 2) * cubes
            - Fraction(3 * lam - 2, 8) * lam * c * c
            - Fraction(3 * lam - 2, 4) * lv
            - 3 * lam * (lam - 1) * c * sq
            + Fraction((2 * lam - 1) * (lam - 1), 2) * cubes
        )
        rows[i][i] = rows[i][i] + d
    return SectorOperator(sector, _freeze(rows))


# ---------------------------------------------------------------------------
# Exact univariate polynomial helpers (coefficient lists, degree-capped).
# ---------------------------------------------------------------------------


def _pf_trim(p, D):
    return (list(p) + [_ZERO] * (D + 1))[: D + 1]


def _pf_add(p, q):
    return [a + b for a, b in zip(p, q)]

def _pf_scale(p, f):
    return [a * f for a in p]


def _pf_mul(p, q, D):
    out = [_ZERO] * (D + 1)
    for i, a in enumerate(p):
        if a == 0 or i > D:
            continue
        for j, b in enumerate(q):
            if i + j > D:
                break
            if b != 0:
                out[i + j] += a * b
    return out


def _pf_inv(p, D):
    """Reciprocal of a series with constant term 1."""
    assert p[0] == 1
    out = [_ZERO] * (D + 1)
    out[0] = _ONE
    for t in range(1, D + 1):
        acc = _ZERO
        for i in range(1, t + 1):
            if i < len(p):
                acc += p[i] * out[t - i]
        out[t] = -acc
    return out


def _series_sin(D, half=False):
    s = Fraction(1, 2) if half else _ONE
    out = [_ZERO] * (D + 1)
    for k in range(0, (D - 1) // 2 + 1):
        t = 2 * k + 1
        out[t] = Fraction((-1) ** k, factorial(t)) * s**t
    return out


def _series_cos(D, half=False):
    s = Fraction(1, 2) if half else _ONE
    out = [_ZERO] * (D + 1)
    for k in range(0, D // 2 + 1):
        t = 2 * k
        out[t] = Fraction((-1) ** k, factorial(t)) * s**t
    return out


def _series_tan_half(D):
    return _pf_mul(_series_sin(D, half=True), _pf_inv(_series_cos(D, half=True), D), D)


def _series_cos_half_pow(lam, D):
    """cos(a/2)^lam = exp(lam log cos(a/2)), exact in Fraction."""
    cosm1 = _series_cos(D, half=True)
    cosm1[0] = _ZERO
    # log(1 + u) with u = cos - 1 = O(a^2)
    logc = [_ZERO] * (D + 1)
    upow = [_ONE] + [_ZERO] * D
    for t in range(1, D // 2 + 1):
        upow = _pf_mul(upow, cosm1, D)
        logc = _pf_add(logc, _pf_scale(upow, Fraction((-1) ** (t + 1), t)))
    logc = _pf_scale(logc, Fraction(lam))
    out = [_ONE] + [_ZERO] * D
    term = [_ONE] + [_ZERO] * D
    for t in range(1, D + 1):
        term = _pf_scale(_pf_mul(term, logc, D), Fraction(1, t))
        out = _pf_add(out, term)
    return out


def _gen_binom(lam, j) -> Fraction:
    lam = Fraction(lam)
    out = _ONE
    for i in range(j):
        out *= lam - i
    return out / factorial(j)


def genfun_coeffs(lam, order: int):
    """Shift-functional weight polynomials (w, v) through a-degree `order`.

    v_k(a) expands the k-th derivative kernel: coefficients of
    (2 arctan c)^k / (1 + c^2) paired with generalized binomials of lam
    against powers of -tan(a/2); w solves w_0 = 1,
    w_s = -sum_{k<s} v_{s-k} w_k.  Both families are exact Fraction
    series, and w_s = O(a^s) because v_k = O(a^k).
    """
    if order > 8:
        raise ValueError("a-degree capped at 8")
    lam = Fraction(lam)
    D = order
    tanh = _series_tan_half(D)
    # N_k(c) = (2 arctan c)^k / (1 + c^2), coefficients through c^D
    inv1c2 = [_ZERO] * (D + 1)
    for k in range(0, D // 2 + 1):
        inv1c2[2 * k] = Fraction((-1) ** k)
    atan2 = [_ZERO] * (D + 1)
    for k in range(0, (D - 1) // 2 + 1):
        atan2[2 * k + 1] = Fraction(2 * (-1) ** k, 2 * k + 1)
    v = []
    nk = inv1c2
    minus_tan_pow = {0: [_ONE] + [_ZERO] * D}
    for ell in range(1, D + 1):
        minus_tan_pow[ell] = _pf_mul(
            minus_tan_pow[ell - 1], _pf_scale(tanh, Fraction(-1)), D
        )
    for k in range(0, D + 1):
        if k > 0:
            nk = _pf_mul(nk, atan2, D)
        vk = [_ZERO] * (D + 1)
        for ell in range(k, D + 1):
            coef = _gen_binom(lam, ell + 1) * nk[ell]
            if coef != 0:
                vk = _pf_add(vk, _pf_scale(minus_tan_pow[ell], coef))
        vk = _pf_scale(vk, Fraction(1, lam * factorial(k)))
        v.append(vk)
    w = [[_ONE] + [_ZERO] * D]
    for s in range(1, D + 1):
        acc = [_ZERO] * (D + 1)
        for k in range(s):
            acc = _pf_add(acc, _pf_mul(v[s - k], w[k], D))
        w.append(_pf_scale(acc, Fraction(-1)))
    return w, v


# ---------------------------------------------------------------------------
# Generating-functional route to the H_n matrices.
# ---------------------------------------------------------------------------


def _cq(lam, p=0, r=0, ip=0, ir=0):
    return CQuad(Quad(p, r, lam), Quad(ip, ir, lam))


def _pc_zero(lam, D):
    return [_cq(lam)] * (D + 1)


def _pc_add(p, q):
    return [a + b for a, b in zip(p, q)]


def _pc_mul(p, q, D, lam):
    out = [_cq(lam) for _ in range(D + 1)]
    for i, a in enumerate(p):
        if i > D or a.is_zero():
            continue
        for j, b in enumerate(q):
            if i + j > D:
                break
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return out


def _mode_series(m, sign, lam, D):
    """-i sqrt(lam) h_{sign m}(a) with h_n(a) = (e^{i n a} - 1)/(i n)."""
    out = [_cq(lam) for _ in range(D + 1)]
    # h: coefficient of a^t is (i sign m)^{t-1} / t!
    re_part, im_part = _ONE, _ZERO  # (i sign m)^{t-1}, t = 1
    for t in range(1, D + 1):
        f = Fraction(1, factorial(t))
        # multiply by -i sqrt(lam): (re + i im) -> sqrt(lam) (im - i re)
        out[t] = _cq(lam, r=im_part * f, ir=-re_part * f)
        re_part, im_part = -im_part * sign * m, re_part * sign * m
    return out


def _exp_mode_dict(sector, sign, lam, D):
    """Multiset expansion of exp(sum_m coeff_m(a) rho(sign m)), modes 1..L."""
    table = {(): [_cq(lam, p=1)] + [_cq(lam)] * D}
    for m in range(1, sector.max_level + 1):
        base = _mode_series(m, sign, lam, D)
        powt = [_cq(lam, p=1)] + [_cq(lam)] * D
        additions = []
        for t in range(1, D + 1):
            powt = _pc_mul(powt, base, D, lam)
            if all(x.is_zero() for x in powt):
                break
            additions.append((t, [x.scale(Fraction(1, factorial(t))) for x in powt]))
        new = dict(table)
        for key, poly in table.items():
            for t, pw in additions:
                nk = tuple(sorted(key + (m,) * t))
                contrib = _pc_mul(poly, pw, D, lam)
                if all(x.is_zero() for x in contrib):
                    continue
                if nk in new:
                    new[nk] = _pc_add(new[nk], contrib)
                else:
                    new[nk] = contrib
        table = new
    return table


def _deriv_factor(sector, s, lam, D):
    """Multiset expansion of the s-th derivative prefactor of the
    annihilation exponential: 1, B', or B'^2 + B'' built from
    B^{(r)} = sum_m (i m)^r coeff_m(a) rho(m)."""
    one = {(): [_cq(lam, p=1)] + [_cq(lam)] * D}
    if s == 0:
        return one

    # B^{(r)} carries an extra (i m)^r per mode relative to the exponent
    def b_r(r):
        d = {}
        for m in range(1, sector.max_level + 1):
            base = _mode_series(m, +1, lam, D)
            re_f, im_f = _ONE, _ZERO
            for _ in range(r):
                re_f, im_f = -im_f * m, re_f * m
            fac = _cq(lam, p=re_f, ip=im_f)
            d[(m,)] = [fac * x for x in base]
        return d

    def d_mul(d1, d2):
        out = {}
        for k1, p1 in d1.items():
            for k2, p2 in d2.items():
                nk = tuple(sorted(k1 + k2))
                contrib = _pc_mul(p1, p2, D, lam)
                if nk in out:
                    out[nk] = _pc_add(out[nk], contrib)
                else:
                    out[nk] = contrib
        return out

    if s == 1:
        return b_r(1)
    if s == 2:
        out = d_mul(b_r(1), b_r(1))
        for key, poly in b_r(2).items():
            if key in out:
                out[key] = _pc_add(out[key], poly)
            else:
                out[key] = poly
        return out
    raise ValueError("derivative order above 2 is never needed for n <= 3")


def genfun_operator(n: int, sector: FockSector, lam) -> SectorOperator:
    """H_n (n <= 3) extracted from the shift generating functional.

    Assembles sum_s f_s(a) [integral of V_- d^s V_+ minus the s = 0
    identity] on the sector, with f_s = i w_s(a) / (2 cos(a/2)^lam
    tan(a/2) lam), and reads off n! i^n times the a^n coefficient.  The
    x-integral forces created and annihilated level to match, so the
    truncated matrices are exact; the result must be real, which is
    asserted.
    """
    if not 0 <= n <= 3:
        raise ValueError("only the first four operators are desk-verifiable")
    lam = Fraction(lam)
    D = n + 1  # working in a * W(a), regular at the origin
    c = sector.charge
    w, _v = genfun_coeffs(lam, D)
    # u(a)/a = 2 lam cos(a/2)^lam tan(a/2) / a, constant term 1
    u = _pf_scale(
        _pf_mul(_series_cos_half_pow(lam, D + 1), _series_tan_half(D + 1), D + 1),
        2 * Fraction(lam),
    )
    # u = lam a (1 + ...); the trailing 1/lam is folded into g_s below
    u_shift = _pf_scale(u[1 : D + 2], Fraction(1, lam))
    assert u_shift[0] == 1
    uinv = _pf_inv(u_shift, D)

    # zero-mode scalar exp(-i lam c a) from both vertex halves
    e0 = [_cq(lam) for _ in range(D + 1)]
    re_f, im_f = _ONE, _ZERO
    for t in range(0, D + 1):
        e0[t] = _cq(lam, p=re_f * Fraction(1, factorial(t)), ip=im_f * Fraction(1, factorial(t)))
        re_f, im_f = im_f * lam * c, -re_f * lam * c

    cre = _exp_mode_dict(sector, -1, lam, D)
    cre_by_sum = {}
    for key, poly in cre.items():
        cre_by_sum.setdefault(sum(key), []).append((key, poly))

    dim = sector.dim
    acc = [[_pc_zero(lam, D) for _ in range(dim)] for _ in range(dim)]
    ann_exp = _exp_mode_dict(sector, +1, lam, D)
    for s in range(0, max(1, n)):
        # g_s = i a w_s / u as a regular series
        gs_f = _pf_mul(w[s], uinv, D)
        gs = [_cq(lam, ip=x * Fraction(1, lam)) for x in gs_f]
        dfac = _deriv_factor(sector, s, lam, D)
        ann = {}
        for k1, p1 in dfac.items():
            for k2, p2 in ann_exp.items():
                nk = tuple(sorted(k1 + k2))
                contrib = _pc_mul(p1, p2, D, lam)
                if all(x.is_zero() for x in contrib):
                    continue
                if nk in ann:
                    ann[nk] = _pc_add(ann[nk], contrib)
                else:
                    ann[nk] = contrib
        for col, mu in enumerate(sector.basis):
            for modes, pa in ann.items():
                r = _annihilate(mu, modes)
                if r is None:
                    continue
                coefa, tau = r
                for key, pc in cre_by_sum.get(sum(modes), []):
                    sigma = _create(tau, key)
                    i = sector.index(sigma)
                    term = _pc_mul(pa, pc, D, lam)
                    term = [x.scale(coefa) for x in term]
                    term = _pc_mul(term, e0, D, lam)
                    if s == 0 and not modes and not key:
                        term[0] = term[0] - _cq(lam, p=1)
                    term = _pc_mul(term, gs, D, lam)
                    acc[i][col] = _pc_add(acc[i][col], term)

    # H_n = n! i^n [a^{n+1}] (a W(a))
    re_f, im_f = Fraction(factorial(n)), _ZERO
    for _ in range(n):
        re_f, im_f = -im_f, re_f
    rows = _zero_matrix(dim, lam)
    for i in range(dim):
        for j in range(dim):
            val = acc[i][j][n + 1]
            out = CQuad(val.re * re_f - val.im * im_f, val.re * im_f + val.im * re_f)
            if not (out.im.p == 0 and out.im.r == 0):
                raise AssertionError(
                    f"generating functional produced a complex entry {out!r} "
                    f"at ({i},{j}) for n={n}"
                )
            rows[i][j] = out.re
    return SectorOperator(sector, _freeze(rows))
