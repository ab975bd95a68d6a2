"""Unperturbed spectrum bookkeeping for N particles with coupling lam.

A state is labelled by a weakly decreasing integer vector n of length N.
Its pseudo-momenta are

    nt_j = n_j + lam * (2N + 1 - 2j) / 2,   j = 1..N,

and the bare energy is sum_j nt_j^2.  All hop moves conserve sum(n), so
excited labels m reachable from n live on the hyperplane sum(m) = sum(n);
their distance from n is measured by the raise degree

    raise(m) = sum_j j * (n_j - m_j) >= 0,

equivalently the sum of the prefix coordinates

    P_t(m) = sum_{j<=t} (m_j - n_j),   t = 1..N-1,

which are all >= 0 exactly on the set reachable by repeated two-site
transfers n -> n + nu*(e_j - e_k), j < k, nu >= 1 (each such transfer
raises the degree by nu*(k-j)).

Exact arithmetic: integer or Fraction lam propagates as Fraction.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import AdmissibilityError


def _scalar(lam):
    """Fraction for exact inputs, float otherwise."""
    if isinstance(lam, (int, Fraction)):
        return Fraction(lam)
    return float(lam)


def is_admissible(n) -> bool:
    n = list(n)
    if not n or any(v != int(v) for v in n):
        return False
    return all(n[j] >= n[j + 1] for j in range(len(n) - 1))


def check_admissible(n) -> tuple:
    n = tuple(int(v) for v in n)
    if len(n) == 0:
        raise AdmissibilityError("momentum vector must be nonempty")
    if not is_admissible(n):
        raise AdmissibilityError(f"momentum vector must be weakly decreasing, got {n}")
    return n


def coupling(lam):
    """Pair-potential strength 2 lam (lam - 1)."""
    lam = _scalar(lam)
    return 2 * lam * (lam - 1)


def pseudo_momenta(n, lam) -> tuple:
    lam = _scalar(lam)
    n = tuple(n)
    N = len(n)
    return tuple(n[j] + lam * (2 * N + 1 - 2 * (j + 1)) / 2 for j in range(N))


def bare_energy(n, lam):
    """sum of squared pseudo-momenta."""
    return sum(v * v for v in pseudo_momenta(n, lam))


def energy_gap(m, n, lam):
    """bare_energy(m) - bare_energy(n), exact for exact lam.

    Vanishes iff m is a resonant partner of n (or m == n).
    """
    lam = _scalar(lam)
    m, n = tuple(m), tuple(n)
    if len(m) != len(n):
        raise ValueError("length mismatch")
    N = len(n)
    out = 0 * lam
    for j in range(N):
        b2 = lam * (2 * N + 1 - 2 * (j + 1))  # twice the j-th offset
        out += (m[j] - n[j]) * (m[j] + n[j] + b2)
    return out


def apply_moves(n, mu) -> tuple:
    """m = n + sum_{j<k} mu_{jk} (e_j - e_k), mu a {(j, k): count} map, 1-based."""
    n = tuple(n)
    N = len(n)
    m = list(n)
    for (j, k), w in mu.items():
        if not 1 <= j < k <= N:
            raise ValueError(f"move indices must satisfy 1 <= j < k <= N, got ({j}, {k})")
        m[j - 1] += w
        m[k - 1] -= w
    return tuple(m)


def energy_shift(n, mu, lam):
    """Closed form for bare_energy(n + moves) - bare_energy(n).

    mu maps pairs (j, k), 1 <= j < k <= N, to non-negative weights:

        sum_j ( 2 sum_{k>j} mu_{jk} [n_j - n_k + (k-j) lam]
                + [sum_{k<j} mu_{kj} - sum_{k>j} mu_{jk}]^2 ).

    Every summand is positive for admissible n and nonzero mu, which is
    what rules out zero denominators in the series construction.
    """
    lam = _scalar(lam)
    n = tuple(n)
    N = len(n)
    for (j, k), w in mu.items():
        if not 1 <= j < k <= N:
            raise ValueError(f"move indices must satisfy 1 <= j < k <= N, got ({j}, {k})")
        if w < 0:
            raise ValueError(f"move weights must be non-negative, got mu[{(j, k)}] = {w}")
    out = 0 * lam
    for j in range(1, N + 1):
        for k in range(j + 1, N + 1):
            out += 2 * mu.get((j, k), 0) * (n[j - 1] - n[k - 1] + (k - j) * lam)
        net = sum(mu.get((k, j), 0) for k in range(1, j)) - sum(
            mu.get((j, k), 0) for k in range(j + 1, N + 1)
        )
        out += net * net
    return out


def com_shift(n_tilde, p):
    """Shift all pseudo-momenta by -p and return (shifted vector, energy).

    Documents the center-of-mass convention: p = N lam / 2 relates the
    at-rest convention used here to the unshifted one.
    """
    shifted = tuple(v - p for v in n_tilde)
    return shifted, sum(v * v for v in shifted)


def raise_degree(m, n) -> int:
    """sum_j j (n_j - m_j); each two-site transfer raises it by nu*(k-j) >= 1."""
    m, n = tuple(m), tuple(n)
    if len(m) != len(n):
        raise ValueError("length mismatch")
    if sum(m) != sum(n):
        raise ValueError(f"total momentum mismatch: sum{m} != sum{n}")
    return sum((j + 1) * (n[j] - m[j]) for j in range(len(n)))


def prefix_coords(m, n) -> tuple:
    """P_t = sum_{j<=t}(m_j - n_j), t = 1..N-1; bijective with m at fixed sum."""
    m, n = tuple(m), tuple(n)
    if len(m) != len(n):
        raise ValueError("length mismatch")
    if sum(m) != sum(n):
        raise ValueError(f"total momentum mismatch: sum{m} != sum{n}")
    run, out = 0, []
    for j in range(len(n) - 1):
        run += m[j] - n[j]
        out.append(run)
    return tuple(out)


def from_prefix(P, n) -> tuple:
    """Inverse of prefix_coords: m_t = n_t + (P_t - P_{t-1}), P_0 = P_N = 0."""
    n = tuple(n)
    P = (0,) + tuple(P) + (0,)
    if len(P) != len(n) + 1:
        raise ValueError("prefix vector must have length N - 1")
    return tuple(n[t] + (P[t + 1] - P[t]) for t in range(len(n)))
