"""Special functions: spherical Bessel/Hankel families, Legendre
polynomials, and half-interval Legendre overlap integrals.

The overlap of an even-order and an odd-order Legendre polynomial over
[0, 1] has the closed form

    O(n, l) = P_n(0) P_l'(0) / [l(l+1) - n(n+1)],

obtained by integrating Legendre's equation by parts; the boundary term
survives only at mu = 0 because P_l(0) = 0 for odd l and P_n'(0) = 0 for
even n.
"""

from __future__ import annotations

from . import kernels

_KINDS = ("j", "y", "h1", "h2", "i", "k")


def legendre_p(n: int, mu: float) -> float:
    """Legendre polynomial P_n(mu), mu in [-1, 1]."""
    return float(kernels.legendre_all(n, mu)[n])


def sph_bessel(kind: str, n: int, x: float):
    """Value and d/dx of a spherical Bessel-family function at x > 0.

    kind: 'j', 'y' (ordinary), 'h1', 'h2' (Hankel, complex),
    'i', 'k' (modified first/third kind, k_0 = exp(-x)/x).
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {_KINDS}")
    if kind in ("j", "y", "h1", "h2"):
        j, jp, y, yp = kernels.sph_jy_all(n, x)
        if kind == "j":
            return float(j[n]), float(jp[n])
        if kind == "y":
            return float(y[n]), float(yp[n])
        if kind == "h1":
            return complex(j[n] + 1j * y[n]), complex(jp[n] + 1j * yp[n])
        return complex(j[n] - 1j * y[n]), complex(jp[n] - 1j * yp[n])
    iv, ip, kv, kp = kernels.sph_ik_all(n, x)
    if kind == "i":
        return float(iv[n]), float(ip[n])
    return float(kv[n]), float(kp[n])


def legendre_p0(n: int) -> float:
    """P_n(0) for even n: (-1)^(n/2) (n-1)!!/n!!."""
    if n < 0 or n % 2:
        raise ValueError(f"n must be even and non-negative, got {n}")
    v = 1.0
    for m in range(2, n + 1, 2):
        v *= (m - 1) / m
    return v if (n // 2) % 2 == 0 else -v


def legendre_dp0(l: int) -> float:
    """P_l'(0) for odd l: (-1)^((l-1)/2) l!!/(l-1)!!."""
    if l < 1 or l % 2 == 0:
        raise ValueError(f"l must be odd and positive, got {l}")
    v = 1.0
    for m in range(3, l + 1, 2):
        v *= m / (m - 1)
    return v if ((l - 1) // 2) % 2 == 0 else -v


def overlap(n: int, l: int) -> float:
    """Half-interval overlap integral of P_n and P_l over mu in [0, 1].

    n must be even (>= 0), l odd (>= 1); orders of equal parity are
    rejected because the full-interval orthogonality already fixes them.
    """
    return legendre_p0(n) * legendre_dp0(l) / (l * (l + 1) - n * (n + 1))


class OverlapTable:
    """Precomputed overlap(n, l) for n <= nmax (even), l <= lmax (odd).

    Immutable after construction; lookups outside the table bounds are
    recomputed on demand without mutating the table.
    """

    def __init__(self, nmax: int = 40, lmax: int = 41):
        if nmax < 0 or nmax % 2:
            raise ValueError("nmax must be even and non-negative")
        if lmax < 1 or lmax % 2 == 0:
            raise ValueError("lmax must be odd and positive")
        self.nmax = nmax
        self.lmax = lmax
        self._table = {
            (n, l): overlap(n, l)
            for n in range(0, nmax + 1, 2)
            for l in range(1, lmax + 1, 2)
        }

    def get(self, n: int, l: int) -> float:
        try:
            return self._table[(n, l)]
        except KeyError:
            return overlap(n, l)

    def __len__(self) -> int:
        return len(self._table)
