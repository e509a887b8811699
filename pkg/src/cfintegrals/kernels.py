"""Hot numeric kernels.

Two kernels live here: the (a, b)-grid scan behind the pi-integral
parameter search, and the adaptive Simpson quadrature used as a numeric
oracle.  Each has a numba ``@njit`` build and a fallback (vectorized numpy
for the scan, plain Python for the quadrature).  Set
``CFINTEGRALS_DISABLE_NUMBA=1`` to force the fallback; it is also used
automatically when numba is not importable.

The scan works on int64, so callers must check :func:`scan_fits_int64`
first and use an exact path otherwise.
"""

from __future__ import annotations

import math
import os

import numpy as np

DISABLE_ENV = "CFINTEGRALS_DISABLE_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is installed in CI
    numba = None
    HAVE_NUMBA = False


def numba_disabled_by_env() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in ("1", "true", "yes", "on")


def default_backend() -> str:
    """``"numba"`` when available and not disabled, else ``"numpy"``."""
    if HAVE_NUMBA and not numba_disabled_by_env():
        return "numba"
    return "numpy"


def _resolve(backend: str | None) -> str:
    backend = backend or default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


def _maybe_njit(fn):
    if HAVE_NUMBA:
        return numba.njit(nogil=True, cache=False)(fn)
    return None


# -- grid scan ----------------------------------------------------------------

INT64_LIMIT = 2**62


def scan_fits_int64(row_a, row_b, max_coeff: int) -> bool:
    """True when every partial sum the scan forms stays inside int64."""
    bound = max(sum(abs(int(x)) for x in row_a), sum(abs(int(x)) for x in row_b))
    return bound * max(max_coeff, 1) < INT64_LIMIT


def _scan_loop(a0, a1, a2, b0, b1, b2, max_coeff, out):
    # Integer (a, b, c) in [0, max_coeff]^3 with a0*a+a1*b+a2*c == 0 and
    # b0*a+b1*b+b2*c == 0.  c is solved for, not enumerated.
    count = 0
    cap = out.shape[0]
    for a in range(max_coeff + 1):
        for b in range(max_coeff + 1):
            ra = a * a0 + b * a1
            rb = a * b0 + b * b1
            if a2 != 0:
                if ra % a2 != 0:
                    continue
                c = -ra // a2
                if c < 0 or c > max_coeff or rb + c * b2 != 0:
                    continue
                if count < cap:
                    out[count, 0] = a
                    out[count, 1] = b
                    out[count, 2] = c
                count += 1
            elif b2 != 0:
                if ra != 0 or rb % b2 != 0:
                    continue
                c = -rb // b2
                if c < 0 or c > max_coeff:
                    continue
                if count < cap:
                    out[count, 0] = a
                    out[count, 1] = b
                    out[count, 2] = c
                count += 1
            else:
                if ra != 0 or rb != 0:
                    continue
                for c in range(max_coeff + 1):
                    if count < cap:
                        out[count, 0] = a
                        out[count, 1] = b
                        out[count, 2] = c
                    count += 1
    return count


_scan_loop_nb = _maybe_njit(_scan_loop)


def _scan_numba(row_a, row_b, max_coeff: int) -> np.ndarray:
    cap = 64
    while True:
        out = np.empty((cap, 3), dtype=np.int64)
        count = _scan_loop_nb(*(int(x) for x in row_a), *(int(x) for x in row_b), max_coeff, out)
        if count <= cap:
            return out[:count]
        cap = count


def _scan_numpy(row_a, row_b, max_coeff: int, block_rows: int = 256) -> np.ndarray:
    a0, a1, a2 = (np.int64(int(x)) for x in row_a)
    b0, b1, b2 = (np.int64(int(x)) for x in row_b)
    bs = np.arange(max_coeff + 1, dtype=np.int64)[None, :]
    found = []
    for start in range(0, max_coeff + 1, block_rows):
        aa = np.arange(start, min(start + block_rows, max_coeff + 1), dtype=np.int64)[:, None]
        ra = aa * a0 + bs * a1
        rb = aa * b0 + bs * b1
        if a2 != 0 or b2 != 0:
            pivot, primary, other, other_coeff = (a2, ra, rb, b2) if a2 != 0 else (b2, rb, ra, a2)
            mask = primary % pivot == 0
            cc = np.where(mask, -primary // pivot, -1)
            mask &= (cc >= 0) & (cc <= max_coeff) & (other + cc * other_coeff == 0)
            ia, ib = np.nonzero(mask)
            found.append(np.column_stack([aa[ia, 0], bs[0, ib], cc[ia, ib]]))
        else:
            ia, ib = np.nonzero((ra == 0) & (rb == 0))
            for a, b in zip(aa[ia, 0], bs[0, ib]):
                cs = np.arange(max_coeff + 1, dtype=np.int64)
                found.append(np.column_stack([np.full_like(cs, a), np.full_like(cs, b), cs]))
    if not found:
        return np.empty((0, 3), dtype=np.int64)
    return np.concatenate(found).astype(np.int64, copy=False)


def scan_grid(row_a, row_b, max_coeff: int, backend: str | None = None) -> np.ndarray:
    """All integer triples in ``[0, max_coeff]**3`` annihilated by both
    integer rows, as an ``(k, 3)`` int64 array in lexicographic order.

    The rows must satisfy :func:`scan_fits_int64`.
    """
    if not scan_fits_int64(row_a, row_b, max_coeff):
        raise OverflowError("scan inputs exceed the int64 range; use the exact path")
    if _resolve(backend) == "numba":
        hits = _scan_numba(row_a, row_b, max_coeff)
    else:
        hits = _scan_numpy(row_a, row_b, max_coeff)
    if len(hits) > 1:
        hits = hits[np.lexsort((hits[:, 2], hits[:, 1], hits[:, 0]))]
    return hits


# -- adaptive Simpson -----------------------------------------------------------

WEIGHT_EXP = 0  # e**x
WEIGHT_ATAN = 1  # 1 / (1 + x**2)

_MAX_DEPTH = 60


def _integrand(x, n, m, c0, c1, c2, weight):
    base = x**n * (1.0 - x) ** m * (c0 + x * (c1 + x * c2))
    if weight == WEIGHT_EXP:
        return base * math.exp(x)
    return base / (1.0 + x * x)


def _make_simpson(integrand):
    def simpson(n, m, c0, c1, c2, weight, lo, hi, tol):
        # Depth-first bisection with an explicit stack; each half inherits
        # half the tolerance.  Accept when |S_left + S_right - S| <= 15 tol.
        size = 2 * _MAX_DEPTH + 8
        sa = np.empty(size)
        sb = np.empty(size)
        sfa = np.empty(size)
        sfm = np.empty(size)
        sfb = np.empty(size)
        sw = np.empty(size)
        st = np.empty(size)
        sd = np.empty(size, dtype=np.int64)

        fa = integrand(lo, n, m, c0, c1, c2, weight)
        fb = integrand(hi, n, m, c0, c1, c2, weight)
        fm = integrand(0.5 * (lo + hi), n, m, c0, c1, c2, weight)
        sa[0] = lo
        sb[0] = hi
        sfa[0] = fa
        sfm[0] = fm
        sfb[0] = fb
        sw[0] = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
        st[0] = tol
        sd[0] = 0
        top = 1
        total = 0.0
        while top > 0:
            top -= 1
            a = sa[top]
            b = sb[top]
            fa = sfa[top]
            fm = sfm[top]
            fb = sfb[top]
            whole = sw[top]
            t = st[top]
            depth = sd[top]
            mid = 0.5 * (a + b)
            flm = integrand(0.5 * (a + mid), n, m, c0, c1, c2, weight)
            frm = integrand(0.5 * (mid + b), n, m, c0, c1, c2, weight)
            left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
            right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
            delta = left + right - whole
            if depth >= _MAX_DEPTH or abs(delta) <= 15.0 * t:
                total += left + right + delta / 15.0
                continue
            sa[top] = mid
            sb[top] = b
            sfa[top] = fm
            sfm[top] = frm
            sfb[top] = fb
            sw[top] = right
            st[top] = 0.5 * t
            sd[top] = depth + 1
            top += 1
            sa[top] = a
            sb[top] = mid
            sfa[top] = fa
            sfm[top] = flm
            sfb[top] = fm
            sw[top] = left
            st[top] = 0.5 * t
            sd[top] = depth + 1
            top += 1
        return total

    return simpson


_simpson_py = _make_simpson(_integrand)
if HAVE_NUMBA:
    _simpson_nb = numba.njit(nogil=True)(
        _make_simpson(numba.njit(nogil=True, inline="always")(_integrand))
    )


def adaptive_simpson(
    n: int,
    m: int,
    cofactor=(1.0, 0.0, 0.0),
    weight: int = WEIGHT_EXP,
    tol: float = 1e-12,
    lo: float = 0.0,
    hi: float = 1.0,
    backend: str | None = None,
) -> float:
    """Integrate ``x**n (1-x)**m (c0 + c1 x + c2 x**2) w(x)`` over [lo, hi],
    with ``w`` either e**x or 1/(1+x**2)."""
    c0, c1, c2 = (float(c) for c in cofactor)
    fn = _simpson_nb if _resolve(backend) == "numba" else _simpson_py
    return fn(int(n), int(m), c0, c1, c2, int(weight), float(lo), float(hi), float(tol))
