"""Dependency-free adaptive Simpson quadrature for diagnostics integrals."""

from .errors import ParameterError


def _simpson(f, lo, hi, flo, fmid, fhi):
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)


def _recurse(f, lo, hi, flo, fmid, fhi, whole, tol, depth):
    mid = 0.5 * (lo + hi)
    lmid = 0.5 * (lo + mid)
    rmid = 0.5 * (mid + hi)
    flmid = f(lmid)
    frmid = f(rmid)
    left = _simpson(f, lo, mid, flo, flmid, fmid)
    right = _simpson(f, mid, hi, fmid, frmid, fhi)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return _recurse(f, lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth - 1) + _recurse(
        f, mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth - 1
    )


def adaptive_simpson(f, lo, hi, tol=1e-10, max_depth=48):
    """Integrate ``f`` on [lo, hi] to absolute tolerance ``tol``."""
    if hi < lo:
        raise ParameterError(f"integration bounds must satisfy lo <= hi, got [{lo}, {hi}]")
    if hi == lo:
        return 0.0
    flo = f(lo)
    fhi = f(hi)
    fmid = f(0.5 * (lo + hi))
    whole = _simpson(f, lo, hi, flo, fmid, fhi)
    return _recurse(f, lo, hi, flo, fmid, fhi, whole, tol, max_depth)
