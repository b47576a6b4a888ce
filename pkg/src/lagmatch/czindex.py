"""Conley-Zehnder indices of sampled symplectic paths.

This is the one corner of the package that works in floating point: paths
of symplectic matrices arrive as uniform time samples (from numerical
integration of a linearized flow, say), and the index is computed by the
crossing-count recipe.  A crossing is a time where det(Psi(t) - I)
vanishes; the path always crosses at t = 0 (it starts at the identity) and
must be nondegenerate at t = 1.  Each crossing contributes the signature
of the quadratic form omega(v, Psi'(t) v) on the kernel of Psi(t) - I,
halved at t = 0; the total is the index and must come out an integer.

Crossings are located two ways: sign changes of the determinant (odd
multiplicity) and parabolic near-tangencies (even multiplicity, e.g. a
full rotation, where the determinant touches zero without changing sign).
A tangency is only credited when the fitted parabola dips within half a
sample step of zero, so eigenvalues that pass close to 1 without reaching
it are resolved correctly once the sampling is fine enough - and when it
is not, the guards below raise ResolutionError rather than return a wrong
integer: oversized steps, unresolvable kernels, degenerate crossing
forms, non-integer totals, and crossing parities that contradict
sign det(I - Psi(1)) all refuse.

Mod 2, index + half-dimension reproduces that determinant sign: parity 0
exactly when det(I - Psi(1)) > 0.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np


class DegenerateEndpoint(ValueError):
    """det(Psi(1) - I) is (numerically) zero; the index is undefined."""


class ResolutionError(RuntimeError):
    """The sampling is too coarse to certify the crossing count."""


class CzResult(NamedTuple):
    index: int
    parity: int
    det_end_sign: int
    half_dim: int
    crossings: int


def _standard_j(m: int) -> np.ndarray:
    j = np.zeros((2 * m, 2 * m))
    j[:m, m:] = np.eye(m)
    j[m:, :m] = -np.eye(m)
    return j


def direct_sum(a: Sequence[Sequence[float]], b: Sequence[Sequence[float]]) -> list[list[float]]:
    """Block sum of two symplectic matrices in big-block coordinates.

    The a/b halves of each factor are interleaved so that the result is
    again symplectic for the big-block form of the total dimension.
    """
    am = np.asarray(a, dtype=float)
    bm = np.asarray(b, dtype=float)
    p, q = am.shape[0] // 2, bm.shape[0] // 2
    if am.shape != (2 * p, 2 * p) or bm.shape != (2 * q, 2 * q):
        raise ValueError("factors must be even-dimensional square matrices")
    m = p + q
    out = np.zeros((2 * m, 2 * m))
    a_idx = list(range(p)) + list(range(m, m + p))
    b_idx = list(range(p, m)) + list(range(m + p, 2 * m))
    out[np.ix_(a_idx, a_idx)] = am
    out[np.ix_(b_idx, b_idx)] = bm
    return out.tolist()


def conley_zehnder(
    samples: Sequence[Sequence[Sequence[float]]],
    *,
    jump_tol: float = 0.5,
    end_tol: float = 1e-8,
    kernel_tol: float = 1e-6,
    sympl_tol: float = 1e-6,
) -> CzResult:
    """Crossing-count Conley-Zehnder index of a sampled symplectic path.

    ``samples[i]`` is the matrix at time i/(len-1); the first must be the
    identity and the last must have no eigenvalue 1.  Raises
    DegenerateEndpoint for a degenerate end, ValueError for inputs that
    are not a symplectic path at all, and ResolutionError whenever the
    sampling cannot certify the answer.
    """
    mats = [np.asarray(s, dtype=float) for s in samples]
    count = len(mats)
    if count < 5:
        raise ResolutionError(f"need at least 5 samples, got {count}")
    dim = mats[0].shape[0] if mats[0].ndim == 2 else 0
    if mats[0].shape != (dim, dim) or dim % 2 or dim == 0:
        raise ValueError("samples must be square matrices of even dimension")
    if any(m.shape != (dim, dim) for m in mats):
        raise ValueError("samples must all have the same shape")
    half = dim // 2
    J = _standard_j(half)
    eye = np.eye(dim)
    if np.max(np.abs(mats[0] - eye)) > 1e-9:
        raise ValueError("path must start at the identity")
    for i, m in enumerate(mats):
        if np.max(np.abs(m.T @ J @ m - J)) > sympl_tol:
            raise ValueError(f"sample {i} is not symplectic to tolerance {sympl_tol}")
    steps = [float(np.max(np.abs(mats[i + 1] - mats[i]))) for i in range(count - 1)]
    worst = max(range(count - 1), key=lambda i: steps[i])
    if steps[worst] > jump_tol:
        raise ResolutionError(
            f"jump of size {steps[worst]:.3g} > {jump_tol} between samples "
            f"{worst} and {worst + 1}; refine the sampling"
        )

    h = 1.0 / (count - 1)
    dets = [float(np.linalg.det(m - eye)) for m in mats]
    scale = max(1.0, max(abs(d) for d in dets))
    if abs(dets[-1]) < end_tol * scale:
        raise DegenerateEndpoint("det(Psi(1) - I) is numerically zero")

    def velocity(i: int) -> np.ndarray:
        if i == 0:
            return (mats[1] - mats[0]) / h
        if i == count - 1:
            return (mats[-1] - mats[-2]) / h
        return (mats[i + 1] - mats[i - 1]) / (2 * h)

    def signature_of(form: np.ndarray, where: str) -> int:
        form = (form + form.T) / 2.0
        eigs = np.linalg.eigvalsh(form)
        tol = kernel_tol * max(1.0, float(np.max(np.abs(eigs))) if eigs.size else 1.0)
        if any(abs(e) <= tol for e in eigs):
            raise ResolutionError(f"degenerate crossing form {where}; refine the sampling")
        return int(sum(1 for e in eigs if e > 0) - sum(1 for e in eigs if e < 0))

    def kernel_at(i: int) -> np.ndarray:
        local = max(
            steps[max(i - 1, 0)],
            steps[min(i, count - 2)],
        )
        cutoff = max(kernel_tol, 3.0 * local)
        _, s, vt = np.linalg.svd(mats[i] - eye)
        cols = [vt[r] for r in range(dim) if s[r] < cutoff]
        if not cols:
            raise ResolutionError(
                f"crossing near sample {i} has no resolvable kernel; refine the sampling"
            )
        return np.stack(cols, axis=1)

    def crossing_signature(i: int) -> int:
        kernel = kernel_at(i)
        form = kernel.T @ J @ (velocity(i) @ kernel)
        return signature_of(form, f"near sample {i}")

    # t = 0: the whole space is the kernel, half weight.
    total = 0.5 * signature_of(J @ velocity(0), "at t = 0")

    tiny = 1e-11 * scale
    crossings = 0
    i = 1
    last_used = 0
    while i < count - 1:
        if i <= last_used:
            i += 1
            continue
        hit = False
        if dets[i - 1] * dets[i] < 0 and abs(dets[i - 1]) > tiny:
            hit = True
            pick = i if abs(dets[i]) <= abs(dets[i - 1]) else i - 1
        elif abs(dets[i]) < tiny:
            hit = True
            pick = i
        elif 0 < i < count - 1:
            # Parabolic tangency test on |f| flipped positive.
            u, v, w = dets[i - 1], dets[i], dets[i + 1]
            s = 1.0 if u >= 0 else -1.0
            u, v, w = s * u, s * v, s * w
            if 0 <= v <= min(u, w):
                curv = (u + w) / 2.0 - v
                slope = (w - u) / 2.0
                if curv > 0 and abs(slope) <= 2.02 * curv:
                    dip = v - slope * slope / (4.0 * curv)
                    if dip <= curv / 4.0:
                        hit = True
                        pick = i
        if hit:
            total += crossing_signature(pick)
            crossings += 1
            last_used = pick + 1
            i = pick + 2
        else:
            i += 1

    index = round(total)
    if abs(total - index) > 1e-6:
        raise ResolutionError(f"crossing sum {total} is not an integer; refine the sampling")
    det_end_sign = 1 if dets[-1] > 0 else -1
    parity = (index + half) % 2
    if parity != (0 if det_end_sign > 0 else 1):
        raise ResolutionError(
            "crossing parity contradicts det(I - Psi(1)); a crossing was missed"
        )
    return CzResult(
        index=int(index),
        parity=parity,
        det_end_sign=det_end_sign,
        half_dim=half,
        crossings=crossings,
    )
