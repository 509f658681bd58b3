"""Bridge to compact Chern-Simons modular data: for simply laced types the
anti-invariant sector at shifted level k + h, with rho-shifted weight labels,
reproduces the affine-Lie-algebra (Kac-Peterson) S and T matrices up to one
global phase per generator.

Two independent oracles are provided: the SU(2) closed form and a direct
Kac-Peterson character sum; both are normalized to unitarity with a positive
identity row and carry exact rational T phases.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from . import exact
from .errors import DomainError, SchemaError
from .finrep import Convention, rep_matrices, unit_phase
from .lattice import _comarks
from .roots import RootSystem

Vec = Tuple[Fraction, ...]


@dataclass
class CompactModularData:
    """Modular S and T matrices of a compact theory at level k, with labels
    the rho-shifted dominant weights (coroot-basis coordinates)."""
    k: int
    labels: Tuple[Vec, ...]
    s: np.ndarray
    t: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.labels)


def su2_modular_data(k: int) -> CompactModularData:
    """SU(2) level-k data: S_ab = sqrt(2/(k+2)) sin(pi a b/(k+2)) and
    T_aa = e^{-pi i/4} e^{pi i a^2/(2(k+2))} for shifted labels a = 1..k+1."""
    if k < 1:
        raise SchemaError(f"level k must be a positive integer, got {k}")
    kk = k + 2
    a = np.arange(1, k + 2)
    s = np.sqrt(2.0 / kk) * np.sin(math.pi * np.outer(a, a) / kk)
    t = np.diag([unit_phase(Fraction(int(x) ** 2, 4 * kk) - Fraction(1, 8)) for x in a])
    labels = tuple((Fraction(int(x), 2),) for x in a)
    return CompactModularData(k=k, labels=labels, s=s, t=t)


def is_simply_laced(rs: RootSystem) -> bool:
    return all(rs.cartan[i][j] == rs.cartan[j][i]
               for i in range(rs.rank) for j in range(rs.rank))


def _integrable_shifted_weights(rs: RootSystem, k: int) -> List[Vec]:
    """rho-shifted dominant weights of level <= k, as coroot-basis vectors,
    sorted by pairing with rho then lexicographically."""
    n = rs.rank
    marks = _comarks(rs)
    ginv = exact.inverse(exact.mat(rs.gram1))
    out: List[Vec] = []
    for nvec in itertools.product(*[range(0, k // m + 1) for m in marks]):
        if sum(m * x for m, x in zip(marks, nvec)) > k:
            continue
        shifted = tuple(Fraction(x + 1) for x in nvec)
        out.append(exact.mat_vec(ginv, shifted))
    out.sort(key=lambda v: (rs.pairing1(v, rs.weyl_vector), v))
    return out


def kac_peterson_sum(rs: RootSystem, k: int) -> CompactModularData:
    """Kac-Peterson character sum for simply laced types of rank <= 3:
    S_{mu nu} proportional to sum_w det(w) e^{-2 pi i <w mu, nu>_1/(k+h)},
    normalized to unitarity with a positive identity row; T is assembled
    from the exact conformal weights."""
    if not is_simply_laced(rs):
        raise DomainError(f"{rs.lie_type} is not simply laced; no compact bridge is asserted")
    if rs.rank > 3:
        raise DomainError(f"rank {rs.rank} exceeds the supported ceiling 3")
    if k < 1:
        raise SchemaError(f"level k must be a positive integer, got {k}")
    h = rs.dual_coxeter
    kk = k + h
    labels = _integrable_shifted_weights(rs, k)
    wg = rs.weyl_group()
    dim = len(labels)
    raw = np.zeros((dim, dim), dtype=complex)
    for i, mu in enumerate(labels):
        images = [(w.determinant, w.apply(mu)) for w in wg.elements]
        for j, nu in enumerate(labels):
            raw[i, j] = sum(det * unit_phase(-rs.pairing1(wmu, nu) / kk)
                            for det, wmu in images)
    # normalize: raw is a positive multiple of a unitary matrix times a phase
    scale = math.sqrt(abs((raw @ raw.conj().T)[0, 0]))
    phase = raw[0, 0] / abs(raw[0, 0])
    s = raw / (scale * phase)
    rho2 = rs.pairing1(rs.weyl_vector, rs.weyl_vector)
    t = np.diag([unit_phase(rs.pairing1(mu, mu) / (2 * kk) - rho2 / (2 * h))
                 for mu in labels])
    return CompactModularData(k=k, labels=tuple(labels), s=s, t=t)


def _fit_phase(a: np.ndarray, b: np.ndarray) -> complex:
    """Global phase minimizing ||phase * a - b|| in least squares."""
    z = np.vdot(a, b)
    if abs(z) == 0:
        return 1.0 + 0j
    return z / abs(z)


def _snap_fourth_root(phase: complex) -> complex:
    roots = [1, 1j, -1, -1j]
    return min(roots, key=lambda r: abs(r - phase))


def compare_shifted(rs: RootSystem, k: int,
                    convention: Convention = Convention()) -> dict:
    """Compare the anti-invariant sector matrices at level k + h against the
    compact oracle at level k, after sorting both label sets by pairing with
    rho; S may differ by one global 4th root of unity, T must match exactly."""
    if not is_simply_laced(rs):
        raise DomainError(f"{rs.lie_type} is not simply laced; no compact bridge is asserted")
    h = rs.dual_coxeter
    oracle = su2_modular_data(k) if (rs.lie_type.family == "A" and rs.rank == 1) \
        else kac_peterson_sum(rs, k)
    sect = rep_matrices(rs, k + h, sector=1, convention=convention)
    if sect.dim != oracle.dim:
        raise DomainError(
            f"dimension mismatch: sector 1 at level {k + h} has dim {sect.dim}, "
            f"oracle has dim {oracle.dim}")
    order = sorted(range(sect.dim),
                   key=lambda i: (rs.pairing1(sect.labels[i], rs.weyl_vector),
                                  sect.labels[i]))
    s_ours = sect.s[np.ix_(order, order)]
    t_ours = sect.t[np.ix_(order, order)]
    fitted_s = _fit_phase(s_ours, oracle.s)
    snapped_s = _snap_fourth_root(fitted_s)
    fitted_t = _fit_phase(np.diag(t_ours), np.diag(oracle.t))
    resid_s = float(np.max(np.abs(snapped_s * s_ours - oracle.s)))
    resid_t = float(np.max(np.abs(t_ours - oracle.t)))
    report = {
        "type": str(rs.lie_type),
        "k": k,
        "shifted_level": k + h,
        "dim": sect.dim,
        "convention": {"det_in_invariant": convention.det_in_invariant,
                       "t_sign": convention.t_sign},
        "labels_sector": [[str(x) for x in sect.labels[i]] for i in order],
        "labels_oracle": [[str(x) for x in lab] for lab in oracle.labels],
        "fitted_S_phase": [fitted_s.real, fitted_s.imag],
        "snapped_S_phase": [snapped_s.real, snapped_s.imag],
        "fitted_T_phase": [fitted_t.real, fitted_t.imag],
        "residual_S": resid_s,
        "residual_T": resid_t,
        "snap_error": float(abs(fitted_s - snapped_s)),
        "passed": bool(resid_s < 1e-10 and resid_t < 1e-10),
    }
    return report
