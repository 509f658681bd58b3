"""Finite-dimensional sector of the genus-one mapping class group action:
symmetrized bases on the quotient group, finite Fourier/Gauss operators,
the sector S and T matrices, and SL(2,Z) relation checks.

Phase bookkeeping is exact: every matrix entry is a sum of unit phases
exp(2*pi*i*q) with q an explicit rational, evaluated once at the end.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from . import exact
from .errors import InconsistencyError, SchemaError
from .lattice import AlcoveSet, QuotientGroup, alcove_points, quotient_group
from .roots import RootSystem


def unit_phase(q: Fraction) -> complex:
    """exp(2*pi*i*q) for an exact rational q, reduced mod 1 first."""
    q = q - (q.numerator // q.denominator)
    return cmath.exp(2j * math.pi * float(q))


@dataclass(frozen=True)
class PhasePair:
    j: complex
    omega: complex
    j_exponent: Fraction      # j = exp(2 pi i j_exponent)
    omega_exponent: Fraction


def phase_constants(rs: RootSystem, tol: float = 1e-12) -> PhasePair:
    """The specific constants j = i^{-|pos roots|}, omega with exponent
    <rho, rho>_1 / (2 h) of a full turn; the cubic constraint relating them
    is re-checked, not assumed."""
    jq = Fraction(-rs.num_positive, 4)
    oq = rs.pairing1(rs.weyl_vector, rs.weyl_vector) / (2 * rs.dual_coxeter)
    pp = PhasePair(j=unit_phase(jq), omega=unit_phase(oq),
                   j_exponent=jq, omega_exponent=oq)
    # omega^3 = i^{n/2} j^{-1}, with the principal i^{n/2}
    lhs = 3 * oq
    rhs = Fraction(rs.rank, 8) - jq
    if (lhs - rhs) % 1 != 0:
        resid = abs(pp.omega ** 3 - unit_phase(Fraction(rs.rank, 8)) / pp.j)
        if resid > tol:
            raise InconsistencyError(
                f"phase constraint violated for {rs.lie_type}: |omega^3 - i^(n/2)/j| = {resid}")
    return pp


@dataclass(frozen=True)
class Convention:
    """Which sector carries det(w) in S, and the sign of the T exponent.

    The default has det(w) in the anti-invariant sector and the positive
    T exponent; the alternates exist as negative controls.
    """
    det_in_invariant: bool = False
    t_sign: int = 1

    @staticmethod
    def from_name(name: str) -> "Convention":
        if name == "lemma":
            return Convention(det_in_invariant=False, t_sign=1)
        if name == "theorem":
            return Convention(det_in_invariant=True, t_sign=-1)
        raise SchemaError(f"unknown convention {name!r}; expected 'lemma' or 'theorem'")


@dataclass
class FiniteVector:
    quotient: QuotientGroup
    coefficients: np.ndarray   # complex, indexed like quotient.reps
    label: Tuple[Fraction, ...]


def symmetrized_basis(quotient: QuotientGroup, alcove: AlcoveSet,
                      sector: int) -> List[FiniteVector]:
    """Orthonormal Weyl-(anti)symmetrized delta bases indexed by alcove points.

    Sector 0 symmetrizes over the closed alcove, sector 1 antisymmetrizes
    over the open alcove; each vector is renormalized to unit norm (points
    with a nontrivial stabilizer are not unit norm under the bare 1/sqrt|W|
    normalization).
    """
    if sector not in (0, 1):
        raise SchemaError(f"sector must be 0 or 1, got {sector}")
    rs = quotient.rs
    wg = rs.weyl_group()
    points = alcove.closed_points if sector == 0 else alcove.open_points
    out: List[FiniteVector] = []
    for gamma in points:
        coeff = [0] * quotient.order
        for w in wg.elements:
            idx = quotient.index_of(w.apply(gamma))
            coeff[idx] += w.determinant if sector == 1 else 1
        arr = np.asarray(coeff, dtype=complex)
        norm = np.linalg.norm(arr)
        assert norm > 0, "anti-invariant vector vanished on an interior point"
        out.append(FiniteVector(quotient=quotient, coefficients=arr / norm,
                                label=gamma))
    return out


def finite_fourier(quotient: QuotientGroup) -> np.ndarray:
    """Unitary discrete Fourier matrix with kernel exp(2 pi i <a,b>_k)."""
    m = quotient.order
    out = np.empty((m, m), dtype=complex)
    for i, a in enumerate(quotient.reps):
        for j, b in enumerate(quotient.reps):
            out[i, j] = unit_phase(quotient.pairing_k(a, b))
    return out / math.sqrt(m)


def finite_gauss(quotient: QuotientGroup) -> np.ndarray:
    """Diagonal Gauss operator with entries exp(pi i <a,a>_k)."""
    diag = [unit_phase(quotient.pairing_k(a, a) / 2) for a in quotient.reps]
    return np.diag(diag)


@dataclass
class SectorMatrices:
    rs: RootSystem
    k: int
    sector: int
    convention: Convention
    labels: Tuple[Tuple[Fraction, ...], ...]
    s: np.ndarray
    t: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.labels)

    def to_json_dict(self) -> dict:
        def cmat(m):
            return [[[z.real, z.imag] for z in row] for row in m.tolist()]
        return {
            "type": str(self.rs.lie_type),
            "level": self.k,
            "sector": self.sector,
            "convention": {"det_in_invariant": self.convention.det_in_invariant,
                           "t_sign": self.convention.t_sign},
            "labels": [[str(x) for x in lab] for lab in self.labels],
            "S": cmat(self.s),
            "T": cmat(self.t),
        }


def rep_matrices(rs: RootSystem, k: int, sector: int,
                 phases: Optional[PhasePair] = None,
                 convention: Convention = Convention()) -> SectorMatrices:
    """Sector S and T matrices, assembled entrywise from exact rational
    phase exponents.

    S is the finite factor of the inverse discrete Fourier operator, so its
    kernel is exp(-2 pi i <w a, b>_k); T is diagonal with entries
    omega^{-1} exp(pi i <a,a>_k) under the default convention.
    """
    if sector not in (0, 1):
        raise SchemaError(f"sector must be 0 or 1, got {sector}")
    if phases is None:
        phases = phase_constants(rs)
    quotient = quotient_group(rs, k)
    alcove = alcove_points(rs, k)
    wg = rs.weyl_group()

    if sector == 0:
        points = alcove.closed_points
        stabs = alcove.stabilizer_sizes
    else:
        points = alcove.open_points
        stabs = tuple(1 for _ in points)  # interior points have trivial stabilizer

    use_det = convention.det_in_invariant == (sector == 0)
    dim = len(points)
    s = np.zeros((dim, dim), dtype=complex)
    root_z = math.sqrt(quotient.order)
    for a, (ga, sta) in enumerate(zip(points, stabs)):
        images = [(w.determinant if use_det else 1, w.apply(ga)) for w in wg.elements]
        for b, (gb, stb) in enumerate(zip(points, stabs)):
            acc = 0j
            for eps, wga in images:
                acc += eps * unit_phase(-k * rs.pairing1(wga, gb))
            s[a, b] = acc / (root_z * math.sqrt(sta * stb))
    s *= unit_phase(-phases.j_exponent)

    t = np.zeros((dim, dim), dtype=complex)
    for a, ga in enumerate(points):
        q = -phases.omega_exponent + convention.t_sign * k * rs.pairing1(ga, ga) / 2
        t[a, a] = unit_phase(q)

    return SectorMatrices(rs=rs, k=k, sector=sector, convention=convention,
                          labels=tuple(points), s=s, t=t)


@dataclass
class SL2ZReport:
    dim: int
    tol: float
    residual_s4: float
    residual_braid: float       # (ST)^3 - S^2
    residual_s_unitary: float
    residual_t_unitary: float

    @property
    def passed(self) -> bool:
        return max(self.residual_s4, self.residual_braid,
                   self.residual_s_unitary, self.residual_t_unitary) < self.tol

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "tol": self.tol,
            "residual_S4": self.residual_s4,
            "residual_braid": self.residual_braid,
            "residual_S_unitary": self.residual_s_unitary,
            "residual_T_unitary": self.residual_t_unitary,
            "passed": self.passed,
        }


def _maxabs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def verify_sl2z(m: SectorMatrices, tol: float = 1e-10) -> SL2ZReport:
    """Max-norm residuals of S^4 = Id, (ST)^3 = S^2 and unitarity.

    A zero-dimensional sector passes vacuously.
    """
    s, t = m.s, m.t
    dim = m.dim
    eye = np.eye(dim)
    s2 = s @ s
    st = s @ t
    return SL2ZReport(
        dim=dim,
        tol=tol,
        residual_s4=_maxabs(s2 @ s2 - eye),
        residual_braid=_maxabs(st @ st @ st - s2),
        residual_s_unitary=_maxabs(s.conj().T @ s - eye),
        residual_t_unitary=_maxabs(t.conj().T @ t - eye),
    )


def rep_report_json(m: SectorMatrices, tol: float = 1e-10) -> str:
    d = m.to_json_dict()
    d["verification"] = verify_sl2z(m, tol).to_json_dict()
    return json.dumps(d, indent=2, sort_keys=True)
