"""Weil-Gel'fand-Zak transform on the coroot lattice, line-bundle
multipliers, and the pre-quantum operators acting on sampled function
families tensored with the finite quotient.

Sampling convention: all grids are uniform in coroot-basis coordinates with
step 1/N, N a multiple of the denominators appearing in the dual-lattice
basis, so every dual-lattice shift theta + lambda lands exactly on a grid
point and the theta-integrals reduce to aliasing-free periodic trapezoid
sums.  Box radii are specified in units of the k-scaled orthonormal frame.
"""

from __future__ import annotations

import base64
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .errors import DomainError, SchemaError
from .lattice import QuotientGroup, quotient_group, scaled_dual_lattice
from .roots import RootSystem


def multiplier_eval(rs: RootSystem, k: int, lam1, lam2, theta1, theta2) -> complex:
    """Multiplier e_lambda(A) of the level-k line bundle over the torus pair.

    Returns (-1)^(<lam1,lam2>_k) * exp(-pi*i*(<theta1,lam2>_k - <lam1,theta2>_k))
    with the parity exponent computed exactly.
    """
    l1 = tuple(Fraction(x) for x in lam1)
    l2 = tuple(Fraction(x) for x in lam2)
    if any(x.denominator != 1 for x in l1 + l2):
        raise DomainError("multiplier lattice vectors must be integral coroot vectors")
    parity = k * rs.pairing1(l1, l2)
    assert parity.denominator == 1
    sign = -1.0 if int(parity) % 2 else 1.0
    gm = np.array(rs.gram1, dtype=float) * k
    t1 = np.asarray([float(x) for x in theta1])
    t2 = np.asarray([float(x) for x in theta2])
    l1f = np.asarray([float(x) for x in l1])
    l2f = np.asarray([float(x) for x in l2])
    expo = float(t1 @ gm @ l2f - l1f @ gm @ t2)
    return sign * complex(math.cos(math.pi * expo), -math.sin(math.pi * expo))


@dataclass(frozen=True)
class GridSpec:
    """Shared geometry for box grids and fundamental-domain grids.

    Grid points have coroot coordinates m/N; the box covers m in
    [-M*N, M*N]^n inclusive, the fundamental domain F_Lambda covers
    m in [0, N)^n.
    """
    rs: RootSystem
    k: int
    divisions: int          # N, points per unit coroot cell and axis
    half_width: int         # M, unit cells on each side of the box
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.divisions < 2 or self.half_width < 1:
            raise SchemaError("grid needs divisions >= 2 and half_width >= 1")
        dual = scaled_dual_lattice(self.rs, self.k)
        denoms = {e.denominator for row in dual.basis for e in row}
        lcm = 1
        for d in denoms:
            lcm = lcm * d // math.gcd(lcm, d)
        if self.divisions % lcm:
            raise SchemaError(
                f"divisions {self.divisions} must be a multiple of {lcm} so that "
                "dual-lattice shifts are grid-aligned")

    @property
    def n(self) -> int:
        return self.rs.rank

    @property
    def box_points_per_axis(self) -> int:
        return 2 * self.half_width * self.divisions + 1

    def pairing_matrix(self) -> np.ndarray:
        """k * gram1 as floats."""
        return np.array(self.rs.gram1, dtype=float) * self.k

    def box_coords(self) -> np.ndarray:
        """Integer grid coordinates (units of 1/N) of the box, shape (B^n, n)."""
        if "box" not in self._cache:
            mn = self.half_width * self.divisions
            axes = [np.arange(-mn, mn + 1)] * self.n
            self._cache["box"] = _mesh(axes)
        return self._cache["box"]

    def cell_coords(self) -> np.ndarray:
        """Integer grid coordinates of F_Lambda, shape (N^n, n)."""
        if "cell" not in self._cache:
            axes = [np.arange(self.divisions)] * self.n
            self._cache["cell"] = _mesh(axes)
        return self._cache["cell"]

    def box_flat_index(self, coords: np.ndarray) -> np.ndarray:
        """Flat box index of integer coordinates; raises if out of the box."""
        mn = self.half_width * self.divisions
        shifted = coords + mn
        b = self.box_points_per_axis
        if np.any(shifted < 0) or np.any(shifted >= b):
            raise DomainError("grid coordinates outside the sampling box")
        idx = shifted[..., 0]
        for j in range(1, self.n):
            idx = idx * b + shifted[..., j]
        return idx

    def cell_volume(self) -> float:
        """dvol_k of one grid cell."""
        det = float(np.linalg.det(self.pairing_matrix()))
        return math.sqrt(det) / self.divisions ** self.n

    def lattice_shifts(self) -> List[np.ndarray]:
        """Integer grid coordinates lam*N of the dual-lattice vectors whose
        F_Lambda translate lies entirely inside the box."""
        if "shifts" in self._cache:
            return self._cache["shifts"]
        n, nn, mn = self.n, self.divisions, self.half_width * self.divisions
        dual = scaled_dual_lattice(self.rs, self.k)
        basis = np.array([[float(e) for e in row] for row in dual.basis])
        kg = self.pairing_matrix()
        bound = int(np.ceil(np.abs(kg).sum(axis=1).max() * self.half_width)) + 1
        shifts = []
        for x in itertools.product(range(-bound, bound + 1), repeat=n):
            lam = basis @ np.asarray(x, dtype=float)
            lam_n = np.rint(lam * nn).astype(int)
            assert np.allclose(lam * nn, lam_n), "dual vector not grid-aligned"
            if np.all(lam_n >= -mn) and np.all(lam_n + nn - 1 <= mn):
                shifts.append(lam_n)
        shifts.sort(key=lambda v: (int(np.abs(v).max()), tuple(v.tolist())))
        self._cache["shifts"] = shifts
        return shifts


def _mesh(axes) -> np.ndarray:
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def grid_spec_from_box(rs: RootSystem, k: int, resolution: int,
                       box_radius: float) -> GridSpec:
    """Pick (divisions, half_width) so the coroot box contains the centered
    orthonormal-frame box of the given radius and shifts stay grid-aligned."""
    kg = np.array(rs.gram1, dtype=float) * k
    c = np.linalg.cholesky(kg)
    # coroot coords of an orthonormal-frame point y: c = C^{-T} y
    cinv_t = np.linalg.inv(c.T)
    reach = np.abs(cinv_t).sum(axis=1) * box_radius
    half_width = int(np.ceil(reach.max()))
    dual = scaled_dual_lattice(rs, k)
    lcm = 1
    for row in dual.basis:
        for e in row:
            lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
    divisions = max(resolution, lcm)
    divisions += (-divisions) % lcm
    spec = GridSpec(rs=rs, k=k, divisions=divisions, half_width=half_width)
    while alias_margin(spec) <= 0:
        divisions += lcm
        spec = GridSpec(rs=rs, k=k, divisions=divisions, half_width=half_width)
    return spec


@dataclass
class GridFunctionFamily:
    """Sampled family (f_gamma) over the quotient group on a shared box grid."""
    spec: GridSpec
    quotient: QuotientGroup
    values: np.ndarray   # complex, shape (|Z|, B^n)

    def __post_init__(self):
        expected = (self.quotient.order, self.spec.box_points_per_axis ** self.spec.n)
        if self.values.shape != expected:
            raise SchemaError(
                f"grid family shape {self.values.shape} does not match {expected}")

    def boundary_decay(self) -> float:
        """Sup of |f| on the outermost grid shell (Schwartz-truncation sanity)."""
        coords = self.spec.box_coords()
        mn = self.spec.half_width * self.spec.divisions
        shell = np.abs(coords).max(axis=1) == mn
        return float(np.abs(self.values[:, shell]).max()) if shell.any() else 0.0

    def copy(self) -> "GridFunctionFamily":
        return GridFunctionFamily(self.spec, self.quotient, self.values.copy())

    def to_json_dict(self, encoding: str = "base64") -> dict:
        head = {
            "type": str(self.spec.rs.lie_type),
            "level": self.spec.k,
            "divisions": self.spec.divisions,
            "half_width": self.spec.half_width,
            "shape": list(self.values.shape),
            "encoding": encoding,
        }
        if encoding == "base64":
            head["data"] = base64.b64encode(
                np.ascontiguousarray(self.values, dtype=complex).tobytes()).decode()
        elif encoding == "csv":
            head["data"] = "\n".join(
                ",".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row)
                for row in self.values)
        else:
            raise SchemaError(f"unknown encoding {encoding!r}")
        return head


def family_from_callable(spec: GridSpec, quotient: QuotientGroup,
                         fn) -> GridFunctionFamily:
    """Sample fn(gamma_index, theta_coords_array) -> complex array on the box."""
    coords = spec.box_coords() / spec.divisions
    vals = np.stack([np.asarray(fn(g, coords), dtype=complex)
                     for g in range(quotient.order)])
    return GridFunctionFamily(spec, quotient, vals)


def gaussian_family(spec: GridSpec, quotient: QuotientGroup,
                    gamma_index: int = 0) -> GridFunctionFamily:
    """Standard Gaussian e^{-pi <theta,theta>_k} supported on one finite index."""
    kg = spec.pairing_matrix()

    def fn(g, coords):
        if g != gamma_index:
            return np.zeros(len(coords), dtype=complex)
        q = np.einsum("pi,ij,pj->p", coords, kg, coords)
        return np.exp(-math.pi * q).astype(complex)

    return family_from_callable(spec, quotient, fn)


def random_gaussian_poly_family(spec: GridSpec, quotient: QuotientGroup,
                                rng: np.random.Generator,
                                max_degree: int = 3) -> GridFunctionFamily:
    """Random polynomial-times-Gaussian family, one random profile per index."""
    kg = spec.pairing_matrix()
    coords = spec.box_coords() / spec.divisions
    q = np.einsum("pi,ij,pj->p", coords, kg, coords)
    env = np.exp(-math.pi * q)
    vals = []
    for _ in range(quotient.order):
        poly = np.zeros(len(coords), dtype=complex)
        for d in range(max_degree + 1):
            c = rng.standard_normal(spec.n) + 1j * rng.standard_normal(spec.n)
            poly += (coords @ c) ** d * (rng.standard_normal()
                                         + 1j * rng.standard_normal())
        vals.append(poly * env)
    return GridFunctionFamily(spec, quotient, np.stack(vals))


@dataclass
class SectionSamples:
    """Samples of a quasi-periodic section on F_Lambda x F_Lambda."""
    spec: GridSpec
    quotient: QuotientGroup
    values: np.ndarray        # complex, shape (N^n, N^n)
    truncation_error: float = 0.0

    def __post_init__(self):
        m = self.spec.divisions ** self.spec.n
        if self.values.shape != (m, m):
            raise SchemaError(
                f"section shape {self.values.shape} does not match ({m}, {m})")


def _gamma_grid_coords(spec: GridSpec, quotient: QuotientGroup) -> np.ndarray:
    """Integer grid coordinates (units 1/N) of the canonical quotient reps."""
    out = []
    for rep in quotient.reps:
        coords = [Fraction(x) * spec.divisions for x in rep]
        assert all(c.denominator == 1 for c in coords)
        out.append([int(c) for c in coords])
    return np.asarray(out, dtype=int)


def _forward_values(f: GridFunctionFamily, off1: np.ndarray, off2: np.ndarray,
                    skip_outside: bool = False) -> np.ndarray:
    """The transform series evaluated at (theta1 + off1, theta2 + off2) for
    theta1, theta2 on the F_Lambda grid; offsets are integer coroot vectors.

    skip_outside drops lattice shifts whose translate leaves the box (their
    contribution is bounded by the boundary decay of f).
    """
    spec, quotient = f.spec, f.quotient
    nn = spec.divisions
    cell = spec.cell_coords()                       # (C, n) in units 1/N
    kg = spec.pairing_matrix()
    gam = _gamma_grid_coords(spec, quotient)        # (|Z|, n) in units 1/N
    mn = spec.half_width * nn
    t1 = cell + off1 * nn
    t2 = cell + off2 * nn
    pref = np.exp(-1j * math.pi * (t1 @ kg @ t2.T) / nn ** 2)
    out = np.zeros((len(cell), len(cell)), dtype=complex)
    for g in range(quotient.order):
        for lam_n in spec.lattice_shifts():
            shifted = t1 + lam_n
            if np.abs(shifted).max() > mn:
                if skip_outside:
                    continue
                raise DomainError("lattice shift leaves the sampling box; "
                                  "enlarge half_width or pass skip_outside")
            idx = spec.box_flat_index(shifted)
            vals = f.values[g, idx]
            expo = (lam_n @ kg @ (t2 + gam[g]).T) / nn ** 2
            out += np.multiply.outer(vals, np.exp(-2j * math.pi * expo))
    return pref * out / math.sqrt(quotient.order)


def wgz_forward(f: GridFunctionFamily,
                lam_radius: Optional[int] = None) -> SectionSamples:
    """Transform a function family into section samples on F_Lambda^2.

    lam_radius (max |lambda*N| per axis, in grid units) may shrink the
    shift set; requesting more shifts than the box supports is an error.
    """
    spec = f.spec
    shifts = spec.lattice_shifts()
    if lam_radius is not None:
        supported = max(int(np.abs(s).max()) for s in shifts)
        if lam_radius > supported:
            raise DomainError(
                f"box supports lattice shifts up to {supported} grid units, "
                f"requested {lam_radius}; enlarge half_width (truncation error "
                f"~ boundary decay {f.boundary_decay():.3e})")
    vals = _forward_values(f, np.zeros(spec.n, dtype=int),
                           np.zeros(spec.n, dtype=int))
    return SectionSamples(spec, f.quotient, vals,
                          truncation_error=f.boundary_decay())


def alias_margin(spec: GridSpec) -> int:
    """Sampling-theorem slack of the inverse transform, in grid units.

    The periodic trapezoid sum in wgz_inverse identifies frequencies that
    differ by a vector of N^2 * (k gram1)^{-1} Z^n; reconstruction is exact
    only when the shortest such vector (max-norm, grid units) exceeds the
    box diameter 2*M*N.  Returns shortest - diameter (positive = safe).
    """
    n, nn = spec.n, spec.divisions
    dual = np.linalg.inv(spec.pairing_matrix()) * nn ** 2
    best = None
    for x in itertools.product(range(-2, 3), repeat=n):
        if all(v == 0 for v in x):
            continue
        vec = dual @ np.asarray(x, dtype=float)
        m = int(np.rint(np.abs(vec).max()))
        best = m if best is None else min(best, m)
    return best - 2 * spec.half_width * nn


def wgz_inverse(s: SectionSamples) -> GridFunctionFamily:
    """Invert section samples back to a function family on the box grid.

    Requires an alias-free grid (alias_margin(spec) > 0); otherwise the
    periodic quadrature folds distant box points onto each other.
    """
    if alias_margin(s.spec) <= 0:
        raise DomainError(
            "grid too coarse for alias-free inversion; increase divisions "
            f"(alias margin {alias_margin(s.spec)} grid units)")
    spec, quotient = s.spec, s.quotient
    nn = spec.divisions
    cell = spec.cell_coords()
    box = spec.box_coords()
    kg = spec.pairing_matrix()
    gam = _gamma_grid_coords(spec, quotient)
    # strip the transform prefactor: st[p, q] = s[p, q] e^{-pi i <p, q>_k}
    st = s.values * np.exp(-1j * math.pi * (cell @ kg @ cell.T) / nn ** 2)
    # half-angle Fourier back to the box: B[p, m] = mean_q st[p, q] e^{2 pi i <m, q>_k}
    em = np.exp(2j * math.pi * (cell @ kg @ box.T) / nn ** 2)
    bmat = st @ em / nn ** spec.n                  # (C, B^n)
    fam = np.zeros((quotient.order, len(box)), dtype=complex)
    for ghat in range(quotient.order):
        folded = (box - gam[ghat]) % nn             # p(m, ghat)
        p_idx = folded[:, 0].copy()
        for j in range(1, spec.n):
            p_idx = p_idx * nn + folded[:, j]
        col = bmat[p_idx, np.arange(len(box))]
        for g in range(quotient.order):
            phase = np.exp(2j * math.pi
                           * float(gam[g] @ kg @ gam[ghat]) / nn ** 2)
            fam[g] += phase * col
    fam /= math.sqrt(quotient.order)
    return GridFunctionFamily(spec, quotient, fam)


def inner_family(f: GridFunctionFamily, g: GridFunctionFamily) -> complex:
    """<f, g> = sum_gamma int f conj(g) dvol_k by the box trapezoid rule."""
    return complex(np.vdot(g.values, f.values)) * f.spec.cell_volume()


def inner_section(s1: SectionSamples, s2: SectionSamples) -> complex:
    """(1/Vol Lambda) double integral over F_Lambda^2 with dvol_k."""
    spec = s1.spec
    vol = math.sqrt(float(np.linalg.det(spec.pairing_matrix())))
    return complex(np.vdot(s2.values, s1.values)) * vol / spec.divisions ** (2 * spec.n)


def quasi_periodicity_residual(f: GridFunctionFamily, s: SectionSamples,
                               translations: Optional[List] = None) -> float:
    """Sup residual of s(A + lambda) = e_lambda(A) s(A) over coroot translations."""
    spec, quotient = f.spec, f.quotient
    rs, k, nn = spec.rs, spec.k, spec.divisions
    if translations is None:
        eye = np.eye(spec.n, dtype=int)
        translations = [(eye[j], 0 * eye[j]) for j in range(spec.n)]
        translations += [(0 * eye[j], eye[j]) for j in range(spec.n)]
        translations += [(eye[0], eye[-1 % spec.n])]
    cell = spec.cell_coords() / nn
    worst = 0.0
    for mu1, mu2 in translations:
        if np.abs(mu1).max() >= spec.half_width:
            continue
        lhs = _forward_values(f, np.asarray(mu1), np.asarray(mu2),
                              skip_outside=True)
        mult = np.empty_like(s.values)
        for p, t1 in enumerate(cell):
            for q, t2 in enumerate(cell):
                mult[p, q] = multiplier_eval(rs, k, mu1, mu2, t1, t2)
        worst = max(worst, float(np.abs(lhs - mult * s.values).max()))
    return worst


def apply_finite_fourier(f: GridFunctionFamily, inverse: bool = False
                         ) -> GridFunctionFamily:
    """F_Z (or its inverse) acting on the finite index of a family."""
    spec, quotient = f.spec, f.quotient
    nn = spec.divisions
    kg = spec.pairing_matrix()
    gam = _gamma_grid_coords(spec, quotient)
    expo = (gam @ kg @ gam.T) / nn ** 2
    sign = -1.0 if inverse else 1.0
    mat = np.exp(sign * 2j * math.pi * expo) / math.sqrt(quotient.order)
    return GridFunctionFamily(spec, quotient, mat @ f.values)


def prequantum_T(f: GridFunctionFamily) -> GridFunctionFamily:
    """T-hat = G_Z (finite Gauss phase) composed with G_E^{-1} (pointwise)."""
    spec, quotient = f.spec, f.quotient
    nn = spec.divisions
    kg = spec.pairing_matrix()
    box = spec.box_coords()
    gam = _gamma_grid_coords(spec, quotient)
    qbox = np.einsum("pi,ij,pj->p", box, kg, box) / nn ** 2
    out = f.values * np.exp(-1j * math.pi * qbox)[None, :]
    qg = np.einsum("pi,ij,pj->p", gam, kg, gam) / nn ** 2
    out = out * np.exp(1j * math.pi * qg)[:, None]
    return GridFunctionFamily(spec, quotient, out)


def prequantum_S(f: GridFunctionFamily) -> GridFunctionFamily:
    """S-hat = F_Z^{-1} composed with the continuous Fourier transform F_E.

    F_E is evaluated by box quadrature with the dvol_k weight; accuracy is
    limited by the sampling resolution and the decay of f at the boundary.
    """
    spec, quotient = f.spec, f.quotient
    nn = spec.divisions
    kg = spec.pairing_matrix()
    box = spec.box_coords()
    vals = np.empty_like(f.values)
    chunk = max(1, 10_000_000 // max(len(box), 1))
    for lo in range(0, len(box), chunk):
        kernel = np.exp(2j * math.pi
                        * (box[lo:lo + chunk] @ kg @ box.T) / nn ** 2)
        vals[:, lo:lo + chunk] = f.values @ kernel.T
    vals *= spec.cell_volume()
    return apply_finite_fourier(
        GridFunctionFamily(spec, quotient, vals), inverse=True)


def weyl_action(f: GridFunctionFamily, w) -> GridFunctionFamily:
    """The action f(theta, gamma) -> f(w theta, w gamma) on sampled data."""
    spec, quotient = f.spec, f.quotient
    box = spec.box_coords()
    wmat = np.asarray(w.matrix, dtype=int)
    idx = spec.box_flat_index(box @ wmat.T)
    perm = [quotient.index_of(w.apply(rep)) for rep in quotient.reps]
    return GridFunctionFamily(spec, quotient, f.values[perm][:, idx])


def section_S(s: SectionSamples) -> SectionSamples:
    """S-tilde: psi(theta1, theta2) -> psi(theta2, -theta1), folded to F_Lambda."""
    spec = s.spec
    nn = spec.divisions
    cell = spec.cell_coords()
    kg = spec.pairing_matrix()
    out = np.empty_like(s.values)
    for p, t1 in enumerate(cell):
        folded = (-t1) % nn
        mu = (-t1 - folded) // nn
        pp = 0
        for j in range(spec.n):
            pp = pp * nn + folded[j]
        phases = np.exp(-1j * math.pi * (cell @ kg @ mu) / nn)
        out[p, :] = phases * s.values[:, pp]
    return SectionSamples(spec, s.quotient, out, s.truncation_error)


def section_T(s: SectionSamples) -> SectionSamples:
    """T-tilde: psi(theta1, theta2) -> psi(theta1, theta1 + theta2), folded."""
    spec = s.spec
    nn = spec.divisions
    cell = spec.cell_coords()
    kg = spec.pairing_matrix()
    out = np.empty_like(s.values)
    for q, t2 in enumerate(cell):
        tot = cell + t2
        folded = tot % nn
        mu = (tot - folded) // nn
        q_idx = folded[:, 0].copy()
        for j in range(1, spec.n):
            q_idx = q_idx * nn + folded[:, j]
        phases = np.exp(-1j * math.pi
                        * np.einsum("pi,ij,pj->p", cell, kg, mu) / nn)
        out[:, q] = phases * s.values[np.arange(len(cell)), q_idx]
    return SectionSamples(spec, s.quotient, out, s.truncation_error)


def roundtrip_report(rs: RootSystem, k: int, resolution: int, box_radius: float,
                     trials: int = 20, seed: int = 0) -> dict:
    """Round-trip and Parseval residuals on randomized inputs, JSON-ready."""
    spec = grid_spec_from_box(rs, k, resolution, box_radius)
    quotient = quotient_group(rs, k)
    rng = np.random.default_rng(seed)
    worst_rt = 0.0
    worst_parseval = 0.0
    fams = [gaussian_family(spec, quotient)]
    fams += [random_gaussian_poly_family(spec, quotient, rng)
             for _ in range(max(trials, 2) - 1)]
    sections = [wgz_forward(f) for f in fams]
    for f, s in zip(fams, sections):
        back = wgz_inverse(s)
        scale = max(float(np.abs(f.values).max()), 1e-30)
        worst_rt = max(worst_rt,
                       float(np.abs(back.values - f.values).max()) / scale)
    for (f, sf), (g, sg) in zip(zip(fams, sections), zip(fams[1:], sections[1:])):
        lhs = inner_section(sf, sg)
        rhs = inner_family(f, g)
        worst_parseval = max(worst_parseval, abs(lhs - rhs) / max(abs(rhs), 1e-30))
    qp = quasi_periodicity_residual(fams[0], sections[0])
    return {
        "type": str(rs.lie_type),
        "level": k,
        "divisions": spec.divisions,
        "half_width": spec.half_width,
        "box_radius": box_radius,
        "trials": len(fams),
        "roundtrip_residual": worst_rt,
        "parseval_relative_error": worst_parseval,
        "quasi_periodicity_residual": qp,
        "boundary_decay": fams[0].boundary_decay(),
    }
