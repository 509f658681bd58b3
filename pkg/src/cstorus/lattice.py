"""Coroot lattice, its k-scaled dual, the finite quotient group, alcove
point enumeration and affine-Weyl folding.

Conventions: all vectors are coroot-basis coordinates (exact rationals).
The coroot lattice is Z^n in these coordinates; canonical coset
representatives of the quotient live in the half-open cube [0,1)^n.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from . import exact
from .errors import DomainError, ResourceLimitError, SchemaError
from .roots import RootSystem, WeylElement, reflection_matrix

Vec = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Lattice:
    basis: Tuple[Tuple[Fraction, ...], ...]  # columns are basis vectors
    covolume_k_sq: Fraction                  # Vol_k(fundamental domain)^2

    def basis_vector(self, j: int) -> Vec:
        return tuple(row[j] for row in self.basis)


def coroot_lattice(rs: RootSystem, k: int) -> Lattice:
    n = rs.rank
    kg = exact.mat([[k * rs.gram1[i][j] for j in range(n)] for i in range(n)])
    return Lattice(basis=exact.identity(n), covolume_k_sq=exact.det(kg))


def scaled_dual_lattice(rs: RootSystem, k: int) -> Lattice:
    """Lattice of vectors pairing integrally with the coroot lattice under
    the k-scaled inner product; basis = (k*gram1)^{-1}."""
    if k < 1:
        raise SchemaError(f"level k must be a positive integer, got {k}")
    n = rs.rank
    kg = exact.mat([[k * rs.gram1[i][j] for j in range(n)] for i in range(n)])
    basis = exact.inverse(kg)
    # Z^n (the coroot lattice) must be a sublattice: columns of kg are the
    # coroot basis vectors in dual-basis coordinates and are integral.
    assert all(e.denominator == 1 for row in kg for e in row)
    covol_sq = Fraction(1) / exact.det(kg)
    return Lattice(basis=basis, covolume_k_sq=covol_sq)


def in_scaled_dual(rs: RootSystem, k: int, v) -> bool:
    n = rs.rank
    vv = tuple(Fraction(x) for x in v)
    coords = tuple(k * sum(rs.gram1[i][j] * vv[j] for j in range(n)) for i in range(n))
    return exact.is_integral(coords)


@dataclass(frozen=True)
class QuotientGroup:
    rs: RootSystem
    k: int
    reps: Tuple[Vec, ...]                 # canonical reps, coords in [0,1)
    snf_invariants: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.reps)

    def index_of(self, v) -> int:
        return self._index()[exact.frac_part(tuple(Fraction(x) for x in v))]

    def _index(self) -> Dict[Vec, int]:
        if not hasattr(self, "_idx"):
            object.__setattr__(self, "_idx", {r: i for i, r in enumerate(self.reps)})
        return self._idx

    def add(self, a, b) -> Vec:
        return exact.frac_part(exact.vec_add(a, b))

    def neg(self, a) -> Vec:
        return exact.frac_part(tuple(-Fraction(x) for x in a))

    def pairing_k(self, a, b) -> Fraction:
        return self.k * self.rs.pairing1(a, b)


def quotient_group(rs: RootSystem, k: int, max_order: int = 100_000) -> QuotientGroup:
    """The finite abelian group (k-scaled dual lattice) / (coroot lattice)."""
    if k < 1:
        raise SchemaError(f"level k must be a positive integer, got {k}")
    n = rs.rank
    kg = [[k * rs.gram1[i][j] for j in range(n)] for i in range(n)]
    order = exact.det(exact.mat(kg))
    assert order.denominator == 1
    order = int(order)
    if order > max_order:
        raise ResourceLimitError(
            f"|Z_k| = {order} exceeds the ceiling {max_order} for {rs.lie_type}, k={k}")

    # In dual-lattice coordinates the coroot lattice is spanned by the
    # columns of k*gram1; Smith form gives the cyclic decomposition.
    d, u, v = exact.smith_normal_form(kg)
    divisors = tuple(int(d[i][i]) for i in range(n))
    assert all(x > 0 for x in divisors)
    u_inv = exact.inverse(exact.mat(u))
    assert all(e.denominator == 1 for row in u_inv for e in row)

    dual = scaled_dual_lattice(rs, k)
    reps: List[Vec] = []
    for y in itertools.product(*[range(di) for di in divisors]):
        x = exact.mat_vec(u_inv, tuple(Fraction(yi) for yi in y))
        gamma = exact.mat_vec(dual.basis, x)
        reps.append(exact.frac_part(gamma))
    assert len(set(reps)) == order == len(reps)
    reps.sort()
    invariants = tuple(x for x in divisors if x > 1)
    return QuotientGroup(rs=rs, k=k, reps=tuple(reps), snf_invariants=invariants)


@dataclass(frozen=True)
class AlcoveSet:
    rs: RootSystem
    k: int
    closed_points: Tuple[Vec, ...]
    open_points: Tuple[Vec, ...]
    stabilizer_sizes: Tuple[int, ...]     # per closed point, in W mod coroot lattice


def _comarks(rs: RootSystem) -> Tuple[int, ...]:
    """Coroot-basis coordinates of the highest root (integers)."""
    c = rs.highest_root
    assert exact.is_integral(c)
    return tuple(int(x) for x in c)


def alcove_points(rs: RootSystem, k: int) -> AlcoveSet:
    """Dual-lattice points in the closed/open fundamental alcove.

    A point is parametrized by its integer pairings n_i = <gamma, b_i>_k
    with the simple coroots: the alcove conditions become n_i >= 0 and
    sum_i a_i n_i <= k with a_i the highest-root coordinates.
    """
    if k < 1:
        raise SchemaError(f"level k must be a positive integer, got {k}")
    n = rs.rank
    a = _comarks(rs)
    dual = scaled_dual_lattice(rs, k)
    wg = rs.weyl_group()

    closed: List[Vec] = []
    opened: List[Vec] = []
    stabs: List[int] = []
    ranges = [range(0, k // ai + 1) for ai in a]
    for nvec in sorted(itertools.product(*ranges)):
        if sum(ai * ni for ai, ni in zip(a, nvec)) > k:
            continue
        gamma = exact.mat_vec(dual.basis, tuple(Fraction(x) for x in nvec))
        closed.append(gamma)
        interior = all(ni >= 1 for ni in nvec) and \
            sum(ai * ni for ai, ni in zip(a, nvec)) <= k - 1
        if interior:
            opened.append(gamma)
        stab = sum(
            1 for w in wg.elements
            if exact.is_integral(exact.vec_sub(w.apply(gamma), gamma))
        )
        stabs.append(stab)
    return AlcoveSet(rs=rs, k=k, closed_points=tuple(closed),
                     open_points=tuple(opened), stabilizer_sizes=tuple(stabs))


def fold_to_alcove(rs: RootSystem, k: int, gamma) -> Tuple[Vec, WeylElement, int, bool]:
    """Fold a dual-lattice vector into the closed alcove.

    Returns (rep, w, sign, boundary) with rep = w(gamma) + lattice vector,
    rep in the closed alcove, sign = det(w).
    """
    if not in_scaled_dual(rs, k, gamma):
        raise DomainError(f"{gamma} is not in the k-scaled dual lattice (k={k})")
    n = rs.rank
    gm = exact.mat(rs.gram1)
    a = _comarks(rs)
    theta = rs.highest_root
    h_theta = tuple(int(x) for x in theta)  # highest root is long: coroot = root
    s_theta = reflection_matrix(rs, theta, h_theta)

    v = tuple(Fraction(x) for x in gamma)
    wmat = exact.identity(n)
    sign = 1
    for _ in range(100_000):
        pair_simple = [k * sum(rs.gram1[i][j] * v[j] for j in range(n)) for i in range(n)]
        assert all(p.denominator == 1 for p in pair_simple)
        ni = [int(p) for p in pair_simple]
        neg = next((i for i in range(n) if ni[i] < 0), None)
        if neg is not None:
            # simple reflection
            coeff = sum(rs.cartan[neg][j] * v[j] for j in range(n))
            v = tuple(v[i] - (coeff if i == neg else 0) for i in range(n))
            srow = exact.mat([[int(r == c) - (rs.cartan[neg][c] if r == neg else 0)
                               for c in range(n)] for r in range(n)])
            wmat = exact.mat_mul(srow, wmat)
            sign = -sign
            continue
        height = sum(ai * x for ai, x in zip(a, ni))
        if height > k:
            # affine reflection in the wall <x, theta>_1 = 1
            pv = exact.bilinear(gm, theta, v)
            v = tuple(v[i] - (pv - 1) * h_theta[i] for i in range(n))
            wmat = exact.mat_mul(exact.mat(s_theta), wmat)
            sign = -sign
            continue
        boundary = not (all(x >= 1 for x in ni) and height <= k - 1)
        wint = tuple(tuple(int(e) for e in row) for row in wmat)
        return v, WeylElement(wint, sign), sign, boundary
    raise AssertionError("alcove folding did not terminate")


def enumerate_report(rs: RootSystem, k: int) -> dict:
    """JSON-ready report for the `lattice enumerate` CLI command."""
    q = quotient_group(rs, k)
    alc = alcove_points(rs, k)

    def coords(v):
        return [str(x) for x in v]

    return {
        "type": str(rs.lie_type),
        "level": k,
        "order": q.order,
        "invariant_factors": list(q.snf_invariants),
        "reps": [coords(r) for r in q.reps],
        "alcove": {
            "open": [coords(p) for p in alc.open_points],
            "closed": [coords(p) for p in alc.closed_points],
            "stabilizer_sizes": list(alc.stabilizer_sizes),
        },
    }


def enumerate_report_json(rs: RootSystem, k: int) -> str:
    return json.dumps(enumerate_report(rs, k), indent=2, sort_keys=True)
