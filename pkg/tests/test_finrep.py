"""Finite sector matrices: phases, bases, operators, modular relations."""

import math
from fractions import Fraction

import numpy as np
import pytest

from cstorus.errors import SchemaError
from cstorus.finrep import (Convention, finite_fourier, finite_gauss,
                            phase_constants, rep_matrices, symmetrized_basis,
                            unit_phase, verify_sl2z)
from cstorus.lattice import alcove_points, quotient_group
from cstorus.roots import LieType, build_root_system


def test_unit_phase_exact_values():
    assert unit_phase(Fraction(0)) == 1
    assert abs(unit_phase(Fraction(1, 2)) + 1) < 1e-15
    assert abs(unit_phase(Fraction(1, 4)) - 1j) < 1e-15
    assert abs(unit_phase(Fraction(9, 4)) - 1j) < 1e-15
    assert abs(unit_phase(Fraction(-1, 4)) + 1j) < 1e-15


def test_phase_constants_rank_one():
    rs = build_root_system(LieType("A", 1))
    pp = phase_constants(rs)
    assert abs(pp.j + 1j) < 1e-15                       # i^{-1}
    assert abs(pp.omega - np.exp(1j * math.pi / 4)) < 1e-15
    assert pp.omega_exponent == Fraction(1, 8)


@pytest.mark.parametrize("fam,rank", [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
def test_phase_cubic_constraint(fam, rank):
    rs = build_root_system(LieType(fam, rank))
    pp = phase_constants(rs)
    target = unit_phase(Fraction(rs.rank, 8)) / pp.j
    assert abs(pp.omega ** 3 - target) < 1e-12


@pytest.mark.parametrize("fam,rank,k", [("A", 1, 4), ("A", 2, 2), ("B", 2, 3)])
def test_finite_fourier_unitary_order_four(fam, rank, k):
    rs = build_root_system(LieType(fam, rank))
    q = quotient_group(rs, k)
    f = finite_fourier(q)
    eye = np.eye(q.order)
    assert np.abs(f.conj().T @ f - eye).max() < 1e-12
    f2 = f @ f
    assert np.abs(f2 @ f2 - eye).max() < 1e-12          # F^2 = parity, F^4 = Id


def test_symmetrized_bases_orthonormal_and_invariant():
    rs = build_root_system(LieType("A", 2))
    k = 3
    q = quotient_group(rs, k)
    alc = alcove_points(rs, k)
    wg = rs.weyl_group()
    for sector in (0, 1):
        basis = symmetrized_basis(q, alc, sector)
        if not basis:
            continue
        b = np.stack([v.coefficients for v in basis], axis=1)
        gram = b.conj().T @ b
        assert np.abs(gram - np.eye(len(basis))).max() < 1e-12
        # vectors transform with the right character under each reflection
        for w in wg.elements:
            perm = [q.index_of(w.apply(rep)) for rep in q.reps]
            for v in basis:
                moved = np.zeros_like(v.coefficients)
                moved[perm] = v.coefficients
                ch = w.determinant if sector == 1 else 1
                assert np.abs(moved - ch * v.coefficients).max() < 1e-12


@pytest.mark.parametrize("fam,rank,kmax", [("A", 1, 8), ("A", 2, 5), ("B", 2, 3), ("G", 2, 3)])
def test_modular_relations_sweep(fam, rank, kmax):
    rs = build_root_system(LieType(fam, rank))
    for k in range(1, kmax + 1):
        for sector in (0, 1):
            rep = verify_sl2z(rep_matrices(rs, k, sector), tol=1e-10)
            assert rep.passed, (fam, rank, k, sector, rep.to_json_dict())


def test_operator_route_oracle():
    """Projecting the full quotient-space operators onto the symmetrized
    bases must reproduce the assembled sector matrices."""
    for fam, rank, k in [("A", 1, 3), ("A", 2, 2), ("B", 2, 2), ("G", 2, 1)]:
        rs = build_root_system(LieType(fam, rank))
        q = quotient_group(rs, k)
        alc = alcove_points(rs, k)
        pp = phase_constants(rs)
        s_full = unit_phase(-pp.j_exponent) * finite_fourier(q).conj().T
        t_full = unit_phase(-pp.omega_exponent) * finite_gauss(q)
        for sector in (0, 1):
            basis = symmetrized_basis(q, alc, sector)
            if not basis:
                continue
            b = np.stack([v.coefficients for v in basis], axis=1)
            m = rep_matrices(rs, k, sector)
            assert np.abs(b.conj().T @ s_full @ b - m.s).max() < 1e-12
            assert np.abs(b.conj().T @ t_full @ b - m.t).max() < 1e-12


def test_rank_one_worked_example():
    rs = build_root_system(LieType("A", 1))
    m = rep_matrices(rs, 2, sector=1)
    assert m.dim == 1
    assert abs(m.s[0, 0] - 1) < 1e-14
    assert abs(m.t[0, 0] - 1) < 1e-14
    m0 = rep_matrices(rs, 1, sector=0)
    assert m0.dim == 2
    assert np.abs(m0.s.conj().T @ m0.s - np.eye(2)).max() < 1e-14


def test_s_symmetric():
    for fam, rank, k in [("A", 1, 5), ("A", 2, 3)]:
        rs = build_root_system(LieType(fam, rank))
        for sector in (0, 1):
            m = rep_matrices(rs, k, sector)
            assert np.abs(m.s - m.s.T).max() < 1e-12


def test_negative_control_conventions_break_relations():
    rs = build_root_system(LieType("A", 2))
    alt = Convention.from_name("theorem")
    worst = 0.0
    for k in (2, 3):
        for sector in (0, 1):
            rep = verify_sl2z(rep_matrices(rs, k, sector, convention=alt))
            worst = max(worst, rep.residual_braid, rep.residual_s4)
    assert worst >= 1e-2


def test_sector_validation():
    rs = build_root_system(LieType("A", 1))
    with pytest.raises(SchemaError):
        rep_matrices(rs, 2, sector=2)
    with pytest.raises(SchemaError):
        Convention.from_name("other")
