"""Compact modular data oracles and the shifted-level bridge."""

import math
from fractions import Fraction

import numpy as np
import pytest

from cstorus.compactcheck import (CompactModularData, compare_shifted,
                                  is_simply_laced, kac_peterson_sum,
                                  su2_modular_data)
from cstorus.errors import DomainError, SchemaError
from cstorus.finrep import Convention
from cstorus.roots import LieType, build_root_system


def modular_relations_residual(data: CompactModularData) -> float:
    """max residual of S S^dagger = Id, (S T)^3 = S^2, S^2 = charge conj."""
    eye = np.eye(data.dim)
    s, t = data.s, data.t
    st = s @ t
    r1 = np.abs(s @ s.conj().T - eye).max()
    r2 = np.abs(st @ st @ st - s @ s).max()
    s2 = s @ s
    r3 = np.abs(s2 @ s2 - eye).max()
    return max(float(r1), float(r2), float(r3))


def test_su2_closed_form_values():
    d = su2_modular_data(1)
    assert d.dim == 2
    root = 1 / math.sqrt(2)
    assert np.abs(d.s - np.array([[root, root], [root, -root]])).max() < 1e-14
    # T entries e^{-pi i/4} e^{pi i a^2/6} for a = 1, 2
    assert abs(d.t[0, 0] - np.exp(1j * math.pi * (1 / 6 - 1 / 4))) < 1e-14
    assert abs(d.t[1, 1] - np.exp(1j * math.pi * (4 / 6 - 1 / 4))) < 1e-14
    assert d.labels == ((Fraction(1, 2),), (Fraction(1),))


@pytest.mark.parametrize("k", range(1, 9))
def test_su2_modular_relations(k):
    d = su2_modular_data(k)
    assert modular_relations_residual(d) < 1e-12
    assert np.abs(d.s - d.s.T).max() < 1e-14
    assert (d.s[0] > 0).all()          # positive identity row


def test_su2_validation():
    with pytest.raises(SchemaError):
        su2_modular_data(0)


def test_simply_laced_predicate():
    assert is_simply_laced(build_root_system(LieType("A", 2)))
    assert is_simply_laced(build_root_system(LieType("A", 1)))
    assert not is_simply_laced(build_root_system(LieType("B", 2)))
    assert not is_simply_laced(build_root_system(LieType("G", 2)))


@pytest.mark.parametrize("k", range(1, 7))
def test_kac_peterson_matches_su2(k):
    rs = build_root_system(LieType("A", 1))
    kp = kac_peterson_sum(rs, k)
    su2 = su2_modular_data(k)
    assert kp.labels == su2.labels
    assert np.abs(kp.s - su2.s).max() < 1e-12
    assert np.abs(kp.t - su2.t).max() < 1e-14


@pytest.mark.parametrize("k", [1, 2, 3])
def test_kac_peterson_a2_properties(k):
    rs = build_root_system(LieType("A", 2))
    d = kac_peterson_sum(rs, k)
    assert d.dim == (k + 1) * (k + 2) // 2
    assert modular_relations_residual(d) < 1e-12
    assert np.abs(d.s - d.s.T).max() < 1e-12
    assert (d.s[0].real > 0).all() and np.abs(d.s[0].imag).max() < 1e-12


def test_kac_peterson_guards():
    with pytest.raises(DomainError):
        kac_peterson_sum(build_root_system(LieType("B", 2)), 2)
    with pytest.raises(SchemaError):
        kac_peterson_sum(build_root_system(LieType("A", 2)), 0)


@pytest.mark.parametrize("k", range(1, 7))
def test_bridge_rank_one(k):
    rs = build_root_system(LieType("A", 1))
    rep = compare_shifted(rs, k)
    assert rep["passed"], rep
    assert rep["residual_S"] < 1e-10
    assert rep["residual_T"] < 1e-10
    assert rep["snap_error"] < 1e-10
    assert rep["shifted_level"] == k + 2
    assert rep["dim"] == k + 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bridge_rank_two(k):
    rs = build_root_system(LieType("A", 2))
    rep = compare_shifted(rs, k)
    assert rep["passed"], rep
    assert rep["residual_S"] < 1e-10
    assert rep["residual_T"] < 1e-10
    # identity-phase snap: no twist is needed
    assert abs(complex(*rep["snapped_S_phase"]) - 1) < 1e-14
    assert abs(complex(*rep["fitted_T_phase"]) - 1) < 1e-10


def test_bridge_rejects_non_simply_laced():
    with pytest.raises(DomainError):
        compare_shifted(build_root_system(LieType("B", 2)), 2)


def test_bridge_negative_control():
    rs = build_root_system(LieType("A", 1))
    rep = compare_shifted(rs, 3, convention=Convention.from_name("theorem"))
    assert not rep["passed"]
    assert max(rep["residual_S"], rep["residual_T"]) >= 1e-2


def test_sector_dimension_matches_oracle():
    # anti-invariant sector at level k + h counts integrable weights at level k
    rs = build_root_system(LieType("A", 1))
    for k in range(1, 7):
        assert compare_shifted(rs, k)["dim"] == su2_modular_data(k).dim
