import math

import pytest
from hypothesis import given, settings

from newtonjumps.diagram import Segment, SignedChainSpec, cross, deform, lies_below, nu_axes, realize_chain, triangle
from newtonjumps.eea import derived_table_pj, eea_table
from newtonjumps.procedures import (
    Frame,
    ProcedureError,
    expected_unit_jumps,
    final_shape,
    gamma_k,
    points_PD,
    procedure1,
    procedure2,
    procedure2_full,
    procedure3,
    procedure4,
    procedure5,
    procedure6_master,
    z_sequence,
)

from conftest import coprime_pairs, counted_nu
from jump_checks import admissible_line, check_local_jumps


def pts(seq):
    return [tuple(p) for p in seq]


def all_pairs(limit):
    return [(p, q) for q in range(3, limit + 1) for p in range(2, q) if math.gcd(p, q) == 1]


class TestGamma:
    def test_gamma_zero_is_the_segment(self):
        line = eea_table(40, 73).line
        assert gamma_k(line, 0) == triangle(40, 73)

    def test_gamma_n_shape(self):
        for p, q in [(5, 7), (40, 73), (7, 17), (12, 43)]:
            line = admissible_line(p, q)
            a, b, a1, b1, n = line.a, line.b, line.a1, line.b1, line.n
            walk_from = (0, q) if line.sign == -1 else (p, 0)
            spec = SignedChainSpec(-line.sign, ((n + 1, Segment(a1, b1)), (n, Segment(a - a1, b - b1))))
            assert gamma_k(line, n) == realize_chain(walk_from, spec)
            assert nu_axes(gamma_k(line, 0)) - nu_axes(gamma_k(line, n)) == n * (n + 1)

    def test_points_5_7(self):
        line = eea_table(5, 7).line
        assert [pts(x) for x in points_PD(line, 0)] == [[(2, 4), (4, 1)], [(1, 5), (3, 2)]]
        assert [pts(x) for x in points_PD(line, 1)] == [[(3, 2)], [(2, 3)]]
        g0, g1 = gamma_k(line, 0), gamma_k(line, 1)
        assert [counted_nu(deform(g0, [x])) for x in [(2, 4), (4, 1), (1, 5), (3, 2)]] == [23, 22, 21, 20]
        assert [counted_nu(deform(g1, [x])) for x in [(3, 2), (2, 3)]] == [19, 18]

    def test_deform_5_7_by_first_point(self):
        line = eea_table(5, 7).line
        (p1, *_), _ = points_PD(line, 0)
        d = deform(triangle(5, 7), [p1])
        assert nu_axes(triangle(5, 7)) - nu_axes(d) == 1 == 24 - counted_nu(d)

    @pytest.mark.parametrize("pq", [(5, 7), (40, 73), (12, 43), (17, 40), (30, 107)])
    def test_P_points_colinear_with_corner(self, pq):
        line = admissible_line(*pq)
        frame = Frame.standalone(line)
        for k in range(line.n):
            _, corner = frame.corners(0, k)
            ps, ds = frame.points(0, k)
            for pt in ps:
                assert cross((ps[0].x - corner.x, ps[0].y - corner.y), (pt.x - corner.x, pt.y - corner.y)) == 0
            shift = (-line.sign * line.a1, line.sign * line.b1)
            assert [(d.x - p.x, d.y - p.y) for p, d in zip(ps, ds)] == [shift] * len(ps)

    @pytest.mark.parametrize("pq", [(5, 7), (40, 73), (12, 43), (17, 40)])
    def test_gamma_step_identity(self, pq):
        # Gamma^k + (P_{n-k}, D_1) equals Gamma^0 + the same points, which is Gamma^{k+1}
        line = admissible_line(*pq)
        for k in range(line.n):
            ps, ds = points_PD(line, k)
            g_k = gamma_k(line, k)
            added = [ps[-1], ds[0]]
            assert deform(g_k, added) == deform(gamma_k(line, 0), added) == gamma_k(line, k + 1)

    def test_gamma_k_range(self):
        with pytest.raises(ProcedureError):
            gamma_k(eea_table(5, 7).line, 3)


class TestProcedureOne:
    def test_unit_jumps(self):
        for pq in [(5, 7), (40, 73), (17, 40)]:
            line = admissible_line(*pq)
            seq = procedure1(line)
            assert all(s.nu_predicted == s.nu_computed for s in seq.steps)
            assert seq.unit_prefix() == line.n * (line.n + 1) == len(seq.values) - 1

    def test_rejects_a_equal_one(self):
        with pytest.raises(ProcedureError):
            procedure1(eea_table(5, 9).line)

    def test_unit_head_is_shifted(self):
        derived = derived_table_pj(eea_table(40, 73).line, 1, 1)
        assert derived.line.n == 1
        seq = procedure1(derived.line)
        n = derived.rows[1][2] + 1
        assert seq.unit_prefix() == n * (n + 1)

    def test_anchor_translates(self):
        line = eea_table(5, 7).line
        seq = procedure1(line, anchor=(0, 7))
        assert seq.origin == triangle(5, 7)


class TestProcedureTwo:
    def test_sigma_zero_matches_procedure_one(self):
        line = eea_table(40, 73).line
        assert procedure2(line, 0).values == procedure1(line).values

    def test_sigma_link(self):
        line = eea_table(40, 73).line
        frame = Frame.standalone(line)
        for j in range(line.n1):
            assert nu_axes(frame.sigma(j + 1)) == nu_axes(frame.gamma(j, line.n)) + line.n

    def test_full_sweep_count(self):
        for pq in [(40, 73), (12, 43), (17, 40)]:
            line = admissible_line(*pq)
            if not line.a2:
                continue
            seq = procedure2_full(line)
            assert seq.unit_prefix() == line.n * (line.n * line.n1 + 1)
            # each later Sigma^j re-attains a value already reached
            sigmas = [s for s in seq.steps if s.label.startswith("Sigma^")]
            assert len(sigmas) == line.n1 - 1
            assert all(s.duplicate and s.jump is None for s in sigmas)

    def test_j_bounds(self):
        line = eea_table(40, 73).line
        with pytest.raises(ProcedureError):
            procedure2(line, line.n1)
        with pytest.raises(ProcedureError):
            procedure2(eea_table(5, 7).line, 1)


class TestShortProcedures:
    def test_procedure3_7_17(self):
        line = eea_table(7, 17).line
        seq = procedure3(line)
        assert seq.unit_prefix() == 12 == expected_unit_jumps(7, 17)
        m = 17 // 7
        big, small, mm = seq.final_shape()
        assert (big, small, mm) == (line.n, line.n * (line.n1 - 1) + 1, m)

    def test_procedure3_rejects_long(self):
        with pytest.raises(ProcedureError):
            procedure3(eea_table(40, 73).line)

    def test_procedure4_4_11(self):
        seq = procedure4(4, 11)
        assert seq.values == [30, 29, 28, 27]
        assert seq.final_shape() == (3, 1, 2)

    def test_procedure4_rejects(self):
        with pytest.raises(ProcedureError):
            procedure4(5, 7)

    def test_procedure5_examples(self):
        assert procedure5(3, 7).values == [12, 11, 10]
        assert procedure5(2, 5).values == [4, 3]
        for p, q in [(3, 7), (2, 5), (6, 13)]:
            assert procedure5(p, q).final_shape()[0] == 1

    def test_procedure5_rejects(self):
        with pytest.raises(ProcedureError):
            procedure5(5, 7)


class TestMaster:
    def test_40_73(self):
        seq = procedure6_master(40, 73)
        assert seq.origin_nu == 2808
        assert seq.unit_prefix() == 231 == len(seq.values) - 1
        assert seq.values[0] == 2808 and seq.values[-1] == 2808 - 231
        assert seq.final_shape() == (33, 7, 1)
        assert [s[1] for s in seq.stages] == ["procedure2", "procedure2", "procedure2", "procedure4"]
        assert all(s.nu_predicted == s.nu_computed for s in seq.steps)

    def test_z_sequence(self):
        assert z_sequence(eea_table(40, 73).rows) == [1, 2, 5, 7, 33, 40]

    def test_5_7(self):
        assert procedure6_master(5, 7).values == list(range(24, 17, -1))

    @pytest.mark.parametrize("p, m", [(2, 1), (3, 2), (7, 3), (11, 5)])
    def test_very_short(self, p, m):
        assert procedure6_master(p, m * p + 1).unit_prefix() == p - 1

    def test_theorem_for_small_pairs(self):
        for p, q in all_pairs(60):
            if p > 30:
                continue
            seq = procedure6_master(p, q)
            nu0 = (p - 1) * (q - 1)
            assert seq.values == list(range(nu0, nu0 - expected_unit_jumps(p, q) - 1, -1)), (p, q)
            r = q % p
            assert seq.final_shape() == (r, p - r, q // p), (p, q)

    def test_rejects_non_coprime(self):
        with pytest.raises(ValueError):
            procedure6_master(4, 6)

    def test_intermediate_diagrams_lie_below(self):
        seq = procedure6_master(40, 73)
        for step in seq.steps:
            assert lies_below(step.result, seq.origin)
            assert lies_below(step.result, step.base)


class TestLocalJumps:
    @settings(max_examples=150, deadline=None)
    @given(coprime_pairs(max_q=300))
    def test_local_jumps(self, pq):
        if pq[0] <= 200:
            check_local_jumps(*pq)

    def test_emitted_points_above_last_gamma(self):
        for pq in [(40, 73), (12, 43), (17, 40), (29, 70)]:
            line = admissible_line(*pq)
            if not line.a2:
                continue
            frame = Frame.standalone(line)
            floor = frame.gamma(line.n1 - 1, line.n)
            seq = procedure2_full(line)
            for step in seq.steps:
                for pt in step.added_points:
                    assert floor.contains(pt), (pq, step.label)

    @settings(max_examples=200, deadline=None)
    @given(coprime_pairs(max_q=120))
    def test_master_unit_prefix(self, pq):
        seq = procedure6_master(*pq)
        assert seq.unit_prefix() == expected_unit_jumps(*pq) == len(seq.values) - 1
