import math
from fractions import Fraction as F

import numpy as np
import pytest

from trihahn import (DegreeIndex, ModelParams, RegimeViolationError,
                     Site, assemble, coupling_B, coupling_J, coupling_L,
                     couplings, eigenvalue_collisions, get_context, norm_r,
                     sites, tratnik_D, validate_params)
from trihahn.model import grid_points, json_dumps


class TestValidate:
    def test_reference_sets_pass(self, fig1, fig2):
        assert validate_params(fig1).ok
        assert validate_params(fig2).ok

    def test_equal_a_b_fails(self):
        rep = validate_params(ModelParams(F(12), F(12), F(1, 2), 4))
        assert not rep.ok
        assert any("a - b > N" in v for v in rep.violations)

    def test_each_inequality_reported(self):
        rep = validate_params(ModelParams(F(3), F(2), F(0), 4))
        assert len(rep.violations) == 3


class TestCouplings:
    def test_boundary_zeros(self, fig1):
        cs = couplings(fig1)
        for s in sites(fig1.N):
            if s.i == 0:
                assert cs.J[s] == 0.0
                assert cs.B[s] == 0.0
            if s.j == 0:
                assert cs.L[s] == 0.0

    def test_values_match_exact_radicands(self, fig1):
        a, b, c, N = fig1.a, fig1.b, fig1.c, fig1.N
        for (m, n) in ((1, 0), (2, 3), (4, 1)):
            rad_j = F(m) * (N + 1 - m - n) * (a - b + 1 - m) * (c + N + m + n - 1)
            rad_l = F(m + 1) * n * (a - b - m) * (b - c + 1 - n)
            assert coupling_J(m, n, fig1) == pytest.approx(math.sqrt(float(rad_j)), rel=1e-15)
            assert coupling_L(m, n, fig1) == pytest.approx(math.sqrt(float(rad_l)), rel=1e-15)
            assert coupling_B(m, n, fig1) == pytest.approx(float(F(m) * (a - 2 * b + 1 - 2 * m)))

    def test_negative_radicand_reported(self):
        # a - b = 2 < N makes (a - b + 1 - m) negative for m = 4
        bad = ModelParams(F(14), F(12), F(1, 2), 6)
        with pytest.raises(RegimeViolationError):
            coupling_J(4, 0, bad)


class TestAssemble:
    def test_smallest_lattice_by_hand(self):
        p = ModelParams(F(10), F(4), F(1, 2), 1)
        assert p.is_valid
        h = assemble(p)
        assert h.dimension == 3
        assert [s.astuple() for s in h.sites] == [(0, 0), (1, 0), (0, 1)]
        j10 = coupling_J(1, 0, p)
        l01 = coupling_L(0, 1, p)
        b10 = coupling_B(1, 0, p)
        want = np.array([[0.0, j10, 0.0], [j10, b10, l01], [0.0, l01, 0.0]])
        assert np.array_equal(h.matrix, want)

    def test_exactly_symmetric(self, fig1):
        h = assemble(fig1)
        assert np.array_equal(h.matrix, h.matrix.T)

    def test_sparsity_pattern(self, fig1):
        h = assemble(fig1)
        idx = h.index
        for s in h.sites:
            row = h.matrix[idx[s]]
            nz = {h.sites[k] for k in np.nonzero(row)[0]}
            allowed = {s, Site(s.i + 1, s.j), Site(s.i - 1, s.j),
                       Site(s.i + 1, s.j - 1), Site(s.i - 1, s.j + 1)}
            assert nz <= allowed
            assert np.count_nonzero(row) <= 5

    def test_eigen_relation(self, fig1, fig2):
        for p in (fig1, fig2):
            ctx = get_context(p)
            h = assemble(p)
            hnorm = np.abs(h.matrix).sum(axis=1).max()
            resid = np.abs(h.matrix @ ctx.W - ctx.W * ctx.lam).max()
            assert resid <= 1e-8 * hnorm

    def test_wrong_j_variant_fails_eigen_relation(self, fig1):
        ctx = get_context(fig1)
        h = assemble(fig1, j_shift=+1)
        hnorm = np.abs(h.matrix).sum(axis=1).max()
        resid = np.abs(h.matrix @ ctx.W - ctx.W * ctx.lam).max()
        assert resid > 1e-4 * hnorm

    def test_orthonormal_recurrence_with_couplings(self, fig1):
        # lambda_{x,y} Dt_{m,n} = J_{m+1,n} Dt_{m+1,n} + J_{m,n} Dt_{m-1,n}
        #   + B_{m,n} Dt_{m,n} + L_{m-1,n+1} Dt_{m-1,n+1} + L_{m,n} Dt_{m+1,n-1}
        p = fig1

        def dt(m, n, g):
            if m < 0 or n < 0 or m + n > p.N:
                return 0.0
            return tratnik_D(DegreeIndex(m, n), g, p) / math.sqrt(norm_r(DegreeIndex(m, n), p))

        for g in grid_points(p.N):
            lam = float(F(g.x) * (g.x + p.a) - F(g.y) * (g.y + p.b))
            for m in range(p.N + 1):
                for n in range(p.N + 1 - m):
                    terms = [
                        coupling_J(m + 1, n, p) * dt(m + 1, n, g),
                        coupling_J(m, n, p) * dt(m - 1, n, g),
                        coupling_B(m, n, p) * dt(m, n, g),
                        coupling_L(m - 1, n + 1, p) * dt(m - 1, n + 1, g),
                        coupling_L(m, n, p) * dt(m + 1, n - 1, g),
                    ]
                    lhs = lam * dt(m, n, g)
                    scale = max(1.0, abs(lhs), *(abs(t) for t in terms))
                    assert abs(lhs - sum(terms)) <= 1e-8 * scale


class TestSerialization:
    def test_dump_schema_and_roundtrip(self, fig1):
        import json

        doc = assemble(fig1).to_dict()
        text = json_dumps(doc)
        back = json.loads(text)
        assert back["dimension"] == 28
        assert len(back["sites"]) == 28
        assert len(back["diagonal"]) == 28
        kinds = {e["kind"] for e in back["edges"]}
        assert kinds == {"horizontal", "diagonal"}
        # weights re-parse to the exact same doubles
        for e, e2 in zip(doc["edges"], back["edges"]):
            assert e2["weight"] == e["weight"]


class TestSpectrum:
    def test_no_collisions_odd_reference(self, fig1):
        assert eigenvalue_collisions(fig1) == []

    def test_collision_reported_even_reference(self, fig2):
        # this parameter set has one exact degeneracy; nothing downstream
        # divides by spectral gaps, so it is reported, not rejected
        groups = eigenvalue_collisions(fig2)
        assert len(groups) == 1
        assert all(len(g) >= 2 for g in groups)
