"""Chain-level transport and the Monte-Carlo exponent estimator."""

import numpy as np
import pytest

from pillowtiled import lattice
from pillowtiled.cocycle import StateCache, chain_map, elementary_matrix
from pillowtiled.homology import boundary_matrices, homology_basis, involution_splitting
from pillowtiled.lyapunov import (
    LyapunovEstimate,
    certify_degenerate,
    induced_cocycle,
    run_monte_carlo,
)
from pillowtiled.lyapunov import _matpow
from pillowtiled.orbit import apply_generator
from pillowtiled.permsurf import (
    Origami,
    orientation_double_cover,
    random_origami,
    random_pillow_cover,
)

from test_permsurf import cyclic_pillow

TORUS = Origami(1, (0,), (0,))
L3 = Origami(3, (1, 0, 2), (2, 1, 0))
GENS = ["T", "Tinv", "S", "L"]


def mat_is_identity(m):
    return all(m[i][j] == (1 if i == j else 0) for i in range(len(m)) for j in range(len(m)))


class TestChainMaps:
    def test_torus_single_twist(self):
        cm, final = induced_cocycle(TORUS, ["T"])
        assert cm.matrix == ((1, 1), (0, 1))
        assert final.h == (0,) and final.v == (0,)

    def test_quarter_turn_fourth_power_is_identity(self):
        for o in [TORUS, L3]:
            cm, final = induced_cocycle(o, ["S", "S", "S", "S"])
            assert mat_is_identity(cm.matrix)
            assert (final.h, final.v) == (o.h, o.v)

    def test_shear_and_its_inverse_cancel(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            o = random_origami(int(rng.integers(2, 7)), rng)
            cm, final = induced_cocycle(o, ["T", "Tinv"])
            assert mat_is_identity(cm.matrix)
            cm, final = induced_cocycle(o, ["Tinv", "T"])
            assert mat_is_identity(cm.matrix)

    def test_chain_maps_commute_with_boundaries(self):
        rng = np.random.default_rng(17)
        for _ in range(15):
            o = random_origami(int(rng.integers(2, 8)), rng)
            hb = homology_basis(o)
            _, d2 = boundary_matrices(o)
            for gen in GENS:
                F = chain_map(o, gen)
                o2 = apply_generator(o, gen)
                d1b, _ = boundary_matrices(o2)
                hb2 = homology_basis(o2)
                FB = lattice.matmul(F, [list(r) for r in hb.cycles])
                assert all(x == 0 for row in lattice.matmul(d1b, FB) for x in row)
                CFd2 = lattice.matmul(
                    [list(r) for r in hb2.functionals], lattice.matmul(F, d2)
                )
                assert all(x == 0 for row in CFd2 for x in row)

    def test_random_words_are_symplectic(self):
        rng = np.random.default_rng(23)
        for _ in range(12):
            o = random_origami(int(rng.integers(2, 7)), rng)
            word = [GENS[int(rng.integers(4))] for _ in range(int(rng.integers(1, 7)))]
            cm, final = induced_cocycle(o, word)
            hb0, hb1 = homology_basis(o), homology_basis(final)
            M = [list(r) for r in cm.matrix]
            MJM = lattice.matmul(
                lattice.transpose(M),
                lattice.matmul([list(r) for r in hb1.intersection], M),
            )
            assert lattice.mat_eq(MJM, [list(r) for r in hb0.intersection])
            # the word really lands on the surface obtained by applying moves
            check = o
            for gen in word:
                check = apply_generator(check, gen)
            assert (check.h, check.v) == (final.h, final.v)

    def test_words_commute_with_deck_involution(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            p = random_pillow_cover(int(rng.integers(2, 6)), rng)
            o, iota = orientation_double_cover(p)
            word = [GENS[int(rng.integers(4))] for _ in range(int(rng.integers(1, 6)))]
            cm, final, iota2 = induced_cocycle(o, word, iota)
            I0 = involution_splitting(homology_basis(o), iota).action
            I1 = involution_splitting(homology_basis(final), iota2).action
            M = [list(r) for r in cm.matrix]
            lhs = lattice.matmul([list(r) for r in I1], M)
            rhs = lattice.matmul(M, [list(r) for r in I0])
            assert lattice.mat_eq(lhs, rhs)

    def test_elementary_matrices_multiply_like_the_moves(self):
        # S then L agrees with Tinv then S (right action on surfaces,
        # so the matrix products run the opposite way)
        import numpy as np

        S, L = np.array(elementary_matrix("S")), np.array(elementary_matrix("L"))
        T, Ti = np.array(elementary_matrix("T")), np.array(elementary_matrix("Tinv"))
        assert np.array_equal(S @ L, Ti @ S)
        assert np.array_equal(T @ Ti, np.eye(2, dtype=int))
        assert np.array_equal(np.linalg.matrix_power(S, 4), np.eye(2, dtype=int))

    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            induced_cocycle(TORUS, [])


class TestStateCache:
    def test_transitions_land_on_cached_states(self):
        rng = np.random.default_rng(3)
        p = random_pillow_cover(5, rng)
        o, iota = orientation_double_cover(p)
        cache = StateCache()
        cur = cache.canonical_key(o, iota)
        for gen in ["T", "L", "S", "Tinv", "T", "L", "L", "S"]:
            tr = cache.transition(cur, gen)
            assert tr.target in cache.states
            cur = tr.target

    def test_restrictions_have_eigenspace_sizes(self):
        p = cyclic_pillow(5, (1, 2, 2, 5))
        o, iota = orientation_double_cover(p)
        cache = StateCache()
        key = cache.canonical_key(o, iota)
        st = cache.state(key)
        tr = cache.transition(key, "T")
        assert len(tr.plus) == st.splitting.dim_plus
        assert len(tr.minus) == st.splitting.dim_minus

    def test_matpow_matches_repeated_multiplication(self):
        M = [[1, 2], [0, 1]]
        acc = lattice.eye(2)
        for q in range(7):
            assert lattice.mat_eq(_matpow(M, q), acc)
            acc = lattice.matmul(M, acc)


class TestMonteCarlo:
    def test_bitwise_reproducible(self):
        cover = cyclic_pillow(4, (1, 1, 1, 1))
        a = run_monte_carlo(cover, 2000, 9)
        b = run_monte_carlo(cover, 2000, 9)
        assert a == b
        c = run_monte_carlo(cover, 2000, 10)
        assert a.lambda_plus != c.lambda_plus or a.taut_time != c.taut_time

    def test_control_top_exponent_is_one(self):
        est = run_monte_carlo(cyclic_pillow(4, (1, 1, 1, 1)), 6000, 1)
        assert est.lambda_plus[0] == pytest.approx(1.0, abs=0.03)
        assert est.converged

    def test_family_member_plus_spectrum_vanishes(self):
        est = run_monte_carlo(cyclic_pillow(5, (1, 2, 2, 5)), 6000, 1)
        assert len(est.lambda_plus) == 2
        assert max(est.lambda_plus) < 0.02

    def test_antiinvariant_part_carries_the_tautological_one(self):
        for cover in [cyclic_pillow(5, (1, 2, 2, 5)), cyclic_pillow(3, (1, 1, 1, 3))]:
            est = run_monte_carlo(cover, 6000, 2)
            assert abs(est.lambda_minus[0] - 1.0) < 0.02

    def test_sum_rule_on_control(self):
        from pillowtiled.cylinders import ekz_for_cover

        cover = cyclic_pillow(4, (1, 1, 1, 1))
        est = run_monte_carlo(cover, 8000, 3)
        exact = float(ekz_for_cover(cover).lyap_sum)
        assert est.sum_plus == pytest.approx(exact, abs=0.05)

    def test_block_accounting(self):
        est = run_monte_carlo(cyclic_pillow(3, (1, 1, 1, 3)), 2000, 4, block=10)
        assert est.blocks == 10
        assert len(est.block_slopes) == 10
        assert all(s > 0 for s in est.block_slopes)

    def test_parameter_validation(self):
        cover = cyclic_pillow(3, (1, 1, 1, 3))
        with pytest.raises(ValueError):
            run_monte_carlo(cover, 5, 1, block=10)
        with pytest.raises(ValueError):
            run_monte_carlo(cover, 100, 1, block=1)
        with pytest.raises(ValueError):
            run_monte_carlo(cover, 100, 1, renorm=0)


class TestCertify:
    def test_family_member_passes(self):
        cert = certify_degenerate(cyclic_pillow(5, (1, 2, 2, 5)), 0.02, steps=4000)
        assert cert.verdict == "PASS"
        assert not cert.contradiction
        assert cert.exact_sum == 0
        assert cert.measured_degenerate and cert.exact_degenerate

    def test_control_fails_consistently(self):
        cert = certify_degenerate(cyclic_pillow(2, (1, 1, 1, 1)), 0.02, steps=4000)
        assert cert.verdict == "FAIL"
        assert not cert.contradiction
        assert cert.exact_sum == 1
        assert not cert.measured_degenerate

    def test_epsilon_domain(self):
        cover = cyclic_pillow(3, (1, 1, 1, 3))
        for eps in [0.0, -0.01, 0.1, 0.5]:
            with pytest.raises(ValueError):
                certify_degenerate(cover, eps)

    def test_needs_three_seeds(self):
        with pytest.raises(ValueError):
            certify_degenerate(cyclic_pillow(3, (1, 1, 1, 3)), 0.01, seeds=(1, 2))
