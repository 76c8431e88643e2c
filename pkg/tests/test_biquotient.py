import numpy as np
import pytest

from biq import algebra as al
from biq import biquotient as bi
from biq import metric as me
from biq import freeness as fr


def quat_diag(top, bot):
    """Diagonal 2x2 quaternionic matrix from (w,x,y,z) component tuples."""
    fam = al.sp(2)
    b = np.diag([complex(top[0], top[1]), complex(bot[0], bot[1])])
    c = np.diag([complex(top[2], -top[3]), complex(bot[2], -bot[3])])
    return al.AlgebraElement(fam, al.quaternion_block(b, c))


O = (0, 0, 0, 0)
QI = (0, 1, 0, 0)
QJ = (0, 0, 1, 0)
QK = (0, 0, 0, 1)


def turned_point():
    gmat = al.quaternion_block(np.array([[1, 1j], [1j, 1]]) / np.sqrt(2),
                               np.zeros((2, 2)))
    return al.GroupElement(al.sp(2), gmat)


class TestVerticalSpace:
    def test_gromoll_meyer_at_identity(self):
        act = bi.gromoll_meyer_action()
        v = bi.vertical_space(act, al.identity(al.sp(2)))
        assert v.dim == 3
        for unit in (QI, QJ, QK):
            assert v.contains(quat_diag(O, unit))

    def test_one_sided_at_identity(self, rng):
        fam = al.su(3)
        gens = [al.random_algebra_element(fam, rng) for _ in range(2)]
        act = bi.one_sided_action(fam, gens, side="left")
        v = bi.vertical_space(act, al.identity(fam))
        assert v.dim == 2
        for x in gens:
            assert v.contains(x)

    def test_gromoll_meyer_at_turned_point(self):
        # the three-dimensional span worked out by hand for the quarter
        # turn (with the group-normalized entries 1/sqrt(2))
        act = bi.gromoll_meyer_action()
        g = turned_point()
        v = bi.vertical_space(act, g)
        assert v.dim == 3

        def quat_full(entries):
            b = np.array([[complex(e[0], e[1]) for e in row] for row in entries])
            c = np.array([[complex(e[2], -e[3]) for e in row] for row in entries])
            return al.AlgebraElement(al.sp(2), al.quaternion_block(b, c))

        expected = [
            quat_full([[O, O], [O, QI]]),
            quat_full([[QJ, QK], [QK, O]]),
            quat_full([[(0, 0, 0, -1), QJ], [QJ, O]]),
        ]
        for e in expected:
            al.check_algebra_element(e)
            assert v.contains(e)


class TestHorizontalSpace:
    def test_gromoll_meyer_at_identity(self):
        act = bi.gromoll_meyer_action()
        dec = act.dec()
        P = me.build_metric(dec)
        h = bi.horizontal_space(act, al.identity(al.sp(2)), P)
        assert h.dim == 7
        # representatives of {(y, v; -vbar, 0)}
        assert h.contains(quat_diag(QJ, O))
        off = al.AlgebraElement(
            al.sp(2),
            al.quaternion_block(np.array([[0, 1], [-1, 0]]), np.zeros((2, 2))),
        )
        assert h.contains(off)

    def test_trivial_action_gives_everything(self):
        fam = al.su(3)
        act = bi.trivial_action(fam)
        P = me.build_metric(al.root_decomposition(fam))
        h = bi.horizontal_space(act, al.identity(fam), P)
        assert h.dim == fam.dim

    def test_dimensions_sum(self, rng):
        act = bi.gromoll_meyer_action()
        P = me.build_metric(act.dec())
        for _ in range(5):
            g = al.random_group_element(al.sp(2), rng)
            v = bi.vertical_space(act, g)
            h = bi.horizontal_space(act, g, P)
            assert v.dim + h.dim == al.sp(2).dim


class TestActionGram:
    def test_free_action_positive(self, rng):
        act = bi.gromoll_meyer_action()
        P = me.build_metric(act.dec())
        for _ in range(5):
            g = al.random_group_element(al.sp(2), rng)
            n = bi.action_gram(act, g, P)
            assert np.linalg.eigvalsh(n).min() > 1e-6

    def test_non_free_toy_action_singular_at_identity(self):
        fam = al.su(3)
        w = fr.TorusActionWeights(fam, 1, ((1,), (0,), (-1,)), ((1,), (0,), (-1,)))
        act = bi.from_torus_weights(w)
        n = bi.action_gram(act, al.identity(fam), me.build_metric(act.dec()))
        assert abs(n[0, 0]) < 1e-14

    def test_continuity_under_perturbation(self, rng):
        act = bi.gromoll_meyer_action()
        P = me.build_metric(act.dec())
        g = al.random_group_element(al.sp(2), rng)
        n0 = bi.action_gram(act, g, P)
        eps = 1e-6
        step = al.exp_map(eps * al.random_algebra_element(al.sp(2), rng))
        g2 = al.multiply(g, step)
        n1 = bi.action_gram(act, g2, P)
        assert np.abs(n1 - n0).max() < 100 * eps


class TestZTerm:
    def test_vanishes_on_fully_commuting_data(self):
        # two Cartan directions of su(3) with a one-sided root-vector circle
        fam = al.su(3)
        dec = al.root_decomposition(fam)
        act = bi.one_sided_action(fam, [dec.roots[2].x], side="right")
        P = me.build_metric(dec)
        g = al.identity(fam)
        a = dec.cartan[0]
        b = dec.cartan[1]
        # both Cartan directions are horizontal: the generator sits in a
        # root space, which is Q-orthogonal to the Cartan subalgebra
        assert bi.z_term(act, g, P, a, b) < 1e-12

    def test_right_action_projection_oracle(self, rng):
        fam = al.su(3)
        dec = al.root_decomposition(fam)
        gens = [al.random_algebra_element(fam, rng) for _ in range(2)]
        act = bi.one_sided_action(fam, gens, side="right")
        P = me.build_metric(dec)
        for _ in range(5):
            g = al.random_group_element(fam, rng)
            frame = bi.PointFrame.at(act, g, P)
            hor = frame.horizontal()
            c = rng.standard_normal((2, hor.dim))
            a = dec.from_coords(hor.coords.T @ c[0])
            b = dec.from_coords(hor.coords.T @ c[1])
            z = bi.z_term(act, g, P, a, b, frame=frame)
            vert = bi.vertical_space(act, g)
            proj = vert.project_coords(dec.to_coords(al.bracket(a, b)))
            assert abs(z - np.linalg.norm(proj)) < 1e-9

    def test_basis_change_invariance(self, rng):
        act = bi.gromoll_meyer_action()
        dec = act.dec()
        P = me.build_metric(dec)
        g = al.random_group_element(al.sp(2), rng)
        frame = bi.PointFrame.at(act, g, P)
        hor = frame.horizontal()
        a = dec.from_coords(hor.coords[0])
        b = dec.from_coords(hor.coords[1])
        z0 = bi.z_term(act, g, P, a, b)
        m = np.array([[2, 1, 0], [1, 1, 0], [3, 0, 1]])  # unimodular

        def mix(i, side):
            parts = [float(m[i][j]) * act.u_basis[j][side] for j in range(3)]
            return parts[0] + parts[1] + parts[2]

        new_basis = tuple((mix(i, 0), mix(i, 1)) for i in range(3))
        act2 = bi.BiquotientAction(group=act.group, u_basis=new_basis)
        z1 = bi.z_term(act2, g, P, a, b)
        assert abs(z0 - z1) < 1e-8 * max(1.0, z0)

    def test_non_free_point_raises(self):
        fam = al.su(3)
        w = fr.TorusActionWeights(fam, 1, ((1,), (0,), (-1,)), ((1,), (0,), (-1,)))
        act = bi.from_torus_weights(w)
        dec = al.root_decomposition(fam)
        P = me.build_metric(dec)
        with pytest.raises(bi.NonFreePointError):
            bi.z_term(act, al.identity(fam), P, dec.cartan[0], dec.roots[0].x)


class TestQuotientSectional:
    def test_trivial_action_agrees_with_group_curvature(self, rng):
        from biq import curvature as cu

        fam = al.su(3)
        dec = al.root_decomposition(fam)
        act = bi.trivial_action(fam)
        a_blk = rng.standard_normal((2, 2))
        P = me.build_metric(dec, a_blk @ a_blk.T + np.eye(2), [0.5, 1.5, 2.5])
        x = al.random_algebra_element(fam, rng)
        y = al.random_algebra_element(fam, rng)
        rep = bi.quotient_sectional(act, al.identity(fam), P, x, y)
        assert abs(rep.oneill_term) < 1e-12
        assert abs(rep.sec_quotient - cu.sectional(P, x, y).sectional) < 1e-9

    def test_oneill_monotonicity(self, rng):
        act = bi.gromoll_meyer_action()
        dec = act.dec()
        P = me.build_metric(dec)
        for _ in range(10):
            g = al.random_group_element(al.sp(2), rng)
            frame = bi.PointFrame.at(act, g, P)
            hor = frame.horizontal()
            c = rng.standard_normal((2, hor.dim))
            a = dec.from_coords(hor.coords.T @ c[0])
            b = dec.from_coords(hor.coords.T @ c[1])
            rep = bi.quotient_sectional(act, g, P, a, b, frame=frame)
            assert rep.oneill_term >= 0
            assert rep.sec_quotient >= rep.sec_g - 1e-12
            assert abs(rep.sec_quotient - rep.sec_g - rep.oneill_term) < 1e-12

    def test_one_sided_homogeneous_oracle(self, rng):
        # for a one-sided action of the bi-invariant metric the quotient
        # curvature is 1/4 |[a,b]^H|^2 + |[a,b]^V|^2 on orthonormal frames
        fam = al.su(3)
        dec = al.root_decomposition(fam)
        P = me.build_metric(dec)
        for side in ("left", "right"):
            gens = [al.random_algebra_element(fam, rng) for _ in range(2)]
            act = bi.one_sided_action(fam, gens, side=side)
            g = al.random_group_element(fam, rng)
            frame = bi.PointFrame.at(act, g, P)
            hor = frame.horizontal()
            for _ in range(5):
                c = rng.standard_normal((2, hor.dim))
                a = dec.from_coords(hor.coords.T @ c[0])
                b = dec.from_coords(hor.coords.T @ c[1])
                rep = bi.quotient_sectional(act, g, P, a, b, frame=frame)
                cab = dec.to_coords(al.bracket(rep.x, rep.y))
                vpart = bi.vertical_space(act, g).project_coords(cab)
                hpart = cab - vpart
                expected = 0.25 * float(hpart @ hpart) + float(vpart @ vpart)
                assert abs(rep.sec_quotient - expected) < 1e-9

    def test_gromoll_meyer_positive_at_identity(self, rng):
        act = bi.gromoll_meyer_action()
        dec = act.dec()
        P = me.build_metric(dec)
        g = al.identity(al.sp(2))
        frame = bi.PointFrame.at(act, g, P)
        hor = frame.horizontal()
        for _ in range(50):
            c = rng.standard_normal((2, hor.dim))
            a = dec.from_coords(hor.coords.T @ c[0])
            b = dec.from_coords(hor.coords.T @ c[1])
            rep = bi.quotient_sectional(act, g, P, a, b, frame=frame)
            assert rep.sec_quotient > 0

    def test_orthonormalization_preserves_horizontality(self, rng):
        act = bi.gromoll_meyer_action()
        dec = act.dec()
        P = me.build_metric(dec)
        g = al.random_group_element(al.sp(2), rng)
        frame = bi.PointFrame.at(act, g, P)
        hor = frame.horizontal()
        c = rng.standard_normal((2, hor.dim))
        a = dec.from_coords(hor.coords.T @ c[0])
        b = dec.from_coords(hor.coords.T @ c[1])
        rep = bi.quotient_sectional(act, g, P, a, b, frame=frame)
        for v in (rep.x, rep.y):
            assert frame.horizontal_residual(dec.to_coords(v)) < 1e-9

    def test_non_horizontal_input_rejected(self, rng):
        act = bi.gromoll_meyer_action()
        dec = act.dec()
        P = me.build_metric(dec)
        g = al.identity(al.sp(2))
        vertical = quat_diag(O, QI)
        other = quat_diag(QJ, O)
        with pytest.raises(bi.NonHorizontalError):
            bi.quotient_sectional(act, g, P, vertical, other)
