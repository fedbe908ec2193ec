import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from edgenet.curvature import (
    GENERIC,
    LINE,
    POINT,
    QuadPartials,
    analytic_principal,
    circle_fit_residual,
    circumcircle_height,
    developable_principal,
    direction_angle_deg,
    fundamental_forms,
    mixed_area,
    net_curvature,
    principal_data,
    projection_direction,
    quad_curvature,
    quad_partials,
    steiner_curvatures,
)
from edgenet.netcore import build_grid_graph, random_edge_constraint_quads, sample_analytic, sphere_net

SQUARE = np.array([[0.0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]])
UP = np.tile([0.0, 0.0, 1.0], (4, 1))


def det3(a, b, c):
    """Cofactor expansion, independent of numpy's cross product."""
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def sphere_quad(r=1.0, th=0.3, ph=0.2, h=0.1):
    t = np.array([th, th + h, th + h, th])
    p = np.array([ph, ph, ph + h, ph + h])
    P = r * np.stack([np.cos(p) * np.cos(t), np.cos(p) * np.sin(t), np.sin(p)], axis=-1)
    return P, P / r


class TestPartials:
    def test_unit_square(self):
        p = quad_partials(SQUARE, UP)
        np.testing.assert_allclose(p.fx, [1, 0, 0])
        np.testing.assert_allclose(p.fy, [0, 1, 0])
        np.testing.assert_allclose(p.nx, 0)
        np.testing.assert_allclose(p.ny, 0)

    def test_diagonal_mixing(self):
        rng = np.random.default_rng(0)
        fq, nq = rng.normal(size=(2, 4, 3))
        p = quad_partials(fq, nq, mixing=[[0.5, 0.5], [-0.5, 0.5]])
        # mixing ((1,1),(-1,1))/2 turns the connectors into half the diagonals
        np.testing.assert_allclose(p.fx, 0.5 * (fq[2] - fq[0]), atol=1e-15)
        np.testing.assert_allclose(p.fy, 0.5 * (fq[3] - fq[1]), atol=1e-15)


class TestProjection:
    def test_constant_normals_point(self):
        fr = projection_direction(quad_partials(SQUARE, UP))
        assert fr.flag == POINT and fr.degenerate
        for th in np.linspace(0, 3, 5):
            assert abs(np.linalg.norm(fr.admissible(th)) - 1) < 1e-15

    def test_cylinder_line(self):
        net = sample_analytic("cylinder", 1, 1, 0.2)
        fr = projection_direction(quad_partials(net.quad_positions()[0], net.quad_normals()[0]))
        assert fr.flag == LINE
        for th in np.linspace(0, 3, 7):
            assert abs(np.dot(fr.admissible(th), fr.span)) < 1e-14

    def test_sphere_quad_symmetric(self):
        # Gauss quad symmetric about the x-axis: N is along the symmetry axis
        h = 0.2
        t = np.array([-h, h, h, -h])
        p = np.array([-h, -h, h, h])
        n = np.stack([np.cos(p) * np.cos(t), np.cos(p) * np.sin(t), np.sin(p)], axis=-1)
        fr = projection_direction(quad_partials(n, n))
        assert fr.flag == GENERIC
        assert abs(abs(fr.N[0]) - 1.0) < 1e-14

    def test_generic_orthogonal(self):
        fq, nq = random_edge_constraint_quads(20, 1)
        for f, n in zip(fq, nq):
            p = quad_partials(f, n)
            fr = projection_direction(p)
            assert abs(fr.N @ p.nx) < 1e-14 and abs(fr.N @ p.ny) < 1e-14


class TestMixedArea:
    def test_square(self):
        g = (np.array([1.0, 0, 0]), np.array([0.0, 1, 0]))
        N = np.array([0.0, 0, 1])
        assert mixed_area(g, g, N) == 1.0
        assert mixed_area(g, (2 * g[0], 2 * g[1]), N) == 2.0

    @given(st.integers(0, 10_000))
    def test_cofactor_oracle(self, seed):
        rng = np.random.default_rng(seed)
        gx, gy, hx, hy, N = rng.normal(size=(5, 3))
        N /= np.linalg.norm(N)
        expected = 0.5 * (det3(gx, hy, N) + det3(hx, gy, N))
        assert abs(mixed_area((gx, gy), (hx, hy), N) - expected) < 1e-13

    def test_symmetric(self):
        rng = np.random.default_rng(2)
        g, h = rng.normal(size=(2, 2, 3))
        N = np.array([0.0, 0.6, 0.8])
        assert abs(mixed_area(g, h, N) - mixed_area(h, g, N)) < 1e-15


class TestSteiner:
    def test_sphere_exact(self):
        P, n = sphere_quad()
        p = quad_partials(P, n)
        H, K = steiner_curvatures(p, projection_direction(p).N)
        assert abs(H - 1) < 1e-14 and abs(K - 1) < 1e-14

    def test_flat(self):
        cd = quad_curvature(SQUARE, UP)
        assert cd.H[0] == 0 and cd.K[0] == 0

    def test_sign_conventions(self):
        fq, nq = random_edge_constraint_quads(200, 4)
        a = quad_curvature(fq, nq)
        b = quad_curvature(fq, -nq)
        np.testing.assert_allclose(b.H, -a.H, rtol=1e-12)
        np.testing.assert_allclose(b.K, a.K, rtol=1e-12)
        for q in range(10):
            p = quad_partials(fq[q], nq[q])
            N = projection_direction(p).N
            np.testing.assert_allclose(steiner_curvatures(p, -N), steiner_curvatures(p, N), rtol=1e-14)

    def test_definitions_exact(self):
        fq, nq = random_edge_constraint_quads(100, 5)
        cd = quad_curvature(fq, nq)
        np.testing.assert_allclose(cd.K * cd.A_ff, cd.A_nn, rtol=1e-14, atol=1e-15)
        np.testing.assert_allclose(cd.H * cd.A_ff, cd.A_fn, rtol=1e-14, atol=1e-15)

    def test_ellipsoid_converges(self):
        errs = []
        for R in (20, 40):
            net = sample_analytic("ellipsoid", R, R, (2 * np.pi / R, 2.4 / R), origin=(0.0, -1.2), a=2.0, b=1.2, c=0.8)
            cd = net_curvature(net)
            k, l = np.meshgrid(np.arange(R), np.arange(R), indexing="ij")
            ka, _ = analytic_principal("ellipsoid", (k + 0.5) * 2 * np.pi / R, -1.2 + (l + 0.5) * 2.4 / R, a=2.0, b=1.2, c=0.8)
            errs.append(np.abs(cd.K - ka.prod(-1).reshape(-1)).max())
        assert 3.0 < errs[0] / errs[1] < 5.0


class TestForms:
    def test_sphere_forms(self):
        P, n = sphere_quad()
        p = quad_partials(P, n)
        I, II, III, S, asym = fundamental_forms(p, projection_direction(p).N)
        np.testing.assert_allclose(II, I, atol=1e-15)
        np.testing.assert_allclose(III, I, atol=1e-15)
        np.testing.assert_allclose(S, np.eye(2), atol=1e-13)

    def test_flat_forms(self):
        p = quad_partials(SQUARE, UP)
        _, II, _, S, _ = fundamental_forms(p, np.array([0.0, 0, 1]))
        assert np.all(II == 0) and np.all(S == 0)

    def test_collinear(self):
        p = QuadPartials(np.array([1.0, 0, 0]), np.array([2.0, 0, 0]), np.zeros(3), np.zeros(3))
        with pytest.raises(np.linalg.LinAlgError, match="collinear"):
            fundamental_forms(p, np.array([0.0, 0, 1]))

    def test_identities_random(self):
        fq, nq = random_edge_constraint_quads(2000, 6)
        cd = quad_curvature(fq, nq)
        np.testing.assert_allclose(cd.K, np.linalg.det(cd.II) / np.linalg.det(cd.I), atol=1e-10)
        np.testing.assert_allclose(cd.H, 0.5 * (cd.k1 + cd.k2), atol=1e-10)
        assert np.all(cd.ii_asymmetry <= 1e-12 * np.linalg.norm(cd.II, axis=(1, 2)))

    @settings(max_examples=30, deadline=None)
    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
    def test_mixing_invariance(self, a, b, c, d):
        M = np.array([[a, b], [c, d]])
        assume(abs(np.linalg.det(M)) >= 0.1)
        fq, nq = random_edge_constraint_quads(50, 8)
        x = quad_curvature(fq, nq)
        y = quad_curvature(fq, nq, mixing=M)
        for key in ("H", "K", "k1", "k2"):
            np.testing.assert_allclose(getattr(y, key), getattr(x, key), atol=1e-10 * (1 + np.abs(getattr(x, key)).max()))
        ang = np.radians(np.maximum(direction_angle_deg(x.dir1, y.dir1), direction_angle_deg(x.dir2, y.dir2)))
        assert np.nanmax(ang) < 1e-10
        # forms transform by congruence with the mixing
        np.testing.assert_allclose(y.I, M @ x.I @ M.T, atol=1e-10 * (1 + np.abs(y.I).max()))
        np.testing.assert_allclose(y.II, M @ x.II @ M.T, atol=1e-10 * (1 + np.abs(y.II).max()))


class TestPrincipal:
    def test_sphere_umbilic(self):
        P, n = sphere_quad()
        cd = quad_curvature(P, n)
        assert cd.umbilic[0]
        assert abs(cd.k1[0] - 1) < 1e-13 and abs(cd.k2[0] - 1) < 1e-13
        assert np.all(np.isnan(cd.dir1[0]))

    def test_ordering(self):
        fq, nq = random_edge_constraint_quads(500, 12)
        cd = quad_curvature(fq, nq)
        assert np.all(cd.k1 <= cd.k2)
        np.testing.assert_allclose(np.linalg.norm(cd.dir1, axis=1), 1.0, atol=1e-14)

    def test_eigen_equation(self):
        fq, nq = random_edge_constraint_quads(50, 13)
        cd = quad_curvature(fq, nq)
        for q in range(50):
            for k in (cd.k1[q], cd.k2[q]):
                assert abs(np.linalg.det(cd.S[q] - k * np.eye(2))) < 1e-9 * (1 + k * k)

    def test_cylinder(self):
        net = sample_analytic("cylinder", 4, 4, 0.05, r=1.0)
        cd = net_curvature(net)
        # cylinder Gauss image is a curve: degenerate path
        assert np.all(cd.flag == LINE)

    def test_tilted_cylinder_principal(self):
        net = sample_analytic("cylinder", 6, 6, 0.05, shear=0.7, r=1.0)
        cd = net_curvature(net)
        assert np.all(cd.flag == LINE)
        for q in range(cd.H.size):
            k, line = developable_principal(cd.quad_partials(q), cd.frame(q))
            assert abs(k - 1.0) < 1e-2
            assert abs(line[2]) < 1e-12

    def test_principal_data_direct(self):
        I = np.array([[2.0, 0.0], [0.0, 1.0]])
        II = np.array([[2.0, 0.0], [0.0, 3.0]])
        F = np.array([[np.sqrt(2), 0, 0], [0, 1.0, 0]])
        k1, k2, d1, d2, umb = principal_data(I, II, F)
        assert (k1, k2) == pytest.approx((1.0, 3.0))
        assert abs(abs(d1[0]) - 1) < 1e-14 and abs(abs(d2[1]) - 1) < 1e-14 and not umb


class TestDevelopable:
    def test_constant_normals_zero_map(self):
        p = quad_partials(SQUARE, UP)
        assert developable_principal(p, projection_direction(p)) is None

    def test_invariant_over_sweep(self):
        net = sample_analytic("cylinder", 1, 1, 0.3, shear=0.4, r=2.0)
        fq, nq = net.quad_positions()[0], net.quad_normals()[0]
        p = quad_partials(fq, nq)
        fr = projection_direction(p)
        ks = np.array([developable_principal(p, fr, th)[0] for th in np.linspace(0.0, np.pi, 17)[:-1] + 0.05])
        # one direction of the circle makes the projected area vanish
        assert np.isfinite(ks).sum() >= 15
        assert np.ptp(ks[np.isfinite(ks)]) < 1e-10

    def test_generic_rejected(self):
        P, n = sphere_quad()
        p = quad_partials(P, n)
        with pytest.raises(ValueError):
            developable_principal(p, projection_direction(p))


class TestCircles:
    def test_circle_fit(self):
        t = np.array([0.1, 1.0, 2.5, 4.0])
        P = np.stack([np.cos(t), np.sin(t), np.zeros(4)], axis=-1)
        assert circle_fit_residual(P) < 1e-15
        P[3, 2] = 0.01
        assert abs(circle_fit_residual(P) - 0.01) < 1e-12

    def test_circumcircle_height(self):
        _, n = sphere_quad(h=0.2)
        p = quad_partials(n, n)
        N = projection_direction(p).N
        d = circumcircle_height(n, N)
        np.testing.assert_allclose(n @ N, d, atol=1e-14)
        with pytest.raises(ValueError):
            circumcircle_height(n + np.array([[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0.1]]), N)


def test_sphere_patch_net():
    th = np.linspace(0, 1, 5)[:, None]
    ph = np.linspace(-0.4, 0.4, 5)[None, :]
    P = 2.0 * np.stack([np.cos(ph) * np.cos(th), np.cos(ph) * np.sin(th), np.sin(ph) + 0 * th], -1)
    cd = net_curvature(sphere_net(build_grid_graph(4, 4), P.reshape(-1, 3), 2.0))
    np.testing.assert_allclose(cd.H, 0.5, rtol=1e-13)
    np.testing.assert_allclose(cd.K, 0.25, rtol=1e-13)


@pytest.mark.parametrize("backend", ["python", "cython"])
def test_backends_agree(backend):
    fq, nq = random_edge_constraint_quads(300, 21)
    ref = quad_curvature(fq, nq, backend="python")
    got = quad_curvature(fq, nq, backend=backend)
    np.testing.assert_allclose(got.H, ref.H, rtol=1e-12)
    np.testing.assert_allclose(got.K, ref.K, rtol=1e-12)
    np.testing.assert_array_equal(got.flag, ref.flag)
