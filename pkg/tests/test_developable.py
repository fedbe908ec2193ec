import numpy as np
import pytest

from edgenet.curvature import net_curvature
from edgenet.developable import (
    admissible_sweep,
    extrude_developable,
    helix_polyline,
    parallel_frame,
    schwarz_lantern,
)
from edgenet.netcore import NetError, validate_edge_constraint


def helix_frame(n=14, tilt=0.3):
    P = helix_polyline(n, 1.0, 0.5, 1.0)
    e0 = (P[1] - P[0]) / np.linalg.norm(P[1] - P[0])
    u0 = np.cross(e0, [0.0, 0.0, 1.0])
    u0 /= np.linalg.norm(u0)
    w = np.cross(e0, u0)
    return parallel_frame(P, u0, np.cos(tilt) * w + np.sin(tilt) * e0)


class TestParallelFrame:
    def test_parallel_and_orthonormal(self):
        fp = helix_frame()
        assert fp.parallelism_residual() < 1e-14
        np.testing.assert_allclose(np.linalg.norm(fp.u, axis=1), 1.0, atol=1e-15)
        np.testing.assert_allclose(np.einsum("ij,ij->i", fp.u, fp.n), 0.0, atol=1e-15)

    def test_bisector_symmetry(self):
        # the frame vectors make equal angles with the edge at both of its ends
        fp = helix_frame()
        e = np.diff(fp.points, axis=0)
        for F in (fp.u, fp.n):
            np.testing.assert_allclose(np.einsum("ij,ij->i", F[:-1], e), -np.einsum("ij,ij->i", F[1:], e), atol=1e-15)

    def test_straight_line_constant(self):
        P = np.outer(np.arange(5.0), [0, 0, 1])
        fp = parallel_frame(P, [1.0, 0, 0], [0, 1.0, 0])
        np.testing.assert_allclose(fp.u, [[1.0, 0, 0]] * 5, atol=1e-16)

    def test_errors(self):
        with pytest.raises(ValueError, match="orthonormal"):
            parallel_frame(helix_polyline(4), [1.0, 0, 0], [1.0, 0, 0])
        with pytest.raises(NetError, match="vanishing"):
            parallel_frame([[0, 0, 0], [0, 0, 0.0], [1, 0, 0]], [1.0, 0, 0], [0, 1.0, 0])
        with pytest.raises(NetError):
            parallel_frame([[0, 0, 0.0]], [1.0, 0, 0], [0, 1.0, 0])


class TestDevelopable:
    def test_strip_flat(self):
        net = extrude_developable(helix_frame(), np.linspace(0.0, 0.6, 5))
        assert validate_edge_constraint(net, 1e-13).passed
        cd = net_curvature(net)
        assert np.abs(cd.K).max() < 1e-12
        assert np.all(cd.degenerate)

    def test_sweep_invariant(self):
        net = extrude_developable(helix_frame(), np.linspace(0.0, 0.6, 5))
        kappa, spread, lines = admissible_sweep(net)
        assert np.all(np.isfinite(kappa)) and np.abs(kappa).min() > 1e-3
        assert spread.max() < 1e-10
        np.testing.assert_allclose(np.linalg.norm(lines, axis=1), 1.0, atol=1e-12)

    def test_ruling_samples(self):
        with pytest.raises(ValueError, match="monotone"):
            extrude_developable(helix_frame(), [0.0, 0.3, 0.2])

    def test_nondegenerate_gives_nan(self):
        from edgenet.netcore import build_grid_graph, sphere_net

        th = np.linspace(0, 0.5, 3)[:, None]
        ph = np.linspace(-0.2, 0.2, 3)[None, :]
        P = np.stack([np.cos(ph) * np.cos(th), np.cos(ph) * np.sin(th), np.sin(ph) + 0 * th], -1)
        kappa, _, _ = admissible_sweep(sphere_net(build_grid_graph(2, 2), P.reshape(-1, 3), 1.0))
        assert np.all(np.isnan(kappa))


class TestLantern:
    @pytest.mark.parametrize("A,H", [(4, 2), (7, 3), (12, 6)])
    def test_flat_and_valid(self, A, H):
        net = schwarz_lantern(A, H)
        assert validate_edge_constraint(net, 1e-13).passed
        assert np.abs(net_curvature(net).K).max() < 1e-12

    def test_principal_curvature_is_circle(self):
        # radial normals: the nonzero curvature equals the polygon's, independent of N
        kappa, spread, _ = admissible_sweep(schwarz_lantern(8, 4, radius=2.0))
        assert spread.max() < 1e-10
        np.testing.assert_allclose(np.abs(kappa), np.abs(kappa[0]), rtol=1e-12)
        assert 0.3 < abs(kappa[0]) < 0.7

    def test_counts(self):
        net = schwarz_lantern(6, 3)
        assert (net.graph.n_vertices, net.graph.n_quads) == (24, 18)

    def test_errors(self):
        with pytest.raises(NetError):
            schwarz_lantern(2, 3)
        with pytest.raises(ValueError):
            schwarz_lantern(5, 2, radius=-1.0)
