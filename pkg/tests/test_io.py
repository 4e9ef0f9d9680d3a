import numpy as np
import pytest

from sgwt import io
from sgwt.graph import build_from_edge_list
from sgwt.transform import CoefficientSet

from conftest import random_graph


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


class TestEdgeList:
    def test_round_trip(self, tmp_path, rng):
        g = random_graph(rng, 25)
        io.write_edge_list(g, tmp_path / "g.txt")
        h = io.read_edge_list(tmp_path / "g.txt")
        assert h.num_vertices == 25
        assert h.edges() == g.edges()

    def test_comments_and_blank_lines(self, tmp_path):
        p = write(tmp_path / "g.txt", "# header\nN 3\n\n0 1 0.5  # edge\n2 1 2\n")
        g = io.read_edge_list(p)
        assert g.edges() == [(0, 1, 0.5), (1, 2, 2.0)]

    def test_isolated_vertices_kept(self, tmp_path):
        g = io.read_edge_list(write(tmp_path / "g.txt", "N 5\n0 1 1\n"))
        assert g.num_vertices == 5

    @pytest.mark.parametrize("text, line", [
        ("0 1 1\n", 1),
        ("N 3\n0 1\n", 2),
        ("N 3\n0 1 1\n0 x 1\n", 3),
        ("N 3\n0 3 1\n", 2),
        ("N 3\n0 1 -1\n", 2),
        ("N 3\n0 1 nan\n", 2),
        ("N 3\n0 1 1\n1 0 2\n", 3),
        ("N zero\n", 1),
    ])
    def test_malformed(self, tmp_path, text, line):
        p = write(tmp_path / "bad.txt", text)
        with pytest.raises(io.DataFormatError, match=f"bad.txt:{line}:"):
            io.read_edge_list(p)

    def test_missing_header(self, tmp_path):
        with pytest.raises(io.DataFormatError, match="header"):
            io.read_edge_list(write(tmp_path / "e.txt", "# nothing\n"))

    def test_weights_round_trip_exactly(self, tmp_path):
        g = build_from_edge_list([(0, 1, 0.1 + 0.2), (1, 2, 1 / 3)], 3)
        io.write_edge_list(g, tmp_path / "g.txt")
        assert io.read_edge_list(tmp_path / "g.txt").edges() == g.edges()


class TestGridMask:
    def test_text(self, tmp_path):
        m = io.read_grid_mask(write(tmp_path / "m.txt", "1 0 1\n1,1,1\n"))
        np.testing.assert_array_equal(m, [[1, 0, 1], [1, 1, 1]])

    def test_unseparated(self, tmp_path):
        m = io.read_grid_mask(write(tmp_path / "m.txt", "101\n011\n"))
        np.testing.assert_array_equal(m, [[1, 0, 1], [0, 1, 1]])

    def test_pgm_p2(self, tmp_path):
        p = write(tmp_path / "m.pgm", "P2\n# comment\n3 2\n255\n0 255 7\n1 0 0\n")
        np.testing.assert_array_equal(io.read_grid_mask(p), [[0, 1, 1], [1, 0, 0]])

    def test_pgm_p5(self, tmp_path):
        p = tmp_path / "m.pgm"
        p.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 9, 255, 0]))
        np.testing.assert_array_equal(io.read_grid_mask(p), [[0, 1], [1, 0]])

    def test_bad_rows(self, tmp_path):
        with pytest.raises(io.DataFormatError, match=":2:"):
            io.read_grid_mask(write(tmp_path / "m.txt", "1 1\n1 1 1\n"))
        with pytest.raises(io.DataFormatError, match=":1:"):
            io.read_grid_mask(write(tmp_path / "m2.txt", "1 2\n"))

    def test_pgm_short(self, tmp_path):
        with pytest.raises(io.DataFormatError):
            io.read_grid_mask(write(tmp_path / "m.pgm", "P2\n3 2\n255\n0 1\n"))


class TestPointsAndSignals:
    def test_point_cloud_round_trip(self, tmp_path, rng):
        pts = rng.standard_normal((10, 3))
        io.write_point_cloud(pts, tmp_path / "p.csv")
        np.testing.assert_array_equal(io.read_point_cloud(tmp_path / "p.csv"), pts)

    def test_point_cloud_ragged(self, tmp_path):
        with pytest.raises(io.DataFormatError, match=":2:"):
            io.read_point_cloud(write(tmp_path / "p.csv", "1,2\n1,2,3\n"))

    def test_signal_round_trip(self, tmp_path, rng):
        f = rng.standard_normal(17)
        io.write_signal(f, tmp_path / "f.txt")
        np.testing.assert_array_equal(io.read_signal(tmp_path / "f.txt"), f)

    def test_signal_bad_value(self, tmp_path):
        with pytest.raises(io.DataFormatError, match=":3:"):
            io.read_signal(write(tmp_path / "f.txt", "1\n2\nthree\n"))


class TestCoefficients:
    @pytest.mark.parametrize("name", ["c.csv", "c.sgwt", "c.bin"])
    def test_round_trip(self, tmp_path, rng, name):
        c = CoefficientSet(rng.standard_normal((5, 12)))
        io.write_coefficients(c, tmp_path / name)
        np.testing.assert_array_equal(io.read_coefficients(tmp_path / name).bands, c.bands)

    def test_binary_layout(self, tmp_path):
        c = CoefficientSet(np.arange(6.0).reshape(2, 3))
        io.write_coefficients(c, tmp_path / "c.sgwt")
        data = (tmp_path / "c.sgwt").read_bytes()
        assert data[:4] == b"SGWT"
        assert np.frombuffer(data[4:16], "<u4").tolist() == [1, 3, 1]
        assert np.frombuffer(data[16:], "<f8").tolist() == list(range(6))

    def test_binary_corrupt(self, tmp_path):
        (tmp_path / "c.sgwt").write_bytes(b"SGWT" + bytes(12) + b"\x00")
        with pytest.raises(io.DataFormatError):
            io.read_coefficients(tmp_path / "c.sgwt")
        (tmp_path / "d.bin").write_bytes(b"NOPE" + bytes(20))
        with pytest.raises(io.DataFormatError):
            io.read_coefficients(tmp_path / "d.bin")

    def test_csv_errors(self, tmp_path):
        with pytest.raises(io.DataFormatError, match=":1:"):
            io.read_coefficients(write(tmp_path / "a.csv", "x,y,z\n"))
        with pytest.raises(io.DataFormatError, match=":3:"):
            io.read_coefficients(write(tmp_path / "b.csv", "band,vertex,value\n0,0,1\n0,1\n"))
        with pytest.raises(io.DataFormatError, match="incomplete"):
            io.read_coefficients(write(tmp_path / "c.csv", "band,vertex,value\n0,0,1\n1,1,2\n"))
