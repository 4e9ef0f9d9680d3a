"""Readers and writers for the on-disk formats.

Edge list
    UTF-8 text. A header line ``N <num_vertices>`` followed by one
    ``u v w`` edge per line; ``#`` starts a comment.
Grid mask
    PGM (P2 or P5), nonzero pixels are in-domain; or a text grid of
    0/1 values separated by whitespace or commas (or unseparated).
Point cloud
    CSV, one point per row.
Signal
    One value per line (whitespace or comma separated also accepted).
Coefficients
    CSV with header ``band,vertex,value``, or the binary layout: magic
    ``b"SGWT"``, then little-endian u32 version, N and J, then
    ``(J + 1) * N`` little-endian float64 values, band-major.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .graph import WeightedGraph, build_from_edge_list
from .transform import CoefficientSet

MAGIC = b"SGWT"
VERSION = 1
BINARY_SUFFIXES = (".sgwt", ".bin")


class DataFormatError(ValueError):
    """Malformed input file; the message names the offending line."""


def fmt(x: float) -> str:
    return repr(float(x))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def read_edge_list(path) -> WeightedGraph:
    path = Path(path)
    n = None
    records = []
    seen = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = _strip(raw)
            if not line:
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 2 or parts[0] != "N":
                    raise DataFormatError(f"{path}:{lineno}: expected header 'N <num_vertices>'")
                try:
                    n = int(parts[1])
                except ValueError:
                    raise DataFormatError(f"{path}:{lineno}: bad vertex count {parts[1]!r}") from None
                if n < 1:
                    raise DataFormatError(f"{path}:{lineno}: vertex count must be positive")
                continue
            if len(parts) != 3:
                raise DataFormatError(f"{path}:{lineno}: expected 'u v w', got {line!r}")
            try:
                u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: cannot parse {line!r}") from None
            if not (0 <= u < n and 0 <= v < n):
                raise DataFormatError(f"{path}:{lineno}: vertex index out of range [0, {n})")
            if not np.isfinite(w) or w <= 0:
                raise DataFormatError(f"{path}:{lineno}: weight must be positive and finite")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DataFormatError(
                    f"{path}:{lineno}: duplicate edge {key} (first on line {seen[key]})"
                )
            seen[key] = lineno
            records.append((u, v, w))
    if n is None:
        raise DataFormatError(f"{path}: missing 'N <num_vertices>' header")
    return build_from_edge_list(records, n)


def write_edge_list(g: WeightedGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"N {g.num_vertices}\n")
        for u, v, w in g.edges():
            fh.write(f"{u} {v} {fmt(w)}\n")


def _pgm_tokens(data: bytes):
    """Header tokens of a PGM file and the byte offset after the header."""
    tokens = []
    pos = 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise DataFormatError("truncated PGM header")
        tokens.append(data[start:pos].decode("ascii"))
    return tokens, pos + 1


def read_grid_mask(path) -> np.ndarray:
    path = Path(path)
    data = path.read_bytes()
    if data[:2] in (b"P2", b"P5"):
        try:
            (magic, w, h, maxval), offset = _pgm_tokens(data)
            w, h, maxval = int(w), int(h), int(maxval)
        except (DataFormatError, ValueError) as exc:
            raise DataFormatError(f"{path}: bad PGM header ({exc})") from None
        if magic == "P5":
            dtype = np.dtype(">u2") if maxval > 255 else np.uint8
            pixels = np.frombuffer(data, dtype=dtype, count=w * h, offset=offset)
        else:
            body = data[offset:].decode("ascii")
            body = "\n".join(_strip(x) for x in body.splitlines())
            pixels = np.array(body.split(), dtype=np.int64)
            if pixels.size != w * h:
                raise DataFormatError(f"{path}: expected {w * h} pixels, got {pixels.size}")
        return pixels.reshape(h, w) != 0
    rows = []
    text = data.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        cells = line.replace(",", " ").split()
        if len(cells) == 1 and len(cells[0]) > 1:
            cells = list(cells[0])
        if any(c not in ("0", "1") for c in cells):
            raise DataFormatError(f"{path}:{lineno}: mask rows may contain only 0 and 1")
        if rows and len(cells) != len(rows[0]):
            raise DataFormatError(f"{path}:{lineno}: row length {len(cells)} differs from {len(rows[0])}")
        rows.append([c == "1" for c in cells])
    if not rows:
        raise DataFormatError(f"{path}: empty mask")
    return np.array(rows, dtype=bool)


def read_point_cloud(path) -> np.ndarray:
    path = Path(path)
    points = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = _strip(raw)
            if not line:
                continue
            try:
                row = [float(x) for x in line.split(",")]
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: cannot parse {line!r}") from None
            if points and len(row) != len(points[0]):
                raise DataFormatError(f"{path}:{lineno}: point has {len(row)} coordinates, "
                                      f"expected {len(points[0])}")
            points.append(row)
    if not points:
        raise DataFormatError(f"{path}: no points")
    return np.array(points)


def write_point_cloud(points, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in np.atleast_2d(points):
            fh.write(",".join(fmt(x) for x in p) + "\n")


def read_signal(path) -> np.ndarray:
    path = Path(path)
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = _strip(raw)
            if not line:
                continue
            try:
                values.extend(float(x) for x in line.replace(",", " ").split())
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: cannot parse {line!r}") from None
    return np.array(values)


def write_signal(f, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for x in np.asarray(f).ravel():
            fh.write(fmt(x) + "\n")


def write_coefficients(c: CoefficientSet, path) -> None:
    path = Path(path)
    if path.suffix.lower() in BINARY_SUFFIXES:
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(struct.pack("<III", VERSION, c.num_vertices, c.num_scales))
            fh.write(np.ascontiguousarray(c.bands, dtype="<f8").tobytes())
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("band,vertex,value\n")
        for j, band in enumerate(c.bands):
            for n, x in enumerate(band):
                fh.write(f"{j},{n},{fmt(x)}\n")


def read_coefficients(path) -> CoefficientSet:
    path = Path(path)
    if path.suffix.lower() in BINARY_SUFFIXES:
        data = path.read_bytes()
        if data[:4] != MAGIC or len(data) < 16:
            raise DataFormatError(f"{path}: not an SGWT coefficient file")
        version, n, J = struct.unpack("<III", data[4:16])
        if version != VERSION:
            raise DataFormatError(f"{path}: unsupported version {version}")
        expected = 16 + 8 * (J + 1) * n
        if len(data) != expected:
            raise DataFormatError(f"{path}: expected {expected} bytes, got {len(data)}")
        vals = np.frombuffer(data, dtype="<f8", offset=16).astype(np.float64)
        return CoefficientSet(vals.reshape(J + 1, n))
    entries = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header.replace(" ", "") != "band,vertex,value":
            raise DataFormatError(f"{path}:1: expected header 'band,vertex,value'")
        for lineno, raw in enumerate(fh, 2):
            line = raw.strip()
            if not line:
                continue
            try:
                j, n, x = line.split(",")
                entries[(int(j), int(n))] = float(x)
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: cannot parse {line!r}") from None
    if not entries:
        raise DataFormatError(f"{path}: no coefficients")
    nb = max(k[0] for k in entries) + 1
    nv = max(k[1] for k in entries) + 1
    if len(entries) != nb * nv:
        raise DataFormatError(f"{path}: incomplete coefficient table")
    bands = np.zeros((nb, nv))
    for (j, n), x in entries.items():
        bands[j, n] = x
    return CoefficientSet(bands)
