"""Escape-time rasters of the parameter plane and of the dynamical plane.

Pixels are independent; rows are cut into fixed chunks so the result does
not depend on how many workers evaluate them.
"""

import colorsys
import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .correspondence import escape_iterate, j_array

NONE = -1
FLAG_OUT, FLAG_IN, FLAG_UNDEFINED = 0, 1, -1
PALETTE_PERIOD = 12
CHUNK_ROWS = 8
CSV_HEADER = ["re", "im", "n", "flag"]


@dataclass(frozen=True)
class GridSpec:
    center: complex
    half_width: float
    width: int
    height: int
    max_iter: int = 1000

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("grid needs at least one pixel in each direction")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        object.__setattr__(self, "center", complex(self.center))

    @property
    def step(self):
        return 2 * self.half_width / self.width

    def columns(self):
        k = np.arange(self.width) - self.width // 2
        return self.center.real + k * (2 * self.half_width) / self.width

    def rows(self):
        # row 0 is the top of the image; row height//2 sits on the centre line
        k = self.height // 2 - np.arange(self.height)
        return self.center.imag + k * (2 * self.half_width) / self.width

    def coords(self, row_lo=0, row_hi=None):
        row_hi = self.height if row_hi is None else row_hi
        re = self.columns()
        im = self.rows()[row_lo:row_hi]
        return re[None, :] + 1j * im[:, None]

    def pixel_of(self, z):
        """(row, col) of the pixel nearest to z."""
        z = complex(z)
        col = int(round((z.real - self.center.real) * self.width / (2 * self.half_width))) + self.width // 2
        row = self.height // 2 - int(round((z.imag - self.center.imag) * self.width / (2 * self.half_width)))
        if not (0 <= row < self.height and 0 <= col < self.width):
            raise ValueError(f"{z} lies outside the grid")
        return row, col


@dataclass
class EscapeField:
    coords: np.ndarray       # complex, shape (height, width)
    escape_index: np.ndarray  # int64, NONE = -1
    last_point: np.ndarray   # complex
    region_flag: np.ndarray  # int8: 1 inside the J-domain disc, 0 outside, -1 undefined pixel
    max_iter: int

    @property
    def shape(self):
        return self.escape_index.shape

    def none_mask(self):
        return (self.escape_index == NONE) & (self.region_flag != FLAG_UNDEFINED)

    def same_as(self, other):
        return (np.array_equal(self.coords, other.coords)
                and np.array_equal(self.escape_index, other.escape_index)
                and np.array_equal(self.region_flag, other.region_flag))


# ---- region classifier ---------------------------------------------------------

def j_disc(a):
    """Centre and radius of the circle through 1 and a centred on the real axis;
    None when Re a = 1 and the circle degenerates to a line."""
    a = complex(a)
    if a.real == 1:
        return None
    c = (abs(a) ** 2 - 1) / (2 * (a.real - 1))
    return c, abs(1 - c)


def region_flags(a, points):
    """1 where a point lies inside the J-domain disc of parameter a, else 0."""
    a = np.asarray(a, np.complex128)
    points = np.asarray(points, np.complex128)
    a, points = np.broadcast_arrays(a, points)
    out = np.zeros(points.shape, dtype=np.int8)
    with np.errstate(all="ignore"):
        den = 2 * (a.real - 1)
        c = (np.abs(a) ** 2 - 1) / den
        r = np.abs(1 - c)
        inside = (np.abs(points - c) < r) & np.isfinite(points) & (den != 0)
    out[inside] = FLAG_IN
    return out


# ---- workers -------------------------------------------------------------------

def _mandel_rows(grid, lo, hi):
    a = grid.coords(lo, hi)
    undefined = (a == 1) | (np.abs(a - 4) > 3)
    start = j_array(np.where(undefined, 4, a), 2.0)
    idx, last = escape_iterate(np.where(undefined, 4, a), start, grid.max_iter)
    flag = np.where(idx >= 0, region_flags(a, last), FLAG_OUT).astype(np.int8)
    idx[undefined] = NONE
    flag[undefined] = FLAG_UNDEFINED
    return lo, idx, last, flag


def _limit_rows(a, plus, grid, lo, hi):
    Z = grid.coords(lo, hi)
    idx, last = escape_iterate(a, Z, grid.max_iter, plus=plus)
    flag = np.where(idx >= 0, region_flags(a, last), FLAG_OUT).astype(np.int8)
    return lo, idx, last, flag


def worker_count(requested=None):
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("MM_THREADS")
    if env:
        return max(1, int(env))
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _run(grid, fn, args, workers):
    chunks = [(lo, min(lo + CHUNK_ROWS, grid.height)) for lo in range(0, grid.height, CHUNK_ROWS)]
    shape = (grid.height, grid.width)
    idx = np.empty(shape, np.int64)
    last = np.empty(shape, np.complex128)
    flag = np.empty(shape, np.int8)

    def store(result):
        lo, i, l, f = result
        idx[lo:lo + len(i)] = i
        last[lo:lo + len(i)] = l
        flag[lo:lo + len(i)] = f

    workers = worker_count(workers)
    if workers == 1:
        for lo, hi in chunks:
            store(fn(*args, grid, lo, hi))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fn, *args, grid, lo, hi) for lo, hi in chunks]
            for fut in futures:
                store(fut.result())
    return EscapeField(grid.coords(), idx, last, flag, grid.max_iter)


def mandel_field(grid, workers=None):
    """Escape data of the critical value J_a(2) for every parameter pixel a.

    Pixels outside the closed disc |a - 4| <= 3, and a = 1, are undefined.
    """
    return _run(grid, _mandel_rows, (), workers)


def limit_field(a, grid, side="minus", workers=None):
    """Escape data of every dynamical pixel Z; non-escaping pixels approximate
    the backward limit set (side "minus") or the forward one (side "plus")."""
    a = complex(a)
    if a == 1:
        from .correspondence import SingularParameterError
        raise SingularParameterError("the correspondence is undefined at a = 1")
    if side not in ("minus", "plus"):
        raise ValueError("side must be 'minus' or 'plus'")
    return _run(grid, _limit_rows, (a, side == "plus"), workers)


# ---- output --------------------------------------------------------------------

def _palette():
    table = np.zeros((2, PALETTE_PERIOD, 3), np.uint8)
    for flag, (sat, val) in enumerate(((0.55, 0.95), (0.85, 0.65))):
        for k in range(PALETTE_PERIOD):
            hue = (0.58 + k / PALETTE_PERIOD) % 1.0
            rgb = colorsys.hsv_to_rgb(hue, sat, val)
            table[flag, k] = [int(round(255 * c)) for c in rgb]
    return table


PALETTE = _palette()


def colorize(field, palette=PALETTE):
    rgb = np.zeros(field.shape + (3,), np.uint8)
    esc = field.escape_index >= 0
    period = palette.shape[1]
    f = np.clip(field.region_flag, 0, 1)
    rgb[esc] = palette[f[esc], field.escape_index[esc] % period]
    rgb[field.region_flag == FLAG_UNDEFINED] = 255
    return rgb


def ppm_bytes(field, palette=PALETTE):
    h, w = field.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + colorize(field, palette).tobytes()


def write_image(field, path, palette=PALETTE):
    data = ppm_bytes(field, palette)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write image to {path}: {exc}") from exc
    return path


def read_ppm(path):
    with open(path, "rb") as fh:
        data = fh.read()
    magic, dims, depth, payload = data.split(b"\n", 3)
    if magic != b"P6" or depth != b"255":
        raise ValueError(f"{path} is not an 8-bit P6 image")
    w, h = map(int, dims.split())
    return np.frombuffer(payload, np.uint8).reshape(h, w, 3)


def export_csv(field, path):
    try:
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(CSV_HEADER)
            for z, n, f in zip(field.coords.ravel(), field.escape_index.ravel(), field.region_flag.ravel()):
                out.writerow([repr(float(z.real)), repr(float(z.imag)), int(n), int(f)])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc
    return path


def read_csv(path, width, max_iter):
    """Rebuild a field from CSV; the last iterate is not stored and comes back as NaN."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header in {path}: {rows[0]}")
    body = rows[1:]
    if len(body) % width:
        raise ValueError(f"{len(body)} rows do not fill a grid of width {width}")
    h = len(body) // width
    coords = np.array([complex(float(r[0]), float(r[1])) for r in body]).reshape(h, width)
    idx = np.array([int(r[2]) for r in body], np.int64).reshape(h, width)
    flag = np.array([int(r[3]) for r in body], np.int8).reshape(h, width)
    return EscapeField(coords, idx, np.full((h, width), np.nan + 0j), flag, max_iter)


def field_summary(field):
    esc = field.escape_index >= 0
    return {
        "width": int(field.shape[1]),
        "height": int(field.shape[0]),
        "max_iter": int(field.max_iter),
        "escaped": int(esc.sum()),
        "none": int(field.none_mask().sum()),
        "undefined": int((field.region_flag == FLAG_UNDEFINED).sum()),
    }
