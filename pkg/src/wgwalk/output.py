"""Deterministic CSV tables and binary PPM heatmaps."""
import numpy as np

from .errors import OutputError

CSV_FORMAT = "%.17g"


def format_value(v):
    return CSV_FORMAT % v


def emit_csv(path, header, rows):
    """Write a header plus numeric rows; 17 significant digits, LF line endings.

    ``rows`` is anything convertible to a 2-D float array whose width matches
    ``header``. Non-finite values are refused.
    """
    data = np.atleast_2d(np.asarray(rows, dtype=float))
    if data.size == 0:
        data = data.reshape(0, len(header))
    if data.shape[1] != len(header):
        raise OutputError(f"{len(header)} column names for {data.shape[1]} columns")
    if not np.all(np.isfinite(data)):
        raise OutputError(f"refusing to write non-finite values to {path}")
    lines = [",".join(_quote(h) for h in header)]
    lines.extend(",".join(format_value(v) for v in row) for row in data)
    try:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def _quote(field):
    field = str(field)
    if any(c in field for c in ',"\n\r'):
        return '"' + field.replace('"', '""') + '"'
    return field


def emit_matrix_csv(path, matrix, label="row"):
    m = np.asarray(matrix, dtype=float)
    header = [label] + [str(j) for j in range(m.shape[1])]
    emit_csv(path, header, np.column_stack([np.arange(m.shape[0]), m]))


def emit_record_csv(path, record):
    """Intensity table of a propagation record: ``z`` then one column per guide."""
    n = record.intensity.shape[1]
    header = ["z_um"] + [f"guide_{m}" for m in range(n)]
    emit_csv(path, header, np.column_stack([record.z_grid, record.intensity]))


def read_csv(path):
    """Inverse of :func:`emit_csv` for unquoted headers: ``(header, data)``."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(",")
        data = np.array([[float(v) for v in line.split(",")] for line in fh if line.strip()])
    return header, data


def _viridis_table():
    # Polynomial fit of matplotlib's viridis, evaluated on 256 levels.
    c = np.array([
        [0.2777273272234177, 0.005407344544966578, 0.3340998053353061],
        [0.1050930431085774, 1.404613529898575, 1.384590162594685],
        [-0.3308618287255563, 0.214847559468213, 0.09509516302823659],
        [-4.634230498983486, -5.799100973351585, -19.33244095627987],
        [6.228269936347081, 14.17993336680509, 56.69055260068105],
        [4.776384997670288, -13.74514537774601, -65.35303263337234],
        [-5.435455855934631, 4.645852612178535, 26.3124352495832],
    ])
    t = np.linspace(0.0, 1.0, 256)[:, None]
    rgb = sum(c[i] * t ** i for i in range(c.shape[0]))
    return np.clip(np.round(rgb * 255), 0, 255).astype(np.uint8)


COLORMAPS = {
    "gray": np.repeat(np.arange(256, dtype=np.uint8)[:, None], 3, axis=1),
    "viridis": _viridis_table(),
}
# zero must render black regardless of the table
COLORMAPS["viridis"][0] = 0


def heatmap_pixels(matrix, colormap="gray", cell=16):
    """RGB image with one ``cell x cell`` block per entry, scaled linearly to [0, max]."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2:
        raise OutputError("heatmap needs a 2-D matrix")
    if not np.all(np.isfinite(m)) or np.any(m < 0):
        raise OutputError("heatmap needs a finite, nonnegative matrix")
    if colormap not in COLORMAPS:
        raise OutputError(f"unknown colormap {colormap!r}; expected one of {sorted(COLORMAPS)}")
    top = m.max(initial=0.0)
    level = np.zeros(m.shape, dtype=int) if top == 0 else np.round(m / top * 255).astype(int)
    img = COLORMAPS[colormap][level]
    return np.repeat(np.repeat(img, cell, axis=0), cell, axis=1)


def emit_heatmap(path, matrix, colormap="gray", cell=16):
    """Write a binary P6 portable pixmap of ``matrix``."""
    img = heatmap_pixels(matrix, colormap, cell)
    h, w = img.shape[:2]
    try:
        with open(path, "wb") as fh:
            fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
            fh.write(np.ascontiguousarray(img).tobytes())
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def read_ppm(path):
    with open(path, "rb") as fh:
        magic, dims, maxval = fh.readline(), fh.readline(), fh.readline()
        if magic.strip() != b"P6" or maxval.strip() != b"255":
            raise OutputError(f"{path} is not an 8-bit P6 pixmap")
        w, h = map(int, dims.split())
        return np.frombuffer(fh.read(), dtype=np.uint8).reshape(h, w, 3)
