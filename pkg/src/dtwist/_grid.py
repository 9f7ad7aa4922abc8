import numpy as np


def check_region(region):
    x0, x1, y0, y1 = (float(v) for v in region)
    if not (x0 <= x1 and y0 <= y1):
        raise ValueError(f"region must satisfy x0 <= x1 and y0 <= y1, got {region!r}")
    return x0, x1, y0, y1


def axis(lo, hi, n):
    # degenerate extent collapses to a single sample
    if lo == hi:
        return [lo]
    return np.linspace(lo, hi, n).tolist()


def grid_points(region, n):
    """Closed, uniformly spaced sample points in row-major order (y outer)."""
    if n < 2:
        raise ValueError(f"grid must have at least 2 samples per axis, got {n}")
    x0, x1, y0, y1 = check_region(region)
    xs = axis(x0, x1, n)
    return [(x, y) for y in axis(y0, y1, n) for x in xs]
