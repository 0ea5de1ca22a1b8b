"""Box discrepancy of a weighted point set against the uniform measure.

The exact path realizes the supremum over axis-parallel boxes as a max
over critical boxes: candidate face coordinates are the atom coordinates
(plus the cube boundary), the excess branch evaluates closed boxes and
the deficit branch open boxes, so non-attained suprema are captured as
limits without epsilon hacking.  Boxes never wrap around the torus.

For d = 1 this is a single O(N log N) sweep; for d >= 2 the first d-1
axes are enumerated over candidate interval pairs with a final-axis
sweep.  A uniform-grid estimator provides an independent lower oracle
for larger inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, ValidationError
from .walk import WeightedPointSet

# Atom-count caps for the exact path; cost grows like N^(2(d-1)+1).
EXACT_CAPS = {1: 20000, 2: 400, 3: 60}


@dataclass(frozen=True)
class Box:
    """Axis-parallel box [a_1,b_1) x ... x [a_d,b_d) inside [0,1)^d.

    Witness boxes reported by discrepancy_exact may be degenerate
    (a_i == b_i): they stand for the limit of shrinking closed boxes.
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValidationError("box corner dimensions differ")
        for lo, hi in zip(self.a, self.b):
            if not (0.0 <= lo <= hi <= 1.0):
                raise ValidationError(f"box sides must satisfy 0 <= a <= b <= 1, got [{lo}, {hi}]")

    @property
    def d(self) -> int:
        return len(self.a)

    def volume(self) -> float:
        v = 1.0
        for lo, hi in zip(self.a, self.b):
            v *= hi - lo
        return v


@dataclass(frozen=True)
class DiscrepancyResult:
    value: float
    witness: Box
    direction: str  # "excess" | "deficit"
    exactness: str  # "exact" | "grid(<resolution>)"


def box_mass(P: WeightedPointSet, B: Box, mode: str = "closure") -> float:
    """Weight of atoms in the closure [a,b] or the interior (a,b) of B."""
    if B.d != P.d:
        raise ValidationError(f"box dimension {B.d} != point-set dimension {P.d}")
    if mode not in ("closure", "interior"):
        raise ValidationError(f"unknown mode {mode!r}")
    total = []
    for pt, w in P.atoms:
        if mode == "closure":
            inside = all(lo <= x <= hi for x, lo, hi in zip(pt, B.a, B.b))
        else:
            inside = all(lo < x < hi for x, lo, hi in zip(pt, B.a, B.b))
        if inside:
            total.append(w)
    return math.fsum(total)


def _closure_sweep(ys: np.ndarray, ws: np.ndarray, width: float):
    """Best closed interval on the final axis: max of mass - width*length.

    ys must be sorted (duplicates allowed).  Returns (value, lo, hi) or
    None when there are no atoms.  Degenerate intervals are allowed.
    """
    if ys.size == 0:
        return None
    # merge equal coordinates
    keep = np.empty(ys.size, dtype=bool)
    keep[0] = True
    np.not_equal(ys[1:], ys[:-1], out=keep[1:])
    y = ys[keep]
    grp = np.cumsum(keep) - 1
    w = np.zeros(y.size)
    np.add.at(w, grp, ws)

    c = np.cumsum(w)
    f_hi = c - width * y
    f_lo = (c - w) - width * y
    runmin = np.minimum.accumulate(f_lo)
    vals = f_hi - runmin
    t = int(np.argmax(vals))
    s = int(np.argmin(f_lo[: t + 1]))
    return float(vals[t]), float(y[s]), float(y[t])


def _interior_sweep(ys: np.ndarray, ws: np.ndarray, width: float):
    """Best open interval on the final axis: max of width*length - mass.

    ys sorted; the cube boundary 0 and 1 always acts as candidate ends.
    """
    z = np.concatenate((ys, [0.0, 1.0]))
    w = np.concatenate((ws, [0.0, 0.0]))
    order = np.argsort(z, kind="stable")
    z, w = z[order], w[order]
    keep = np.empty(z.size, dtype=bool)
    keep[0] = True
    np.not_equal(z[1:], z[:-1], out=keep[1:])
    zz = z[keep]
    grp = np.cumsum(keep) - 1
    ww = np.zeros(zz.size)
    np.add.at(ww, grp, w)

    c = np.cumsum(ww)
    g_hi = width * zz - (c - ww)  # mass strictly below zz[t]
    g_lo = width * zz - c  # mass up to and including zz[s]
    runmin = np.minimum.accumulate(g_lo)
    # pair s < t
    vals = g_hi[1:] - runmin[:-1]
    t = int(np.argmax(vals)) + 1
    s = int(np.argmin(g_lo[:t]))
    return float(vals[t - 1]), float(zz[s]), float(zz[t])


def _branch_search(pts: np.ndarray, wts: np.ndarray, d: int, branch: str):
    """Max over candidate boxes for one branch; returns (value, lo, hi)."""
    order = np.argsort(pts[:, d - 1], kind="stable")
    pts = pts[order]
    wts = wts[order]
    n_atoms = pts.shape[0]

    best = [-math.inf, None, None]

    def record(val, lo, hi):
        if val > best[0]:
            best[0], best[1], best[2] = val, tuple(lo), tuple(hi)

    def rec(axis, mask, lo, hi, width):
        if axis == d - 1:
            if branch == "excess":
                res = _closure_sweep(pts[mask, d - 1], wts[mask], width)
                if res is not None:
                    val, y0, y1 = res
                    record(val, lo + [y0], hi + [y1])
            else:
                val, y0, y1 = _interior_sweep(pts[mask, d - 1], wts[mask], width)
                record(val, lo + [y0], hi + [y1])
            return
        x = pts[:, axis]
        if branch == "excess":
            cands = np.unique(x[mask]) if mask.any() else np.empty(0)
            for i in range(cands.size):
                a = cands[i]
                m1 = mask & (x >= a)
                for j in range(i, cands.size):
                    b = cands[j]
                    m = m1 & (x <= b)
                    if m.any():
                        rec(axis + 1, m, lo + [a], hi + [b], width * (b - a))
        else:
            cands = np.unique(np.concatenate((x, [0.0, 1.0])))
            for i in range(cands.size):
                a = cands[i]
                m1 = mask & (x > a)
                for j in range(i + 1, cands.size):
                    b = cands[j]
                    rec(axis + 1, m1 & (x < b), lo + [a], hi + [b], width * (b - a))

    rec(0, np.ones(n_atoms, dtype=bool), [], [], 1.0)
    return best


def discrepancy_exact(P: WeightedPointSet) -> DiscrepancyResult:
    """Supremum over axis-parallel boxes of |P(B) - vol(B)|, with witness.

    On branch ties the excess witness is reported.
    """
    d = P.d
    cap = EXACT_CAPS.get(d)
    if cap is None:
        raise CapExceededError(
            f"exact discrepancy supports d <= 3 (got d={d}); use discrepancy_grid"
        )
    n_atoms = len(P.atoms)
    if n_atoms > cap:
        raise CapExceededError(
            f"exact discrepancy caps at {cap} atoms for d={d} (got {n_atoms}); "
            "use discrepancy_grid"
        )
    pts = np.array([pt for pt, _ in P.atoms], dtype=float)
    wts = np.array([w for _, w in P.atoms], dtype=float)

    exc = _branch_search(pts, wts, d, "excess")
    def_ = _branch_search(pts, wts, d, "deficit")
    if exc[0] >= def_[0]:
        val, lo, hi = exc
        direction = "excess"
    else:
        val, lo, hi = def_
        direction = "deficit"
    return DiscrepancyResult(
        value=max(val, 0.0),
        witness=Box(a=lo, b=hi),
        direction=direction,
        exactness="exact",
    )


def _grid_candidates(coords: np.ndarray, resolution: int) -> np.ndarray:
    """Grid indices adjacent to atom coordinates plus the cube boundary.

    The discrepancy over all grid boxes is attained with faces next to an
    atom or on the boundary; the extra +-1 margin absorbs float rounding
    in floor(x * resolution).
    """
    f = np.floor(coords * resolution).astype(np.int64)
    idx = np.concatenate([f - 1, f, f + 1, f + 2, [0, resolution]])
    idx = np.unique(np.clip(idx, 0, resolution))
    return idx


def discrepancy_grid(P: WeightedPointSet, resolution: int) -> float:
    """Max of |P(B) - vol(B)| over boxes with corners on the uniform grid.

    Boxes are the half-open products [i_1/r, j_1/r) x ...; the result
    never exceeds discrepancy_exact and misses it by at most d*(2/r).
    """
    if resolution < 2:
        raise ValidationError("grid resolution must be >= 2")
    d = P.d
    pts = np.array([pt for pt, _ in P.atoms], dtype=float)
    wts = np.array([w for _, w in P.atoms], dtype=float)
    order = np.argsort(pts[:, d - 1], kind="stable")
    pts, wts = pts[order], wts[order]

    cands = [_grid_candidates(pts[:, ax], resolution) / resolution for ax in range(d)]
    best = [0.0]

    def sweep(mask, width):
        g = cands[d - 1]
        ys = pts[mask, d - 1]
        cum = np.concatenate(([0.0], np.cumsum(wts[mask])))
        w_lt = cum[np.searchsorted(ys, g, side="left")]
        f = w_lt - width * g
        spread = float(f.max() - f.min())
        if spread > best[0]:
            best[0] = spread

    def rec(axis, mask, width):
        if axis == d - 1:
            sweep(mask, width)
            return
        g = cands[axis]
        x = pts[:, axis]
        for i in range(g.size):
            a = g[i]
            m1 = mask & (x >= a)
            for j in range(i + 1, g.size):
                b = g[j]
                rec(axis + 1, m1 & (x < b), width * (b - a))

    rec(0, np.ones(pts.shape[0], dtype=bool), 1.0)
    return best[0]
