"""Grid sweeps: where the Levin route works, how accurate it is there, and the
error of the plain one-term truncation.

Cells are produced row-major with the imaginary axis outer, so for a grid of
``n_re x n_im`` nodes cell ``i * n_re + j`` sits at ``(re_j, im_i)``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Iterable, Optional, TextIO

from .errors import DomainError, StirlingError
from .evaluator import (
    is_pole,
    lnfactorial_levin,
    lnfactorial_shifted,
    shift_for,
)
from .series import SeriesKind, optimal_truncation_index, truncated_lnfactorial

__all__ = [
    "CellStatus",
    "GridSpec",
    "MapCell",
    "oracle",
    "branch_distance",
    "classify_point",
    "truncation_point",
    "generate_map",
    "truncation_error_map",
    "binet_crosscheck",
    "write_csv",
    "format_csv",
    "write_pgm",
]

_TWO_PI = 2 * math.pi


class CellStatus(enum.Enum):
    CONVERGED = "converged"
    FAILED = "failed"
    POLE = "pole"


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    n_re: int
    n_im: int

    def __post_init__(self):
        if not self.re_min < self.re_max:
            raise DomainError(f"invalid range: re_min {self.re_min} >= re_max {self.re_max}")
        if not self.im_min < self.im_max:
            raise DomainError(f"invalid range: im_min {self.im_min} >= im_max {self.im_max}")
        if self.n_re < 2 or self.n_im < 2:
            raise DomainError("grid needs at least 2 nodes per axis")

    @staticmethod
    def _axis(lo: float, hi: float, n: int) -> list[float]:
        step = (hi - lo) / (n - 1)
        pts = [lo + i * step for i in range(n)]
        pts[-1] = hi
        return pts

    @property
    def re_nodes(self) -> list[float]:
        return self._axis(self.re_min, self.re_max, self.n_re)

    @property
    def im_nodes(self) -> list[float]:
        return self._axis(self.im_min, self.im_max, self.n_im)

    def points(self) -> list[complex]:
        res = self.re_nodes
        return [complex(x, y) for y in self.im_nodes for x in res]


@dataclass(frozen=True)
class MapCell:
    z: complex
    status: CellStatus
    abs_err: Optional[float]
    terms_used: int

    def __post_init__(self):
        if (self.abs_err is not None) != (self.status is CellStatus.CONVERGED):
            raise ValueError("abs_err must be present exactly for converged cells")


def oracle(z: complex) -> complex:
    """Shift-recurrence reference value used for every error in the maps."""
    m = shift_for(z)
    n = optimal_truncation_index(SeriesKind.DE_MOIVRE, abs(z + m))
    return lnfactorial_shifted(z, m, n)


def branch_distance(a: complex, b: complex) -> float:
    """``|a - b|`` after removing the nearest multiple of ``2 pi i``.

    Both arguments are principal-branch values, so this only differs from
    the plain distance when they straddle ``Im = +-pi``.
    """
    d = complex(a) - complex(b)
    k = round(d.imag / _TWO_PI)
    return abs(complex(d.real, d.imag - _TWO_PI * k))


def classify_point(z: complex) -> MapCell:
    """Run the Levin route at ``z`` and, where it converges, measure its error."""
    z = complex(z)
    if is_pole(z):
        return MapCell(z, CellStatus.POLE, None, 0)
    try:
        out = lnfactorial_levin(z)
    except DomainError:
        return MapCell(z, CellStatus.FAILED, None, 0)
    if not out.converged:
        return MapCell(z, CellStatus.FAILED, None, out.terms_used)
    try:
        ref = oracle(z)
    except StirlingError:
        return MapCell(z, CellStatus.FAILED, None, out.terms_used)
    return MapCell(z, CellStatus.CONVERGED, branch_distance(out.value, ref), out.terms_used)


def truncation_point(z: complex, n_terms: int) -> MapCell:
    """Error of the ``n_terms`` Stirling truncation (no acceleration) at ``z``."""
    z = complex(z)
    if is_pole(z):
        return MapCell(z, CellStatus.POLE, None, 0)
    try:
        approx = truncated_lnfactorial(SeriesKind.STIRLING_ORIGINAL, z, n_terms)
        ref = oracle(z)
    except StirlingError:
        return MapCell(z, CellStatus.FAILED, None, n_terms)
    err = branch_distance(approx, ref)
    if not math.isfinite(err):
        return MapCell(z, CellStatus.FAILED, None, n_terms)
    return MapCell(z, CellStatus.CONVERGED, err, n_terms)


def _row(fn, zs):
    return [fn(z) for z in zs]


def _sweep(fn, g: GridSpec, workers: int) -> list[MapCell]:
    res = g.re_nodes
    rows = [[complex(x, y) for x in res] for y in g.im_nodes]
    if workers <= 1:
        return [cell for row in rows for cell in _row(fn, row)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() preserves submission order, so output does not depend on
        # which worker finishes first.
        out = pool.map(partial(_row, fn), rows)
        return [cell for row in out for cell in row]


def generate_map(g: GridSpec, workers: int = 1) -> list[MapCell]:
    """Levin status/error for every node of ``g`` (row-major, Im outer)."""
    return _sweep(classify_point, g, workers)


def truncation_error_map(g: GridSpec, n_terms: int, workers: int = 1) -> list[MapCell]:
    """One cell per node with the error of the ``n_terms`` truncation."""
    if n_terms < 0:
        raise ValueError(f"n_terms must be nonnegative, got {n_terms}")
    return _sweep(partial(truncation_point, n_terms=n_terms), g, workers)


def binet_crosscheck(cells: Iterable[MapCell], sample: int = 10, seed: int = 0):
    """Compare the oracle with the quadrature route on a random subsample.

    Only converged cells with ``Re z > -1/2`` are eligible.  Returns a list of
    ``(z, discrepancy)``; the discrepancy is ``None`` where the quadrature
    exhausted its panel budget.
    """
    from .binet import lnfactorial_binet

    eligible = [c for c in cells if c.status is CellStatus.CONVERGED and c.z.real > -0.5]
    picks = random.Random(seed).sample(eligible, min(sample, len(eligible)))
    out = []
    for c in picks:
        try:
            out.append((c.z, branch_distance(lnfactorial_binet(c.z), oracle(c.z))))
        except StirlingError:
            out.append((c.z, None))
    return out


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def write_csv(cells: Iterable[MapCell], fh: TextIO) -> None:
    """``re,im,status,abs_err,terms`` rows; floats in round-trip ``repr`` form."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["re", "im", "status", "abs_err", "terms"])
    for c in cells:
        w.writerow([_fmt(c.z.real), _fmt(c.z.imag), c.status.value, _fmt(c.abs_err), c.terms_used])


def format_csv(cells: Iterable[MapCell]) -> str:
    buf = io.StringIO()
    write_csv(cells, buf)
    return buf.getvalue()


def write_pgm(cells: list[MapCell], g: GridSpec, fh: TextIO, threshold: float = 1e-12) -> None:
    """Plain (P2) greyscale image, top row at ``im_max``.

    0 = failed, 255 = converged within ``threshold``, 128 = anything else.
    """
    if len(cells) != g.n_re * g.n_im:
        raise ValueError("cell count does not match the grid")

    def pixel(c: MapCell) -> int:
        if c.status is CellStatus.FAILED:
            return 0
        if c.status is CellStatus.CONVERGED and c.abs_err <= threshold:
            return 255
        return 128

    fh.write(f"P2\n{g.n_re} {g.n_im}\n255\n")
    for i in reversed(range(g.n_im)):
        row = cells[i * g.n_re:(i + 1) * g.n_re]
        fh.write(" ".join(str(pixel(c)) for c in row) + "\n")
