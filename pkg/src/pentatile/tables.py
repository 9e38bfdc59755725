"""Angle tables recomputed from (n, theta).

Tables 1 and 3 list a chosen B for every n (theta = B - 90); table 2 is the
trapezoid row theta = 90 - 360/n.
"""

from __future__ import annotations

from .geometry import PentagonParams, angles_from_params, edge_e

N_RANGE = {1: range(3, 19), 2: range(5, 19), 3: range(5, 19)}

B_COLUMN = {
    1: dict(zip(range(3, 19), [151, 151, 153, 151, 146, 151, 150, 156, 156, 160, 160, 164, 164, 170, 170, 170])),
    3: dict(zip(range(5, 19), [98, 98, 106.41, 112, 112, 112, 112, 135, 112, 112, 112, 112, 112, 112])),
}

HEADER = ["n", "A", "B", "C", "D", "E", "e"]


def table_theta(which: int, n: int) -> float:
    if which == 2:
        return 90.0 - 360.0 / n
    return B_COLUMN[which][n] - 90.0


def table_rows(which: int):
    """Unrounded rows (n, A, B, C, D, E, e)."""
    if which not in N_RANGE:
        raise ValueError(f"table must be 1, 2 or 3, got {which}")
    out = []
    for n in N_RANGE[which]:
        p = PentagonParams.from_n(n, table_theta(which, n))
        a = angles_from_params(p)
        out.append((n, a.A, a.B, a.C, a.D, a.E, edge_e(p.alpha, p.theta)))
    return out


def emit_tables(which: int):
    """CSV-ready rows, header first: angles to 2 decimals, e to 3."""
    rows = [list(HEADER)]
    for n, *angles, e in table_rows(which):
        rows.append([str(n)] + [f"{x:.2f}" for x in angles] + [f"{e:.3f}"])
    return rows
