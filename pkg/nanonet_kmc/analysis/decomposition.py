"""Linear decomposition of the four gate currents into mobilities and cross term."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Rows map (I00, I10, I01, I11) onto (M_l, M_r, X).
_DECOMPOSITION = 0.25 * np.array(
    [
        [-1.0, 1.0, -1.0, 1.0],
        [-1.0, -1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0, 1.0],
    ]
)


@dataclass(frozen=True)
class Decomposition:
    """``m_l``, ``m_r`` and ``x`` plus the mean current ``offset``.

    ``offset + m_l + m_r + x`` reconstructs ``I11``.
    """

    m_l: float
    m_r: float
    x: float
    offset: float = 0.0


def decompose(i00: float, i10: float, i01: float, i11: float) -> Decomposition:
    m_l, m_r, x = _DECOMPOSITION @ np.array([i00, i10, i01, i11], dtype=float)
    return Decomposition(
        m_l=float(m_l), m_r=float(m_r), x=float(x), offset=0.25 * (i00 + i10 + i01 + i11)
    )


def decompose_array(currents) -> np.ndarray:
    """Vectorised form for an ``(n, 4)`` current array; returns ``(n, 3)`` columns M_l, M_r, X."""

    currents = np.asarray(currents, dtype=float)
    if currents.ndim != 2 or currents.shape[1] != 4:
        raise ValueError(f"expected an (n, 4) current array, got {currents.shape}")
    return currents @ _DECOMPOSITION.T
