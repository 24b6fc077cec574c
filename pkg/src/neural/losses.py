"""Margin ranking penalty for inequality constraints."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from .layers import ShapeError


def margin_ranking_loss(v: np.ndarray, vt: np.ndarray, m: np.ndarray) -> Tuple[float, np.ndarray]:
    """Mean of ``max(0, -m·(v - vt))`` and its (sub)gradient with respect to ``v``.

    ``m = +1`` encodes ``v >= vt``, ``m = -1`` encodes ``v <= vt``. The
    subgradient at the kink is 0.
    """

    v = np.asarray(v, dtype=np.float64)
    vt = np.asarray(vt, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    if not (v.shape == vt.shape == m.shape) or v.ndim != 1:
        raise ShapeError(f"Längen passen nicht zusammen: v={v.shape}, vt={vt.shape}, m={m.shape}")
    if not np.all(np.abs(m) == 1.0):
        raise ValueError("Vorzeichenvektor m darf nur +1 oder -1 enthalten.")
    if v.size == 0:
        return 0.0, np.zeros(0)

    violation = -m * (v - vt)
    active = violation > 0.0
    loss = float(np.where(active, violation, 0.0).mean())
    grad = np.where(active, -m / v.size, 0.0)
    return loss, grad


__all__ = ["margin_ranking_loss"]
