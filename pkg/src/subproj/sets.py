"""Closed convex sets with exact metric projections.

Every set variant is nonempty, closed and convex by construction, and its
projection is the exact nearest-point map (idempotent, firmly nonexpansive).
"""

from __future__ import annotations

import numpy as np

from .core import as_vector, norm

__all__ = ["ConvexSet", "Ball", "Halfspace", "Box", "Point", "project_set"]


class ConvexSet:
    """Base class for sets with an exact projection oracle."""

    dim: int

    def project(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def distance(self, x: np.ndarray) -> float:
        """Exact Euclidean distance to the set."""
        raise NotImplementedError

    def contains(self, x: np.ndarray) -> bool:
        raise NotImplementedError


class Ball(ConvexSet):
    """Closed Euclidean ball {y : ||y - center|| <= radius}."""

    def __init__(self, center, radius: float):
        self.center = as_vector(center)
        self.radius = float(radius)
        self.dim = self.center.size
        if self.radius <= 0.0:
            raise ValueError("ball radius must be positive")

    def project(self, x):
        z = x - self.center
        n = norm(z)
        if n <= self.radius:
            return np.array(x, dtype=float)
        p = self.center + (self.radius / n) * z
        # Rounding may inflate the result by an ulp; pull it back inside so
        # that membership and idempotence hold exactly.  The shrink escalates
        # geometrically, so the loop terminates at any scale.
        shrink = 2.0 ** -52
        while norm(p - self.center) > self.radius:
            p = self.center + (p - self.center) * (1.0 - shrink)
            shrink *= 2.0
        return p

    def distance(self, x):
        return max(norm(x - self.center) - self.radius, 0.0)

    def contains(self, x):
        return norm(x - self.center) <= self.radius

    def __repr__(self):
        return f"Ball(center={self.center.tolist()}, radius={self.radius})"


class Halfspace(ConvexSet):
    """Closed halfspace {y : <y, normal> <= offset}."""

    def __init__(self, normal, offset: float):
        self.normal = as_vector(normal)
        self.offset = float(offset)
        self.dim = self.normal.size
        n2 = float(np.dot(self.normal, self.normal))
        if n2 == 0.0:
            raise ValueError("halfspace normal must be nonzero")
        self._n2 = n2

    def project(self, x):
        excess = float(np.dot(x, self.normal)) - self.offset
        if excess <= 0.0:
            return np.array(x, dtype=float)
        t = excess / self._n2
        p = x - t * self.normal
        # As for the ball: keep the result inside despite rounding, padding
        # the step by an escalating few ulps of the operating scale.
        pad = 4.0 * 2.0 ** -52 * (abs(self.offset) + norm(x) * np.sqrt(self._n2)) / self._n2
        while float(np.dot(p, self.normal)) > self.offset:
            p = x - (t + pad) * self.normal
            pad *= 2.0
        return p

    def distance(self, x):
        excess = float(np.dot(x, self.normal)) - self.offset
        return max(excess, 0.0) / np.sqrt(self._n2)

    def contains(self, x):
        return float(np.dot(x, self.normal)) <= self.offset

    def __repr__(self):
        return f"Halfspace(normal={self.normal.tolist()}, offset={self.offset})"


class Box(ConvexSet):
    """Axis-aligned box {y : lo <= y <= hi componentwise}."""

    def __init__(self, lo, hi):
        self.lo = as_vector(lo)
        self.hi = as_vector(hi, dim=self.lo.size)
        self.dim = self.lo.size
        if np.any(self.lo > self.hi):
            raise ValueError("box requires lo <= hi componentwise")

    def project(self, x):
        return np.clip(x, self.lo, self.hi)

    def distance(self, x):
        return norm(x - np.clip(x, self.lo, self.hi))

    def contains(self, x):
        return bool(np.all(x >= self.lo) and np.all(x <= self.hi))

    def __repr__(self):
        return f"Box(lo={self.lo.tolist()}, hi={self.hi.tolist()})"


class Point(ConvexSet):
    """Singleton {c}."""

    def __init__(self, c):
        self.c = as_vector(c)
        self.dim = self.c.size

    def project(self, x):
        return np.array(self.c, dtype=float)

    def distance(self, x):
        return norm(x - self.c)

    def contains(self, x):
        return bool(np.all(np.asarray(x, dtype=float) == self.c))

    def __repr__(self):
        return f"Point(c={self.c.tolist()})"


def project_set(s: ConvexSet, x) -> np.ndarray:
    """Exact metric projection of ``x`` onto ``s``."""
    return s.project(as_vector(x, dim=s.dim))
