"""Sample points for identity checks and the per-side evaluation context."""

from __future__ import annotations

import math
import zlib
from dataclasses import asdict, dataclass, replace

import numpy as np

from ..humbert import HumbertParams, psi1, psi1_values, psi2, psi2_values
from ..qcalc import qdiff_iter
from ..qcore import EvalResult, TruncationPolicy, qpow

__all__ = ["Point", "Side", "BASE_MODES", "draw_point", "point_rng"]

BASE_MODES = ("two", "same", "q")

EXP_RANGE = (0.3, 2.5)
BASE_RANGE = (0.15, 0.8)
# A lower bound on |x|, |y| keeps q-difference quotients away from the
# cancellation regime where f(x) - f(qx) loses most of its digits.
MOD_RANGE = (0.05, 0.35)


@dataclass(frozen=True)
class Point:
    a: float
    b: float
    c: float
    d: float
    q: float
    p: float
    x: complex
    y: complex
    r: int = 1
    s: int = 1

    def params(self, **shift) -> HumbertParams:
        e = {k: getattr(self, k) + shift.get(k, 0) for k in ("a", "b", "c", "d")}
        return HumbertParams(q=self.q, p=self.p, **e)

    def with_(self, **values) -> "Point":
        return replace(self, **values)

    def as_dict(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            out[k] = [v.real, v.imag] if isinstance(v, complex) else v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Point":
        kw = dict(data)
        for k in ("x", "y"):
            v = kw[k]
            kw[k] = complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
        return cls(**kw)


def point_rng(seed: int, ident: str, index: int) -> np.random.Generator:
    """Per-point generator: depends only on (seed, id, index), never on scheduling."""
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, zlib.crc32(ident.encode()), int(index)])


def draw_point(rng: np.random.Generator, base_mode: str, r_max: int = 3, s_max: int = 3) -> Point:
    a, b, c, d = (float(v) for v in rng.uniform(*EXP_RANGE, 4))
    q, p = (float(v) for v in rng.uniform(*BASE_RANGE, 2))
    if base_mode in ("same", "q"):
        p = q
    mods = rng.uniform(*MOD_RANGE, 2)
    angles = rng.uniform(0.0, 2 * math.pi, 2)
    x = complex(mods[0] * math.cos(angles[0]), mods[0] * math.sin(angles[0]))
    y = complex(mods[1] * math.cos(angles[1]), mods[1] * math.sin(angles[1]))
    r = int(rng.integers(1, r_max + 1))
    s = int(rng.integers(1, s_max + 1))
    return Point(a, b, c, d, q, p, x, y, r, s)


class Side:
    """Evaluation context for one side of an identity at one point.

    Every call recomputes its series from scratch; nothing is cached, so the
    two sides of an identity never share intermediate values.  Any helper
    result that failed to converge marks the side as unconverged.
    """

    def __init__(self, pt: Point, policy: TruncationPolicy, convention: str = "standard"):
        self.pt = pt
        self.policy = policy
        self.convention = convention
        self.converged = True

    # shorthands for the point
    @property
    def x(self) -> complex:
        return self.pt.x

    @property
    def y(self) -> complex:
        return self.pt.y

    @property
    def q(self) -> float:
        return self.pt.q

    @property
    def p(self) -> float:
        return self.pt.p

    def Q(self, e) -> complex:
        return qpow(self.pt.q, e)

    def Pp(self, e) -> complex:
        return qpow(self.pt.p, e)

    def take(self, res: EvalResult) -> complex:
        if not res.converged:
            self.converged = False
        return complex(res.value)

    def P1(self, x=None, y=None, **shift) -> complex:
        x = self.x if x is None else x
        y = self.y if y is None else y
        return self.take(psi1(self.pt.params(**shift), x, y, self.policy))

    def P2(self, x=None, y=None, **shift) -> complex:
        x = self.x if x is None else x
        y = self.y if y is None else y
        return self.take(psi2(self.pt.params(**shift), x, y, self.policy))

    def P1v(self, A, B, C, D, x=None, y=None) -> complex:
        x = self.x if x is None else x
        y = self.y if y is None else y
        return self.take(psi1_values(A, B, C, D, self.q, self.p, x, y, self.policy))

    def P2v(self, A, B, C, x=None, y=None) -> complex:
        x = self.x if x is None else x
        y = self.y if y is None else y
        return self.take(psi2_values(A, B, C, self.q, self.p, x, y, self.policy))

    def dx(self, f, order: int = 1, base=None) -> complex:
        return qdiff_iter(f, self.x, self.q if base is None else base, order)

    def dy(self, f, order: int = 1, base=None) -> complex:
        return qdiff_iter(f, self.y, self.p if base is None else base, order)

    def dxdy(self, f2, r: int, s: int, xbase, ybase) -> complex:
        """D_x^r D_y^s f2(x, y) at the point, by nested literal differences."""

        def inner(xx: complex) -> complex:
            return qdiff_iter(lambda yy: f2(xx, yy), self.y, ybase, s)

        return qdiff_iter(inner, self.x, xbase, r)
