import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel

from barylab.builtins.generators import GeneratorSpec
from barylab.config import AFFINE
from barylab.core.errors import DegenerateFit
from barylab.core.log import debug


class AffineVerdict(BaseModel):
    """Whether two generators define the same means: g o f^-1 = r id + s."""

    equivalent: bool
    r: Optional[float] = None
    s: Optional[float] = None
    fit_error: float = 0.0
    witness: Optional[Dict[str, Any]] = None
    detail: Optional[str] = None


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _jensen_witness(g1: GeneratorSpec, g2: GeneratorSpec, points: List[float], tol: float) -> Optional[Dict[str, Any]]:
    """A pair t, t' with h((t + t')/2) != (h(t) + h(t'))/2 for h = g2 o g1^-1."""
    for i, a in enumerate(points):
        for b in points[i + 1:]:
            t, t2 = g1.f(a), g1.f(b)
            mid = g1.f_inv((t + t2) / 2)
            lhs = g2.f(mid)
            rhs = (g2.f(a) + g2.f(b)) / 2
            if not _close(lhs, rhs, tol):
                return {"t": t, "t_prime": t2, "h_mid": lhs, "mean_h": rhs}
    return None


def _fit(g1: GeneratorSpec, g2: GeneratorSpec, p1: float, p2: float) -> Tuple[float, float]:
    t1, t2 = g1.f(p1), g1.f(p2)
    if t1 == t2 or p1 == p2:
        raise DegenerateFit(f"fit points {p1} and {p2} coincide under {g1.name}")
    r = (g2.f(p2) - g2.f(p1)) / (t2 - t1)
    if r == 0 or not math.isfinite(r):
        raise DegenerateFit(f"fitted slope r = {r} for {g2.name} against {g1.name}")
    return r, g2.f(p1) - r * t1


def affine_identifiability(g1: GeneratorSpec, g2: GeneratorSpec, max_arity: int = 6,
                           tol: float = AFFINE["tolerance"]) -> AffineVerdict:
    """Fit r, s from the interval quartiles of g1 and verify g2 = r g1 + s.

    When both generators carry outer sequences, g2_n^-1 o g1_n must equal the
    same affine map at every arity up to ``max_arity``.
    """
    q1, q3 = AFFINE["quartiles"]
    interval = g1.interval
    p1, p2 = interval.quantile(q1), interval.quantile(q3)
    r, s = _fit(g1, g2, p1, p2)

    points = [p for p in g1.sample_points() if g2.interval.contains(p)]
    worst = 0.0
    for p in points:
        err = abs(g2.f(p) - (r * g1.f(p) + s))
        worst = max(worst, err / max(1.0, abs(g2.f(p))))
    debug(f"affine fit {g1.name} -> {g2.name}: r={r} s={s} error={worst:.3e}")
    if worst > tol:
        witness = _jensen_witness(g1, g2, points, tol)
        return AffineVerdict(equivalent=False, fit_error=worst, witness=witness,
                             detail="g2 o g1^-1 is not affine on the sample grid")

    if g1.outer is not None and g2.outer is not None:
        images = [g1.f(p) for p in points]
        for n in range(1, max_arity + 1):
            f_n, _ = g1.outer(n)
            _, g_n_inv = g2.outer(n)
            for t in images:
                lhs = g_n_inv(f_n(t))
                if not _close(lhs, r * t + s, tol):
                    return AffineVerdict(
                        equivalent=False, r=r, s=s, fit_error=worst,
                        witness={"n": n, "t": t, "outer": lhs, "affine": r * t + s},
                        detail=f"outer maps disagree with the affine fit at arity {n}",
                    )
    return AffineVerdict(equivalent=True, r=r, s=s, fit_error=worst)
