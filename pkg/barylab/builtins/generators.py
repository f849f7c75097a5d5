import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from barylab.config import AFFINE, TOLERANCE
from barylab.core.domains import DomainDesc
from barylab.core.errors import GeneratorNotInvertible, UnknownName

Unary = Callable[[float], float]
# n -> (f_n, f_n^-1)
Outer = Callable[[int], Tuple[Unary, Unary]]


@dataclass(frozen=True)
class GeneratorSpec:
    """A strictly monotone continuous generator f on an interval, with its inverse.

    ``outer`` is only needed by pre-means: it maps an arity n to the pair
    (f_n, f_n^-1) of strictly increasing maps on the reals.
    """

    name: str
    f: Unary
    f_inv: Unary
    interval: DomainDesc
    outer: Optional[Outer] = None
    outer_name: str = ""
    meta: Dict[str, float] = field(default_factory=dict)

    def with_outer(self, outer: Outer, outer_name: str) -> "GeneratorSpec":
        return GeneratorSpec(self.name, self.f, self.f_inv, self.interval, outer, outer_name, dict(self.meta))

    def sample_points(self, count: int = AFFINE["grid_points"]) -> List[float]:
        return self.interval.grid(count)

    def validate(self, max_arity: int = 6) -> "GeneratorSpec":
        """Check invertibility and strict monotonicity at the sample grid."""
        points = self.sample_points()
        images = []
        for x in points:
            y = self.f(x)
            if not _close(self.f_inv(y), x):
                raise GeneratorNotInvertible(self.name, x)
            images.append(y)
        steps = [b - a for a, b in zip(images, images[1:])]
        if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
            raise GeneratorNotInvertible(self.name, points[0])
        if self.outer is not None:
            grid = [min(images) + t * (max(images) - min(images)) for t in (0.0, 0.25, 0.5, 0.75, 1.0)]
            for n in range(1, max_arity + 1):
                fn, fn_inv = self.outer(n)
                values = [fn(t) for t in grid]
                if any(b <= a for a, b in zip(values, values[1:])):
                    raise GeneratorNotInvertible(f"{self.name}/{self.outer_name}_{n}", grid[0])
                for t, v in zip(grid, values):
                    if not _close(fn_inv(v), t):
                        raise GeneratorNotInvertible(f"{self.name}/{self.outer_name}_{n}", t)
        return self


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-7, abs_tol=TOLERANCE["abs"] * 1e3)


# ── named generators ─────────────────────────────────────────────────────────

def identity() -> GeneratorSpec:
    return GeneratorSpec("identity", lambda x: x, lambda y: y, DomainDesc.reals())


def log() -> GeneratorSpec:
    return GeneratorSpec("log", math.log, math.exp, DomainDesc.positive_reals())


def reciprocal() -> GeneratorSpec:
    return GeneratorSpec("reciprocal", lambda x: 1.0 / x, lambda y: 1.0 / y, DomainDesc.positive_reals())


def cube() -> GeneratorSpec:
    return GeneratorSpec("cube", lambda x: x ** 3, lambda y: math.copysign(abs(y) ** (1.0 / 3.0), y), DomainDesc.reals())


def affine(base: GeneratorSpec, r: float, s: float) -> GeneratorSpec:
    """r * base + s; still a generator whenever r != 0."""
    if r == 0:
        raise GeneratorNotInvertible(f"{r}*{base.name}+{s}", None)
    return GeneratorSpec(
        f"{r}*{base.name}+{s}",
        lambda x: r * base.f(x) + s,
        lambda y: base.f_inv((y - s) / r),
        base.interval,
        meta={"r": r, "s": s},
    )


GENERATORS: Dict[str, Callable[[], GeneratorSpec]] = {
    "identity": identity,
    "log": log,
    "reciprocal": reciprocal,
    "cube": cube,
}


def named_generator(name: str) -> GeneratorSpec:
    factory = GENERATORS.get(name)
    if factory is None:
        raise UnknownName(f"unknown generator {name!r}; expected one of {sorted(GENERATORS)}")
    return factory()


# ── outer sequences for pre-means ────────────────────────────────────────────

def outer_inverse(g: GeneratorSpec) -> Outer:
    """f_n = f^-1 for every n, which turns a pre-mean back into the mean.

    Only increasing generators give increasing outer maps.
    """
    return lambda n: (g.f_inv, g.f)


def outer_n_times() -> Outer:
    """f_n(x) = n x."""
    return lambda n: ((lambda x: n * x), (lambda y: y / n))


def outer_exp_n() -> Outer:
    """f_n(x) = exp(n x)."""
    return lambda n: ((lambda x: math.exp(n * x)), (lambda y: math.log(y) / n))


OUTERS: Dict[str, Callable[[GeneratorSpec], Outer]] = {
    "inverse": outer_inverse,
    "n_times": lambda g: outer_n_times(),
    "exp_n": lambda g: outer_exp_n(),
}


def with_named_outer(g: GeneratorSpec, outer: str) -> GeneratorSpec:
    factory = OUTERS.get(outer)
    if factory is None:
        raise UnknownName(f"unknown outer sequence {outer!r}; expected one of {sorted(OUTERS)}")
    return g.with_outer(factory(g), outer)
