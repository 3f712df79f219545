import logging
import os
import random
from fractions import Fraction

logger = logging.getLogger(__name__)

SEED_ENV = "SPINFLUX_SEED"
DEFAULT_SEED = 42
DEFAULT_BOUND = 10**6


def resolve_seed(seed: int | None) -> int:
    """Explicit seed, then $SPINFLUX_SEED, then the default."""
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(
                f"{SEED_ENV} must be an integer, got {env!r}"
            ) from None
    return DEFAULT_SEED


class RationalSampler:
    """Seeded source of nonzero rationals with bounded numerator and
    denominator."""

    def __init__(self, seed: int, bound: int = DEFAULT_BOUND):
        if bound < 1:
            raise ValueError(f"Sampling bound must be positive, got {bound}")
        self.seed = seed
        self.bound = bound
        self._rng = random.Random(seed)

    def draw(self) -> Fraction:
        while True:
            num = self._rng.randint(-self.bound, self.bound)
            if num:
                return Fraction(num, self._rng.randint(1, self.bound))

    def draw_point(self, names) -> dict[str, Fraction]:
        return {name: self.draw() for name in sorted(names)}

    def fork(self, label: str) -> "RationalSampler":
        """Independent sampler derived from this seed and a label, so the
        draws for one theorem do not depend on which others ran first."""
        return RationalSampler(
            random.Random(f"{self.seed}:{label}").randrange(2**32), self.bound
        )
