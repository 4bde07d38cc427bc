"""Shared fixtures for the gruss test suites."""

# Standard Library
from pathlib import Path

# Third Party Library
import numpy as np
import pytest

# Project Library
from gruss.core.seqcore import (
    Ball,
    Disk,
    NormedSpace,
    NormFamily,
    ScalarField,
    ScalarSeq,
    Segment,
    VectorSeq,
    WeightVector,
    validate_weights,
)


FIXTURES_DIR = Path(__file__).parent / "gruss_cli" / "fixtures"


class RandomInstances:
    """Random admissible inputs drawn from a seeded generator."""

    def __init__(self, seed: int = 0) -> None:
        self.rng = np.random.default_rng(seed)

    def space(self, max_dimension: int = 8, scalar_field: ScalarField = None) -> NormedSpace:
        family = list(NormFamily)[self.rng.integers(len(NormFamily))]
        p = float(self.rng.uniform(1.0, 6.0)) if family is NormFamily.LP else None
        if scalar_field is None:
            scalar_field = ScalarField.REAL if self.rng.random() < 0.5 else ScalarField.COMPLEX
        return NormedSpace(int(self.rng.integers(1, max_dimension + 1)), family, p, scalar_field)

    def weights(self, n: int) -> WeightVector:
        raw = self.rng.random(n)
        # occasionally zero weights
        raw[self.rng.random(n) < 0.1] = 0.0
        if raw.sum() == 0:
            raw[0] = 1.0
        return validate_weights(raw, normalize=True)

    def complex_values(self, shape, real: bool = False, scale: float = 1.0) -> np.ndarray:
        values = self.rng.normal(size=shape).astype(complex)
        if not real:
            values = values + 1j * self.rng.normal(size=shape)
        return scale * values

    def scalars(self, n: int, real: bool = False) -> ScalarSeq:
        return ScalarSeq(self.complex_values(n, real))

    def vectors(self, n: int, space: NormedSpace) -> VectorSeq:
        real = space.scalar_field is ScalarField.REAL
        return VectorSeq(self.complex_values((n, space.dimension), real), space)

    def covering_disk(self, alpha: ScalarSeq) -> Disk:
        """A disk around the mean holding every alpha_i with some slack."""
        center = complex(np.mean(alpha.values))
        radius = float(np.max(np.abs(alpha.values - center)))
        return Disk(center, radius * (1 + 1e-9 + 0.5 * self.rng.random()))

    def covering_segment(self, alpha: ScalarSeq) -> Segment:
        """Endpoints of a diameter of a covering disk, real when alpha is real."""
        disk = self.covering_disk(alpha)
        direction = 1.0 if alpha.is_real else complex(np.exp(1j * self.rng.uniform(0, 2 * np.pi)))
        return Segment(disk.center - disk.radius * direction, disk.center + disk.radius * direction)

    def covering_ball(self, x: VectorSeq) -> Ball:
        center = np.mean(x.points, axis=0)
        radius = float(np.max(x.space.norms(x.points - center)))
        return Ball(center, radius * (1 + 1e-9 + 0.5 * self.rng.random()), x.space)

    def instance(self, max_n: int = 64, min_n: int = 1, max_dimension: int = 8):
        """(alpha, x, p) with matching lengths and fields."""
        n = int(self.rng.integers(min_n, max_n + 1))
        space = self.space(max_dimension)
        alpha = self.scalars(n, real=space.scalar_field is ScalarField.REAL)
        return alpha, self.vectors(n, space), self.weights(n)


@pytest.fixture
def instances() -> RandomInstances:
    return RandomInstances(seed=20240901)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR
