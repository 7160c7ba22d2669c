"""Shared draw helpers for the test suite.

Potentials are drawn real (the physical case every identity assumes); where a
test needs the elimination coefficient to be safely invertible it draws
through `admissible_potentials`, which rejects fields with |i*F1 + F2| below
a floor at the expansion point.
"""

import numpy as np
import pytest
from hypothesis import settings

from diracelim import fields
from diracelim.jets import random_jet

settings.register_profile("suite", deadline=None, max_examples=25)
settings.load_profile("suite")


@pytest.fixture
def rng():
    return np.random.default_rng(20260821)


def real_potentials(rng, order, amplitude=1.0):
    """Four random real potential jets of one order."""
    return fields.PotentialJets(
        tuple(random_jet(rng, order, amplitude).real_part() for _ in range(4))
    )


def admissible_potentials(rng, order, floor=0.1, tries=200):
    """Real potentials whose |i*F1 + F2| clears `floor` at the expansion point."""
    for _ in range(tries):
        p = real_potentials(rng, order)
        coef = fields.elimination_coefficient(fields.field_strength(p))
        if abs(coef.value()) >= floor:
            return p
    raise AssertionError(f"no admissible potential found in {tries} tries")
