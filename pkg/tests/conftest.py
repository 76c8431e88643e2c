import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from biq import algebra as al
from biq import biquotient as bi


@pytest.fixture
def rng():
    return np.random.default_rng(20240815)


def semisimple_families():
    return [al.su(2), al.su(3), al.su(4), al.sp(1), al.sp(2),
            al.so(3), al.so(5), al.so(6), al.so(7)]


def assert_certificate_flat(act, g, P, cert, tol=1e-8):
    """Master cross-check: every emitted certificate must evaluate flat
    through the independent curvature engine."""
    rep = bi.quotient_sectional(act, g, P, cert.x, cert.y)
    assert abs(rep.sec_quotient) < tol, (
        f"{cert.criterion} certificate is not flat: {rep.sec_quotient}"
    )
    assert cert.max_residual() < 1e-9
    return rep
