import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from support import e1_mask  # noqa: E402

from padicwave import build_wavelet_package, haar_mask, inverse_fourier, scaling_from_mask


@pytest.fixture(scope="session")
def mask_e1():
    return e1_mask()


@pytest.fixture(scope="session")
def phi_hat_e1(mask_e1):
    return scaling_from_mask(mask_e1, 2).phi_hat


@pytest.fixture(scope="session")
def phi_e1(phi_hat_e1):
    return inverse_fourier(phi_hat_e1)


@pytest.fixture(scope="session")
def package_haar():
    return build_wavelet_package(haar_mask(2), 0)


@pytest.fixture(scope="session")
def package_e1(mask_e1):
    return build_wavelet_package(mask_e1, 2)
