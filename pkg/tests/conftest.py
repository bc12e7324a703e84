from __future__ import annotations

import numpy as np
import pytest

from maxarc.conic import Conic
from maxarc.field import Field, pg32_field
from maxarc.plane import Plane


@pytest.fixture(scope="session")
def F32() -> Field:
    return pg32_field()


@pytest.fixture(scope="session")
def P32(F32) -> Plane:
    return Plane(F32)


@pytest.fixture(scope="session")
def fields_small() -> list[Field]:
    return [Field(h) for h in (2, 3, 4, 5)]


@pytest.fixture(scope="session")
def base32(F32) -> tuple[int, int, int]:
    return tuple(F32.parse(x) for x in ("1", "w", "w^18"))


@pytest.fixture(scope="session")
def base_arc32(P32, base32):
    from maxarc.arcs import arc_from_conics

    return arc_from_conics(P32, [Conic(1, 1, x) for x in base32], "denniston")


@pytest.fixture(scope="session")
def mathon_classes32(F32):
    from maxarc.census import classify_mathon8

    return classify_mathon8(F32)


def affine_form_values(F: Field, alpha: int, beta: int) -> np.ndarray:
    """alpha x^2 + x y + beta y^2 on the q x q grid (x major)."""
    x = np.repeat(np.arange(F.q), F.q)
    y = np.tile(np.arange(F.q), F.q)
    return F.vmul(alpha, F.vmul(x, x)) ^ F.vmul(x, y) ^ F.vmul(beta, F.vmul(y, y))
