from pathlib import Path

import pytest

from HoCat.engine import catalog
from HoCat.engine.localization import Battery

ROOT = Path(__file__).resolve().parent.parent
INSTANCES = ROOT / "instances"
FUNCTORS = INSTANCES / "functors"
BATTERY_DIR = ROOT / "batteries" / "default"


@pytest.fixture
def small_battery() -> Battery:
    return Battery("small", (catalog.point(), catalog.arrow(), catalog.z2()))


@pytest.fixture
def diamond():
    return catalog.diamond()


@pytest.fixture
def triv_diamond(diamond):
    return catalog.with_identity_replacement(catalog.triv_model(diamond))


@pytest.fixture
def collapse_diamond(diamond):
    return catalog.with_identity_replacement(catalog.collapse_model(diamond))


@pytest.fixture
def triv_z2plus():
    from HoCat.database.database import load_instance

    return load_instance(INSTANCES / "triv_z2plus.json")


@pytest.fixture
def instance_path():
    def path(name: str) -> str:
        return str(INSTANCES / f"{name}.json")

    return path


@pytest.fixture
def functor_path():
    def path(name: str) -> str:
        return str(FUNCTORS / f"{name}.json")

    return path
