import os
import shutil
import logging
import numpy as np
import pytest
from somlogic.cwm import CwmModel
from somlogic.stimulus import Stimulus
from .utils import random_models, toy_domain, toy_categories

# Number of random trained maps the property tests run over
RANDOM_INSTANCES = 100


def pytest_addoption(parser):
    """Customizations for the py.test command line options"""
    parser.addoption(
        "--skip-slow",
        action="store_true",
        help="don't run tests that train the set of random maps"
    )


def _workspace_dir():
    """Gets the absolute path to the root folder of the workspace

    :rtype: :class:`str`
    """
    cur_path = os.path.dirname(__file__)
    return os.path.abspath(os.path.join(cur_path, ".."))


@pytest.fixture(scope="session", autouse=True)
def configure_logger():
    """Configure logging for the test runner"""
    log_dir = os.path.join(_workspace_dir(), "logs")
    if os.path.exists(log_dir):
        shutil.rmtree(log_dir)
    os.makedirs(log_dir)

    global_log = logging.getLogger()
    global_log.setLevel(logging.DEBUG)

    verbose_format = "%(asctime)s(%(levelname)s->%(module)s):%(message)s"
    date_format = "%Y-%m-%d %H:%M:%S"
    fmt = logging.Formatter(verbose_format, date_format)
    file_handler = logging.FileHandler(
        os.path.join(log_dir, "tests.log"),
        mode="w")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(fmt)
    global_log.addHandler(file_handler)


@pytest.fixture
def toy_model():
    """Three category model where A is more specific than B"""
    return CwmModel(toy_domain(), toy_categories(), [("A", "B")])


@pytest.fixture
def toy_stimuli():
    """Two well separated clusters of labeled exemplars in the plane"""
    rng = np.random.default_rng(7)
    retval = []
    for name, center in (("bird", (0.0, 0.0)), ("fish", (5.0, 5.0))):
        for _ in range(8):
            retval.append(Stimulus("s{0}".format(len(retval)), name,
                                   np.array(center) + rng.normal(0, 0.5, 2)))
    return retval


@pytest.fixture(scope="session")
def random_instances():
    """Preferential models of seeded random maps, built once per run"""
    log = logging.getLogger(__name__)
    retval = random_models(RANDOM_INSTANCES)
    log.info("built %d random models", len(retval))
    return retval


def pytest_collection_modifyitems(config, items):
    """Applies command line customizations to the collected tests"""
    if not config.getoption("--skip-slow"):
        return

    skip_slow = pytest.mark.skip(reason="Skipping tests over random maps")
    for item in items:
        if "random_instances" in item.fixturenames:
            item.add_marker(skip_slow)
