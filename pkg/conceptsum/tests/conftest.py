from oslo_config import fixture as config_fixture
from oslo_log import log
import pytest

from conceptsum.common import config as conceptsum_config
from conceptsum.common import driver_factory
from conceptsum.conf import CONF
from conceptsum.tests.unit import utils

log.register_options(CONF)


class ConfigFixture(config_fixture.Config):
    """Add missing proxy interfaces to config_fixture.Config"""

    def register_group(self, group):
        return self.conf.register_group(group)

    def __getitem__(self, item):
        return self.conf[item]


@pytest.fixture
def test_config() -> "ConfigFixture":
    cfg_fixture = ConfigFixture(CONF)
    cfg_fixture.setUp()
    cfg_fixture.config(use_stderr=False)
    yield cfg_fixture
    cfg_fixture.cleanUp()


@pytest.fixture
def set_config(test_config: "ConfigFixture"):
    def _wrapped(**kwargs):
        """Override values of config options."""
        return test_config.config(**kwargs)

    return _wrapped


@pytest.fixture(autouse=True)
def _init_test_env(set_config, mocker):
    """Initialize environment and configuration for a test.

    The tokenizer drivers are served from a mocked extension manager so tests
    do not depend on the package's entry points being installed. The
    extension manager is cleared after each test, so tests can change the
    enabled tokenizers.
    """
    set_config(debug=True)
    utils.mock_drivers(mocker, utils.TOKENIZER_DRIVERS)
    # This is a bit of a hack; this function does a lot more than
    # parse command line arguments! ;_;
    conceptsum_config.parse_args([], default_config_files=[])
    yield
    driver_factory.TokenizerFactory._extension_manager = None
