import doctest
import importlib

import pytest

MODULES = ["modring", "aggtree", "oracle", "sketch", "solver", "certificate", "cli"]


@pytest.mark.parametrize("name", MODULES)
def test_module_doctests(name):
    mod = importlib.import_module(f"modsubsetsum.{name}")
    result = doctest.testmod(mod, optionflags=doctest.ELLIPSIS)
    assert result.failed == 0
