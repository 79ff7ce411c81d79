"""Run the docstring examples of the numeric modules."""

import doctest

from deodhar import counting


def test_counting_doctests():
    results = doctest.testmod(counting, verbose=False)
    assert results.failed == 0
    assert results.attempted >= 2
