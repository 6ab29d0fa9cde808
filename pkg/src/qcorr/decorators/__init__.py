"""Decorators naming the experiment runners."""

# Authors: Genevieve Hayes (modified by Andrew Rollings, Kyle Nakamura)
# License: BSD 3-clause

from .short_name_decorator import short_name, get_short_name, registered_runners
