"""Upper and lower bounds for kissing numbers and spherical codes."""

from kissing.report import BoundReport

__version__ = "0.1.0"

__all__ = ["BoundReport", "__version__"]
