"""alphacf: exact alpha-continued-fraction dynamics for triangle groups."""

__version__ = "0.1.0"
