"""Exact computations around the contact invariant of fibered knots."""

__version__ = "0.1.0"
