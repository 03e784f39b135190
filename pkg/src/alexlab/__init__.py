"""Exact computations around Alexander polynomials, cyclic resultants and
the finite layers of the completed group ring Z^[[t^Z^]]."""

__version__ = "0.1.0"
