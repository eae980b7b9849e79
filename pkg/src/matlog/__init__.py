"""matlog: a workbench for propositional logics over finite matrices."""

__version__ = "0.1.0"
