"""Kannappan-Wilson and Van Vleck-Wilson functional equations on finite semigroups."""

__version__ = "0.1.0"
