"""Thin setup shim; configuration lives in pyproject.toml."""

from setuptools import setup

setup()
