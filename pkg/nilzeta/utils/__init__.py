"""Ambient helpers: errors, configuration, caching and partitioned runs."""
from . import misc, config, cache, runners
