"""CLI module for morbench."""
