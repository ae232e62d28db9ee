"""
Entry point for running morbench as a module: python -m morbench
"""

from morbench.cli.commands import app

if __name__ == "__main__":
    app()
