"""
morbench - MORscore benchmarking of empirical-Gramian-based model reduction
"""

__version__ = "0.1.0"
__logo__ = "📉"
