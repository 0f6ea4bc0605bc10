"""Corner-three analytics toolkit.

Court geometry and shot zones, shot-efficiency models, shooter-defender
trajectory clustering, and a zero-sum drive-and-kick positioning game.
"""

__version__ = "0.1.0"
