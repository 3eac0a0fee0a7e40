"""steinertreesolver: reinforced Max-Sum solver for rooted, prize-collecting and classic Steiner trees."""

__version__ = "1.0.0"
