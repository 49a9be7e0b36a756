"""aqt_groupoids package: quantum transformation groupoids from Yetter–Drinfeld *-algebras."""

__version__ = "0.1.0"
