"""Root numbers of Hecke characters of the CM curves y^2 = x^3 - dx over Q(i)."""

__version__ = "0.1.0"
