"""Carlitz modules, cyclotomic function fields and cogalois groups over F_q(T)."""

__all__ = [
    "carlitz",
    "cli",
    "cogalois",
    "config",
    "cycfield",
    "errors",
    "gf",
    "groups",
    "kummer",
    "polyring",
    "worked_examples",
]
