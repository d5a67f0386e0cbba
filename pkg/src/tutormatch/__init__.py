"""Diversity-aware peer-tutoring matchmaking.

Recommendation with hard competence/proximity constraints and a gender
diversification override, a transaction-driven task lifecycle over an
append-only event log, an HTTP/JSON API, and a seeded simulation harness.
"""

__version__ = "0.1.0"
