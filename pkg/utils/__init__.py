"""
Utility functions and helpers for grograde.
"""
