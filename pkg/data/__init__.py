"""
Shipped example inputs and builders.
"""
