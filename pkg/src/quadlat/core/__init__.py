"""
Core Module - Exact arithmetic, lattices, invariants and Clifford orders
"""
