"""
quadlat - exact lattices, Clifford orders and quaternary complements over Q
"""
__version__ = '0.1.0'
