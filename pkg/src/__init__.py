"""
quadlat - Root package
"""
