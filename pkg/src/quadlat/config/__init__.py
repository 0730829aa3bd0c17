"""
Configuration Module - Environment driven settings
"""
