"""
Services Module - Instance assembly, identity checks and corpus runs
"""
