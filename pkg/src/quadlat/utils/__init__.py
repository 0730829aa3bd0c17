"""
Utilities Module - Logging, run context and error handling
"""
