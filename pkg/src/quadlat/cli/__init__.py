"""
CLI Module - Command-line front door
"""
