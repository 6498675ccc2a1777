"""
Utility module - configuration, fixtures, JSON codecs and SVG rendering.
"""
