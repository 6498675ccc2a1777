"""
veemap - Thompson's groups V and 2V acting on flows of subshifts of finite type.

Packages:
- engine: languages, tree pairs, veelike rules, hulls, flow orbits, Bowen-Franks groups
- simulation: brute-force oracles used by the engines and the test suite
- utils: configuration, fixtures, JSON codecs and rendering
"""

__version__ = "0.1.0"
