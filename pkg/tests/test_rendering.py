"""Tests for SVG orbit strips."""

from __future__ import annotations

from fractions import Fraction

from veemap.engine.flow_engine import FlowOrbit
from veemap.utils.rendering import orbit_svg


def test_no_orbits():
    assert orbit_svg([]) == '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0"/>\n'


def test_strips_share_one_scale():
    before = FlowOrbit.from_symbols(("#", "0", "1"))
    after = FlowOrbit.from_symbols(("#", "1"), [1, Fraction(1, 2)])
    svg = orbit_svg([before, after], ["before", "after"])
    assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg" width="640"')
    assert svg.count("<rect") == 5
    assert svg.count('stroke="red"') == 2
    assert ">before</text>" in svg and ">after</text>" in svg
    # the widest orbit spans the full strip
    assert 'width="213.333"' in svg


def test_default_labels_and_escaping():
    svg = orbit_svg([FlowOrbit.from_symbols(("<",))])
    assert ">orbit 0</text>" in svg
    assert "&lt;" in svg
