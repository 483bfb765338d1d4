from fractions import Fraction as F

import pytest

from tropnev import BOTTOM, ParseError, PLFunction, emit, parse, parse_grid
from tropnev.generators import ExampleSpec, gen_example

DOC = """# sample document
entire g0 { monomials=(0,0)(-1,-2) }
entire g1 { monomials=(0,0)(1,-1)(2,-3) }
pl f { left_slope=-1 points=(-2,0)(1,1)(3,3) right_slope=2 window=-10,10 }
mat A { rows=[1,-inf;-inf,1] }
curve c { n=1 components=g0,g1 }
poly P { nvars=2 degree=1 terms=([1,0],0)([0,1],1/2) }
instance I { curve=c polys=P,P c=1 grid=1:50:1 tol=1/20 }
settings { grid=1:10:1 }
"""


def test_minimal_entire_block():
    doc = parse("entire g { monomials=(0,0)(1,-1) }")
    assert doc.function("g") == PLFunction.from_monomials([(0, 0), (1, -1)])
    assert len(doc.function("g").pieces()) == 2


def test_full_document():
    doc = parse(DOC)
    assert doc.function("f")(F(1)) == 1
    assert doc.function("f").window == (F(-10), F(10))
    assert doc.matrix("A")[0, 1] is BOTTOM
    assert doc.curve("c").n == 1
    assert doc.poly("P").terms[(0, 1)] == F(1, 2)
    assert doc.instance("I")["grid"] == "1:50:1"
    assert doc.settings["grid"] == "1:10:1"


def test_round_trip():
    doc = parse(DOC)
    again = parse(emit(doc))
    assert again == doc
    assert emit(again) == emit(doc)


def test_round_trip_generated():
    for fam, kw in [("e_alpha", {"alpha": F(3), "window": (-4, 4)}), ("random_curve", {"seed": 3, "n": 2, "d": 2}), ("rational", {"seed": 9})]:
        text = gen_example(ExampleSpec(fam, **kw))
        assert emit(parse(text)) == text


def test_dangling_reference_has_location():
    with pytest.raises(ParseError) as err:
        parse("entire g { monomials=(0,0) }\ncurve c { n=1 components=g,h }")
    assert err.value.line == 2
    assert "h" in str(err.value)


@pytest.mark.parametrize(
    "text, line",
    [
        ("entire g { monomials=(0,0)(1,x) }", 1),
        ("\npl f { points=(0,0) right_slope=1 }", 2),
        ("poly P { nvars=2 degree=2 terms=([1,0],0) }", 1),
        ("entire g { monomials=(0,0) }\nentire g { monomials=(0,1) }", 2),
        ("blob g { }", 1),
        ("entire g { monomials=(0,0)", 1),
        ("curve c { n=2 components=g,g }", 1),
        ("mat A { rows=[1,2;3] }", 1),
    ],
)
def test_errors_carry_line(text, line):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.line == line and err.value.column >= 1


def test_curve_rejects_nonconvex_component():
    with pytest.raises(ParseError):
        parse("pl f { left_slope=1 points=(0,0) right_slope=-1 }\nentire g { monomials=(0,0) }\ncurve c { n=1 components=g,f }")


def test_grid():
    assert parse_grid("1:3:1/2") == [F(1), F(3, 2), F(2), F(5, 2), F(3)]
    assert parse_grid("1:10:4") == [F(1), F(5), F(9)]
    for bad in ("1:2", "1:0:1", "1:5:0", "a:b:c"):
        with pytest.raises(ParseError):
            parse_grid(bad)
