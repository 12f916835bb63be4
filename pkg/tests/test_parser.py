import pytest

from mcgcalc import fixture_path
from mcgcalc.errors import ParseError
from mcgcalc.parser import parse_inputs, parse_scripts, parse_system, parse_word, render
from mcgcalc.system import validate_system
from mcgcalc.words import render_word

MINI = """
genus 2
curve c1 = a1
curve c2 = b1
curve c3 = a1 + a2
meet1 c1 c2
disjoint c1 c3
word w = (c1 c2)^2 c3
"""


def test_parse_minimal_system():
    s = parse_system(MINI)
    assert s.genus == 2
    assert s.class_of("c3") == (1, 0, 1, 0)
    assert s.is_meet1("c1", "c2") and s.is_disjoint("c1", "c3")
    assert len(s.words["w"]) == 5


def test_parse_fixture_counts(g2):
    assert g2.genus == 2
    assert len(g2.curve_names) == 11
    lanterns = [r for r in g2.relations.values() if r.kind == "lantern"]
    assert len(lanterns) == 3
    assert set(g2.words) == {"rho", "rhoprime"}
    assert validate_system(g2) == []


def test_fixture_words_lengths(g2, g3):
    assert len(g2.words["rho"]) == 20
    assert len(g2.words["rhoprime"]) == 16
    assert len(g3.words["xthree"]) == 36
    assert len(g3.words["tau"]) == 36
    assert len(g3.words["xthreethree"]) == 33
    assert len(g3.words["tauprime"]) == 33
    assert len(g3.words["sigma3"]) == 28


def test_negative_class_coefficients():
    s = parse_system("genus 2\ncurve z = a1 - 2 b2\n")
    assert s.class_of("z") == (1, 0, 0, -2)


def test_opaque_curve_marker():
    s = parse_system("genus 2\ncurve z = ?\n")
    assert s.class_of("z") is None
    assert any("opaque" in a for a in s.assumptions)


def test_power_zero_rejected():
    with pytest.raises(ParseError) as exc:
        parse_system("genus 2\ncurve c1 = a1\nword w = (c1)^0\n")
    assert "powers must be >= 1" in str(exc.value)
    assert exc.value.line == 3


def test_atom_power_supported():
    s = parse_system("genus 2\ncurve c1 = a1\nword w = c1^3\n")
    assert len(s.words["w"]) == 3


def test_unresolved_basis_symbol():
    with pytest.raises(ParseError) as exc:
        parse_system("genus 2\ncurve c9 = a3\n")
    assert "unresolved basis symbol" in str(exc.value)


def test_unknown_curve_in_word():
    with pytest.raises(ParseError) as exc:
        parse_system("genus 2\ncurve c1 = a1\nword w = c1 zz\n")
    assert "zz" in str(exc.value)


def test_error_carries_line_and_token():
    with pytest.raises(ParseError) as exc:
        parse_system("genus 2\ncurve c1 = a1\nbogus c1 c1\n")
    assert exc.value.line == 3
    assert exc.value.token == "bogus"


def test_genus_must_come_first():
    with pytest.raises(ParseError):
        parse_system("curve c1 = a1\ngenus 2\n")


def test_conjugator_exponents():
    s = parse_system("genus 2\ncurve c1 = a1\ncurve c2 = b1\nword w = [c1^-4]c2\n")
    (letter, sign), = s.words["w"].letters
    assert letter.conj == (("c1", -1),) * 4
    assert sign == 1


def test_word_roundtrip_through_render(g2):
    for name, word in g2.words.items():
        again = parse_word(g2, render(word))
        assert again == word


def test_roundtrip_genus3(g3):
    for name, word in g3.words.items():
        assert parse_word(g3, render_word(word)) == word


def test_parse_scripts_fixture(g2):
    scripts = parse_scripts(fixture_path("ex53.script").read_text(), g2)
    assert set(scripts) == {"ex53"}
    script = scripts["ex53"]
    assert script.source == "rho"
    assert script.expect == "rhoprime"
    assert len(script.steps) == 37


def test_parse_scripts_errors(g2):
    with pytest.raises(ParseError):
        parse_scripts("script s on nosuch:\n  rot 1\n", g2)
    with pytest.raises(ParseError):
        parse_scripts("script s on rho:\n  elem 0 R\n", g2)
    with pytest.raises(ParseError):
        parse_scripts("script s on rho:\n  subst NOPE @ 1 fwd\n", g2)
    with pytest.raises(ParseError):
        parse_scripts("  elem 1 R\n", g2)


def test_parse_inputs_bundle():
    system, words, scripts = parse_inputs(
        [fixture_path("genus2_chain.mcg"), fixture_path("ex53.script")]
    )
    assert set(words) == {"rho", "rhoprime"}
    assert set(scripts) == {"ex53"}


def test_parse_inputs_rejects_invalid_system(tmp_path):
    bad = tmp_path / "bad.mcg"
    bad.write_text("genus 2\ncurve c1 = a1\ncurve c2 = b1\ndisjoint c1 c2\n")
    with pytest.raises(ParseError) as exc:
        parse_inputs([bad])
    assert "pairing" in str(exc.value)


def test_comments_and_blank_lines():
    s = parse_system("# header\n\ngenus 2\ncurve c1 = a1  # trailing\n")
    assert s.class_of("c1") == (1, 0, 0, 0)
