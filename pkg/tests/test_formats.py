import numpy as np
import pytest

from mfib import fibration as fb, formats, mcg


def test_word_with_header_and_inverse():
    w = formats.parse_word("fiber N genus=3\nu 1\nt 110 + -1\n")
    assert w.genus == 3 and len(w) == 2
    assert w.entries[1][1] == -1


def test_word_genus_inferred():
    assert formats.parse_word("u 1\nu 1\n").genus == 2
    assert formats.parse_word("u 1\nu 3\n").genus == 4


@pytest.mark.parametrize("text", ["q 7\n", "u x\n", "t 11 *\n", "", "u 1\nfiber N genus=3\n",
                                  "fiber N genus=2\nt 111 +\n", "t 100 +\n"])
def test_word_errors(text):
    with pytest.raises(formats.FormatError):
        formats.parse_word(text)


def test_factorization_with_conjugates(data_dir):
    text = "fiber N genus=3\nbase D2\nu 1\nconj: t 110 + , u 2 ; u 1\n"
    f = formats.parse_factorization(text)
    assert f.base == fb.D2 and len(f.entries) == 2
    w = mcg.t(mcg.Z2Class.from_bits("110")) * mcg.u(3, 2)
    assert np.array_equal(mcg.rep_word(f.entries[1]), mcg.rep_word(mcg.u(3, 1).conjugate_by(w)))


def test_sections(data_dir):
    f = formats.load_factorization(data_dir / "x0.fact")
    assert f.base.section_magnitudes == (1,)
    assert f.genus == 2 and len(f.entries) == 2


@pytest.mark.parametrize("text", ["base S2\nu 1\n", "fiber N genus=2\nu 1\n",
                                  "fiber N genus=2\nbase T2\n", "fiber N genus=2\nbase S2\nconj: u 1\n",
                                  "fiber N genus=2\nbase S2 sections=x\n"])
def test_factorization_errors(text):
    with pytest.raises(formats.FormatError):
        formats.parse_factorization(text)
