import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcrystal.crystal import (
    CONVENTION,
    ExtractionCertificate,
    LusztigDatum,
    datum,
    e_star_max,
    eps_star,
    equal,
    extraction_chain,
    neighbors,
    saito_T,
    saito_T_inv,
    transition,
    transition_3move,
    transport,
    weight,
)
from nilcrystal.errors import (
    DifferentWeylElement,
    InvalidMovePosition,
    LengthMismatch,
    NonReducedWord,
    PreconditionViolated,
)
from nilcrystal.rootsys import WeylWord, a_n

A2 = a_n(2)
A3 = a_n(3)
W121 = WeylWord((1, 2, 1))


def test_datum_validation():
    d = datum(A2, W121, (1, 0, 2))
    assert d.a == (1, 0, 2)
    with pytest.raises(LengthMismatch):
        datum(A2, W121, (1, 0))
    with pytest.raises(NonReducedWord):
        datum(A2, WeylWord((1, 1)), (0, 0))
    with pytest.raises(ValueError):
        datum(A2, W121, (1, -1, 0))


def test_weight_is_mu():
    d = datum(A2, W121, (1, 1, 1))
    assert weight(A2, d).coeffs == (2, 2)


def test_eps_star_and_e_star_max():
    d = datum(A2, W121, (2, 0, 1))
    assert eps_star(d) == 2
    top = e_star_max(d)
    assert top.a == (0, 0, 1)


def test_saito_reflection():
    d = datum(A2, W121, (0, 1, 2))
    t = saito_T(A2, d)
    assert t.word.letters == (2, 1)
    assert t.a == (1, 2)
    back = saito_T_inv(A2, 1, t)
    assert back.word.letters == (1, 2, 1) and back.a == (0, 1, 2)


def test_saito_requires_zero_head():
    d = datum(A2, W121, (1, 0, 0))
    with pytest.raises(PreconditionViolated):
        saito_T(A2, d)


def test_transition_3move_example():
    d = datum(A2, W121, (1, 0, 0))
    d2 = transition_3move(A2, d, 0)
    assert d2.word.letters == (2, 1, 2)
    assert d2.a == (0, 0, 1)


def test_transition_2move():
    g = A3
    d = datum(g, WeylWord((1, 3)), (2, 5))
    d2 = transition(g, d, 0, "2-move")
    assert d2.word.letters == (3, 1) and d2.a == (5, 2)


def test_transition_bad_position():
    d = datum(A2, W121, (0, 0, 0))
    with pytest.raises(InvalidMovePosition):
        transition_3move(A2, d, 5)


@settings(max_examples=60, deadline=None)
@given(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)))
def test_3move_involution_and_weight(a):
    d = datum(A2, W121, a)
    d2 = transition_3move(A2, d, 0)
    assert weight(A2, d2).coeffs == weight(A2, d).coeffs
    back = transition_3move(A2, d2, 0)
    assert back.a == d.a and back.word.letters == d.word.letters


def test_transport_and_equal():
    d = datum(A2, W121, (1, 0, 0))
    moved = transport(A2, d, WeylWord((2, 1, 2)))
    assert moved.a == (0, 0, 1)
    assert equal(A2, d, moved)
    assert not equal(A2, d, datum(A2, WeylWord((2, 1, 2)), (1, 1, 1)))


def test_transport_different_element_rejected():
    d = datum(A2, WeylWord((1, 2)), (1, 0))
    with pytest.raises(DifferentWeylElement):
        transport(A2, d, WeylWord((2, 1)))


def test_neighbors_a2():
    d = datum(A2, W121, (0, 0, 0))
    nb = neighbors(A2, d)
    assert len(nb) == 1 and nb[0].word.letters == (2, 1, 2)


def test_extraction_chain():
    d = datum(A2, W121, (1, 1, 1))
    cert = extraction_chain(A2, d)
    assert cert.exponents == (1, 1, 1)
    assert isinstance(cert, ExtractionCertificate)
    zero = extraction_chain(A2, datum(A2, W121, (0, 0, 0)))
    assert zero.exponents == (0, 0, 0)


def test_datum_serialization():
    d = datum(A2, W121, (1, 0, 2))
    d2 = LusztigDatum.from_dict(A2, d.to_dict())
    assert d2 == d
    assert "word" in d.to_dict() and "a" in d.to_dict()


def test_convention_string_mentions_order():
    assert "application-order" in CONVENTION
