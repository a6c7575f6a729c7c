"""CSS codes from pairs of classical codes."""

import numpy as np
import pytest

from qvhss.codes.classical import from_generator, parity, repetition
from qvhss.codes.css import CssCode, css_from_codes, load_css, read_css, resolve_code
from qvhss.data import load
from qvhss.exceptions import CSSConstructionError, SchemeParameterError

STEANE_FIXTURE = """\
# generator of V
4 7
1110000
1001100
0101010
1101001
# generator of W
4 7
1110000
1001100
0101010
1101001
"""


def test_steane_parameters(steane):
    assert (steane.n, steane.d, steane.t) == (7, 3, 1)
    assert len(steane.x_stabilizers) == len(steane.z_stabilizers) == 3
    assert not steane.logical_x.commutes(steane.logical_z)
    for g in steane.stabilizer_generators:
        assert g.commutes(steane.logical_x)
        assert g.commutes(steane.logical_z)
        assert all(g.commutes(h) for h in steane.stabilizer_generators)


def test_steane_logicals(steane):
    u = steane.logical_x_support
    assert steane.v.contains(u)
    assert not steane.w_perp.contains(u)
    assert steane.logical_value_v(u) == 1
    assert steane.logical_value_v(np.zeros(7, dtype=np.uint8)) == 0


def test_state_supports(steane):
    assert steane.zero_state_support().shape == (8, 7)
    assert steane.plus_state_support().shape == (16, 7)
    assert all(steane.v.contains(w) for w in steane.zero_state_support())


@pytest.mark.parametrize(
    "v, w, match",
    [
        (repetition(3), parity(3), "encodes 0 logical"),
        (repetition(3), repetition(3), "not contained"),
        (repetition(3), repetition(4), "lengths differ"),
    ],
)
def test_construction_errors(v, w, match):
    with pytest.raises(CSSConstructionError, match=match):
        css_from_codes(v, w)


def test_encoder_circuit(steane):
    gates = steane.encoder_circuit("zero")
    assert {g.name for g in gates} <= {"h", "cnot"}
    assert steane.encoder_circuit("plus")[0].name == "h"
    with pytest.raises(ValueError, match="encoder mode"):
        steane.encoder_circuit("minus")


def test_read_css():
    css = read_css(STEANE_FIXTURE + "d 3\n", name="fixture")
    assert (css.name, css.n, css.d) == ("fixture", 7, 3)
    assert read_css(STEANE_FIXTURE).d == 3
    with pytest.raises(CSSConstructionError, match="two generator matrices"):
        read_css(STEANE_FIXTURE.split("# generator of W")[0])


def test_resolve_code(tmp_path, steane):
    path = tmp_path / "mysteane.txt"
    path.write_text(STEANE_FIXTURE)
    assert load_css(path).name == "mysteane"
    assert resolve_code(path).d == 3
    assert resolve_code("steane7").n == 7
    assert resolve_code(steane) is steane


def test_rep3_bit_flip_code():
    css = CssCode(repetition(3), from_generator(np.eye(3, dtype=np.uint8)))
    assert css.d == 1
    assert list(css.logical_x_support) == [1, 1, 1]


def test_resolve_packaged_and_unknown_codes():
    assert "steane7" in load.code_names()
    assert resolve_code(load("codes", "steane7.txt")).d == 3
    with pytest.raises(SchemeParameterError, match="Unknown code <golay23>"):
        resolve_code("golay23")
