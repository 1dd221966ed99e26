import numpy as np
import pytest

from fracalc import DomainKind, Grid
from fracalc.dsl import FunctionSpec, TermKind, parse_domain
from fracalc.errors import ConfigError
from fracalc.oracle import OracleKind


def test_parse_sum_with_scales():
    spec = FunctionSpec.parse("2*bump:0.5,0.2 + -1*constant:1")
    assert [t.kind for t in spec.terms] == [TermKind.Bump, TermKind.Constant]
    assert spec.terms[1].scale == -1.0


def test_exponent_plus_is_not_a_separator():
    spec = FunctionSpec.parse("1e+0*power:0.5")
    assert len(spec.terms) == 1 and spec.terms[0].scale == 1.0


def test_round_trip_text():
    spec = FunctionSpec.parse("2.0*power:0.5+constant:1.0")
    assert FunctionSpec.parse(str(spec)) == spec


def test_evaluate_excludes_singular_nodes():
    f = FunctionSpec.parse("kernel:0.5").evaluate(Grid(0.0, 1.0, 8))
    assert 0 in f.excluded


def test_step_takes_mean_at_jump():
    f = FunctionSpec.parse("step:0,2").evaluate(Grid(-1.0, 1.0, 4))
    assert np.array_equal(f.values, [0.0, 0.0, 1.0, 2.0, 2.0])


@pytest.mark.parametrize("text", [
    "", "cosine:1", "power", "power:a", "power:-2", "bump:0", "bump:0,-1",
    "kernel:1.5", "gaussian:0", "power:nan",
])
def test_bad_specs(text):
    with pytest.raises(ConfigError):
        FunctionSpec.parse(text)


def test_oracle_for_single_terms():
    grid = Grid(0.0, 1.0, 8)
    assert FunctionSpec.parse("power:0.5").oracle(grid).kind is OracleKind.PowerLaw
    assert FunctionSpec.parse("constant:2").oracle(grid).kind is OracleKind.Constant
    assert FunctionSpec.parse("kernel:0.3").oracle(grid).kind is OracleKind.KernelFunction
    assert FunctionSpec.parse("power:0.5+constant:1").oracle(grid) is None


def test_parse_domain():
    assert parse_domain("0,1,16") == Grid(0.0, 1.0, 16)
    assert parse_domain("-8,8,64,line").kind is DomainKind.TruncatedLine
    for bad in ("0,1", "1,0,16", "0,1,x", "0,1,16,disc", "0,1,1"):
        with pytest.raises(ConfigError):
            parse_domain(bad)
