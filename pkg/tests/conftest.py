import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from beurling import semigroup as sg
from beurling.zeta import EvalContext

NAT = {"kind": "rational-primes"}
GAUSS = {"kind": "gaussian-ideal-norms"}
SINGLE2 = {"kind": "single-prime", "params": {"q": 2}}
SYNTH = {"kind": "synthetic", "seed": 7}

GAUSS_THETA = 0.35  # remainder of the lattice-point count is O(x^(1/3+eps))


@pytest.fixture(scope="session")
def nat_table():
    return sg.enumerate_elements(sg.build_system(NAT), 10**4)


@pytest.fixture(scope="session")
def nat_ctx(nat_table):
    return EvalContext(nat_table, sg.fit_axiom_a(nat_table, 0.1, 1.0))


@pytest.fixture(scope="session")
def nat_table_1e5():
    return sg.enumerate_elements(sg.build_system(NAT), 10**5)


@pytest.fixture(scope="session")
def nat_ctx_1e5(nat_table_1e5):
    return EvalContext(nat_table_1e5, sg.fit_axiom_a(nat_table_1e5, 0.1, 1.0))


@pytest.fixture(scope="session")
def gauss_table():
    return sg.enumerate_elements(sg.build_system(GAUSS), 10**4)


@pytest.fixture(scope="session")
def gauss_ctx(gauss_table):
    fit = sg.fit_axiom_a(gauss_table, GAUSS_THETA, sg.BUILTIN_KAPPA["gaussian-ideal-norms"])
    return EvalContext(gauss_table, fit)


@pytest.fixture(scope="session")
def gauss_table_1e5():
    return sg.enumerate_elements(sg.build_system(GAUSS), 10**5)


@pytest.fixture(scope="session")
def gauss_ctx_1e5(gauss_table_1e5):
    fit = sg.fit_axiom_a(gauss_table_1e5, GAUSS_THETA, sg.BUILTIN_KAPPA["gaussian-ideal-norms"])
    return EvalContext(gauss_table_1e5, fit)


@pytest.fixture(scope="session")
def single2_table():
    return sg.enumerate_elements(sg.build_system(SINGLE2), 10**4)


@pytest.fixture(scope="session")
def single2_ctx(single2_table):
    return EvalContext(single2_table, sg.fit_axiom_a(single2_table, 0.5))


@pytest.fixture(scope="session")
def synth_table():
    return sg.enumerate_elements(sg.build_system(SYNTH), 10**4)


@pytest.fixture(scope="session")
def nat_db(nat_ctx_1e5):
    from beurling.zeros import sweep_zeros

    return sweep_zeros(nat_ctx_1e5, 0.35, 52.0)
