import sys
import time
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from k0genus2.laurent import LaurentPolynomial, VariableAlphabet  # noqa: E402

AB = VariableAlphabet(["a", "b"], ["a", "b"])
ABT = VariableAlphabet(["a", "b", "t"], ["a", "b", "t"])

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def laurent_polys(alphabet, max_terms=4, max_exp=3, max_coeff=9):
    lows = [-max_exp if alphabet.is_invertible(v) else 0 for v in alphabet.names]
    exps = st.tuples(*[st.integers(lo, max_exp) for lo in lows])
    coeffs = st.integers(-max_coeff, max_coeff)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(
        lambda d: LaurentPolynomial(alphabet, {e: c for e, c in d.items() if c}))


class _RingCache:
    """Each ring is built once per session; ``seconds`` holds wall times including dependencies."""

    def __init__(self):
        self.rings = {}
        self.seconds = {}

    def get(self, name):
        from k0genus2 import moduli

        if name in self.rings:
            return self.rings[name]
        start = time.perf_counter()
        if name == "Mbar2":
            d1, co = self.get("Delta1"), self.get("Complement")
            ring = moduli.build_k0_mbar2(delta1=d1, complement=co)
            self.seconds[name] = time.perf_counter() - start + self.seconds["Delta1"] + self.seconds["Complement"]
        else:
            builder = {"M2": moduli.build_k0_m2, "BG": moduli.build_k0_bg, "Delta1": moduli.build_k0_delta1,
                       "Complement": moduli.build_k0_complement}[name]
            ring = builder()
            self.seconds[name] = time.perf_counter() - start
        self.rings[name] = ring
        return ring


@pytest.fixture(scope="session")
def rings():
    return _RingCache()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")
