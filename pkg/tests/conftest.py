import sympy
from hypothesis import HealthCheck, settings

from qwbench.coeff import render

settings.register_profile("qwbench", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qwbench")

V = sympy.Symbol("v")


def to_sympy(x):
    """Independent reading of a coefficient through its canonical text."""
    return sympy.sympify(render(x).replace("^", "**"), locals={"v": V})
