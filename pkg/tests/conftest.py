import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rationals(lo=-8, hi=8, max_den=6):
    return st.builds(lambda n, d: Fraction(n, d), st.integers(lo * max_den, hi * max_den),
                     st.integers(1, max_den))


def rat_vectors(n, **kw):
    return st.tuples(*[rationals(**kw) for _ in range(n)])
