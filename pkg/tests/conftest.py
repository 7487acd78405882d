from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_fractions = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
