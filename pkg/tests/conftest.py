from hypothesis import settings, strategies as st

from cubesum.poly import Polynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

VARS = ("x", "y", "z")


@st.composite
def polynomials(draw, max_vars=3, max_degree=4, max_coeff=100, max_terms=6):
    names = draw(st.lists(st.sampled_from(VARS[:max_vars]), min_size=0, max_size=max_vars, unique=True))
    n = len(names)
    mono = st.tuples(*[st.integers(0, max_degree)] * n).filter(lambda e: sum(e) <= max_degree)
    terms = draw(st.dictionaries(mono, st.integers(-max_coeff, max_coeff), max_size=max_terms))
    return Polynomial(tuple(names), terms)


points = st.fixed_dictionaries({v: st.integers(-10, 10) for v in VARS})
