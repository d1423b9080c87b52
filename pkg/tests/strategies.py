from fractions import Fraction

from hypothesis import strategies as st

from g2spectrum.exterior import Multivector, basis_masks

rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 7))
positive_rationals = st.builds(Fraction, st.integers(1, 60), st.integers(1, 7))


def forms(grade: int, n: int = 7):
    return st.lists(rationals, min_size=len(basis_masks(grade, n)), max_size=len(basis_masks(grade, n))).map(
        lambda cs: Multivector.from_components(grade, cs, n)
    )


grades = st.integers(0, 7)
