import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinhiggs import _kernels_py, kernels

try:
    from spinhiggs import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

matrices = st.integers(1, 5).flatmap(
    lambda ncols: st.lists(st.lists(st.integers(-20, 20), min_size=ncols, max_size=ncols), min_size=0, max_size=5).map(lambda rows: (rows, ncols))
)


def monomials(n, odd):
    def cap(e):
        return tuple(min(k, 1) if o else k for k, o in zip(e, odd))

    return st.lists(st.integers(0, 3), min_size=n, max_size=n).map(cap)


odd_masks = st.lists(st.booleans(), min_size=1, max_size=6).map(lambda bs: tuple(int(b) for b in bs))


def test_backend_is_reported():
    assert kernels.BACKEND in ("python", "cython")


@given(matrices)
def test_bareiss_pivots_give_rank(data):
    import sympy

    rows, ncols = data
    _, pivots = _kernels_py.bareiss_echelon(rows, ncols)
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert len(pivots) == expected


@given(matrices)
def test_bareiss_does_not_mutate(data):
    rows, ncols = data
    copy = [list(r) for r in rows]
    _kernels_py.bareiss_echelon(rows, ncols)
    assert rows == copy


@needs_ext
@given(matrices)
def test_bareiss_backends_agree(data):
    rows, ncols = data
    assert _ckernels.bareiss_echelon(rows, ncols) == _kernels_py.bareiss_echelon(rows, ncols)


@needs_ext
def test_bareiss_big_integers():
    rows = [[10**30 + i * j for j in range(4)] for i in range(4)]
    assert _ckernels.bareiss_echelon(rows, 4) == _kernels_py.bareiss_echelon(rows, 4)


@needs_ext
@given(odd_masks.flatmap(lambda odd: st.tuples(st.just(odd), monomials(len(odd), odd), monomials(len(odd), odd))))
def test_koszul_backends_agree(data):
    odd, e1, e2 = data
    assert _ckernels.koszul_mul(e1, e2, odd) == _kernels_py.koszul_mul(e1, e2, odd)


def _sign_by_sorting(e1, e2, odd):
    """Reference sign: write both words out and bubble-sort the odd letters."""
    word = [j for j, k in enumerate(e1) if odd[j] and k] + [j for j, k in enumerate(e2) if odd[j] and k]
    if len(set(word)) < len(word):
        return 0
    inversions = sum(1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b])
    return -1 if inversions % 2 else 1


@given(odd_masks.flatmap(lambda odd: st.tuples(st.just(odd), monomials(len(odd), odd), monomials(len(odd), odd))))
def test_koszul_sign_matches_sorting(data):
    odd, e1, e2 = data
    sign, prod = _kernels_py.koszul_mul(e1, e2, odd)
    ref = _sign_by_sorting(e1, e2, odd)
    assert sign == ref
    if ref:
        assert prod == tuple(a + b for a, b in zip(e1, e2))
    else:
        assert prod is None


def test_koszul_exhaustive_three_odd():
    odd = (1, 1, 1)
    words = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    for e1 in words:
        for e2 in words:
            assert _kernels_py.koszul_mul(e1, e2, odd)[0] == _sign_by_sorting(e1, e2, odd)
            s12, _ = _kernels_py.koszul_mul(e1, e2, odd)
            s21, _ = _kernels_py.koszul_mul(e2, e1, odd)
            if s12:
                # graded commutativity: ab = (-1)^{|a||b|} ba
                assert s12 * s21 == (-1) ** (sum(e1) * sum(e2))
