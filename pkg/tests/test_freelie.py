from fractions import Fraction

import pytest

from rational_fourfolds.errors import BudgetExceededError, DomainError
from rational_fourfolds.freelie import (
    Generator,
    LieElement,
    LieModel,
    boundary_rank,
    bracket,
    d_squared_on_basis,
    differential,
    check_budget,
    exact_rank,
    homology_dim,
    is_lie_element,
    lie_basis,
)


def gen(i: int, degree: int) -> LieElement:
    return LieElement.word((i,), degree)


@pytest.fixture
def cp2_model() -> LieModel:
    """L(v, w), |v| = 1, |w| = 3, dw = [v, v]."""
    v = gen(0, 1)
    return LieModel((Generator(0, 1, "v"), Generator(1, 3, "w")), {1: bracket(v, v)})


@pytest.fixture
def sphere4_model() -> LieModel:
    return LieModel((Generator(0, 3, "w"),))


def test_bracket_of_odd_generator_with_itself():
    x = gen(0, 1)
    assert bracket(x, x).terms == {(0, 0): 2}


def test_bracket_sign_follows_degrees():
    x, y = gen(0, 1), gen(1, 1)
    assert bracket(x, y).terms == {(0, 1): 1, (1, 0): 1}
    a, b = gen(0, 2), gen(1, 2)
    assert bracket(a, b).terms == {(0, 1): 1, (1, 0): -1}
    assert bracket(a, a).is_zero()


def test_graded_antisymmetry():
    elements = [gen(0, 1), gen(1, 2), bracket(gen(0, 1), gen(2, 3)), gen(3, 4)]
    for x in elements:
        for y in elements:
            sign = -1 if (x.degree * y.degree) % 2 else 1
            assert bracket(x, y) == -sign * bracket(y, x)


def test_graded_jacobi():
    elements = [gen(0, 1), gen(1, 1), gen(2, 2), bracket(gen(0, 1), gen(1, 1)), gen(3, 3)]
    for x in elements:
        for y in elements:
            for z in elements:
                sign = -1 if (x.degree * y.degree) % 2 else 1
                lhs = bracket(x, bracket(y, z))
                rhs = bracket(bracket(x, y), z) + sign * bracket(y, bracket(x, z))
                assert lhs == rhs


def test_adding_elements_of_different_degrees_fails():
    with pytest.raises(DomainError):
        gen(0, 1) + gen(1, 2)
    assert (gen(0, 1) + LieElement.zero(5)) == gen(0, 1)


def test_differential_on_words(cp2_model):
    w = cp2_model.generator("w")
    assert differential(cp2_model, w).terms == {(0, 0): 2}
    ww = bracket(w, w)
    assert ww.terms == {(1, 1): 2}
    # d(ww) = dw.w - w.dw
    assert differential(cp2_model, ww).terms == {(0, 0, 1): 4, (1, 0, 0): -4}
    assert differential(cp2_model, differential(cp2_model, ww)).is_zero()


def test_differential_rejects_unknown_letters(cp2_model):
    with pytest.raises(DomainError):
        differential(cp2_model, LieElement.word((5,), 1))


def test_d_squared_vanishes_on_generators(cp2_model):
    assert cp2_model.d_squared_vanishes()
    for n in range(2, 7):
        assert d_squared_on_basis(cp2_model, n)


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 3), (3, 2), (4, 3), (5, 6), (6, 11)])
def test_lie_basis_sizes_two_odd_generators(n, expected):
    model = LieModel((Generator(0, 1), Generator(1, 1)))
    assert len(lie_basis(model, n)) == expected


def test_lie_basis_elements_are_independent():
    model = LieModel((Generator(0, 1), Generator(1, 1), Generator(2, 1)))
    basis = lie_basis(model, 4)
    assert exact_rank([b.terms for b in basis]) == len(basis)
    assert all(b.degree == 4 for b in basis)


def test_lie_basis_is_cached():
    model = LieModel((Generator(0, 1), Generator(1, 1)))
    assert lie_basis(model, 4) is lie_basis(model, 4)


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 0), (3, 1), (4, 0), (6, 1), (9, 0)])
def test_homology_of_free_model_on_one_odd_generator(sphere4_model, n, expected):
    assert homology_dim(sphere4_model, n) == expected


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 0), (3, 0), (4, 1), (5, 0), (6, 0)])
def test_homology_of_cp2_model(cp2_model, n, expected):
    assert homology_dim(cp2_model, n) == expected


def test_boundary_rank(cp2_model):
    assert boundary_rank(cp2_model, 1) == 0
    assert boundary_rank(cp2_model, 3) == 1


def test_exact_rank():
    assert exact_rank([]) == 0
    assert exact_rank([{(0,): Fraction(1)}, {(0,): Fraction(2)}]) == 1
    assert exact_rank([{(0, 1): 1, (1, 0): 1}, {(0, 1): 1, (1, 0): -1}, {(0, 1): 3}]) == 2


def test_word_budget_refusal():
    model = LieModel((Generator(0, 1), Generator(1, 1)))
    with pytest.raises(BudgetExceededError) as info:
        lie_basis(model, 6, max_words=10)
    assert info.value.degree == 6
    assert info.value.size == 64
    assert info.value.limit == 10


def test_word_count(cp2_model):
    # words in v (degree 1) and w (degree 3): 1, 1, 1, 2, 3
    assert [cp2_model.word_count(n) for n in range(5)] == [1, 1, 1, 2, 3]


def test_model_validation():
    with pytest.raises(DomainError):
        Generator(0, 0)
    with pytest.raises(DomainError):
        LieModel((Generator(1, 1),))
    with pytest.raises(DomainError):
        LieModel((Generator(0, 1), Generator(1, 3)), {1: gen(0, 1)})
    with pytest.raises(DomainError):
        LieModel((Generator(0, 1),), {3: gen(0, 1)})
    with pytest.raises(DomainError):
        LieModel((Generator(0, 1), Generator(1, 3)), {1: LieElement.word((0, 7), 2)})


def test_generator_lookup(cp2_model):
    assert cp2_model.generator("v") == gen(0, 1)
    assert Generator(4, 2).name == "g4"
    with pytest.raises(DomainError):
        cp2_model.generator("u")


def test_lie_basis_rejects_degree_zero(cp2_model):
    with pytest.raises(DomainError):
        lie_basis(cp2_model, 0)
    with pytest.raises(DomainError):
        homology_dim(cp2_model, 0)


def test_lie_basis_is_triangular_against_leading_words():
    model = LieModel((Generator(0, 1), Generator(1, 2), Generator(2, 3)))
    for n in range(1, 8):
        leads = [min(b.terms) for b in lie_basis(model, n)]
        assert leads == sorted(set(leads))


def test_square_of_odd_element_is_a_basis_element():
    model = LieModel((Generator(0, 1), Generator(1, 1)))
    x, y = gen(0, 1), gen(1, 1)
    xy = bracket(x, y)
    # |xy| is even
    assert bracket(xy, xy).is_zero()
    basis = lie_basis(model, 2)
    assert bracket(x, x) in basis
    assert xy in basis


def test_is_lie_element():
    model = LieModel((Generator(0, 1), Generator(1, 1), Generator(2, 2)))
    x, y, z = gen(0, 1), gen(1, 1), gen(2, 2)
    assert is_lie_element(model, bracket(x, bracket(y, z)) - 3 * bracket(z, bracket(x, y)))
    assert is_lie_element(model, LieElement.zero(3))
    assert not is_lie_element(model, LieElement.word((0, 1), 2))
    assert not is_lie_element(model, bracket(x, y) + LieElement.word((0, 1), 2))
    assert is_lie_element(model, LieElement.word((1, 1), 2))


def test_model_rejects_non_lie_differential():
    generators = (Generator(0, 1), Generator(1, 1), Generator(2, 3))
    with pytest.raises(DomainError):
        LieModel(generators, {2: LieElement.word((0, 1), 2)})
    model = LieModel(generators, {2: bracket(gen(0, 1), gen(1, 1))})
    assert model.d_squared_vanishes()


def test_basis_size_budget_refusal():
    model = LieModel((Generator(0, 1), Generator(1, 1)))
    with pytest.raises(BudgetExceededError) as info:
        lie_basis(model, 6, max_basis=5)
    assert (info.value.degree, info.value.size, info.value.limit) == (6, 11, 5)
    check_budget(model, 6, max_basis=11)


def test_exact_rank_over_disjoint_blocks():
    vectors = [
        {(0, 1): 1, (1, 0): 1},
        {(2, 2): 1},
        {(0, 1): 2, (1, 0): 2},
        {(2, 2): 5, (3, 3): 1},
        {},
    ]
    assert exact_rank(vectors) == 3
