"""Bundled example algebras, brackets and seed representations.

The JSON files under ``precy/data`` are the shipped ground truth. The
``extra_algebras`` below are used by the randomized batteries only.
"""

from importlib import resources

from precy.algebra import AssocAlgebra

BUNDLED = ("field", "dual-numbers", "k-times-k", "upper-triangular-2")


def data_path(filename):
    return resources.files("precy").joinpath("data", filename)


def algebra_file(name):
    return data_path(f"{name}.algebra.json")


def bracket_files(name):
    """Bracket fixtures of one bundled algebra, zero bracket first."""
    out = [data_path(f"{name}.zero.bracket.json")]
    extra = data_path(f"{name}.bracket.json")
    if extra.is_file():
        out.append(extra)
    return out


def seeds_file(name):
    return data_path(f"{name}.seeds.json")


def load_bundled(name):
    """``(algebra, [brackets], seeds)`` for a bundled fixture."""
    from precy import io

    if name not in BUNDLED:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(BUNDLED)}")
    with resources.as_file(algebra_file(name)) as path:
        alg = io.load_algebra(path)
    brackets = []
    for f in bracket_files(name):
        with resources.as_file(f) as path:
            brackets.append(io.load_bracket(path, alg))
    with resources.as_file(seeds_file(name)) as path:
        seeds = io.load_seeds(path, alg)
    return alg, brackets, seeds


# --- algebras built in code -------------------------------------------------

def field():
    return AssocAlgebra(1, {(0, 0, 0): 1}, ["1"], unit=[1], name="field")


def dual_numbers():
    return AssocAlgebra(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}, ["1", "x"], unit=[1, 0], name="dual-numbers")


def dual_numbers_bracket_entries():
    """``{{x, x}} = x (x) 1 - 1 (x) x``."""
    return {(1, 1, 1, 0): 1, (1, 1, 0, 1): -1}


def k_times_k():
    return AssocAlgebra(2, {(0, 0, 0): 1, (1, 1, 1): 1}, ["p", "q"], unit=[1, 1], name="k-times-k")


def upper_triangular_2():
    return AssocAlgebra(
        3,
        {(0, 0, 0): 1, (0, 1, 1): 1, (1, 2, 1): 1, (2, 2, 2): 1},
        ["E11", "E12", "E22"],
        unit=[1, 0, 1],
        name="upper-triangular-2",
    )


def truncated_polynomials(degree):
    """``K[x]/(x^degree)`` with basis ``1, x, ..., x^(degree-1)``."""
    consts = {(i, j, i + j): 1 for i in range(degree) for j in range(degree) if i + j < degree}
    names = ["1"] + [f"x{i}" if i > 1 else "x" for i in range(1, degree)]
    return AssocAlgebra(degree, consts, names, unit=[1] + [0] * (degree - 1), name=f"k[x]/x^{degree}")


def square_zero_plane():
    """``K[x, y]/(x, y)^2``."""
    consts = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (0, 2, 2): 1, (2, 0, 2): 1}
    return AssocAlgebra(3, consts, ["1", "x", "y"], unit=[1, 0, 0], name="k[x,y]/(x,y)^2")


def zero_product(dim):
    return AssocAlgebra(dim, {}, [f"z{i}" for i in range(dim)], name=f"zero-product-{dim}")


def k_cubed():
    return AssocAlgebra(3, {(i, i, i): 1 for i in range(3)}, ["p", "q", "r"], unit=[1, 1, 1], name="k^3")


def extra_algebras():
    """Algebras of dimension 2 and 3 for the randomized batteries."""
    return [
        dual_numbers(),
        k_times_k(),
        zero_product(2),
        truncated_polynomials(3),
        square_zero_plane(),
        upper_triangular_2(),
        k_cubed(),
        zero_product(3),
    ]
