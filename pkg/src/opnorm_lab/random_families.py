"""Seeded random symbol families for self-tests and property suites.

Everything produced here is boundary-continuous by construction (no
division nodes) and polynomial in t, so the induced operator families are
integrable without further checks.
"""

from __future__ import annotations

import numpy as np

from .symbols import (
    Add,
    Blaschke,
    Const,
    Exp,
    IntPow,
    Mul,
    ParamT,
    SymbolFamily,
    VarZ,
    format_expr,
)

__all__ = ["random_blaschke", "random_family", "random_frozen_symbol"]


def _power(base, k: int):
    if k == 0:
        return Const(1.0)
    if k == 1:
        return base
    return IntPow(base, k)


def _monomial(coeff: complex, j: int, k: int):
    node = Const(coeff)
    if j > 0:
        node = Mul(node, _power(ParamT(), j))
    if k > 0:
        node = Mul(node, _power(VarZ(), k))
    return node


def random_blaschke(
    rng: np.random.Generator, max_zeros: int = 3, max_zero_radius: float = 0.75
) -> Blaschke:
    n = int(rng.integers(1, max_zeros + 1))
    zeros = []
    for _ in range(n):
        radius = float(rng.uniform(0.15, max_zero_radius))
        phase = float(rng.uniform(0.0, 2.0 * np.pi))
        zeros.append(radius * np.exp(1j * phase))
    order = int(rng.integers(0, 3))
    return Blaschke(tuple(complex(a) for a in zeros), order)


def random_family(
    rng: np.random.Generator,
    max_z_degree: int = 4,
    max_t_degree: int = 2,
    allow_blaschke: bool = True,
    allow_exp: bool = True,
    blaschke_radius: float = 0.75,
) -> SymbolFamily:
    """A random polynomial family in (t, z), optionally dressed with a
    Blaschke factor and a bounded exponential factor."""
    n_terms = int(rng.integers(2, 6))
    body = None
    for _ in range(n_terms):
        j = int(rng.integers(0, max_t_degree + 1))
        k = int(rng.integers(0, max_z_degree + 1))
        coeff = 0.5 * complex(rng.normal(), rng.normal())
        term = _monomial(coeff, j, k)
        body = term if body is None else Add(body, term)
    if allow_blaschke and rng.random() < 0.5:
        body = Mul(body, random_blaschke(rng, max_zero_radius=blaschke_radius))
    if allow_exp and rng.random() < 0.35:
        arg = Add(
            Const(0.4 * complex(rng.normal(), rng.normal())),
            Mul(Const(0.4 * complex(rng.normal(), rng.normal())), VarZ()),
        )
        body = Mul(body, Exp(arg))
    return SymbolFamily(body=body, text=format_expr(body))


def random_frozen_symbol(rng: np.random.Generator, **kwargs):
    """A random family frozen at a random interior parameter value."""
    fam = random_family(rng, **kwargs)
    t = float(rng.uniform(0.1, 0.9))
    return fam, t
