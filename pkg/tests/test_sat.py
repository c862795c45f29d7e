from itertools import product

import pytest
from hypothesis import given, strategies as st

from foldlogic.sat import BudgetExceeded, SatSolver


@st.composite
def cnfs(draw):
    n = draw(st.integers(1, 7))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(lit, min_size=1, max_size=3), max_size=14))
    return n, clauses


def brute_models(n, clauses):
    out = []
    for bits in product((False, True), repeat=n):
        val = (None,) + bits
        if all(any(val[abs(l)] == (l > 0) for l in c) for c in clauses):
            out.append(list(bits))
    return out


@given(cnfs())
def test_models_match_brute_force(cnf):
    n, clauses = cnf
    got = [m[1:] for m in SatSolver(n, clauses).iter_models()]
    assert sorted(got) == sorted(brute_models(n, clauses))
    assert len({tuple(m) for m in got}) == len(got)


@given(cnfs())
def test_solve_agrees_with_satisfiability(cnf):
    n, clauses = cnf
    model = SatSolver(n, clauses).solve()
    assert (model is None) == (not brute_models(n, clauses))
    if model is not None:
        assert all(any(model[abs(l)] == (l > 0) for l in c) for c in clauses)


def test_empty_clause_is_unsat():
    assert SatSolver(2, [[1, 2], []]).solve() is None


def test_budget_is_enforced():
    # pigeonhole 4 -> 3 has no model and needs real search
    holes, pigeons = 3, 4
    var = lambda p, h: p * holes + h + 1
    clauses = [[var(p, h) for h in range(holes)] for p in range(pigeons)]
    for h in range(holes):
        for p in range(pigeons):
            for q in range(p + 1, pigeons):
                clauses.append([-var(p, h), -var(q, h)])
    assert SatSolver(pigeons * holes, clauses).solve() is None
    with pytest.raises(BudgetExceeded):
        SatSolver(pigeons * holes, clauses).solve(budget=3)
