"""A small deterministic DPLL solver with two watched literals.

Variables are 1..n, literals are signed ints.  No clause learning: the
instances built by the layer solver are small and highly propagating, and
chronological backtracking keeps enumeration order reproducible.
"""
from __future__ import annotations

from typing import Iterator, Sequence


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, budget: int) -> None:
        super().__init__(f"search budget of {budget} nodes exceeded")
        self.nodes = nodes
        self.budget = budget


class SatSolver:
    def __init__(self, n_vars: int, clauses: Sequence[Sequence[int]]) -> None:
        self.n = n_vars
        self.val = [0] * (n_vars + 1)
        self.trail: list[int] = []
        self.qhead = 0
        self.decisions: list[tuple[int, bool, int]] = []  # (literal, flipped, trail index)
        self.watches: dict[int, list[list[int]]] = {}
        self.units: list[int] = []
        self.empty = False
        self.nodes = 0
        for c in clauses:
            c = list(dict.fromkeys(c))
            if any(-l in c for l in c):
                continue  # tautology
            if not c:
                self.empty = True
            elif len(c) == 1:
                self.units.append(c[0])
            else:
                self.watches.setdefault(c[0], []).append(c)
                self.watches.setdefault(c[1], []).append(c)

    def _value(self, lit: int) -> int:
        v = self.val[abs(lit)]
        return v if lit > 0 else -v

    def _assign(self, lit: int) -> bool:
        cur = self._value(lit)
        if cur == 1:
            return True
        if cur == -1:
            return False
        self.val[abs(lit)] = 1 if lit > 0 else -1
        self.trail.append(lit)
        return True

    def _propagate(self) -> bool:
        while self.qhead < len(self.trail):
            false_lit = -self.trail[self.qhead]
            self.qhead += 1
            ws = self.watches.get(false_lit)
            if not ws:
                continue
            keep: list[list[int]] = []
            i = 0
            conflict = False
            while i < len(ws):
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if self._value(c[0]) == 1:
                    keep.append(c)
                    continue
                for k in range(2, len(c)):
                    if self._value(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        self.watches.setdefault(c[1], []).append(c)
                        break
                else:
                    keep.append(c)
                    if not self._assign(c[0]):
                        conflict = True
                        keep.extend(ws[i:])
                        break
            self.watches[false_lit] = keep
            if conflict:
                return False
        return True

    def _undo_to(self, idx: int) -> None:
        while len(self.trail) > idx:
            self.val[abs(self.trail.pop())] = 0
        self.qhead = min(self.qhead, idx)

    def _backtrack(self) -> bool:
        while self.decisions:
            lit, flipped, idx = self.decisions.pop()
            self._undo_to(idx)
            if not flipped:
                self.decisions.append((-lit, True, idx))
                self._assign(-lit)
                return True
        return False

    def _pick(self) -> int | None:
        for v in range(1, self.n + 1):
            if self.val[v] == 0:
                return v
        return None

    def iter_models(self, budget: int | None = None) -> Iterator[list[bool]]:
        """All models in a fixed order (index 0 unused)."""
        if self.empty:
            return
        for u in self.units:
            if not self._assign(u):
                return
        if not self._propagate():
            return
        while True:
            v = self._pick()
            if v is None:
                yield [x > 0 for x in self.val]
                if not self._backtrack():
                    return
            else:
                self.nodes += 1
                if budget is not None and self.nodes > budget:
                    raise BudgetExceeded(self.nodes, budget)
                self.decisions.append((v, False, len(self.trail)))
                self._assign(v)
            while not self._propagate():
                self.nodes += 1
                if budget is not None and self.nodes > budget:
                    raise BudgetExceeded(self.nodes, budget)
                if not self._backtrack():
                    return

    def solve(self, budget: int | None = None) -> list[bool] | None:
        for model in self.iter_models(budget):
            return model
        return None
