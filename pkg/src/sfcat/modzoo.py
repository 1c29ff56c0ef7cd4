"""h-modules: constructors for the N=1 indecomposables, tensor products and
intertwiners."""
from __future__ import annotations

import json
from itertools import product as iproduct
from typing import Sequence

from .liealg import LieData, UEnv, combine
from .scalar import ONE, ZERO, Scalar, as_scalar
from .superlinear import (LinMap, ParityError, ShapeMismatch, SuperSpace, nullspace,
                          place, tensor_map, tensor_space, tau)


class InvalidModule(ValueError):
    pass


class HModule:
    """Super-vector space with one operator per basis generator of h."""

    def __init__(self, lie: LieData, space: SuperSpace, ops: Sequence[LinMap], name: str = "",
                 check: bool = True):
        self.lie = lie
        self.space = space
        self.ops = list(ops)
        self.name = name
        if check:
            self.validate()

    def validate(self):
        if len(self.ops) != self.lie.dim:
            raise InvalidModule("need one operator per generator")
        for k, op in enumerate(self.ops):
            if op.src.parities != self.space.parities or op.tgt.parities != self.space.parities:
                raise InvalidModule("operator acts on a different space")
            if op.parity != self.lie.parities[k]:
                raise InvalidModule(f"operator {k} has the wrong parity")
        for a, b in iproduct(range(len(self.ops)), repeat=2):
            if a > b:
                continue
            pa, pb = self.lie.parities[a], self.lie.parities[b]
            comm = self.ops[a] @ self.ops[b]
            other = self.ops[b] @ self.ops[a]
            comm = comm + other if pa and pb else comm - other
            if not comm.is_zero():
                raise InvalidModule(f"operators {a},{b} do not super-commute")

    @property
    def dim(self) -> int:
        return self.space.dim

    def act(self, coords: Sequence) -> LinMap:
        """rho(h) for h = sum_l coords[l] alpha^l."""
        return combine(self.ops, coords)

    def act_word(self, word: tuple) -> LinMap:
        """rho(alpha^{w_1} ... alpha^{w_k})."""
        out = LinMap.identity(self.space)
        for a in reversed(word):
            out = self.ops[a] @ out
        return out

    def is_trivial(self) -> bool:
        return all(op.is_zero() for op in self.ops)

    def socle_dim(self) -> tuple:
        """(even, odd) dimension of the joint kernel of all generators."""
        rows = []
        for op in self.ops:
            for i in range(self.dim):
                row = {j: col[i] for j, col in op.cols.items() if i in col}
                if row:
                    rows.append(row)
        basis = nullspace(rows, self.dim)
        even = sum(1 for v in basis if self.space.parities[next(iter(v))] == 0)
        return even, len(basis) - even

    def __repr__(self):
        return f"HModule({self.name or '?'}, {self.space})"

    def to_json(self) -> dict:
        return {"name": self.name, "carrier": self.space.to_json(),
                "generators": [op.to_json()["entries"] for op in self.ops]}


def zero_ops(lie: LieData, V: SuperSpace) -> list:
    return [LinMap.zero(V, V, p) for p in lie.parities]


def trivial(lie: LieData, name: str = "1") -> HModule:
    V = SuperSpace(["1"], [0])
    return HModule(lie, V, zero_ops(lie, V), name)


def parity_line(lie: LieData) -> HModule:
    V = SuperSpace(["p"], [1])
    return HModule(lie, V, zero_ops(lie, V), "C01")


def pi_shift(M: HModule) -> HModule:
    """C^{0|1} (x) M with the action on the second factor."""
    return tensor_module(parity_line(M.lie), M, name="Pi" + M.name)


def regular_module(U: UEnv) -> HModule:
    return HModule(U.lie, U.space, U.regular_action, "U(h)")


def free_boson_module(lie: LieData, p) -> HModule:
    """C_p: the even generator J acts by multiplication with p."""
    if lie.dim != 1 or lie.parities[0] != 0:
        raise InvalidModule("C_p needs h = C^{1|0}")
    V = SuperSpace([f"v{p}"], [0])
    return HModule(lie, V, [LinMap(V, V, {0: {0: as_scalar(p)}})], f"C_{p}")


def _require_n1(lie: LieData):
    if lie.dim != 2 or not lie.purely_odd:
        raise InvalidModule("this family is only defined for h = C^{0|2}")


def make_xi(lie: LieData, k: int, eps: int, delta: int) -> HModule:
    """xi_{k,eps,delta}: even basis e^[eps], e^1..e^k, e^[delta]; odd o^1..o^{k+1}."""
    _require_n1(lie)
    even = (["e_eps"] if eps else []) + [f"e{i}" for i in range(1, k + 1)] + \
        (["e_delta"] if delta else [])
    odd = [f"o{i}" for i in range(1, k + 2)]
    V = SuperSpace(even + odd, [0] * len(even) + [1] * len(odd))
    idx = {l[0]: t for t, l in enumerate(V.labels)}
    plus: dict = {}
    minus: dict = {}
    for i in range(1, k + 1):
        plus[idx[f"e{i}"]] = {idx[f"o{i + 1}"]: ONE}
        minus[idx[f"e{i}"]] = {idx[f"o{i}"]: ONE}
    if eps:
        plus[idx["e_eps"]] = {idx["o1"]: ONE}
    if delta:
        minus[idx["e_delta"]] = {idx[f"o{k + 1}"]: ONE}
    ops = [LinMap(V, V, plus, 1), LinMap(V, V, minus, 1)]
    return HModule(lie, V, ops, f"xi{k}{eps}{delta}")


def make_eta(lie: LieData, mu, n: int) -> HModule:
    """eta_{mu,n}: chi+ a Jordan block with eigenvalue mu, chi- the identity e^i -> o^i."""
    _require_n1(lie)
    mu = as_scalar(mu)
    if not mu:
        raise InvalidModule("eta needs mu != 0")
    V = SuperSpace([f"e{i}" for i in range(1, n + 1)] + [f"o{i}" for i in range(1, n + 1)],
                   [0] * n + [1] * n)
    plus = {}
    minus = {}
    for i in range(n):
        col = {n + i: mu}
        if i + 1 < n:
            col[n + i + 1] = ONE
        plus[i] = col
        minus[i] = {n + i: ONE}
    return HModule(lie, V, [LinMap(V, V, plus, 1), LinMap(V, V, minus, 1)], f"eta{n}")


def tensor_module(A: HModule, B: HModule, name: str | None = None) -> HModule:
    """Action via the coproduct: rho_A (x) id + id (x) rho_B, Koszul signed."""
    if A.lie != B.lie:
        raise ShapeMismatch("modules over different Lie data")
    blocks = [A.space, B.space]
    ops = [place(a, blocks, 0) + place(b, blocks, 1) for a, b in zip(A.ops, B.ops)]
    return HModule(A.lie, tensor_space(A.space, B.space), ops,
                   name if name is not None else f"{A.name}*{B.name}", check=False)


def is_intertwiner(f: LinMap, A: HModule, B: HModule) -> bool:
    if f.src.parities != A.space.parities or f.tgt.parities != B.space.parities:
        raise ShapeMismatch("map does not match the modules")
    return all(f @ a == b @ f for a, b in zip(A.ops, B.ops))


def intertwiner_from_linear(U: UEnv, g: LinMap) -> LinMap:
    """phi(g)(a (x) b) = sum a_(1) g(S(a_(2)) b) : U(h) (x) U(h) -> U(h)."""
    if g.parity:
        raise ParityError("g must be even")
    d = U.dim
    cols: dict = {}
    for ia, a in enumerate(U.words):
        delta = U.coproduct_word(a)
        for ib, b in enumerate(U.words):
            img: dict = {}
            for (a1, a2), c in delta.items():
                r = U.mul_words(a2, b)
                if r is None:
                    continue
                sign = -r[0] if len(a2) & 1 else r[0]  # antipode (-1)^{|a2|}
                gb = g.cols.get(U.index[r[1]], {})
                for t, v in gb.items():
                    r2 = U.mul_words(a1, U.words[t])
                    if r2 is None:
                        continue
                    coeff = c * v
                    if sign * r2[0] < 0:
                        coeff = -coeff
                    k = U.index[r2[1]]
                    img[k] = img.get(k, ZERO) + coeff
            cols[ia * d + ib] = img
    return LinMap(tensor_space(U.space, U.space), U.space, cols)


def intertwiner_space(A: HModule, B: HModule) -> list:
    """Basis of the even h-intertwiners A -> B (exact nullspace)."""
    pairs = [(i, j) for j in range(A.dim) for i in range(B.dim)
             if A.space.parities[j] == B.space.parities[i]]
    var = {p: t for t, p in enumerate(pairs)}
    rows = []
    for a, b in zip(A.ops, B.ops):
        # (f a - b f)_{i j} = sum_k f_{ik} a_{kj} - sum_k b_{ik} f_{kj}
        eqs: dict = {}
        for j in range(A.dim):
            for k, v in a.cols.get(j, {}).items():
                for i in range(B.dim):
                    t = var.get((i, k))
                    if t is not None:
                        row = eqs.setdefault((i, j), {})
                        row[t] = row.get(t, ZERO) + v
        for j in range(A.dim):
            for k in range(B.dim):
                t = var.get((k, j))
                if t is None:
                    continue
                for i, v in b.cols.get(k, {}).items():
                    row = eqs.setdefault((i, j), {})
                    row[t] = row.get(t, ZERO) - v
        for row in eqs.values():
            row = {t: v for t, v in row.items() if v}
            if row:
                rows.append(row)
    basis = []
    for vec in nullspace(rows, len(pairs)):
        cols: dict = {}
        for t, v in vec.items():
            i, j = pairs[t]
            cols.setdefault(j, {})[i] = v
        basis.append(LinMap(A.space, B.space, cols))
    return basis


def find_isomorphism(A: HModule, B: HModule):
    """An invertible even intertwiner A -> B if a small search finds one, else None.

    Tries the basis elements and sums of pairs with coefficients in {1, 2}; the
    zoo modules here are small enough that this suffices when an isomorphism
    exists, and a rank argument rules isomorphism out otherwise.
    """
    if A.space.even_dim != B.space.even_dim or A.space.odd_dim != B.space.odd_dim:
        return None
    basis = intertwiner_space(A, B)
    candidates = list(basis)
    for x, y in iproduct(basis, repeat=2):
        for c in (1, 2, 3):
            candidates.append(x + y.scale(c))
    for f in candidates:
        try:
            f.inverse()
            return f
        except ArithmeticError:
            continue
    return None


def action_rank_signature(M: HModule) -> tuple:
    """Ranks of chi+, chi-, and of generic combinations; an isomorphism invariant."""
    import numpy as np
    ranks = []
    for coeffs in ((1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, -1)):
        op = M.act(coeffs)
        ranks.append(int(np.linalg.matrix_rank(op.to_numpy())) if op.nnz() else 0)
    return (M.space.even_dim, M.space.odd_dim, tuple(ranks))


def module_from_json(lie: LieData, data: dict | str) -> HModule:
    """{carrier: {labels, parities}, generators: [[[i, j, scalar-json], ...], ...]}."""
    if isinstance(data, str):
        data = json.loads(data)
    V = SuperSpace.from_json(data["carrier"])
    ops = []
    for k, entries in enumerate(data["generators"]):
        cols: dict = {}
        for i, j, v in entries:
            cols.setdefault(j, {})[i] = Scalar.from_json(v) if isinstance(v, list) else v
        ops.append(LinMap(V, V, cols, lie.parities[k]))
    return HModule(lie, V, ops, data.get("name", "custom"))


def n1_zoo(lie: LieData | None = None) -> dict:
    """The sector-0 part of the N=1 zoo: 1, Pi1, U(h), xi_{1,1,0}, eta_{1,1}."""
    lie = lie or LieData.symplectic(1)
    U = UEnv(lie)
    one = trivial(lie)
    return {
        "1": one,
        "Pi1": pi_shift(one),
        "U": regular_module(U),
        "xi110": make_xi(lie, 1, 1, 0),
        "eta11": make_eta(lie, 1, 1),
    }
