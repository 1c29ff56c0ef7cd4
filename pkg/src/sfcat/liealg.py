"""Metric abelian Lie super-algebras, the copairing and the Hopf algebra U(h).

For purely odd h of dimension 0|2N the internal basis is symplectic:
(alpha^{2m-1}, alpha^{2m}) = 1, so beta^{2m-1} = alpha^{2m} and
beta^{2m} = -alpha^{2m-1}.  Indices are 0-based in code.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial
from typing import Sequence

from .scalar import I, ONE, PI, ZERO, Scalar, as_scalar
from .superlinear import (LinMap, SingularMap, SuperSpace, place, tensor_space)


class DegenerateForm(ValueError):
    pass


class MixedParityH(ValueError):
    """Raised when a construction needs h to be purely odd."""


class LieData:
    """Basis alpha^k with parities and Gram matrix G[k][l] = (alpha^k, alpha^l)."""

    def __init__(self, parities: Sequence[int], gram, labels: Sequence[str] | None = None,
                 change_of_basis=None):
        self.parities = tuple(int(p) for p in parities)
        n = len(self.parities)
        self.gram = [[as_scalar(gram[k][l]) for l in range(n)] for k in range(n)]
        self.labels = tuple(labels) if labels else tuple(f"a{k + 1}" for k in range(n))
        # rows express the internal basis in terms of the user's input basis
        self.change_of_basis = change_of_basis
        self._validate()

    def _validate(self):
        n = self.dim
        for k in range(n):
            for l in range(n):
                g = self.gram[k][l]
                if self.parities[k] != self.parities[l] and g:
                    raise DegenerateForm("pairing must be even")
                sign = -1 if self.parities[k] and self.parities[l] else 1
                if g != self.gram[l][k] * sign:
                    raise DegenerateForm("pairing must be supersymmetric")
        try:
            self.dual_matrix
        except SingularMap as exc:
            raise DegenerateForm("pairing is degenerate") from exc

    @classmethod
    def symplectic(cls, n_pairs: int) -> "LieData":
        """h = C^{0|2N} in a symplectic basis."""
        n = 2 * n_pairs
        gram = [[0] * n for _ in range(n)]
        for m in range(n_pairs):
            gram[2 * m][2 * m + 1] = 1
            gram[2 * m + 1][2 * m] = -1
        if n_pairs == 1:
            labels = ["chi+", "chi-"]
        else:
            labels = [f"a{k + 1}" for k in range(n)]
        return cls([1] * n, gram, labels)

    @classmethod
    def free_boson(cls) -> "LieData":
        return cls([0], [[1]], ["J"])

    @classmethod
    def from_gram(cls, parities: Sequence[int], gram) -> "LieData":
        """Accept any non-degenerate Gram matrix; purely odd input is converted
        to a symplectic basis by an exact congruence transformation."""
        raw = cls(parities, gram)
        if raw.even_dim or not raw.dim:
            return raw
        n = raw.dim
        G = raw.gram

        def form(u, v):
            return sum((u[a] * v[b] * G[a][b] for a in range(n) for b in range(n)
                        if u[a] and v[b]), ZERO)

        rest = [[ONE if a == k else ZERO for a in range(n)] for k in range(n)]
        basis = []
        while rest:
            u = rest.pop(0)
            idx = next((t for t, v in enumerate(rest) if form(u, v)), None)
            if idx is None:
                raise DegenerateForm("no symplectic partner")
            v = rest.pop(idx)
            c = form(u, v).try_invert()
            v = [c * x for x in v]
            new_rest = []
            for w in rest:
                a, b = form(w, v), form(w, u)
                new_rest.append([w[t] - a * u[t] + b * v[t] for t in range(n)])
            rest = new_rest
            basis += [u, v]
        return cls.symplectic(n // 2).with_change_of_basis(basis)

    def with_change_of_basis(self, rows) -> "LieData":
        return LieData(self.parities, self.gram, self.labels, change_of_basis=rows)

    @property
    def dim(self) -> int:
        return len(self.parities)

    @property
    def even_dim(self) -> int:
        return self.parities.count(0)

    @property
    def odd_dim(self) -> int:
        return self.parities.count(1)

    @property
    def sdim(self) -> int:
        return self.even_dim - self.odd_dim

    @property
    def purely_odd(self) -> bool:
        return self.even_dim == 0

    @property
    def n_pairs(self) -> int:
        return -self.sdim // 2

    @cached_property
    def dual_matrix(self):
        """B with beta^k = sum_l B[k][l] alpha^l and (alpha^i, beta^j) = delta_ij."""
        n = self.dim
        V = SuperSpace.standard(n, 0)
        G = LinMap.from_dense(V, V, self.gram)
        Ginv = G.inverse()
        # sum_l B[j][l] G[i][l] = delta_ij, i.e. G B^T = 1
        return [[Ginv.entry(l, j) for l in range(n)] for j in range(n)]

    def pairing(self, u: Sequence, v: Sequence) -> Scalar:
        n = self.dim
        return sum((as_scalar(u[a]) * as_scalar(v[b]) * self.gram[a][b]
                    for a in range(n) for b in range(n) if u[a] and v[b]), ZERO)

    def beta(self, k: int) -> list:
        return list(self.dual_matrix[k])

    def alpha(self, k: int) -> list:
        return [ONE if l == k else ZERO for l in range(self.dim)]

    def copairing(self) -> dict:
        """Omega = sum_k beta^k (x) alpha^k as {(a, b): coefficient} in alpha-coordinates."""
        out: dict = {}
        for k in range(self.dim):
            for a, c in enumerate(self.dual_matrix[k]):
                if c:
                    out[(a, k)] = out.get((a, k), ZERO) + c
        return {key: v for key, v in out.items() if v}

    def to_json(self) -> dict:
        return {"even_dim": self.even_dim, "odd_dim": self.odd_dim,
                "gram": [[g.to_json() for g in row] for row in self.gram]}

    @classmethod
    def from_json(cls, data: dict) -> "LieData":
        n0, n1 = data["even_dim"], data["odd_dim"]
        gram = [[Scalar.from_json(g) if isinstance(g, list) else Fraction(g) for g in row]
                for row in data["gram"]]
        return cls.from_gram([0] * n0 + [1] * n1, gram)

    def __eq__(self, other):
        return (isinstance(other, LieData) and self.parities == other.parities
                and self.gram == other.gram)

    def __hash__(self):
        return hash(self.parities)

    def __repr__(self):
        return f"LieData({self.even_dim}|{self.odd_dim})"


def combine(ops: Sequence[LinMap], coeffs: Sequence) -> LinMap:
    """sum_l coeffs[l] * ops[l]."""
    out = None
    for op, c in zip(ops, coeffs):
        if not c:
            continue
        term = op.scale(c)
        out = term if out is None else out + term
    if out is None:
        op = ops[0]
        return LinMap.zero(op.src, op.tgt, op.parity)
    return out


def omega_ij(lie: LieData, blocks: Sequence[SuperSpace], actions: Sequence, i: int,
             j: int) -> LinMap:
    """Omega^{(ij)} = sum_k (beta^k)^{(i)} o (alpha^k)^{(j)} on the flattened product.

    ``actions[b]`` is the list of generator operators on block b, or None for a
    block without h-action (then every term vanishes).
    """
    n = len(blocks)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError("factor index out of range")
    W = tensor_space(*blocks)
    if actions[i] is None or actions[j] is None:
        return LinMap.zero(W, W)
    total = None
    for k in range(lie.dim):
        a_op = place(actions[j][k], blocks, j)
        b_op = place(combine(actions[i], lie.dual_matrix[k]), blocks, i)
        term = b_op @ a_op
        total = term if total is None else total + term
    return total


class UEnv:
    """U(h) for purely odd h: the exterior algebra on 2N odd generators."""

    def __init__(self, lie: LieData):
        if not lie.purely_odd:
            raise MixedParityH("U(h) as a finite Hopf algebra needs purely odd h")
        self.lie = lie
        n = lie.dim
        self.words = [w for k in range(n + 1) for w in combinations(range(n), k)]
        self.index = {w: t for t, w in enumerate(self.words)}
        labels = ["1" if not w else "".join(lie.labels[a] for a in w) for w in self.words]
        self.space = SuperSpace(labels, [len(w) & 1 for w in self.words])
        self.top = tuple(range(n))

    @property
    def n_pairs(self) -> int:
        return self.lie.n_pairs

    @property
    def dim(self) -> int:
        return len(self.words)

    # words and elements
    @staticmethod
    def mul_words(s: tuple, t: tuple):
        """(sign, word) for the product of two exterior monomials, or None."""
        if set(s) & set(t):
            return None
        # sign of the shuffle sorting s + t
        inv = sum(1 for a in s for b in t if a > b)
        return (-1 if inv & 1 else 1), tuple(sorted(s + t))

    def element(self, data) -> dict:
        return {tuple(w): as_scalar(c) for w, c in dict(data).items() if c}

    def generator(self, k: int) -> dict:
        return {(k,): ONE}

    def unit(self) -> dict:
        return {(): ONE}

    def product(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for s, a in x.items():
            for t, b in y.items():
                r = self.mul_words(s, t)
                if r is None:
                    continue
                sign, w = r
                v = a * b if sign > 0 else -(a * b)
                out[w] = out.get(w, ZERO) + v
        return {w: v for w, v in out.items() if v}

    def add(self, x: dict, y: dict, scale=ONE) -> dict:
        out = dict(x)
        s = as_scalar(scale)
        for w, v in y.items():
            out[w] = out.get(w, ZERO) + s * v
        return {w: v for w, v in out.items() if v}

    def from_h(self, coords: Sequence) -> dict:
        return {(k,): as_scalar(c) for k, c in enumerate(coords) if c}

    def to_vector(self, x: dict) -> dict:
        return {self.index[w]: v for w, v in x.items()}

    def from_vector(self, v: dict) -> dict:
        return {self.words[t]: c for t, c in v.items()}

    # tensor-square elements {(s, t): coeff}
    def tensor_product(self, x: dict, y: dict) -> dict:
        """(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd."""
        out: dict = {}
        for (s1, t1), a in x.items():
            for (s2, t2), b in y.items():
                r1 = self.mul_words(s1, s2)
                if r1 is None:
                    continue
                r2 = self.mul_words(t1, t2)
                if r2 is None:
                    continue
                sign = r1[0] * r2[0] * (-1 if (len(t1) & 1) and (len(s2) & 1) else 1)
                key = (r1[1], r2[1])
                v = a * b if sign > 0 else -(a * b)
                out[key] = out.get(key, ZERO) + v
        return {k: v for k, v in out.items() if v}

    def tensor_exp(self, x: dict, scale=ONE) -> dict:
        """exp(scale * x) in U (x) U for nilpotent even x."""
        s = as_scalar(scale)
        out = {((), ()): ONE}
        term = {((), ()): ONE}
        for k in range(1, 2 * self.lie.dim + 2):
            term = self.tensor_product(term, x)
            if not term:
                return out
            c = s ** k * Fraction(1, factorial(k))
            for key, v in term.items():
                out[key] = out.get(key, ZERO) + c * v
            out = {key: v for key, v in out.items() if v}
        raise ArithmeticError("element is not nilpotent")

    def omega_element(self) -> dict:
        """Omega = sum_k beta^k (x) alpha^k in U (x) U."""
        return {((a,), (b,)): c for (a, b), c in self.lie.copairing().items()}

    # Hopf structure
    def coproduct_word(self, w: tuple) -> dict:
        out = {((), ()): ONE}
        for a in w:
            out = self.tensor_product(out, {((a,), ()): ONE, ((), (a,)): ONE})
        return out

    def coproduct(self, x: dict) -> dict:
        out: dict = {}
        for w, c in x.items():
            for key, v in self.coproduct_word(w).items():
                out[key] = out.get(key, ZERO) + c * v
        return {k: v for k, v in out.items() if v}

    def antipode(self, x: dict) -> dict:
        return {w: (-v if len(w) & 1 else v) for w, v in x.items()}

    def counit(self, x: dict) -> Scalar:
        return x.get((), ZERO)

    def cointegral(self, x: dict) -> Scalar:
        """lambda: top form with lambda(alpha^1 ... alpha^{2N}) = pi^{-N}."""
        return x.get(self.top, ZERO) * Scalar.pi(-self.n_pairs)

    def omega11_element(self) -> dict:
        """m(Omega) = sum_k beta^k alpha^k = -2 sum_m alpha^{2m-1} alpha^{2m}."""
        out: dict = {}
        for (a, b), c in self.lie.copairing().items():
            out = self.add(out, self.product({(a,): c}, {(b,): ONE}))
        return out

    def integral(self) -> dict:
        """Lambda = (-pi)^N / N! * L0^N 1 with L0 = Omega^{(11)}/2 acting on U(h)."""
        N = self.n_pairs
        L0 = {w: v * Fraction(1, 2) for w, v in self.omega11_element().items()}
        x = self.unit()
        for _ in range(N):
            x = self.product(L0, x)
        c = (-PI) ** N * Fraction(1, factorial(N))
        return {w: c * v for w, v in x.items()}

    # linear maps on the carrier
    def left_mult(self, x: dict, parity: int | None = None) -> LinMap:
        if parity is None:
            pars = {len(w) & 1 for w in x}
            parity = pars.pop() if len(pars) == 1 else 0
        cols = {}
        for t, w in enumerate(self.words):
            img = self.product(x, {w: ONE})
            cols[t] = self.to_vector(img)
        return LinMap(self.space, self.space, cols, parity)

    @cached_property
    def regular_action(self) -> list:
        return [self.left_mult({(k,): ONE}, 1) for k in range(self.lie.dim)]

    def antipode_map(self) -> LinMap:
        return LinMap(self.space, self.space,
                      {t: {t: -ONE if len(w) & 1 else ONE} for t, w in enumerate(self.words)})

    def coproduct_map(self) -> LinMap:
        UU = tensor_space(self.space, self.space)
        d = self.dim
        cols = {}
        for t, w in enumerate(self.words):
            cols[t] = {self.index[s] * d + self.index[u]: v
                       for (s, u), v in self.coproduct_word(w).items()}
        return LinMap(self.space, UU, cols)

    def product_map(self) -> LinMap:
        UU = tensor_space(self.space, self.space)
        d = self.dim
        cols = {}
        for s in self.words:
            for u in self.words:
                r = self.mul_words(s, u)
                if r is not None:
                    cols[self.index[s] * d + self.index[u]] = {self.index[r[1]]: Scalar(r[0])}
        return LinMap(UU, self.space, cols)

    def cointegral_map(self) -> LinMap:
        from .superlinear import CONE
        return LinMap(self.space, CONE, {self.index[self.top]: {0: Scalar.pi(-self.n_pairs)}})

    def phi(self, corrupt: bool = False) -> LinMap:
        """phi(u) = sum_j x_j lambda(y_j u) where exp(-pi i Omega) = sum_j x_j (x) y_j.

        ``corrupt`` drops the pi^{-N} normalisation of lambda (mutation testing).
        """
        E = self.tensor_exp(self.omega_element(), -PI * I)
        norm = ONE if corrupt else Scalar.pi(-self.n_pairs)
        cols: dict = {}
        for t, u in enumerate(self.words):
            img: dict = {}
            for (x, y), c in E.items():
                r = self.mul_words(y, u)
                if r is None or r[1] != self.top:
                    continue
                v = c * norm if r[0] > 0 else -(c * norm)
                k = self.index[x]
                img[k] = img.get(k, ZERO) + v
            cols[t] = img
        return LinMap(self.space, self.space, cols)

    def omega11_map(self) -> LinMap:
        """Omega^{(11)} for the regular action, i.e. left multiplication by m(Omega)."""
        return self.left_mult(self.omega11_element(), 0)

    def grade(self, t: int) -> int:
        return len(self.words[t])
