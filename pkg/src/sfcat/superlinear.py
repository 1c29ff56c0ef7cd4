"""Finite-dimensional super-vector spaces and linear maps over ``Scalar``.

Tensor products are flattened: the basis of V (x) W is the list of pairs in
lexicographic order and basis labels are tuples, so (U (x) V) (x) W and
U (x) (V (x) W) are literally the same space.  Maps store columns sparsely,
``cols[j] = {i: coefficient}`` being the image of basis vector j.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

import numpy as np

from .scalar import ONE, ZERO, NotAUnit, Scalar, as_scalar


class ShapeMismatch(ValueError):
    pass


class ParityError(ValueError):
    pass


class NotNilpotent(ArithmeticError):
    pass


class SingularMap(ArithmeticError):
    pass


class SuperSpace:
    """Ordered basis with a parity (0 even, 1 odd) for each basis vector."""

    __slots__ = ("labels", "parities")

    def __init__(self, labels: Sequence, parities: Sequence[int]):
        if len(labels) != len(parities):
            raise ShapeMismatch("one parity per basis label")
        self.labels = tuple(l if isinstance(l, tuple) else (l,) for l in labels)
        self.parities = tuple(int(p) & 1 for p in parities)

    @classmethod
    def standard(cls, n_even: int, n_odd: int, name: str = "v") -> "SuperSpace":
        labels = [f"{name}{k}" for k in range(n_even + n_odd)]
        return cls(labels, [0] * n_even + [1] * n_odd)

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

    def dual(self) -> "SuperSpace":
        return SuperSpace([("*",) + l for l in self.labels], self.parities)

    def __eq__(self, other):
        return isinstance(other, SuperSpace) and self.parities == other.parities

    def __hash__(self):
        return hash(self.parities)

    def __repr__(self):
        return f"SuperSpace({self.even_dim}|{self.odd_dim})"

    def to_json(self) -> dict:
        return {"labels": ["/".join(map(str, l)) for l in self.labels],
                "parities": list(self.parities)}

    @classmethod
    def from_json(cls, data: dict) -> "SuperSpace":
        return cls([tuple(s.split("/")) for s in data["labels"]], data["parities"])


CONE = SuperSpace([()], [0])


def tensor_space(*spaces: SuperSpace) -> SuperSpace:
    if not spaces:
        return CONE
    labels = [()]
    pars = [0]
    for V in spaces:
        labels = [a + b for a in labels for b in V.labels]
        pars = [(p + q) & 1 for p in pars for q in V.parities]
    return SuperSpace(labels, pars)


class LinMap:
    """Homogeneous linear map with a sparse column representation."""

    __slots__ = ("src", "tgt", "cols", "parity")

    def __init__(self, src: SuperSpace, tgt: SuperSpace, cols: dict, parity: int = 0,
                 check: bool = True):
        self.src = src
        self.tgt = tgt
        self.parity = parity
        clean = {}
        for j, col in cols.items():
            c = {i: as_scalar(v) for i, v in col.items() if v}
            c = {i: v for i, v in c.items() if v}
            if c:
                clean[j] = c
        self.cols = clean
        if check:
            sp, tp = src.parities, tgt.parities
            for j, col in clean.items():
                for i in col:
                    if (sp[j] + tp[i] + parity) & 1:
                        raise ParityError(f"entry ({i},{j}) breaks parity {parity}")

    @classmethod
    def _raw(cls, src, tgt, cols, parity=0):
        obj = cls.__new__(cls)
        obj.src, obj.tgt, obj.cols, obj.parity = src, tgt, cols, parity
        return obj

    # constructors
    @classmethod
    def identity(cls, V: SuperSpace) -> "LinMap":
        return cls._raw(V, V, {j: {j: ONE} for j in range(V.dim)})

    @classmethod
    def zero(cls, src: SuperSpace, tgt: SuperSpace, parity: int = 0) -> "LinMap":
        return cls._raw(src, tgt, {}, parity)

    @classmethod
    def from_dense(cls, src, tgt, rows, parity: int = 0) -> "LinMap":
        cols: dict = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    cols.setdefault(j, {})[i] = v
        return cls(src, tgt, cols, parity)

    @classmethod
    def from_function(cls, src, tgt, fn: Callable[[int], dict], parity: int = 0,
                      check: bool = True) -> "LinMap":
        return cls(src, tgt, {j: fn(j) for j in range(src.dim)}, parity, check)

    # structure
    @property
    def shape(self):
        return (self.tgt.dim, self.src.dim)

    def entry(self, i: int, j: int) -> Scalar:
        return self.cols.get(j, {}).get(i, ZERO)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def is_zero(self) -> bool:
        return not self.cols

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, a in vec.items():
            col = self.cols.get(j)
            if not col:
                continue
            for i, v in col.items():
                s = out.get(i)
                out[i] = a * v if s is None else s + a * v
        return {i: v for i, v in out.items() if v}

    def __matmul__(self, other: "LinMap") -> "LinMap":
        if self.src.parities != other.tgt.parities:
            raise ShapeMismatch(f"cannot compose {self.src} <- {other.tgt}")
        cols = {}
        for j, col in other.cols.items():
            img = self.apply(col)
            if img:
                cols[j] = img
        return LinMap._raw(other.src, self.tgt, cols, (self.parity + other.parity) & 1)

    def _check_same(self, other):
        if self.src.parities != other.src.parities or self.tgt.parities != other.tgt.parities:
            raise ShapeMismatch("maps have different source or target")

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check_same(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return LinMap._raw(self.src, self.tgt, other.cols, other.parity)
        if self.parity != other.parity:
            raise ParityError("cannot add maps of different parity")
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            tgt = cols.setdefault(j, {})
            for i, v in col.items():
                s = tgt.get(i)
                s = v if s is None else s + v
                if s:
                    tgt[i] = s
                else:
                    tgt.pop(i, None)
            if not tgt:
                del cols[j]
        return LinMap._raw(self.src, self.tgt, cols, self.parity)

    def __neg__(self) -> "LinMap":
        return LinMap._raw(self.src, self.tgt,
                           {j: {i: -v for i, v in c.items()} for j, c in self.cols.items()},
                           self.parity)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + (-other)

    def scale(self, s) -> "LinMap":
        s = as_scalar(s)
        if not s:
            return LinMap.zero(self.src, self.tgt, self.parity)
        return LinMap._raw(self.src, self.tgt,
                           {j: {i: s * v for i, v in c.items()} for j, c in self.cols.items()},
                           self.parity)

    def __rmul__(self, s) -> "LinMap":
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        if self.src.parities != other.src.parities or self.tgt.parities != other.tgt.parities:
            return False
        return self.cols == other.cols

    __hash__ = None

    def first_difference(self, other: "LinMap"):
        """First (i, j, self_ij, other_ij) where the matrices differ, or None."""
        for j in sorted(set(self.cols) | set(other.cols)):
            a = self.cols.get(j, {})
            b = other.cols.get(j, {})
            for i in sorted(set(a) | set(b)):
                x, y = a.get(i, ZERO), b.get(i, ZERO)
                if x != y:
                    return (i, j, x, y)
        return None

    def power(self, k: int) -> "LinMap":
        out = LinMap.identity(self.src)
        for _ in range(k):
            out = self @ out
        return out

    def to_numpy(self, pi_value: complex = np.pi) -> np.ndarray:
        m = np.zeros(self.shape, dtype=complex)
        for j, col in self.cols.items():
            for i, v in col.items():
                m[i, j] = v.eval_complex(pi_value)
        return m

    def restrict_cols(self, keep: Iterable[int]) -> "LinMap":
        keep = set(keep)
        return LinMap._raw(self.src, self.tgt,
                           {j: c for j, c in self.cols.items() if j in keep}, self.parity)

    def inverse(self) -> "LinMap":
        """Exact inverse by sparse Gauss-Jordan with monomial pivots."""
        n = self.src.dim
        if self.tgt.dim != n:
            raise SingularMap("non-square map")
        # rows of the augmented system [A | I]
        rows: list = [dict() for _ in range(n)]
        for j, col in self.cols.items():
            for i, v in col.items():
                rows[i][j] = v
        aug = [{i: ONE} for i in range(n)]
        free = set(range(n))
        pivot_of = {}
        for c in range(n):
            best = None
            for r in free:
                v = rows[r].get(c)
                if v is not None and v.is_unit():
                    if best is None or len(rows[r]) < len(rows[best]):
                        best = r
            if best is None:
                raise SingularMap(f"no unit pivot in column {c}")
            free.discard(best)
            pivot_of[c] = best
            inv = rows[best][c].try_invert()
            rows[best] = {k: inv * v for k, v in rows[best].items()}
            aug[best] = {k: inv * v for k, v in aug[best].items()}
            prow, paug = rows[best], aug[best]
            for r in range(n):
                if r == best:
                    continue
                f = rows[r].get(c)
                if f is None:
                    continue
                _axpy(rows[r], -f, prow)
                _axpy(aug[r], -f, paug)
        cols: dict = {}
        for c, r in pivot_of.items():
            for k, v in aug[r].items():
                cols.setdefault(k, {})[c] = v
        return LinMap._raw(self.tgt, self.src, cols, self.parity)

    def to_json(self) -> dict:
        return {
            "src": self.src.to_json(),
            "tgt": self.tgt.to_json(),
            "parity": self.parity,
            "entries": [[i, j, v.to_json()] for j in sorted(self.cols)
                        for i, v in sorted(self.cols[j].items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinMap":
        cols: dict = {}
        for i, j, v in data["entries"]:
            cols.setdefault(j, {})[i] = Scalar.from_json(v)
        return cls(SuperSpace.from_json(data["src"]), SuperSpace.from_json(data["tgt"]),
                   cols, data.get("parity", 0))

    def __repr__(self):
        return f"LinMap({self.src} -> {self.tgt}, parity={self.parity}, nnz={self.nnz()})"


EvenMap = LinMap


def _axpy(target: dict, a: Scalar, x: dict) -> None:
    for k, v in x.items():
        s = target.get(k)
        s = a * v if s is None else s + a * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    """(f (x) g)(v (x) w) = (-1)^{|g||v|} f(v) (x) g(w)."""
    src = tensor_space(f.src, g.src)
    tgt = tensor_space(f.tgt, g.tgt)
    dw, dw2 = g.src.dim, g.tgt.dim
    vpar = f.src.parities
    cols = {}
    for jv, fcol in f.cols.items():
        neg = g.parity and vpar[jv]
        for jw, gcol in g.cols.items():
            col = {}
            for iv, a in fcol.items():
                base = iv * dw2
                for iw, b in gcol.items():
                    p = a * b
                    col[base + iw] = -p if neg else p
            cols[jv * dw + jw] = col
    return LinMap._raw(src, tgt, cols, (f.parity + g.parity) & 1)


def tensor_maps(*maps: LinMap) -> LinMap:
    out = maps[0]
    for m in maps[1:]:
        out = tensor_map(out, m)
    return out


def place(op: LinMap, blocks: Sequence[SuperSpace], i: int) -> LinMap:
    """id (x) ... (x) op (x) ... (x) id with op on block i (Koszul signed)."""
    before = tensor_space(*blocks[:i])
    after = tensor_space(*blocks[i + 1:])
    return tensor_maps(LinMap.identity(before), op, LinMap.identity(after))


def tau(V: SuperSpace, W: SuperSpace) -> LinMap:
    """Signed swap v (x) w -> (-1)^{|v||w|} w (x) v."""
    dv, dw = V.dim, W.dim
    cols = {}
    for a in range(dv):
        for b in range(dw):
            s = -ONE if V.parities[a] and W.parities[b] else ONE
            cols[a * dw + b] = {b * dv + a: s}
    return LinMap._raw(tensor_space(V, W), tensor_space(W, V), cols)


def omega_involution(V: SuperSpace) -> LinMap:
    return LinMap._raw(V, V, {j: {j: -ONE if p else ONE} for j, p in enumerate(V.parities)})


def ev(V: SuperSpace) -> LinMap:
    """V* (x) V -> C, e^i (x) e_j -> delta_ij."""
    n = V.dim
    return LinMap._raw(tensor_space(V.dual(), V), CONE, {i * n + i: {0: ONE} for i in range(n)})


def coev(V: SuperSpace) -> LinMap:
    """C -> V (x) V*, 1 -> sum_i e_i (x) e^i."""
    n = V.dim
    return LinMap._raw(CONE, tensor_space(V, V.dual()), {0: {i * n + i: ONE for i in range(n)}})


def supertrace(f: LinMap) -> Scalar:
    out = ZERO
    for j, col in f.cols.items():
        v = col.get(j)
        if v is not None:
            out = out - v if f.src.parities[j] else out + v
    return out


def exp_nilpotent(f: LinMap, scale=ONE) -> LinMap:
    """sum_k scale^k f^k / k!, which must be a finite sum."""
    if f.src.parities != f.tgt.parities:
        raise ShapeMismatch("exp needs an endomorphism")
    n = f.src.dim
    s = as_scalar(scale)
    out = LinMap.identity(f.src)
    term = LinMap.identity(f.src)
    for k in range(1, n + 2):
        term = f @ term
        if term.is_zero():
            return out
        out = out + term.scale(s ** k * Fraction(1, factorial(k)))
    raise NotNilpotent(f"map of dimension {n} is not nilpotent")


def nilpotency_index(f: LinMap) -> int:
    """Smallest k with f^k = 0."""
    term = LinMap.identity(f.src)
    for k in range(1, f.src.dim + 2):
        term = f @ term
        if term.is_zero():
            return k
    raise NotNilpotent("map is not nilpotent")


def nullspace(rows: list, ncols: int) -> list:
    """Basis of {x : rows . x = 0} for rows given as dicts col -> Scalar.

    Pivots must be units of the Scalar ring; a π-free system over Q(zeta_8)
    always satisfies this.
    """
    work = [dict(r) for r in rows if r]
    pivots = {}
    for c in range(ncols):
        best = None
        for idx, r in enumerate(work):
            if idx in pivots.values():
                continue
            v = r.get(c)
            if v is not None and v.is_unit():
                best = idx
                break
        if best is None:
            continue
        inv = work[best][c].try_invert()
        work[best] = {k: inv * v for k, v in work[best].items()}
        prow = work[best]
        for idx, r in enumerate(work):
            if idx != best and c in r:
                _axpy(r, -r[c], prow)
        pivots[c] = best
    used = set(pivots.values())
    for idx, r in enumerate(work):
        if idx not in used and r:
            # a surviving row without unit entries would need a field
            raise NotAUnit("nullspace needs unit pivots")
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: ONE}
        for c, idx in pivots.items():
            v = work[idx].get(free)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis
