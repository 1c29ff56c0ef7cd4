"""The Z/2-graded category C = C0 + C1 with its associators, braiding and twist.

Objects in C0 are h-modules, objects in C1 are super-vector spaces.  All
structure maps are exact matrices over ``Scalar``; tensor products are
flattened so that the associator below is the only reassociation data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .liealg import LieData, MixedParityH, UEnv, omega_ij
from .modzoo import HModule, is_intertwiner, make_eta, make_xi, pi_shift, regular_module, \
    tensor_module, trivial
from .scalar import I, ONE, PI, Scalar, exp_i_pi
from .superlinear import (LinMap, ShapeMismatch, SuperSpace, exp_nilpotent, omega_involution,
                          place, tau, tensor_map, tensor_maps, tensor_space)


@dataclass(frozen=True, eq=False)
class CObj:
    """Object of C.  ``ops`` is the h-action on the whole carrier (None in C1)."""

    sector: int
    space: SuperSpace
    ops: tuple | None
    name: str = ""
    factors: tuple = field(default=())

    def __repr__(self):
        return f"CObj({self.name}, sector={self.sector}, {self.space})"

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True, eq=False)
class CMor:
    src: CObj
    tgt: CObj
    map: LinMap

    def __matmul__(self, other: "CMor") -> "CMor":
        if self.src.space.parities != other.tgt.space.parities:
            raise ShapeMismatch("morphisms do not compose")
        return CMor(other.src, self.tgt, self.map @ other.map)

    def __eq__(self, other):
        return isinstance(other, CMor) and self.map == other.map

    __hash__ = None


@dataclass
class Report:
    axiom: str
    pattern: str
    objects: list
    verdict: bool
    witness_entry: tuple | None = None
    numeric_agrees: bool | None = None

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "pattern": self.pattern, "objects": self.objects,
               "verdict": "pass" if self.verdict else "fail"}
        if self.witness_entry is not None:
            i, j, a, b = self.witness_entry
            out["witness_entry"] = {"row": i, "col": j, "lhs": a.to_text(), "rhs": b.to_text()}
        if self.numeric_agrees is not None:
            out["numeric_agrees"] = self.numeric_agrees
        return out


class SFCategory:
    """C for a fixed metric abelian Lie super-algebra h."""

    def __init__(self, lie: LieData, corrupt_phi: bool = False):
        self.lie = lie
        self.U = UEnv(lie) if lie.purely_odd else None
        self.corrupt_phi = corrupt_phi
        self._phi = None

    @property
    def N(self) -> int:
        return self.lie.n_pairs

    def _need_odd(self):
        if self.U is None:
            raise MixedParityH("this construction requires h to be purely odd")

    # objects
    def from_module(self, M: HModule) -> CObj:
        return CObj(0, M.space, tuple(M.ops), M.name)

    def twisted(self, space: SuperSpace, name: str = "X") -> CObj:
        return CObj(1, space, None, name)

    def unit(self) -> CObj:
        return self.from_module(trivial(self.lie))

    def T(self) -> CObj:
        return self.twisted(SuperSpace(["t"], [0]), "T")

    def PiT(self) -> CObj:
        return self.twisted(SuperSpace(["pt"], [1]), "PiT")

    def regular(self) -> CObj:
        self._need_odd()
        return self.from_module(regular_module(self.U))

    def as_module(self, A: CObj) -> HModule:
        if A.sector:
            raise ValueError("objects of C1 carry no h-action")
        return HModule(self.lie, A.space, list(A.ops), A.name, check=False)

    def zoo(self) -> dict:
        """The N=1 zoo {1, Pi1, U(h), xi_{1,1,0}, eta_{1,1}, T, PiT}."""
        one = trivial(self.lie)
        out = {"1": self.from_module(one), "Pi1": self.from_module(pi_shift(one))}
        if self.U is not None:
            out["U"] = self.regular()
        if self.lie.dim == 2 and self.lie.purely_odd:
            out["xi110"] = self.from_module(make_xi(self.lie, 1, 1, 0))
            out["eta11"] = self.from_module(make_eta(self.lie, 1, 1))
        if self.U is not None:
            out["T"] = self.T()
            out["PiT"] = self.PiT()
        return out

    # tensor product
    def star_obj(self, A: CObj, B: CObj) -> CObj:
        name = f"({A.name}*{B.name})"
        if A.sector == 0 and B.sector == 0:
            M = tensor_module(self.as_module(A), self.as_module(B))
            return CObj(0, M.space, tuple(M.ops), name)
        if A.sector != B.sector:
            return CObj(1, tensor_space(A.space, B.space), None, name)
        self._need_odd()
        AB = tensor_space(A.space, B.space)
        blocks = [self.U.space, AB]
        ops = tuple(place(op, blocks, 0) for op in self.U.regular_action)
        return CObj(0, tensor_space(self.U.space, AB), ops, name)

    def star_mor(self, f: CMor, g: CMor) -> CMor:
        src = self.star_obj(f.src, g.src)
        tgt = self.star_obj(f.tgt, g.tgt)
        if f.src.sector == 1 and g.src.sector == 1:
            m = tensor_maps(LinMap.identity(self.U.space), f.map, g.map)
        else:
            m = tensor_map(f.map, g.map)
        return CMor(src, tgt, m)

    def identity(self, A: CObj) -> CMor:
        return CMor(A, A, LinMap.identity(A.space))

    # helpers
    def rho_map(self, A: CObj) -> LinMap:
        """rho^A : U(h) (x) A -> A."""
        U = self.U
        d = A.dim
        cols = {}
        mod = self.as_module(A)
        for t, w in enumerate(U.words):
            op = mod.act_word(w)
            for j in range(d):
                col = op.cols.get(j)
                if col:
                    cols[t * d + j] = dict(col)
        return LinMap(tensor_space(U.space, A.space), A.space, cols)

    def omega(self, objs: Sequence, i: int, j: int) -> LinMap:
        """Omega^{(ij)} on a flattened product; entries of objs are CObj or 'U'."""
        blocks, acts = [], []
        for o in objs:
            if isinstance(o, str):
                blocks.append(self.U.space)
                acts.append(self.U.regular_action)
            else:
                blocks.append(o.space)
                acts.append(list(o.ops) if o.ops is not None else None)
        return omega_ij(self.lie, blocks, acts, i, j)

    @property
    def phi(self) -> LinMap:
        if self._phi is None:
            self._phi = self.U.phi(corrupt=self.corrupt_phi)
        return self._phi

    # associator
    def associator(self, A: CObj, B: CObj, C: CObj) -> CMor:
        src = self.star_obj(A, self.star_obj(B, C))
        tgt = self.star_obj(self.star_obj(A, B), C)
        pattern = (A.sector, B.sector, C.sector)
        if 1 in pattern and pattern not in ((0, 0, 1), (1, 0, 0)):
            self._need_odd()
        if pattern in ((0, 0, 0), (0, 0, 1), (1, 0, 0)):
            m = LinMap.identity(src.space)
        elif pattern == (0, 1, 0):
            m = exp_nilpotent(self.omega([A, B, C], 0, 2), I * PI)
        elif pattern == (1, 0, 1):
            m = exp_nilpotent(self.omega(["U", A, B, C], 0, 2), I * PI)
        elif pattern == (0, 1, 1):
            U = self.U
            sw = tau(A.space, U.space)
            split = tensor_map(tau(U.space, U.space) @ U.coproduct_map(),
                               LinMap.identity(A.space))
            act = tensor_map(LinMap.identity(U.space),
                             self.rho_map(A) @ tensor_map(U.antipode_map(),
                                                          LinMap.identity(A.space)))
            m = tensor_map(act @ split @ sw, LinMap.identity(tensor_space(B.space, C.space)))
        elif pattern == (1, 1, 0):
            U = self.U
            AB = tensor_space(A.space, B.space)
            step1 = tensor_map(U.coproduct_map(), LinMap.identity(tensor_space(AB, C.space)))
            step2 = tensor_maps(LinMap.identity(U.space), tau(U.space, AB),
                                LinMap.identity(C.space))
            step3 = tensor_map(LinMap.identity(tensor_space(U.space, AB)), self.rho_map(C))
            m = step3 @ step2 @ step1
        else:  # (1, 1, 1)
            U = self.U
            m = tensor_map(self.phi, LinMap.identity(tensor_space(A.space, B.space, C.space))) @ \
                tensor_map(tau(A.space, U.space), LinMap.identity(tensor_space(B.space, C.space)))
        if m.src.parities != src.space.parities or m.tgt.parities != tgt.space.parities:
            raise ShapeMismatch(f"associator {pattern} has the wrong shape")
        return CMor(src, tgt, m)

    # braiding and twist
    def braiding(self, A: CObj, B: CObj, parity_fix: bool = True) -> CMor:
        """c_{A,B}; with parity_fix=False this is the unfixed map c~ of the
        analytic continuation (the omega_B factor is dropped)."""
        src = self.star_obj(A, B)
        tgt = self.star_obj(B, A)
        a, b = A.sector, B.sector
        if a == 0 and b == 0:
            m = tau(A.space, B.space) @ exp_nilpotent(self.omega([A, B], 0, 1), -I * PI)
        elif a == 0 and b == 1:
            self._need_odd()
            m = tau(A.space, B.space) @ exp_nilpotent(self.omega([A, B], 0, 0),
                                                      I * PI * Fraction(1, 2))
        elif a == 1 and b == 0:
            self._need_odd()
            m = tau(A.space, B.space) @ exp_nilpotent(self.omega([A, B], 1, 1),
                                                      I * PI * Fraction(1, 2))
            if parity_fix:
                m = m @ tensor_map(LinMap.identity(A.space), omega_involution(B.space))
        else:
            self._need_odd()
            U = self.U
            m = tensor_map(LinMap.identity(U.space), tau(A.space, B.space)) @ \
                exp_nilpotent(self.omega(["U", A, B], 0, 0), -I * PI * Fraction(1, 2))
            if parity_fix:
                m = m @ tensor_map(LinMap.identity(tensor_space(U.space, A.space)),
                                   omega_involution(B.space))
            m = m.scale(Scalar.zeta(-self.N))
        return CMor(src, tgt, m)

    def twist(self, A: CObj) -> CMor:
        if A.sector == 0:
            m = exp_nilpotent(self.omega([A], 0, 0), -I * PI)
        else:
            self._need_odd()
            m = omega_involution(A.space).scale(exp_i_pi(Fraction(self.N, 4)))
        return CMor(A, A, m)

    def unitors(self, A: CObj) -> tuple:
        one = self.unit()
        l = CMor(self.star_obj(one, A), A, LinMap.identity(A.space))
        r = CMor(self.star_obj(A, one), A, LinMap.identity(A.space))
        return l, r

    def parity_involution(self, A: CObj) -> CMor:
        return CMor(A, A, omega_involution(A.space))

    # axiom checks
    def _compare(self, axiom, pattern, objs, lhs: LinMap, rhs: LinMap, numeric=True) -> Report:
        diff = lhs.first_difference(rhs)
        rep = Report(axiom, pattern, [o.name for o in objs], diff is None, diff)
        if numeric:
            import numpy as np
            x, y = lhs.to_numpy(), rhs.to_numpy()
            close = bool(np.allclose(x, y, atol=1e-9))
            rep.numeric_agrees = close == rep.verdict
        return rep

    def pentagon_paths(self, A, B, C, D) -> tuple:
        AB, BC, CD = self.star_obj(A, B), self.star_obj(B, C), self.star_obj(C, D)
        lhs = self.associator(AB, C, D) @ self.associator(A, B, CD)
        rhs = self.star_mor(self.associator(A, B, C), self.identity(D)) @ \
            self.associator(A, BC, D) @ \
            self.star_mor(self.identity(A), self.associator(B, C, D))
        return lhs.map, rhs.map

    def pentagon_check(self, A, B, C, D, numeric: bool = True) -> Report:
        lhs, rhs = self.pentagon_paths(A, B, C, D)
        pattern = "".join(str(o.sector) for o in (A, B, C, D))
        return self._compare("pentagon", pattern, [A, B, C, D], lhs, rhs, numeric)

    def hexagon_paths(self, A, B, C, variant: str) -> tuple:
        if variant == "H1":
            BC = self.star_obj(B, C)
            lhs = self.braiding(A, BC)
            rhs = self.associator(B, C, A) @ \
                self.star_mor(self.identity(B), self.braiding(A, C))
            a_bac = self.associator(B, A, C)
            a_inv = CMor(a_bac.tgt, a_bac.src, a_bac.map.inverse())
            rhs = rhs @ a_inv @ self.star_mor(self.braiding(A, B), self.identity(C)) @ \
                self.associator(A, B, C)
            return lhs.map, rhs.map
        if variant == "H2":
            AB = self.star_obj(A, B)
            lhs = self.associator(C, A, B) @ self.braiding(AB, C) @ self.associator(A, B, C)
            rhs = self.star_mor(self.braiding(A, C), self.identity(B)) @ \
                self.associator(A, C, B) @ \
                self.star_mor(self.identity(A), self.braiding(B, C))
            return lhs.map, rhs.map
        raise ValueError("variant must be H1 or H2")

    def hexagon_check(self, A, B, C, variant: str, numeric: bool = True) -> Report:
        lhs, rhs = self.hexagon_paths(A, B, C, variant)
        pattern = "".join(str(o.sector) for o in (A, B, C))
        return self._compare(variant, pattern, [A, B, C], lhs, rhs, numeric)

    def ribbon_check(self, A, B) -> Report:
        AB = self.star_obj(A, B)
        lhs = self.twist(AB).map
        rhs = (self.braiding(B, A) @ self.braiding(A, B)).map @ \
            self.star_mor(self.twist(A), self.twist(B)).map
        return self._compare("ribbon", f"{A.sector}{B.sector}", [A, B], lhs, rhs, False)

    def triangle_check(self, A, B) -> Report:
        one = self.unit()
        r, l = self.unitors(A)[1], self.unitors(B)[0]
        lhs = self.star_mor(r, self.identity(B)).map
        rhs = self.star_mor(self.identity(A), l).map @ self.associator(A, one, B).map
        return self._compare("triangle", f"{A.sector}{B.sector}", [A, B], lhs, rhs, False)

    def monodromy(self, A, B) -> LinMap:
        return (self.braiding(B, A) @ self.braiding(A, B)).map

    def double_braiding_probe(self, A: CObj, probes: Sequence[CObj]) -> dict:
        """Which probes B have c_{B,A} c_{A,B} != id."""
        witnesses = []
        for B in probes:
            m = self.monodromy(A, B)
            if m != LinMap.identity(m.src):
                witnesses.append(B.name)
        return {"transparent": not witnesses, "witnesses": witnesses}

    def is_morphism(self, f: CMor) -> bool:
        if f.src.sector == 0 and f.tgt.sector == 0:
            return is_intertwiner(f.map, self.as_module(f.src), self.as_module(f.tgt))
        return f.map.parity == 0


def direct_sum_of_units(cat: SFCategory, k: int) -> CObj:
    V = SuperSpace([f"1_{t}" for t in range(k)], [0] * k)
    ops = tuple(LinMap.zero(V, V, p) for p in cat.lie.parities)
    return CObj(0, V, ops, f"1^{k}")
