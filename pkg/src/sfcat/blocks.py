"""Closed-form three- and four-point ground-state blocks, their comparison
with composed vertex operators, channel asymptotics, braid continuation and
the complete elliptic integrals.

Logarithms enter formulas as :class:`LogPoly` symbols.  The same routine
therefore serves two purposes: substituting numeric values gives the block at
a point, substituting the leading parts of the logarithms gives the
asymptotic form used to pin down associators.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .category import CObj, SFCategory
from .fock import (GradedModule, LN4, UnsupportedPattern, VertexOp, induce, induce_tw,
                   logmap_to_numpy)
from .scalar import I, ONE, PI, LogPoly, Scalar, eval_entry, exp_i_pi
from .superlinear import (LinMap, SuperSpace, coev, ev, exp_nilpotent, tau, tensor_map,
                          tensor_maps, tensor_space)

PATTERNS = ("000", "001", "010", "100", "011", "101", "110", "111")


def sym(name: str) -> LogPoly:
    return LogPoly.symbol(name)


def _ln4(symbolic: bool = True):
    """ln 4 as 2T with T a formal stand-in for ln 2."""
    return LogPoly.symbol("T", coeff=Scalar(2))


def _expo(gen: LinMap, scale) -> LinMap:
    return exp_nilpotent(gen, scale)


def _unit_insert(cat: SFCategory, V: SuperSpace) -> LinMap:
    """v -> 1 (x) v : V -> U(h) (x) V."""
    U = cat.U
    one = U.index[()]
    d = V.dim
    return LinMap(V, tensor_space(U.space, V), {j: {one * d + j: ONE} for j in range(d)})


def case_of(A: CObj, B: CObj) -> str:
    return "abcd"[2 * A.sector + B.sector]


def _dual_obj(X: CObj) -> CObj:
    return CObj(1, X.space.dual(), None, X.name + "^*")


def logmap_is_zero(m: LinMap) -> bool:
    return all(not v for col in m.cols.values() for v in col.values())


def logmap_equal(a: LinMap, b: LinMap) -> bool:
    if a.src.parities != b.src.parities or a.tgt.parities != b.tgt.parities:
        return False
    return logmap_is_zero(a - b)


def logmap_substitute(m: LinMap, name: str, value: LogPoly) -> LinMap:
    cols = {}
    for j, col in m.cols.items():
        cols[j] = {i: (v.substitute(name, value) if isinstance(v, LogPoly) else v)
                   for i, v in col.items()}
    return LinMap(m.src, m.tgt, cols, m.parity, check=False)


# ---------------------------------------------------------------------------
# ground states of three-point blocks

@dataclass
class Block:
    """``prefactor`` maps a log-symbol name to a rational power: {'x': p} means x^p."""

    map: LinMap
    prefactor: dict

    def evaluate(self, values: dict) -> np.ndarray:
        m = logmap_to_numpy(self.map, values)
        scale = 1.0 + 0j
        for name, p in self.prefactor.items():
            scale *= cmath.exp(float(p) * values[name])
        return scale * m


def ground_state_form(cat: SFCategory, A: CObj, B: CObj, f: LinMap, C: CObj | None = None,
                      lnx=None, normalized: bool = True) -> Block:
    """P_gs V(f;x) on A (x) B as a log-polynomial map.

    ``lnx`` defaults to the formal symbol L.  In case d the factor
    x^{-sdim/8} is returned separately as Block.prefactor['x'] and the target
    object C (with its h-action) is needed for Omega^{(11)}.
    """
    L = sym("L") if lnx is None else lnx
    ln4 = _ln4() if normalized else LogPoly()
    case = case_of(A, B)
    half = Fraction(1, 2)
    if case == "a":
        return Block(f @ _expo(cat.omega([A, B], 0, 1), L + ln4), {})
    if case == "b":
        return Block(f @ _expo(cat.omega([A, B], 0, 0), -(L * half + ln4)), {})
    if case == "c":
        return Block(f @ _expo(cat.omega([A, B], 1, 1), -(L * half + ln4)), {})
    if C is None or C.sector:
        raise ValueError("case d needs a target object in C0")
    m = _expo(cat.omega([C], 0, 0), L * half) @ f @ _unit_insert(cat, tensor_space(A.space,
                                                                                    B.space))
    return Block(m, {"x": Fraction(-cat.lie.sdim, 8)})


def constructed_ground_form(cat: SFCategory, A: CObj, B: CObj, f: LinMap, C: CObj,
                            normalized: bool = True) -> LinMap:
    """The ground-state part of the operator Q_f E0 E+ built from Fock zero modes."""
    src = induce(A if False else B, 0, cat.lie) if B.sector == 0 else induce_tw(B, 0, cat.lie)
    tgt = induce(C, 0, cat.lie) if C.sector == 0 else induce_tw(C, 0, cat.lie)
    V = VertexOp(A, src, tgt, f, normalized)
    return V.ground_state_symbolic()


def three_point_values(cat: SFCategory) -> dict:
    """<omega*, V(x)(omega (x) omega)> and <Omega-hat*, ...> for the N=1 example.

    Uses g : Omega-hat -> omega (zero elsewhere) and the intertwiner built from
    g, without the ln 4 normalisation.  Returns LogPoly values in L = ln x.
    """
    from .modzoo import intertwiner_from_linear
    U = cat.U
    if cat.N != 1:
        raise ValueError("the example is for a single pair")
    top = U.index[(0, 1)]
    unit = U.index[()]
    # Omega-hat = -chi+ chi- = -alpha1 alpha2, so g(alpha1 alpha2) = -omega
    g = LinMap(U.space, U.space, {top: {unit: -ONE}})
    f = intertwiner_from_linear(U, g)
    R = cat.regular()
    G = constructed_ground_form(cat, R, R, f, R, normalized=False)
    col = G.cols.get(unit * U.dim + unit, {})
    zero = LogPoly()
    omega = LogPoly.lift(col.get(unit, zero))
    chi = [LogPoly.lift(col.get(U.index[(k,)], zero)) for k in (0, 1)]
    # coefficient c of alpha1 alpha2 means -c on Omega-hat
    hat = -LogPoly.lift(col.get(top, zero))
    return {"omega": omega, "chi+": chi[0], "chi-": chi[1], "Omega_hat": hat}


def ground_forms_agree(cat: SFCategory, A: CObj, B: CObj, f: LinMap, C: CObj,
                       normalized: bool = True) -> bool:
    built = constructed_ground_form(cat, A, B, f, C, normalized)
    closed = ground_state_form(cat, A, B, f, C, normalized=normalized)
    return logmap_equal(built, closed.map)


# ---------------------------------------------------------------------------
# Table 1

def _log_symbols() -> dict:
    """Formal symbols for every logarithm appearing in the table."""
    return {k: sym(k) for k in ("lx", "l1mx", "l010", "lsq", "l4", "kappa")}


def log_values(x: float) -> dict:
    """Numeric values of the table's logarithms at 0 < x < 1 (principal branches)."""
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    s, t = math.sqrt(x), math.sqrt(1 - x)
    K, Kp = elliptic_K(x), elliptic_K(1 - x)
    return {
        "lx": math.log(x),
        "l1mx": math.log(1 - x),
        # continuous from l(0) = 0; the argument stays in (-pi, 0] on (0, 1)
        "l010": cmath.log((t - 1j * s) / (t + 1j * s)),
        "lsq": math.log((1 - s) / (1 + s)),
        "l4": math.log(4 * (1 - t) / (1 + t)),
        "kappa": -math.pi / 2 * Kp / K,
        "T": math.log(2.0),
        "L": math.log(x),
        "x": math.log(x),
        "1mx": math.log(1 - x),
        "twoK": math.log(2 * K / math.pi),
    }


def table1_closed_form(cat: SFCategory, pattern: str, A: CObj, B: CObj, C: CObj, f: LinMap,
                       g: LinMap, D: CObj | None = None, P: CObj | None = None,
                       logs: dict | None = None) -> Block:
    """The composed ground-state block P_gs V(f;1)(id (x) V(g;x)) on A (x) B (x) C.

    ``f : A*P -> D`` and ``g : B*C -> P`` are maps on carriers, with
    P = B*C and D = A*P unless given.  ``logs`` maps the names of
    :func:`_log_symbols` to LogPoly values (default: the formal symbols).
    Prefactors are returned as powers of x, 1-x and 2K(x)/pi.
    """
    if pattern not in PATTERNS:
        raise UnsupportedPattern(pattern)
    if "".join(str(o.sector) for o in (A, B, C)) != pattern:
        raise ValueError("objects do not match the pattern")
    lg = _log_symbols() if logs is None else logs
    ln4 = _ln4()
    half = Fraction(1, 2)
    P = P or cat.star_obj(B, C)
    D = D or cat.star_obj(A, P)
    om = cat.omega
    sd = cat.lie.sdim
    idA = LinMap.identity(A.space)
    if pattern in ("000", "001", "010", "100"):
        objs = [A, B, C]
        if pattern == "000":
            gen = om(objs, 0, 1).scale(lg["l1mx"] + ln4) + om(objs, 1, 2).scale(lg["lx"] + ln4) \
                + om(objs, 0, 2).scale(ln4)
        elif pattern == "001":
            gen = om(objs, 1, 1).scale(-(lg["lx"] * half + ln4)) + om(objs, 0, 1).scale(lg["lsq"]) \
                - om(objs, 0, 0).scale(ln4)
        elif pattern == "010":
            gen = om(objs, 0, 0).scale(-(lg["l1mx"] * half + ln4)) \
                + om(objs, 2, 2).scale(-(lg["lx"] * half + ln4)) + om(objs, 0, 2).scale(lg["l010"])
        else:
            gen = om(objs, 1, 1).scale(-(lg["l1mx"] * half + ln4)) \
                + om(objs, 1, 2).scale(lg["l4"] - ln4) - om(objs, 2, 2).scale(ln4)
        m = f @ tensor_map(idA, g) @ _expo(gen, ONE)
        return Block(m, {})
    if pattern == "011":
        objs = [A, P]
        gen = om(objs, 0, 0).scale(lg["lx"] * half + (lg["lx"] - lg["l1mx"]) * half - lg["l4"]) \
            + om(objs, 0, 1).scale(lg["lx"] - lg["l4"] + ln4) + om(objs, 1, 1).scale(lg["lx"] * half)
        inner = g @ _unit_insert(cat, tensor_space(B.space, C.space))
        m = f @ _expo(gen, ONE) @ tensor_map(idA, inner)
        return Block(m, {"x": Fraction(-sd, 8)})
    if pattern == "111":
        objs = [A, P]
        gen = om(objs, 1, 1).scale(lg["kappa"] + ln4 - ln4)
        inner = g @ _unit_insert(cat, tensor_space(B.space, C.space))
        m = f @ _expo(gen, ONE) @ tensor_map(idA, inner)
        return Block(m, {"x": Fraction(-sd, 8), "1mx": Fraction(-sd, 8),
                         "twoK": Fraction(-sd, 2)})
    fU = f @ _unit_insert(cat, tensor_space(A.space, P.space))
    left = fU @ tensor_map(idA, g)          # A (x) B (x) C -> D
    if pattern == "101":
        Bs = _dual_obj(B)
        objs = [D, Bs, B]
        gen = om(objs, 0, 2).scale(lg["l010"]) \
            + om(objs, 2, 2).scale(-((lg["lx"] + lg["l1mx"]) * half) - ln4)
        sling = tensor_maps(tau(C.space, B.space), LinMap.identity(tensor_space(B.space.dual(),
                                                                                 B.space))) @ \
            tensor_maps(LinMap.identity(C.space), coev(B.space), LinMap.identity(B.space)) @ \
            tau(B.space, C.space)
        prep = tensor_map(idA, sling)
        body = tensor_map(left, LinMap.identity(tensor_space(B.space.dual(), B.space)))
        m = tensor_map(LinMap.identity(D.space), ev(B.space)) @ _expo(gen, ONE) @ body @ prep
        return Block(m, {})
    # 110
    Cs = _dual_obj(C)
    objs = [D, Cs, C]
    gen = om(objs, 0, 0).scale(lg["l1mx"] * half) \
        + om(objs, 2, 2).scale((lg["l1mx"] - lg["lx"]) * half - ln4) \
        - om(objs, 0, 2).scale(lg["lsq"])
    prep = tensor_maps(idA, LinMap.identity(B.space), coev(C.space), LinMap.identity(C.space))
    body = tensor_map(left, LinMap.identity(tensor_space(C.space.dual(), C.space)))
    m = tensor_map(LinMap.identity(D.space), ev(C.space)) @ _expo(gen, ONE) @ body @ prep
    return Block(m, {"1mx": Fraction(-sd, 8)})


def table1_numeric(cat: SFCategory, pattern: str, A, B, C, f, g, x: float, **kw) -> np.ndarray:
    blk = table1_closed_form(cat, pattern, A, B, C, f, g, **kw)
    vals = log_values(x)
    vals["x"], vals["1mx"] = vals["lx"], vals["l1mx"]
    return blk.evaluate(vals)


# ---------------------------------------------------------------------------
# composition of constructed vertex operators

def _vo(cat: SFCategory, A: CObj, B: CObj, C: CObj, f: LinMap, M: int) -> VertexOp:
    lie = cat.lie
    if B.sector == 0:
        src, tgt = induce(B, M, lie, True), induce(C, M, lie, True)
    else:
        src, tgt = induce_tw(B, M, lie, True), induce_tw(C, M, lie, True)
    return VertexOp(A, src, tgt, f)


def compose_blocks(cat: SFCategory, pattern: str, A: CObj, B: CObj, C: CObj, f: LinMap,
                   g: LinMap, x: float, M: int, P: CObj | None = None,
                   D: CObj | None = None) -> np.ndarray:
    """P_gs V(f;1)(id_A (x) V(g;x)) on A (x) B (x) C, summed through Ind(P) up to grade M."""
    if pattern not in ("000", "001"):
        raise UnsupportedPattern("only patterns 000 and 001 have constructed vertex operators")
    if "".join(str(o.sector) for o in (A, B, C)) != pattern:
        raise ValueError("objects do not match the pattern")
    P = P or cat.star_obj(B, C)
    D = D or cat.star_obj(A, P)
    inner = _vo(cat, B, C, P, g, M)
    outer = _vo(cat, A, P, D, f, M)
    dA, dB, dC = A.dim, B.dim, C.dim
    out = np.zeros((D.dim, dA * dB * dC), dtype=complex)
    for b in range(dB):
        for c in range(dC):
            w = inner(x, {(b, (), c): 1.0 + 0j})
            for a in range(dA):
                vec = {(a, mono, p): v for (mono, p), v in w.items()}
                res = outer(1.0, vec, ground_only=True)
                col = (a * dB + b) * dC + c
                for (mono, d), v in res.items():
                    out[d, col] += v
    return out


def composition_residuals(cat: SFCategory, pattern: str, A, B, C, f, g, x: float,
                          cutoffs=(12, 16), **kw) -> dict:
    """Max deviation from the closed form at each cutoff plus the shrink ratio."""
    ref = table1_numeric(cat, pattern, A, B, C, f, g, x, **{k: v for k, v in kw.items()
                                                            if k in ("P", "D")})
    res = {}
    for M in cutoffs:
        got = compose_blocks(cat, pattern, A, B, C, f, g, x, M, **kw)
        res[M] = float(np.abs(got - ref).max())
    lo, hi = res[cutoffs[0]], res[cutoffs[-1]]
    ratio = math.inf if hi == 0 else lo / hi
    return {"residuals": res, "shrink": ratio, "scale": float(np.abs(ref).max())}


# ---------------------------------------------------------------------------
# channel asymptotics

def _crossed_logs() -> dict:
    """Leading parts at x = 1 - eps with L = ln eps."""
    L = sym("L")
    T = LogPoly.symbol("T")
    return {
        "lx": LogPoly(),
        "l1mx": L,
        "l010": LogPoly.const(-I * PI),
        "lsq": L - T * 2,
        "l4": T * 2,
    }


def _eps_power(block: Block, at_one_minus: bool) -> Fraction:
    """Leading eps-power of a Block evaluated at x = eps or x = 1 - eps."""
    p = Fraction(0)
    for name, e in block.prefactor.items():
        if name == "x" and not at_one_minus:
            p += e
        if name == "1mx" and at_one_minus:
            p += e
    return p


def crossed_channel(cat: SFCategory, A: CObj, B: CObj, C: CObj) -> tuple:
    """C(eps) = GS(id; 1-eps) o (GS(id; eps) (x) id_C), leading part, and its eps-power."""
    AB = cat.star_obj(A, B)
    ABC = cat.star_obj(AB, C)
    L = sym("L")
    first = ground_state_form(cat, A, B, LinMap.identity(AB.space), AB, lnx=L)
    second = ground_state_form(cat, AB, C, LinMap.identity(ABC.space), ABC, lnx=LogPoly())
    m = second.map @ tensor_map(first.map, LinMap.identity(C.space))
    return m, _eps_power(first, False) + _eps_power(second, True)


def direct_channel(cat: SFCategory, A: CObj, B: CObj, C: CObj, alpha: LinMap) -> tuple:
    BC = cat.star_obj(B, C)
    D = cat.star_obj(cat.star_obj(A, B), C)
    pattern = f"{A.sector}{B.sector}{C.sector}"
    blk = table1_closed_form(cat, pattern, A, B, C, alpha, LinMap.identity(BC.space), D=D,
                             P=BC, logs=_crossed_logs())
    return blk.map, _eps_power(blk, True)


@dataclass
class ChannelReport:
    pattern: str
    objects: list
    verdict: bool
    detail: str = ""
    mutation_detected: bool | None = None

    def to_json(self) -> dict:
        out = {"pattern": self.pattern, "objects": self.objects,
               "verdict": "pass" if self.verdict else "fail"}
        if self.detail:
            out["detail"] = self.detail
        if self.mutation_detected is not None:
            out["mutation_detected"] = self.mutation_detected
        return out


def _channels_match(cat, A, B, C, alpha) -> bool:
    cm, cp = crossed_channel(cat, A, B, C)
    dm, dp = direct_channel(cat, A, B, C, alpha)
    return cp == dp and logmap_equal(cm, dm)


def mutate_entry(m: LinMap, i: int, j: int, delta=ONE) -> LinMap:
    cols = {k: dict(v) for k, v in m.cols.items()}
    col = cols.setdefault(j, {})
    col[i] = col.get(i, Scalar(0)) + delta
    return LinMap(m.src, m.tgt, cols, m.parity, check=False)


def _mutations(alpha: LinMap, limit: int | None = None) -> list:
    """Single-entry changes that keep the map even: every existing entry and,
    for each column, one parity-compatible zero slot."""
    out = []
    for j, col in alpha.cols.items():
        for i in col:
            out.append((i, j))
    sp, tp = alpha.src.parities, alpha.tgt.parities
    for j in range(alpha.src.dim):
        for i in range(alpha.tgt.dim):
            if sp[j] == tp[i] and i not in alpha.cols.get(j, {}):
                out.append((i, j))
                break
    return out if limit is None else out[:limit]


def channel_asymptotics_check(cat: SFCategory, pattern: str, A: CObj, B: CObj, C: CObj,
                              mutations: bool = True) -> ChannelReport:
    """Leading crossed and direct channels agree with the category's associator;
    every single-entry mutation of the associator is detected."""
    names = [A.name, B.name, C.name]
    if pattern == "111":
        return _check_111(cat, A, B, C, mutations)
    alpha = cat.associator(A, B, C).map
    ok = _channels_match(cat, A, B, C, alpha)
    detected = None
    if mutations:
        detected = True
        for i, j in _mutations(alpha):
            bad = mutate_entry(alpha, i, j)
            if _channels_match(cat, A, B, C, bad) and _is_intertwiner_like(cat, A, B, C, bad):
                detected = False
                break
    return ChannelReport(pattern, names, ok, mutation_detected=detected)


def _is_intertwiner_like(cat, A, B, C, alpha) -> bool:
    """For targets in C0 the associator must commute with the h-action."""
    src = cat.star_obj(A, cat.star_obj(B, C))
    tgt = cat.star_obj(cat.star_obj(A, B), C)
    if src.sector:
        return True
    return all(alpha @ a == b @ alpha for a, b in zip(src.ops, tgt.ops))


# --- case 111

def _u_left(cat: SFCategory, word: tuple) -> LinMap:
    U = cat.U
    return U.left_mult({word: ONE})


def _omega_elem_map(cat: SFCategory) -> LinMap:
    """Left multiplication by the element Omega^{(11)} = -2 sum a^{2m-1} a^{2m}."""
    return cat.U.left_mult(cat.U.omega11_element())


def _tables(cat: SFCategory) -> dict:
    """Per-factor tables C_m, D_m, phi_m with L the formal symbol 1/2 ln(eps/16)."""
    L = sym("L")
    return {
        "C": {(): [((), LogPoly.const(1)), ((0, 1), L * -2)],
              (0,): [((0,), LogPoly.const(1))],
              (1,): [((1,), LogPoly.const(1))],
              (0, 1): [((0, 1), LogPoly.const(1))]},
        "D": {(): [((), L * (Scalar(-2) / PI)), ((0, 1), LogPoly.const(PI))],
              (0,): [((0,), LogPoly.const(I))],
              (1,): [((1,), LogPoly.const(I))],
              (0, 1): [((), LogPoly.const(ONE / PI))]},
        "phi": {(): [((0, 1), PI)], (0,): [((0,), -I)], (1,): [((1,), -I)],
                (0, 1): [((), ONE / PI)]},
    }


def _factor_words(N: int):
    from itertools import product
    return list(product([(), (0,), (1,), (0, 1)], repeat=N))


def _shift(word: tuple, m: int) -> tuple:
    return tuple(2 * m + k for k in word)


def _product_elem(cat, factors: list) -> dict:
    """Product over m of sum_t c_t * word_t (already shifted), as {word: coeff}."""
    U = cat.U
    acc = {(): LogPoly.const(1)}
    for terms in factors:
        new: dict = {}
        for w1, c1 in acc.items():
            for w2, c2 in terms:
                r = U.mul_words(w1, w2)
                if r is None:
                    continue
                sign, w = r
                c = LogPoly.lift(c1) * LogPoly.lift(c2)
                if sign < 0:
                    c = -c
                new[w] = new.get(w, LogPoly()) + c
        acc = {w: c for w, c in new.items() if c}
    return acc


def _elem_to_vec(cat, elem: dict) -> dict:
    return {cat.U.index[w]: c for w, c in elem.items() if c}


def descendant_direct(cat: SFCategory, word: tuple) -> dict:
    """d(p) in U(h) with D(p) ~ alpha o (id (x) d(p) (x) id), p = a^{w1}_{1/2}...a^{wn}_{1/2}.

    Built from the recursion in the descendant index and the q-dependence of
    D(1, q); the eps-power is dropped.  Coefficients are LogPoly in L.
    """
    U = cat.U
    lie = cat.lie
    L = sym("L")
    invL = LogPoly.symbol("L", -1)
    half_ipi = I * PI * Fraction(1, 2)

    memo: dict = {}

    def R(p: tuple) -> LinMap:
        # D(p, q) = D(1, R_p(q))
        if p in memo:
            return memo[p]
        if not p:
            out = LinMap.identity(U.space)
        else:
            *rest, a = p
            rest = tuple(rest)
            out = (R(rest) @ U.left_mult({(a,): ONE}, 1)).scale(half_ipi)
            n = len(rest)
            for j, b in enumerate(rest):
                g = lie.gram[b][a]
                if not g:
                    continue
                coeff = Fraction(1, 2) * (-1 if (n - 1 - j) % 2 else 1)
                out = out + R(rest[:j] + rest[j + 1:]).scale(g * coeff)
            out = out.scale(-invL)
        memo[p] = out
        return out

    N = cat.N
    base = exp_nilpotent(U.left_mult(U.omega11_element()), (LogPoly.const(PI * PI) * invL)
                         * Fraction(1, 4))
    pref = (L * (Scalar(-2) / PI)) ** N
    vec = (base @ R(tuple(word))).apply({U.index[()]: ONE})
    return {U.words[i]: LogPoly.lift(c) * pref for i, c in vec.items() if c}


def descendant_crossed(cat: SFCategory, word: tuple) -> dict:
    """exp(L Omega) . pbar with pbar the product of the generators in ``word``."""
    U = cat.U
    E = exp_nilpotent(U.left_mult(U.omega11_element()), sym("L"))
    elem = {(): ONE}
    for a in word:
        elem = U.product(elem, {(a,): ONE})
    vec = E.apply(U.to_vector(elem))
    return {U.words[i]: LogPoly.lift(c) for i, c in vec.items() if c}


def _elem_equal(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(not (LogPoly.lift(a.get(k, LogPoly())) - LogPoly.lift(b.get(k, LogPoly())))
               for k in keys)


def _apply_alpha_elem(cat, A, B, C, alpha: LinMap, elem: dict, parity: int) -> dict:
    """alpha o (id_A (x) q (x) id_{BC}) applied to the first basis vectors of A, B, C.

    ``q`` is left multiplication by the homogeneous element ``elem`` acting on
    the unit, so passing it by the vector of A costs (-1)^{|q||a|}.
    """
    U = cat.U
    dU, dB, dC = U.dim, B.dim, C.dim
    sign = -1 if parity and A.space.parities[0] else 1
    vec = {((0 * dU + U.index[w]) * dB) * dC: c * sign for w, c in elem.items()}
    out: dict = {}
    for j, c in vec.items():
        for t, v in alpha.cols.get(j, {}).items():
            out[t] = LogPoly.lift(out.get(t, LogPoly())) + LogPoly.lift(c) * LogPoly.lift(v)
    return {t: c for t, c in out.items() if c}


def _crossed_vector(cat, A, B, C, elem: dict) -> dict:
    """elem (x) a0 (x) b0 (x) c0 in U(h) (x) A (x) B (x) C."""
    dABC = A.dim * B.dim * C.dim
    return {cat.U.index[w] * dABC: LogPoly.lift(c) for w, c in elem.items() if c}


def _vec_equal(a: dict, b: dict) -> bool:
    return all(not (LogPoly.lift(a.get(k, LogPoly())) - LogPoly.lift(b.get(k, LogPoly())))
               for k in set(a) | set(b))


def _ground_conditions_111(cat: SFCategory, alpha: LinMap, A, B, C) -> bool:
    """alpha o (Omega22)^k o (id (x) 1 (x) id) = (-1)^N (pi/2)^{N-2k} k!/(N-k)! (Omega11)^{N-k} o (1 (x) id)."""
    N = cat.N
    U = cat.U
    BC = tensor_space(B.space, C.space)
    P = cat.star_obj(B, C)
    om22 = cat.omega([A, P], 1, 1)
    ins_d = tensor_map(LinMap.identity(A.space), _unit_insert(cat, BC))
    tgt_obj = cat.star_obj(cat.star_obj(A, B), C)
    ins_c = _unit_insert(cat, tensor_space(A.space, BC))
    om11 = tensor_map(_omega_elem_map(cat), LinMap.identity(tensor_space(A.space, BC)))
    del tgt_obj
    for k in range(N + 1):
        lhs = alpha @ om22.power(k) @ ins_d
        c = Scalar(-1) ** N * (PI * Fraction(1, 2)) ** (N - 2 * k) * \
            Fraction(math.factorial(k), math.factorial(N - k))
        rhs = (om11.power(N - k) @ ins_c).scale(c)
        if not logmap_equal(lhs, rhs):
            return False
    del U
    return True


def _tables_consistent(cat: SFCategory, alpha: LinMap, A, B, C) -> tuple:
    """(tables reproduce d(p) and C(p); alpha matches the tables) over all monomials."""
    N = cat.N
    tabs = _tables(cat)
    ok_tables, ok_alpha, ok_phi = True, True, True
    for xs in _factor_words(N):
        word = tuple(k for m, w in enumerate(xs) for k in _shift(w, m))
        d = descendant_direct(cat, word)
        c = descendant_crossed(cat, word)
        d_tab = _product_elem(cat, [[(_shift(w, m), c_) for w, c_ in tabs["D"][xs[m]]]
                                    for m in range(N)])
        c_tab = _product_elem(cat, [[(_shift(w, m), c_) for w, c_ in tabs["C"][xs[m]]]
                                    for m in range(N)])
        phi_tab = _product_elem(cat, [[(_shift(w, m), c_) for w, c_ in tabs["phi"][xs[m]]]
                                      for m in range(N)])
        if not (_elem_equal(d, d_tab) and _elem_equal(c, c_tab)):
            ok_tables = False
        par = len(word) % 2
        if not _vec_equal(_apply_alpha_elem(cat, A, B, C, alpha, d, par),
                          _crossed_vector(cat, A, B, C, c)):
            ok_alpha = False
        pbar = _product_elem(cat, [[(_shift(w, m), LogPoly.const(1))] for m, w in enumerate(xs)])
        if not _vec_equal(_apply_alpha_elem(cat, A, B, C, alpha, pbar, par),
                          _crossed_vector(cat, A, B, C, phi_tab)):
            ok_phi = False
    return ok_tables, ok_alpha, ok_phi


def _check_111(cat: SFCategory, A, B, C, mutations: bool) -> ChannelReport:
    alpha = cat.associator(A, B, C).map
    g_ok = _ground_conditions_111(cat, alpha, A, B, C)
    t_ok, a_ok, p_ok = _tables_consistent(cat, alpha, A, B, C)
    ok = g_ok and t_ok and a_ok and p_ok
    detected = None
    if mutations:
        detected = True
        for i, j in _mutations(alpha):
            bad = mutate_entry(alpha, i, j)
            still = _ground_conditions_111(cat, bad, A, B, C) and \
                all(_tables_consistent(cat, bad, A, B, C)[1:])
            if still:
                detected = False
                break
    detail = f"ground={g_ok} tables={t_ok} alpha={a_ok} phi={p_ok}"
    return ChannelReport("111", [A.name, B.name, C.name], ok, detail, detected)


# ---------------------------------------------------------------------------
# braid continuation

def braid_inverse(cat: SFCategory, A: CObj, B: CObj) -> LinMap:
    """Inverse of the analytic-continuation map c~_{A,B} : A*B -> B*A."""
    return cat.braiding(A, B, parity_fix=False).map.inverse()


def braid_continuation_check(cat: SFCategory, A: CObj, B: CObj, f: LinMap,
                             C: CObj | None = None) -> bool:
    """GS(f; l + i pi) = GS(f o c~^{-1}; l) o tau_{A,B} as log-polynomials in l."""
    l = sym("l")
    lhs = ground_state_form(cat, A, B, f, C, lnx=l + I * PI)
    rhs = ground_state_form(cat, B, A, f @ braid_inverse(cat, A, B), C, lnx=l)
    left = lhs.map
    p = lhs.prefactor.get("x", Fraction(0))
    if p:
        left = left.scale(exp_i_pi(p))
    if lhs.prefactor != rhs.prefactor:
        return False
    return logmap_equal(left, rhs.map @ tau(A.space, B.space))


# ---------------------------------------------------------------------------
# elliptic integrals

def _agm(a: float, b: float) -> tuple:
    """AGM with the c_n sequence used for E."""
    cs = []
    for _ in range(64):
        if abs(a - b) <= 1e-16 * abs(a):
            break
        a, b, c = (a + b) / 2, math.sqrt(a * b), (a - b) / 2
        cs.append(c)
    return a, cs


def elliptic_K(x: float) -> float:
    """K(x) = int_0^1 dt / sqrt((1-t^2)(1-x t^2)) (parameter convention)."""
    if not 0 <= x < 1:
        raise ValueError("elliptic_K needs 0 <= x < 1")
    a, _ = _agm(1.0, math.sqrt(1.0 - x))
    return math.pi / (2.0 * a)


def elliptic_E(x: float) -> float:
    """E(x) = int_0^1 sqrt(1 - x t^2) / sqrt(1 - t^2) dt."""
    if not 0 <= x <= 1:
        raise ValueError("elliptic_E needs 0 <= x <= 1")
    if x == 1:
        return 1.0
    a, cs = _agm(1.0, math.sqrt(1.0 - x))
    s = x / 2
    for n, c in enumerate(cs, start=1):
        s += 2 ** (n - 1) * c * c
    return math.pi / (2.0 * a) * (1.0 - s)


def legendre_residual(x: float) -> float:
    K, Kp = elliptic_K(x), elliptic_K(1 - x)
    E, Ep = elliptic_E(x), elliptic_E(1 - x)
    return abs(E * Kp + Ep * K - K * Kp - math.pi / 2)


def nome(x: float) -> float:
    return math.exp(-math.pi * elliptic_K(1 - x) / elliptic_K(x))


def nome_series(x: float, order: int = 2) -> float:
    coeffs = [1, 8, 84, 992, 10258]
    r = x / 16
    return sum(c * r ** (k + 1) for k, c in enumerate(coeffs[:order]))


def k_asymptotics(x: float) -> dict:
    """Residuals of the small-x expansions of K(x) and K(1-x)."""
    K, Kp = elliptic_K(x), elliptic_K(1 - x)
    near0 = K - math.pi / 2 * (1 + x / 4)
    near1 = Kp - (-0.5 * math.log(x / 16) * (1 + x / 4) - x / 4)
    return {"K": near0, "K1m": near1, "K_over_x2": near0 / x ** 2,
            "K1m_over": near1 / (x * x * abs(math.log(x)))}


def row111_span_residual(cat: SFCategory, xs=(0.1, 0.25, 0.4, 0.6, 0.85)) -> float:
    """Largest relative least-squares residual of the N=1 row-111 block entries
    against span{(x(1-x))^{1/4} K(x), (x(1-x))^{1/4} K(1-x)}."""
    if cat.N != 1:
        raise ValueError("the span statement is for a single pair")
    Tt = cat.T()
    P = cat.star_obj(Tt, Tt)
    D = cat.star_obj(Tt, P)
    f = LinMap.identity(D.space)
    g = LinMap.identity(P.space)
    mats = [table1_numeric(cat, "111", Tt, Tt, Tt, f, g, x) for x in xs]
    basis = np.array([[(x * (1 - x)) ** 0.25 * elliptic_K(x),
                       (x * (1 - x)) ** 0.25 * elliptic_K(1 - x)] for x in xs])
    worst = 0.0
    for idx in np.ndindex(mats[0].shape):
        vals = np.array([m[idx] for m in mats])
        if np.abs(vals).max() == 0:
            continue
        coef, *_ = np.linalg.lstsq(basis.astype(complex), vals, rcond=None)
        res = np.abs(basis @ coef - vals).max() / np.abs(vals).max()
        worst = max(worst, float(res))
    return worst


def free_boson_row111_ratio(p: float, xs=(0.2, 0.35, 0.5, 0.7)) -> list:
    """Row 111 for h = C^{1|0} with Omega^{(22)} acting as p^2 on an internal C_p,
    divided by (x(1-x))^{-1/8} K(x)^{-1/2} q(x)^{p^2/2}; constant in x."""
    out = []
    for x in xs:
        K = elliptic_K(x)
        kappa = -math.pi / 2 * elliptic_K(1 - x) / K
        block = (x * (1 - x)) ** (-1 / 8) * (2 * K / math.pi) ** (-1 / 2) * math.exp(kappa * p * p)
        ref = (x * (1 - x)) ** (-1 / 8) * K ** (-1 / 2) * nome(x) ** (p * p / 2)
        out.append(block / ref)
    return out
