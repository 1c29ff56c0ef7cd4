"""The algebra on U(h) obtained as the internal End of T, and its OPE.

The multiplication is mu(a (x) b) = sum a_(1) lambda(S(a_(2)) b), with unit
the integral Lambda.  Rescaling by (-pi)^N / N! moves the unit to
Omega-hat = L0^N omega.  All logarithms are formal: ``l`` = ln x and
``T`` = ln 2, so ln 4 = 2T.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .blocks import _dual_obj, ground_state_form
from .category import CMor, CObj, SFCategory
from .fock import ground_L0, induce
from .liealg import UEnv
from .report import CheckRecord
from .scalar import ONE, PI, ZERO, LogPoly, Scalar
from .superlinear import LinMap, tensor_map, tensor_space

LOG_X = "l"
LOG_2 = "T"


def mu_map(U: UEnv) -> LinMap:
    """(id (x) lambda m)(id (x) S (x) id)(Delta (x) id) : U (x) U -> U."""
    d = U.dim
    cols: dict = {}
    for ia, a in enumerate(U.words):
        delta = U.coproduct_word(a)
        for ib, b in enumerate(U.words):
            img: dict = {}
            for (a1, a2), c in delta.items():
                r = U.mul_words(a2, b)
                if r is None or r[1] != U.top:
                    continue
                sign = r[0] * (-1 if len(a2) & 1 else 1)
                val = U.cointegral({U.top: ONE}) * c
                k = U.index[a1]
                img[k] = img.get(k, ZERO) + (val if sign > 0 else -val)
            img = {k: v for k, v in img.items() if v}
            if img:
                cols[ia * d + ib] = img
    return LinMap(tensor_space(U.space, U.space), U.space, cols)


def hat_scale(N: int) -> Scalar:
    return (-PI) ** N * Fraction(1, factorial(N))


def mu(cat: SFCategory) -> CMor:
    R = cat.regular()
    return CMor(cat.star_obj(R, R), R, mu_map(cat.U))


def mu_hat(cat: SFCategory) -> CMor:
    m = mu(cat)
    return CMor(m.src, m.tgt, m.map.scale(hat_scale(cat.N)))


def omega_hat(cat: SFCategory) -> dict:
    """L0^N omega as an element of U(h), with omega = 1."""
    L0 = ground_L0(induce(cat.regular(), 0, cat.lie))
    vec = L0.power(cat.N).cols.get(cat.U.index[()], {})
    return cat.U.from_vector(vec)


def _apply2(m: LinMap, U: UEnv, a: dict, b: dict) -> dict:
    d = U.dim
    vec = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            k = U.index[wa] * d + U.index[wb]
            vec[k] = vec.get(k, ZERO) + ca * cb
    return U.from_vector(m.apply(vec))


def product(cat: SFCategory, a: dict, b: dict, hat: bool = True) -> dict:
    m = mu_hat(cat) if hat else mu(cat)
    return _apply2(m.map, cat.U, a, b)


# ---------------------------------------------------------------------------
# structural checks

def _basis_elements(U: UEnv) -> list:
    return [{w: ONE} for w in U.words]


def unit_check(cat: SFCategory, hat: bool = False) -> CheckRecord:
    U = cat.U
    unit = omega_hat(cat) if hat else U.integral()
    bad = []
    for x in _basis_elements(U):
        if product(cat, x, unit, hat) != x:
            bad.append(("right", next(iter(x))))
        if product(cat, unit, x, hat) != x:
            bad.append(("left", next(iter(x))))
    name = "unit-hat" if hat else "unit"
    return CheckRecord(name, "internal-end-unit", {"N": cat.N}, not bad, float(len(bad)),
                       {"failures": [str(b) for b in bad]})


def associativity_check(cat: SFCategory) -> CheckRecord:
    """mu (mu (x) id) = mu (id (x) mu) on U^{(x)3}; the associator 000 is the identity."""
    m = mu_map(cat.U)
    I = LinMap.identity(cat.U.space)
    lhs = m @ tensor_map(m, I)
    rhs = m @ tensor_map(I, m)
    diff = lhs.first_difference(rhs)
    return CheckRecord("associativity", "internal-end-associative", {"N": cat.N},
                       diff is None, 0.0 if diff is None else 1.0,
                       {"witness": None if diff is None else [diff[0], diff[1]]})


def intertwiner_check(cat: SFCategory) -> CheckRecord:
    m = mu(cat)
    ok = m.map.parity == 0 and cat.is_morphism(m)
    return CheckRecord("mu-intertwiner", "internal-end-morphism", {"N": cat.N}, ok)


def ev_T(cat: SFCategory, T: CObj, Tdual: CObj) -> CMor:
    """ev(u (x) phi (x) z) = eps(u) phi(z) : T* * T -> 1, for one-dimensional T."""
    U = cat.U
    src = cat.star_obj(Tdual, T)
    one = cat.unit()
    cols = {U.index[()] * Tdual.dim * T.dim: {0: ONE}}
    return CMor(src, one, LinMap(src.space, one.space, cols))


def internal_end_composite(cat: SFCategory) -> LinMap:
    """The product on T * T* assembled from associators and ev_T.

    With T even and one dimensional every identification U(h) = T * T* and
    1 * T* = T* is the identity on flattened indices.
    """
    T = cat.T()
    Td = _dual_obj(T)
    TTd = cat.star_obj(T, Td)
    a1 = cat.associator(T, Td, TTd)
    step1 = a1.map.inverse()
    step2 = cat.star_mor(cat.identity(T), cat.associator(Td, T, Td)).map
    step3 = cat.star_mor(cat.identity(T), cat.star_mor(ev_T(cat, T, Td), cat.identity(Td))).map
    full = step3 @ step2 @ step1
    U = cat.U
    UU = tensor_space(U.space, U.space)
    return LinMap(UU, U.space, {j: dict(c) for j, c in full.cols.items()}, full.parity)


def composite_check(cat: SFCategory) -> CheckRecord:
    comp = internal_end_composite(cat)
    direct = mu_map(cat.U)
    diff = comp.first_difference(direct)
    return CheckRecord("mu-composite", "internal-end-composite", {"N": cat.N}, diff is None,
                       0.0 if diff is None else 1.0,
                       {"witness": None if diff is None else [diff[0], diff[1],
                                                              diff[2].to_text(),
                                                              diff[3].to_text()]})


def rescaling_isomorphism_check(cat: SFCategory) -> CheckRecord:
    """psi = c id with c = (-pi)^N/N! satisfies psi mu_hat = mu (psi (x) psi), psi(Omega-hat) = Lambda."""
    U = cat.U
    c = hat_scale(cat.N)
    psi = LinMap.identity(U.space).scale(c)
    lhs = psi @ mu_hat(cat).map
    rhs = mu_map(U) @ tensor_map(psi, psi)
    unit_ok = {w: c * v for w, v in omega_hat(cat).items()} == U.integral()
    ok = lhs == rhs and unit_ok and psi.inverse() @ psi == LinMap.identity(U.space)
    return CheckRecord("mu-hat-isomorphism", "rescaled-algebra", {"N": cat.N}, ok)


def structure_constants(cat: SFCategory) -> dict:
    """mu_hat on all pairs of basis words, as text (basis omega, chi's, ...)."""
    U = cat.U
    label = {w: "".join(map(str, lab)) if isinstance(lab, tuple) else str(lab)
             for w, lab in zip(U.words, U.space.labels)}
    out = {}
    for a in U.words:
        for b in U.words:
            img = product(cat, {a: ONE}, {b: ONE})
            out[f"{label[a]}|{label[b]}"] = {label[w]: v.to_text() for w, v in img.items()}
    return out


def structure_constants_named(cat: SFCategory) -> dict:
    """N=1 constants in the basis {omega, chi+ omega, chi- omega, Omega-hat}."""
    if cat.N != 1:
        raise ValueError("the named basis is for a single pair")
    U = cat.U
    Oh = omega_hat(cat)
    basis = {"omega": U.unit(), "chi+omega": {(0,): ONE}, "chi-omega": {(1,): ONE},
             "Omega_hat": Oh}
    inv = {"omega": (), "chi+omega": (0,), "chi-omega": (1,)}
    top_coeff = Oh[U.top]
    out = {}
    for na, a in basis.items():
        for nb, b in basis.items():
            img = product(cat, a, b)
            named = {}
            for w, v in img.items():
                if w == U.top:
                    named["Omega_hat"] = (v / top_coeff).to_text()
                else:
                    key = next(k for k, ww in inv.items() if ww == w)
                    named[key] = v.to_text()
            out[f"{na}|{nb}"] = named
    return out


# ---------------------------------------------------------------------------
# OPE

def _lx():
    return LogPoly.symbol(LOG_X)


def _ln4():
    return LogPoly.symbol(LOG_2, coeff=Scalar(2))


def ground_ope(cat: SFCategory, a: dict, b: dict) -> dict:
    """Ground-state part of V(mu_hat; x)(a (x) b) with ln x and ln 2 formal.

    Returns {word: LogPoly}.
    """
    R = cat.regular()
    blk = ground_state_form(cat, R, R, mu_hat(cat).map, lnx=_lx(), normalized=True)
    U = cat.U
    d = U.dim
    vec = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            k = U.index[wa] * d + U.index[wb]
            vec[k] = vec.get(k, LogPoly()) + LogPoly.lift(ca * cb)
    out: dict = {}
    for j, c in vec.items():
        for i, v in blk.map.cols.get(j, {}).items():
            out[i] = out.get(i, LogPoly()) + LogPoly.lift(v) * c
    return {U.words[i]: v for i, v in out.items() if v}


def mu_hat_ope(cat: SFCategory) -> dict:
    """V(mu_hat; x)(omega (x) omega) on ground states as a polynomial in L = ln(4x).

    Returns {"Omega_hat": [c0, c1, c2], "omega": [...], ...} with c_k the
    coefficient of L^k; the expansion is exact because L enters only through
    exp(L Omega12) once ln x and ln 4 are combined.
    """
    U = cat.U
    res = ground_ope(cat, U.unit(), U.unit())
    Oh = omega_hat(cat)
    top_coeff = Oh[U.top]
    Lsym = LogPoly.symbol("L")
    out: dict = {}
    for w, val in res.items():
        # ln x = L - 2T, so after substitution no T may remain
        poly = val.substitute(LOG_X, Lsym - _ln4())
        if LOG_2 in poly.symbols():
            raise ArithmeticError("ln 4 does not combine with ln x")
        name = "Omega_hat" if w == U.top else ("omega" if w == () else "".join(map(str, w)))
        scale = ONE / top_coeff if w == U.top else ONE
        deg = poly.degree("L")
        coeffs = []
        for k in range(deg + 1):
            c = poly.coefficient(L=k) if k else poly.coefficient()
            coeffs.append(c * scale)
        out[name] = coeffs
    return out


def ope_check(cat: SFCategory) -> CheckRecord:
    """N=1: coefficients of L^2 Omega_hat and L omega are -1 and -2; constant part vanishes."""
    exp = mu_hat_ope(cat)
    want = {"Omega_hat": [ZERO, ZERO, Scalar(-1)], "omega": [ZERO, Scalar(-2)]}
    got = {k: [c for c in v] for k, v in exp.items()}
    norm = {k: v + [ZERO] * (3 - len(v)) for k, v in got.items()}
    ok = set(norm) == set(want) and all(
        norm[k][:3] == (want[k] + [ZERO] * (3 - len(want[k]))) for k in want)
    return CheckRecord("om-om-ope", "boundary-ope", {"N": cat.N}, ok, None,
                       {k: [c.to_text() for c in v] for k, v in got.items()})


def _split_omega_basis(cat: SFCategory, vec: dict) -> tuple:
    """(coefficient of omega, coefficient of Omega_hat, remainder) for {word: LogPoly}."""
    U = cat.U
    a = vec.get((), LogPoly())
    b = vec.get(U.top, LogPoly()) * LogPoly.lift(ONE / omega_hat(cat)[U.top])
    rest = {w: v for w, v in vec.items() if w not in ((), U.top)}
    return a, b, rest


def gr_dictionary_check(cat: SFCategory) -> CheckRecord:
    """omega_GR = omega + ln4 Omega_hat turns the OPE into -(ln x)^2 Omega_GR - 2 ln x omega_GR.

    Both sides are polynomials in the formal symbols l = ln x and T = ln 2.
    """
    if cat.N != 1:
        raise ValueError("the dictionary is stated for a single pair")
    U = cat.U
    Oh = omega_hat(cat)
    ln4 = _ln4()
    w_gr = {(): LogPoly.const(ONE)}
    for w, v in Oh.items():
        w_gr[w] = w_gr.get(w, LogPoly()) + ln4 * LogPoly.lift(v)
    # bilinear expansion of V(w_gr (x) w_gr)
    total: dict = {}
    for wa, ca in w_gr.items():
        for wb, cb in w_gr.items():
            part = ground_ope(cat, {wa: ONE}, {wb: ONE})
            for w, v in part.items():
                total[w] = total.get(w, LogPoly()) + v * ca * cb
    a, b, rest = _split_omega_basis(cat, total)
    # a omega + b Omega_hat = a omega_GR + (b - ln4 a) Omega_GR
    coeff_wgr = a
    coeff_Ogr = b - ln4 * a
    l = _lx()
    want_wgr = l * Scalar(-2)
    want_Ogr = -(l * l)
    ok = coeff_wgr == want_wgr and coeff_Ogr == want_Ogr and not any(rest.values())
    detail = {"omega_GR": coeff_wgr.to_text(), "Omega_GR": coeff_Ogr.to_text(),
              "constant_omega_GR": coeff_wgr.coefficient().to_text(),
              "constant_Omega_GR": coeff_Ogr.coefficient().to_text()}
    return CheckRecord("gr-dictionary", "boundary-ope-dictionary", {"N": 1}, ok, None, detail)


def named_values_check(cat: SFCategory) -> CheckRecord:
    """mu_hat(omega,omega)=0, mu_hat(chi- w, chi+ w) = -omega, mu_hat(chi+ w, chi- w) = omega,
    mu_hat(Omega_hat, x) = x."""
    U = cat.U
    if cat.N != 1:
        raise ValueError("the named values are for a single pair")
    Oh = omega_hat(cat)
    checks = {
        "omega|omega": product(cat, U.unit(), U.unit()) == {},
        "chi-|chi+": product(cat, {(1,): ONE}, {(0,): ONE}) == {(): -ONE},
        "chi+|chi-": product(cat, {(0,): ONE}, {(1,): ONE}) == {(): ONE},
        "Omega_hat|x": all(product(cat, Oh, x) == x for x in _basis_elements(U)),
    }
    return CheckRecord("mu-hat-values", "boundary-ope-constants", {"N": 1},
                       all(checks.values()), None, checks)
