"""Construction of the orthogonal polynomial families: exactly via the
q-difference operator obtained by conjugating a translation with the
positive-root half density, and as a truncated Gram-style oracle from the
constant-term inner product.  Also: orthogonality verification, the
v -> 1/v coefficient symmetry, the central-character eigenvalue identity,
and connection coefficients between neighbouring levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .galg import GAElem, from_m_basis, ga_divexact, m_basis, orbit_sum
from .roots import (
    DEFAULT_D,
    RootSystem,
    SatakeEntry,
    Weight,
    ambient_data,
    ambient_pair,
    _mat_apply,
    build_root_system,
    dominance_leq,
    dominant_weights_below,
    eps,
    weyl_apply,
    weyl_group,
)
from .scalars import SC_ONE, SC_ZERO, Scalar, TruncSeries, scalar_to_series
from .weights import (
    InnerProductEngine,
    KLabel,
    PochProduct,
    half_density,
    koornwinder_weight,
    shifted_weight,
)


def dominant_weights_upto(n: int, bound: int):
    """Even-doubled dominant weights (partition points) with coordinate
    sum <= bound, ascending in the (sum, lex) extension."""
    out = []

    def rec(i, prev, budget, acc):
        if i == n:
            out.append(tuple(acc))
            return
        for c in range(0, min(prev, budget) + 1, 2):
            rec(i + 1, c, budget - c, acc + [c])

    rec(0, bound - bound % 2, bound, [])
    out.sort(key=lambda w: (sum(w), w))
    return out


# ---------------------------------------------------------------------------
# the q-difference operator
# ---------------------------------------------------------------------------

_QDIFF_CACHE = {}


def _ratio_atoms(numer: PochProduct, denom: PochProduct):
    """Collapse numer/denom into binomial atoms (sign, v_exp, weight):
    atom t stands for the factor 1 - sign*v^v_exp*e^weight."""
    q = numer * denom.reciprocal()
    finite, infinite = q.collapsed()
    if infinite:
        raise ValueError("ratio not rational")
    num_atoms, den_atoms = [], []
    for sym, m in finite:
        for j in range(sym.length):
            t = (sym.sign, sym.v_exp + j * sym.base_exp, sym.weight)
            if m > 0:
                num_atoms.extend([t] * m)
            else:
                den_atoms.extend([t] * (-m))
    return q.prefactor, num_atoms, den_atoms


def _atom_ga(atom, rank: int) -> GAElem:
    s, c, w = atom
    return GAElem.unit(rank) + GAElem.monomial(rank, w, Scalar.monomial(-s, c))


def _atom_apply_w(atom, w):
    s, c, wt = atom
    return (s, c, weyl_apply(w, wt))


def _qdiff_pieces(label: KLabel, rs: RootSystem, direction: Weight):
    """Per-direction coefficient data.  The coefficient at the image
    eta = w(direction) is a ratio of binomial products; the cofactors are
    precomputed against the factored least common denominator so that the
    final division happens binomial by binomial."""
    key = (label, rs.n, direction)
    hit = _QDIFF_CACHE.get(key)
    if hit is not None:
        return hit
    delta = half_density(label, rs)
    tdelta = delta.translate(direction, label.base_exp)
    pre, num_atoms, den_atoms = _ratio_atoms(tdelta, delta)
    groups = {}
    for w in weyl_group(rs.n):
        eta = weyl_apply(w, direction)
        if eta in groups:
            continue
        groups[eta] = (
            pre.w_apply(w),
            [_atom_apply_w(a, w) for a in num_atoms],
            [_atom_apply_w(a, w) for a in den_atoms],
        )
    stab = len(weyl_group(rs.n)) // len(groups)
    from collections import Counter
    lcm = Counter()
    for _, _, dens in groups.values():
        c = Counter(dens)
        for a, m in c.items():
            lcm[a] = max(lcm[a], m)
    cof = {}
    for eta, (pre_w, nums, dens) in groups.items():
        missing = lcm - Counter(dens)
        g = pre_w
        for a in nums:
            g = g * _atom_ga(a, rs.n)
        for a, m in missing.items():
            ga = _atom_ga(a, rs.n)
            for _ in range(m):
                g = g * ga
        cof[eta] = g
    common_atoms = list(lcm.elements())
    pieces = (cof, common_atoms, stab)
    _QDIFF_CACHE[key] = pieces
    return pieces


def apply_qdiff(label: KLabel, direction: Weight, f: GAElem,
                rs: RootSystem, check: bool = False) -> GAElem:
    """Apply the q-difference operator in the given minuscule-type
    direction to a Weyl-invariant f; exact.

    The operator is the difference form sum_w w(A * (T - 1) f): only the
    second-order normalization that kills the value at e^0 preserves
    Laurent polynomials at generic parameters, so the constant function is
    an eigenfunction with eigenvalue zero and diagonal entries carry the
    exponential Weyl sums shifted by their value at the zero weight.
    """
    if check and not f.is_invariant():
        raise ValueError("operator input must be Weyl invariant")
    cof, common_atoms, stab = _qdiff_pieces(label, rs, direction)
    acc = GAElem(rs.n)
    for eta, c in cof.items():
        acc = acc + c * (f.translate(eta, label.base_exp) - f)
    try:
        for atom in common_atoms:
            acc = ga_divexact(acc, _atom_ga(atom, rs.n))
    except ValueError:
        raise ValueError("non-polynomial result")
    out = acc.scale(Scalar.of(stab))
    if check and not out.is_invariant():
        raise ValueError("non-polynomial result")
    return out


@dataclass
class OperatorAction:
    direction: Weight
    label: KLabel
    level: int
    basis: list                  # ordered dominant weights, (sum, lex)
    matrix: dict                 # (nu, mu) -> Scalar with nu <= mu

    def eigenvalue(self, lam: Weight) -> Scalar:
        if (lam, lam) not in self.matrix:
            raise ValueError("weight out of range of the action")
        return self.matrix[(lam, lam)]


def operator_action(label: KLabel, rs: RootSystem, basis,
                    direction: Weight = None, level: int = 0,
                    check: bool = True) -> OperatorAction:
    """Matrix of the operator on the orbit-sum basis; asserts dominance
    triangularity column by column."""
    if direction is None:
        direction = eps(0, rs.n)
    matrix = {}
    for mu in basis:
        g = apply_qdiff(label, direction, orbit_sum(mu, rs.n), rs, check=False)
        col = m_basis(g)
        for nu, c in col.items():
            if check and not dominance_leq(nu, mu):
                raise ValueError("operator is not dominance triangular")
            matrix[(nu, mu)] = c
        matrix.setdefault((mu, mu), SC_ZERO)
    return OperatorAction(direction, label, level, list(basis), matrix)


def eigenvalue_from_action(action: OperatorAction, lam: Weight) -> Scalar:
    return action.eigenvalue(lam)


@dataclass
class MKPolynomial:
    lam: Weight
    coeffs: dict                 # dominant weight -> Scalar (orbit-sum basis)
    label: KLabel
    level: int = 0
    construction: str = "operator-exact"

    def as_gaelem(self, n: int) -> GAElem:
        return from_m_basis(self.coeffs, n)

    def to_json(self):
        import json
        return json.dumps({
            "label": [str(k) for k in self.label.ks()],
            "base_exp": self.label.base_exp,
            "level": self.level,
            "lambda": list(self.lam),
            "basis": "m",
            "coeffs": [
                {"mu": list(w), "c": str(c)}
                for w, c in sorted(self.coeffs.items())
            ],
        })


def build_polynomial(label: KLabel, lam: Weight, rs: RootSystem,
                     action: OperatorAction = None, level: int = 0,
                     verify: bool = True) -> MKPolynomial:
    """Triangular eigenfunction solve: unit leading coefficient, exact
    coefficients in Q(v)."""
    below = dominant_weights_below(lam)
    if action is None:
        action = operator_action(label, rs, below, level=level)
    M = action.matrix
    E_lam = action.eigenvalue(lam)
    coeffs = {lam: SC_ONE}
    for kappa in reversed(below[:-1]):
        rhs = SC_ZERO
        for nu, c in coeffs.items():
            if nu != kappa and (kappa, nu) in M:
                rhs = rhs + M[(kappa, nu)] * c
        gap = E_lam - action.eigenvalue(kappa)
        if not gap:
            raise ValueError(
                "non-generic parameters: eigenvalue collision at %s / %s"
                % (lam, kappa)
            )
        b = rhs / gap
        if b:
            coeffs[kappa] = b
    poly = MKPolynomial(lam, coeffs, label, level)
    if verify:
        g = poly.as_gaelem(rs.n)
        img = apply_qdiff(label, action.direction, g, rs)
        if img != g.scale(E_lam):
            raise ValueError("eigenfunction check failed")
    return poly


def build_family(entry: SatakeEntry, l: int, bound: int,
                 sigma=Fraction(0), D: int = DEFAULT_D, verify: bool = False):
    """Operator-exact polynomials for every dominant weight with
    coordinate sum <= bound, as a dict."""
    rs = build_root_system(entry.n)
    label = KLabel.from_entry(entry, l, sigma, D)
    basis = dominant_weights_upto(entry.n, bound)
    action = operator_action(label, rs, basis, level=l)
    return {
        lam: build_polynomial(label, lam, rs, action, level=l, verify=verify)
        for lam in basis
    }


# ---------------------------------------------------------------------------
# truncated Gram-style construction (oracle path)
# ---------------------------------------------------------------------------

def _family_engine(entry, l, basis, M, sigma, D):
    rs = build_root_system(entry.n)
    label0 = KLabel.from_entry(entry, 0, sigma, D)
    Wchi = shifted_weight(label0, entry, l, rs, sigma)
    base = koornwinder_weight(label0, rs)
    span = 0
    for w in basis:
        span = max(span, sum(abs(c) for c in w))
    lo = [-2 * span] * entry.n
    hi = [2 * span] * entry.n
    return rs, InnerProductEngine(Wchi, base, M, (lo, hi))


def build_polynomial_gs(entry: SatakeEntry, l: int, lam: Weight,
                        M: int = 40, sigma=Fraction(0), D: int = DEFAULT_D,
                        engine=None):
    """Truncated coefficients from the orthogonality characterization:
    solve ct(P bar(m_mu) W) = 0 mod v^(M+1) for all mu below lam.

    Returns a dict weight -> TruncSeries including the unit leading
    coefficient.
    """
    below = dominant_weights_below(lam)
    if engine is None:
        _, engine = _family_engine(entry, l, below, M, sigma, D)
    rs_n = len(lam)
    mons = {mu: orbit_sum(mu, rs_n) for mu in below}
    lower = below[:-1]
    G = {}
    for mu in below:
        for nu in lower:
            G[(mu, nu)] = engine.ct_pair(mons[mu], mons[nu])
    k = len(lower)
    rows = [[G[(lower[j], lower[i])] for j in range(k)] for i in range(k)]
    rhs = [-G[(lam, lower[i])] for i in range(k)]
    sol = _series_solve(rows, rhs)
    out = {lam: TruncSeries.one(M)}
    for j, mu in enumerate(lower):
        out[mu] = sol[j]
    return out


def _series_solve(rows, rhs):
    """Gaussian elimination over truncated series with valuation-aware
    pivoting; raises 'precision exhausted' when the pivots run out."""
    k = len(rows)
    if k == 0:
        return []
    rows = [list(r) for r in rows]
    rhs = list(rhs)
    perm = list(range(k))
    for col in range(k):
        piv, pval = None, None
        for i in range(col, k):
            val = rows[i][col].valuation()
            if val is not None and (pval is None or val < pval):
                piv, pval = i, val
        if piv is None:
            raise ValueError("precision exhausted")
        rows[col], rows[piv] = rows[piv], rows[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        for i in range(k):
            if i != col:
                f = rows[i][col].divide(rows[col][col])
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
                rhs[i] = rhs[i] - f * rhs[col]
    return [rhs[i].divide(rows[i][i]) for i in range(k)]


def dual_path_agree(poly: MKPolynomial, gs_coeffs: dict, M: int) -> bool:
    """Operator-exact coefficients equal the truncated ones mod v^(M+1)."""
    keys = set(poly.coeffs) | set(gs_coeffs)
    for w in keys:
        exact = poly.coeffs.get(w, SC_ZERO)
        ser = gs_coeffs.get(w)
        lhs = scalar_to_series(exact, M)
        rhs = ser if ser is not None else TruncSeries.zero(M)
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# verification operations
# ---------------------------------------------------------------------------

def verify_orthogonality(family: dict, entry: SatakeEntry, l: int,
                         M: int = 40, sigma=Fraction(0), D: int = DEFAULT_D):
    """Pairwise constant terms ct(P bar(P') W_l); off-diagonal entries
    must vanish mod v^(M+1)."""
    lams = sorted(family, key=lambda w: (sum(w), w))
    _, engine = _family_engine(entry, l, lams, M, sigma, D)
    n = entry.n
    gas = {lam: family[lam].as_gaelem(n) for lam in lams}
    report = {"entry": entry.family, "level": l, "pairs": [], "pass": True}
    for i, lam in enumerate(lams):
        for mu in lams[:i]:
            ct = engine.ct_pair(gas[lam], gas[mu])
            ok = ct.is_zero()
            row = {"lam": list(lam), "mu": list(mu), "zero": bool(ok)}
            if not ok:
                row["first_nonzero_order"] = ct.valuation()
                report["pass"] = False
            report["pairs"].append(row)
    return report


def check_bar_invariance(P: MKPolynomial) -> bool:
    """All orbit-sum coefficients fixed by v -> 1/v, exactly."""
    return all(c.bar() == c for c in P.coeffs.values())


def _scalar_laurent(x: Scalar) -> dict:
    """Laurent terms of a Scalar whose denominator is a monomial."""
    nz = [i for i, c in enumerate(x.den) if c]
    if len(nz) != 1:
        raise ValueError("not a Laurent polynomial")
    shift = nz[0]
    lead = x.den[shift]
    return {i - shift: c / lead for i, c in enumerate(x.num) if c}


def _staircase(n: int, k: int) -> Weight:
    return tuple([2] * k + [0] * (n - k))


def pin_rho(action: OperatorAction):
    """Extract the spectral data (rho, center) from staircase diagonal
    entries.

    The diagonal entry at lam is v^center * mult * (S(lam + rho) - S(rho))
    with S the symmetric exponential sum; consecutive staircase weights
    differ in one coordinate, so each difference is a four-term Laurent
    polynomial exposing center +- b*(rho_k + 1) and center +- b*rho_k.
    """
    n = len(action.basis[0])
    b = action.label.base_exp
    mult = Fraction(len(weyl_group(n)), 2 * n)
    rho = []
    center = None
    for k in range(1, n + 1):
        hikey = _staircase(n, k)
        lokey = _staircase(n, k - 1)
        delta = action.eigenvalue(hikey) - action.eigenvalue(lokey)
        terms = _scalar_laurent(delta)
        bag = {}
        for e, c in terms.items():
            m = c / mult
            if m.denominator != 1 or abs(m) != 1:
                raise ValueError("cannot pin the spectral shift")
            bag[e] = int(m)
        if len(bag) != 4 or sorted(bag.values()) != [-1, -1, 1, 1]:
            raise ValueError("cannot pin the spectral shift")
        hi, lo = max(bag), min(bag)
        if bag[hi] != 1 or bag[lo] != 1:
            raise ValueError("cannot pin the spectral shift")
        c_k = Fraction(hi + lo, 2)
        if center is None:
            center = c_k
        elif center != c_k:
            raise ValueError("cannot pin the spectral shift")
        rho.append(Fraction(hi - c_k, b) - 1)
    if center is None or center.denominator != 1:
        raise ValueError("cannot pin the spectral shift")
    return tuple(rho), center


def _closed_form_eigenvalue(lam: Weight, rho, center, b: int, mult: int) -> Scalar:
    acc = SC_ZERO
    for i in range(len(rho)):
        x = (Fraction(lam[i], 2) + rho[i]) * b
        r = rho[i] * b
        if x.denominator != 1 or r.denominator != 1:
            raise ValueError("non-integral exponent")
        acc = acc + Scalar.of(mult) * (
            Scalar.v_pow(int(x)) + Scalar.v_pow(-int(x))
            - Scalar.v_pow(int(r)) - Scalar.v_pow(-int(r))
        )
    return acc * Scalar.v_pow(int(center))


def eigenvalue_closed_form_check(action: OperatorAction, pinned=None) -> bool:
    """Every diagonal entry equals the exponential Weyl sum at lam + rho
    minus its value at rho, times a fixed monomial."""
    if pinned is None:
        pinned = pin_rho(action)
    rho, center = pinned
    n = len(rho)
    b = action.label.base_exp
    mult = len(weyl_group(n)) // (2 * n)
    for lam in action.basis:
        try:
            want = _closed_form_eigenvalue(lam, rho, center, b, mult)
        except ValueError:
            return False
        if want != action.eigenvalue(lam):
            return False
    return True


def eigenvalue_identity_check(entry: SatakeEntry, ambient_tag: str,
                              ambient_lams, bound: int = 6,
                              shifts=(1, 2), D: int = DEFAULT_D) -> dict:
    """The central-character identity: the ambient Weyl sum of
    q^((w mu, lam + rho)) equals N times the restricted Weyl sum of
    B^((w mu~, lam~ + rho')) with rho' pinned from the operator, plus the
    level-shift law rho'(l) = rho'(0) + (|l|/2)(1,...,1).
    """
    if not entry.reduced:
        raise ValueError("identity requires a reduced entry")
    data = ambient_data(ambient_tag, entry.n)
    n = entry.n
    rs = build_root_system(n)
    basis = dominant_weights_upto(n, bound)
    label0 = KLabel.from_entry(entry, 0, Fraction(0), D)
    act0 = operator_action(label0, rs, basis, level=0)
    rho_res, _center = pin_rho(act0)
    b = label0.base_exp
    N = len(data.weyl) // len(weyl_group(n))
    mu_res = data.restrict(data.mu)

    report = {
        "entry": entry.family,
        "N": N,
        "rho_restricted": [str(x) for x in rho_res],
        "lambdas": [],
        "pass": True,
    }
    for lam_amb in ambient_lams:
        lhs = {}
        target = tuple(Fraction(x) + Fraction(r) for x, r in zip(lam_amb, data.rho))
        for w in data.weyl:
            e = ambient_pair(data, _mat_apply(w, data.mu), target)
            ve = e * D
            if ve.denominator != 1:
                raise ValueError("non-integral ambient exponent")
            lhs[int(ve)] = lhs.get(int(ve), 0) + 1
        lam_res = data.restrict(lam_amb)
        x = tuple(Fraction(c, 2) + rho_res[i] for i, c in enumerate(lam_res))
        mu_half = tuple(Fraction(c, 2) for c in mu_res)
        rhs = {}
        for w in weyl_group(n):
            wmu = weyl_apply(w, mu_half)
            e = sum(a * t for a, t in zip(wmu, x))
            ve = e * b
            if ve.denominator != 1:
                raise ValueError("non-integral restricted exponent")
            rhs[int(ve)] = rhs.get(int(ve), 0) + N
        ok = lhs == rhs
        report["lambdas"].append({"lambda": list(lam_amb), "match": bool(ok)})
        if not ok:
            report["pass"] = False

    report["shift_law"] = []
    for l in shifts:
        label_l = KLabel.from_entry(entry, l, Fraction(0), D)
        act_l = operator_action(label_l, rs, basis, level=l)
        rho_l, center_l = pin_rho(act_l)
        want = tuple(r + Fraction(l, 2) for r in rho_res)
        ok = (rho_l == want
              and eigenvalue_closed_form_check(act_l, (rho_l, center_l)))
        report["shift_law"].append({"level": l, "match": bool(ok)})
        if not ok:
            report["pass"] = False
    return report


def connection_coeffs(family_l: dict, family_l1: dict, lam: Weight) -> dict:
    """Coefficients d_mu with P^l_lam = sum_mu d_mu P^(l+shift)_mu,
    by a triangular change of basis in orbit-sum coordinates."""
    if lam not in family_l:
        raise ValueError("weight missing from the level-l family")
    below = dominant_weights_below(lam)
    for mu in below:
        if mu not in family_l1:
            raise ValueError("weight %s missing from the target family" % (mu,))
    src = dict(family_l[lam].coeffs)
    out = {}
    for mu in reversed(below):
        c = src.get(mu, SC_ZERO)
        if c:
            out[mu] = c
            for nu, x in family_l1[mu].coeffs.items():
                acc = src.get(nu, SC_ZERO) - c * x
                if acc:
                    src[nu] = acc
                elif nu in src:
                    del src[nu]
    if src:
        raise ValueError("change of basis failed to terminate")
    return out
