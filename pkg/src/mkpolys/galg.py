"""Sparse elements of the group algebra of the doubled weight lattice.

A GAElem is a finite map weight -> Scalar.  The two involutions are
bar (negate weights) and zero_inv (bar-conjugate coefficients); both
commute.  Exact division is available and is the backbone of the
q-difference operator.
"""

from __future__ import annotations

import json

from .roots import (
    Weight,
    dot4,
    is_dominant,
    weyl_apply,
    weyl_group,
    weyl_orbit,
    wneg,
    wsum,
)
from .scalars import SC_ONE, SC_ZERO, Scalar


class GAElem:
    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        t = {}
        if terms:
            for w, c in terms.items() if isinstance(terms, dict) else terms:
                c = Scalar.of(c)
                if c:
                    acc = t.get(w)
                    if acc is None:
                        t[w] = c
                    else:
                        s = acc + c
                        if s:
                            t[w] = s
                        else:
                            del t[w]
        self.terms = t

    @staticmethod
    def unit(rank: int) -> "GAElem":
        return GAElem(rank, {(0,) * rank: SC_ONE})

    @staticmethod
    def monomial(rank: int, w: Weight, c=SC_ONE) -> "GAElem":
        return GAElem(rank, {tuple(w): Scalar.of(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, GAElem)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            acc = t.get(w)
            s = c if acc is None else acc + c
            if s:
                t[w] = s
            elif w in t:
                del t[w]
        out = GAElem(self.rank)
        out.terms = t
        return out

    def __neg__(self):
        out = GAElem(self.rank)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        t = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                w = wsum(w1, w2)
                c = c1 * c2
                acc = t.get(w)
                s = c if acc is None else acc + c
                if s:
                    t[w] = s
                elif w in t:
                    del t[w]
        out = GAElem(self.rank)
        out.terms = t
        return out

    __rmul__ = __mul__

    def scale(self, c) -> "GAElem":
        c = Scalar.of(c)
        out = GAElem(self.rank)
        if c:
            out.terms = {w: x * c for w, x in self.terms.items()}
        return out

    def _check(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")

    def coeff(self, w: Weight) -> Scalar:
        return self.terms.get(tuple(w), SC_ZERO)

    def support(self):
        return self.terms.keys()

    def bar(self) -> "GAElem":
        """Negate all weights, keep coefficients."""
        out = GAElem(self.rank)
        out.terms = {wneg(w): c for w, c in self.terms.items()}
        return out

    def zero_inv(self) -> "GAElem":
        """Bar-conjugate all coefficients (v -> 1/v), keep weights."""
        out = GAElem(self.rank)
        out.terms = {w: c.bar() for w, c in self.terms.items()}
        return out

    def w_apply(self, w) -> "GAElem":
        out = GAElem(self.rank)
        out.terms = {weyl_apply(w, wt): c for wt, c in self.terms.items()}
        return out

    def translate(self, mu: Weight, scale: int) -> "GAElem":
        """Scale each e^w by v^(scale * (mu, w)); exponents must be integral."""
        out = GAElem(self.rank)
        t = {}
        for w, c in self.terms.items():
            e = scale * dot4(mu, w)
            if e.denominator != 1:
                raise ValueError("non-integral translation exponent")
            t[w] = c * Scalar.v_pow(int(e))
        out.terms = t
        return out

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.rank, SC_ZERO)

    def leading(self):
        """(weight, coeff) maximal in the (coordinate sum, lex) extension."""
        w = max(self.terms, key=lambda t: (sum(t), t))
        return w, self.terms[w]

    def is_invariant(self) -> bool:
        for w in weyl_group(self.rank):
            if self.w_apply(w) != self:
                return False
        return True

    def to_json(self) -> str:
        rows = [
            {"w": list(w), "c": str(c)}
            for w, c in sorted(self.terms.items())
        ]
        return json.dumps({"rank": self.rank, "terms": rows})

    def __repr__(self):
        if not self.terms:
            return "GA(0)"
        bits = []
        for w, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            bits.append("(%s)*e%s" % (c, list(w)))
        return "GA(" + " + ".join(bits) + ")"


def orbit_sum(lam: Weight, n: int) -> GAElem:
    """Sum of e^(w lam) over the distinct orbit elements."""
    if not is_dominant(lam):
        raise ValueError("weights must be dominant")
    return GAElem(n, {w: SC_ONE for w in weyl_orbit(lam, n)})


def symmetrize(f: GAElem) -> GAElem:
    """Sum of w(f) over the whole Weyl group, each element applied once."""
    out = GAElem(f.rank)
    for w in weyl_group(f.rank):
        out = out + f.w_apply(w)
    return out


def m_basis(f: GAElem) -> dict:
    """Coordinates of an invariant element in the orbit-sum basis."""
    rem = f
    out = {}
    while not rem.is_zero():
        dom = [w for w in rem.terms if is_dominant(w)]
        if not dom:
            raise ValueError("element is not Weyl invariant")
        lam = max(dom, key=lambda t: (sum(t), t))
        c = rem.terms[lam]
        out[lam] = c
        rem = rem - orbit_sum(lam, f.rank).scale(c)
    return out


def from_m_basis(coeffs: dict, n: int) -> GAElem:
    out = GAElem(n)
    for lam, c in coeffs.items():
        out = out + orbit_sum(lam, n).scale(c)
    return out


def ga_divexact(f: GAElem, g: GAElem) -> GAElem:
    """Exact division in the Laurent group algebra; raises if not divisible."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by zero")
    gw = max(g.terms)  # lex-leading term
    gc = g.terms[gw]
    rem = dict(f.terms)
    quo = {}
    cap = 10000 + 10 * (len(f.terms) + len(g.terms)) ** 2
    while rem:
        if len(quo) > cap:
            raise ValueError("not divisible")
        fw = max(rem)
        w = tuple(a - b for a, b in zip(fw, gw))
        c = rem[fw] / gc
        quo[w] = c
        for w2, c2 in g.terms.items():
            tw = wsum(w, w2)
            acc = rem.get(tw, SC_ZERO) - c * c2
            if acc:
                rem[tw] = acc
            elif tw in rem:
                del rem[tw]
    out = GAElem(f.rank)
    out.terms = quo
    return out
