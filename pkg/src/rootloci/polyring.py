"""Sparse multivariate polynomials over Q with named variables.

Everything downstream (coefficient polynomials, chart generators, the
Groebner engine, elimination) is built on the types here.  Coefficients are
exact: Python ints where possible, fractions.Fraction otherwise; equality
is exact term-by-term equality.  Values are immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


#: weighted_degree result for a polynomial whose terms have mixed weights
NOT_HOMOGENEOUS = _Marker("NOT_HOMOGENEOUS")
#: weighted_degree result for the zero polynomial (homogeneous of any degree)
ZERO = _Marker("ZERO")


class Var:
    """A named variable: a coefficient coordinate W(r,t), an ambient
    coordinate Z(j), or an auxiliary symbol.

    Canonical ordering puts all W before all Z before all auxiliaries,
    W sorted by (r,t) and Z by j.
    """

    __slots__ = ("kind", "a", "b", "_key", "_hash")

    def __init__(self, kind, a, b=0):
        if kind == "W":
            if a < 1 or b < 0:
                raise DomainError("W(r,t) needs r >= 1, t >= 0")
        elif kind == "Z":
            if a < 0:
                raise DomainError("Z(j) needs j >= 0")
        elif kind == "A":
            if not isinstance(a, str) or not a:
                raise DomainError("auxiliary variable needs a nonempty name")
        else:
            raise DomainError("unknown variable kind %r" % (kind,))
        self.kind = kind
        self.a = a
        self.b = b
        rank = {"W": 0, "Z": 1, "A": 2}[kind]
        self._key = (rank, a, b)
        self._hash = hash(self._key)

    @classmethod
    def w(cls, r, t):
        return cls("W", r, t)

    @classmethod
    def z(cls, j):
        return cls("Z", j)

    @classmethod
    def aux(cls, name):
        return cls("A", name)

    def tag(self):
        """Compact string form used in JSON and CLI patterns."""
        if self.kind == "W":
            return "W:%d:%d" % (self.a, self.b)
        if self.kind == "Z":
            return "Z:%d" % (self.a,)
        return "A:%s" % (self.a,)

    @classmethod
    def from_tag(cls, tag):
        pieces = tag.split(":")
        try:
            if pieces[0] == "W" and len(pieces) == 3:
                return cls.w(int(pieces[1]), int(pieces[2]))
            if pieces[0] == "Z" and len(pieces) == 2:
                return cls.z(int(pieces[1]))
            if pieces[0] == "A" and len(pieces) == 2:
                return cls.aux(pieces[1])
        except ValueError:
            pass
        raise DomainError("bad variable tag %r" % (tag,))

    def __eq__(self, other):
        return isinstance(other, Var) and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return self._hash

    def __str__(self):
        if self.kind == "W":
            return "W(%d,%d)" % (self.a, self.b)
        if self.kind == "Z":
            return "Z(%d)" % (self.a,)
        return str(self.a)

    def __repr__(self):
        return "Var(%r, %r, %r)" % (self.kind, self.a, self.b)


class Monomial:
    """A power product of variables; exponents are positive (sparse)."""

    __slots__ = ("pairs", "degree", "_hash")

    def __init__(self, pairs=()):
        cleaned = []
        for v, e in pairs:
            if e < 0:
                raise DomainError("negative exponent in monomial")
            if e:
                cleaned.append((v, e))
        cleaned.sort(key=lambda ve: ve[0]._key)
        self.pairs = tuple(cleaned)
        self.degree = sum(e for _, e in cleaned)
        self._hash = hash(self.pairs)

    def exponent(self, v):
        for w, e in self.pairs:
            if w == v:
                return e
        return 0

    def variables(self):
        return tuple(v for v, _ in self.pairs)

    def mul(self, other):
        exps = {v: e for v, e in self.pairs}
        for v, e in other.pairs:
            exps[v] = exps.get(v, 0) + e
        return Monomial(exps.items())

    def divides(self, other):
        for v, e in self.pairs:
            if other.exponent(v) < e:
                return False
        return True

    def divide(self, other):
        """self / other; raises if not divisible."""
        exps = {v: e for v, e in self.pairs}
        for v, e in other.pairs:
            ne = exps.get(v, 0) - e
            if ne < 0:
                raise DomainError("monomial %s does not divide %s" % (other, self))
            if ne:
                exps[v] = ne
            else:
                exps.pop(v, None)
        return Monomial(exps.items())

    def weighted_degree(self, weight):
        get = weight.get if hasattr(weight, "get") else None
        total = 0
        for v, e in self.pairs:
            w = get(v, 0) if get is not None else weight(v)
            total += w * e
        return total

    def ckey(self):
        """Canonical sort key: by total degree, then by the (var, exp) list.

        A fixed total order used for printing and sign normalization; the
        proper monomial orders live in the *Order classes.
        """
        return (self.degree, tuple((v._key, e) for v, e in self.pairs))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.pairs == other.pairs

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self.pairs:
            return "1"
        out = []
        for v, e in self.pairs:
            out.append(str(v) if e == 1 else "%s^%d" % (v, e))
        return "*".join(out)

    def __repr__(self):
        return "Monomial(%r)" % (self.pairs,)


Monomial.ONE = Monomial()


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    if isinstance(c, int) or isinstance(c, Fraction):
        return c
    raise DomainError("coefficients must be int or Fraction, got %r" % (c,))


class Poly:
    """Immutable sparse polynomial: mapping Monomial -> nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in (terms.items() if hasattr(terms, "items") else terms):
                c = _norm_coeff(c)
                if c:
                    nc = clean.get(m, 0) + c
                    if nc:
                        clean[m] = nc
                    else:
                        del clean[m]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({Monomial.ONE: 1})

    @classmethod
    def constant(cls, c):
        return cls({Monomial.ONE: c})

    @classmethod
    def variable(cls, v):
        return cls({Monomial(((v, 1),)): 1})

    @classmethod
    def monomial(cls, m, c=1):
        return cls({m: c})

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and Monomial.ONE in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return self.terms.get(Monomial.ONE, 0)

    def variables(self):
        seen = set()
        for m in self.terms:
            seen.update(m.variables())
        return frozenset(seen)

    def total_degree(self):
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m.degree for m in self.terms)

    def num_terms(self):
        return len(self.terms)

    def sorted_terms(self):
        """Terms in canonical descending order (deterministic)."""
        return sorted(self.terms.items(), key=lambda mc: mc[0].ckey(), reverse=True)

    def leading_term(self):
        """(monomial, coeff) maximal in the canonical order."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        m = max(self.terms, key=Monomial.ckey)
        return m, self.terms[m]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                del out[m]
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _norm_coeff(other)
            if not c:
                return Poly.zero()
            return _raw({m: cc * c for m, cc in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if len(self.terms) > len(other.terms):
            big, small = self, other
        else:
            big, small = other, self
        out = {}
        for ms, cs in small.terms.items():
            for mb, cb in big.terms.items():
                m = ms.mul(mb)
                nc = out.get(m, 0) + cs * cb
                if nc:
                    out[m] = nc
                else:
                    del out[m]
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomial power needs an integer exponent >= 0")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- substitution / evaluation / calculus ------------------------------

    def substitute(self, bindings):
        """Simultaneously replace variables by polynomials or scalars."""
        polys = {}
        for v, val in bindings.items():
            polys[v] = val if isinstance(val, Poly) else Poly.constant(val)
        out = Poly.zero()
        for m, c in self.terms.items():
            piece = Poly.constant(c)
            kept = []
            for v, e in m.pairs:
                if v in polys:
                    piece = piece * polys[v] ** e
                else:
                    kept.append((v, e))
            if kept:
                piece = piece * Poly.monomial(Monomial(kept))
            out = out + piece
        return out

    def evaluate(self, assignment):
        """Evaluate with every variable bound to an exact number."""
        total = 0
        for m, c in self.terms.items():
            val = c
            for v, e in m.pairs:
                if v not in assignment:
                    raise DomainError("no value for variable %s" % (v,))
                val *= assignment[v] ** e
            total += val
        return total

    def differentiate(self, v):
        out = {}
        for m, c in self.terms.items():
            e = m.exponent(v)
            if not e:
                continue
            pairs = [(w, k) for w, k in m.pairs if w != v]
            if e > 1:
                pairs.append((v, e - 1))
            dm = Monomial(pairs)
            nc = out.get(dm, 0) + c * e
            if nc:
                out[dm] = nc
            else:
                del out[dm]
        return _raw(out)

    def weighted_degree(self, weight):
        """Common weighted degree of all terms, or a marker.

        Returns ZERO for the zero polynomial (homogeneous of every degree)
        and NOT_HOMOGENEOUS when terms disagree.
        """
        if not self.terms:
            return ZERO
        degree = None
        for m in self.terms:
            d = m.weighted_degree(weight)
            if degree is None:
                degree = d
            elif degree != d:
                return NOT_HOMOGENEOUS
        return degree

    # -- normalization -----------------------------------------------------

    def primitive_normalized(self):
        """Scale to coprime integer coefficients with positive leading
        coefficient (canonical order).  Zero stays zero."""
        if not self.terms:
            return self
        denom_lcm = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
        ints = {m: int(c * denom_lcm) for m, c in self.terms.items()}
        content = 0
        for c in ints.values():
            content = math.gcd(content, c)
        lead = max(ints, key=Monomial.ckey)
        sign = -1 if ints[lead] < 0 else 1
        content *= sign
        return _raw({m: c // content for m, c in ints.items()})

    def divexact(self, other):
        """Exact division; DomainError when `other` does not divide self."""
        other = _as_poly(other)
        if other is NotImplemented or other.is_zero():
            raise DomainError("division by zero polynomial")
        rem = dict(self.terms)
        lm, lc = other.leading_term()
        qout = {}
        while rem:
            m = max(rem, key=Monomial.ckey)
            if not lm.divides(m):
                raise DomainError("polynomial division is not exact")
            qm = m.divide(lm)
            qc = _norm_coeff(Fraction(rem[m]) / Fraction(lc))
            qout[qm] = qout.get(qm, 0) + qc
            for om, oc in other.terms.items():
                t = om.mul(qm)
                nc = rem.get(t, 0) - oc * qc
                if nc:
                    rem[t] = nc
                else:
                    rem.pop(t, None)
        return _raw(qout)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if m is Monomial.ONE or not m.pairs:
                body = str(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = "%s*%s" % (mag, m)
            out.append((sign, body))
        first_sign, first_body = out[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in out[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "Poly(%s)" % (self,)


def _raw(terms_dict):
    p = Poly.__new__(Poly)
    p.terms = terms_dict
    return p


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x)
    return NotImplemented


def normalize_and_homogenize(p, hvar):
    """Primitive-normalize, then pad every term with hvar to full degree.

    `hvar` must not occur in p.
    """
    if hvar in p.variables():
        raise DomainError("homogenization variable %s already occurs" % (hvar,))
    p = p.primitive_normalized()
    if p.is_zero():
        return p
    total = p.total_degree()
    out = {}
    for m, c in p.terms.items():
        gap = total - m.degree
        if gap:
            out[m.mul(Monomial(((hvar, gap),)))] = c
        else:
            out[m] = c
    return _raw(out)


def dehomogenize(p, hvar):
    return p.substitute({hvar: 1})


# -- monomial orders -------------------------------------------------------


class MonomialOrder:
    """A total, multiplicative well-order on monomials in a fixed variable
    sequence.  Implemented by sortable keys: bigger key == bigger monomial.
    """

    def blocks(self):
        raise NotImplementedError

    def variables(self):
        out = []
        for _, vs in self.blocks():
            out.extend(vs)
        return tuple(out)

    def key(self, m):
        unknown = set(m.variables()) - set(self.variables())
        if unknown:
            raise DomainError(
                "monomial uses variables outside the order: %s"
                % ", ".join(sorted(str(v) for v in unknown))
            )
        return tuple(_block_key(kind, vs, m) for kind, vs in self.blocks())

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def sorted_terms(self, p):
        return sorted(p.terms.items(), key=lambda mc: self.key(mc[0]), reverse=True)

    def leading_term(self, p):
        if p.is_zero():
            raise DomainError("zero polynomial has no leading term")
        m = max(p.terms, key=self.key)
        return m, p.terms[m]


def _block_key(kind, vs, m):
    if kind == "grevlex":
        exps = [m.exponent(v) for v in vs]
        return (sum(exps),) + tuple(-e for e in reversed(exps))
    # lex
    return tuple(m.exponent(v) for v in vs)


class GrevlexOrder(MonomialOrder):
    """Graded reverse lexicographic on the given variable priority sequence."""

    def __init__(self, variables):
        self.vars = tuple(variables)

    def blocks(self):
        return (("grevlex", self.vars),)

    def __repr__(self):
        return "GrevlexOrder(%s)" % (", ".join(map(str, self.vars)),)


class LexOrder(MonomialOrder):
    """Pure lexicographic on the given variable priority sequence."""

    def __init__(self, variables):
        self.vars = tuple(variables)

    def blocks(self):
        return (("lex", self.vars),)

    def __repr__(self):
        return "LexOrder(%s)" % (", ".join(map(str, self.vars)),)


class BlockOrder(MonomialOrder):
    """Compare block by block; the first block's variables dominate.

    With the variables to eliminate in the front block this is an
    elimination order.
    """

    def __init__(self, *parts):
        if not parts:
            raise DomainError("block order needs at least one block")
        self.parts = tuple(parts)
        seen = set()
        for p in self.parts:
            for v in p.variables():
                if v in seen:
                    raise DomainError("variable %s occurs in two blocks" % (v,))
                seen.add(v)

    def blocks(self):
        out = []
        for p in self.parts:
            out.extend(p.blocks())
        return tuple(out)

    def __repr__(self):
        return "BlockOrder(%r)" % (self.parts,)


# -- JSON wire format ------------------------------------------------------


def poly_to_obj(p):
    """Polynomial as a JSON-ready list of {"c": coeff-string, "m": {tag: exp}}."""
    out = []
    for m, c in p.sorted_terms():
        out.append({
            "c": str(Fraction(c)),
            "m": {v.tag(): e for v, e in m.pairs},
        })
    return out


def poly_from_obj(obj):
    terms = []
    for item in obj:
        try:
            c = Fraction(item["c"])
            pairs = [(Var.from_tag(tag), int(e)) for tag, e in item["m"].items()]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError("bad polynomial JSON: %s" % (exc,)) from None
        terms.append((Monomial(pairs), c))
    return Poly(terms)
