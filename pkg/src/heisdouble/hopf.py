"""Graded connected bialgebra presentations with twisted tensor multiplication.

A presentation supplies a homogeneous basis per degree together with
structure constants for the product and coproduct; everything else (counit,
antipode, axiom checking, degree-shift wrapping) is derived here.  Structure
constants are cached so each one is computed once; caches are filled with
``setdefault`` so concurrent lookups under the GIL all observe the first
stored value.
"""

from __future__ import annotations

from itertools import product as iproduct

from .report import failing, passing
from .scalars import ONE, ZERO, RatFunc, q_power
from .twisting import TwistingDatum, deg_add, deg_total, deg_zero


class PresentationError(ValueError):
    """A presentation violated a structural requirement."""


class BasisLabel:
    """Name of one homogeneous basis element: an opaque key plus a degree."""

    __slots__ = ("key", "degree", "_hash")

    def __init__(self, key, degree):
        self.key = key
        self.degree = tuple(degree)
        self._hash = hash((key, self.degree))

    def __eq__(self, other):
        if not isinstance(other, BasisLabel):
            return NotImplemented
        return self.key == other.key and self.degree == other.degree

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "BasisLabel(%r, %r)" % (self.key, self.degree)


def _acc(d, k, c):
    s = d.get(k)
    s = c if s is None else s + c
    if s.is_zero:
        d.pop(k, None)
    else:
        d[k] = s


class GradedElement:
    """Finite linear combination of basis labels with RatFunc coefficients.

    The term dict never contains zero coefficients, so ``==`` is structural
    equality of elements.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for l, c in terms.items():
                if not c.is_zero:
                    t[l] = c
        self.terms = t

    @classmethod
    def _raw(cls, terms):
        self = object.__new__(cls)
        self.terms = terms
        return self

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def from_label(cls, label, coeff=ONE):
        if coeff.is_zero:
            return cls._raw({})
        return cls._raw({label: coeff})

    @property
    def is_zero(self):
        return not self.terms

    def coeff(self, label):
        return self.terms.get(label, ZERO)

    def __add__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        t = dict(self.terms)
        for l, c in other.terms.items():
            _acc(t, l, c)
        return GradedElement._raw(t)

    def __neg__(self):
        return GradedElement._raw({l: -c for l, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc.from_int(c)
        if c.is_zero:
            return GradedElement._raw({})
        return GradedElement._raw({l: c * v for l, v in self.terms.items()})

    def homogeneous_component(self, degree):
        degree = tuple(degree)
        return GradedElement._raw(
            {l: c for l, c in self.terms.items() if l.degree == degree})

    def degrees(self):
        return sorted({l.degree for l in self.terms})

    def max_total_degree(self):
        """Largest total degree in the support; -1 for the zero element."""
        if not self.terms:
            return -1
        return max(deg_total(l.degree) for l in self.terms)

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "GradedElement(%r)" % (self.terms,)


class TensorElement:
    """Element of the tensor square: labels are ordered pairs of BasisLabels."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for p, c in terms.items():
                if not c.is_zero:
                    t[p] = c
        self.terms = t

    @classmethod
    def _raw(cls, terms):
        self = object.__new__(cls)
        self.terms = terms
        return self

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def tensor(cls, u, v):
        t = {}
        for l1, c1 in u.terms.items():
            for l2, c2 in v.terms.items():
                _acc(t, (l1, l2), c1 * c2)
        return cls._raw(t)

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        t = dict(self.terms)
        for p, c in other.terms.items():
            _acc(t, p, c)
        return TensorElement._raw(t)

    def __neg__(self):
        return TensorElement._raw({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc.from_int(c)
        if c.is_zero:
            return TensorElement._raw({})
        return TensorElement._raw({p: c * v for p, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return "TensorElement(%r)" % (self.terms,)


def degrees_up_to(rank, N):
    """All degree tuples with nonnegative entries and total <= N, sorted by
    (total, tuple)."""
    out = [d for d in iproduct(range(N + 1), repeat=rank) if sum(d) <= N]
    out.sort(key=lambda d: (sum(d), d))
    return out


class HopfPresentation:
    """Degreewise-lazy presentation of a graded connected twisted bialgebra.

    The callables supply raw structure constants; they are invoked at most
    once per argument and their output is validated (grading of products,
    bidegree additivity of coproducts, membership of result labels in the
    declared basis).  Connectedness (degree-0 stratum = the unit alone) is
    checked at construction.
    """

    def __init__(self, name, rank, twisting, unit_label, basis_fn, product_fn,
                 coproduct_fn, label_text_fn=None):
        if not isinstance(twisting, TwistingDatum):
            raise TypeError("twisting must be a TwistingDatum")
        if twisting.rank != rank:
            raise ValueError("twisting rank %d does not match grading rank %d"
                             % (twisting.rank, rank))
        self.name = name
        self.rank = rank
        self.twisting = twisting
        self.unit_label = unit_label
        self._basis_fn = basis_fn
        self._product_fn = product_fn
        self._coproduct_fn = coproduct_fn
        self._label_text_fn = label_text_fn or (lambda l: str(l.key))
        self._basis = {}
        self._basis_set = {}
        self._index = {}
        self._prod = {}
        self._coprod = {}
        self._antipode = {}
        if unit_label.degree != deg_zero(rank):
            raise PresentationError("unit label must sit in degree zero")
        z = self.basis(deg_zero(rank))
        if z != (unit_label,):
            raise PresentationError(
                "%s is not connected: degree-0 basis is %r" % (name, z))

    # -- basis -----------------------------------------------------------

    def basis(self, degree):
        degree = tuple(degree)
        hit = self._basis.get(degree)
        if hit is None:
            if len(degree) != self.rank or any(d < 0 for d in degree):
                raise ValueError("bad degree %r for rank-%d presentation"
                                 % (degree, self.rank))
            val = tuple(self._basis_fn(degree))
            for l in val:
                if l.degree != degree:
                    raise PresentationError(
                        "basis label %r listed under degree %r" % (l, degree))
            hit = self._basis.setdefault(degree, val)
        return hit

    def check_label(self, label):
        degree = label.degree
        s = self._basis_set.get(degree)
        if s is None:
            s = self._basis_set.setdefault(degree, frozenset(self.basis(degree)))
        if label not in s:
            raise PresentationError(
                "label %r is not in the %s basis at degree %r"
                % (label, self.name, degree))

    def check_element(self, u):
        for l in u.terms:
            self.check_label(l)

    def label_index(self, label):
        idx = self._index.get(label.degree)
        if idx is None:
            idx = self._index.setdefault(
                label.degree,
                {l: i for i, l in enumerate(self.basis(label.degree))})
        return idx[label]

    def label_sort_key(self, label):
        return (deg_total(label.degree), label.degree, self.label_index(label))

    def labels_up_to(self, N):
        """All basis labels of total degree <= N in canonical order."""
        out = []
        for d in degrees_up_to(self.rank, N):
            out.extend(self.basis(d))
        return out

    def label_text(self, label):
        return self._label_text_fn(label)

    # -- structure constants --------------------------------------------

    def unit_element(self):
        return GradedElement.from_label(self.unit_label)

    def product(self, l1, l2):
        key = (l1, l2)
        hit = self._prod.get(key)
        if hit is None:
            self.check_label(l1)
            self.check_label(l2)
            val = self._product_fn(l1, l2)
            d = deg_add(l1.degree, l2.degree)
            for l in val.terms:
                if l.degree != d:
                    raise PresentationError(
                        "product %s * %s not homogeneous of degree %r"
                        % (self.label_text(l1), self.label_text(l2), d))
                self.check_label(l)
            hit = self._prod.setdefault(key, val)
        return hit

    def coproduct(self, label):
        hit = self._coprod.get(label)
        if hit is None:
            self.check_label(label)
            val = self._coproduct_fn(label)
            for (l1, l2) in val.terms:
                if deg_add(l1.degree, l2.degree) != label.degree:
                    raise PresentationError(
                        "coproduct of %s has a term of bidegree (%r, %r)"
                        % (self.label_text(label), l1.degree, l2.degree))
                self.check_label(l1)
                self.check_label(l2)
            hit = self._coprod.setdefault(label, val)
        return hit

    def reduced_coproduct(self, label):
        """Coproduct terms with both tensor factors in positive degree.

        Also enforces the connected normalization: the unit-sided terms of
        the coproduct must be exactly label x 1 and 1 x label with
        coefficient one.
        """
        unit = self.unit_label
        out = {}
        for (l1, l2), c in self.coproduct(label).terms.items():
            if l1 == unit or l2 == unit:
                expected = (l1 == unit and l2 == label) or (l2 == unit and l1 == label)
                if not expected or c != ONE:
                    raise PresentationError(
                        "coproduct of %s is not normalized: term (%s, %s) %s"
                        % (self.label_text(label), self.label_text(l1),
                           self.label_text(l2), c))
            else:
                out[(l1, l2)] = c
        return TensorElement._raw(out)

    def counit_label(self, label):
        return ONE if label == self.unit_label else ZERO

    def __repr__(self):
        return "HopfPresentation(%s)" % self.name


# -- linear extensions of the structure maps ----------------------------


def multiply(H, u, v):
    """Product of two elements of H."""
    t = {}
    for l1, c1 in u.terms.items():
        for l2, c2 in v.terms.items():
            c = c1 * c2
            for l, k in H.product(l1, l2).terms.items():
                _acc(t, l, c * k)
    return GradedElement._raw(t)


def comultiply(H, u):
    """Coproduct of an element of H, in the tensor square."""
    t = {}
    for l, c in u.terms.items():
        for p, k in H.coproduct(l).terms.items():
            _acc(t, p, c * k)
    return TensorElement._raw(t)


def counit(H, u):
    return u.coeff(H.unit_label)


def twisted_tensor_multiply(H, s, t):
    """Product on H x H twisted by H's datum chi:

    (a1 x a2)(b1 x b2) = q^(chi'(|a2|,|b1|) + chi''(|a1|,|b2|)) a1 b1 x a2 b2.
    """
    chi_p = H.twisting.prime
    chi_pp = H.twisting.doubleprime
    out = {}
    for (a1, a2), c in s.terms.items():
        for (b1, b2), d in t.terms.items():
            e = chi_p.evaluate(a2.degree, b1.degree) + chi_pp.evaluate(a1.degree, b2.degree)
            coeff = c * d * q_power(e)
            left = H.product(a1, b1)
            right = H.product(a2, b2)
            for l1, k1 in left.terms.items():
                ck = coeff * k1
                for l2, k2 in right.terms.items():
                    _acc(out, (l1, l2), ck * k2)
    return TensorElement._raw(out)


def antipode(H, u):
    """Antipode, via the connected-graded recursion

    S(1) = 1,  S(a) = -a - sum a' S(a'')  over the reduced coproduct.
    """
    t = {}
    for l, c in u.terms.items():
        for l2, k in _antipode_label(H, l).terms.items():
            _acc(t, l2, c * k)
    return GradedElement._raw(t)


def _antipode_label(H, label):
    hit = H._antipode.get(label)
    if hit is not None:
        return hit
    if label == H.unit_label:
        val = H.unit_element()
    else:
        val = GradedElement.from_label(label, -ONE)
        for (l1, l2), c in H.reduced_coproduct(label).terms.items():
            part = multiply(H, GradedElement.from_label(l1),
                            _antipode_label(H, l2)).scale(c)
            val = val - part
    return H._antipode.setdefault(label, val)


def element_str(H, u):
    """Canonical printed form: terms sorted by degree then basis position."""
    if u.is_zero:
        return "0"
    if set(u.terms) == {H.unit_label}:
        return str(u.terms[H.unit_label])
    parts = []
    for l in sorted(u.terms, key=H.label_sort_key):
        c = u.terms[l]
        body = H.label_text(l)
        if l == H.unit_label:
            s = scalar_term_str(c)
        else:
            s = coeff_prefix(c) + body
        if not parts:
            parts.append(s)
        elif s.startswith("-"):
            parts.append(" - " + s[1:])
        else:
            parts.append(" + " + s)
    return "".join(parts)


def coeff_prefix(c):
    """Multiplier prefix for a printed basis term, re-parseable as a factor."""
    if c == ONE:
        return ""
    if c == -ONE:
        return "-"
    if c.is_monomial:
        return "%s*" % c
    if c.is_laurent:
        return "(%s)*" % c
    return "%s*" % c  # rational form already prints as (num)/(den)


def scalar_term_str(c):
    """A scalar as a standalone printed term, parenthesized when needed."""
    if c.is_monomial:
        return str(c)
    if c.is_laurent:
        return "(%s)" % c
    return str(c)


# -- degree shifts ------------------------------------------------------


def shifted_presentation(H, alpha, beta):
    """Presentation with coproduct rescaled by q^alpha(|a1|,|a2|) termwise and
    product rescaled by q^beta(|a|,|b|); twisting becomes
    (chi' + alpha^T + beta, chi'' + alpha + beta)."""
    twisting = TwistingDatum(
        H.twisting.prime + alpha.transpose() + beta,
        H.twisting.doubleprime + alpha + beta)

    def product_fn(l1, l2):
        return H.product(l1, l2).scale(q_power(beta.evaluate(l1.degree, l2.degree)))

    def coproduct_fn(label):
        t = {}
        for (l1, l2), c in H.coproduct(label).terms.items():
            t[(l1, l2)] = c * q_power(alpha.evaluate(l1.degree, l2.degree))
        return TensorElement._raw(t)

    return HopfPresentation(
        H.name + "~shifted", H.rank, twisting, H.unit_label, H.basis,
        product_fn, coproduct_fn, H._label_text_fn)


# -- axiom verification -------------------------------------------------


def check_bialgebra(H, N):
    """Verify every bialgebra axiom of H on basis elements of total degree
    <= N: grading, unit and counit laws, associativity, coassociativity,
    multiplicativity of the coproduct for the twisted tensor product,
    twisted associativity on the tensor square, and both antipode identities.

    Stops at the first failing identity and reports it with witnesses.
    """
    labels = H.labels_up_to(N)
    unit = H.unit_element()

    def fail(identity, labels_involved, lhs, rhs):
        return failing("check_bialgebra", H.name, N, identity=identity,
                       labels=labels_involved, lhs=lhs, rhs=rhs)

    # unit and counit laws on single labels
    for a in labels:
        ea = GradedElement.from_label(a)
        if multiply(H, unit, ea) != ea or multiply(H, ea, unit) != ea:
            return fail("unit law", H.label_text(a),
                        element_str(H, multiply(H, unit, ea)), element_str(H, ea))
        left = {}
        right = {}
        for (l1, l2), c in H.coproduct(a).terms.items():
            if l1 == H.unit_label:
                _acc(left, l2, c)
            if l2 == H.unit_label:
                _acc(right, l1, c)
        if GradedElement._raw(left) != ea or GradedElement._raw(right) != ea:
            return fail("counit law", H.label_text(a),
                        element_str(H, GradedElement._raw(left)), element_str(H, ea))

    # associativity on basis triples
    for a, b, c in _triples(H, N):
        lhs = multiply(H, multiply(H, a, b), c)
        rhs = multiply(H, a, multiply(H, b, c))
        if lhs != rhs:
            return fail("associativity", _texts(H, a, b, c),
                        element_str(H, lhs), element_str(H, rhs))

    # coassociativity on single labels
    for a in labels:
        l3 = {}
        r3 = {}
        for (x, y), c in H.coproduct(a).terms.items():
            for (u, v), d in H.coproduct(x).terms.items():
                _acc(l3, (u, v, y), c * d)
            for (u, v), d in H.coproduct(y).terms.items():
                _acc(r3, (x, u, v), c * d)
        if l3 != r3:
            return fail("coassociativity", H.label_text(a), repr(l3), repr(r3))

    # coproduct is an algebra map for the twisted tensor product
    for a in labels:
        for b in labels:
            if deg_total(a.degree) + deg_total(b.degree) > N:
                continue
            lhs = comultiply(H, H.product(a, b))
            rhs = twisted_tensor_multiply(H, H.coproduct(a), H.coproduct(b))
            if lhs != rhs:
                return fail("coproduct multiplicativity",
                            "%s, %s" % (H.label_text(a), H.label_text(b)),
                            repr(lhs.terms), repr(rhs.terms))

    # twisted associativity on the tensor square
    for pairs in _tensor_triples(H, N):
        (s, t, u) = pairs
        lhs = twisted_tensor_multiply(H, twisted_tensor_multiply(H, s, t), u)
        rhs = twisted_tensor_multiply(H, s, twisted_tensor_multiply(H, t, u))
        if lhs != rhs:
            return fail("twisted tensor associativity", repr(pairs),
                        repr(lhs.terms), repr(rhs.terms))

    # antipode laws
    for a in labels:
        target = unit.scale(H.counit_label(a))
        left = GradedElement.zero()
        right = GradedElement.zero()
        for (x, y), c in H.coproduct(a).terms.items():
            left = left + multiply(H, antipode(H, GradedElement.from_label(x)),
                                   GradedElement.from_label(y)).scale(c)
            right = right + multiply(H, GradedElement.from_label(x),
                                     antipode(H, GradedElement.from_label(y))).scale(c)
        if left != target or right != target:
            return fail("antipode law", H.label_text(a),
                        element_str(H, left), element_str(H, right))

    return passing("check_bialgebra", H.name, N)


def _texts(H, *labels):
    return ", ".join(H.label_text(l) for l in labels)


def _triples(H, N):
    labels = H.labels_up_to(N)
    for a in labels:
        da = deg_total(a.degree)
        for b in labels:
            dab = da + deg_total(b.degree)
            if dab > N:
                continue
            for c in labels:
                if dab + deg_total(c.degree) > N:
                    continue
                yield (GradedElement.from_label(a), GradedElement.from_label(b),
                       GradedElement.from_label(c))


def _tensor_triples(H, N):
    labels = H.labels_up_to(N)
    pairs = []
    for a in labels:
        da = deg_total(a.degree)
        for b in labels:
            if da + deg_total(b.degree) <= N:
                pairs.append((a, b, da + deg_total(b.degree)))
    for a, b, d1 in pairs:
        for c, d, d2 in pairs:
            if d1 + d2 > N:
                continue
            for e, f, d3 in pairs:
                if d1 + d2 + d3 > N:
                    continue
                yield (TensorElement._raw({(a, b): ONE}),
                       TensorElement._raw({(c, d): ONE}),
                       TensorElement._raw({(e, f): ONE}))
