"""Twisted bilinear pairings between a pair of graded bialgebra presentations.

A pairing couples a "minus" presentation H- to a "plus" presentation H+
through Gram values on homogeneous basis pairs; degreewise orthogonality is
structural (no Gram callable is consulted across distinct degrees).  The
twisting datum gamma controls how the pairing exchanges products for
coproducts:

    <x y, a> = c^(gamma'(|x|,|y|)) <x tensor y, Delta(a)>
    <x, a b> = c^(gamma''(|a|,|b|)) <Delta(x), a tensor b>
"""

from __future__ import annotations

from .hopf import GradedElement, antipode
from .linalg import det_bareiss
from .report import failing, passing
from .scalars import ONE, ZERO, q_power
from .twisting import TwistingDatum, deg_total, dual_twisting
from . import hopf


class HypothesisError(ValueError):
    """A check was invoked outside the hypotheses that make it meaningful."""


class TwistedPairing:
    """Bilinear form H- x H+ -> k(q) twisted by gamma.

    gram_fn(x_label, a_label) is consulted only for equal degrees and its
    values are cached; pairing of inhomogeneous elements is the bilinear
    extension.
    """

    def __init__(self, minus, plus, gamma, gram_fn, name=None):
        if minus.rank != plus.rank:
            raise ValueError("paired presentations must share the grading rank")
        if not isinstance(gamma, TwistingDatum):
            raise TypeError("gamma must be a TwistingDatum")
        if gamma.rank != plus.rank:
            raise ValueError("gamma rank does not match the grading rank")
        self.minus = minus
        self.plus = plus
        self.gamma = gamma
        self._gram_fn = gram_fn
        self.name = name or "%s|%s" % (minus.name, plus.name)
        self._values = {}
        self._blocks = {}

    def pair_labels(self, x_label, a_label):
        if x_label.degree != a_label.degree:
            return ZERO
        key = (x_label, a_label)
        hit = self._values.get(key)
        if hit is None:
            hit = self._values.setdefault(key, self._gram_fn(x_label, a_label))
        return hit

    def pair(self, x, a):
        """Pairing of a minus element with a plus element."""
        total = ZERO
        for xl, xc in x.terms.items():
            for al, ac in a.terms.items():
                if xl.degree == al.degree:
                    v = self.pair_labels(xl, al)
                    if not v.is_zero:
                        total = total + xc * ac * v
        return total

    def pair_tensor(self, s, t):
        """Pairing of tensor squares: <x tensor y, a tensor b> factorwise."""
        total = ZERO
        for (xl, yl), c in s.terms.items():
            for (al, bl), d in t.terms.items():
                if xl.degree == al.degree and yl.degree == bl.degree:
                    v = self.pair_labels(xl, al)
                    if v.is_zero:
                        continue
                    w = self.pair_labels(yl, bl)
                    if w.is_zero:
                        continue
                    total = total + c * d * v * w
        return total

    def gram_block(self, degree):
        """Minus labels, plus labels, and the Gram matrix at one degree."""
        degree = tuple(degree)
        hit = self._blocks.get(degree)
        if hit is None:
            rows = self.minus.basis(degree)
            cols = self.plus.basis(degree)
            matrix = tuple(tuple(self.pair_labels(x, a) for a in cols) for x in rows)
            hit = self._blocks.setdefault(degree, (rows, cols, matrix))
        return hit

    def gram_to_json(self, N):
        """Gram blocks for all degrees of total <= N, entries as strings.

        Keys are comma-joined degree tuples; values carry the two label lists
        and the matrix in row-major order.
        """
        out = {}
        for degree in hopf.degrees_up_to(self.plus.rank, N):
            rows, cols, matrix = self.gram_block(degree)
            out[",".join(str(d) for d in degree)] = {
                "minus_labels": [self.minus.label_text(l) for l in rows],
                "plus_labels": [self.plus.label_text(l) for l in cols],
                "entries": [[str(v) for v in row] for row in matrix],
            }
        return out

    def __repr__(self):
        return "TwistedPairing(%s)" % self.name


def check_pairing_axioms(P, N):
    """Verify both multiplicativity identities and the unit/counit laws on
    basis triples of total degree <= N."""
    minus, plus = P.minus, P.plus
    gp = P.gamma.prime
    gpp = P.gamma.doubleprime

    # unit rows: <1, a> = eps(a), <x, 1> = eps(x)
    for a in plus.labels_up_to(N):
        lhs = P.pair(minus.unit_element(), GradedElement.from_label(a))
        if lhs != plus.counit_label(a):
            return failing("check_pairing_axioms", P.name, N,
                           identity="unit against plus", label=plus.label_text(a),
                           lhs=lhs, rhs=plus.counit_label(a))
    for x in minus.labels_up_to(N):
        lhs = P.pair(GradedElement.from_label(x), plus.unit_element())
        if lhs != minus.counit_label(x):
            return failing("check_pairing_axioms", P.name, N,
                           identity="unit against minus", label=minus.label_text(x),
                           lhs=lhs, rhs=minus.counit_label(x))

    # <xy, a> = c^gamma'(|x|,|y|) <x tensor y, Delta a>
    # The product degree |x|+|y| and the paired element degree |a| are each
    # bounded by N; only |a| = |x|+|y| can be nonzero, but mismatches are
    # asserted zero as well.
    for x in minus.labels_up_to(N):
        dx = deg_total(x.degree)
        for y in minus.labels_up_to(N - dx):
            for a in plus.labels_up_to(N):
                xy = minus.product(x, y)
                lhs = P.pair(xy, GradedElement.from_label(a))
                s = hopf.TensorElement._raw({(x, y): ONE})
                rhs = q_power(gp.evaluate(x.degree, y.degree)) * \
                    P.pair_tensor(s, plus.coproduct(a))
                if lhs != rhs:
                    return failing(
                        "check_pairing_axioms", P.name, N,
                        identity="product-coproduct (minus side)",
                        labels="%s, %s | %s" % (minus.label_text(x),
                                                minus.label_text(y),
                                                plus.label_text(a)),
                        lhs=lhs, rhs=rhs)

    # <x, ab> = c^gamma''(|a|,|b|) <Delta x, a tensor b>
    for a in plus.labels_up_to(N):
        da = deg_total(a.degree)
        for b in plus.labels_up_to(N - da):
            for x in minus.labels_up_to(N):
                ab = plus.product(a, b)
                lhs = P.pair(GradedElement.from_label(x), ab)
                t = hopf.TensorElement._raw({(a, b): ONE})
                rhs = q_power(gpp.evaluate(a.degree, b.degree)) * \
                    P.pair_tensor(minus.coproduct(x), t)
                if lhs != rhs:
                    return failing(
                        "check_pairing_axioms", P.name, N,
                        identity="coproduct-product (plus side)",
                        labels="%s | %s, %s" % (minus.label_text(x),
                                                plus.label_text(a),
                                                plus.label_text(b)),
                        lhs=lhs, rhs=rhs)

    return passing("check_pairing_axioms", P.name, N)


def perfectness_check(P, N):
    """Nonvanishing of every Gram determinant for degrees of total <= N.

    Square blocks are required; a non-square block is itself a failure."""
    for degree in hopf.degrees_up_to(P.plus.rank, N):
        rows, cols, matrix = P.gram_block(degree)
        if len(rows) != len(cols):
            return failing("perfectness_check", P.name, N, degree=degree,
                           reason="basis sizes differ (%d vs %d)" % (len(rows), len(cols)))
        det = det_bareiss([list(r) for r in matrix])
        if det.is_zero:
            return failing("perfectness_check", P.name, N, degree=degree,
                           reason="singular Gram block")
    return passing("perfectness_check", P.name, N)


def antipode_adjointness_check(P, N):
    """Verify <x, S(a)> = <S(x), a> on basis pairs of degree total <= N.

    Meaningful only when gamma' = gamma''; otherwise the hypothesis fails
    and the check refuses to run rather than reporting a failure.
    """
    if P.gamma.prime != P.gamma.doubleprime:
        raise HypothesisError(
            "antipode adjointness requires gamma' = gamma''; "
            "%s has gamma = %s" % (P.name, P.gamma))
    for x in P.minus.labels_up_to(N):
        for a in P.plus.labels_up_to(N):
            if x.degree != a.degree:
                continue
            lhs = P.pair(GradedElement.from_label(x),
                         antipode(P.plus, GradedElement.from_label(a)))
            rhs = P.pair(antipode(P.minus, GradedElement.from_label(x)),
                         GradedElement.from_label(a))
            if lhs != rhs:
                return failing("antipode_adjointness_check", P.name, N,
                               labels="%s | %s" % (P.minus.label_text(x),
                                                   P.plus.label_text(a)),
                               lhs=lhs, rhs=rhs)
    return passing("antipode_adjointness_check", P.name, N)


def dual_presentation_check(P, N):
    """Confirm the minus twisting equals the dual of (chi, gamma) and that
    the minus side satisfies the bialgebra axioms with it, up to degree N."""
    expected = dual_twisting(P.plus.twisting, P.gamma)
    if P.minus.twisting != expected:
        return failing("dual_presentation_check", P.name, N,
                       declared=P.minus.twisting, expected=expected)
    inner = hopf.check_bialgebra(P.minus, N)
    if not inner.passed:
        return failing("dual_presentation_check", P.name, N,
                       reason="minus side fails bialgebra axioms",
                       witness=inner.witness)
    return passing("dual_presentation_check", P.name, N)
