"""Twisted Heisenberg doubles: smash products of a paired pair of
presentations, their Fock representation, and the verification suites.

The double exists only for compatible data (chi' = -(gamma')^T); its
elements are spanned by normal forms a # x with a in the plus algebra and x
in the minus algebra, and the product is

    (a#x)(b#y) = sum over Delta(x) = x1 (x) x2 of
        q^(gamma''(|b|,|x2|) + xi''(|b|-|x1|,|x2|)) (a * x1(b)) # (x2 y)

where x1(b) is the twisted left regular action of the minus side on the
plus side through the pairing.  Degrees inside the double are signed:
deg(a#x) = |a| - |x|.
"""

from __future__ import annotations

from collections import namedtuple

from .hopf import (GradedElement, coeff_prefix, degrees_up_to, element_str,
                   multiply, scalar_term_str)
from .linalg import sparse_rank
from .pairing import TwistedPairing
from .report import failing, passing
from .scalars import ONE, ZERO, RatFunc, q_power
from .twisting import (BiadditiveMap, TwistingDatum, compatibility_check,
                       deg_sub, deg_total)


class IncompatiblePairError(ValueError):
    """The twisting data do not satisfy chi' = -(gamma')^T."""


GenToken = namedtuple("GenToken", ["name", "args", "power"])
GenToken.__new__.__defaults__ = ((), 1)


def _acc(d, k, c):
    s = d.get(k)
    s = c if s is None else s + c
    if s.is_zero:
        d.pop(k, None)
    else:
        d[k] = s


class DoubleElement:
    """Linear combination of normal-form pairs (plus label, minus label)."""

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

    @property
    def is_zero(self):
        return not self.terms

    def coeff(self, pair):
        return self.terms.get(pair, ZERO)

    def __add__(self, other):
        if not isinstance(other, DoubleElement):
            return NotImplemented
        t = dict(self.terms)
        for p, c in other.terms.items():
            _acc(t, p, c)
        return DoubleElement._raw(t)

    def __neg__(self):
        return DoubleElement._raw({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DoubleElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc.from_int(c)
        if c.is_zero:
            return DoubleElement._raw({})
        return DoubleElement._raw({p: c * v for p, v in self.terms.items()})

    def max_term_degree(self):
        """Largest signed total degree |a| - |x| in the support; 0 if zero."""
        if not self.terms:
            return 0
        return max(deg_total(a.degree) - deg_total(x.degree) for a, x in self.terms)

    def __eq__(self, other):
        if not isinstance(other, DoubleElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return "DoubleElement(%r)" % (self.terms,)


def left_regular_action(P, x, a):
    """Action of the minus element x on the plus element a:

    x(a) = sum over Delta(a) = a1 (x) a2 of q^(gamma'(|a1|,|a2|)) <x, a2> a1.
    """
    gp = P.gamma.prime
    out = {}
    for al, ac in a.terms.items():
        for (b1, b2), c in P.plus.coproduct(al).terms.items():
            for xl, xc in x.terms.items():
                if xl.degree != b2.degree:
                    continue
                v = P.pair_labels(xl, b2)
                if v.is_zero:
                    continue
                _acc(out, b1, ac * c * xc * v * q_power(gp.evaluate(b1.degree, b2.degree)))
    return GradedElement._raw(out)


class HeisenbergDouble:
    """Smash-product context for a compatible twisted pairing.

    perfect marks whether the pairing is (believed) nondegenerate; contexts
    built from degenerate forms still present the algebra and its relations
    but refuse the Fock-space suites that presuppose duality.
    """

    def __init__(self, pairing, name=None, perfect=True):
        if not isinstance(pairing, TwistedPairing):
            raise TypeError("pairing must be a TwistedPairing")
        if not compatibility_check(pairing.plus.twisting, pairing.gamma):
            raise IncompatiblePairError(
                "cannot form the double of %s: chi' = %s but -(gamma')^T = %s"
                % (pairing.name, pairing.plus.twisting.prime,
                   -pairing.gamma.prime.transpose()))
        self.pairing = pairing
        self.plus = pairing.plus
        self.minus = pairing.minus
        self.gamma = pairing.gamma
        self.xi = pairing.minus.twisting
        self.name = name or pairing.name
        self.perfect = perfect
        self.rank = pairing.plus.rank
        self._action = {}
        self._smash = {}
        self._generators = {}
        self.plus_gen_fn = None
        self.minus_gen_fn = None

    # -- basic elements --------------------------------------------------

    def unit(self):
        return DoubleElement._raw(
            {(self.plus.unit_label, self.minus.unit_label): ONE})

    def embed_plus(self, a):
        u = self.minus.unit_label
        return DoubleElement._raw({(l, u): c for l, c in a.terms.items()})

    def embed_minus(self, x):
        u = self.plus.unit_label
        return DoubleElement._raw({(u, l): c for l, c in x.terms.items()})

    def register_generator(self, name, builder):
        """builder(args) -> ("plus"|"minus", GradedElement); context-free so
        shifted copies of the context can reuse it."""
        self._generators[name] = builder

    def generator_element(self, name, args=()):
        if name not in self._generators:
            raise KeyError("unknown generator %r for instance %s" % (name, self.name))
        side, el = self._generators[name](args)
        return self.embed_plus(el) if side == "plus" else self.embed_minus(el)

    def generator_names(self):
        return sorted(self._generators)

    # -- cached structure ------------------------------------------------

    def action_label(self, x_label, a_label):
        """Left regular action on basis labels, cached."""
        key = (x_label, a_label)
        hit = self._action.get(key)
        if hit is None:
            val = left_regular_action(self.pairing,
                                      GradedElement.from_label(x_label),
                                      GradedElement.from_label(a_label))
            hit = self._action.setdefault(key, val)
        return hit

    def action(self, x_label, b):
        """Action of a minus basis label on a plus element."""
        out = {}
        for bl, bc in b.terms.items():
            for l, c in self.action_label(x_label, bl).terms.items():
                _acc(out, l, bc * c)
        return GradedElement._raw(out)

    def smash_labels(self, a, x, b, y):
        """(a#x)(b#y) on basis labels, cached."""
        key = (a, x, b, y)
        hit = self._smash.get(key)
        if hit is not None:
            return hit
        gpp = self.gamma.doubleprime
        xipp = self.xi.doubleprime
        bdeg = b.degree
        out = {}
        for (x1, x2), c in self.minus.coproduct(x).terms.items():
            act = self.action_label(x1, b)
            if act.is_zero:
                continue
            e = gpp.evaluate(bdeg, x2.degree) + \
                xipp.evaluate(deg_sub(bdeg, x1.degree), x2.degree)
            coeff = c * q_power(e)
            right = self.minus.product(x2, y)
            for u, cu in act.terms.items():
                left = self.plus.product(a, u)
                k0 = coeff * cu
                for la, ca in left.terms.items():
                    k1 = k0 * ca
                    for lx, cx in right.terms.items():
                        _acc(out, (la, lx), k1 * cx)
        return self._smash.setdefault(key, DoubleElement._raw(out))

    # -- derived contexts ------------------------------------------------

    def shifted(self, alpha):
        """The double with both coproducts shifted by alpha and the pairing
        twisting moved to (gamma' - alpha, gamma'' - alpha); compatibility is
        preserved and the normal-form basis is unchanged."""
        from .hopf import shifted_presentation
        zero = BiadditiveMap.zero(self.rank)
        plus_s = shifted_presentation(self.plus, alpha, zero)
        minus_s = shifted_presentation(self.minus, alpha, zero)
        gamma_s = TwistingDatum(self.gamma.prime - alpha,
                                self.gamma.doubleprime - alpha)
        pairing_s = TwistedPairing(minus_s, plus_s, gamma_s,
                                   self.pairing._gram_fn,
                                   name=self.pairing.name + "~shifted")
        out = HeisenbergDouble(pairing_s, name=self.name + "~shifted",
                               perfect=self.perfect)
        out._generators = dict(self._generators)
        out.plus_gen_fn = self.plus_gen_fn
        out.minus_gen_fn = self.minus_gen_fn
        return out

    # -- printing --------------------------------------------------------

    def pair_sort_key(self, pair):
        a, x = pair
        return self.plus.label_sort_key(a) + self.minus.label_sort_key(x)

    def pair_text(self, pair):
        a, x = pair
        pu, mu = self.plus.unit_label, self.minus.unit_label
        if a == pu and x == mu:
            return "1"
        if x == mu:
            return self.plus.label_text(a)
        if a == pu:
            return self.minus.label_text(x)
        return self.plus.label_text(a) + "#" + self.minus.label_text(x)

    def element_str(self, u):
        """Canonical printed normal form, highest-degree terms first."""
        if u.is_zero:
            return "0"
        unit_pair = (self.plus.unit_label, self.minus.unit_label)
        if set(u.terms) == {unit_pair}:
            return str(u.terms[unit_pair])
        parts = []
        for p in sorted(u.terms, key=self.pair_sort_key, reverse=True):
            c = u.terms[p]
            if p == unit_pair:
                s = scalar_term_str(c)
            else:
                s = coeff_prefix(c) + self.pair_text(p)
            if not parts:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(" - " + s[1:])
            else:
                parts.append(" + " + s)
        return "".join(parts)

    def __repr__(self):
        return "HeisenbergDouble(%s)" % self.name


# -- products and normal ordering ---------------------------------------


def smash_multiply(D, u, v):
    """Product of two double elements, bilinear over smash_labels."""
    out = {}
    for (a, x), c in u.terms.items():
        for (b, y), d in v.terms.items():
            cd = c * d
            for p, k in D.smash_labels(a, x, b, y).terms.items():
                _acc(out, p, cd * k)
    return DoubleElement._raw(out)


def normal_order(D, word):
    """Fold a generator word left to right into its normal form.

    word is an iterable of GenToken(name, args, power); the result expresses
    the product in the a # x basis.
    """
    out = D.unit()
    for tok in word:
        if tok.power < 0:
            raise ValueError("generator powers must be nonnegative: %r" % (tok,))
        g = D.generator_element(tok.name, tuple(tok.args))
        for _ in range(tok.power):
            out = smash_multiply(D, out, g)
    return out


# -- Fock representation ------------------------------------------------


def fock_apply(D, u, b):
    """Action of the double element u on the plus element b:
    (a#x)(b) = a * x(b)."""
    out = GradedElement.zero()
    for (a, x), c in u.terms.items():
        img = D.action(x, b)
        if img.is_zero:
            continue
        out = out + multiply(D.plus, GradedElement.from_label(a), img).scale(c)
    return out


def fock_matrix(D, u, Nin, Nout=None):
    """Matrix of u on the plus algebra, inputs of total degree <= Nin.

    Returns (row_labels, col_labels, rows).  When Nout is omitted the output
    window is inferred as Nin plus the largest signed term degree of u; an
    explicit window that cannot hold the image is an error.
    """
    cols = D.plus.labels_up_to(Nin)
    images = [fock_apply(D, u, GradedElement.from_label(b)) for b in cols]
    if Nout is None:
        Nout = max(0, Nin + u.max_term_degree())
    rows = D.plus.labels_up_to(Nout)
    index = {l: i for i, l in enumerate(rows)}
    matrix = [[ZERO] * len(cols) for _ in rows]
    for j, img in enumerate(images):
        for l, c in img.terms.items():
            i = index.get(l)
            if i is None:
                raise ValueError(
                    "output window Nout=%d cannot hold a degree-%r term of the image"
                    % (Nout, l.degree))
            matrix[i][j] = c
    return rows, cols, matrix


# -- verification suites ------------------------------------------------


def _gen_labels(H, hook, N):
    if hook is not None:
        return [l for l in hook(N) if deg_total(l.degree) <= N]
    return H.labels_up_to(N)


def verify_commutation(D, N):
    """Operator identity behind the smash product: for minus x, plus a,

        x(a b) = sum q^(gamma''(|a|,|x2|) + xi''(|a|-|x1|,|x2|)) x1(a) x2(b)

    checked for all generator pairs and all basis inputs b of degree <= N."""
    gpp = D.gamma.doubleprime
    xipp = D.xi.doubleprime
    plus_gens = _gen_labels(D.plus, D.plus_gen_fn, N)
    minus_gens = _gen_labels(D.minus, D.minus_gen_fn, N)
    inputs = D.plus.labels_up_to(N)
    for a in plus_gens:
        ea = GradedElement.from_label(a)
        for x in minus_gens:
            cop = D.minus.coproduct(x).terms
            for b in inputs:
                ab = D.plus.product(a, b)
                lhs = GradedElement.zero()
                for l, c in ab.terms.items():
                    lhs = lhs + D.action_label(x, l).scale(c)
                rhs = GradedElement.zero()
                for (x1, x2), c in cop.items():
                    e = gpp.evaluate(a.degree, x2.degree) + \
                        xipp.evaluate(deg_sub(a.degree, x1.degree), x2.degree)
                    part = multiply(D.plus, D.action_label(x1, a),
                                    D.action_label(x2, b))
                    rhs = rhs + part.scale(c * q_power(e))
                if lhs != rhs:
                    return failing(
                        "verify_commutation", D.name, N,
                        labels="x=%s, a=%s, b=%s" % (D.minus.label_text(x),
                                                     D.plus.label_text(a),
                                                     D.plus.label_text(b)),
                        lhs=element_str(D.plus, lhs), rhs=element_str(D.plus, rhs))
    return passing("verify_commutation", D.name, N)


def _require_perfect(D, check, N):
    if not D.perfect:
        raise ValueError(
            "%s presupposes a nondegenerate pairing; context %s is "
            "presentation-only" % (check, D.name))


def verify_vacuum(D, N):
    """The unit of the plus side is a vacuum vector: every positive-degree
    minus element annihilates it, and the joint kernel of the minus action
    on each positive stratum of total degree <= N is zero."""
    _require_perfect(D, "verify_vacuum", N)
    unit = GradedElement.from_label(D.plus.unit_label)
    for x in D.minus.labels_up_to(N):
        if deg_total(x.degree) == 0:
            continue
        img = D.action(x, unit)
        if not img.is_zero:
            return failing("verify_vacuum", D.name, N,
                           reason="minus element does not annihilate the vacuum",
                           label=D.minus.label_text(x),
                           image=element_str(D.plus, img))
    for degree in degrees_up_to(D.rank, N):
        if deg_total(degree) == 0:
            continue
        stratum = D.plus.basis(degree)
        minus_labels = [x for x in D.minus.labels_up_to(deg_total(degree))
                        if deg_total(x.degree) > 0]
        ids = {}
        rows = []
        for b in stratum:
            col = {}
            for x in minus_labels:
                for l, c in D.action_label(x, b).terms.items():
                    k = ids.setdefault((x, l), len(ids))
                    col[k] = c
            rows.append(col)
        rank = sparse_rank(rows)
        if rank != len(stratum):
            return failing("verify_vacuum", D.name, N, degree=degree,
                           reason="joint kernel has dimension %d"
                           % (len(stratum) - rank))
    return passing("verify_vacuum", D.name, N)


def verify_faithful(D, lam, N):
    """Injectivity of the Fock representation on the signed stratum lam,
    restricted to normal-form pairs with both factor degrees of total <= N.

    Inputs up to the largest minus degree in the stratum suffice: inputs of
    degree m only see minus factors of degree <= m, so the strata are
    triangular and perfectness clears them bottom-up."""
    _require_perfect(D, "verify_faithful", N)
    lam = tuple(lam)
    pairs = []
    for da in degrees_up_to(D.rank, N):
        for a in D.plus.basis(da):
            for dx in degrees_up_to(D.rank, N):
                if deg_sub(da, dx) != lam:
                    continue
                for x in D.minus.basis(dx):
                    pairs.append((a, x))
    if not pairs:
        return passing("verify_faithful", D.name, N)
    nin = max(deg_total(x.degree) for _, x in pairs)
    inputs = D.plus.labels_up_to(nin)
    ids = {}
    rows = []
    for a, x in pairs:
        flat = {}
        for b in inputs:
            img = fock_apply(D, DoubleElement._raw({(a, x): ONE}),
                             GradedElement.from_label(b))
            for l, c in img.terms.items():
                k = ids.setdefault((b, l), len(ids))
                flat[k] = c
        rows.append(flat)
    rank = sparse_rank(rows)
    if rank != len(pairs):
        return failing("verify_faithful", D.name, N, stratum=lam,
                       reason="representation matrix has rank %d on %d pairs"
                       % (rank, len(pairs)))
    return passing("verify_faithful", D.name, N)


def verify_shift_invariance(D, alpha, N):
    """Structure constants of the double are unchanged by a simultaneous
    coproduct shift alpha on both sides: smash products of all normal-form
    basis pairs with total degree sum <= N agree coefficientwise."""
    D2 = D.shifted(alpha)
    plus_labels = D.plus.labels_up_to(N)
    minus_labels = D.minus.labels_up_to(N)
    quads = []
    for a in plus_labels:
        da = deg_total(a.degree)
        for x in minus_labels:
            dax = da + deg_total(x.degree)
            if dax <= N:
                quads.append((a, x, dax))
    for a, x, d1 in quads:
        for b, y, d2 in quads:
            if d1 + d2 > N:
                continue
            lhs = D.smash_labels(a, x, b, y)
            rhs = D2.smash_labels(a, x, b, y)
            if lhs != rhs:
                return failing(
                    "verify_shift_invariance", D.name, N,
                    labels="(%s # %s)(%s # %s)" % (
                        D.plus.label_text(a), D.minus.label_text(x),
                        D.plus.label_text(b), D.minus.label_text(y)),
                    lhs=D.element_str(lhs), rhs=D2.element_str(rhs))
    return passing("verify_shift_invariance", D.name, N)
