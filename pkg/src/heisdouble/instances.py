"""Concrete instances: the quantum Weyl algebra, quantum Heisenberg algebras
attached to a symmetric integer matrix, and lattice Heisenberg algebras.

Each builder returns an :class:`Instance` bundling the two presentations,
the twisted pairing, and the double context, with the instance's generator
names registered for expression evaluation and normal ordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial

from .double import HeisenbergDouble
from .hopf import (BasisLabel, GradedElement, HopfPresentation, TensorElement,
                   shifted_presentation)
from .linalg import det_bareiss
from .pairing import TwistedPairing
from .partitions import (check_partition, mp_empty, mp_remove_part,
                         mp_sub_multisets, mp_union, multipartitions_of,
                         multiplicities, partitions_of)
from .report import failing, passing
from .scalars import (ONE, RatFunc, ZERO, q_binomial, q_factorial, q_int_sym)
from .twisting import BiadditiveMap, TwistingDatum


class ConfigError(ValueError):
    """An instance configuration could not be interpreted."""


class SingularFormError(ValueError):
    """The symmetrized form fails the nonsingularity precondition."""


@dataclass
class Instance:
    """A built instance: paired presentations plus the double context."""

    name: str
    kind: str
    pairing: TwistedPairing
    double: HeisenbergDouble
    meta: dict = field(default_factory=dict)

    @property
    def plus(self):
        return self.pairing.plus

    @property
    def minus(self):
        return self.pairing.minus


# -- quantum Weyl algebra ------------------------------------------------


def _weyl_presentation(name, letter, twisting, binomial):
    unit = BasisLabel(0, (0,))

    def basis_fn(degree):
        return (BasisLabel(degree[0], degree),)

    def product_fn(l1, l2):
        n = l1.key + l2.key
        return GradedElement.from_label(BasisLabel(n, (n,)))

    def coproduct_fn(label):
        n = label.key
        return TensorElement({(BasisLabel(k, (k,)), BasisLabel(n - k, (n - k,))):
                              binomial(n, k) for k in range(n + 1)})

    def text_fn(label):
        if label.key == 0:
            return "1"
        if label.key == 1:
            return letter
        return "%s^%d" % (letter, label.key)

    return HopfPresentation(name, 1, twisting, unit, basis_fn, product_fn,
                            coproduct_fn, text_fn)


def build_weyl(shift=None):
    """The quantum Weyl algebra as a twisted Heisenberg double.

    Plus side k[x] with q-binomial coproduct and chi = (0, zeta); minus side
    k[d] carrying the inverted q-binomials and the dual twisting (-zeta, 0);
    pairing <d^m, x^n> = delta_mn [n]_q! twisted by gamma = (0, zeta), where
    zeta(m, n) = mn.
    """
    zeta = BiadditiveMap(((1,),))
    zero = BiadditiveMap.zero(1)
    chi = TwistingDatum(zero, zeta)
    xi = TwistingDatum(-zeta, zero)
    gamma = TwistingDatum(zero, zeta)

    plus = _weyl_presentation("weyl+", "x", chi, q_binomial)
    minus = _weyl_presentation(
        "weyl-", "d", xi, lambda n, k: q_binomial(n, k).subs_q_inverse())

    def gram_fn(x_label, a_label):
        return q_factorial(a_label.key)

    pairing = TwistedPairing(minus, plus, gamma, gram_fn, name="weyl")
    double = HeisenbergDouble(pairing, name="weyl")
    double.register_generator(
        "x", lambda args: ("plus", _power_label_element(args, "x")))
    double.register_generator(
        "d", lambda args: ("minus", _power_label_element(args, "d")))
    inst = Instance("weyl", "weyl", pairing, double)
    if shift is not None:
        inst = shifted_instance(inst, *shift)
    return inst


def _power_label_element(args, letter):
    if args:
        raise ConfigError("generator %s takes no arguments" % letter)
    return GradedElement.from_label(BasisLabel(1, (1,)))


# -- symmetric-algebra presentations (shared by qheis and lattice) -------


def mp_label(mp):
    return BasisLabel(mp, (sum(sum(lam) for lam in mp),))


def _sym_presentation(name, ncolors, letter):
    unit = mp_label(mp_empty(ncolors))
    twisting = TwistingDatum.zero(1)

    def basis_fn(degree):
        return tuple(mp_label(mp) for mp in multipartitions_of(degree[0], ncolors))

    def product_fn(l1, l2):
        return GradedElement.from_label(mp_label(mp_union(l1.key, l2.key)))

    def coproduct_fn(label):
        t = {}
        for mu, ways in mp_sub_multisets(label.key):
            rest = tuple(_diff_sorted(lam, m) for lam, m in zip(label.key, mu))
            t[(mp_label(mu), mp_label(rest))] = RatFunc.from_int(ways)
        return TensorElement._raw(t)

    def text_fn(label):
        parts = []
        for i, lam in enumerate(label.key, start=1):
            for k in lam:
                parts.append("%s[%d,%d]" % (letter, k, i))
        return "*".join(parts) if parts else "1"

    return HopfPresentation(name, 1, twisting, unit, basis_fn, product_fn,
                            coproduct_fn, text_fn)


def _diff_sorted(lam, mu):
    out = list(lam)
    for x in mu:
        out.remove(x)
    return tuple(out)


def _single(n, i, ncolors):
    """The multipartition with the single part n in color i."""
    if not (1 <= i <= ncolors):
        raise ConfigError("color %r out of range 1..%d" % (i, ncolors))
    if n < 1:
        raise ConfigError("part %r must be a positive integer" % (n,))
    mp = list(mp_empty(ncolors))
    mp[i - 1] = (n,)
    return tuple(mp)


# -- pairing values ------------------------------------------------------


def sym_pair(factor, mp_minus, mp_plus):
    """Pairing of two power-sum monomials: the permutation sum collapses to
    a product, over part values k, of permanents of the color matrices
    (factor(k, i_a, j_b))."""
    by_value = {}
    for i, lam in enumerate(mp_minus, start=1):
        for k in lam:
            by_value.setdefault(k, ([], []))[0].append(i)
    for j, lam in enumerate(mp_plus, start=1):
        for k in lam:
            by_value.setdefault(k, ([], []))[1].append(j)
    total = ONE
    for k, (rows, cols) in sorted(by_value.items()):
        if len(rows) != len(cols):
            return ZERO
        total = total * _permanent([[factor(k, i, j) for j in cols] for i in rows])
        if total.is_zero:
            return ZERO
    return total


def _permanent(m):
    n = len(m)
    if n == 0:
        return ONE
    used = [False] * n

    def rec(i):
        if i == n:
            return ONE
        acc = ZERO
        row = m[i]
        for j in range(n):
            if not used[j] and not row[j].is_zero:
                used[j] = True
                acc = acc + row[j] * rec(i + 1)
                used[j] = False
        return acc

    return rec(0)


def sym_pair_perm(factor, mp_minus, mp_plus):
    """Independent route to the same value: the raw sum over permutations of
    the colored sequences, with a Kronecker delta on part values."""
    seq_l = []
    for i, lam in enumerate(mp_minus, start=1):
        seq_l.extend((k, i) for k in lam)
    seq_r = []
    for j, lam in enumerate(mp_plus, start=1):
        seq_r.extend((k, j) for k in lam)
    if len(seq_l) != len(seq_r):
        return ZERO
    n = len(seq_l)
    used = [False] * n

    def rec(t):
        if t == n:
            return ONE
        k, i = seq_l[t]
        acc = ZERO
        for s in range(n):
            if used[s]:
                continue
            k2, j = seq_r[s]
            if k2 != k:
                continue
            f = factor(k, i, j)
            if f.is_zero:
                continue
            used[s] = True
            acc = acc + f * rec(t + 1)
            used[s] = False
        return acc

    return rec(0)


def q_factor(A):
    """factor(k, i, j) = [k <i,j>] [k] / k for the quantum Heisenberg form."""
    def factor(k, i, j):
        return q_int_sym(k * A[i - 1][j - 1]) * q_int_sym(k) / k
    return factor


def lattice_factor(B):
    """factor(k, i, j) = k <v_i, v_j> for the lattice form."""
    def factor(k, i, j):
        return RatFunc.from_int(k * B[i - 1][j - 1])
    return factor


def qheis_pair(A, mp_minus, mp_plus):
    return sym_pair(q_factor(A), mp_minus, mp_plus)


def qheis_pair_perm(A, mp_minus, mp_plus):
    return sym_pair_perm(q_factor(A), mp_minus, mp_plus)


def lattice_pair(B, mp_minus, mp_plus):
    return sym_pair(lattice_factor(B), mp_minus, mp_plus)


# -- power sums, phi operators, and complete homogeneous elements --------


def z_quantum(lam):
    """Z_lambda = prod over part values k of [k]^m_k m_k! (symmetric [k])."""
    lam = check_partition(lam)
    out = ONE
    for k, m in multiplicities(lam).items():
        out = out * q_int_sym(k) ** m * factorial(m)
    return out


def z_classical(lam):
    """prod k^m_k m_k!, the classical specialization of Z_lambda."""
    lam = check_partition(lam)
    out = 1
    for k, m in multiplicities(lam).items():
        out *= k ** m * factorial(m)
    return out


def phi_derivation(A, k, i, u):
    """The derivation phi_{k,i} on power-sum monomials:

    phi_{k,i}(p_{lam,j}) = m_k(lam) [k<i,j>] ([k]/k) p_{lam minus k, j},
    extended as a color-wise derivation to multipartition monomials."""
    out = {}
    for label, c in u.terms.items():
        mp = label.key
        for j0, lam in enumerate(mp):
            m = lam.count(k)
            if not m:
                continue
            f = q_int_sym(k * A[i - 1][j0]) * q_int_sym(k) / k * m
            if f.is_zero:
                continue
            nl = mp_label(mp_remove_part(mp, k, j0 + 1))
            prev = out.get(nl)
            s = c * f if prev is None else prev + c * f
            if s.is_zero:
                out.pop(nl, None)
            else:
                out[nl] = s
    return GradedElement._raw(out)


def h_element(ncolors, n, i):
    """Complete homogeneous element h_{n,i} = sum over lam of p_{lam,i}/Z_lam."""
    if n < 0:
        return GradedElement.zero()
    if n == 0:
        return GradedElement.from_label(mp_label(mp_empty(ncolors)))
    terms = {}
    for lam in partitions_of(n):
        terms[mp_label(_color_mp(lam, i, ncolors))] = ONE / z_quantum(lam)
    return GradedElement._raw(terms)


def _color_mp(lam, i, ncolors):
    mp = list(mp_empty(ncolors))
    mp[i - 1] = tuple(lam)
    return tuple(mp)


def h_adjoint(A, k, i, n, j, double=None):
    """The action of h'_{k,i} on h_{n,j}, by the closed case split:

    <i,j> = 2  : [k+1] h_{n-k,j}
    <i,j> = -1 : h_{n-k,j} for k in {0,1}, else 0
    <i,j> = 0  : h_{n,j} for k = 0, else 0

    Other diagonal values fall back to the left regular action and require
    the double context.
    """
    ncolors = len(A)
    if k < 0 or n < 0:
        return GradedElement.zero()
    aij = A[i - 1][j - 1]
    if k == 0:
        return h_element(ncolors, n, j)
    if aij == 2:
        return h_element(ncolors, n - k, j).scale(q_int_sym(k + 1))
    if aij == -1:
        if k == 1:
            return h_element(ncolors, n - 1, j)
        return GradedElement.zero()
    if aij == 0:
        return GradedElement.zero()
    if double is None:
        raise ValueError(
            "h_adjoint has no closed form for <i,j> = %d; pass the double context"
            % aij)
    from .double import left_regular_action
    return left_regular_action(double.pairing, h_element(ncolors, k, i),
                               h_element(ncolors, n, j))


def nonsingularity_check(A, kmax):
    """Nonsingularity of the color matrices ([k <i,j>]) for 1 <= k <= kmax."""
    name = "form%s" % (tuple(tuple(r) for r in A),)
    for k in range(1, kmax + 1):
        m = [[q_int_sym(k * aij) for aij in row] for row in A]
        if det_bareiss(m).is_zero:
            return failing("nonsingularity_check", name, kmax, k=k,
                           reason="matrix [k<i,j>] is singular")
    return passing("nonsingularity_check", name, kmax)


# -- builders ------------------------------------------------------------


def _check_symmetric(m, what):
    m = tuple(tuple(int(v) for v in row) for row in m)
    n = len(m)
    if any(len(row) != n for row in m) or n == 0:
        raise ConfigError("%s must be a nonempty square matrix" % what)
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise ConfigError("%s must be symmetric" % what)
    return m


def _register_sym_generators(double, ncolors, with_h):
    def p_builder(args):
        n, i = _two_int_args(args, "p")
        return ("plus", GradedElement.from_label(mp_label(_single(n, i, ncolors))))

    def pp_builder(args):
        n, i = _two_int_args(args, "p'")
        return ("minus", GradedElement.from_label(mp_label(_single(n, i, ncolors))))

    double.register_generator("p", p_builder)
    double.register_generator("p'", pp_builder)
    if with_h:
        def h_builder(args):
            n, i = _two_int_args(args, "h")
            if not (1 <= i <= ncolors):
                raise ConfigError("color %r out of range 1..%d" % (i, ncolors))
            return ("plus", h_element(ncolors, n, i))

        def hp_builder(args):
            n, i = _two_int_args(args, "h'")
            if not (1 <= i <= ncolors):
                raise ConfigError("color %r out of range 1..%d" % (i, ncolors))
            return ("minus", h_element(ncolors, n, i))

        double.register_generator("h", h_builder)
        double.register_generator("h'", hp_builder)

    def gen_labels(N):
        return [mp_label(_single(n, i, ncolors))
                for n in range(1, N + 1) for i in range(1, ncolors + 1)]

    double.plus_gen_fn = gen_labels
    double.minus_gen_fn = gen_labels


def _two_int_args(args, name):
    if len(args) != 2:
        raise ConfigError("generator %s requires two arguments [n,i]" % name)
    return int(args[0]), int(args[1])


def build_qheis(A, name=None, degree_bound=8, shift=None):
    """Quantum Heisenberg instance for a symmetric integer matrix A.

    Refuses when some color matrix ([k<i,j>]) with k <= degree_bound is
    singular, naming the offending k; verifications beyond degree_bound
    should raise the bound accordingly.
    """
    A = _check_symmetric(A, "cartan matrix")
    rep = nonsingularity_check(A, degree_bound)
    if not rep.passed:
        raise SingularFormError(
            "cannot build qheis: [k<i,j>] singular at k=%s" % rep.witness["k"])
    ncolors = len(A)
    name = name or "qheis[%d]" % ncolors
    plus = _sym_presentation(name + "+", ncolors, "p")
    minus = _sym_presentation(name + "-", ncolors, "p'")
    gamma = TwistingDatum.zero(1)
    factor = q_factor(A)

    def gram_fn(x_label, a_label):
        return sym_pair(factor, x_label.key, a_label.key)

    pairing = TwistedPairing(minus, plus, gamma, gram_fn, name=name)
    double = HeisenbergDouble(pairing, name=name)
    _register_sym_generators(double, ncolors, with_h=True)
    inst = Instance(name, "qheis", pairing, double, meta={"cartan": A})
    if shift is not None:
        inst = shifted_instance(inst, *shift)
    return inst


def build_lattice(B, name=None, shift=None):
    """Lattice Heisenberg instance for a symmetric integer form B.

    A degenerate form still yields the algebra and its relations, but the
    double context is flagged presentation-only and the Fock suites refuse.
    """
    B = _check_symmetric(B, "lattice form")
    ncolors = len(B)
    name = name or "lattice[%d]" % ncolors
    perfect = not det_bareiss(
        [[RatFunc.from_int(v) for v in row] for row in B]).is_zero
    plus = _sym_presentation(name + "+", ncolors, "p")
    minus = _sym_presentation(name + "-", ncolors, "p'")
    gamma = TwistingDatum.zero(1)
    factor = lattice_factor(B)

    def gram_fn(x_label, a_label):
        return sym_pair(factor, x_label.key, a_label.key)

    pairing = TwistedPairing(minus, plus, gamma, gram_fn, name=name)
    double = HeisenbergDouble(pairing, name=name, perfect=perfect)
    _register_sym_generators(double, ncolors, with_h=False)
    inst = Instance(name, "lattice", pairing, double, meta={"form": B})
    if shift is not None:
        inst = shifted_instance(inst, *shift)
    return inst


def shifted_instance(inst, alpha, beta=None):
    """Instance with both coproducts shifted by alpha and both products by
    beta; the pairing twisting moves to (gamma'-alpha+beta, gamma''-alpha+beta).

    The double construction re-checks compatibility, which holds exactly
    when beta is antisymmetric.
    """
    alpha = alpha if isinstance(alpha, BiadditiveMap) else BiadditiveMap(alpha)
    if beta is None:
        beta = BiadditiveMap.zero(alpha.rank)
    beta = beta if isinstance(beta, BiadditiveMap) else BiadditiveMap(beta)
    plus = shifted_presentation(inst.plus, alpha, beta)
    minus = shifted_presentation(inst.minus, alpha, beta)
    gamma = TwistingDatum(inst.pairing.gamma.prime - alpha + beta,
                          inst.pairing.gamma.doubleprime - alpha + beta)
    pairing = TwistedPairing(minus, plus, gamma, inst.pairing._gram_fn,
                             name=inst.pairing.name + "~shifted")
    double = HeisenbergDouble(pairing, name=inst.name + "~shifted",
                              perfect=inst.double.perfect)
    double._generators = dict(inst.double._generators)
    double.plus_gen_fn = inst.double.plus_gen_fn
    double.minus_gen_fn = inst.double.minus_gen_fn
    return Instance(inst.name + "~shifted", inst.kind, pairing, double,
                    meta=dict(inst.meta))


# -- standard matrices ---------------------------------------------------


def cartan_a(n):
    """Symmetric Cartan matrix of finite type A_n."""
    if n < 1:
        raise ValueError("A_n requires n >= 1")
    return tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0)
                       for j in range(n)) for i in range(n))


def cartan_affine_a(n):
    """Affine A_n^(1): the cycle on n+1 nodes (n >= 2), or the rank-2
    matrix [[2,-2],[-2,2]] for n = 1."""
    if n < 1:
        raise ValueError("affine A_n requires n >= 1")
    if n == 1:
        return ((2, -2), (-2, 2))
    size = n + 1
    return tuple(tuple(2 if i == j else
                       (-1 if (i - j) % size in (1, size - 1) else 0)
                       for j in range(size)) for i in range(size))


def cartan_affine_d4():
    """Affine D_4^(1): four leaves attached to a central node (listed last)."""
    return ((2, 0, 0, 0, -1),
            (0, 2, 0, 0, -1),
            (0, 0, 2, 0, -1),
            (0, 0, 0, 2, -1),
            (-1, -1, -1, -1, 2))


def identity_form(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_form(n):
    return tuple((0,) * n for _ in range(n))


def rank_one_form(n):
    return tuple((1,) * n for _ in range(n))


# -- configuration loading ----------------------------------------------


def load_instance(config):
    """Build an instance from a config dict or a path to a JSON file.

    Recognized shapes:
      {"type": "weyl", "shift": {...}?, "name": ...?}
      {"type": "qheis", "cartan": [[...]], "shift": ...?, "name": ...?}
      {"type": "lattice", "form": [[...]], "shift": ...?, "name": ...?}
    shift is {"alpha": [[...]]?, "beta": [[...]]?}.
    """
    if isinstance(config, str):
        try:
            with open(config) as fh:
                config = json.load(fh)
        except OSError as e:
            raise ConfigError("cannot read config: %s" % e) from None
        except json.JSONDecodeError as e:
            raise ConfigError("config is not valid JSON: %s" % e) from None
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    kind = config.get("type")
    name = config.get("name")
    shift = _parse_shift(config.get("shift"))
    try:
        if kind == "weyl":
            inst = build_weyl()
        elif kind == "qheis":
            if "cartan" not in config:
                raise ConfigError("qheis config requires a 'cartan' matrix")
            inst = build_qheis(config["cartan"], name=name)
        elif kind == "lattice":
            if "form" not in config:
                raise ConfigError("lattice config requires a 'form' matrix")
            inst = build_lattice(config["form"], name=name)
        else:
            raise ConfigError("unknown instance type %r" % (kind,))
    except (SingularFormError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(str(e)) from None
    if shift is not None:
        from .double import IncompatiblePairError
        try:
            inst = shifted_instance(inst, *shift)
        except IncompatiblePairError as e:
            raise ConfigError(str(e)) from None
    if name:
        inst.name = name
        inst.double.name = name
    return inst


def _parse_shift(raw):
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ConfigError("shift must be an object with alpha/beta matrices")
    alpha = raw.get("alpha")
    beta = raw.get("beta")
    if alpha is None and beta is None:
        raise ConfigError("shift requires at least one of alpha, beta")
    try:
        a = BiadditiveMap(alpha) if alpha is not None else None
        b = BiadditiveMap(beta) if beta is not None else None
    except ValueError as e:
        raise ConfigError(str(e)) from None
    if a is None:
        a = BiadditiveMap.zero(b.rank)
    return (a, b) if b is not None else (a, None)
