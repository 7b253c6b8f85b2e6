"""Factor a stabilized transvection into transvections sigma_{p_i, 0, v_j}.

Setting: K = V0 _|_ V1 with V0 nonsingular, P+ and P- free of rank one, and a
transvection sigma_{p,a,v} on K _|_ H(P+) with p in V0 + P+ and v in K.
On the ambient module K _|_ H(P+) _|_ H(P-), with hyperbolic bases
(p+, q+) and (p-, q-), the stabilization sigma_{p,a,v} + Id is written as

    prod_{j = 2, 1, 0}  prod_{i = 0..n}  sigma_{p_i, 0, v_j}

where
    v_0 = v + p- - a q-,   v_1 = -p-,   v_2 = a q-      (so v = v_0 + v_1 + v_2),
    p_0 = p' + p+,         p_i = s_i p+  (i >= 1),
p = p' + c p+ and c - 1 = s_1 + ... + s_n with every s_i = +-g a trivial unit.
Each p_i is unimodular (dual vector a multiple of q+) and each v_j isotropic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContextMismatch, InternalCheckFailed, PreconditionViolation
from .forms import QuadraticModule, Vector, hyperbolic, orthogonal_sum
from .transvections import Transvection, apply, compose


@dataclass
class FactorizationInput:
    """V0, V1 and the target (p, a, v) in coordinates of K _|_ H(P+).

    Basis order of the ambient module: V0, V1, p+, q+, p-, q-.
    """

    V0: QuadraticModule
    V1: QuadraticModule
    p: Vector
    a: object
    v: Vector
    K: QuadraticModule = field(init=False, repr=False)
    target_module: QuadraticModule = field(init=False, repr=False)
    ambient: QuadraticModule = field(init=False, repr=False)

    def __post_init__(self):
        if self.V0.form != self.V1.form:
            raise ContextMismatch("V0 and V1 live over different unitary rings")
        form = self.V0.form
        self.K = orthogonal_sum(self.V0, self.V1)
        H1 = hyperbolic(form, 1)
        self.target_module = orthogonal_sum(self.K, H1)
        self.ambient = orthogonal_sum(self.target_module, H1)
        n = self.target_module.rank
        if len(self.p) != n or len(self.v) != n:
            raise PreconditionViolation("dimension", f"p and v need {n} coordinates (K + H(P+))")

    @property
    def ring(self):
        return self.V0.ring

    @property
    def k0(self):
        return self.V0.rank

    @property
    def k(self):
        return self.K.rank

    # ambient indices
    @property
    def i_pp(self):
        return self.k

    @property
    def i_qp(self):
        return self.k + 1

    @property
    def i_pm(self):
        return self.k + 2

    @property
    def i_qm(self):
        return self.k + 3

    def embed(self, x):
        """Target-module coordinates -> ambient coordinates (zero on H(P-))."""
        z = self.ring.zero
        return Vector(tuple(x.coords) + (z, z))

    def target(self):
        return Transvection(self.target_module, self.p, self.a, self.v, "target")

    def check(self):
        if not self.V0.form.lambda_is_one:
            raise PreconditionViolation("lambda", "only lambda = +1 is supported")
        if self.V0.inverse_gram is None or not self.V0.certificate_ok():
            raise PreconditionViolation("V0_nonsingular", "V0 needs a valid inverse Gram matrix")
        for i in range(self.k0, self.k):
            if not self.p[i].is_zero():
                raise PreconditionViolation("p_support", f"p has a nonzero V1 coordinate {i}")
        if not self.p[self.k + 1].is_zero():
            raise PreconditionViolation("p_support", "p has a nonzero q+ coordinate")
        for i in (self.k, self.k + 1):
            if not self.v[i].is_zero():
                raise PreconditionViolation("v_support", "v must lie in K")
        # (A, +) is generated by S = pi u -pi for every group ring, including Z/m coefficients
        self.target().check()
        return self


@dataclass
class Factor:
    u: Vector
    v: Vector
    witness: Vector
    j: int
    i: int


@dataclass
class FactorizationCertificate:
    """Factors in product order: the last entry is applied first.

    Blocks run j = 2, 1, 0 from left to right; within a block i = 0..n.
    """

    factors: list
    n_split: int

    @property
    def block_sizes(self):
        sizes = {}
        for f in self.factors:
            sizes[f.j] = sizes.get(f.j, 0) + 1
        return [sizes.get(j, 0) for j in range(3)]

    def transvections(self, ambient):
        zero = ambient.ring.zero
        return [Transvection(ambient, f.u, zero, f.v, f"s[{f.j},{f.i}]") for f in self.factors]


def split_v(inp):
    """v_0, v_1, v_2 in ambient coordinates."""
    amb = inp.ambient
    a = inp.a
    v = inp.embed(inp.v)
    pm, qm = amb.e(inp.i_pm), amb.e(inp.i_qm)
    return [v + pm - a * qm, -pm, a * qm]


def unit_decomposition(c):
    """Write c as a sum of signed group elements, in the group's order."""
    out = []
    ring = c.ring
    for g, coef in c.terms:
        s = 1 if coef > 0 else -1
        out.extend([ring.basis(g, s)] * abs(coef))
    return out


def split_p(inp):
    """[(p_i, witness_i)] for i = 0..n, in ambient coordinates."""
    ring, amb = inp.ring, inp.ambient
    p = inp.embed(inp.p)
    c = p[inp.i_pp]
    p_prime = Vector(x if i < inp.k0 else ring.zero for i, x in enumerate(p.coords))
    pp, qp = amb.e(inp.i_pp), amb.e(inp.i_qp)
    out = [(p_prime + pp, qp)]
    for s in unit_decomposition(c - ring.one):
        out.append((s * pp, s.trivial_unit_inverse().conj() * qp))
    return out


def factorize(inp):
    inp.check()
    amb = inp.ambient
    ring = inp.ring
    p = inp.embed(inp.p)
    vs = split_v(inp)
    for j, vj in enumerate(vs):
        if not amb.mu_of(vj).is_zero():
            raise InternalCheckFailed(f"v_{j} is not isotropic")
        if not amb.inner(vj, p).is_zero():
            raise InternalCheckFailed(f"<v_{j}, p> != 0")
    ps = split_p(inp)
    factors = []
    for j in (2, 1, 0):
        for i, (pi, wi) in enumerate(ps):
            t = Transvection(amb, pi, ring.zero, vs[j])
            if not t.is_valid():
                raise InternalCheckFailed(f"factor ({j}, {i}) is not a valid transvection")
            if amb.inner(pi, wi) != ring.one:
                raise InternalCheckFailed(f"p_{i} witness does not pair to 1")
            factors.append(Factor(pi, vs[j], wi, j, i))
    return FactorizationCertificate(factors, len(ps) - 1)


def expected_columns(inp):
    """Columns of sigma_{p,a,v} + Id on the ambient module."""
    amb = inp.ambient
    t = inp.target()
    n = inp.target_module.rank
    cols = []
    for j in range(amb.rank):
        if j < n:
            e = inp.target_module.e(j)
            cols.append(inp.embed(apply(t, e)))
        else:
            cols.append(amb.e(j))
    return tuple(cols)


@dataclass
class VerificationReport:
    passed: bool
    reason: str = "ok"
    discrepancy: dict = None


def verify_certificate(inp, cert):
    """Recompute everything from the input; trust nothing in the certificate."""
    try:
        inp.check()
    except PreconditionViolation as e:
        return VerificationReport(False, f"input precondition: {e}")
    amb = inp.ambient
    ring = inp.ring
    for idx, f in enumerate(cert.factors):
        if len(f.u) != amb.rank or len(f.v) != amb.rank or len(f.witness) != amb.rank:
            return VerificationReport(False, "factor dimension", {"factor": idx})
        t = Transvection(amb, f.u, ring.zero, f.v)
        try:
            t.check()
        except PreconditionViolation as e:
            return VerificationReport(False, f"factor {idx}: {e.condition}", {"factor": idx})
        if amb.inner(f.u, f.witness) != ring.one:
            return VerificationReport(False, f"factor {idx}: witness does not pair to 1",
                                      {"factor": idx})
        if any(not x.is_zero() for x in f.u.coords[inp.k0:inp.k]) or not f.u[inp.i_qp].is_zero() \
                or not f.u[inp.i_pm].is_zero() or not f.u[inp.i_qm].is_zero():
            return VerificationReport(False, f"factor {idx}: u not in V0 + P+", {"factor": idx})
        if not f.v[inp.i_pp].is_zero() or not f.v[inp.i_qp].is_zero():
            return VerificationReport(False, f"factor {idx}: v not in K + H(P-)", {"factor": idx})
    got = compose(amb, cert.transvections(amb))
    want = expected_columns(inp)
    for j, (g, w) in enumerate(zip(got, want)):
        if g != w:
            return VerificationReport(False, "composite differs from target",
                                      {"column": j, "got": g, "expected": w})
    return VerificationReport(True)
