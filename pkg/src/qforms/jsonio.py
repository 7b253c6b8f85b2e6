"""JSON encodings for every artifact the CLI reads or writes.

Ring elements are arrays of ``[coefficient, element]`` pairs; group
elements are an integer (finite), an array of integers (free abelian) or a
string over "ab" (infinite dihedral). Coefficients of 64 bits or more are
written as decimal strings and accepted either way on input.
"""

from __future__ import annotations

import json

from .bounds import GeneratorsCertificate, VirtuallyAbelianInput
from .errors import InvalidElement
from .factorization import Factor, FactorizationCertificate, FactorizationInput
from .forms import QuadraticModule, Vector
from .groups import FiniteGroup, FreeAbelianGroup, InfiniteDihedralGroup
from .pairs import HyperbolicPair
from .rings import FormParameter, GroupRing
from .transvections import Transvection

_BIG = 2**63


class MalformedInput(InvalidElement):
    pass


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput(f"{where}: missing key {key!r}")
    return obj[key]


# -- groups and rings ---------------------------------------------------------


def group_to_json(group):
    if group.kind == "finite":
        return {"kind": "finite", "table": [list(r) for r in group.table],
                "omega": list(group.omega)}
    if group.kind == "free_abelian":
        return {"kind": "free_abelian", "rank": group.rank, "omega": list(group.omega)}
    return {"kind": "infinite_dihedral", "omega": {"a": group.omega_a, "b": group.omega_b}}


def group_from_json(obj):
    kind = _need(obj, "kind", "group")
    if kind == "finite":
        return FiniteGroup(_need(obj, "table", "group"), obj.get("omega"))
    if kind == "free_abelian":
        omega = obj.get("omega")
        return FreeAbelianGroup(int(_need(obj, "rank", "group")),
                                tuple(omega) if omega is not None else None)
    if kind == "infinite_dihedral":
        omega = obj.get("omega", {})
        return InfiniteDihedralGroup(omega.get("a", 1), omega.get("b", 1))
    raise MalformedInput(f"unknown group kind {kind!r}")


def element_to_json(group, g):
    return list(g) if group.kind == "free_abelian" else g


def element_from_json(group, obj):
    if group.kind == "free_abelian":
        if not isinstance(obj, list):
            raise MalformedInput(f"expected an exponent array, got {obj!r}")
        return group.check(tuple(obj))
    return group.check(obj)


def _coef_out(c):
    return str(c) if abs(c) >= _BIG else c


def _coef_in(c):
    if isinstance(c, bool):
        raise MalformedInput("boolean coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, str):
        try:
            return int(c)
        except ValueError:
            raise MalformedInput(f"bad coefficient {c!r}") from None
    raise MalformedInput(f"bad coefficient {c!r}")


def ring_element_to_json(x):
    group = x.ring.group
    return [[_coef_out(c), element_to_json(group, g)] for g, c in x.terms]


def ring_element_from_json(ring, obj):
    if not isinstance(obj, list):
        raise MalformedInput(f"ring element must be an array of pairs, got {obj!r}")
    terms = []
    for pair in obj:
        if not isinstance(pair, list) or len(pair) != 2:
            raise MalformedInput(f"bad term {pair!r}")
        terms.append((element_from_json(ring.group, pair[1]), _coef_in(pair[0])))
    return ring.element(terms)


def context_to_json(form):
    out = {"group": group_to_json(form.ring.group)}
    if form.ring.modulus is not None:
        out["modulus"] = form.ring.modulus
    if not form.lambda_is_one:
        out["lambda"] = ring_element_to_json(form.lam)
    return out


def context_from_json(obj):
    """A FormParameter; a bare group description is accepted too."""
    if isinstance(obj, dict) and "kind" in obj:
        obj = {"group": obj}
    ring = GroupRing(group_from_json(_need(obj, "group", "context")), obj.get("modulus"))
    lam = obj.get("lambda")
    return FormParameter(ring, ring_element_from_json(ring, lam) if lam is not None else None)


# -- modules and vectors ------------------------------------------------------


def _matrix_to_json(m):
    return [[ring_element_to_json(x) for x in row] for row in m]


def _matrix_from_json(ring, obj):
    return [[ring_element_from_json(ring, x) for x in row] for row in obj]


def module_to_json(M):
    return {
        "type": "module",
        "context": context_to_json(M.form),
        "rank": M.rank,
        "gram": _matrix_to_json(M.gram),
        "mu": [ring_element_to_json(x) for x in M.mu],
        "certificate": ({"inverse_gram": _matrix_to_json(M.inverse_gram)}
                        if M.inverse_gram is not None else None),
    }


def module_from_json(obj, form=None):
    form = form or context_from_json(_need(obj, "context", "module"))
    ring = form.ring
    gram = _matrix_from_json(ring, _need(obj, "gram", "module"))
    rank = obj.get("rank", len(gram))
    if rank != len(gram):
        raise MalformedInput("module: rank does not match the Gram matrix")
    cert = obj.get("certificate")
    inv = _matrix_from_json(ring, cert["inverse_gram"]) if cert else None
    return QuadraticModule(form, gram,
                           [ring_element_from_json(ring, x) for x in _need(obj, "mu", "module")],
                           inverse_gram=inv)


def vector_to_json(x, form=None):
    out = {"type": "vector", "coords": [ring_element_to_json(c) for c in x.coords]}
    if form is not None:
        out["context"] = context_to_json(form)
    return out


def vector_from_json(ring, obj):
    coords = obj["coords"] if isinstance(obj, dict) and "coords" in obj else obj
    if not isinstance(coords, list):
        raise MalformedInput("vector must be {'coords': [...]} or an array")
    return Vector(ring_element_from_json(ring, c) for c in coords)


def transvection_to_json(t, with_module=False):
    out = {"type": "transvection", "u": vector_to_json(t.u), "a": ring_element_to_json(t.a),
           "v": vector_to_json(t.v)}
    if t.label:
        out["label"] = t.label
    if with_module:
        out["module"] = module_to_json(t.module)
    return out


def transvection_from_json(M, obj):
    ring = M.ring
    return Transvection(M, M.vector(vector_from_json(ring, _need(obj, "u", "transvection"))),
                        ring_element_from_json(ring, _need(obj, "a", "transvection")),
                        M.vector(vector_from_json(ring, _need(obj, "v", "transvection"))),
                        obj.get("label", ""))


def pair_to_json(pair, form=None):
    out = {"type": "hyperbolic_pair", "p": vector_to_json(pair.p), "q": vector_to_json(pair.q)}
    if form is not None:
        out["context"] = context_to_json(form)
    return out


def pair_from_json(ring, obj):
    return HyperbolicPair(vector_from_json(ring, _need(obj, "p", "pair")),
                          vector_from_json(ring, _need(obj, "q", "pair")))


# -- factorization ------------------------------------------------------------


def factorization_input_to_json(inp):
    return {
        "type": "factorization_input",
        "V0": module_to_json(inp.V0),
        "V1": module_to_json(inp.V1),
        "target": {"p": vector_to_json(inp.p), "a": ring_element_to_json(inp.a),
                   "v": vector_to_json(inp.v)},
    }


def factorization_input_from_json(obj):
    V0 = module_from_json(_need(obj, "V0", "factorization input"))
    V1 = module_from_json(_need(obj, "V1", "factorization input"), form=V0.form)
    tgt = _need(obj, "target", "factorization input")
    ring = V0.ring
    return FactorizationInput(V0, V1, vector_from_json(ring, _need(tgt, "p", "target")),
                              ring_element_from_json(ring, _need(tgt, "a", "target")),
                              vector_from_json(ring, _need(tgt, "v", "target")))


def certificate_to_json(cert, form):
    return {
        "type": "factorization_certificate",
        "context": context_to_json(form),
        "convention": "product order: the last factor is applied first",
        "n_split": cert.n_split,
        "block_sizes": cert.block_sizes,
        "factors": [
            {"j": f.j, "i": f.i, "u": vector_to_json(f.u), "a": [], "v": vector_to_json(f.v),
             "witness": vector_to_json(f.witness)}
            for f in cert.factors
        ],
    }


def certificate_from_json(obj, ring=None):
    ring = ring or context_from_json(_need(obj, "context", "certificate")).ring
    factors = []
    for f in _need(obj, "factors", "certificate"):
        if f.get("a", []) != []:
            raise MalformedInput("certificate factors must have a = 0")
        factors.append(Factor(vector_from_json(ring, _need(f, "u", "factor")),
                              vector_from_json(ring, _need(f, "v", "factor")),
                              vector_from_json(ring, _need(f, "witness", "factor")),
                              int(f.get("j", -1)), int(f.get("i", -1))))
    return FactorizationCertificate(factors, int(obj.get("n_split", 0)))


def transport_result_to_json(res, form):
    return {
        "type": "transport_result",
        "context": context_to_json(form),
        "status": res.status,
        "convention": "product order: the last transvection is applied first",
        "word": None if res.word is None else [
            {"family": g.family, "u": vector_to_json(g.transvection.u),
             "a": ring_element_to_json(g.transvection.a), "v": vector_to_json(g.transvection.v)}
            for g in res.word
        ],
        "depth": res.depth,
        "visited": res.visited,
        "warnings": list(res.warnings),
    }


# -- bounds -------------------------------------------------------------------


def va_input_to_json(inp):
    return {"type": "virtually_abelian", "n": inp.n,
            "G": {"table": [list(r) for r in inp.G.table], "omega": list(inp.G.omega)},
            "action": inp.action, "omega_gamma": list(inp.omega_gamma)}


def va_input_from_json(obj):
    G = _need(obj, "G", "virtually abelian input")
    return VirtuallyAbelianInput(int(_need(obj, "n", "virtually abelian input")),
                                 FiniteGroup(_need(G, "table", "G"), G.get("omega")),
                                 _need(obj, "action", "virtually abelian input"),
                                 obj.get("omega_gamma"))


def bound_to_json(b):
    return {"type": "stability_bound", "n": b.n, "d": b.d, "summands": b.summands}


def generators_certificate_to_json(cert, A0):
    return {"type": "generators_certificate", "ring": cert.ring,
            "context": {"group": group_to_json(A0.group)},
            "generators": [ring_element_to_json(x) for x in cert.generators],
            "degree_bound": cert.degree_bound, "trace": cert.trace, "closure": cert.closure,
            "bounded": True}


def generators_certificate_from_json(obj):
    ring = GroupRing(group_from_json(_need(obj, "context", "certificate")["group"]))
    gens = [ring_element_from_json(ring, x) for x in _need(obj, "generators", "certificate")]
    return GeneratorsCertificate(obj.get("ring", "R"), gens, int(obj.get("degree_bound", 0)),
                                 list(obj.get("trace", [])), dict(obj.get("closure", {})))


def fg_report_to_json(rep, A0):
    group = A0.group
    return {
        "type": "fg_report",
        "passed": rep.passed,
        "bounded": True,
        "note": rep.note,
        "degree_bound": rep.degree_bound,
        "cosets": rep.cosets,
        "per_degree": {str(d): ok for d, ok in rep.per_degree.items()},
        "failures": [{"coset": f["coset"], "monomial": list(f["monomial"]), "degree": f["degree"]}
                     for f in rep.failures],
        "truncated": rep.truncated,
        "witnesses": [
            {"coset": c, "monomial": element_to_json(group, v),
             "combination": [[k, list(lab[0]), lab[1]] for lab, k in sorted(comb.items())]}
            for (c, v), comb in sorted(rep.witnesses.items())
        ],
    }


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
