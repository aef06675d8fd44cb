"""Property suites over one algebra and the report documents they produce.

Every suite returns a :class:`Report`.  Checks are pass/fail/skipped and a
failed check carries a witness that can be replayed through the library
(randomized checks record the trial number; the cochains are regenerated
from ``default_rng([seed, trial])`` by :func:`trial_cochains`).  Values
that are observed rather than asserted go into ``measurements``.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from ._version import __version__
from .algebra_file import algebra_digest
from .cochain import (AlgebraSpec, Cochain, alt_cochain, associator3, associator_by_insertions,
                      bracket, comp, comp_i, graded_alt3, random_cochain, split_mu)
from .errors import CarrierClosure
from .forms import (DForm, a_multilinear_forms, a_multilinearity, alternate, ce_differential,
                    curvature_K, cyclic_formula, ddu_check, explicit_differential,
                    hoch_form_differential, homotopy_comparison, interior, is_alternating,
                    lie_derivative, make_carrier, measure_constant, random_form)
from .gerstenhaber import composition_matrix, gerstenhaber_truncation
from .hochschild import (QuasiComplex, bianchi_check, coherence_order, differential,
                         is_associative, is_pre_lie, rep_curvatures)
from .tensor import ExactArray
from .torsion import (CLAIMS, TorsionAlgebra, find_unit, function_algebra, is_regular,
                      left_nucleus_basis, theorem1_suite, torsion_tensor)

SCHEMA = 1
PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

# size cap, in coefficients, for the largest cochain a random trial builds
TRIAL_SIZE_CAP = 30_000


@dataclass
class Check:
    id: str
    anchor: str
    status: str
    witness: object = None
    detail: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self, timing=False):
        d = {"id": self.id, "anchor": self.anchor, "status": self.status,
             "witness": self.witness, "detail": self.detail}
        if timing:
            d["seconds"] = round(self.seconds, 6)
        return d


@dataclass
class Report:
    command: str
    algebra: dict
    options: dict
    checks: list = dc_field(default_factory=list)
    measurements: dict = dc_field(default_factory=dict)

    def add(self, check: Check):
        self.checks.append(check)

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)
        for k, v in other.measurements.items():
            self.measurements[k] = v

    @property
    def summary(self):
        counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def exit_code(self):
        return 1 if self.summary[FAIL] else 0

    def to_dict(self, timing=False):
        return {
            "schema": SCHEMA,
            "tool": {"name": "algeo", "version": __version__},
            "command": self.command,
            "algebra": self.algebra,
            "options": self.options,
            "checks": [c.to_dict(timing) for c in sorted(self.checks, key=lambda c: c.id)],
            "measurements": self.measurements,
            "summary": self.summary,
        }

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def to_markdown(self):
        lines = [f"# algeo {self.command}: {self.algebra.get('name', '?')}", ""]
        for key in ("field", "dimension", "digest"):
            if key in self.algebra:
                lines.append(f"- {key}: `{self.algebra[key]}`")
        for key, value in sorted(self.options.items()):
            lines.append(f"- {key}: `{value}`")
        s = self.summary
        lines += ["", f"**{s[PASS]} passed, {s[FAIL]} failed, {s[SKIPPED]} skipped**", ""]
        groups = {}
        for c in sorted(self.checks, key=lambda c: c.id):
            groups.setdefault(c.id.split("/")[0], []).append(c)
        for group, checks in groups.items():
            lines += [f"## {group}", "", "| check | anchor | status | witness or note |", "|---|---|---|---|"]
            for c in checks:
                w = "" if c.witness is None else f"`{json.dumps(c.witness, sort_keys=True)}`"
                if c.status == SKIPPED and "reason" in c.detail:
                    w = c.detail["reason"]
                lines.append(f"| {c.id} | {c.anchor} | {c.status} | {w} |")
            lines.append("")
        if self.measurements:
            lines += ["## measurements", ""]
            for k, v in sorted(self.measurements.items()):
                lines.append(f"- **{k}**: `{json.dumps(v, sort_keys=True)}`")
            lines.append("")
        return "\n".join(lines)


def algebra_header(A: AlgebraSpec) -> dict:
    return {"name": A.name, "field": str(A.field), "dimension": A.dim, "digest": algebra_digest(A)}


def _run(report: Report, cid: str, anchor: str, fn):
    """Run ``fn() -> (status, witness, detail)`` and record the result."""
    t0 = time.perf_counter()
    status, witness, detail = fn()
    report.add(Check(cid, anchor, status, witness, detail or {}, time.perf_counter() - t0))


def _verdict(ok, witness=None, detail=None):
    return (PASS if ok else FAIL), (None if ok else witness), detail


# -- random trials ---------------------------------------------------------

def trial_degrees(n: int, rng: np.random.Generator, max_degree: int):
    """Degrees ``(p, q, r)`` whose products of every kind used below stay >= -1 and small."""
    while True:
        p, q, r = (int(d) for d in rng.integers(-1, max_degree + 1, size=3))
        if min(p + q, q + r, p + r) < -1:
            continue
        top = max(p + q + r, 2 * p + q, 2 * p + r)
        if n ** (top + 2) <= TRIAL_SIZE_CAP:
            return p, q, r


def trial_cochains(A: AlgebraSpec, seed: int, trial: int, max_degree: int):
    """The three cochains of one randomized trial; deterministic in ``(seed, trial)``."""
    rng = np.random.default_rng([seed, trial])
    degrees = trial_degrees(A.dim, rng, max_degree)
    return tuple(random_cochain(A, d, rng) for d in degrees)


def _sign(k):
    return -1 if k % 2 else 1


def _first_trial(triples, predicate):
    for t, (f, g, h) in enumerate(triples):
        if not predicate(f, g, h):
            return {"trial": t, "degrees": [f.degree, g.degree, h.degree]}
    return None


def _graded_antisymmetry(f, g, h):
    return bracket(f, g) == bracket(g, f) * (-_sign(f.degree * g.degree))


def _graded_jacobi(f, g, h):
    p, q, r = f.degree, g.degree, h.degree
    total = (bracket(f, bracket(g, h)) * _sign(p * r) + bracket(g, bracket(h, f)) * _sign(q * p)
             + bracket(h, bracket(f, g)) * _sign(r * q))
    return total.is_zero()


def _leibniz(f, g, h):
    p, q = f.degree, g.degree
    return bracket(f, bracket(g, h)) == bracket(bracket(f, g), h) + bracket(g, bracket(f, h)) * _sign(p * q)


def _insertion_assoc(f, g, h):
    if f.degree < 0 or g.degree < 0:
        return True
    return all(comp_i(f, comp_i(g, h, j), i) == comp_i(comp_i(f, g, i), h, i - 1 + j)
               for i in range(1, f.arity + 1) for j in range(1, g.arity + 1))


def _pair_sum(f, g, h):
    return associator3(f, g, h) == associator_by_insertions(f, g, h)


def _assoc_symmetry(f, g, h):
    return associator3(f, g, h) == associator3(f, h, g) * _sign(g.degree * h.degree)


def _pre_lie(f, g, h):
    return graded_alt3(associator3, f, g, h).is_zero()


def _ad_identity(f, g, h):
    I = f.algebra.identity()
    return all(bracket(I, x) == x * (-x.degree) for x in (f, g, h))


def _square(qc):
    return lambda f, g, h: all(differential(qc, differential(qc, s)) == bracket(qc.alpha, s)
                               for s in (f, g, h) if s.degree <= 2)


def _odd_square(f, g, h):
    x, s = f, g
    if x.degree == -1:
        return True  # [x, x] would live in degree -2, which is zero
    if x.degree % 2 == 0:
        return bracket(x, x).is_zero()
    xx = bracket(x, x)
    return bracket(x, xx).is_zero() and bracket(xx, s) == bracket(x, bracket(x, s)) * 2


def verify_suite(A: AlgebraSpec, max_arity: int = 4, trials: int = 64, seed: int = 0) -> Report:
    """Graded comp calculus and quasi-complex identities; randomized where the identity is universal."""
    max_degree = max_arity - 1
    report = Report("verify", algebra_header(A), {"max_arity": max_arity, "trials": trials, "seed": seed})
    qc = QuasiComplex(A)
    triples = [trial_cochains(A, seed, t, max_degree) for t in range(trials)]

    def randomized(cid, anchor, predicate):
        def run():
            w = _first_trial(triples, predicate)
            return _verdict(w is None, w)
        _run(report, cid, anchor, run)

    randomized("verify/01-graded-antisymmetry", "graded antisymmetry of the comp commutator", _graded_antisymmetry)
    randomized("verify/02-graded-jacobi", "graded Jacobi identity", _graded_jacobi)
    randomized("verify/03-leibniz", "ad is a representation (Leibniz form)", _leibniz)
    randomized("verify/04-insertion-associativity", "iterated insertion f o_i (g o_j h)", _insertion_assoc)
    randomized("verify/05-associator-pair-sum", "associator of comp as a sum of pair insertions", _pair_sum)
    randomized("verify/06-associator-symmetry", "associator of comp is graded symmetric in g, h", _assoc_symmetry)

    def split_constants():
        sym, skew = split_mu(qc.mu)
        alt_a = alt_cochain(qc.alpha)
        alt_plus = alt_cochain(comp(sym, sym))
        alt_minus = alt_cochain(comp(skew, skew))
        ok_plus, ok_minus = alt_plus.is_zero(), alt_minus == alt_a * 4
        w = None if ok_plus and ok_minus else {"plus_vanishes": ok_plus, "minus_is_4_alt_alpha": ok_minus}
        return _verdict(ok_plus and ok_minus, w)

    _run(report, "verify/07-split-alternation", "Alt of the symmetric and skew associators (constants 0 and 4)",
         split_constants)
    randomized("verify/08-pre-lie", "comp is graded pre-Lie", _pre_lie)
    randomized("verify/09-ad-identity", "ad_I f = -deg(f) f", _ad_identity)
    _run(report, "verify/10-d-identity", "d_mu I = mu",
         lambda: _verdict(differential(qc, qc.identity) == qc.mu))
    _run(report, "verify/11-bianchi", "Bianchi identity d alpha = 0", lambda: _verdict(bianchi_check(qc)))
    randomized("verify/12-square-formula", "d^2 s = [alpha, s]", _square(qc))
    randomized("verify/13-odd-square", "[x,x] for odd and even x, ad_[x,x] = 2 ad_x^2", _odd_square)

    def curvatures():
        for i in range(A.dim):
            for j in range(A.dim):
                try:
                    rc = rep_curvatures(qc, A.basis(i), A.basis(j))
                except AssertionError:
                    return FAIL, {"x": i, "y": j}, None
                if is_associative(qc) and not rc.kappa.is_zero():
                    return FAIL, {"x": i, "y": j, "kappa": "nonzero"}, None
        return PASS, None, None

    _run(report, "verify/14-left-regular-curvatures",
         "sigma(x,y) = -alpha(x,y,.), kappa = 0 when associative", curvatures)
    report.measurements["properties"] = {"associative": is_associative(qc), "pre_lie": is_pre_lie(qc)}
    return report


# -- function algebra ------------------------------------------------------

def _matrix_rows(F, m: ExactArray):
    return [[F.format_raw(m[r, c]) for c in range(m.shape[1])] for r in range(m.shape[0])]


def functions_suite(A: AlgebraSpec) -> Report:
    report = Report("functions", algebra_header(A), {})
    F = A.field
    ta = TorsionAlgebra(A, validate=False)
    fa = function_algebra(ta)
    report.measurements["function_algebra"] = {
        "dimension": fa.dimension,
        "basis": [_matrix_rows(F, phi.matrix) for phi in fa.basis],
        "table": [[[F.format_raw(c) for c in fa.table[a][b]] for b in range(fa.dimension)]
                  for a in range(fa.dimension)],
    }
    report.measurements["bracket"] = {"supplied": ta.bracket_supplied, "lie": ta.bracket_is_lie,
                                      "torsion_vanishes": torsion_tensor(ta).is_zero()}

    def nucleus():
        unit = find_unit(A)
        if unit is None:
            return SKIPPED, None, {"reason": "no two-sided unit"}
        nuc = left_nucleus_basis(A)
        detail = {"left_nucleus_dimension": len(nuc)}
        if len(nuc) != fa.dimension:
            return FAIL, {"function_algebra": fa.dimension, "left_nucleus": len(nuc)}, detail
        # phi -> phi(1) is an algebra map onto the left nucleus
        images = [phi(unit) for phi in fa.basis]
        for a in range(fa.dimension):
            for b in range(fa.dimension):
                prod = fa.combine(fa.table[a][b])(unit)
                if prod != A.mul(images[a], images[b]):
                    return FAIL, {"functions": [a, b]}, detail
        return PASS, None, detail

    _run(report, "functions/01-left-nucleus", "functions of a unital algebra are left multiplications by the left nucleus",
         nucleus)

    regular = is_regular(ta, fa)
    report.measurements["regular"] = {"regular": regular.ok, "witness": regular.witness}
    suite = theorem1_suite(ta, fa)
    applicable = regular.ok and ta.bracket_is_lie
    for k in sorted(CLAIMS):
        v = suite.claims[k]

        def claim(v=v):
            if not applicable:
                reason = "bracket is not a Lie bracket" if not ta.bracket_is_lie else \
                    "not regular: torsion or associator is not A-linear in its first two slots"
                return SKIPPED, None, {"reason": reason, "observed": v.ok, "observed_witness": v.witness}
            return _verdict(v.ok, v.witness)

        _run(report, f"functions/{k + 1:02d}-regular-claim-{k}", CLAIMS[k], claim)
    return report


def gerstenhaber_suite(v_dim: int = 2, max_arity: int = 4) -> Report:
    """Functions on the truncated cochain carrier of a ``v_dim``-dimensional space."""
    carrier = gerstenhaber_truncation(v_dim, max_arity)
    report = Report("functions", {"name": f"gerstenhaber:{v_dim}:{max_arity}", "dimension": carrier.dimension},
                    {"v_dim": v_dim, "max_arity": max_arity})
    deg0 = carrier.basis(0)

    def degree_zero():
        for i, f in enumerate(deg0):
            w = carrier.function_witness(f)
            if w is not None:
                return FAIL, {"f": [0, i], "x": list(w[0]), "y": list(w[1])}, None
        return PASS, None, {"count": len(deg0)}

    def degree_one():
        witnesses = []
        for i, f in enumerate(carrier.basis(1)):
            w = carrier.function_witness(f)
            if w is None:
                return FAIL, {"f": [1, i]}, None
            witnesses.append({"f": [1, i], "x": list(w[0]), "y": list(w[1])})
        return PASS, None, {"witnesses": witnesses}

    def composition():
        for i, f in enumerate(deg0):
            for j, g in enumerate(deg0):
                lhs, rhs = composition_matrix(carrier, f, g)
                if lhs != rhs:
                    return FAIL, {"f": i, "g": j}, None
        return PASS, None, None

    def torsion_zero():
        basis = carrier.basis()
        for x in basis:
            for y in basis:
                if x.degree + y.degree > carrier.top:
                    continue
                if not carrier.same(carrier.torsion(x, y), None):
                    return FAIL, {"x": x.degree, "y": y.degree}, None
        return PASS, None, None

    _run(report, "gerstenhaber/01-degree-zero-functions", "L_f is a function for f of degree 0", degree_zero)
    _run(report, "gerstenhaber/02-degree-one-witnesses", "L_f is not a function for basis f of degree 1",
         degree_one)
    _run(report, "gerstenhaber/03-composition", "L_f L_g = L_(f o g) in degree 0", composition)
    _run(report, "gerstenhaber/04-torsion", "torsion of the comp connection vanishes", torsion_zero)
    return report


# -- coherence -------------------------------------------------------------

def coherence_suite(A: AlgebraSpec, max_order: int = 4, max_degree: int = 1) -> Report:
    report = Report("coherence", algebra_header(A), {"max_order": max_order, "max_degree": max_degree})
    qc = QuasiComplex(A)
    cr = coherence_order(qc, max_order, max_degree)
    report.measurements["coherence"] = cr.to_dict()
    _run(report, "coherence/01-witness-replay", "recorded failures of d^N = 0 replay",
         lambda: _verdict(cr.verify_witness(qc), cr.to_dict()["failures"]))

    def two_coherent():
        if max_order < 2:
            return SKIPPED, None, {"reason": "needs max_order >= 2"}
        assoc = is_associative(qc)
        return _verdict(assoc == (cr.order is not None and cr.order <= 2), {"associative": assoc, "order": cr.order})

    _run(report, "coherence/02-associative-iff-2", "associative exactly when 2-coherent", two_coherent)
    return report


# -- forms -----------------------------------------------------------------

def _test_forms(carrier, max_degree, seed):
    rng = np.random.default_rng([seed, 7919])
    return [random_form(carrier, k, rng) for k in range(max_degree + 1) for _ in range(2)]


def forms_suite(A: AlgebraSpec, carrier_kind: str = "C", max_form_degree: int = 2, seed: int = 0) -> Report:
    kind = "vector-fields" if carrier_kind in ("C", "vector-fields") else "functions"
    report = Report("forms", algebra_header(A),
                    {"carrier": kind, "max_form_degree": max_form_degree, "seed": seed})
    ta = TorsionAlgebra(A, validate=False)
    F = A.field
    prefix = f"forms-{'C' if kind == 'vector-fields' else 'A'}"
    try:
        carrier = make_carrier(ta, kind)
    except CarrierClosure as exc:
        fa = function_algebra(ta)
        if not is_regular(ta, fa):
            _run(report, f"{prefix}/00-carrier", "derivation law closes on the carrier",
                 lambda: (SKIPPED, None, {"reason": "regularity is required for the functions carrier: "
                                                    "X . phi is a function only on regular torsion algebras",
                                          "detail": str(exc)}))
        else:
            _run(report, f"{prefix}/00-carrier", "derivation law closes on the carrier",
                 lambda: (FAIL, {"error": str(exc)}, None))
        return report

    n = A.dim
    elems = [A.basis(i) for i in range(n)]
    forms = _test_forms(carrier, max_form_degree, seed)

    def ddu():
        v = ddu_check(carrier)
        return _verdict(v.ok, v.witness)

    _run(report, f"{prefix}/01-ddu-curvature", "dd u(X,Y) = K(X,Y) u for the Hochschild quasi-differential", ddu)

    def K_info():
        for x in range(n):
            for y in range(n):
                K = curvature_K(ta, elems[x], elems[y], carrier)
                idx = K.nonzero_index()
                if idx is not None:
                    return {"vanishes": False, "nonzero_entry": {"X": x, "Y": y, "row": idx[0], "col": idx[1],
                                                                  "value": F.format_raw(K[idx])}}
        return {"vanishes": True}

    k_info = K_info()

    def k_antisym():
        for x in range(n):
            if not curvature_K(ta, elems[x], elems[x], carrier).is_zero():
                return FAIL, {"X": x}, None
            for y in range(x + 1, n):
                if curvature_K(ta, elems[x], elems[y], carrier) != -curvature_K(ta, elems[y], elems[x], carrier):
                    return FAIL, {"X": x, "Y": y}, None
        return PASS, None, None

    _run(report, f"{prefix}/02-curvature-antisymmetry", "K(X,Y) = -K(Y,X)", k_antisym)

    def alternating():
        for i, w in enumerate(forms):
            for label, out in (("ce_differential", ce_differential(w)), ("lie_derivative", lie_derivative(elems[0], w))):
                v = is_alternating(out)
                if not v:
                    return FAIL, {"form": i, "operation": label, **v.witness}, None
            for x in range(n):
                if not is_alternating(lie_derivative(elems[x], w)):
                    return FAIL, {"form": i, "operation": "lie_derivative", "X": x}, None
        return PASS, None, None

    _run(report, f"{prefix}/03-alternating", "ce_differential and lie_derivative preserve alternation",
         alternating)

    def interior_sq():
        for i, w in enumerate(forms):
            if w.degree < 2:
                continue
            for x in range(n):
                if not interior(elems[x], interior(elems[x], w)).is_zero():
                    return FAIL, {"form": i, "X": x}, None
        return PASS, None, None

    _run(report, f"{prefix}/04-interior-square", "i_X i_X = 0", interior_sq)

    def lie_linear():
        for i, w in enumerate(forms):
            for x in range(n):
                for y in range(n):
                    s = elems[x] + elems[y] * 3
                    if lie_derivative(s, w) != lie_derivative(elems[x], w) + lie_derivative(elems[y], w) * 3:
                        return FAIL, {"form": i, "X": x, "Y": y}, None
        return PASS, None, None

    _run(report, f"{prefix}/05-lie-linear", "L_X is linear in X", lie_linear)

    hom = homotopy_comparison(carrier, forms)

    def homotopy():
        ok = hom.consistent and hom.constant not in (None, 0)
        return _verdict(ok, hom.to_dict(F), {"constant": hom.to_dict(F)["constant"]})

    _run(report, f"{prefix}/06-homotopy", "d i_X + i_X d = c L_X with one constant c", homotopy)

    if kind == "functions":
        A_forms = {k: a_multilinear_forms(carrier, k) for k in range(max_form_degree + 1)}

        def lie_a_linear():
            for k, basis in A_forms.items():
                for i, w in enumerate(basis):
                    for x in range(n):
                        v = a_multilinearity(lie_derivative(elems[x], w))
                        if not v:
                            return FAIL, {"degree": k, "form": i, "X": x, **v.witness}, None
            return PASS, None, {"dimensions": {str(k): len(b) for k, b in A_forms.items()}}

        _run(report, f"{prefix}/07-lie-a-multilinear", "L_X preserves A-multilinearity", lie_a_linear)

        def derivation():
            fa = carrier.fa
            m = fa.dimension
            for x in range(n):
                D = carrier.derivation(elems[x])
                for a in range(m):
                    for b in range(m):
                        prod = ExactArray.from_raw(F, fa.table[a][b], shape=(m,))
                        lhs = D.tensordot(prod, axes=([1], [0]))
                        Da = D[:, a]
                        Db = D[:, b]
                        # (X.phi_a) phi_b + phi_a (X.phi_b), via the action matrices
                        rhs = carrier.action.tensordot(Da, axes=([0], [0]))[:, b] + \
                            carrier.action[a].tensordot(Db, axes=([1], [0]))
                        if lhs != rhs:
                            return FAIL, {"X": x, "functions": [a, b]}, None
            return PASS, None, None

        _run(report, f"{prefix}/08-lie-derivation", "L_X on 0-forms is a derivation of the function algebra",
             derivation)

        def ce_a_linear():
            out = {}
            for k, basis in A_forms.items():
                out[str(k)] = None
                for i, w in enumerate(basis):
                    v = a_multilinearity(ce_differential(w))
                    if not v:
                        out[str(k)] = {"form": i, **v.witness}
                        break
            return out

        report.measurements[f"{prefix}.ce_differential_a_multilinear_failures"] = ce_a_linear()

    report.measurements[f"{prefix}.curvature_K"] = k_info
    report.measurements[f"{prefix}.homotopy_constant"] = hom.to_dict(F)
    report.measurements[f"{prefix}.ce_vs_explicit"] = measure_constant(
        (w.degree, ce_differential(w).data, explicit_differential(w).data) for w in forms).to_dict(F)
    report.measurements[f"{prefix}.full_alternation_vs_explicit"] = measure_constant(
        (w.degree, alternate(hoch_form_differential(w)).data, explicit_differential(w).data)
        for w in forms).to_dict(F)
    two = [w for w in forms if w.degree == 2]
    if two:
        report.measurements[f"{prefix}.ce_vs_cyclic_formula"] = measure_constant(
            (2, ce_differential(w).data, cyclic_formula(w).data) for w in two).to_dict(F)
    return report


# -- everything ------------------------------------------------------------

def full_report(A: AlgebraSpec, max_arity=4, trials=64, seed=0, max_order=4, max_degree=1,
                max_form_degree=2) -> Report:
    report = Report("report", algebra_header(A),
                    {"max_arity": max_arity, "trials": trials, "seed": seed, "max_order": max_order,
                     "max_degree": max_degree, "max_form_degree": max_form_degree})
    for part in (verify_suite(A, max_arity, trials, seed), functions_suite(A),
                 coherence_suite(A, max_order, max_degree),
                 forms_suite(A, "C", max_form_degree, seed), forms_suite(A, "A", max_form_degree, seed)):
        report.extend(part)
    return report
