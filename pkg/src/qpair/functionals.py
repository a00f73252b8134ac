"""Integrals, symmetric linear functions, and trace characters.

A linear functional is stored by its values on the PBW basis.  The dual
integrals are solved from their defining linear systems (the printed
closed forms disagree about the K-exponent between their two appearances,
so the solver settles ground truth and both printed variants are graded
against it).  The symmetric-function basis is read off the block
realizations: every member is a partial trace of the representing
matrices over one or two family groups, so its value on a basis monomial
is a handful of diagonal lookups in the cached monomial matrices.

The Radford transform x -> lambda(x * g^{-1}c) carries the solved central
elements onto that basis; each displayed identity is evaluated on every
basis monomial, with printed and corrected variants graded side by side
where the source contains a suspected index slip.  Characters close the
circle: quantum characters of the simple modules are g-twisted matrix
traces, insertion characters of the projective blocks are strip reads of
the realized matrices driven by a small coefficient record, and the
g-shift theta sends both families exactly onto the symmetric basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import Algebra, AlgebraElement, PBWMonomial
from .cyclo import CycloNumber
from .ideals import BlockLabel
from .linalg import IncrementalSpan, nullspace
from .modules import SimpleModuleSpec, all_simple_specs, simple_action
from .realization import Realization, SparseMat, _identity, _matmul
from .report import Check


class LinearFunctional:
    """A linear form on the algebra, stored by basis-monomial index."""

    __slots__ = ("algebra", "values")

    def __init__(self, algebra: Algebra, values: Mapping[int, CycloNumber]):
        self.algebra = algebra
        self.values = {k: v for k, v in values.items() if not v.is_zero()}

    def __call__(self, x: AlgebraElement) -> CycloNumber:
        acc = self.algebra.params.zero
        index = self.algebra.monomial_index
        for mono, coeff in x.terms.items():
            val = self.values.get(index(mono))
            if val is not None:
                acc = acc + coeff * val
        return acc

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearFunctional):
            return NotImplemented
        return self.algebra is other.algebra and self.values == other.values

    def __add__(self, other: "LinearFunctional") -> "LinearFunctional":
        out = dict(self.values)
        for k, v in other.values.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return LinearFunctional(self.algebra, out)

    def __sub__(self, other: "LinearFunctional") -> "LinearFunctional":
        return self + (other * self.algebra.params.field.minus_one)

    def __mul__(self, scalar) -> "LinearFunctional":
        if not isinstance(scalar, CycloNumber):
            scalar = self.algebra.params.rational(scalar)
        return LinearFunctional(
            self.algebra, {k: v * scalar for k, v in self.values.items()})

    __rmul__ = __mul__


@dataclass
class SigmaRecord:
    """Coefficient record of one insertion character.

    Each family maps a summand tag (up/right/left/down; boundary blocks
    only carry their two existing tags) to the coefficient with which the
    bottom-row strip of that summand is read against one column family:
    alpha_up reads the up-arrow column, alpha_down the down-arrow column,
    and the beta families the corresponding top-letter columns (interior
    blocks only).
    """

    alpha_up: Dict[str, object] = dataclass_field(default_factory=dict)
    alpha_down: Dict[str, object] = dataclass_field(default_factory=dict)
    beta_up: Dict[str, object] = dataclass_field(default_factory=dict)
    beta_down: Dict[str, object] = dataclass_field(default_factory=dict)

    def families(self):
        return (("alpha_up", self.alpha_up), ("alpha_down", self.alpha_down),
                ("beta_up", self.beta_up), ("beta_down", self.beta_down))


_TARGET_GROUP = {
    "alpha_up": ("B", "up"),
    "alpha_down": ("B", "down"),
    "beta_up": ("T", "up"),
    "beta_down": ("T", "down"),
}

_GENERATOR_ORDER = ("e1", "e2", "f1", "f2", "K")


class Functionals:
    """The dual layer over one realized algebra."""

    def __init__(self, realization: Realization):
        self.real = realization
        self.system = realization.system
        self.algebra = realization.algebra
        self.params = realization.params
        self.p1 = realization.p1
        self.p2 = realization.p2
        self._monos: List[PBWMonomial] = list(self.algebra.basis_monomials())
        self._index: Dict[PBWMonomial, int] = {
            m: i for i, m in enumerate(self._monos)}
        self._integrals: Dict[str, LinearFunctional] = {}
        self._integral_meta: Dict[str, dict] = {}
        self._slf: Optional[Dict[str, LinearFunctional]] = None
        self._trace_vectors: Dict[tuple, List[CycloNumber]] = {}
        self._shift_tables: Dict[int, List[Tuple[int, CycloNumber]]] = {}
        self._qchars: Dict[tuple, LinearFunctional] = {}
        self._radford: Dict[tuple, LinearFunctional] = {}

    # ------------------------------------------------------------------
    # Integrals on the dual
    # ------------------------------------------------------------------

    def integral_functional(self, side: str = "left") -> LinearFunctional:
        """The solved integral on the dual, unit value on its support.

        Left means (id (x) f) o coproduct = f(.) 1, right mirrors it.  The
        space is required to be one-dimensional; anything else is a hard
        failure.
        """
        if side not in ("left", "right"):
            raise ValueError(f"side must be left or right, got {side!r}")
        cached = self._integrals.get(side)
        if cached is not None:
            return cached
        A = self.algebra
        zero = self.params.zero
        one = self.params.field.one
        one_idx = self._index[PBWMonomial(0, 0, 0, 0, 0)]
        equations: Dict[tuple, Dict[int, CycloNumber]] = {}
        for x_idx, x in enumerate(self._monos):
            for (u, v), c in A.coproduct_monomial(x).terms.items():
                if side == "left":
                    bucket, unknown = self._index[u], self._index[v]
                else:
                    bucket, unknown = self._index[v], self._index[u]
                row = equations.setdefault((x_idx, bucket), {})
                cur = row.get(unknown)
                row[unknown] = c if cur is None else cur + c
            row = equations.setdefault((x_idx, one_idx), {})
            cur = row.get(x_idx)
            row[x_idx] = -one if cur is None else cur - one
        rows = []
        for row in equations.values():
            clean = {k: v for k, v in row.items() if not v.is_zero()}
            if clean:
                rows.append(clean)
        basis = nullspace(self.params.field, rows, len(self._monos))
        if len(basis) != 1:
            raise ArithmeticError(
                f"{side} integral space has dimension {len(basis)}")
        vec = basis[0]
        support = sorted(vec)
        top = [k for k in support if self._is_top_word(self._monos[k])]
        pivot = top[0] if top else support[0]
        scale = vec[pivot].inverse()
        func = LinearFunctional(A, {k: v * scale for k, v in vec.items()})
        self._integrals[side] = func
        self._integral_meta[side] = {
            "support": support,
            "top_only": len(top) == len(support),
            "k_exponents": sorted({self._monos[k].ell for k in support}),
        }
        return func

    def _is_top_word(self, m: PBWMonomial) -> bool:
        return (m.m1 == self.p1 - 1 and m.m2 == self.p2 - 1
                and m.n1 == self.p1 - 1 and m.n2 == self.p2 - 1)

    def integral_checks(self) -> List[Check]:
        """Solved dimensions, support patterns, K-exponent adjudication."""
        checks = []
        korder = self.params.korder
        printed = {
            "left": (("difference", (self.p2 - self.p1) % korder),
                     ("reversed-difference", (self.p1 - self.p2) % korder)),
            "right": (("reversed-difference", (self.p1 - self.p2) % korder),
                      ("sum", (self.p1 + self.p2) % korder)),
        }
        for side in ("left", "right"):
            self.integral_functional(side)
            meta = self._integral_meta[side]
            checks.append(Check(
                f"integrals.{side}-solved", True,
                "defining system has a one-dimensional solution space",
                anchor="dual-integrals"))
            checks.append(Check(
                f"integrals.{side}-support",
                meta["top_only"] and len(meta["k_exponents"]) == 1,
                f"supported on the full e/f word with K-exponents "
                f"{meta['k_exponents']} ({len(meta['support'])} monomials)",
                anchor="integral-support-pattern"))
            ell = meta["k_exponents"][0] if meta["k_exponents"] else None
            verdicts = [f"{name}={'match' if val == ell else 'reject'}"
                        for name, val in printed[side]]
            agree = [name for name, val in printed[side] if val == ell]
            checks.append(Check(
                f"integrals.{side}-k-exponent", len(agree) == 1,
                f"solver exponent {ell}; printed variants "
                f"{', '.join(verdicts)}",
                anchor="integral-k-exponent", corrected=True))
        return checks

    def integral_element(self) -> AlgebraElement:
        """The full e/f word averaged over all K-powers."""
        A = self.algebra
        terms = {}
        for ell in range(self.params.korder):
            terms[A.monomial(self.p1 - 1, self.p2 - 1,
                             self.p1 - 1, self.p2 - 1, ell)] = 1
        return A.element(terms)

    def verify_integral_element(self) -> Check:
        A = self.algebra
        big = self.integral_element()
        bad = []
        for gen in _GENERATOR_ORDER:
            g = A.generator(gen)
            eps = A.counit(g)
            if g * big != big * eps:
                bad.append(f"left:{gen}")
            if big * g != big * eps:
                bad.append(f"right:{gen}")
        # generator cases suffice: the counit is an algebra map, so both
        # ideal properties extend multiplicatively to every element
        return Check(
            "integrals.two-sided-element", not bad,
            f"generator products match counit scaling; failures: "
            f"{bad or 'none'}", anchor="two-sided-integral")

    def verify_integral_identities(self, pairs: int = 200,
                                   seed: int = 9041) -> Check:
        """lambda(ab) = lambda(b S^2(a)) and mu(ab) = mu(S^2(b) a)."""
        A = self.algebra
        lam = self.integral_functional("left")
        mu = self.integral_functional("right")
        rng = random.Random(seed)
        bad = 0
        for _ in range(pairs):
            a = A.monomial_element(rng.choice(self._monos))
            b = A.monomial_element(rng.choice(self._monos))
            ab = a * b
            if lam(ab) != lam(b * A.antipode(A.antipode(a))):
                bad += 1
            if mu(ab) != mu(A.antipode(A.antipode(b)) * a):
                bad += 1
        return Check(
            "integrals.translation-identities", bad == 0,
            f"{pairs} random monomial pairs through the honest double "
            f"antipode; failures: {bad}",
            anchor="integral-translation-identities")

    # ------------------------------------------------------------------
    # The symmetric-function basis
    # ------------------------------------------------------------------

    def _trace_vector(self, label: BlockLabel, s_idx: int,
                      rowgroup, colgroup) -> List[CycloNumber]:
        key = (label, s_idx, rowgroup, colgroup)
        cached = self._trace_vectors.get(key)
        if cached is not None:
            return cached
        real = self.real.block_realization(label)
        summand = real.summands[s_idx]
        mono = self.real.monomial_matrices(summand)
        out = [self.real.group_trace(summand, mono[k], rowgroup, colgroup)
               for k in range(len(self._monos))]
        self._trace_vectors[key] = out
        return out

    def _block_recipes(self, label: BlockLabel) -> Dict[str, list]:
        kind = self.system.block_kind(label)
        tag = f"[{label.r1},{label.r2}]"
        B_up, B_down = ("B", "up"), ("B", "down")
        T_up, T_down = ("T", "up"), ("T", "down")
        if kind.startswith("corner"):
            return {f"trace{tag}": [(0, B_down, B_down)]}
        if kind in ("edge-1", "edge-2"):
            return {
                f"head-plus{tag}": [(0, B_up, B_up)],
                f"head-minus{tag}": [(1, B_up, B_up)],
                f"cross{tag}": [(0, B_down, B_up), (1, B_down, B_up)],
            }
        out = {f"head-{i}{tag}": [(i, T_up, T_up)] for i in range(4)}
        out[f"mid-01{tag}"] = [(0, T_down, T_up), (1, T_down, T_up)]
        out[f"mid-23{tag}"] = [(2, T_down, T_up), (3, T_down, T_up)]
        out[f"side-02{tag}"] = [(0, B_up, T_up), (2, B_up, T_up)]
        out[f"side-13{tag}"] = [(1, B_up, T_up), (3, B_up, T_up)]
        out[f"cross{tag}"] = [(i, B_down, T_up) for i in range(4)]
        return out

    def slf_basis(self) -> Dict[str, LinearFunctional]:
        """All partial-trace functionals, keyed by recipe and block."""
        if self._slf is not None:
            return self._slf
        out: Dict[str, LinearFunctional] = {}
        for label in self.system.block_labels():
            for name, cells in self._block_recipes(label).items():
                vecs = [self._trace_vector(label, s_idx, rg, cg)
                        for s_idx, rg, cg in cells]
                values = {}
                for k in range(len(self._monos)):
                    acc = vecs[0][k]
                    for vec in vecs[1:]:
                        acc = acc + vec[k]
                    if not acc.is_zero():
                        values[k] = acc
                out[name] = LinearFunctional(self.algebra, values)
        self._slf = out
        return out

    def slf_checks(self) -> List[Check]:
        basis = self.slf_basis()
        want = (3 * self.p1 - 1) * (3 * self.p2 - 1) // 2
        checks = [Check(
            "slf.count", len(basis) == want,
            f"{len(basis)} functionals constructed, formula gives {want}",
            anchor="symmetric-function-count")]
        span = IncrementalSpan(self.params.field)
        for func in basis.values():
            span.add(dict(func.values))
        checks.append(Check(
            "slf.rank", span.rank == want,
            f"value vectors have exact rank {span.rank}",
            anchor="symmetric-function-rank"))
        return checks

    # ------------------------------------------------------------------
    # Symmetry scans
    # ------------------------------------------------------------------

    def _pair_source(self, mode: str, sample_size: int, seed: int):
        n = len(self._monos)
        if mode == "exhaustive":
            return ((i, j) for i in range(n) for j in range(i, n))
        if mode != "sampled":
            raise ValueError(f"unknown mode {mode!r}")
        rng = random.Random(seed)
        return ((rng.randrange(n), rng.randrange(n))
                for _ in range(sample_size))

    def pairwise_scan(self, symmetric: Mapping[str, LinearFunctional],
                      twisted: Mapping[str, LinearFunctional] = None,
                      mode: str = "exhaustive", sample_size: int = 2000,
                      seed: int = 11) -> List[Check]:
        """One sweep over basis pairs grading many functionals at once.

        Symmetric members must satisfy f(xy) = f(yx); twisted members the
        weighted version f(xy) = w(y) f(yx) where w(y) is the eigenvalue of
        the squared antipode on the basis monomial y -- its K-conjugation
        weight raised to the balancing exponent.
        """
        twisted = twisted or {}
        A = self.algebra
        monos = self._monos
        prod = A.product_monomials
        zeta = self.params.zeta
        gexp = self.p1 - self.p2
        weights = [zeta(A.conjugation_weight_exponent(m) * gexp)
                   for m in monos]
        sym = [(name, {monos[k]: v for k, v in f.values.items()})
               for name, f in symmetric.items()]
        twi = [(name, {monos[k]: v for k, v in f.values.items()})
               for name, f in twisted.items()]
        sym_bad: Dict[str, tuple] = {}
        twi_bad: Dict[str, tuple] = {}
        zero = self.params.zero
        count = 0
        for i, j in self._pair_source(mode, sample_size, seed):
            count += 1
            pij = prod(monos[i], monos[j])
            pji = pij if i == j else prod(monos[j], monos[i])
            for name, vals in sym:
                if i == j or name in sym_bad:
                    continue
                a = _sparse_eval(vals, pij)
                b = _sparse_eval(vals, pji)
                if not _opt_eq(a, b, zero):
                    sym_bad[name] = (i, j)
            for name, vals in twi:
                if name in twi_bad:
                    continue
                a = _sparse_eval(vals, pij)
                b = _sparse_eval(vals, pji)
                wb = None if b is None else weights[j] * b
                if not _opt_eq(a, wb, zero):
                    twi_bad[name] = (i, j)
                elif i != j:
                    wa = None if a is None else weights[i] * a
                    if not _opt_eq(b, wa, zero):
                        twi_bad[name] = (j, i)
        checks = []
        for name, _ in sym:
            witness = sym_bad.get(name)
            checks.append(Check(
                f"symmetry.{name}", witness is None,
                f"{mode} scan over {count} pairs"
                + (f"; violated at monomial pair {witness}" if witness else ""),
                anchor="slf-symmetry"))
        for name, _ in twi:
            witness = twi_bad.get(name)
            checks.append(Check(
                f"twisted-symmetry.{name}", witness is None,
                f"{mode} scan over {count} pairs"
                + (f"; violated at monomial pair {witness}" if witness else ""),
                anchor="character-twisted-symmetry"))
        return checks

    def is_symmetric(self, phi: LinearFunctional, mode: str = "exhaustive",
                     sample_size: int = 2000, seed: int = 11) -> bool:
        return self.symmetry_witness(phi, mode, sample_size, seed) is None

    def symmetry_witness(self, phi: LinearFunctional,
                         mode: str = "exhaustive", sample_size: int = 2000,
                         seed: int = 11) -> Optional[Tuple[int, int]]:
        """First basis pair with phi(xy) != phi(yx), or None."""
        A = self.algebra
        monos = self._monos
        prod = A.product_monomials
        vals = {monos[k]: v for k, v in phi.values.items()}
        zero = self.params.zero
        for i, j in self._pair_source(mode, sample_size, seed):
            if i == j:
                continue
            a = _sparse_eval(vals, prod(monos[i], monos[j]))
            b = _sparse_eval(vals, prod(monos[j], monos[i]))
            if not _opt_eq(a, b, zero):
                return (i, j)
        return None

    def counit_functional(self) -> LinearFunctional:
        values = {}
        one = self.params.field.one
        for k, m in enumerate(self._monos):
            if m.m1 == 0 and m.m2 == 0 and m.n1 == 0 and m.n2 == 0:
                values[k] = one
        return LinearFunctional(self.algebra, values)

    # ------------------------------------------------------------------
    # Radford transform
    # ------------------------------------------------------------------

    def radford_transform(self, c: AlgebraElement) -> LinearFunctional:
        """x -> lambda(x * g^{-1}c), expanded by honest products."""
        lam = self.integral_functional("left")
        lam_by_mono = {self._monos[k]: v for k, v in lam.values.items()}
        A = self.algebra
        d = A.k_power(self.p2 - self.p1) * c
        prod = A.product_monomials
        values = {}
        for k, m in enumerate(self._monos):
            acc = None
            for t, ct in d.terms.items():
                for mono2, c2 in prod(m, t).items():
                    lv = lam_by_mono.get(mono2)
                    if lv is not None:
                        term = ct * c2 * lv
                        acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                values[k] = acc
        return LinearFunctional(A, values)

    def _radford_of_central(self, label: BlockLabel, key: str,
                            element: AlgebraElement) -> LinearFunctional:
        cached = self._radford.get((label, key))
        if cached is None:
            cached = self.radford_transform(element)
            self._radford[(label, key)] = cached
        return cached

    def _combine(self, basis: Mapping[str, LinearFunctional],
                 combo: Mapping[str, CycloNumber]) -> LinearFunctional:
        out = LinearFunctional(self.algebra, {})
        for name, coeff in combo.items():
            out = out + basis[name] * coeff
        return out

    def _radford_identity_table(self, label: BlockLabel):
        """Per central element: the printed combination, then corrections.

        Boundary blocks in the second direction print the first-direction
        Psi in their cross identity; the structural mirror suggests the
        second, so both variants are graded.  All other identities are
        taken as printed.
        """
        kind = self.system.block_kind(label)
        r1, r2 = label
        p1, p2 = self.p1, self.p2
        tag = f"[{r1},{r2}]"
        sc = self.system.scalar_constants
        if kind == "corner-plus":
            phi_inv = sc(1, p1, p2).Phi.inverse()
            return [("unit", "unit",
                     [("printed", {f"trace{tag}": phi_inv})])]
        if kind == "corner-minus":
            phi_inv = sc(-1, p1, p2).Phi.inverse()
            return [("unit", "unit",
                     [("printed", {f"trace{tag}": phi_inv})])]
        if kind in ("edge-1", "edge-2"):
            consts = sc(1, r1, p2) if kind == "edge-1" else sc(1, p1, r2)
            phi_inv = consts.Phi.inverse()
            heads = {f"head-plus{tag}", f"head-minus{tag}"}

            def cross_combo(psi):
                combo = {f"cross{tag}": phi_inv}
                for h in heads:
                    combo[h] = -(phi_inv * psi)
                return combo

            if kind == "edge-1":
                cross_variants = [("printed", cross_combo(consts.Psi1))]
            else:
                cross_variants = [
                    ("printed first-direction Psi", cross_combo(consts.Psi1)),
                    ("corrected second-direction Psi",
                     cross_combo(consts.Psi2)),
                ]
            return [
                ("unit", "unit", cross_variants),
                ("drop-plus", "arrow-drop-0",
                 [("printed", {f"head-plus{tag}": phi_inv})]),
                ("drop-minus", "arrow-drop-1",
                 [("printed", {f"head-minus{tag}": phi_inv})]),
            ]
        consts = sc(1, r1, r2)
        phi_inv = consts.Phi.inverse()
        psi1, psi2 = consts.Psi1, consts.Psi2
        unit_combo = {f"cross{tag}": phi_inv}
        for i in range(4):
            unit_combo[f"head-{i}{tag}"] = phi_inv * psi1 * psi2
        unit_combo[f"mid-01{tag}"] = -(phi_inv * psi2)
        unit_combo[f"mid-23{tag}"] = -(phi_inv * psi2)
        unit_combo[f"side-02{tag}"] = -(phi_inv * psi1)
        unit_combo[f"side-13{tag}"] = -(phi_inv * psi1)
        table = [("unit", "unit", [("printed", unit_combo)])]
        for slug, head_pair in (("mid-01", (0, 1)), ("mid-23", (2, 3))):
            combo = {f"{slug}{tag}": phi_inv}
            for i in head_pair:
                combo[f"head-{i}{tag}"] = -(phi_inv * psi1)
            table.append((slug, f"top-drop-{slug[-2:]}",
                          [("printed", combo)]))
        for slug, drop_key, head_pair in (
                ("side-02", "arrow-drop-02", (0, 2)),
                ("side-13", "arrow-drop-13", (1, 3))):
            combo = {f"{slug}{tag}": phi_inv}
            for i in head_pair:
                combo[f"head-{i}{tag}"] = -(phi_inv * psi2)
            table.append((slug, drop_key, [("printed", combo)]))
        for i in range(4):
            table.append((f"corner-{i}", f"corner-drop-{i}",
                          [("printed", {f"head-{i}{tag}": phi_inv})]))
        return table

    def verify_radford_identities(self) -> List[Check]:
        checks = []
        slf = self.slf_basis()
        for label in self.system.block_labels():
            central = self.real.central_elements(label)
            r1, r2 = label
            for slug, key, variants in self._radford_identity_table(label):
                lhs = self._radford_of_central(label, key, central[key])
                chosen = None
                for v_idx, (vname, combo) in enumerate(variants):
                    if lhs == self._combine(slf, combo):
                        chosen = (v_idx, vname)
                        break
                check_id = f"radford[{r1},{r2}].{slug}"
                if chosen is not None:
                    v_idx, vname = chosen
                    checks.append(Check(
                        check_id, True,
                        f"exact on all {len(self._monos)} basis monomials "
                        f"({vname})",
                        anchor="radford-map-identities", corrected=v_idx > 0))
                    continue
                rhs = self._combine(slf, variants[0][1])
                ratio = _proportionality(lhs, rhs, self.params)
                detail = ("fails as printed; observed left side = "
                          f"{ratio} x right side" if ratio is not None else
                          "fails as printed and is not proportional to the "
                          "printed combination")
                checks.append(Check(check_id, False, detail,
                                    anchor="radford-map-identities"))
        return checks

    def verify_radford_injectivity(self) -> List[Check]:
        """Central elements map to independent functionals, block by block."""
        checks = []
        for label in self.system.block_labels():
            central = self.real.central_elements(label)
            span = IncrementalSpan(self.params.field)
            for key, element in central.items():
                func = self._radford_of_central(label, key, element)
                span.add(dict(func.values))
            dim = self.real.center_dimension(label)
            checks.append(Check(
                f"radford[{label.r1},{label.r2}].injective",
                span.rank == len(central) == dim,
                f"{len(central)} transforms span rank {span.rank}; "
                f"center dimension {dim}",
                anchor="radford-injectivity"))
        return checks

    # ------------------------------------------------------------------
    # Characters
    # ------------------------------------------------------------------

    def _shift_table(self, t: int) -> List[Tuple[int, CycloNumber]]:
        """Index and scalar of K^t * (k-th basis monomial), per k."""
        t %= self.params.korder
        cached = self._shift_tables.get(t)
        if cached is not None:
            return cached
        prod = self.algebra.product_monomials
        kmono = PBWMonomial(0, 0, 0, 0, t)
        out = []
        for m in self._monos:
            (mono2, c), = prod(kmono, m).items()
            out.append((self._index[mono2], c))
        self._shift_tables[t] = out
        return out

    def theta(self, beta: LinearFunctional) -> LinearFunctional:
        """x -> beta(gx): the bridge from characters to symmetric forms."""
        table = self._shift_table(self.p1 - self.p2)
        values = {}
        for k, (idx, c) in enumerate(table):
            v = beta.values.get(idx)
            if v is not None:
                values[k] = c * v
        return LinearFunctional(self.algebra, values)

    def q_character(self, spec: SimpleModuleSpec) -> LinearFunctional:
        """x -> trace of g^{-1}x on one simple module."""
        key = (spec.alpha, spec.r1, spec.r2)
        cached = self._qchars.get(key)
        if cached is not None:
            return cached
        P = self.params
        mats = {}
        for gen in _GENERATOR_ORDER:
            dense = simple_action(P, spec, gen)
            rows_n, cols_n = dense.shape
            sparse: SparseMat = {}
            for j in range(cols_n):
                col = {i: dense[i, j] for i in range(rows_n)
                       if not dense[i, j].is_zero()}
                if col:
                    sparse[j] = col
            mats[gen] = sparse
        dim = spec.dim
        ident = _identity(dim, P.field.one)

        def powers(mat, count):
            out = [ident]
            for _ in range(count - 1):
                out.append(_matmul(out[-1], mat))
            return out

        e1 = powers(mats["e1"], self.p1)
        e2 = powers(mats["e2"], self.p2)
        f1 = powers(mats["f1"], self.p1)
        f2 = powers(mats["f2"], self.p2)
        kp = powers(mats["K"], P.korder)
        gexp = (self.p2 - self.p1) % P.korder
        ginv_diag = [kp[gexp][d][d] for d in range(dim)]
        values = {}
        k = 0
        for m1 in range(self.p1):
            for m2 in range(self.p2):
                left = _matmul(e1[m1], e2[m2])
                for n1 in range(self.p1):
                    mid = _matmul(left, f1[n1])
                    for n2 in range(self.p2):
                        right = _matmul(mid, f2[n2])
                        for ell in range(P.korder):
                            M = _matmul(right, kp[ell])
                            acc = None
                            for d in range(dim):
                                v = M.get(d, {}).get(d)
                                if v is not None:
                                    term = ginv_diag[d] * v
                                    acc = (term if acc is None
                                           else acc + term)
                            if acc is not None and not acc.is_zero():
                                values[k] = acc
                            k += 1
        func = LinearFunctional(self.algebra, values)
        self._qchars[key] = func
        return func

    def summand_tags(self, label: BlockLabel) -> Tuple[str, ...]:
        kind = self.system.block_kind(label)
        if kind == "edge-1":
            return ("up", "right")
        if kind == "edge-2":
            return ("up", "left")
        if kind == "interior":
            return ("up", "right", "left", "down")
        raise ValueError(f"no insertion characters on {kind} blocks")

    def _validate_sigma(self, label: BlockLabel, record: SigmaRecord) -> None:
        tags = self.summand_tags(label)
        kind = self.system.block_kind(label)
        P = self.params

        def coeff(mapping, tag):
            v = mapping.get(tag, 0)
            return v if isinstance(v, CycloNumber) else P.rational(v)

        for fname, mapping in record.families():
            for tag in mapping:
                if tag not in tags:
                    raise ValueError(
                        f"{fname} names tag {tag!r}; block has {tags}")
            if kind != "interior" and fname.startswith("beta") and any(
                    not coeff(mapping, t).is_zero() for t in tags):
                raise ValueError(
                    "beta families need the top letter row; boundary "
                    "blocks do not have one")
        pairs = []
        if kind == "interior":
            pairs = [("alpha_up", "up", "right"), ("alpha_up", "down", "left"),
                     ("beta_down", "up", "left"), ("beta_down", "down", "right"),
                     ("beta_up", "up", "right"), ("beta_up", "up", "left"),
                     ("beta_up", "up", "down")]
        else:
            pairs = [("alpha_up", tags[0], tags[1])]
        by_name = dict(record.families())
        for fname, t1, t2 in pairs:
            if coeff(by_name[fname], t1) != coeff(by_name[fname], t2):
                raise ValueError(
                    f"record violates the character constraint "
                    f"{fname}:{t1} = {fname}:{t2}")

    def sigma_character(self, label: BlockLabel, record: SigmaRecord,
                        strict: bool = False) -> LinearFunctional:
        """Trace with insertion over the block's projective sum.

        Reads, for each summand, the bottom-row strip of the represented
        matrix of g^{-1}x against the column families selected by the
        record.  In strict mode the record must satisfy the character
        constraints; otherwise any record is evaluated (useful for
        exhibiting how invalid records fail the twisted-symmetry scan).
        """
        tags = self.summand_tags(label)
        if strict:
            self._validate_sigma(label, record)
        P = self.params
        combo: List[CycloNumber] = [P.zero] * len(self._monos)
        touched = False
        for fname, mapping in record.families():
            target = _TARGET_GROUP[fname]
            for tag, raw in mapping.items():
                if tag not in tags:
                    raise ValueError(
                        f"{fname} names tag {tag!r}; block has {tags}")
                coeff = (raw if isinstance(raw, CycloNumber)
                         else P.rational(raw))
                if coeff.is_zero():
                    continue
                vec = self._trace_vector(label, tags.index(tag),
                                         ("B", "down"), target)
                combo = [acc + coeff * v for acc, v in zip(combo, vec)]
                touched = True
        values = {}
        if touched:
            table = self._shift_table(self.p2 - self.p1)
            for k, (idx, c) in enumerate(table):
                v = combo[idx]
                if not v.is_zero():
                    values[k] = c * v
        return LinearFunctional(self.algebra, values)

    def sigma_patterns(self, label: BlockLabel) -> Dict[str, SigmaRecord]:
        """The records whose theta-images are the non-head basis members."""
        kind = self.system.block_kind(label)
        if kind != "interior":
            tags = self.summand_tags(label)
            return {"cross": SigmaRecord(alpha_up={t: 1 for t in tags})}
        return {
            "mid-01": SigmaRecord(alpha_up={"up": 1, "right": 1}),
            "mid-23": SigmaRecord(alpha_up={"down": 1, "left": 1}),
            "side-02": SigmaRecord(beta_down={"up": 1, "left": 1}),
            "side-13": SigmaRecord(beta_down={"down": 1, "right": 1}),
            "cross": SigmaRecord(beta_up={t: 1 for t in
                                          ("up", "right", "left", "down")}),
        }

    def _block_position(self, spec: SimpleModuleSpec):
        for label in self.system.block_labels():
            for idx, S in enumerate(self.real.summands_of(label)):
                if (S.alpha, S.r1, S.r2) == (spec.alpha, spec.r1, spec.r2):
                    return label, idx
        raise ValueError(f"no block carries the class {spec}")

    def _head_name(self, label: BlockLabel, idx: int) -> str:
        kind = self.system.block_kind(label)
        tag = f"[{label.r1},{label.r2}]"
        if kind.startswith("corner"):
            return f"trace{tag}"
        if kind in ("edge-1", "edge-2"):
            return (f"head-plus{tag}", f"head-minus{tag}")[idx]
        return f"head-{idx}{tag}"

    def verify_character_bridge(self) -> List[Check]:
        """theta carries every computed character onto the trace basis."""
        checks = []
        slf = self.slf_basis()
        bad = []
        ratios = []
        for spec in all_simple_specs(self.params):
            label, idx = self._block_position(spec)
            name = self._head_name(label, idx)
            got = self.theta(self.q_character(spec))
            if got == slf[name]:
                continue
            ratio = _proportionality(got, slf[name], self.params)
            if ratio is not None:
                ratios.append((spec.label(), name, str(ratio)))
            else:
                bad.append((spec.label(), name))
        detail = ("each simple module's twisted trace lands on the head "
                  "functional of its own summand slot")
        if ratios:
            detail += f"; scalar-normalized cases: {ratios}"
        if bad:
            detail += f"; failures: {bad}"
        checks.append(Check("characters.simple-bridge", not bad and not ratios,
                            detail, anchor="character-bridge"))
        for label in self.system.block_labels():
            if self.system.block_kind(label).startswith("corner"):
                continue
            tag = f"[{label.r1},{label.r2}]"
            misses = []
            for key, record in self.sigma_patterns(label).items():
                got = self.theta(self.sigma_character(label, record,
                                                      strict=True))
                if got != slf[f"{key}{tag}"]:
                    misses.append(key)
            checks.append(Check(
                f"characters.insertion-bridge{tag}", not misses,
                f"pattern records map onto their basis members; "
                f"failures: {misses or 'none'}",
                anchor="character-bridge"))
        return checks

    def exhibit_invalid_sigma(self, label: BlockLabel,
                              max_pairs: int = 60000,
                              seed: int = 4412) -> Check:
        """An unconstrained record must fail the twisted-symmetry scan."""
        tags = self.summand_tags(label)
        record = SigmaRecord(alpha_up={tags[0]: 1})
        try:
            self._validate_sigma(label, record)
            strict_rejects = False
        except ValueError:
            strict_rejects = True
        beta = self.sigma_character(label, record, strict=False)
        A = self.algebra
        monos = self._monos
        prod = A.product_monomials
        zeta = self.params.zeta
        vals = {monos[k]: v for k, v in beta.values.items()}
        zero = self.params.zero
        rng = random.Random(seed)
        n = len(monos)
        witness = None
        gexp = self.p1 - self.p2
        for _ in range(max_pairs):
            i, j = rng.randrange(n), rng.randrange(n)
            a = _sparse_eval(vals, prod(monos[i], monos[j]))
            b = _sparse_eval(vals, prod(monos[j], monos[i]))
            w = zeta(A.conjugation_weight_exponent(monos[j]) * gexp)
            wb = None if b is None else w * b
            if not _opt_eq(a, wb, zero):
                witness = (i, j)
                break
        return Check(
            f"characters.invalid-record[{label.r1},{label.r2}]",
            strict_rejects and witness is not None,
            f"strict mode rejects the record; twisted symmetry violated at "
            f"monomial pair {witness}",
            anchor="character-constraints")

    # ------------------------------------------------------------------
    # Center (delegated; the dual layer is its natural consumer)
    # ------------------------------------------------------------------

    def center_dimension(self, label: BlockLabel) -> int:
        return self.real.center_dimension(label)


def _sparse_eval(vals: Mapping[PBWMonomial, CycloNumber],
                 terms: Mapping[PBWMonomial, CycloNumber]):
    acc = None
    for m, c in terms.items():
        v = vals.get(m)
        if v is not None:
            acc = c * v if acc is None else acc + c * v
    return acc


def _opt_eq(a, b, zero) -> bool:
    if a is None and b is None:
        return True
    if a is None:
        return b.is_zero()
    if b is None:
        return a.is_zero()
    return a == b


def _proportionality(a: LinearFunctional, b: LinearFunctional,
                     params) -> Optional[CycloNumber]:
    """The scalar with a = scalar * b, if one exists."""
    if b.is_zero():
        return params.field.one if a.is_zero() else None
    if set(a.values) != set(b.values):
        return None
    k0 = next(iter(b.values))
    ratio = a.values[k0] * b.values[k0].inverse()
    return ratio if a == b * ratio else None
