"""Coactions on presented algebras, invariant subspaces, finite-dimensional
corepresentations, cotensor products at degree truncation, and the left
coaction built from the inverse antipode.
"""

from __future__ import annotations

from . import structure
from .linalg import nullspace, RowSpace, invert_scalar_matrix
from .ncalg import EMPTY, NCPoly, Presentation, PresentationError, Word, format_word
from .report import Report
from .scalars import QRat, qrat
from .tensors import TensorElem


class Coaction:
    """Right coaction delta: A -> A (x) H given on generators."""

    def __init__(self, name: str, A: Presentation, H: Presentation, table: dict):
        self.name = name
        self.A = A
        self.H = H
        self.table: dict[str, TensorElem] = {}
        for g in A.generators:
            if g.name not in table:
                raise PresentationError(f"coaction misses generator {g.name!r}")
            t = table[g.name]
            if t.legs != (A, H):
                raise PresentationError(f"coaction value for {g.name!r} has wrong legs")
            self.table[g.name] = t
        self.verified = False
        self._cache: dict[Word, TensorElem] = {}

    def apply_word(self, w: Word) -> TensorElem:
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        out = TensorElem.unit((self.A, self.H))
        for g in w:
            out = out.tensor_mul(self.table[g])
        self._cache[w] = out
        return out

    def apply(self, p: NCPoly) -> TensorElem:
        if p.alg is not self.A:
            raise PresentationError("element does not belong to the coacted algebra")
        out = TensorElem.zero((self.A, self.H))
        for w, c in p.terms.items():
            out = out + self.apply_word(w) * c
        return out

    def __call__(self, p: NCPoly) -> TensorElem:
        return self.apply(p)


def regular_coaction(alg: Presentation) -> Coaction:
    """The comultiplication of a Hopf presentation, viewed as a coaction on itself."""
    structure._require_hopf(alg)
    table = {g.name: structure.coproduct_word(alg, (g.name,)) for g in alg.generators}
    return Coaction(f"regular_{alg.name}", alg, alg, table)


def trivial_coaction(A: Presentation, H: Presentation) -> Coaction:
    one_h = EMPTY
    table = {g.name: TensorElem((A, H), {((g.name,), one_h): QRat(1)})
             for g in A.generators}
    return Coaction(f"trivial_{A.name}", A, H, table)


def verify_coaction(delta: Coaction, d: int) -> Report:
    """Algebra-map, coassociativity and counitality certificates up to degree d."""
    A, H = delta.A, delta.H
    structure._require_hopf(H)
    rep = Report()
    for r in A.rules:
        img = delta.apply_word(r.lhs)
        for w, c in r.rhs.items():
            img = img - delta.apply_word(w) * c
        rep.add(f"relation {' '.join(r.lhs)}", img.is_zero,
                "maps to 0" if img.is_zero else "relation not respected",
                tag="delta extends to an algebra map")
    unit_ok = delta.apply_word(EMPTY) == TensorElem.unit((A, H))
    rep.add("unit", unit_ok, "delta(1) = 1 (x) 1", tag="delta(1) = 1 (x) 1")
    words = A.basis_up_to_degree(d)
    bad_coassoc = []
    bad_counit = []
    for w in words:
        dv = delta.apply_word(w)
        lhs = dv.expand_leg(0, delta.apply_word, legs_hint=(A, H))
        rhs = dv.expand_leg(1, lambda u: structure.coproduct_word(H, u), legs_hint=(H, H))
        if lhs != rhs:
            bad_coassoc.append(w)
        back = dv.contract_leg(1, lambda u: structure.counit_word(H, u))
        if back != NCPoly(A, {w: QRat(1)}, normal=True):
            bad_counit.append(w)

    def _describe(bad):
        if not bad:
            return f"all {len(words)} basis words up to degree {d}"
        return "failing words: " + ", ".join(format_word(w) for w in bad[:5])

    rep.add("coassociativity", not bad_coassoc, _describe(bad_coassoc),
            tag="(delta (x) id) o delta = (id (x) Delta) o delta")
    rep.add("counitality", not bad_counit, _describe(bad_counit),
            tag="(id (x) eps) o delta = id")
    delta.verified = rep.ok
    return rep


def _tensor_key_order(delta: Coaction):
    A, H = delta.A, delta.H
    return lambda k: (A.term_key(k[0]), H.term_key(k[1]))


def invariant_subspace(delta: Coaction, d: int) -> list[NCPoly]:
    """Reduced basis of {b in A_{<=d} : delta(b) = b (x) 1}."""
    A, H = delta.A, delta.H
    words = A.basis_up_to_degree(d)
    columns = []
    for w in words:
        t = delta.apply_word(w) - TensorElem((A, H), {(w, EMPTY): QRat(1)})
        columns.append(dict(t.terms))
    sols = nullspace(columns, _tensor_key_order(delta))
    out = []
    for sol in sols:
        terms = {w: c for w, c in zip(words, sol) if not c.is_zero}
        out.append(NCPoly(A, terms, normal=True))
    return _echelon_polys(out, A)


def _echelon_polys(polys: list[NCPoly], alg: Presentation) -> list[NCPoly]:
    space = RowSpace(alg.term_key)
    for p in polys:
        space.insert(dict(p.terms))
    rows = space.sorted_rows()
    return [NCPoly(alg, r, normal=True) for r in rows]


class Corepresentation:
    """Square matrix of coalgebra elements; left corep convention
    rho(v_i) = sum_j c_ij (x) v_j."""

    def __init__(self, name: str, H: Presentation, entries, side: str = "left"):
        self.name = name
        self.H = H
        self.entries: list[list[NCPoly]] = [list(row) for row in entries]
        self.n = len(self.entries)
        for row in self.entries:
            if len(row) != self.n:
                raise PresentationError("corepresentation matrix must be square")
            for e in row:
                if e.alg is not H:
                    raise PresentationError("corepresentation entry in the wrong algebra")
        self.side = side

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def verify_corepresentation(c: Corepresentation) -> Report:
    H = c.H
    structure._require_hopf(H)
    rep = Report()
    bad_delta = []
    bad_eps = []
    for i in range(c.n):
        for j in range(c.n):
            lhs = structure.coproduct(c[i, j])
            rhs = TensorElem.zero((H, H))
            for k in range(c.n):
                rhs = rhs + TensorElem.from_poly(c[i, k]).outer(TensorElem.from_poly(c[k, j]))
            if lhs != rhs:
                bad_delta.append((i, j))
            want = QRat(1) if i == j else QRat(0)
            if structure.counit(c[i, j]) != want:
                bad_eps.append((i, j))
    rep.add("matrix-coproduct", not bad_delta,
            "Delta(c_ij) = sum_k c_ik (x) c_kj" if not bad_delta else f"fails at {bad_delta}",
            tag="Delta(c_ij) = sum_k c_ik (x) c_kj")
    rep.add("matrix-counit", not bad_eps,
            "eps(c_ij) = delta_ij" if not bad_eps else f"fails at {bad_eps}",
            tag="eps(c_ij) = delta_ij")
    return rep


def contragredient(c: Corepresentation) -> Corepresentation:
    """Antipode applied entrywise to the transpose."""
    entries = [[structure.antipode(c[j, i]) for j in range(c.n)] for i in range(c.n)]
    return Corepresentation(f"{c.name}-dual", c.H, entries, side=c.side)


def corep_equivalence(c: Corepresentation, c2: Corepresentation, Q) -> Report:
    """Exact check that Q c Q^-1 = c2 for a scalar matrix Q."""
    rep = Report()
    if c.H is not c2.H or c.n != c2.n:
        rep.add("shape", False, "corepresentations not comparable", tag="Q c Q^-1 = c'")
        return rep
    Qm = [[qrat(x) for x in row] for row in Q]
    inv = invert_scalar_matrix(Qm)
    rep.add("intertwiner-invertible", inv is not None,
            "Q is invertible over Q(q)" if inv is not None else "Q is singular",
            tag="Q in GL_n(Q(q))")
    if inv is None:
        return rep
    # compare Q c = c2 Q entrywise to avoid polynomial-side inversion
    ok = True
    for i in range(c.n):
        for j in range(c.n):
            lhs = c.H.zero()
            rhs = c.H.zero()
            for k in range(c.n):
                lhs = lhs + c[k, j] * Qm[i][k]
                rhs = rhs + c2[i, k] * Qm[k][j]
            if lhs != rhs:
                ok = False
    rep.add("conjugacy", ok, "Q c Q^-1 = c' entrywise" if ok else "conjugation fails",
            tag="Q c Q^-1 = c'")
    return rep


def cotensor_basis(delta: Coaction, c: Corepresentation, d: int) -> list[list[NCPoly]]:
    """Basis of the truncated cotensor product: tuples (x_1..x_n) over A_{<=d}
    with delta(x_j) = sum_i x_i (x) c_ij."""
    A, H = delta.A, delta.H
    if c.H is not H:
        raise PresentationError("corepresentation lives over the wrong Hopf algebra")
    words = A.basis_up_to_degree(d)
    variables = [(j, w) for j in range(c.n) for w in words]
    columns = []
    for (j, w) in variables:
        col: dict = {}
        for (aw, hw), coeff in delta.apply_word(w).terms.items():
            key = (j, aw, hw)
            col[key] = col.get(key, QRat(0)) + coeff
        for jj in range(c.n):
            for hw, coeff in c[j, jj].terms.items():
                key = (jj, w, hw)
                v = col.get(key, QRat(0)) - coeff
                if v.is_zero:
                    col.pop(key, None)
                else:
                    col[key] = v
        columns.append({k: v for k, v in col.items() if not v.is_zero})
    key_order = lambda k: (k[0], A.term_key(k[1]), H.term_key(k[2]))
    sols = nullspace(columns, key_order)
    vectors = []
    for sol in sols:
        vec = [A.zero() for _ in range(c.n)]
        for (j, w), coeff in zip(variables, sol):
            if not coeff.is_zero:
                vec[j] = vec[j] + NCPoly(A, {w: coeff}, normal=True)
        vectors.append(vec)
    return _echelon_vectors(vectors, A, c.n)


def _echelon_vectors(vectors, alg: Presentation, n: int):
    key_order = lambda k: (k[0], alg.term_key(k[1]))
    space = RowSpace(key_order)
    for vec in vectors:
        row = {}
        for j, p in enumerate(vec):
            for w, coeff in p.terms.items():
                row[(j, w)] = coeff
        space.insert(row)
    out = []
    for row in space.sorted_rows():
        vec = [alg.zero() for _ in range(n)]
        for (j, w), coeff in row.items():
            vec[j] = vec[j] + NCPoly(alg, {w: coeff}, normal=True)
        out.append(vec)
    return out


def left_coaction(delta: Coaction, a: NCPoly) -> TensorElem:
    """(S^-1 (x) id) o flip o delta, the Hopf closed form of the left coaction."""
    H = delta.H
    hopf = structure._require_hopf(H)
    if not hopf.antipode_inv:
        raise PresentationError("left coaction needs the inverse antipode")
    flipped = delta.apply(a).swap(0, 1)
    return flipped.map_leg(0, lambda w: structure.antipode_inv(
        NCPoly(H, {w: QRat(1)}, normal=True)))
