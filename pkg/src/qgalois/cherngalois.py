"""Associated-bundle idempotents: the retraction sigma built from a strong
connection and a unital functional, the projector with entries
sigma(r_mu(c_ij) a_nu), pullback of projectors along equivariant maps, block
alignment f(E) = [[e',0],[d,0]] with its conjugation certificate, and the
end-to-end verification of the pullback mechanism.
"""

from __future__ import annotations

from fractions import Fraction

from . import structure
from .comodule import Coaction, Corepresentation, cotensor_basis, invariant_subspace
from .connection import StrongConnection, check_equivariance, pullback_connection
from .linalg import RowSpace, independent_subset, invert_scalar_matrix, nullspace
from .ncalg import EMPTY, NCPoly, Presentation, PresentationError, format_word
from .report import Report
from .scalars import QRat, qrat
from .structure import Morphism
from .tensors import TensorElem


class ProjectorError(ArithmeticError):
    """A produced matrix failed idempotence or base invariance."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class Functional:
    """Unital linear functional on a presented algebra."""

    def __init__(self, alg: Presentation, fn, rule: str = "custom"):
        self.alg = alg
        self.fn = fn
        self.rule = rule
        if fn(alg.one()) != QRat(1):
            raise ValueError("functional must be unital")

    def __call__(self, p: NCPoly) -> QRat:
        return self.fn(p)

    def on_word(self, w) -> QRat:
        return self.fn(NCPoly(self.alg, {w: QRat(1)}, normal=True))

    @classmethod
    def constant_term(cls, alg: Presentation) -> "Functional":
        return cls(alg, lambda p: p.constant_term(), rule="constant-term")

    @classmethod
    def pullback(cls, phi: "Functional", f: Morphism) -> "Functional":
        """phi o f; the choice the commuting sigma-diagram requires."""
        if phi.alg is not f.target:
            raise PresentationError("functional does not live on the morphism target")
        return cls(f.source, lambda p: phi(f.apply(p)), rule=f"{phi.rule} o {f.name}")


def sigma(phi: Functional, ell: StrongConnection, delta: Coaction,
          a: NCPoly) -> NCPoly:
    """a_(0) l(a_(1))^<1> phi(l(a_(1))^<2>), the left-B-linear retraction onto
    the coaction invariants."""
    A = delta.A
    if a.alg is not A:
        raise PresentationError("sigma argument lives in the wrong algebra")
    out = A.zero()
    for a_word, h_slice in delta.apply(a).grouped(0).items():
        la = ell.ell(h_slice)
        contracted = la.contract_leg(1, lambda w: phi.on_word(w))
        out = out + NCPoly(A, {a_word: QRat(1)}, normal=True) * contracted
    return out


def connection_expansion(ell: StrongConnection, c: Corepresentation):
    """Extract the finite expansion l(c_ij) = sum_mu a_mu (x) r_mu(c_ij).

    The a_mu are the echelonized first-leg slices over all matrix entries,
    listed by descending term order of their pivot words; r_mu is recomputed
    against that reduced basis.
    """
    A = ell.A
    H = ell.domain.H
    if c.H is not H:
        raise PresentationError("corepresentation lives over the wrong coalgebra")
    slices = []
    values = {}
    for i in range(c.n):
        for j in range(c.n):
            t = ell.ell(c[i, j])
            values[(i, j)] = t
            for _, first_slice in t.grouped(1).items():
                slices.append(dict(first_slice.terms))
    space = RowSpace(A.term_key)
    for s in slices:
        space.insert(s)
    order = sorted(range(space.dim), key=lambda k: A.term_key(space.pivots[k]),
                   reverse=True)
    rows = [space.rows[k] for k in order]
    solver = RowSpace(A.term_key)
    for r in rows:
        solver.insert(r)
    a_mu = [NCPoly(A, r, normal=True) for r in rows]
    r_table: dict = {}
    for (i, j), t in values.items():
        rij = [A.zero() for _ in a_mu]
        for second_word, first_slice in t.grouped(1).items():
            coords = solver.coordinates(dict(first_slice.terms))
            if coords is None:
                raise ArithmeticError("first legs escaped their own span")
            for mu, coeff in enumerate(coords):
                if not coeff.is_zero:
                    rij[mu] = rij[mu] + NCPoly(A, {second_word: coeff}, normal=True)
        r_table[(i, j)] = rij
    return a_mu, r_table


# -- matrices of polynomials -------------------------------------------------

def mat_mul(X, Y):
    n, m, p = len(X), len(Y), len(Y[0]) if Y else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for k in range(m):
                term = X[i][k] * Y[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_eq(X, Y) -> bool:
    if len(X) != len(Y):
        return False
    for rx, ry in zip(X, Y):
        if len(rx) != len(ry):
            return False
        for a, b in zip(rx, ry):
            if a != b:
                return False
    return True


def poly_identity(alg: Presentation, n: int):
    return [[alg.one() if i == j else alg.zero() for j in range(n)] for i in range(n)]


def scalar_block_matrix(alg: Presentation, M, n: int):
    """(M (x) I_n) as a polynomial matrix over alg, for scalar M."""
    m = len(M)
    out = [[alg.zero() for _ in range(m * n)] for _ in range(m * n)]
    for a in range(m):
        for b in range(m):
            if not qrat(M[a][b]).is_zero:
                for i in range(n):
                    out[a * n + i][b * n + i] = alg.one() * qrat(M[a][b])
    return out


class Projector:
    """Idempotent matrix over the coaction invariants, indexed by (mu, i)."""

    def __init__(self, ell: StrongConnection, c: Corepresentation, phi: Functional,
                 delta: Coaction, a_mu, r_table, entries, report: Report):
        self.ell = ell
        self.corep = c
        self.phi = phi
        self.delta = delta
        self.a_mu = a_mu
        self.r_table = r_table
        self.entries = entries
        self.labels = [(mu, i) for mu in range(len(a_mu)) for i in range(c.n)]
        self.report = report

    @property
    def size(self) -> int:
        return len(self.entries)

    def trace(self) -> NCPoly:
        out = self.delta.A.zero()
        for k in range(self.size):
            out = out + self.entries[k][k]
        return out

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]


def projector(ell: StrongConnection, c: Corepresentation, phi: Functional,
              delta: Coaction) -> Projector:
    """Build the idempotent with entries sigma(r_mu(c_ij) a_nu) and certify
    idempotence and entrywise invariance exactly."""
    a_mu, r_table = connection_expansion(ell, c)
    n = c.n
    labels = [(mu, i) for mu in range(len(a_mu)) for i in range(n)]
    entries = []
    for (mu, i) in labels:
        row = []
        for (nu, j) in labels:
            row.append(sigma(phi, ell, delta, r_table[(i, j)][mu] * a_mu[nu]))
        entries.append(row)
    rep = Report()
    square = mat_mul(entries, entries)
    idem = mat_eq(square, entries)
    rep.add("idempotent", idem, f"{len(labels)}x{len(labels)} matrix", tag="E^2 = E")
    inv_ok = True
    for row in entries:
        for e in row:
            if delta.apply(e) != TensorElem.from_poly(e).outer(
                    TensorElem.unit((delta.H,))):
                inv_ok = False
    rep.add("base-invariance", inv_ok,
            "all entries satisfy delta(b) = b (x) 1" if inv_ok else "entry not invariant",
            tag="delta(E_ij) = E_ij (x) 1")
    if not rep.ok:
        raise ProjectorError("projector failed certification "
                             "(invalid connection or corepresentation)", rep)
    return Projector(ell, c, phi, delta, a_mu, r_table, entries, rep)


def pullback_projector(f: Morphism, E: Projector, delta2: Coaction):
    """Apply a verified equivariant morphism entrywise; the image must again be
    an invariant idempotent."""
    if not f.verified:
        raise PresentationError("pullback requires a verified morphism")
    if f.source is not E.delta.A:
        raise PresentationError("morphism source does not match the projector")
    entries = [[f.apply(e) for e in row] for row in E.entries]
    rep = Report()
    rep.add("idempotent", mat_eq(mat_mul(entries, entries), entries),
            "f(E)^2 = f(E)", tag="f(E)^2 = f(E)")
    inv_ok = all(delta2.apply(e) == TensorElem.from_poly(e).outer(
        TensorElem.unit((delta2.H,))) for row in entries for e in row)
    rep.add("base-invariance", inv_ok,
            "entries fixed by the target coaction" if inv_ok else "entry not invariant",
            tag="delta'(f(E)_ij) = f(E)_ij (x) 1")
    return entries, rep


class PullbackCertificate:
    """The block decomposition of f(E) after aligning the extracted basis with
    the image of f: index split, blocks e' and d, and the conjugator."""

    def __init__(self, kept, complement, basis_change, aligned, e_prime, d_block,
                 report: Report):
        self.kept = kept
        self.complement = complement
        self.basis_change = basis_change
        self.aligned = aligned
        self.e_prime = e_prime
        self.d_block = d_block
        self.report = report


def align_blocks(f: Morphism, E: Projector, delta2: Coaction) -> PullbackCertificate:
    """Choose the image basis {f(a_mu) : mu in I}, change basis so complement
    images vanish, reorder I first, and certify the block identities."""
    target = f.target
    n = E.corep.n
    m = len(E.a_mu)
    images = [f.apply(a) for a in E.a_mu]
    kept, expansions = independent_subset([dict(p.terms) for p in images],
                                          target.term_key)
    complement = [j for j in range(m) if j not in kept]
    U = [[QRat(1) if i == j else QRat(0) for j in range(m)] for i in range(m)]
    for j, coeffs in expansions.items():
        for idx, coeff in enumerate(coeffs):
            U[kept[idx]][j] = -coeff
    U_inv = invert_scalar_matrix(U)
    A = E.delta.A
    Ub = scalar_block_matrix(A, U, n)
    Ub_inv = scalar_block_matrix(A, U_inv, n)
    aligned_source = mat_mul(Ub_inv, mat_mul(E.entries, Ub))
    fE = [[f.apply(e) for e in row] for row in aligned_source]
    # reorder: kept block first, complement after
    label_order = [mu * n + i for mu in kept for i in range(n)] + \
                  [mu * n + i for mu in complement for i in range(n)]
    F = [[fE[r][c] for c in label_order] for r in label_order]
    k = len(kept) * n
    N = m * n
    rep = Report()
    zero_ok = all(F[r][c].is_zero for r in range(N) for c in range(k, N))
    rep.add("block-form", zero_ok,
            "columns over the complement vanish" if zero_ok else "nonzero complement column",
            tag="f(E) = [[e',0],[d,0]]")
    e_prime = [row[:k] for row in F[:k]]
    d_block = [row[:k] for row in F[k:]]
    idem_ok = mat_eq(mat_mul(e_prime, e_prime), e_prime)
    rep.add("block-idempotent", idem_ok,
            "e' is idempotent" if idem_ok else "e' fails idempotence", tag="e'^2 = e'")
    absorb_ok = mat_eq(mat_mul(d_block, e_prime), d_block)
    rep.add("block-absorption", absorb_ok,
            "d e' = d" if absorb_ok else "d e' != d", tag="d e' = d")
    # conjugation by T = [[1,0],[d,1]]
    T = poly_identity(target, N)
    T_inv = poly_identity(target, N)
    for r in range(N - k):
        for c in range(k):
            T[k + r][c] = d_block[r][c]
            T_inv[k + r][c] = -d_block[r][c]
    diag = [[e_prime[r][c] if r < k and c < k else target.zero()
             for c in range(N)] for r in range(N)]
    conj_ok = mat_eq(mat_mul(T, mat_mul(diag, T_inv)), F)
    rep.add("conjugation", conj_ok,
            "f(E) = T diag(e',0) T^-1" if conj_ok else "conjugation identity fails",
            tag="f(E) = [[1,0],[d,1]] diag(e',0) [[1,0],[d,1]]^-1")
    return PullbackCertificate(kept, complement, U, F, e_prime, d_block, rep)


def verify_pullback_theorem(f: Morphism, ell: StrongConnection, c: Corepresentation,
                            phi2: Functional, delta: Coaction, delta2: Coaction,
                            sweep_degree: int = 3):
    """End-to-end mechanism: sigma-diagram, block form, d e' = d, conjugation,
    and agreement of the aligned block with the independently built pullback
    projector.  Returns (Report, artifacts dict)."""
    rep = Report()
    if not f.verified:
        f.verify()
    rep.add("morphism-verified", f.verified,
            "relations and star-compatibility hold" if f.verified else "morphism invalid",
            tag="f is an algebra *-map")
    eq = check_equivariance(f, delta, delta2)
    rep.extend(eq)
    if not rep.ok:
        return rep, {}
    phi = Functional.pullback(phi2, f)
    E = projector(ell, c, phi, delta)
    ell2 = pullback_connection(f, ell, delta2)
    E2 = projector(ell2, c, phi2, delta2)
    # clause (i): the sigma diagram on all basis words meeting coverage
    bad = []
    words = delta.A.basis_up_to_degree(sweep_degree)
    for w in words:
        a = NCPoly(delta.A, {w: QRat(1)}, normal=True)
        lhs = sigma(phi2, ell2, delta2, f.apply(a))
        rhs = f.apply(sigma(phi, ell, delta, a))
        if lhs != rhs:
            bad.append(w)
    rep.add("sigma-diagram", not bad,
            f"sigma' o f = f o sigma on {len(words)} basis words up to degree {sweep_degree}"
            if not bad else "fails at " + ", ".join(format_word(w) for w in bad[:5]),
            tag="sigma' o f = f o sigma")
    cert = align_blocks(f, E, delta2)
    rep.extend(cert.report)
    # clause (v): aligned block against the pullback projector, reconciling bases
    solver = RowSpace(f.target.term_key)
    for a2 in E2.a_mu:
        solver.insert(dict(a2.terms))
    W = []
    recon_ok = True
    for mu in cert.kept:
        coords = solver.coordinates(dict(f.apply(E.a_mu[mu]).terms))
        if coords is None:
            recon_ok = False
            break
        W.append(coords)
    detail = "aligned block does not match the pullback projector"
    if recon_ok and len(E2.a_mu) == len(cert.kept):
        # W as built has W[col][row]; transpose to W[row][col]
        Wt = [[W[b][a] for b in range(len(W))] for a in range(len(E2.a_mu))]
        W_inv = invert_scalar_matrix(Wt)
        if W_inv is None:
            recon_ok = False
        else:
            Wb = scalar_block_matrix(f.target, Wt, c.n)
            Wb_inv = scalar_block_matrix(f.target, W_inv, c.n)
            conj = mat_mul(Wb, mat_mul(cert.e_prime, Wb_inv))
            recon_ok = mat_eq(conj, E2.entries)
            if recon_ok:
                detail = ("e' = E' entrywise" if mat_eq(cert.e_prime, E2.entries)
                          else "e' = E' after the explicit change of basis W")
    else:
        recon_ok = False
        detail = "extracted bases span different spaces"
    rep.add("pullback-projector-match", recon_ok, detail,
            tag="e' = E' up to the recorded basis change")
    artifacts = {"E": E, "E_prime": E2, "certificate": cert}
    return rep, artifacts


def projector_similarity(E: Projector, Q) -> Report:
    """Projectors of conjugate corepresentations are conjugate by 1 (x) Q."""
    rep = Report()
    c = E.corep
    Qm = [[qrat(x) for x in row] for row in Q]
    Q_inv = invert_scalar_matrix(Qm)
    rep.add("intertwiner-invertible", Q_inv is not None,
            "Q invertible" if Q_inv is not None else "Q is singular",
            tag="Q in GL_n(Q(q))")
    if Q_inv is None:
        return rep
    H = c.H
    entries = [[H.zero() for _ in range(c.n)] for _ in range(c.n)]
    for i in range(c.n):
        for j in range(c.n):
            acc = H.zero()
            for k in range(c.n):
                for l in range(c.n):
                    acc = acc + c[k, l] * (Qm[i][k] * Q_inv[l][j])
            entries[i][j] = acc
    c2 = Corepresentation(f"{c.name}-conj", H, entries)
    E2 = projector(E.ell, c2, E.phi, E.delta)
    same_basis = len(E2.a_mu) == len(E.a_mu) and all(
        a == b for a, b in zip(E2.a_mu, E.a_mu))
    rep.add("same-extracted-basis", same_basis,
            "conjugate corepresentation reuses the extracted a_mu" if same_basis
            else "extracted bases differ", tag="span of first legs is corep-invariant")
    if not same_basis:
        return rep
    A = E.delta.A
    Qb = scalar_block_matrix(A, _id_tensor(Qm, len(E.a_mu)), 1)
    Qb_inv = scalar_block_matrix(A, _id_tensor(Q_inv, len(E.a_mu)), 1)
    ok = mat_eq(E2.entries, mat_mul(Qb, mat_mul(E.entries, Qb_inv)))
    rep.add("projector-similarity", ok,
            "E_{c'} = (1 (x) Q) E (1 (x) Q)^-1" if ok else "conjugation fails",
            tag="E_{QcQ^-1} = (1 (x) Q) E (1 (x) Q)^-1")
    tr_ok = E2.trace() == E.trace()
    rep.add("trace-match", tr_ok,
            "traces agree as invariant elements" if tr_ok else "traces differ",
            tag="tr E_{c'} = tr E")
    return rep


def _id_tensor(M, m: int):
    """I_m (x) M for a scalar matrix M."""
    n = len(M)
    out = [[QRat(0) for _ in range(m * n)] for _ in range(m * n)]
    for blk in range(m):
        for i in range(n):
            for j in range(n):
                out[blk * n + i][blk * n + j] = M[i][j]
    return out


def cotensor_compare(E: Projector, c: Corepresentation, delta: Coaction,
                     d: int, generator_degree: int | None = None) -> Report:
    """Certify that rows of B^N E land in, inject into, and span the truncated
    cotensor product via Phi(b)_j = sum_{mu,i} b_(mu,i) r_mu(c_ij)."""
    rep = Report()
    if c is not E.corep:
        raise PresentationError("cotensor comparison must use the projector's corepresentation")
    A, H = delta.A, delta.H
    n = c.n
    # colinearity of the r-functions, the identity behind membership
    colin_ok = True
    for (i, j), rvec in E.r_table.items():
        for mu, r in enumerate(rvec):
            lhs = delta.apply(r)
            rhs = TensorElem.zero((A, H))
            for k in range(n):
                rhs = rhs + TensorElem.from_poly(E.r_table[(i, k)][mu]).outer(
                    TensorElem.from_poly(c[k, j]))
            if lhs != rhs:
                colin_ok = False
    rep.add("r-colinearity", colin_ok,
            "delta(r_mu(c_ij)) = sum_k r_mu(c_ik) (x) c_kj" if colin_ok
            else "colinearity fails", tag="delta o r_mu = (r_mu (x) id) o Delta")
    if generator_degree is None:
        generator_degree = d + 2
    b_basis = invariant_subspace(delta, generator_degree)
    candidates = []
    for b in b_basis:
        for row in range(E.size):
            vec = [b * E.entries[row][col] for col in range(E.size)]
            img = [A.zero() for _ in range(n)]
            for col, (nu, jj) in enumerate(E.labels):
                for j in range(n):
                    img[j] = img[j] + vec[col] * E.r_table[(jj, j)][nu]
            candidates.append((vec, img))
    member_ok = True
    for _, img in candidates:
        for j in range(n):
            lhs = delta.apply(img[j])
            rhs = TensorElem.zero((A, H))
            for i in range(n):
                rhs = rhs + TensorElem.from_poly(img[i]).outer(
                    TensorElem.from_poly(c[i, j]))
            if lhs != rhs:
                member_ok = False
    rep.add("membership", member_ok,
            "Phi lands in the cotensor product" if member_ok else "image escapes",
            tag="delta(x_j) = sum_i x_i (x) c_ij")
    # injectivity on the generated row space
    img_cols = []
    vec_cols = []
    for vec, img in candidates:
        col_i = {}
        for j, p in enumerate(img):
            for w, coeff in p.terms.items():
                col_i[(j, w)] = coeff
        img_cols.append(col_i)
        col_v = {}
        for k, p in enumerate(vec):
            for w, coeff in p.terms.items():
                col_v[(k, w)] = coeff
        vec_cols.append(col_v)
    key_order = lambda key: (key[0], A.term_key(key[1]))
    inj_ok = True
    for sol in nullspace(img_cols, key_order):
        combo = {}
        for coeff, col in zip(sol, vec_cols):
            if not coeff.is_zero:
                for kk, vv in col.items():
                    acc = combo.get(kk, QRat(0)) + coeff * vv
                    if acc.is_zero:
                        combo.pop(kk, None)
                    else:
                        combo[kk] = acc
        if combo:
            inj_ok = False
    rep.add("injectivity", inj_ok,
            "Phi is injective on the generated row space" if inj_ok
            else "kernel vector found", tag="Phi injective on B^N E")
    # surjectivity onto the truncated cotensor
    cot = cotensor_basis(delta, c, d)
    image_space = RowSpace(key_order)
    for _, img in candidates:
        if all(p.degree() <= d for p in img):
            row = {}
            for j, p in enumerate(img):
                for w, coeff in p.terms.items():
                    row[(j, w)] = coeff
            image_space.insert(row)
    surj_ok = True
    for vec in cot:
        row = {}
        for j, p in enumerate(vec):
            for w, coeff in p.terms.items():
                row[(j, w)] = coeff
        if not image_space.contains(row):
            surj_ok = False
    rep.add("surjectivity", surj_ok,
            f"Phi hits the full truncated cotensor at degree {d} "
            f"(dimension {len(cot)})" if surj_ok else "cotensor vector missed",
            tag="Phi(B^N E) spans the degree-d cotensor")
    return rep


def trace_rank(E: Projector, q0=None):
    """Trace of the idempotent; the scalar when the base is the scalar span,
    the counit-character value at a rational specialization when q0 is given."""
    tr = E.trace()
    if q0 is not None:
        if E.delta.A.hopf is None:
            raise PresentationError("counit character needs Hopf data on the total algebra")
        val = structure.counit(tr)
        return val.evaluate(Fraction(q0))
    support = tr.support()
    if not support:
        return QRat(0)
    if support == [EMPTY]:
        return tr.constant_term()
    return tr
