"""Hopf structure on a presentation: coproduct, counit, antipode and its
inverse, stored on generators and extended algorithmically; morphisms between
presentations; axiom sweeps at degree truncation.
"""

from __future__ import annotations

from .ncalg import NCPoly, Presentation, PresentationError, Word, format_word
from .report import Report
from .scalars import QRat, qrat
from .tensors import TensorElem


class HopfData:
    """Generator tables for Delta, eps, S and S^-1, with per-word caches."""

    __slots__ = ("alg", "delta", "counit", "antipode", "antipode_inv",
                 "_delta_cache", "_s_cache", "_sinv_cache")

    def __init__(self, alg: Presentation, delta: dict, counit: dict,
                 antipode: dict, antipode_inv: dict):
        self.alg = alg
        names = {g.name for g in alg.generators}
        for table, label in ((delta, "coproduct"), (counit, "counit"),
                             (antipode, "antipode"), (antipode_inv, "antipode_inv")):
            missing = names - set(table)
            if missing:
                raise PresentationError(f"{label} table missing {sorted(missing)}")
        self.delta = {g: t for g, t in delta.items()}
        self.counit = {g: qrat(c) for g, c in counit.items()}
        self.antipode = dict(antipode)
        self.antipode_inv = dict(antipode_inv)
        self._delta_cache: dict[Word, TensorElem] = {}
        self._s_cache: dict[Word, NCPoly] = {}
        self._sinv_cache: dict[Word, NCPoly] = {}


def attach_hopf(alg: Presentation, delta, counit, antipode, antipode_inv) -> HopfData:
    alg.hopf = HopfData(alg, delta, counit, antipode, antipode_inv)
    return alg.hopf


def _require_hopf(alg: Presentation) -> HopfData:
    if alg.hopf is None:
        raise PresentationError(f"presentation {alg.name} has no Hopf data")
    return alg.hopf


def coproduct_word(alg: Presentation, w: Word) -> TensorElem:
    h = _require_hopf(alg)
    cached = h._delta_cache.get(w)
    if cached is not None:
        return cached
    out = TensorElem.unit((alg, alg))
    for g in w:
        out = out.tensor_mul(h.delta[g])
    h._delta_cache[w] = out
    return out


def coproduct(p: NCPoly, parts: int = 2) -> TensorElem:
    """Iterated coproduct: Delta for parts=2, (Delta (x) id) o Delta for parts=3."""
    alg = p.alg
    _require_hopf(alg)
    if parts not in (2, 3):
        raise ValueError("coproduct splits into 2 or 3 parts")
    out = TensorElem.from_poly(p).expand_leg(0, lambda w: coproduct_word(alg, w),
                                             legs_hint=(alg, alg))
    if parts == 3:
        out = out.expand_leg(0, lambda w: coproduct_word(alg, w), legs_hint=(alg, alg))
    return out


def counit_word(alg: Presentation, w: Word) -> QRat:
    h = _require_hopf(alg)
    out = QRat(1)
    for g in w:
        out = out * h.counit[g]
        if out.is_zero:
            break
    return out


def counit(p: NCPoly) -> QRat:
    out = QRat(0)
    for w, c in p.terms.items():
        out = out + c * counit_word(p.alg, w)
    return out


def _anti_extend(alg: Presentation, table: dict, cache: dict, w: Word) -> NCPoly:
    cached = cache.get(w)
    if cached is not None:
        return cached
    out = alg.one()
    for g in reversed(w):
        out = out * table[g]
    cache[w] = out
    return out


def antipode(p: NCPoly) -> NCPoly:
    """S, extended as an anti-homomorphism."""
    h = _require_hopf(p.alg)
    out = p.alg.zero()
    for w, c in p.terms.items():
        out = out + _anti_extend(p.alg, h.antipode, h._s_cache, w) * c
    return out


def antipode_inv(p: NCPoly) -> NCPoly:
    h = _require_hopf(p.alg)
    out = p.alg.zero()
    for w, c in p.terms.items():
        out = out + _anti_extend(p.alg, h.antipode_inv, h._sinv_cache, w) * c
    return out


def verify_hopf_axioms(alg: Presentation, d: int) -> Report:
    """Check the Hopf axioms on every basis word of length <= d, exactly."""
    h = _require_hopf(alg)
    rep = Report()
    # structure maps must be well defined on the quotient
    for r in alg.rules:
        rel_words = [(r.lhs, QRat(1))] + [(w, -c) for w, c in r.rhs.items()]
        dt = TensorElem.zero((alg, alg))
        ct = QRat(0)
        st = alg.zero()
        for w, c in rel_words:
            dt = dt + coproduct_word(alg, w) * c
            ct = ct + counit_word(alg, w) * c
            st = st + _anti_extend(alg, h.antipode, h._s_cache, w) * c
        ok = dt.is_zero and ct.is_zero and st.is_zero
        rep.add(f"relation-compat {' '.join(r.lhs)}", ok,
                "structure maps kill the relation" if ok else "relation not respected",
                tag="Delta, eps, S factor through the quotient")
    words = alg.basis_up_to_degree(d)
    bad_coassoc = []
    bad_counit = []
    bad_antipode = []
    bad_sinv = []
    bad_star = []
    for w in words:
        p = NCPoly(alg, {w: QRat(1)}, normal=True)
        d2 = coproduct_word(alg, w)
        left3 = d2.expand_leg(0, lambda u: coproduct_word(alg, u), legs_hint=(alg, alg))
        right3 = d2.expand_leg(1, lambda u: coproduct_word(alg, u), legs_hint=(alg, alg))
        if left3 != right3:
            bad_coassoc.append(w)
        eps_l = d2.contract_leg(0, lambda u: counit_word(alg, u))
        eps_r = d2.contract_leg(1, lambda u: counit_word(alg, u))
        if eps_l != p or eps_r != p:
            bad_counit.append(w)
        target = alg.one() * counit_word(alg, w)
        s_l = d2.map_leg(0, lambda u: _anti_extend(alg, h.antipode, h._s_cache, u)).multiply_legs()
        s_r = d2.map_leg(1, lambda u: _anti_extend(alg, h.antipode, h._s_cache, u)).multiply_legs()
        if s_l != target or s_r != target:
            bad_antipode.append(w)
        if antipode_inv(antipode(p)) != p or antipode(antipode_inv(p)) != p:
            bad_sinv.append(w)
        if coproduct(p.star()) != _star_tensor(d2):
            bad_star.append(w)

    def _describe(bad):
        if not bad:
            return f"all {len(words)} basis words up to degree {d}"
        return "failing words: " + ", ".join(format_word(w) for w in bad[:5])

    rep.add("coassociativity", not bad_coassoc, _describe(bad_coassoc),
            tag="(Delta (x) id) o Delta = (id (x) Delta) o Delta")
    rep.add("counit-laws", not bad_counit, _describe(bad_counit),
            tag="(eps (x) id) o Delta = id = (id (x) eps) o Delta")
    rep.add("antipode-law", not bad_antipode, _describe(bad_antipode),
            tag="m o (S (x) id) o Delta = eta o eps = m o (id (x) S) o Delta")
    rep.add("antipode-inverse", not bad_sinv, _describe(bad_sinv),
            tag="S^-1 o S = id = S o S^-1")
    rep.add("star-coalgebra", not bad_star, _describe(bad_star),
            tag="Delta o * = (* (x) *) o Delta")
    return rep


def _star_tensor(t: TensorElem) -> TensorElem:
    acc: dict = {}
    for k, c in t.terms.items():
        kk = tuple(leg.star_word(w) for leg, w in zip(t.legs, k))
        acc[kk] = acc.get(kk, QRat(0)) + c
    return TensorElem(t.legs, acc)


class Morphism:
    """Algebra (or anti-algebra) map given by generator images."""

    def __init__(self, source: Presentation, target: Presentation,
                 images: dict, kind: str = "hom", name: str = ""):
        if kind not in ("hom", "antihom"):
            raise ValueError("kind must be 'hom' or 'antihom'")
        self.source = source
        self.target = target
        self.kind = kind
        self.name = name or f"{source.name}->{target.name}"
        self.images: dict[str, NCPoly] = {}
        for g in source.generators:
            if g.name not in images:
                raise PresentationError(f"morphism misses generator {g.name!r}")
            img = images[g.name]
            if img.alg is not target:
                raise PresentationError(f"image of {g.name!r} lives in the wrong algebra")
            self.images[g.name] = img
        self.verified = False
        self._cache: dict[Word, NCPoly] = {}

    def apply_word(self, w: Word) -> NCPoly:
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        out = self.target.one()
        letters = reversed(w) if self.kind == "antihom" else w
        for g in letters:
            out = out * self.images[g]
        self._cache[w] = out
        return out

    def apply(self, p: NCPoly) -> NCPoly:
        if p.alg is not self.source:
            raise PresentationError("element does not belong to the morphism source")
        out = self.target.zero()
        for w, c in p.terms.items():
            out = out + self.apply_word(w) * c
        return out

    def __call__(self, p: NCPoly) -> NCPoly:
        return self.apply(p)

    def then(self, other: "Morphism") -> "Morphism":
        """Composition other o self."""
        if other.source is not self.target:
            raise PresentationError("morphisms do not compose")
        if self.kind == other.kind:
            kind = "hom"
        else:
            kind = "antihom"
        images = {g.name: other.apply(self.images[g.name]) for g in self.source.generators}
        m = Morphism(self.source, other.target, images, kind,
                     name=f"{other.name} o {self.name}")
        return m

    @staticmethod
    def identity(alg: Presentation) -> "Morphism":
        return Morphism(alg, alg, {g.name: alg.gen(g.name) for g in alg.generators},
                        name=f"id_{alg.name}")

    def verify(self) -> Report:
        """Relations map to zero; images are star-compatible."""
        rep = Report()
        for r in self.source.rules:
            img = self.apply_word(r.lhs)
            for w, c in r.rhs.items():
                img = img - self.apply_word(w) * c
            rep.add(f"relation {' '.join(r.lhs)}", img.is_zero,
                    "maps to 0" if img.is_zero else f"maps to {img}",
                    tag="f(relation) = 0")
        star_ok = True
        bad = []
        for g in self.source.generators:
            if self.apply_word((g.star,)) != self.images[g.name].star():
                star_ok = False
                bad.append(g.name)
        rep.add("star-compatibility", star_ok,
                "f(g*) = f(g)* on all generators" if star_ok else f"fails at {bad}",
                tag="f o * = * o f")
        self.verified = rep.ok
        return rep


def verify_morphism(m: Morphism) -> Report:
    return m.verify()


def extend_algebra_map(m: Morphism, p: NCPoly) -> NCPoly:
    """Evaluate a verified morphism on an arbitrary element."""
    if not m.verified:
        raise PresentationError("morphism has not passed verification")
    return m.apply(p)
