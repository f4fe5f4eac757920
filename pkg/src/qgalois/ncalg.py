"""Presented *-algebras: free words, rewriting to normal form, graded bases,
local-confluence diagnostics.

Words are tuples of generator names.  A presentation carries an ordered
generator list (the term order used for sorting and pivoting), a star pairing,
and a terminating rewrite system; polynomials normalize at construction so
that equality is structural.
"""

from __future__ import annotations

from .scalars import QRat, qrat, needs_parens

Word = tuple[str, ...]

EMPTY: Word = ()


class PresentationError(ValueError):
    pass


class TerminationError(PresentationError):
    """A rewrite rule does not decrease the reduction order."""


class Generator:
    __slots__ = ("name", "star", "weight")

    def __init__(self, name: str, star: str, weight: int = 1):
        self.name = name
        self.star = star
        self.weight = weight

    def __repr__(self):
        return f"Generator({self.name!r}, star={self.star!r})"


class RewriteRule:
    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Word, rhs: dict):
        self.lhs = tuple(lhs)
        self.rhs = {tuple(w): qrat(c) for w, c in rhs.items() if not qrat(c).is_zero}

    def __repr__(self):
        return f"RewriteRule({self.lhs} -> {self.rhs})"


class Presentation:
    """Generators with involution pairing, a term order and a rewrite system.

    Optional Hopf structure is attached by the structure module as `.hopf`.
    Treated as immutable once built; normal forms are cached per word.
    """

    def __init__(self, name: str, generators, rules=(), reduction_precedence=None):
        self.name = name
        self.generators: list[Generator] = list(generators)
        self._by_name = {}
        for g in self.generators:
            if g.name in self._by_name:
                raise PresentationError(f"duplicate generator {g.name!r}")
            self._by_name[g.name] = g
        for g in self.generators:
            if g.star not in self._by_name:
                raise PresentationError(f"star partner {g.star!r} of {g.name!r} missing")
            if self._by_name[g.star].star != g.name:
                raise PresentationError(f"star pairing is not an involution at {g.name!r}")
        self._prec = {g.name: i for i, g in enumerate(self.generators)}
        if reduction_precedence is None:
            self._red_prec = dict(self._prec)
        else:
            if set(reduction_precedence) != set(self._by_name):
                raise PresentationError("reduction order must list every generator")
            self._red_prec = {n: i for i, n in enumerate(reduction_precedence)}
        self.rules: list[RewriteRule] = [r if isinstance(r, RewriteRule) else RewriteRule(*r)
                                         for r in rules]
        self._max_rule_len = max((len(r.lhs) for r in self.rules), default=0)
        self._nf_cache: dict[Word, dict] = {}
        self.hopf = None
        self._validate_rules()
        self._validate_star_closure()

    # -- orders -------------------------------------------------------------

    def term_key(self, w: Word):
        """Degree-lexicographic order with the presentation's precedence."""
        return (len(w), tuple(self._prec[g] for g in w))

    def red_key(self, w: Word):
        """Reduction order certifying termination: weight, length, then lex."""
        return (sum(self._by_name[g].weight for g in w), len(w),
                tuple(self._red_prec[g] for g in w))

    def _validate_rules(self):
        for r in self.rules:
            if not r.lhs:
                raise PresentationError("empty rule left-hand side")
            for g in r.lhs:
                if g not in self._by_name:
                    raise PresentationError(f"unknown generator {g!r} in rule")
            lk = self.red_key(r.lhs)
            for w in r.rhs:
                for g in w:
                    if g not in self._by_name:
                        raise PresentationError(f"unknown generator {g!r} in rule")
                if not self.red_key(w) < lk:
                    raise TerminationError(
                        f"rule {' '.join(r.lhs)} -> ... does not decrease at {' '.join(w) or '1'}")

    def _validate_star_closure(self):
        for r in self.rules:
            # star the formal relation lhs - rhs, then reduce; nonzero rest
            # means the starred relation is not a consequence of the system
            starred: dict = {self.star_word(r.lhs): QRat(1)}
            for w, c in r.rhs.items():
                sw = self.star_word(w)
                starred[sw] = starred.get(sw, QRat(0)) - c
            if self.normalize_terms(starred):
                raise PresentationError(
                    f"relations are not *-closed at rule {' '.join(r.lhs)}")

    # -- element constructors -------------------------------------------------

    def poly(self, terms) -> "NCPoly":
        return NCPoly(self, terms)

    def zero(self) -> "NCPoly":
        return NCPoly(self, {}, normal=True)

    def one(self) -> "NCPoly":
        return NCPoly(self, {EMPTY: QRat(1)}, normal=True)

    def gen(self, name: str) -> "NCPoly":
        if name not in self._by_name:
            raise PresentationError(f"unknown generator {name!r} in {self.name}")
        return NCPoly(self, {(name,): QRat(1)})

    def word(self, *names: str) -> "NCPoly":
        for n in names:
            if n not in self._by_name:
                raise PresentationError(f"unknown generator {n!r} in {self.name}")
        return NCPoly(self, {tuple(names): QRat(1)})

    def star_word(self, w: Word) -> Word:
        return tuple(self._by_name[g].star for g in reversed(w))

    # -- rewriting ------------------------------------------------------------

    def _find_redex(self, w: Word):
        rules = self.rules
        for i in range(len(w)):
            for r in rules:
                L = r.lhs
                if w[i:i + len(L)] == L:
                    return i, r
        return None

    def normal_form_word(self, w: Word) -> dict:
        """Fixed point of rewriting for a single word, as a word->QRat map."""
        cached = self._nf_cache.get(w)
        if cached is not None:
            return cached
        hit = self._find_redex(w)
        if hit is None:
            res = {w: QRat(1)}
        else:
            i, r = hit
            pre, post = w[:i], w[i + len(r.lhs):]
            acc: dict = {}
            for rw, c in r.rhs.items():
                for w2, c2 in self.normal_form_word(pre + rw + post).items():
                    v = acc.get(w2)
                    v = c * c2 if v is None else v + c * c2
                    if v.is_zero:
                        acc.pop(w2, None)
                    else:
                        acc[w2] = v
            res = acc
        self._nf_cache[w] = res
        return res

    def normalize_terms(self, terms) -> dict:
        acc: dict = {}
        for w, c in terms.items():
            c = qrat(c)
            if c.is_zero:
                continue
            for w2, c2 in self.normal_form_word(tuple(w)).items():
                v = acc.get(w2)
                v = c * c2 if v is None else v + c * c2
                if v.is_zero:
                    acc.pop(w2, None)
                else:
                    acc[w2] = v
        return acc

    def is_normal_word(self, w: Word) -> bool:
        return self._find_redex(w) is None

    # -- graded bases -----------------------------------------------------------

    def basis_up_to_degree(self, d: int) -> list[Word]:
        """All normal words of length <= d, sorted by term order."""
        if d < 0:
            raise ValueError("degree bound must be nonnegative")
        out = [EMPTY]
        layer = [EMPTY]
        maxlen = self._max_rule_len
        names = [g.name for g in self.generators]
        for _ in range(d):
            nxt = []
            for w in layer:
                for g in names:
                    cand = w + (g,)
                    # w is normal, so any new redex must end at the new letter
                    lo = max(0, len(cand) - maxlen)
                    if all(self._find_redex_at_suffix(cand, i) is None
                           for i in range(lo, len(cand))):
                        nxt.append(cand)
            layer = nxt
            out.extend(layer)
        out.sort(key=self.term_key)
        return out

    def _find_redex_at_suffix(self, w: Word, i: int):
        for r in self.rules:
            L = r.lhs
            if i + len(L) == len(w) and w[i:] == L:
                return r
        return None

    # -- confluence ---------------------------------------------------------------

    def check_local_confluence(self, d: int):
        """Resolve every overlap ambiguity of rule left sides up to length d.

        Returns a Report; failures are data, not errors.
        """
        from .report import Check, Report

        if d < self._max_rule_len:
            raise ValueError("confluence degree must be at least the longest rule")
        checks = []
        seen = set()
        for r1 in self.rules:
            for r2 in self.rules:
                l1, l2 = r1.lhs, r2.lhs
                # proper overlaps: nonempty suffix of l1 equals prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[len(l1) - k:] == l2[:k]:
                        w = l1 + l2[k:]
                        if len(w) > d or (w, len(l1) - k, 0) in seen:
                            continue
                        seen.add((w, len(l1) - k, 0))
                        checks.append(self._resolve_overlap(w, r1, 0, r2, len(l1) - k))
                # containments: l2 a proper factor of l1
                if r1 is not r2 and len(l2) < len(l1):
                    for i in range(len(l1) - len(l2) + 1):
                        if l1[i:i + len(l2)] == l2 and len(l1) <= d:
                            checks.append(self._resolve_overlap(l1, r1, 0, r2, i))
        if not checks:
            checks.append(Check("no-overlaps", True, "rule set has no ambiguities",
                                tag="trivially locally confluent"))
        return Report(checks)

    def _resolve_overlap(self, w: Word, r1: RewriteRule, i1: int, r2: RewriteRule, i2: int):
        from .report import Check

        p1 = self._apply_rule_at(w, r1, i1)
        p2 = self._apply_rule_at(w, r2, i2)
        n1 = self.normalize_terms(p1)
        n2 = self.normalize_terms(p2)
        ok = n1 == n2
        name = f"overlap {' '.join(w)}"
        detail = "both reductions agree" if ok else "reductions differ"
        return Check(name, ok, detail, tag="diamond: both one-step reductions join")

    def _apply_rule_at(self, w: Word, r: RewriteRule, i: int) -> dict:
        pre, post = w[:i], w[i + len(r.lhs):]
        return {pre + rw + post: c for rw, c in r.rhs.items()}


class NCPoly:
    """Noncommutative polynomial over a presentation, stored in normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Presentation, terms, normal: bool = False):
        self.alg = alg
        if normal:
            self.terms = dict(terms)
        else:
            self.terms = alg.normalize_terms({tuple(w): c for w, c in dict(terms).items()})

    # -- algebra -----------------------------------------------------------

    def _check_same(self, other: "NCPoly"):
        if self.alg is not other.alg:
            raise PresentationError(
                f"mixing elements of {self.alg.name} and {other.alg.name}")

    def __add__(self, other):
        if isinstance(other, (int, QRat)):
            other = self.alg.poly({EMPTY: qrat(other)})
        self._check_same(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            v = acc.get(w)
            v = c if v is None else v + c
            if v.is_zero:
                acc.pop(w, None)
            else:
                acc[w] = v
        return NCPoly(self.alg, acc, normal=True)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, NCPoly) else -qrat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return NCPoly(self.alg, {w: -c for w, c in self.terms.items()}, normal=True)

    def __mul__(self, other):
        if isinstance(other, (int, QRat)):
            c = qrat(other)
            if c.is_zero:
                return self.alg.zero()
            return NCPoly(self.alg, {w: v * c for w, v in self.terms.items()}, normal=True)
        self._check_same(other)
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                v = acc.get(w)
                acc[w] = c if v is None else v + c
        return NCPoly(self.alg, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, QRat)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, QRat)):
            other = self.alg.poly({EMPTY: qrat(other)})
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.alg), frozenset(self.terms.items())))

    # -- inspection -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Length of the longest word; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def coefficient(self, w: Word) -> QRat:
        return self.terms.get(tuple(w), QRat(0))

    def constant_term(self) -> QRat:
        return self.terms.get(EMPTY, QRat(0))

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=self.alg.term_key)

    def support(self) -> list[Word]:
        return sorted(self.terms, key=self.alg.term_key)

    # -- involution --------------------------------------------------------------

    def star(self) -> "NCPoly":
        """The algebra involution: reverses words and stars each generator."""
        return NCPoly(self.alg, {self.alg.star_word(w): c for w, c in self.terms.items()})

    # -- formatting ---------------------------------------------------------------

    def __str__(self):
        return format_terms(((w, c) for w, c in self.terms.items()), self.alg)

    def __repr__(self):
        return f"<{self.alg.name}: {self}>"


def format_word(w: Word) -> str:
    return " ".join(w) if w else "1"


def format_terms(items, alg: Presentation, word_formatter=format_word, sort_key=None) -> str:
    """Render (word, coefficient) pairs in the shared expression grammar."""
    items = sorted(items, key=(lambda it: alg.term_key(it[0])) if sort_key is None
                   else (lambda it: sort_key(it[0])))
    if not items:
        return "0"
    parts = []
    for w, c in items:
        neg = c.is_negative
        mag = abs(c)
        ws = word_formatter(w)
        if ws == "1":
            body = str(mag)
            if needs_parens(body):
                body = f"({body})"
        elif mag == QRat(1):
            body = ws
        else:
            cs = str(mag)
            if needs_parens(cs):
                cs = f"({cs})"
            body = f"{cs} {ws}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
