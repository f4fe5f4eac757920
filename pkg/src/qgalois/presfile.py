"""Line-oriented presentation files: algebras with optional Hopf blocks,
coactions, corepresentations, connections and morphisms.

Expressions are sums of terms COEFF WORD, words are space-separated generator
names, `1` is the unit, tensor legs are separated by `(x)`.  Scalars follow
the shared grammar (integers, q, + - * /, ^); join elements may also use the
central symbol t.
"""

from __future__ import annotations

from .comodule import Coaction, Corepresentation
from .connection import CoalgebraSpan, StrongConnection
from .ncalg import Generator, NCPoly, Presentation, PresentationError
from .scalars import QRat, qrat
from .structure import Morphism, attach_hopf
from .tensors import TensorElem

_RESERVED_NAMES = {"q", "t", "x"}


class PresentationFileError(Exception):
    def __init__(self, message: str, filename: str = "<string>", line: int = 0):
        super().__init__(f"{filename}:{line}: {message}")
        self.filename = filename
        self.line = line


# ---------------------------------------------------------------------------
# expression tokens

def _tokenize(text: str, line: int, filename: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("(x)", i):
            toks.append(("tensor", "(x)"))
            i += 3
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j])))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            # a trailing star belongs to the name only at a word boundary,
            # so q*t stays a product while g* is a generator
            if j < n and text[j] == "*" and \
                    (j + 1 == n or not (text[j + 1].isalnum() or text[j + 1] in "_(")):
                j += 1
            toks.append(("ident", text[i:j]))
            i = j
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch))
            i += 1
            continue
        raise PresentationFileError(f"unexpected character {ch!r}", filename, line)
    return toks


# ---------------------------------------------------------------------------
# scalars extended by the central symbol t: maps t-degree -> QRat

def _t_const(c) -> dict:
    c = qrat(c)
    return {} if c.is_zero else {0: c}


def _t_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, QRat(0)) + v
        if w.is_zero:
            out.pop(k, None)
        else:
            out[k] = w
    return out


def _t_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = k1 + k2
            w = out.get(k, QRat(0)) + v1 * v2
            if w.is_zero:
                out.pop(k, None)
            else:
                out[k] = w
    return out


def _t_neg(a: dict) -> dict:
    return {k: -v for k, v in a.items()}


class _ExprParser:
    """Scalar sub-expressions over tokens, with q always and t when allowed."""

    def __init__(self, toks, allow_t: bool, filename: str, line: int):
        self.toks = toks
        self.pos = 0
        self.allow_t = allow_t
        self.filename = filename
        self.line = line

    def error(self, msg: str):
        raise PresentationFileError(msg, self.filename, self.line)

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def scalar_expr(self) -> dict:
        v = self.scalar_term()
        while True:
            kind, _ = self.peek()
            if kind == "+":
                self.next()
                v = _t_add(v, self.scalar_term())
            elif kind == "-":
                self.next()
                v = _t_add(v, _t_neg(self.scalar_term()))
            else:
                return v

    def scalar_term(self) -> dict:
        v = self.scalar_unary()
        while True:
            kind, _ = self.peek()
            if kind == "*":
                self.next()
                v = _t_mul(v, self.scalar_unary())
            elif kind == "/":
                self.next()
                d = self.scalar_unary()
                if set(d) - {0}:
                    self.error("cannot divide by an expression containing t")
                if not d:
                    self.error("division by zero")
                inv = QRat(1) / d[0]
                v = {k: c * inv for k, c in v.items()}
            else:
                return v

    def scalar_unary(self) -> dict:
        kind, _ = self.peek()
        if kind == "-":
            self.next()
            return _t_neg(self.scalar_unary())
        if kind == "+":
            self.next()
            return self.scalar_unary()
        return self.scalar_power()

    def scalar_power(self) -> dict:
        v = self.scalar_atom()
        kind, _ = self.peek()
        if kind == "^":
            self.next()
            sign = 1
            kind, val = self.next()
            if kind == "-":
                sign = -1
                kind, val = self.next()
            if kind != "int":
                self.error("integer exponent expected after '^'")
            e = sign * val
            if e < 0:
                if set(v) - {0} or not v:
                    self.error("negative powers only apply to nonzero t-free scalars")
                return _t_const(v[0] ** e)
            out = _t_const(1)
            for _ in range(e):
                out = _t_mul(out, v)
            return out
        return v

    def scalar_atom(self) -> dict:
        kind, val = self.next()
        if kind == "int":
            return _t_const(val)
        if kind == "ident" and val == "q":
            return _t_const(qrat(QRat((0, 1))))
        if kind == "ident" and val == "t":
            if not self.allow_t:
                self.error("the symbol t is only valid in join elements")
            return {1: QRat(1)}
        if kind == "(":
            v = self.scalar_expr()
            kind, _ = self.next()
            if kind != ")":
                self.error("expected ')'")
            return v
        self.error("expected integer, 'q', 't' or '('")


def _split_terms(toks, filename: str, line: int):
    """Split a token list into signed top-level terms."""
    terms = []
    current = []
    sign = 1
    depth = 0
    prev = None
    for tok in toks:
        kind = tok[0]
        if kind == "(":
            depth += 1
        elif kind == ")":
            depth -= 1
        if depth == 0 and kind in "+-" and prev is not None and \
                prev not in ("+", "-", "*", "/", "^", "("):
            terms.append((sign, current))
            current = []
            sign = 1 if kind == "+" else -1
            prev = kind
            continue
        if not current and kind in "+-" and prev is None:
            sign = 1 if kind == "+" else -1
            prev = kind
            continue
        current.append(tok)
        prev = kind
    terms.append((sign, current))
    return [t for t in terms if t[1]]


def parse_expression(text: str, legs, allow_t: bool = False,
                     filename: str = "<string>", line: int = 0):
    """Parse into {tuple-of-words: t-scalar}; legs fixes the tensor degree."""
    toks = _tokenize(text, line, filename)
    terms = _split_terms(toks, filename, line)
    if not terms:
        raise PresentationFileError("empty expression", filename, line)
    acc: dict = {}
    for sign, term in terms:
        factors = []
        current = []
        depth = 0
        for tok in term:
            if tok[0] == "(":
                depth += 1
            elif tok[0] == ")":
                depth -= 1
            if tok[0] == "tensor" and depth == 0:
                factors.append(current)
                current = []
            else:
                current.append(tok)
        factors.append(current)
        if len(factors) != len(legs):
            raise PresentationFileError(
                f"term has {len(factors)} tensor legs, expected {len(legs)}",
                filename, line)
        coeff = _t_const(sign)
        words = []
        for leg, factor in zip(legs, factors):
            split = len(factor)
            for idx, tok in enumerate(factor):
                if tok[0] == "ident" and tok[1] not in ("q", "t"):
                    split = idx
                    break
            else:
                # a trailing standalone `1` after a coefficient is the unit word
                if len(factor) >= 2 and factor[-1] == ("int", 1) and \
                        factor[-2][0] not in ("+", "-", "*", "/", "^", "("):
                    split = len(factor) - 1
            scalar_toks = factor[:split]
            word_toks = factor[split:]
            if scalar_toks:
                p = _ExprParser(scalar_toks, allow_t, filename, line)
                coeff = _t_mul(coeff, p.scalar_expr())
                if p.pos != len(scalar_toks):
                    raise PresentationFileError("malformed coefficient", filename, line)
            word = []
            for tok in word_toks:
                if tok == ("int", 1) and len(word_toks) == 1:
                    break  # the unit word
                if tok[0] != "ident":
                    raise PresentationFileError(
                        f"unexpected {tok[1]!r} inside a word", filename, line)
                if tok[1] in ("q", "t"):
                    raise PresentationFileError(
                        f"{tok[1]!r} cannot appear inside a word", filename, line)
                if tok[1] not in leg._by_name:
                    raise PresentationFileError(
                        f"unknown generator {tok[1]!r} in {leg.name}", filename, line)
                word.append(tok[1])
            words.append(tuple(word))
        key = tuple(words)
        acc[key] = _t_add(acc.get(key, {}), coeff)
    return {k: v for k, v in acc.items() if v}


def parse_element(alg: Presentation, text: str, filename: str = "<string>",
                  line: int = 0) -> NCPoly:
    raw = parse_expression(text, [alg], allow_t=False, filename=filename, line=line)
    terms = {}
    for (w,), ts in raw.items():
        if set(ts) - {0}:
            raise PresentationFileError("t is not allowed here", filename, line)
        terms[w] = ts.get(0, QRat(0))
    return NCPoly(alg, terms)


def parse_tensor(legs, text: str, filename: str = "<string>", line: int = 0) -> TensorElem:
    raw = parse_expression(text, list(legs), allow_t=False, filename=filename, line=line)
    terms = {}
    for key, ts in raw.items():
        if set(ts) - {0}:
            raise PresentationFileError("t is not allowed here", filename, line)
        terms[key] = ts.get(0, QRat(0))
    return TensorElem(legs, terms)


def parse_join_element(delta: Coaction, text: str, cap: int = 4,
                       filename: str = "<string>", line: int = 0):
    from .join import JoinElement, TPoly

    raw = parse_expression(text, [delta.A, delta.H], allow_t=True,
                           filename=filename, line=line)
    coeffs: dict = {}
    for key, ts in raw.items():
        for tdeg, c in ts.items():
            coeffs.setdefault(tdeg, {})[key] = c
    legs = (delta.A, delta.H)
    tp = TPoly(legs, {k: TensorElem(legs, terms) for k, terms in coeffs.items()})
    return JoinElement(delta, tp, cap)


# ---------------------------------------------------------------------------
# workspace files

class Workspace:
    def __init__(self):
        self.algebras: dict[str, Presentation] = {}
        self.coactions: dict[str, Coaction] = {}
        self.coreps: dict[str, Corepresentation] = {}
        self.connections: dict[str, StrongConnection] = {}
        self.morphisms: dict[str, Morphism] = {}

    def only(self, table: dict, what: str):
        if len(table) != 1:
            raise PresentationError(
                f"expected exactly one {what}, found {sorted(table)}")
        return next(iter(table.values()))


_HEADERS = ("algebra", "coaction", "corep", "connection", "morphism")


def parse_workspace(text: str, filename: str = "<string>") -> Workspace:
    blocks = []
    current = None
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        stripped = rawline.split("#", 1)[0].strip()
        if not stripped:
            continue
        head = stripped.split(None, 1)[0]
        if head in _HEADERS:
            current = {"kind": head, "header": stripped, "line": lineno, "body": []}
            blocks.append(current)
            continue
        if current is None:
            raise PresentationFileError(f"line outside any block: {stripped!r}",
                                        filename, lineno)
        current["body"].append((lineno, stripped))
    ws = Workspace()
    for block in blocks:
        if block["kind"] == "algebra":
            _build_algebra(ws, block, filename)
    for block in blocks:
        kind = block["kind"]
        if kind == "coaction":
            _build_coaction(ws, block, filename)
        elif kind == "corep":
            _build_corep(ws, block, filename)
        elif kind == "connection":
            _build_connection(ws, block, filename)
        elif kind == "morphism":
            _build_morphism(ws, block, filename)
    return ws


def _header_fields(block, filename, expect: str):
    parts = block["header"].split()
    if len(parts) < 2:
        raise PresentationFileError(f"{expect} block needs a name", filename, block["line"])
    return parts


def _split_assign(text: str, filename: str, line: int):
    if "=" not in text:
        raise PresentationFileError("expected '=' in table line", filename, line)
    left, right = text.split("=", 1)
    return left.split(), right.strip()


def _build_algebra(ws: Workspace, block, filename: str):
    parts = _header_fields(block, filename, "algebra")
    name = parts[1]
    gen_names: list[str] = []
    stars: dict[str, str] = {}
    weights: dict[str, int] = {}
    order: list[str] | None = None
    red_order: list[str] | None = None
    rels: list[tuple[int, str]] = []
    hopf_lines: dict[str, list[tuple[int, str]]] = {
        "coproduct": [], "counit": [], "antipode": [], "antipode_inv": []}
    for lineno, text in block["body"]:
        fields = text.split()
        key = fields[0]
        if key == "generators":
            gen_names.extend(fields[1:])
        elif key == "star":
            if len(fields) != 3:
                raise PresentationFileError("star takes two generator names",
                                            filename, lineno)
            stars[fields[1]] = fields[2]
            stars[fields[2]] = fields[1]
        elif key == "order":
            order = [f for f in fields[1:] if f != "<"]
        elif key == "reduction_order":
            red_order = [f for f in fields[1:] if f != "<"]
        elif key == "weight":
            if len(fields) != 3:
                raise PresentationFileError("weight takes a generator and an integer",
                                            filename, lineno)
            try:
                weights[fields[1]] = int(fields[2])
            except ValueError:
                raise PresentationFileError("weight must be an integer",
                                            filename, lineno) from None
        elif key == "rel":
            rels.append((lineno, text[len("rel"):].strip()))
        elif key in hopf_lines:
            hopf_lines[key].append((lineno, text[len(key):].strip()))
        else:
            raise PresentationFileError(f"unknown algebra line {key!r}", filename, lineno)
    if not gen_names:
        raise PresentationFileError("algebra has no generators", filename, block["line"])
    for g in gen_names:
        if g in _RESERVED_NAMES:
            raise PresentationFileError(f"generator name {g!r} is reserved",
                                        filename, block["line"])
    if order is not None:
        if set(order) != set(gen_names):
            raise PresentationFileError("order must list every generator",
                                        filename, block["line"])
        gen_names = order
    gens = [Generator(g, stars.get(g, g), weights.get(g, 1)) for g in gen_names]
    # two-stage build: parse relations against a rule-free copy for words
    proto = Presentation(name + "!proto", gens)
    rules = []
    for lineno, body in rels:
        if "=" not in body:
            raise PresentationFileError("rel needs '='", filename, lineno)
        left, right = body.split("=", 1)
        lhs = parse_element(proto, left.strip(), filename, lineno)
        rhs = parse_element(proto, right.strip(), filename, lineno)
        if len(lhs.terms) != 1:
            raise PresentationFileError("rule left side must be a single word",
                                        filename, lineno)
        (lw, lc), = lhs.terms.items()
        inv = QRat(1) / lc
        rules.append((lw, {w: c * inv for w, c in rhs.terms.items()}))
    try:
        alg = Presentation(name, gens, rules, reduction_precedence=red_order)
    except PresentationError as exc:
        raise PresentationFileError(str(exc), filename, block["line"]) from None
    ws.algebras[name] = alg
    if any(hopf_lines.values()):
        tables: dict[str, dict] = {"coproduct": {}, "counit": {}, "antipode": {},
                                   "antipode_inv": {}}
        for lineno, body in hopf_lines["coproduct"]:
            fields, rhs = _split_assign(body, filename, lineno)
            tables["coproduct"][fields[0]] = parse_tensor((alg, alg), rhs,
                                                          filename, lineno)
        for lineno, body in hopf_lines["counit"]:
            fields, rhs = _split_assign(body, filename, lineno)
            tables["counit"][fields[0]] = parse_element(alg, rhs, filename,
                                                        lineno).constant_term()
        for lineno, body in hopf_lines["antipode"]:
            fields, rhs = _split_assign(body, filename, lineno)
            tables["antipode"][fields[0]] = parse_element(alg, rhs, filename, lineno)
        for lineno, body in hopf_lines["antipode_inv"]:
            fields, rhs = _split_assign(body, filename, lineno)
            tables["antipode_inv"][fields[0]] = parse_element(alg, rhs, filename, lineno)
        try:
            attach_hopf(alg, tables["coproduct"], tables["counit"],
                        tables["antipode"], tables["antipode_inv"])
        except PresentationError as exc:
            raise PresentationFileError(str(exc), filename, block["line"]) from None


def _build_coaction(ws: Workspace, block, filename: str):
    parts = _header_fields(block, filename, "coaction")
    # coaction NAME : A -> A (x) H
    try:
        name = parts[1]
        assert parts[2] == ":"
        src = parts[3]
        assert parts[4] == "->"
        dst = parts[5]
        assert parts[6] == "(x)"
        struct = parts[7]
    except (IndexError, AssertionError):
        raise PresentationFileError("coaction header must read "
                                    "'coaction NAME : A -> A (x) H'",
                                    filename, block["line"]) from None
    if src != dst:
        raise PresentationFileError("coaction must target its own algebra",
                                    filename, block["line"])
    if src not in ws.algebras or struct not in ws.algebras:
        raise PresentationFileError("coaction references unknown algebras",
                                    filename, block["line"])
    A = ws.algebras[src]
    H = ws.algebras[struct]
    table = {}
    for lineno, text in block["body"]:
        fields, rhs = _split_assign(text, filename, lineno)
        if fields[0] != "delta" or len(fields) != 2:
            raise PresentationFileError("coaction lines read 'delta g = EXPR'",
                                        filename, lineno)
        table[fields[1]] = parse_tensor((A, H), rhs, filename, lineno)
    try:
        ws.coactions[name] = Coaction(name, A, H, table)
    except PresentationError as exc:
        raise PresentationFileError(str(exc), filename, block["line"]) from None


def _build_corep(ws: Workspace, block, filename: str):
    parts = _header_fields(block, filename, "corep")
    try:
        name = parts[1]
        assert parts[2] == "dim"
        dim = int(parts[3])
    except (IndexError, AssertionError, ValueError):
        raise PresentationFileError("corep header must read 'corep NAME dim N [over ALG]'",
                                    filename, block["line"]) from None
    if len(parts) >= 6 and parts[4] == "over":
        alg_name = parts[5]
    elif len(ws.algebras) == 1:
        alg_name = next(iter(ws.algebras))
    else:
        raise PresentationFileError("corep needs 'over ALG' with several algebras",
                                    filename, block["line"])
    if alg_name not in ws.algebras:
        raise PresentationFileError(f"unknown algebra {alg_name!r}", filename,
                                    block["line"])
    H = ws.algebras[alg_name]
    rows = []
    for lineno, text in block["body"]:
        if not text.startswith("row"):
            raise PresentationFileError("corep lines read 'row EXPR | EXPR | ...'",
                                        filename, lineno)
        cells = [c.strip() for c in text[len("row"):].split("|")]
        rows.append([parse_element(H, c, filename, lineno) for c in cells])
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise PresentationFileError(f"corep {name!r} is not {dim}x{dim}",
                                    filename, block["line"])
    ws.coreps[name] = Corepresentation(name, H, rows)


def _build_connection(ws: Workspace, block, filename: str):
    parts = _header_fields(block, filename, "connection")
    try:
        name = parts[1]
        assert parts[2] == "on"
        coaction_name = parts[3]
    except (IndexError, AssertionError):
        raise PresentationFileError("connection header must read "
                                    "'connection NAME on COACTION'",
                                    filename, block["line"]) from None
    if coaction_name not in ws.coactions:
        raise PresentationFileError(f"unknown coaction {coaction_name!r}",
                                    filename, block["line"])
    delta = ws.coactions[coaction_name]
    H, A = delta.H, delta.A
    pairs = []
    for lineno, text in block["body"]:
        if not text.startswith("L"):
            raise PresentationFileError("connection lines read 'L ELEM = EXPR'",
                                        filename, lineno)
        body = text[1:].strip()
        if "=" not in body:
            raise PresentationFileError("connection line needs '='", filename, lineno)
        left, right = body.split("=", 1)
        elem = parse_element(H, left.strip(), filename, lineno)
        value = parse_tensor((A, A), right.strip(), filename, lineno)
        pairs.append((elem, value))
    try:
        span = CoalgebraSpan(H, [e for e, _ in pairs])
        ws.connections[name] = StrongConnection.from_table(span, delta, pairs, name=name)
    except PresentationError as exc:
        raise PresentationFileError(str(exc), filename, block["line"]) from None


def _build_morphism(ws: Workspace, block, filename: str):
    parts = _header_fields(block, filename, "morphism")
    try:
        name = parts[1]
        assert parts[2] == ":"
        src = parts[3]
        assert parts[4] == "->"
        dst = parts[5]
    except (IndexError, AssertionError):
        raise PresentationFileError("morphism header must read 'morphism NAME : A -> B'",
                                    filename, block["line"]) from None
    if src not in ws.algebras or dst not in ws.algebras:
        raise PresentationFileError("morphism references unknown algebras",
                                    filename, block["line"])
    source, target = ws.algebras[src], ws.algebras[dst]
    images = {}
    for lineno, text in block["body"]:
        fields, rhs = _split_assign(text, filename, lineno)
        if fields[0] != "f" or len(fields) != 2:
            raise PresentationFileError("morphism lines read 'f g = EXPR'",
                                        filename, lineno)
        images[fields[1]] = parse_element(target, rhs, filename, lineno)
    try:
        ws.morphisms[name] = Morphism(source, target, images, name=name)
    except PresentationError as exc:
        raise PresentationFileError(str(exc), filename, block["line"]) from None
