"""Reading and writing systems, polynomials, certificates and reports.

System documents::

    #m 2
    #n 2
    #coeffs const
    y1[1,0] + y2[0,1]
    y1[0,1] - y2[1,0]

One polynomial per line.  ``y<i>[a1,...,am]`` is d1^a1 ... dm^am y_i and a
bare ``y<i>`` is the order-zero variable.  Coefficients are rationals and,
under ``#coeffs ratfunc``, the variables ``x<j>``.  Besides ``+ - * ^`` and
parentheses, a leading sign and division by a coefficient expression
(``x1/3*y1``, ``1/2*y1``) are accepted so every rendered polynomial parses
back.  Polynomial documents use ``X<j>`` in place of ``y``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .bounds import BoundReport, Symbolic, decimal
from .certify import Certificate, CertRow, PolyCertificate, VerifyReport
from .commpoly import Poly, poly_text, x_ring
from .diffring import DerivOp, DiffPoly, DiffRing, to_text
from .linear import LinearThreshold
from .prolong import DiffSystem

SCHEMA = "diffnull/1"


class DocumentError(ValueError):
    kind = "input"

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(f"{self.kind} error: {where}{message}")


class GrammarError(DocumentError):
    kind = "syntax"


class ArityError(DocumentError):
    kind = "arity"


class UnknownIndeterminate(DocumentError):
    kind = "unknown indeterminate"


# -- tokens -------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[yxX])(?P<idx>\d+)|(?P<op>[-+*/^()\[\],]))")


@dataclass(frozen=True)
class _Tok:
    kind: str       # "num", "y", "x", "X", an operator character, or "end"
    text: str
    col: int


def _tokenize(line: str, lineno: int) -> list:
    toks, pos = [], 0
    while pos < len(line):
        if line[pos:].strip() == "":
            break
        mt = _TOKEN.match(line, pos)
        if not mt:
            col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
            raise GrammarError(f"unexpected character {line[col - 1]!r}", lineno, col)
        col = mt.start(mt.lastgroup if mt.lastgroup != "idx" else "var") + 1
        if mt.group("num"):
            toks.append(_Tok("num", mt.group("num"), col))
        elif mt.group("var"):
            toks.append(_Tok(mt.group("var"), mt.group("idx"), col))
        else:
            toks.append(_Tok(mt.group("op"), mt.group("op"), col))
        pos = mt.end()
    toks.append(_Tok("end", "", len(line) + 1))
    return toks


# -- syntax trees -------------------------------------------------------------------
# ("num", Fraction) ("y", i, theta|None, col) ("x", j, col) ("X", j, col)
# ("add", [(sign, node)]) ("mul", [node]) ("div", node, node, col) ("pow", node, k)

class _Parser:
    def __init__(self, toks: list, lineno: int, var_kinds: tuple):
        self.toks, self.k, self.lineno, self.var_kinds = toks, 0, lineno, var_kinds

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.cur
        raise GrammarError(msg, self.lineno, tok.col)

    def eat(self, kind: str) -> _Tok:
        if self.cur.kind != kind:
            found = self.cur.text or "end of line"
            self.fail(f"expected {kind!r}, found {found!r}")
        tok = self.cur
        self.k += 1
        return tok

    def parse_line(self):
        node = self.poly()
        if self.cur.kind != "end":
            self.fail(f"unexpected {self.cur.text!r}")
        return node

    def poly(self):
        parts = []
        sign = 1
        if self.cur.kind in ("+", "-"):
            sign = -1 if self.eat(self.cur.kind).kind == "-" else 1
        parts.append((sign, self.term()))
        while self.cur.kind in ("+", "-"):
            sign = -1 if self.eat(self.cur.kind).kind == "-" else 1
            parts.append((sign, self.term()))
        return ("add", parts)

    def term(self):
        factors = [self.factor()]
        while True:
            kind = self.cur.kind
            if kind == "*":
                self.eat("*")
                factors.append(self.factor())
            elif kind == "/":
                tok = self.eat("/")
                factors = [("div", ("mul", factors), self.factor(), tok.col)]
            elif kind in self.var_kinds + ("x", "(") and factors[-1][0] == "num":
                # a numeric coefficient may be written right before a factor
                factors.append(self.factor())
            else:
                return ("mul", factors)

    def factor(self):
        node = self.atom()
        if self.cur.kind == "^":
            self.eat("^")
            node = ("pow", node, int(self.eat("num").text))
        return node

    def atom(self):
        tok = self.cur
        if tok.kind == "num":
            self.k += 1
            return ("num", Fraction(int(tok.text)))
        if tok.kind == "(":
            self.eat("(")
            node = self.poly()
            self.eat(")")
            return node
        if tok.kind == "x":
            self.k += 1
            return ("x", int(tok.text), tok.col)
        if tok.kind in self.var_kinds:
            self.k += 1
            if tok.kind == "y":
                theta = None
                if self.cur.kind == "[":
                    self.eat("[")
                    theta = [int(self.eat("num").text)]
                    while self.cur.kind == ",":
                        self.eat(",")
                        theta.append(int(self.eat("num").text))
                    self.eat("]")
                return ("y", int(tok.text), theta, tok.col)
            return (tok.kind, int(tok.text), tok.col)
        if tok.kind in ("y", "X"):
            self.fail(f"{tok.kind}{tok.text} is not allowed in this document")
        self.fail(f"unexpected {tok.text or 'end of line'!r}")


def _max_y(node) -> int:
    tag = node[0]
    if tag == "y":
        return node[1]
    if tag == "add":
        return max((_max_y(n) for _, n in node[1]), default=0)
    if tag == "mul":
        return max((_max_y(n) for n in node[1]), default=0)
    if tag == "div":
        return max(_max_y(node[1]), _max_y(node[2]))
    if tag == "pow":
        return _max_y(node[1])
    return 0


class _Builder:
    """Evaluate a syntax tree in a DiffRing (``y``) or in Q[X1..Xm] (``X``)."""

    def __init__(self, ring, lineno: int, coeffs: str = "const"):
        self.ring, self.lineno, self.coeffs = ring, lineno, coeffs
        self.m = ring.m if isinstance(ring, DiffRing) else ring.nvars

    def const(self, c):
        return self.ring.const(c)

    def build(self, node):
        tag = node[0]
        if tag == "num":
            return self.const(node[1])
        if tag == "add":
            acc = self.ring.zero()
            for sign, n in node[1]:
                v = self.build(n)
                acc = acc + v if sign > 0 else acc - v
            return acc
        if tag == "mul":
            acc = self.ring.one()
            for n in node[1]:
                acc = acc * self.build(n)
            return acc
        if tag == "pow":
            return self.build(node[1]) ** node[2]
        if tag == "div":
            num, den = self.build(node[1]), self.build(node[2])
            c = _as_coefficient(den)
            if c is None:
                raise GrammarError("only coefficient expressions may appear after '/'", self.lineno, node[3])
            if not c:
                raise GrammarError("division by zero", self.lineno, node[3])
            return num * self.const(1 / c if isinstance(c, Fraction) else c ** -1)
        if tag == "x":
            j, col = node[1], node[2]
            if self.coeffs != "ratfunc":
                raise UnknownIndeterminate(f"x{j} needs '#coeffs ratfunc'", self.lineno, col)
            if not 1 <= j <= self.m:
                raise UnknownIndeterminate(f"x{j} with m={self.m}", self.lineno, col)
            return self.ring.x(j)
        if tag == "X":
            j, col = node[1], node[2]
            if not 1 <= j <= self.m:
                raise UnknownIndeterminate(f"X{j} with m={self.m}", self.lineno, col)
            return self.ring.gens()[j - 1]
        i, theta, col = node[1], node[2], node[3]
        if not 1 <= i <= self.ring.n:
            raise UnknownIndeterminate(f"y{i} with n={self.ring.n}", self.lineno, col)
        if theta is not None and len(theta) != self.m:
            raise ArityError(f"y{i}{list(theta)} has {len(theta)} exponent slots, m={self.m}",
                             self.lineno, col)
        return self.ring.y(i, theta)


def _as_coefficient(p):
    """The coefficient of a constant polynomial, else None."""
    if isinstance(p, DiffPoly):
        if any(mono for mono in p.terms):
            return None
        return p.ring.field.convert(p.terms.get((), 0))
    if any(any(e) for e in p.terms):
        return None
    return Fraction(p.terms.get(tuple([0] * p.ring.nvars), 0))


def _header(text: str, allowed: dict):
    """Split directives from body lines; returns (settings, [(lineno, line)])."""
    settings, body = {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if body:
                raise GrammarError("directives must precede polynomials", lineno, 1)
            parts = line.split()
            key = parts[0][1:]
            if key not in allowed:
                raise GrammarError(f"unknown directive {parts[0]!r}", lineno, 1)
            if key in settings:
                raise GrammarError(f"repeated directive {parts[0]!r}", lineno, 1)
            if len(parts) != 2:
                raise GrammarError(f"{parts[0]} takes one value", lineno, len(parts[0]) + 1)
            value = parts[1]
            if allowed[key] is int:
                if not value.isdigit() or int(value) < 1:
                    raise GrammarError(f"{parts[0]} needs a positive integer", lineno,
                                       raw.index(value) + 1)
                value = int(value)
            elif value not in allowed[key]:
                raise GrammarError(f"{parts[0]} must be one of {', '.join(allowed[key])}", lineno,
                                   raw.index(value) + 1)
            settings[key] = value
        else:
            body.append((lineno, raw))
    if not body:
        raise GrammarError("document has no polynomial lines", len(text.splitlines()) or 1, 1)
    return settings, body


def parse_system(text: str) -> DiffSystem:
    """Parse a system document.  #m defaults to 1; #n defaults to the largest index used."""
    settings, body = _header(text, {"m": int, "n": int, "coeffs": ("const", "ratfunc")})
    m = settings.get("m", 1)
    coeffs = settings.get("coeffs", "const")
    trees = [(lineno, _Parser(_tokenize(line, lineno), lineno, ("y",)).parse_line()) for lineno, line in body]
    n = settings.get("n") or max(1, max(_max_y(t) for _, t in trees))
    ring = DiffRing(m, n, coeffs)
    return DiffSystem(ring, tuple(_Builder(ring, lineno, coeffs).build(t) for lineno, t in trees))


def parse_poly(text: str, ring: DiffRing) -> DiffPoly:
    """One polynomial expression in a given ring."""
    tree = _Parser(_tokenize(text, 1), 1, ("y",)).parse_line()
    return _Builder(ring, 1, ring.coeffs).build(tree)


def parse_polynomials(text: str) -> list:
    """A polynomial document: optional ``#m``, then polynomials in X1..Xm over Q."""
    settings, body = _header(text, {"m": int})
    ring = x_ring(settings.get("m", 1))
    return [_Builder(ring, lineno).build(_Parser(_tokenize(line, lineno), lineno, ("X",)).parse_line())
            for lineno, line in body]


def parse_commpoly(text: str, m: int) -> Poly:
    ring = x_ring(m)
    return _Builder(ring, 1).build(_Parser(_tokenize(text, 1), 1, ("X",)).parse_line())


# -- rendering -----------------------------------------------------------------------

def system_text(F: DiffSystem, pretty: bool = False) -> str:
    R = F.ring
    head = [f"#m {R.m}", f"#n {R.n}"]
    if R.coeffs != "const":
        head.append(f"#coeffs {R.coeffs}")
    return "\n".join(head + [to_text(g, pretty) for g in F.generators]) + "\n"


def polynomials_text(fs) -> str:
    fs = list(fs)
    m = fs[0].ring.nvars if fs else 1
    return "\n".join([f"#m {m}"] + [poly_text(f) for f in fs]) + "\n"


def _theta_text(theta) -> str:
    ops = [f"d{j}" if e == 1 else f"d{j}^{e}" for j, e in enumerate(theta, 1) if e]
    return " ".join(ops) if ops else "id"


def certificate_json(cert) -> dict:
    if isinstance(cert, PolyCertificate):
        return {"schema": SCHEMA, "type": "poly_certificate", "m": cert.target.ring.nvars,
                "target": poly_text(cert.target), "cofactors": [poly_text(g) for g in cert.cofactors]}
    R = cert.ring
    return {
        "schema": SCHEMA, "type": "certificate", "m": R.m, "n": R.n, "coeffs": R.coeffs,
        "target": to_text(cert.target),
        "rows": [{"gen": r.gen, "theta": list(r.theta), "coeff": to_text(r.coeff)} for r in cert.rows],
    }


def parse_certificate(text: str, ring: DiffRing | None = None):
    """Read certificate JSON; ``ring`` overrides the m/n/coeffs recorded in the file."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GrammarError(f"certificate is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise GrammarError("certificate must be a JSON object")
    try:
        if obj.get("type") == "poly_certificate":
            m = int(obj["m"])
            return PolyCertificate(parse_commpoly(obj["target"], m),
                                   tuple(parse_commpoly(g, m) for g in obj["cofactors"]))
        if ring is None:
            m = int(obj.get("m") or len(obj["rows"][0]["theta"]))
            n = int(obj.get("n") or 1)
            ring = DiffRing(m, n, obj.get("coeffs", "const"))
        rows = []
        for r in obj["rows"]:
            theta = [int(e) for e in r["theta"]]
            if len(theta) != ring.m:
                raise ArityError(f"theta {theta} has {len(theta)} entries, m={ring.m}")
            rows.append(CertRow(int(r["gen"]), DerivOp(theta), parse_poly(str(r.get("coeff", "1")), ring)))
        return Certificate(parse_poly(obj["target"], ring), tuple(rows))
    except (KeyError, TypeError, IndexError) as exc:
        raise GrammarError(f"certificate is missing or has a malformed field: {exc}") from None


def _plain(value):
    """JSON-ready form of any public value."""
    if isinstance(value, DiffSystem):
        R = value.ring
        return {"schema": SCHEMA, "type": "system", "m": R.m, "n": R.n, "coeffs": R.coeffs,
                "generators": [to_text(g) for g in value.generators]}
    if isinstance(value, DiffPoly):
        return {"schema": SCHEMA, "type": "diffpoly", "m": value.ring.m, "n": value.ring.n,
                "coeffs": value.ring.coeffs, "poly": to_text(value)}
    if isinstance(value, Poly):
        return {"schema": SCHEMA, "type": "poly", "variables": [value.ring.label_text(v) for v in value.ring.labels],
                "poly": poly_text(value)}
    if isinstance(value, (Certificate, PolyCertificate)):
        return certificate_json(value)
    if isinstance(value, VerifyReport):
        return {"schema": SCHEMA, "type": "verify_report", "ok": value.ok,
                "max_order": {str(k): v for k, v in value.max_order.items()},
                "overall_order": value.overall_order,
                "residual": None if value.residual is None else str(value.residual)}
    if isinstance(value, BoundReport):
        return {"schema": SCHEMA, "type": "bound_report", **value.as_dict()}
    if isinstance(value, LinearThreshold):
        return {"schema": SCHEMA, "type": "linear_threshold", "order": value.order,
                "ranks": list(value.ranks),
                "certificate": None if value.certificate is None else certificate_json(value.certificate)}
    if isinstance(value, Symbolic):
        return {"symbolic": value.text, "digits_estimate": value.digits_estimate}
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return value if abs(value) < 2**53 else decimal(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _text(value, pretty: bool) -> str:
    if isinstance(value, DiffSystem):
        return system_text(value, pretty)
    if isinstance(value, DiffPoly):
        return to_text(value, pretty) + "\n"
    if isinstance(value, Poly):
        return poly_text(value) + "\n"
    if isinstance(value, Certificate):
        lines = [f"target: {to_text(value.target, pretty)}"]
        for r in value.rows:
            lines.append(f"  ({to_text(r.coeff, pretty)}) * {_theta_text(r.theta)} g[{r.gen}]")
        lines.append(f"max order: {value.max_order()}")
        return "\n".join(lines) + "\n"
    if isinstance(value, PolyCertificate):
        lines = [f"target: {poly_text(value.target)}"]
        lines += [f"  g[{k}]: {poly_text(g)}" for k, g in enumerate(value.cofactors)]
        lines.append(f"max degree: {value.max_degree()}")
        return "\n".join(lines) + "\n"
    if isinstance(value, VerifyReport):
        orders = ", ".join(f"g[{k}]: {v}" for k, v in value.max_order.items())
        head = "verified" if value.ok else f"NOT verified, residual {value.residual}"
        return f"{head}\nmax order per generator: {orders}\noverall: {value.overall_order}\n"
    if isinstance(value, BoundReport):
        d = value.as_dict()
        keys = ["m", "n", "h", "D", "c", "T", "alpha_T_minus_1", "alpha_T", "symbolic",
                "bound_decimal_or_symbolic"]
        lines = [f"{k}: {d[k]}" for k in keys]
        lines += [f"{k}: {v}" for k, v in d["comparisons"].items()]
        return "\n".join(lines) + "\n"
    if isinstance(value, LinearThreshold):
        return f"order: {_scalar_text(value.order)}\nranks: {list(value.ranks)}\n"
    if isinstance(value, dict):
        return "".join(f"{k}: {_scalar_text(v)}\n" for k, v in value.items())
    if isinstance(value, (list, tuple)) and value and all(isinstance(p, Poly) for p in value):
        return polynomials_text(value)
    if isinstance(value, (list, tuple)):
        return "".join(_text(v, pretty) for v in value)
    return f"{_scalar_text(value)}\n"


def _scalar_text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    return decimal(v)


def render(value, fmt: str = "text", pretty: bool = False) -> bytes:
    """Deterministic text or JSON bytes for any public value."""
    if fmt == "json":
        return (json.dumps(_plain(value), indent=2, sort_keys=True) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return _text(value, pretty).encode()
