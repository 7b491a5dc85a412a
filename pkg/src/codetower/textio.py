"""
Plain-text formats for codes and lattices.

    kleinian <n>          binary <n>            lattice <n> <d>
    aa                    11110000              <n rows of integers>
    bb                    ...                   [form f1 ... fN]

Blank lines and ``#`` comments are ignored.  Lattice rows are coordinates in
units alpha_i/d, where (alpha_i, alpha_j) = f_i * delta_ij and f_i defaults
to 2.
"""

from .errors import ParseError


def _lines(text):
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    if not out:
        raise ParseError("empty input", 1)
    return out


def _header(lines, kinds):
    lineno, line = lines[0]
    parts = line.split()
    if parts[0] not in kinds:
        raise ParseError("expected header %s, got %r" % ("/".join(kinds), parts[0]), lineno, 1)
    try:
        args = [int(p) for p in parts[1:]]
    except ValueError:
        raise ParseError("non-integer header argument", lineno, len(parts[0]) + 2) from None
    return parts[0], args


def parse_code(text):
    from . import f2
    from .bincodes import BinaryCode
    from .kleinian import KleinianCode, word_from_string

    lines = _lines(text)
    kind, args = _header(lines, ("kleinian", "binary"))
    if len(args) != 1 or args[0] < 1:
        raise ParseError("header needs one positive length", lines[0][0])
    n = args[0]
    alphabet = "0abc" if kind == "kleinian" else "01"
    rows = []
    for lineno, line in lines[1:]:
        if len(line) != n:
            raise ParseError("row has length %d, expected %d" % (len(line), n), lineno, min(len(line), n) + 1)
        for col, ch in enumerate(line, start=1):
            if ch not in alphabet:
                raise ParseError("unexpected symbol %r" % ch, lineno, col)
        rows.append(word_from_string(line) if kind == "kleinian" else f2.from_string(line))
    if kind == "kleinian":
        return KleinianCode(n, f2.rref(rows))
    return BinaryCode(n, f2.rref(rows))


def format_code(code):
    from .bincodes import BinaryCode, format_binary
    from .kleinian import format_kleinian

    if isinstance(code, BinaryCode):
        return format_binary(code)
    return format_kleinian(code)


def parse_lattice(text):
    from .lattices import Lattice

    lines = _lines(text)
    _, args = _header(lines, ("lattice",))
    if len(args) != 2 or args[0] < 1 or args[1] < 1:
        raise ParseError("header needs rank and denominator", lines[0][0])
    n, d = args
    body = lines[1:]
    form = None
    if body and body[-1][1].startswith("form"):
        lineno, line = body.pop()
        try:
            form = tuple(int(x) for x in line.split()[1:])
        except ValueError:
            raise ParseError("non-integer form entry", lineno) from None
    if len(body) != n:
        last = body[-1][0] if body else lines[0][0]
        raise ParseError("expected %d basis rows, found %d" % (n, len(body)), last)
    rows = []
    width = None
    for lineno, line in body:
        toks = line.split()
        try:
            row = [int(t) for t in toks]
        except ValueError:
            bad = next(i for i, t in enumerate(toks) if not t.lstrip("-").isdigit())
            raise ParseError("non-integer entry %r" % toks[bad], lineno, line.find(toks[bad]) + 1) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError("row has %d entries, expected %d" % (len(row), width), lineno)
        rows.append(row)
    if form is None:
        form = (2,) * width
    if len(form) != width:
        raise ParseError("form has %d entries, expected %d" % (len(form), width))
    return Lattice.from_generators(rows, d, form, expect_rank=n)


def format_lattice(L):
    lines = ["lattice %d %d" % (L.rank, L.denom)]
    lines += [" ".join(str(x) for x in row) for row in L.basis]
    if any(f != 2 for f in L.form):
        lines.append("form " + " ".join(str(f) for f in L.form))
    return "\n".join(lines) + "\n"
