"""Exact arithmetic in R = GF(p)[x1..xn]: monomials, sparse polynomials,
linear forms, and invertible linear changes of coordinates.

Monomials are plain exponent tuples.  The monomial order is
degree-reverse-lexicographic throughout; all higher layers only assume a
degree-compatible order.
"""

from __future__ import annotations

import itertools
import operator
import re

DEFAULT_PRIME = 32003


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# monomial helpers (exponent tuples)

def mono_deg(e):
    return sum(e)


def mono_mul(a, b):
    return tuple(map(operator.add, a, b))


def mono_divides(a, b):
    """Does x^a divide x^b?"""
    return all(map(operator.le, a, b))


def mono_div(b, a):
    """Exponent tuple of x^b / x^a; caller guarantees divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


_grevlex_cache = {}


def grevlex_key(e):
    """Sort key: bigger key means bigger monomial under degrevlex."""
    k = _grevlex_cache.get(e)
    if k is None:
        k = (sum(e),) + tuple(-x for x in reversed(e))
        _grevlex_cache[e] = k
    return k


def monomial_cmp(a, b, order="degrevlex"):
    """Compare two monomials; returns -1, 0 or 1."""
    if len(a) != len(b):
        raise ValueError("monomials live in different rings")
    if order != "degrevlex":
        raise ValueError(f"unsupported order {order!r}")
    ka, kb = grevlex_key(a), grevlex_key(b)
    return (ka > kb) - (ka < kb)


def monomials_of_degree(n, degree):
    """All exponent tuples with n entries summing to `degree`."""
    if degree < 0:
        return
    if n == 0:
        if degree == 0:
            yield ()
        return
    for head in range(degree, -1, -1):
        for tail in monomials_of_degree(n - 1, degree - head):
            yield (head,) + tail


class Ring:
    """GF(p)[x1..xn] with the standard grading."""

    def __init__(self, nvars, p=DEFAULT_PRIME):
        if nvars < 0:
            raise ValueError("number of variables must be nonnegative")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.n = nvars
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.n, self.p) == (other.n, other.p)

    def __hash__(self):
        return hash((self.n, self.p))

    def __repr__(self):
        return f"GF({self.p})[x1..x{self.n}]"

    def inv(self, a):
        return pow(a % self.p, -1, self.p)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.n: 1})

    def constant(self, c):
        return Polynomial(self, {(0,) * self.n: c})

    def variable(self, i):
        """x_{i+1} as a polynomial (0-based index)."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def monomial(self, exps, coeff=1):
        if len(exps) != self.n:
            raise ValueError("wrong exponent tuple length")
        return Polynomial(self, {tuple(exps): coeff})

    def monomials(self, degree):
        return monomials_of_degree(self.n, degree)

    def random_polynomial(self, degree, rng):
        """Random homogeneous polynomial of the given degree (never zero)."""
        while True:
            terms = {}
            for e in self.monomials(degree):
                c = rng.randrange(self.p)
                if c:
                    terms[e] = c
            if terms:
                return Polynomial(self, terms, normalize=False)


class Polynomial:
    """Sparse homogeneous-friendly polynomial over GF(p)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms, normalize=True):
        self.ring = ring
        if normalize:
            p = ring.p
            terms = {e: c % p for e, c in terms.items() if c % p}
        self.terms = terms

    # -- queries ----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        return len(degs) == 1

    def lead_monomial(self):
        return max(self.terms, key=grevlex_key)

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def monic(self):
        if not self.terms:
            return self
        c = self.ring.inv(self.lead_coeff())
        return self.scale(c)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        p = self.ring.p
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = (terms.get(e, 0) + c) % p
            if v:
                terms[e] = v
            elif e in terms:
                del terms[e]
        return Polynomial(self.ring, terms, normalize=False)

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()},
                          normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: (v * c) % p for e, v in self.terms.items()},
                          normalize=False)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.ring.p
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                v = (terms.get(e, 0) + c1 * c2) % p
                if v:
                    terms[e] = v
                elif e in terms:
                    del terms[e]
        return Polynomial(self.ring, terms, normalize=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


class LinearForm:
    """Nonzero element of R_1, kept as its coefficient vector."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        coeffs = tuple(c % ring.p for c in coeffs)
        if len(coeffs) != ring.n:
            raise ValueError("wrong coefficient count")
        if not any(coeffs):
            raise ValueError("linear form must be nonzero")
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def from_polynomial(cls, f):
        if f.is_zero() or f.degree() != 1 or not f.is_homogeneous():
            raise ValueError("not a nonzero linear form")
        coeffs = [0] * f.ring.n
        for e, c in f.terms.items():
            coeffs[e.index(1)] = c
        return cls(f.ring, coeffs)

    @classmethod
    def random(cls, ring, rng):
        while True:
            coeffs = [rng.randrange(ring.p) for _ in range(ring.n)]
            if any(coeffs):
                return cls(ring, coeffs)

    def polynomial(self):
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = [0] * self.ring.n
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(self.ring, terms, normalize=False)

    def __eq__(self, other):
        return (isinstance(other, LinearForm) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"LinearForm({format_polynomial(self.polynomial())})"


# ---------------------------------------------------------------------------
# linear algebra over GF(p)

def invert_matrix(rows, p):
    """Inverse of a square matrix mod p, or None when singular."""
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)]
           for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % p), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [(v * inv) % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] % p:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [tuple(row[n:]) for row in aug]


def matrix_rank(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class LinearChange:
    """Invertible linear change of coordinates x_j -> sum_k m[j][k] x_k."""

    __slots__ = ("ring", "matrix", "inverse")

    def __init__(self, ring, matrix):
        matrix = tuple(tuple(c % ring.p for c in row) for row in matrix)
        if len(matrix) != ring.n or any(len(r) != ring.n for r in matrix):
            raise ValueError("matrix must be n x n")
        inv = invert_matrix(matrix, ring.p)
        if inv is None:
            raise ValueError("singular change of coordinates")
        self.ring = ring
        self.matrix = matrix
        self.inverse = tuple(inv)

    def inverted(self):
        return LinearChange(self.ring, self.inverse)

    def apply(self, f):
        """Substitute x_j -> sum_k m[j][k] x_k in f."""
        ring = self.ring
        images = []
        for j in range(ring.n):
            terms = {}
            for k, c in enumerate(self.matrix[j]):
                if c:
                    e = [0] * ring.n
                    e[k] = 1
                    terms[tuple(e)] = c
            images.append(Polynomial(ring, terms, normalize=False))
        powers = [{0: ring.one()} for _ in range(ring.n)]

        def power(j, k):
            cache = powers[j]
            if k not in cache:
                cache[k] = power(j, k - 1) * images[j]
            return cache[k]

        result = ring.zero()
        for e, c in f.terms.items():
            term = ring.constant(c)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            result = result + term
        return result

    def apply_form(self, z):
        """Image of a linear form under the change (may degenerate to zero)."""
        img = self.apply(z.polynomial())
        if img.is_zero():
            return None
        return LinearForm.from_polynomial(img)


def change_sending_form_to_last_variable(z):
    """Invertible change of coordinates mapping z to x_n."""
    ring = z.ring
    n = ring.n
    pivot = max(i for i, c in enumerate(z.coeffs) if c)
    rows = []
    for j in range(n - 1):
        e = [0] * n
        e[j if j < pivot else j + 1] = 1
        rows.append(tuple(e))
    rows.append(z.coeffs)
    inv = invert_matrix(rows, ring.p)
    return LinearChange(ring, inv)


def drop_last_variable(f, new_ring):
    """Substitute x_n = 0 and re-read f in the ring with one variable fewer."""
    terms = {}
    for e, c in f.terms.items():
        if e[-1] == 0:
            terms[e[:-1]] = c
    return Polynomial(new_ring, terms, normalize=False)


# ---------------------------------------------------------------------------
# text syntax: terms joined by +/-, decimal coefficients, variables x1..xn,
# powers via ^, juxtaposition for products (e.g. "x1^2 - 3x1x2").

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|[xyz])|(\^)|(\+)|(-))")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_polynomial(ring, text, aliases=False):
    """Parse the polynomial text syntax; exact and round-tripping."""
    alias_map = {}
    if aliases and ring.n <= 3:
        alias_map = {name: i for i, name in enumerate("xyz"[: ring.n])}
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
            break
        number, var, caret, plus, minus = m.groups()
        if number is not None:
            tokens.append(("num", int(number), pos))
        elif var is not None:
            if var.startswith("x") and var[1:].isdigit():
                idx = int(var[1:]) - 1
            elif var in alias_map:
                idx = alias_map[var]
            else:
                raise PolynomialSyntaxError(f"unknown variable {var!r}", pos)
            if not 0 <= idx < ring.n:
                raise PolynomialSyntaxError(f"variable {var!r} out of range", pos)
            tokens.append(("var", idx, pos))
        elif caret:
            tokens.append(("pow", None, pos))
        elif plus:
            tokens.append(("add", None, pos))
        else:
            tokens.append(("sub", None, pos))
        pos = m.end()
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial", 0)

    result = ring.zero()
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        kind = tokens[i][0]
        if kind in ("add", "sub"):
            sign = -1 if kind == "sub" else 1
            i += 1
        elif not first:
            raise PolynomialSyntaxError("expected + or - between terms", tokens[i][2])
        first = False
        coeff = 1
        exps = [0] * ring.n
        saw_factor = False
        if i < len(tokens) and tokens[i][0] == "num":
            coeff = tokens[i][1]
            saw_factor = True
            i += 1
        while i < len(tokens) and tokens[i][0] == "var":
            idx = tokens[i][1]
            i += 1
            power = 1
            if i < len(tokens) and tokens[i][0] == "pow":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "num":
                    where = tokens[i - 1][2]
                    raise PolynomialSyntaxError("expected exponent after ^", where)
                power = tokens[i][1]
                i += 1
            exps[idx] += power
            saw_factor = True
        if not saw_factor:
            raise PolynomialSyntaxError("expected a term",
                                        tokens[i][2] if i < len(tokens) else len(text))
        result = result + ring.monomial(exps, sign * coeff)
    return result


def format_monomial(e, aliases=False):
    n = len(e)
    names = list("xyz"[:n]) if aliases and n <= 3 else [f"x{i+1}" for i in range(n)]
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "".join(parts) if parts else "1"


def format_polynomial(f, aliases=False):
    if f.is_zero():
        return "0"
    out = []
    for e in sorted(f.terms, key=grevlex_key, reverse=True):
        c = f.terms[e]
        mono = format_monomial(e, aliases)
        if mono == "1":
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}{mono}"
        out.append(("+ " if out else "") + body)
    return " ".join(out)
