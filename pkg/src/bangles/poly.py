"""Exact multivariate Laurent polynomials and subtraction-free rationals.

Representation: a polynomial is a dict mapping exponent tuples (length =
number of variables, negative entries allowed) to nonzero int coefficients.
The zero polynomial is the empty dict.  All arithmetic is exact; coefficients
are Python ints, so matching counts can grow without overflow.

Term order is graded lexicographic (total degree first, then the exponent
tuple); it fixes printing, equality of rendered forms, and the leading term
used by exact division.

Rationals are unreduced num/den pairs compared by cross-multiplication
(`rf_eq`); no gcd is ever computed.

The two inner loops (term merge and product accumulation) live in
`_polykernel` (compiled) with `_polypure` as fallback; `BACKEND` records
which one is active.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

try:  # pragma: no cover - which backend wins depends on the build
    from . import _polykernel as _kernel

    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    from . import _polypure as _kernel

    BACKEND = "pure"

Exponent = Tuple[int, ...]
Poly = Dict[Exponent, int]


class ArityError(ValueError):
    """Operands live in rings with different numbers of variables."""


class InexactDivisionError(ArithmeticError):
    """Laurent division left a nonzero remainder."""


class NotSubtractionFreeError(ValueError):
    """A negative coefficient reached a subtraction-free context."""


# ---------------------------------------------------------------------------
# constructors


def lp_zero() -> Poly:
    return {}


def lp_const(nvars: int, c: int) -> Poly:
    return {(0,) * nvars: c} if c else {}


def lp_one(nvars: int) -> Poly:
    return lp_const(nvars, 1)


def lp_var(nvars: int, i: int, power: int = 1) -> Poly:
    """The monomial variable_i^power (0-based i)."""
    if not 0 <= i < nvars:
        raise IndexError(f"variable {i} out of range for arity {nvars}")
    if power == 0:
        return lp_one(nvars)
    e = [0] * nvars
    e[i] = power
    return {tuple(e): 1}


def lp_monomial(e: Sequence[int], c: int = 1) -> Poly:
    return {tuple(e): c} if c else {}


def lp_arity(p: Poly) -> int | None:
    """Number of variables, or None for the zero polynomial."""
    for e in p:
        return len(e)
    return None


def _check_arity(p: Poly, q: Poly) -> None:
    a, b = lp_arity(p), lp_arity(q)
    if a is not None and b is not None and a != b:
        raise ArityError(f"arity mismatch: {a} vs {b}")


# ---------------------------------------------------------------------------
# ring operations


def lp_add(p: Poly, q: Poly) -> Poly:
    _check_arity(p, q)
    return _kernel.add_merge(p, q)


def lp_neg(p: Poly) -> Poly:
    return {e: -c for e, c in p.items()}


def lp_sub(p: Poly, q: Poly) -> Poly:
    return lp_add(p, lp_neg(q))


def lp_scale(p: Poly, c: int) -> Poly:
    if c == 0:
        return {}
    return {e: c * v for e, v in p.items()}


def lp_mul(p: Poly, q: Poly) -> Poly:
    _check_arity(p, q)
    return _kernel.mul_accum(p, q)


def lp_mono_mul(p: Poly, e: Sequence[int], c: int = 1) -> Poly:
    """Multiply by the monomial c * vars^e (fast path, no dict churn)."""
    if c == 0:
        return {}
    et = tuple(e)
    return {tuple(x + y for x, y in zip(k, et)): c * v for k, v in p.items()}


def lp_pow(p: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative power of a polynomial; use rf_pow")
    n = lp_arity(p)
    out = lp_one(n if n is not None else 0)
    base = p
    while k:
        if k & 1:
            out = lp_mul(out, base)
        base_needed = k >> 1
        if base_needed:
            base = lp_mul(base, base)
        k = base_needed
    return out


def lp_is_monomial(p: Poly) -> bool:
    return len(p) == 1


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


def lp_leading(p: Poly) -> Tuple[Exponent, int]:
    """Leading term under graded lex; raises on zero."""
    if not p:
        raise ValueError("zero polynomial has no leading term")
    e = max(p, key=grlex_key)
    return e, p[e]


def lp_sorted_terms(p: Poly) -> List[Tuple[Exponent, int]]:
    return sorted(p.items(), key=lambda t: grlex_key(t[0]))


def lp_divexact(p: Poly, q: Poly, max_steps: int = 100_000) -> Poly:
    """Exact quotient p/q in the Laurent ring.

    Long division on graded-lex leading terms.  In the Laurent ring every
    monomial divides every other, so each step cancels the remainder's
    leading term; for exact quotients the number of steps equals the number
    of quotient terms.  A nonzero final remainder (or a blown step budget,
    which only an inexact division can produce here) raises.
    """
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    _check_arity(p, q)
    if not p:
        return {}
    eq, cq = lp_leading(q)
    quot: Poly = {}
    rem = dict(p)
    steps = 0
    while rem:
        steps += 1
        if steps > max_steps:
            raise InexactDivisionError("division did not terminate; quotient is not a Laurent polynomial")
        er, cr = lp_leading(rem)
        c, leftover = divmod(cr, cq)
        if leftover:
            raise InexactDivisionError(f"leading coefficient {cr} not divisible by {cq}")
        e = tuple(x - y for x, y in zip(er, eq))
        quot[e] = c
        rem = lp_sub(rem, lp_mono_mul(q, e, c))
    return quot


# ---------------------------------------------------------------------------
# tropical evaluation


def assert_subtraction_free(p: Poly) -> None:
    if any(c < 0 for c in p.values()):
        raise NotSubtractionFreeError("polynomial has a negative coefficient")


def trop_eval(p: Poly, c: Sequence[int]) -> int:
    """min over exponent vectors e of p of the dot product c . e.

    This is evaluation in the tropical semifield Trop(u) at u^{c_i}: the sum
    of two powers of u is the power with the smaller exponent, so a
    subtraction-free p evaluates to u^(the returned integer).
    """
    if not p:
        raise ValueError("tropical evaluation of zero polynomial")
    assert_subtraction_free(p)
    cv = tuple(c)
    if any(len(e) != len(cv) for e in p):
        raise ArityError("weight vector arity mismatch")
    return min(sum(x * y for x, y in zip(e, cv)) for e in p)


# ---------------------------------------------------------------------------
# subtraction-free rationals


@dataclass(frozen=True)
class PosRational:
    """Unreduced fraction of Laurent polynomials; equality via rf_eq."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if not self.num or not self.den:
            raise ZeroDivisionError("PosRational parts must be nonzero")


def rf(num: Poly, den: Poly) -> PosRational:
    return PosRational(num, den)


def rf_from_poly(p: Poly) -> PosRational:
    n = lp_arity(p)
    return PosRational(p, lp_one(n if n is not None else 0))


def rf_one(nvars: int) -> PosRational:
    return PosRational(lp_one(nvars), lp_one(nvars))


def rf_var(nvars: int, i: int) -> PosRational:
    return PosRational(lp_var(nvars, i), lp_one(nvars))


def rf_mul(a: PosRational, b: PosRational) -> PosRational:
    return PosRational(lp_mul(a.num, b.num), lp_mul(a.den, b.den))


def rf_inv(a: PosRational) -> PosRational:
    return PosRational(a.den, a.num)


def rf_add(a: PosRational, b: PosRational) -> PosRational:
    return PosRational(
        lp_add(lp_mul(a.num, b.den), lp_mul(b.num, a.den)),
        lp_mul(a.den, b.den),
    )


def rf_pow(a: PosRational, k: int) -> PosRational:
    if k < 0:
        return rf_pow(rf_inv(a), -k)
    return PosRational(lp_pow(a.num, k), lp_pow(a.den, k))


def rf_eq(a: PosRational, b: PosRational) -> bool:
    return lp_mul(a.num, b.den) == lp_mul(b.num, a.den)


def lp_substitute(p: Poly, args: Sequence[PosRational]) -> PosRational:
    """Substitute args[i] for variable i; result stays unreduced.

    Evaluates term by term over a common denominator D = prod den_i^{spread}
    chosen per term, which keeps the denominator a plain product (no gcd).
    """
    n = lp_arity(p)
    if n is None:
        raise ValueError("cannot substitute into the zero polynomial (arity unknown)")
    if len(args) != n:
        raise ArityError(f"expected {n} substitution values, got {len(args)}")
    if not args:
        return rf_from_poly(p)
    out = None
    for e, c in p.items():
        term = rf_from_poly(lp_const(_rf_arity(args[0]), c))
        for i, a in enumerate(args):
            if e[i]:
                term = rf_mul(term, rf_pow(a, e[i]))
        out = term if out is None else rf_add(out, term)
    assert out is not None
    return out


def _rf_arity(a: PosRational) -> int:
    n = lp_arity(a.num)
    if n is None:
        n = lp_arity(a.den)
    return 0 if n is None else n


# ---------------------------------------------------------------------------
# text form: `1 + y2 + y1*y2`, exponents as `^k`, 1-based variable names


def var_names(prefix: str, n: int) -> List[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


def xy_names(n: int) -> List[str]:
    """Joint naming for 2n-variable values laid out as x_1..x_n, y_1..y_n."""
    return var_names("x", n) + var_names("y", n)


def lp_format(p: Poly, names: Sequence[str]) -> str:
    if not p:
        return "0"
    parts: List[str] = []
    for e, c in lp_sorted_terms(p):
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(names[i])
            elif k:
                factors.append(f"{names[i]}^{k}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)


def lp_parse(text: str, names: Sequence[str]) -> Poly:
    """Parse the grammar produced by lp_format (sums of integer monomials)."""
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    tokens = _tokenize(text)
    pos = 0
    out: Poly = {}

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    first = True
    while peek() is not None:
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
            first = False
        if peek() is None:
            raise ValueError("dangling sign in polynomial text")
        coeff = sign
        e = [0] * n
        expect_factor = True
        while expect_factor:
            tok = take()
            if tok.lstrip("-").isdigit():
                coeff *= int(tok)
            elif tok in index:
                k = 1
                if peek() == "^":
                    take()
                    k = int(take())
                e[index[tok]] += k
            else:
                raise ValueError(f"unknown token {tok!r}")
            if peek() == "*":
                take()
            else:
                expect_factor = False
        out = lp_add(out, lp_monomial(e, coeff))
        first = False
    if first:
        raise ValueError("empty polynomial text")
    return out


def _tokenize(text: str) -> List[str]:
    tokens: List[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^":
            # a sign directly after ^ binds to the exponent number
            if ch == "-" and tokens and tokens[-1] == "^" and i + 1 < len(text) and text[i + 1].isdigit():
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(text[i:j])
                i = j
            else:
                tokens.append(ch)
                i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r}")
    return tokens
