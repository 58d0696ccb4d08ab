"""Exact scalars and sign combinatorics.

Everything downstream runs over the rationals: coefficients are
`fractions.Fraction` or sparse multivariate polynomials with Fraction
coefficients.  Permutations, shuffles, Koszul signs and Bell numbers live
here too, since every bracket formula downstream is a signed sum over
shuffles.  No floats anywhere.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


class CapExceeded(Exception):
    """Raised when a combinatorial enumeration would blow past its cap."""


DEFAULT_SHUFFLE_CAP = 12


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like '-3/2' to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_str(q: Fraction) -> str:
    return str(q)


# ---------------------------------------------------------------------------
# sparse polynomials over Q
# ---------------------------------------------------------------------------

def _default_names(nvars: int) -> tuple[str, ...]:
    if nvars <= 3:
        return ("x", "y", "z")[:nvars]
    return tuple(f"x{i}" for i in range(1, nvars + 1))


class Poly:
    """Sparse polynomial in `nvars` variables with Fraction coefficients.

    Terms are stored as {exponent tuple: coefficient} with no zero
    coefficients.  A polynomial in zero variables is just a rational
    number wearing a hat; the constant Lie-Rinehart family uses that.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for expo, coeff in (terms.items() if isinstance(terms, dict) else terms):
                expo = tuple(int(e) for e in expo)
                if len(expo) != nvars or any(e < 0 for e in expo):
                    raise ValueError(f"bad exponent tuple {expo} for {nvars} variables")
                coeff = as_rational(coeff)
                if coeff:
                    acc = clean.get(expo, Fraction(0)) + coeff
                    if acc:
                        clean[expo] = acc
                    else:
                        clean.pop(expo, None)
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        value = as_rational(value)
        return cls(nvars, {(0,) * nvars: value} if value else None)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        # index is 0-based
        assert 0 <= index < nvars
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {expo: Fraction(1)})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def max_degree(self) -> int:
        """Total degree; zero polynomial reports -1 so windows stay honest."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_components(self) -> dict[int, "Poly"]:
        out: dict[int, dict] = {}
        for expo, c in self.terms.items():
            out.setdefault(sum(expo), {})[expo] = c
        return {d: Poly(self.nvars, t) for d, t in sorted(out.items())}

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts")

    def __add__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction, str)):
                return NotImplemented
            other = Poly.const(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for expo, c in other.terms.items():
            acc = terms.get(expo, Fraction(0)) + c
            if acc:
                terms[expo] = acc
            else:
                terms.pop(expo, None)
        out = Poly(self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction, str)):
                return NotImplemented
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction, str)):
                return NotImplemented
            q = as_rational(other)
            if not q:
                return Poly(self.nvars)
            out = Poly(self.nvars)
            out.terms = {e: c * q for e, c in self.terms.items()}
            return out
        self._check(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(expo, Fraction(0)) + c1 * c2
                if acc:
                    terms[expo] = acc
                else:
                    terms.pop(expo, None)
        out = Poly(self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        assert k >= 0
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus ------------------------------------------------------------

    def diff(self, index: int) -> "Poly":
        """Partial derivative with respect to the 0-based variable `index`."""
        assert 0 <= index < self.nvars
        terms = {}
        for expo, c in self.terms.items():
            k = expo[index]
            if k:
                dexpo = expo[:index] + (k - 1,) + expo[index + 1:]
                terms[dexpo] = terms.get(dexpo, Fraction(0)) + c * k
        return Poly(self.nvars, terms)

    def substitute(self, images: tuple["Poly", ...]) -> "Poly":
        """Ring morphism: plug `images[i]` in for variable i."""
        assert len(images) == self.nvars
        nv = images[0].nvars if images else 0
        out = Poly.zero(nv) if images else None
        if not images:
            # zero variables: constants map to constants of the target ring
            raise ValueError("substitute needs a target arity; use const()")
        for expo, c in self.terms.items():
            term = Poly.const(nv, c)
            for img, e in zip(images, expo):
                if e:
                    term = term * img ** e
            out = out + term
        return out

    # -- formatting ----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    __repr__ = __str__


def format_poly(p: Poly, names: tuple[str, ...] | None = None) -> str:
    """Canonical string form, graded-lexicographic from the top."""
    if not p.terms:
        return "0"
    names = names or _default_names(p.nvars)
    keyed = sorted(p.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))
    chunks = []
    for expo, coeff in keyed:
        factors = []
        for name, e in zip(names, expo):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(coeff))] + factors)
        sign = "-" if coeff < 0 else "+"
        chunks.append((sign, body))
    first_sign, first_body = chunks[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


_TERM_RE = re.compile(r"^[+-]?\s*[^+-]*(?:[+-]\d+)?")


def parse_poly(text: str, nvars: int, names: tuple[str, ...] | None = None) -> Poly:
    """Parse the format emitted by `format_poly` (and reasonable variants)."""
    names = names or _default_names(nvars)
    index = {n: i for i, n in enumerate(names)}
    text = text.strip()
    if not text or text == "0":
        return Poly.zero(nvars)
    # split into signed terms at top level (no parentheses in the grammar)
    pieces: list[str] = []
    current = ""
    for ch in text:
        if ch in "+-" and current.strip() and not current.rstrip().endswith(("^", "*", "/")):
            pieces.append(current)
            current = ch
        else:
            current += ch
    pieces.append(current)
    result = Poly.zero(nvars)
    for piece in pieces:
        piece = piece.strip()
        sign = Fraction(1)
        while piece and piece[0] in "+-":
            if piece[0] == "-":
                sign = -sign
            piece = piece[1:].strip()
        if not piece:
            raise ValueError(f"dangling sign in polynomial {text!r}")
        coeff = sign
        expo = [0] * nvars
        for factor in piece.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            if "^" in factor:
                name, _, power = factor.partition("^")
                k = int(power)
            else:
                name, k = factor, 1
            name = name.strip()
            if name not in index:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            expo[index[name]] += k
        result = result + Poly(nvars, {tuple(expo): coeff})
    return result


# ---------------------------------------------------------------------------
# permutations, shuffles and the Koszul sign
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..k} stored as its tuple of images s(1..k)."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    def __len__(self):
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a - 1]

    @staticmethod
    def identity(k: int) -> "Permutation":
        return Permutation(tuple(range(1, k + 1)))

    def compose(self, other: "Permutation") -> "Permutation":
        """(self.compose(other))(a) = self(other(a)), i.e. apply `other` first."""
        assert len(self) == len(other)
        return Permutation(tuple(self(other(a)) for a in range(1, len(self) + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for a, b in enumerate(self.images, start=1):
            inv[b - 1] = a
        return Permutation(tuple(inv))

    def sign(self) -> int:
        inv = 0
        im = self.images
        for a in range(len(im)):
            for b in range(a + 1, len(im)):
                if im[a] > im[b]:
                    inv += 1
        return -1 if inv % 2 else 1

    def permute(self, seq):
        """Reordered tuple whose a-th entry is seq[s(a)-1]."""
        return tuple(seq[self(a) - 1] for a in range(1, len(self) + 1))


def koszul_sign(perm: Permutation, degrees) -> int:
    """Sign picked up by permuting graded objects of the given degrees.

    Convention: v_1 x ... x v_k = sign * v_{s(1)} x ... x v_{s(k)}, and each
    transposition of adjacent factors of degrees p, q contributes (-1)^(p*q).
    Computed as a product over inversions of s.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != len(perm):
        raise ValueError("degree list does not match permutation length")
    parity = 0
    im = perm.images
    for a in range(len(im)):
        for b in range(a + 1, len(im)):
            if im[a] > im[b]:
                parity += degrees[im[a] - 1] * degrees[im[b] - 1]
    return -1 if parity % 2 else 1


@dataclass(frozen=True)
class ShuffleSet:
    """All (p_1,...,p_r)-shuffles, in lexicographic order of image tuples."""

    block_sizes: tuple[int, ...]
    perms: tuple[Permutation, ...]

    def __iter__(self):
        return iter(self.perms)

    def __len__(self):
        return len(self.perms)


def enumerate_shuffles(block_sizes, cap: int = DEFAULT_SHUFFLE_CAP) -> ShuffleSet:
    """(p_1,...,p_r)-shuffles: ascending images inside each block of positions.

    The total p_1+...+p_r is capped (there are multinomially many shuffles).
    """
    sizes = tuple(int(p) for p in block_sizes)
    if any(p < 0 for p in sizes):
        raise ValueError(f"negative block size in {sizes}")
    total = sum(sizes)
    if total > cap:
        raise CapExceeded(f"shuffle degree {total} exceeds cap {cap}")

    def fill(remaining: tuple[int, ...], blocks: tuple[int, ...]):
        if not blocks:
            yield ()
            return
        p, rest = blocks[0], blocks[1:]
        for chosen in itertools.combinations(remaining, p):
            left = tuple(v for v in remaining if v not in chosen)
            for tail in fill(left, rest):
                yield chosen + tail

    perms = sorted(fill(tuple(range(1, total + 1)), sizes))
    return ShuffleSet(sizes, tuple(Permutation(images) for images in perms))


def shuffles(p: int, q: int, cap: int = DEFAULT_SHUFFLE_CAP) -> ShuffleSet:
    return enumerate_shuffles((p, q), cap=cap)


# ---------------------------------------------------------------------------
# Bell numbers
# ---------------------------------------------------------------------------

_BELL_CACHE = [1]

DEFAULT_BELL_CAP = 64


def bell(k: int, cap: int = DEFAULT_BELL_CAP) -> int:
    """k-th Bell number, B_0 = 1, via B_{k+1} = sum_p C(k,p) B_p."""
    if k < 0:
        raise ValueError("Bell numbers start at k = 0")
    if k > cap:
        raise CapExceeded(f"Bell index {k} exceeds cap {cap}")
    while len(_BELL_CACHE) <= k:
        m = len(_BELL_CACHE) - 1
        _BELL_CACHE.append(sum(math.comb(m, p) * _BELL_CACHE[p] for p in range(m + 1)))
    return _BELL_CACHE[k]


def bell_identity_check(k: int) -> bool:
    """Exactly test sum_{q=2}^{k-1} (k-2)!/((q-1)!(k-1-q)!) B_{q-1} = B_{k-1} - B_0.

    The factorial ratio is the integer binomial C(k-2, q-1), so the whole
    identity is checked in integer arithmetic.
    """
    if k < 3:
        raise ValueError("identity needs k >= 3")
    lhs = sum(math.comb(k - 2, q - 1) * bell(q - 1) for q in range(2, k))
    return lhs == bell(k - 1) - bell(0)
