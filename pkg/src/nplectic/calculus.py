"""Exterior calculus: pairing, contraction, differential, Lie derivative,
the odd graded (Schouten-type) bracket and the higher tensor brackets.

Conventions, once and for all:

* tensors are graded by wedge-word length, cotensors by minus that;
* the pairing of basis words is the Kronecker delta (it is the
  determinant pairing evaluated on ascending words);
* contraction is the signed Laplace expansion, first wedge letter first,
  so that <i_x f, y> = <f, x ^ y>;
* the differential is the Q-linear operator fixed by its values on basis
  cotensors with ring coefficients (it is a first-order operator, not an
  A-module map: d(x^2) = 2x dx);
* the odd bracket is the biderivation extending the pair bracket, the
  action and zero on ring pairs, with [u,v] = -(-1)^((|u|-1)(|v|-1)) [v,u].

Every identity these operators are supposed to satisfy is enforced by the
test suite rather than assumed; the randomized Cartan-rule suite in
`identities` is the arbiter for the sign conventions.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .elements import Cotensor, Tensor, ascending_words, sort_word, wedge_list
from .scalars import DEFAULT_SHUFFLE_CAP, Poly, enumerate_shuffles, koszul_sign


def pairing(f: Cotensor, x: Tensor) -> Poly:
    """Natural pairing <f, x>; zero across mismatched degrees."""
    if f.pair != x.pair:
        raise ValueError("pairing across different pairs")
    out = Poly.zero(f.pair.poly_nvars)
    for w, b in f.terms.items():
        a = x.terms.get(w)
        if a is not None:
            out = out + a * b
    return out


def contract(x: Tensor, f: Cotensor) -> Cotensor:
    """Contraction i_x f by signed Laplace expansion (first letter first).

    Adjoint to wedging on the right: <i_x f, y> = <f, x ^ y>.  A ring
    element in degree zero just scales: i_a f = a f.
    """
    if x.pair != f.pair:
        raise ValueError("contraction across different pairs")
    acc: dict[tuple[int, ...], Poly] = {}
    for wx, a in x.terms.items():
        for wf, b in f.terms.items():
            letters = list(wf)
            sign = 1
            for g in wx:
                if g not in letters:
                    sign = 0
                    break
                at = letters.index(g)
                if at % 2:
                    sign = -sign
                del letters[at]
            if sign == 0:
                continue
            coeff = a * b * sign
            key = tuple(letters)
            prev = acc.get(key)
            coeff = coeff if prev is None else prev + coeff
            if coeff.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = coeff
    out = Cotensor.zero(f.pair)
    out.terms = acc
    return out


def ce_differential(f: Cotensor) -> Cotensor:
    """The degree -1 differential of the pair.

    On a word-length-l piece the coefficient of a target word W of length
    l+1 is the alternating sum of derivations of the deleted-letter
    coefficients plus the alternating bracket-insertion sum:

        df(x_0..x_l) = sum_j (-1)^j D_{x_j} f(.. ^x_j ..)
                     + sum_{i<j} (-1)^{i+j} f([x_i,x_j], .. ^x_i .. ^x_j ..)

    evaluated on basis tuples.
    """
    pair = f.pair
    acc: dict[tuple[int, ...], Poly] = {}

    def put(word, coeff):
        if coeff.is_zero():
            return
        prev = acc.get(word)
        coeff = coeff if prev is None else prev + coeff
        if coeff.is_zero():
            acc.pop(word, None)
        else:
            acc[word] = coeff

    by_length: dict[int, dict] = {}
    for w, c in f.terms.items():
        by_length.setdefault(len(w), {})[w] = c

    for length, terms in by_length.items():
        for target in ascending_words(pair.ngens, length + 1):
            val = Poly.zero(pair.poly_nvars)
            # derivation part
            for j, g in enumerate(target):
                rest = target[:j] + target[j + 1:]
                inner = terms.get(rest)
                if inner is not None:
                    contrib = pair.action_basis(g, inner)
                    val = val + (contrib if j % 2 == 0 else -contrib)
            # bracket-insertion part
            for i in range(length + 1):
                for j in range(i + 1, length + 1):
                    rows = pair.bracket_basis(target[i], target[j])
                    if not rows:
                        continue
                    rest = tuple(g for t, g in enumerate(target) if t not in (i, j))
                    outer = -1 if (i + j) % 2 else 1
                    for k, c in rows:
                        sign, norm = sort_word((k,) + rest)
                        if sign == 0:
                            continue
                        inner = terms.get(norm)
                        if inner is not None:
                            val = val + (outer * sign) * c * inner
            put(target, val)
    out = Cotensor.zero(pair)
    out.terms = acc
    return out


def lie_derivative(x: Tensor, f: Cotensor) -> Cotensor:
    """Cartan's formula L_x f = d i_x f - (-1)^|x| i_x df, degree |x| - 1."""
    out = Cotensor.zero(f.pair)
    df = None
    for deg, part in x.homogeneous_parts().items():
        out = out + ce_differential(contract(part, f))
        if df is None:
            df = ce_differential(f)
        term = contract(part, df)
        out = out + (-term if deg % 2 == 0 else term)
    return out


# ---------------------------------------------------------------------------
# the odd graded bracket
# ---------------------------------------------------------------------------

def schouten(u: Tensor, v: Tensor) -> Tensor:
    """Odd bracket on the exterior tensor algebra.

    Generated by the pair bracket on vectors, the action on
    (vector, ring) pairs and zero on ring pairs, extended as a
    biderivation: [u, v^w] = [u,v]^w + (-1)^((|u|-1)|v|) v^[u,w] and the
    matching left rule, with graded antisymmetry
    [u,v] = -(-1)^((|u|-1)(|v|-1)) [v,u].  Degree |u| + |v| - 1.
    """
    if u.pair != v.pair:
        raise ValueError("bracket across different pairs")
    pair = u.pair
    one = Poly.const(pair.poly_nvars, 1)
    total = Tensor.zero(pair)
    for wu, cu in u.terms.items():
        ugens = ([cu] if cu != one else []) + list(wu)
        for wv, cv in v.terms.items():
            vgens = ([cv] if cv != one else []) + list(wv)
            total = total + _bracket_gens(pair, ugens, vgens)
    return total


def _gen_degree(gen) -> int:
    return 1 if isinstance(gen, int) else 0


def _gens_degree(gens) -> int:
    return sum(_gen_degree(g) for g in gens)


def _gens_tensor(pair, gens) -> Tensor:
    out = Tensor.scalar(pair, 1)
    for g in gens:
        if isinstance(g, int):
            out = out.wedge(Tensor.basis(pair, (g,)))
        else:
            out = g * out
    return out


def _bracket_gens(pair, ugens, vgens) -> Tensor:
    """Bracket of wedge words of generators (ring elements and basis vectors)."""
    if not ugens or not vgens:
        return Tensor.zero(pair)  # the empty word is the unit, killed by both slots
    if len(ugens) == 1 and len(vgens) == 1:
        a, b = ugens[0], vgens[0]
        if isinstance(a, int) and isinstance(b, int):
            return Tensor(pair, [((k,), c) for k, c in pair.bracket_basis(a, b)])
        if isinstance(a, int):
            return Tensor.scalar(pair, pair.action_basis(a, b))
        if isinstance(b, int):
            return Tensor.scalar(pair, -pair.action_basis(b, a))
        return Tensor.zero(pair)
    if len(ugens) > 1:
        # [u0 ^ U, W] = u0 ^ [U, W] + (-1)^((|W|-1)|U|) [u0, W] ^ U
        u0, urest = ugens[0], ugens[1:]
        first = _gens_tensor(pair, [u0]).wedge(_bracket_gens(pair, urest, vgens))
        second = _bracket_gens(pair, [u0], vgens).wedge(_gens_tensor(pair, urest))
        sign = -1 if ((_gens_degree(vgens) - 1) * _gens_degree(urest)) % 2 else 1
        return first + (second if sign == 1 else -second)
    # [u, w0 ^ W] = [u, w0] ^ W + (-1)^((|u|-1)|w0|) w0 ^ [u, W]
    w0, wrest = vgens[0], vgens[1:]
    first = _bracket_gens(pair, ugens, [w0]).wedge(_gens_tensor(pair, wrest))
    second = _gens_tensor(pair, [w0]).wedge(_bracket_gens(pair, ugens, wrest))
    sign = -1 if ((_gens_degree(ugens) - 1) * _gen_degree(w0)) % 2 else 1
    return first + (second if sign == 1 else -second)


# ---------------------------------------------------------------------------
# higher brackets and the inclusion
# ---------------------------------------------------------------------------

def _hom_tuples(xs):
    """Cartesian product of homogeneous parts, with their degree tuples."""
    split = []
    for x in xs:
        parts = x.homogeneous_parts()
        if not parts:
            return
        split.append(sorted(parts.items()))
    for combo in itertools.product(*split):
        degs = tuple(d for d, _ in combo)
        parts = tuple(p for _, p in combo)
        yield degs, parts


def higher_bracket(k: int, xs, cap: int = DEFAULT_SHUFFLE_CAP) -> Tensor:
    """k-ary graded symmetric bracket on the exterior tensor algebra.

    [x_1..x_k] = sum over (2, k-2)-shuffles s of
        sign(s; x) * (-1)^|x_{s(1)}| * x_{s(k)} ^ .. ^ x_{s(3)} ^ [x_{s(2)}, x_{s(1)}]

    Degree -1 as a multilinear map; the unary bracket is zero.
    """
    xs = list(xs)
    if len(xs) != k:
        raise ValueError(f"expected {k} arguments, got {len(xs)}")
    pair = xs[0].pair
    if k == 1:
        return Tensor.zero(pair)
    shuffle_set = enumerate_shuffles((2, k - 2), cap=cap)
    total = Tensor.zero(pair)
    for degs, parts in _hom_tuples(xs):
        for s in shuffle_set:
            sign = koszul_sign(s, degs)
            if degs[s(1) - 1] % 2:
                sign = -sign
            inner = schouten(parts[s(2) - 1], parts[s(1) - 1])
            if inner.is_zero():
                continue
            tail = [parts[s(t) - 1] for t in range(k, 2, -1)]
            term = wedge_list(pair, Tensor, tail).wedge(inner)
            total = total + sign * term
    return total


def natural_inclusion(k: int, xs) -> Tensor:
    """Inclusion component (x_1..x_k) -> (-1)^(k-1) (k-1)! x_k ^ .. ^ x_1."""
    xs = list(xs)
    if len(xs) != k or k < 1:
        raise ValueError("arity mismatch")
    pair = xs[0].pair
    coeff = Fraction(math.factorial(k - 1))
    if (k - 1) % 2:
        coeff = -coeff
    return coeff * wedge_list(pair, Tensor, list(reversed(xs)))


def tensor_jacobi_residual(xs, cap: int = DEFAULT_SHUFFLE_CAP) -> Tensor:
    """Weak Jacobi residual for the higher brackets at arity n = len(xs).

    sum_{i+j=n+1} sum_{s in Sh(j, n-j)} sign(s; x)
        [ [x_{s(1)}..x_{s(j)}]_j, x_{s(j+1)}..x_{s(n)} ]_i

    Exactly zero when the brackets form a homotopy Lie structure.
    """
    xs = list(xs)
    n = len(xs)
    pair = xs[0].pair
    if any(x.is_zero() for x in xs):
        return Tensor.zero(pair)
    total = Tensor.zero(pair)
    for degs, parts in _hom_tuples(xs):
        for j in range(1, n + 1):
            i = n + 1 - j
            for s in enumerate_shuffles((j, n - j), cap=cap):
                sign = koszul_sign(s, degs)
                inner = higher_bracket(j, [parts[s(t) - 1] for t in range(1, j + 1)], cap=cap)
                if inner.is_zero():
                    continue
                outer = higher_bracket(
                    i, [inner] + [parts[s(t) - 1] for t in range(j + 1, n + 1)], cap=cap)
                total = total + sign * outer
    return total
