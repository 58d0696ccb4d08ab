"""Concrete Lie-Rinehart pairs and their axiom checks.

A pair couples a commutative coefficient ring A with a Lie algebra g that
is simultaneously a finitely generated free A-module, acting on A by
derivations.  Two families are implemented:

* `ConstantPair`: A = Q with the zero action; the bracket is given by
  structure constants on a finite basis e_1..e_d.
* `PolyVectorFieldPair`: A = Q[x_1..x_m] and g the free module on the
  coordinate derivations, with the usual vector-field bracket.

Both are torsionless (free modules embed in their double dual), which the
validator spot-checks through the nondegeneracy of the basis pairing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .elements import Tensor
from .report import Report
from .sampling import random_coeff, random_gvector
from .scalars import Poly, _default_names, as_rational, format_poly, parse_poly


@dataclass(frozen=True)
class ConstantPair:
    """Constant coefficients: A = Q, zero anchor, structure-constant bracket.

    `brackets` holds (i, j, k, c) rows with i < j meaning the e_k
    coefficient of [e_i, e_j] is c.  Missing rows are zero.  The Jacobi
    identity is deliberately not enforced here; `validate_pair` reports it.
    """

    dim: int
    brackets: tuple[tuple[int, int, int, Fraction], ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("need at least one generator")
        seen = set()
        rows = []
        for row in self.brackets:
            i, j, k, c = row
            if not (1 <= i < j <= self.dim and 1 <= k <= self.dim):
                raise ValueError(f"bad structure constant indices {row}")
            if (i, j, k) in seen:
                raise ValueError(f"duplicate structure constant {row}")
            seen.add((i, j, k))
            c = as_rational(c)
            if c:
                rows.append((i, j, k, c))
        object.__setattr__(self, "brackets", tuple(sorted(rows)))

    @classmethod
    def from_brackets(cls, dim: int, table: dict) -> "ConstantPair":
        """Build from {(i, j): {k: c}}; rows with i > j are sign-folded."""
        rows = {}
        for (i, j), entry in table.items():
            flip = 1
            if i > j:
                i, j, flip = j, i, -1
            for k, c in entry.items():
                c = as_rational(c) * flip
                key = (i, j, k)
                rows[key] = rows.get(key, Fraction(0)) + c
        return cls(dim, tuple((i, j, k, c) for (i, j, k), c in rows.items() if c))

    # descriptor protocol used by elements and everything downstream
    family = "constant"

    @property
    def ngens(self) -> int:
        return self.dim

    poly_nvars = 0
    var_names: tuple[str, ...] = ()

    def gen_name(self, g: int) -> str:
        return f"e{g}"

    def dual_name(self, g: int) -> str:
        return f"e^{g}"

    def coeff(self, value) -> Poly:
        return _coerce_coeff(self, value)

    def bracket_basis(self, i: int, j: int) -> list[tuple[int, Fraction]]:
        """[e_i, e_j] as (index, coefficient) rows."""
        if i == j:
            return []
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        return [(k, c * sign) for (a, b, k, c) in self.brackets if (a, b) == (i, j)]

    def action_basis(self, i: int, a: Poly) -> Poly:
        return Poly.zero(0)


@dataclass(frozen=True)
class PolyVectorFieldPair:
    """Polynomial coefficients: A = Q[x_1..x_m], g free on the d/dx_i."""

    nvars: int

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one variable")

    family = "poly"

    @property
    def ngens(self) -> int:
        return self.nvars

    @property
    def poly_nvars(self) -> int:
        return self.nvars

    @property
    def var_names(self) -> tuple[str, ...]:
        return _default_names(self.nvars)

    def gen_name(self, g: int) -> str:
        return "@" + self.var_names[g - 1]

    def dual_name(self, g: int) -> str:
        return "d" + self.var_names[g - 1]

    def coeff(self, value) -> Poly:
        return _coerce_coeff(self, value)

    def bracket_basis(self, i: int, j: int) -> list[tuple[int, Fraction]]:
        return []  # coordinate derivations commute

    def action_basis(self, i: int, a: Poly) -> Poly:
        return a.diff(i - 1)


PairDescriptor = ConstantPair | PolyVectorFieldPair


def _coerce_coeff(pair, value) -> Poly:
    if isinstance(value, Poly):
        if value.nvars != pair.poly_nvars:
            raise ValueError(f"coefficient in {value.nvars} variables over {pair}")
        return value
    if isinstance(value, str):
        return parse_poly(value, pair.poly_nvars, pair.var_names or None)
    return Poly.const(pair.poly_nvars, value)


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------

def pair_to_json(pair: PairDescriptor) -> dict:
    if pair.family == "constant":
        table: dict[str, dict[str, str]] = {}
        for i, j, k, c in pair.brackets:
            table.setdefault(f"{i},{j}", {})[str(k)] = str(c)
        return {"family": "constant", "dim": pair.dim, "brackets": table}
    return {"family": "poly", "vars": pair.nvars}


def pair_from_json(data: dict) -> PairDescriptor:
    family = data.get("family")
    if family == "constant":
        table = {}
        for key, entry in data.get("brackets", {}).items():
            i, j = (int(v) for v in key.split(","))
            table[(i, j)] = {int(k): Fraction(c) for k, c in entry.items()}
        return ConstantPair.from_brackets(int(data["dim"]), table)
    if family == "poly":
        return PolyVectorFieldPair(int(data["vars"]))
    raise ValueError(f"unknown pair family {family!r}")


# ---------------------------------------------------------------------------
# elements of the pair itself
# ---------------------------------------------------------------------------

def gvector(pair: PairDescriptor, coeffs) -> Tensor:
    """Module element sum_i coeffs[i] * e_i as a degree-one tensor."""
    return Tensor(pair, [((i,), c) for i, c in enumerate(coeffs, start=1)])


def gvector_coeffs(x: Tensor) -> list[Poly]:
    """Inverse of `gvector` for homogeneous degree-one tensors."""
    if not all(len(w) == 1 for w in x.terms):
        raise ValueError("not a degree-one tensor")
    zero = Poly.zero(x.pair.poly_nvars)
    return [x.terms.get((i,), zero) for i in range(1, x.pair.ngens + 1)]


def lie_bracket(x: Tensor, y: Tensor) -> Tensor:
    """Bracket of two module elements (degree-one tensors).

    On decomposables: [a e_i, b e_j] = a D_i(b) e_j - b D_j(a) e_i
    + a b [e_i, e_j], the unique extension of the basis bracket that is
    compatible with the action (Leibniz on both slots).
    """
    _require_vector(x)
    _require_vector(y)
    pair = x.pair
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

    for (i,), a in x.terms.items():
        for (j,), b in y.terms.items():
            put((j,), a * pair.action_basis(i, b))
            put((i,), -(b * pair.action_basis(j, a)))
            ab = a * b
            for k, c in pair.bracket_basis(i, j):
                put((k,), ab * c)
    out = Tensor.zero(pair)
    out.terms = acc
    return out


def action(x: Tensor, a) -> Poly:
    """The anchor: apply the derivation attached to x to the ring element a."""
    _require_vector(x)
    a = x.pair.coeff(a)
    out = Poly.zero(x.pair.poly_nvars)
    for (i,), coeff in x.terms.items():
        out = out + coeff * x.pair.action_basis(i, a)
    return out


def _require_vector(x: Tensor):
    if any(len(w) != 1 for w in x.terms):
        raise ValueError("expected a degree-one tensor (module element)")


def associated_graded_bracket(pair: PairDescriptor, u, v):
    """Bracket on A (+) g pairs: ((a,x),(b,y)) -> (D_x a + D_y b, [x,y]).

    This is the raw two-slot formula: each derivation eats the scalar
    riding with it, so the scalar slot is symmetric under swapping the
    arguments while the vector slot is antisymmetric.  The cross-applied
    bilinear bracket that underlies the graded embedding is
    `linf.PairLinf.bracket`.
    """
    a, x = u
    b, y = v
    return (action(x, a) + action(y, b), lie_bracket(x, y))


# ---------------------------------------------------------------------------
# axiom validation
# ---------------------------------------------------------------------------

def validate_pair(pair: PairDescriptor, samples: int = 25, seed: int = 0,
                  max_degree: int = 3) -> Report:
    """Randomized exact checks of the pair axioms, with witnesses on failure."""
    rng = random.Random(seed)
    report = Report("validate-pair", meta={
        "family": pair.family, "seed": seed, "samples": samples,
        "max_degree": max_degree,
    })

    def witness(**elems):
        return {k: repr(v) for k, v in elems.items()}

    # bracket antisymmetry
    bad = None
    for _ in range(samples):
        x, y = random_gvector(rng, pair, max_degree), random_gvector(rng, pair, max_degree)
        if not (lie_bracket(x, y) + lie_bracket(y, x)).is_zero():
            bad = witness(x=x, y=y)
            break
    report.add("bracket_antisymmetry", bad is None, **(bad or {}))

    # Jacobi, exhaustively on basis triples for the constant family
    bad = None
    if pair.family == "constant":
        basis = [gvector(pair, [1 if t == i else 0 for t in range(pair.dim)])
                 for i in range(pair.dim)]
        triples = [(basis[i], basis[j], basis[k])
                   for i in range(pair.dim)
                   for j in range(i + 1, pair.dim)
                   for k in range(j + 1, pair.dim)]
    else:
        triples = []
    triples += [(random_gvector(rng, pair, max_degree),
                 random_gvector(rng, pair, max_degree),
                 random_gvector(rng, pair, max_degree)) for _ in range(samples)]
    for x, y, z in triples:
        total = (lie_bracket(x, lie_bracket(y, z))
                 + lie_bracket(y, lie_bracket(z, x))
                 + lie_bracket(z, lie_bracket(x, y)))
        if not total.is_zero():
            bad = witness(x=x, y=y, z=z, residual=total)
            break
    report.add("jacobi", bad is None, **(bad or {}))

    # the action is by derivations
    bad = None
    for _ in range(samples):
        x = random_gvector(rng, pair, max_degree)
        a, b = random_coeff(rng, pair, max_degree), random_coeff(rng, pair, max_degree)
        if action(x, a * b) != action(x, a) * b + a * action(x, b):
            bad = witness(x=x, a=a, b=b)
            break
    report.add("action_derivation", bad is None, **(bad or {}))

    # Leibniz coupling of bracket and action
    bad = None
    for _ in range(samples):
        x, y = random_gvector(rng, pair, max_degree), random_gvector(rng, pair, max_degree)
        a = random_coeff(rng, pair, max_degree)
        lhs = lie_bracket(x, a * y)
        rhs = action(x, a) * y + a * lie_bracket(x, y)
        if lhs != rhs:
            bad = witness(x=x, a=a, y=y, lhs=lhs, rhs=rhs)
            break
    report.add("leibniz", bad is None, **(bad or {}))

    # the action is a Lie morphism
    bad = None
    for _ in range(samples):
        x, y = random_gvector(rng, pair, max_degree), random_gvector(rng, pair, max_degree)
        a = random_coeff(rng, pair, max_degree)
        lhs = action(lie_bracket(x, y), a)
        rhs = action(x, action(y, a)) - action(y, action(x, a))
        if lhs != rhs:
            bad = witness(x=x, y=y, a=a)
            break
    report.add("action_lie_morphism", bad is None, **(bad or {}))

    # torsionless spot-check: basis pairing against the dual basis
    ident = all(
        (Fraction(1) if i == j else Fraction(0)) == _basis_pairing(pair, i, j)
        for i in range(1, pair.ngens + 1) for j in range(1, pair.ngens + 1)
    )
    report.add("pairing_nondegenerate", ident)
    return report


def _basis_pairing(pair, i: int, j: int) -> Fraction:
    # <f^j, e_i> for the canonical dual basis
    return Fraction(1) if i == j else Fraction(0)


# ---------------------------------------------------------------------------
# morphisms of pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairMorphismCandidate:
    """Finite description of a would-be morphism of pairs.

    `f_images[v]` is the image of the v-th domain variable in the codomain
    ring (so f is the substitution morphism); `g_images[i]` is the image of
    the domain basis vector e_{i+1}, a degree-one codomain tensor.  g
    extends f-semilinearly: g(sum a_i e_i) = sum f(a_i) g(e_i).
    """

    domain: PairDescriptor
    codomain: PairDescriptor
    f_images: tuple[Poly, ...]
    g_images: tuple[Tensor, ...]

    def __post_init__(self):
        if len(self.f_images) != self.domain.poly_nvars:
            raise ValueError("need one ring image per domain variable")
        if len(self.g_images) != self.domain.ngens:
            raise ValueError("need one module image per domain generator")
        for img in self.f_images:
            if img.nvars != self.codomain.poly_nvars:
                raise ValueError("ring images live in the wrong ring")
        for img in self.g_images:
            if img.pair != self.codomain:
                raise ValueError("module images live over the wrong pair")
            if any(len(w) != 1 for w in img.terms):
                raise ValueError("module images must be degree-one tensors")

    def apply_f(self, a: Poly) -> Poly:
        if self.domain.poly_nvars == 0:
            return Poly.const(self.codomain.poly_nvars, a.constant_value())
        return a.substitute(self.f_images)

    def apply_g(self, x: Tensor) -> Tensor:
        _require_vector(x)
        out = Tensor.zero(self.codomain)
        for (i,), a in x.terms.items():
            out = out + self.apply_f(a) * self.g_images[i - 1]
        return out

    def to_json(self) -> dict:
        return {
            "domain": pair_to_json(self.domain),
            "codomain": pair_to_json(self.codomain),
            "f": [format_poly(p, self.codomain.var_names or None) for p in self.f_images],
            "g": [img.to_json() for img in self.g_images],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PairMorphismCandidate":
        domain = pair_from_json(data["domain"])
        codomain = pair_from_json(data["codomain"])
        f_images = tuple(codomain.coeff(s) for s in data.get("f", []))
        g_images = tuple(Tensor.from_json(codomain, t) for t in data.get("g", []))
        return cls(domain, codomain, f_images, g_images)


def validate_morphism(cand: PairMorphismCandidate, samples: int = 25, seed: int = 0,
                      max_degree: int = 3) -> Report:
    """Check the morphism equations on generators, basis and random data."""
    rng = random.Random(seed)
    dom, cod = cand.domain, cand.codomain
    report = Report("validate-morphism", meta={
        "domain": dom.family, "codomain": cod.family, "seed": seed, "samples": samples,
    })

    # ring morphism: unital plus multiplicative on variables (substitution
    # is multiplicative by construction; this documents the contract)
    one_dom = Poly.const(dom.poly_nvars, 1)
    report.add("f_unital", cand.apply_f(one_dom) == Poly.const(cod.poly_nvars, 1))
    bad = None
    for _ in range(samples):
        a = random_coeff(rng, dom, max_degree)
        b = random_coeff(rng, dom, max_degree)
        if cand.apply_f(a * b) != cand.apply_f(a) * cand.apply_f(b):
            bad = {"a": repr(a), "b": repr(b)}
            break
    report.add("f_multiplicative", bad is None, **(bad or {}))

    # g respects brackets: exhaustive on the basis, then random elements
    bad = None
    basis = [gvector(dom, [1 if t == i else 0 for t in range(dom.ngens)])
             for i in range(dom.ngens)]
    pairs_to_try = [(basis[i], basis[j]) for i in range(dom.ngens)
                    for j in range(i + 1, dom.ngens)]
    pairs_to_try += [(random_gvector(rng, dom, max_degree),
                      random_gvector(rng, dom, max_degree)) for _ in range(samples)]
    for x, y in pairs_to_try:
        lhs = cand.apply_g(lie_bracket(x, y))
        rhs = lie_bracket(cand.apply_g(x), cand.apply_g(y))
        if lhs != rhs:
            bad = {"x": repr(x), "y": repr(y), "g_of_bracket": repr(lhs),
                   "bracket_of_images": repr(rhs)}
            break
    report.add("g_lie_morphism", bad is None, **(bad or {}))

    # module compatibility g(a x) = f(a) g(x)
    bad = None
    for _ in range(samples):
        a = random_coeff(rng, dom, max_degree)
        x = random_gvector(rng, dom, max_degree)
        if cand.apply_g(a * x) != cand.apply_f(a) * cand.apply_g(x):
            bad = {"a": repr(a), "x": repr(x)}
            break
    report.add("module_compat", bad is None, **(bad or {}))

    # action compatibility f(D_x a) = D_{g(x)} f(a)
    bad = None
    for _ in range(samples):
        a = random_coeff(rng, dom, max_degree)
        x = random_gvector(rng, dom, max_degree)
        lhs = cand.apply_f(action(x, a))
        rhs = action(cand.apply_g(x), cand.apply_f(a))
        if lhs != rhs:
            bad = {"a": repr(a), "x": repr(x), "lhs": repr(lhs), "rhs": repr(rhs)}
            break
    report.add("action_compat", bad is None, **(bad or {}))
    return report
