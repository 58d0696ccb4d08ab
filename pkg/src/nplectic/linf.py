"""Graded bracket systems and the generic identity checkers.

Every algebra in the package exposes the same small surface: a zero
element, linear operations, a degree, and one k-ary bracket per arity
(arity one being the differential).  The checkers in this module only
speak that surface, so the weak Jacobi identity and the morphism
equations are evaluated by code that knows nothing about the particular
algebra.  For the extension complex this gives a second, independent
evaluation of the Jacobi residual next to the loop in `engine`.

`FiniteLInfinity` is the explicit-table implementation: a finite graded
basis with bracket values listed per sorted index tuple.  Construction
does not validate the table; `check_linf` is the validator, so corrupted
tables can be built on purpose and caught.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

from .calculus import higher_bracket, natural_inclusion
from .cohomology import CohomClass, NotACocycle, class_of, poisson_bracket
from .elements import Tensor
from .engine import (
    DEFAULT_EXTENSION_ARITY_CAP,
    ExtensionElement,
    NPlecticStructure,
    d_omega,
    extension_bracket,
)
from .pairs import ConstantPair, action, lie_bracket
from .scalars import (
    DEFAULT_SHUFFLE_CAP,
    Poly,
    as_rational,
    enumerate_shuffles,
    koszul_sign,
)


class Operations:
    """Default linear structure for element types with operators."""

    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def scale(self, c, v):
        return c * v

    def is_zero(self, v) -> bool:
        return v.is_zero()

    def degree(self, v):
        raise NotImplementedError

    def bracket(self, k, vs):
        raise NotImplementedError


# ---------------------------------------------------------------------------
# explicit finite tables
# ---------------------------------------------------------------------------

def _sorted_with_sign(indices, degrees):
    """Stable-sort basis indices, tracking the degree-weighted swap sign."""
    order = list(indices)
    sign = 1
    for i in range(1, len(order)):
        j = i
        while j > 0 and order[j - 1] > order[j]:
            if degrees[order[j - 1] - 1] % 2 and degrees[order[j] - 1] % 2:
                sign = -sign
            order[j - 1], order[j] = order[j], order[j - 1]
            j -= 1
    return sign, tuple(order)


class FiniteLInfinity(Operations):
    """A graded bracket system on a finite basis, given by explicit tables.

    Elements are dicts {basis index: coefficient} with 1-based indices.
    `brackets[k]` maps sorted index tuples to {target index: coefficient}.
    Evaluation symmetrizes arguments into sorted order with the Koszul
    sign; a repeated index of odd degree kills the term.
    """

    def __init__(self, degrees, brackets=None):
        self.degrees = tuple(int(d) for d in degrees)
        table: dict[int, dict[tuple, dict[int, Fraction]]] = {}
        for k, entries in (brackets or {}).items():
            k = int(k)
            if k < 1:
                raise ValueError("bracket arity must be at least one")
            slot = table.setdefault(k, {})
            for key, value in entries.items():
                key = tuple(int(i) for i in key)
                if len(key) != k or list(key) != sorted(key):
                    raise ValueError(f"bracket key {key} is not a sorted {k}-tuple")
                for i in key:
                    if not 1 <= i <= len(self.degrees):
                        raise ValueError(f"basis index {i} out of range")
                for a, b in zip(key, key[1:]):
                    if a == b and self.degrees[a - 1] % 2:
                        raise ValueError(f"repeated odd-degree index in key {key}")
                cleaned = {int(t): as_rational(c) for t, c in value.items()}
                cleaned = {t: c for t, c in cleaned.items() if c}
                if cleaned:
                    slot[key] = cleaned
        self.brackets = table

    @classmethod
    def from_pair(cls, pair: ConstantPair) -> "FiniteLInfinity":
        """The bracket table of a constant pair, all generators in degree one."""
        table: dict[tuple, dict[int, Fraction]] = {}
        for i, j, k, c in pair.brackets:
            table.setdefault((i, j), {})[k] = c
        return cls([1] * pair.dim, {2: table})

    def basis(self, i: int) -> dict:
        return {i: Fraction(1)}

    def zero(self):
        return {}

    def add(self, a, b):
        out = dict(a)
        for i, c in b.items():
            acc = out.get(i, Fraction(0)) + c
            if acc:
                out[i] = acc
            else:
                out.pop(i, None)
        return out

    def scale(self, c, v):
        c = as_rational(c)
        return {i: c * x for i, x in v.items()} if c else {}

    def is_zero(self, v) -> bool:
        return not v

    def degree(self, v):
        degs = {self.degrees[i - 1] for i in v}
        return degs.pop() if len(degs) == 1 else None

    def bracket(self, k, vs):
        if len(vs) != k:
            raise ValueError(f"expected {k} arguments, got {len(vs)}")
        slot = self.brackets.get(k, {})
        out: dict[int, Fraction] = {}
        if not slot:
            return out
        for combo in itertools.product(*(v.items() for v in vs)):
            indices = [i for i, _ in combo]
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            sign, key = _sorted_with_sign(indices, self.degrees)
            if any(a == b and self.degrees[a - 1] % 2
                   for a, b in zip(key, key[1:])):
                continue
            for target, c in slot.get(key, {}).items():
                acc = out.get(target, Fraction(0)) + sign * coeff * c
                if acc:
                    out[target] = acc
                else:
                    out.pop(target, None)
        return out

    def to_json(self) -> dict:
        return {
            "degrees": list(self.degrees),
            "brackets": {
                str(k): {",".join(map(str, key)): {str(t): str(c) for t, c in val.items()}
                         for key, val in sorted(entries.items())}
                for k, entries in sorted(self.brackets.items())
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteLInfinity":
        brackets = {}
        for k, entries in data.get("brackets", {}).items():
            brackets[int(k)] = {
                tuple(int(p) for p in key.split(",")): dict(val)
                for key, val in entries.items()
            }
        return cls(data["degrees"], brackets)


# ---------------------------------------------------------------------------
# adapters for the package's own algebras
# ---------------------------------------------------------------------------

class PairLinf(Operations):
    """Tensors of degree at most one under the symmetrized pair bracket.

    The binary bracket pairs the anchor action with the Lie bracket:
    each vector part differentiates the other argument's scalar part.
    All other arities vanish.
    """

    def __init__(self, pair):
        self.pair = pair

    def zero(self):
        return Tensor.zero(self.pair)

    def degree(self, v):
        return v.grade

    def _split(self, v):
        parts = v.homogeneous_parts()
        scalar = parts.get(0, Tensor.zero(self.pair)).terms.get((), Poly.zero(self.pair.poly_nvars))
        return scalar, parts.get(1, Tensor.zero(self.pair))

    def bracket(self, k, vs):
        if k != 2:
            return self.zero()
        a, x = self._split(vs[0])
        b, y = self._split(vs[1])
        scalar = action(x, b) + action(y, a)
        return Tensor.scalar(self.pair, scalar) + lie_bracket(x, y)


class TensorLinf(Operations):
    """The exterior tensor algebra with its higher brackets and no differential."""

    def __init__(self, pair, cap: int = DEFAULT_SHUFFLE_CAP):
        self.pair = pair
        self.cap = cap

    def zero(self):
        return Tensor.zero(self.pair)

    def degree(self, v):
        return v.grade

    def bracket(self, k, vs):
        if k == 1:
            return self.zero()
        return higher_bracket(k, vs, cap=self.cap)


class ExtensionLinf(Operations):
    """The extension complex: differential at arity one, weighted brackets above."""

    def __init__(self, structure: NPlecticStructure,
                 cap: int = DEFAULT_EXTENSION_ARITY_CAP):
        self.structure = structure
        self.cap = cap

    def zero(self):
        return ExtensionElement.zero(self.structure)

    def degree(self, v):
        return v.degree()

    def bracket(self, k, vs):
        if k == 1:
            return d_omega(vs[0])
        return extension_bracket(k, vs, cap=self.cap)


class ClassLinf(Operations):
    """Cohomology classes: zero differential, bracket values cocycles on the nose."""

    def __init__(self, structure: NPlecticStructure,
                 cap: int = DEFAULT_EXTENSION_ARITY_CAP):
        self.structure = structure
        self.cap = cap

    def zero(self):
        return CohomClass.zero(self.structure, 0)

    def is_zero(self, v) -> bool:
        return v.is_zero()

    def degree(self, v):
        return v.degree

    def bracket(self, k, vs):
        return poisson_bracket(k, vs, cap=self.cap)


# ---------------------------------------------------------------------------
# the generic checkers
# ---------------------------------------------------------------------------

def jacobi_residual(op: Operations, vs, cap: int = DEFAULT_SHUFFLE_CAP):
    """Weak Jacobi residual of op at the given arguments.

    Sums op.bracket(i, [op.bracket(j, head), tail]) over all splits
    i + j = n + 1 and (j, n - j) shuffles, with Koszul signs in the
    argument degrees.  Zero exactly when the brackets cohere at this
    arity on these arguments.
    """
    vs = list(vs)
    n = len(vs)
    if any(op.is_zero(v) for v in vs):
        return op.zero()
    degs = []
    for v in vs:
        d = op.degree(v)
        if d is None:
            raise ValueError("Jacobi residual needs homogeneous arguments")
        degs.append(d)
    total = None
    for j in range(1, n + 1):
        i = n + 1 - j
        for sh in enumerate_shuffles((j, n - j), cap=max(cap, n)):
            sign = koszul_sign(sh, degs)
            inner = op.bracket(j, [vs[sh(t) - 1] for t in range(1, j + 1)])
            if op.is_zero(inner):
                continue
            outer = op.bracket(i, [inner] + [vs[sh(t) - 1] for t in range(j + 1, n + 1)])
            if op.is_zero(outer):
                continue
            term = op.scale(sign, outer)
            total = term if total is None else op.add(total, term)
    return op.zero() if total is None else total


def check_linf(op: Operations, generators, max_arity: int,
               cap: int = DEFAULT_SHUFFLE_CAP):
    """Check weak Jacobi on all sorted generator tuples up to an arity.

    Returns (True, None) or (False, witness) with the offending arguments
    and residual.  Sorted tuples suffice because the brackets are graded
    symmetric.
    """
    generators = list(generators)
    for arity in range(1, max_arity + 1):
        for combo in itertools.combinations_with_replacement(range(len(generators)), arity):
            vs = [generators[i] for i in combo]
            residual = jacobi_residual(op, vs, cap)
            if not op.is_zero(residual):
                return False, {"arity": arity, "args": combo, "residual": residual}
    return True, None


def _compositions(n: int, p: int):
    """Ordered tuples of p positive integers summing to n."""
    for cuts in itertools.combinations(range(1, n), p - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def morphism_residual(f, dom: Operations, cod: Operations, vs,
                      cap: int = DEFAULT_SHUFFLE_CAP):
    """Defect of the morphism equations at one argument tuple.

    `f(k, vs)` evaluates the arity-k component (None meaning zero).  The
    left side feeds each domain bracket through a component; the right
    side sums codomain brackets of component blocks over ordered
    compositions, weighted by 1/p! so every unordered block partition
    counts once.  Signs are Koszul in the domain degrees.
    """
    vs = list(vs)
    n = len(vs)
    if any(dom.is_zero(v) for v in vs):
        return cod.zero()
    degs = []
    for v in vs:
        d = dom.degree(v)
        if d is None:
            raise ValueError("morphism check needs homogeneous arguments")
        degs.append(d)
    total = None

    def accumulate(total, term, scalar):
        if term is None or cod.is_zero(term):
            return total
        term = cod.scale(scalar, term)
        return term if total is None else cod.add(total, term)

    for q in range(1, n + 1):
        p = n + 1 - q
        for sh in enumerate_shuffles((q, n - q), cap=max(cap, n)):
            sign = koszul_sign(sh, degs)
            inner = dom.bracket(q, [vs[sh(t) - 1] for t in range(1, q + 1)])
            if dom.is_zero(inner):
                continue
            term = f(p, [inner] + [vs[sh(t) - 1] for t in range(q + 1, n + 1)])
            total = accumulate(total, term, sign)
    for p in range(1, n + 1):
        weight = Fraction(-1, factorial(p))
        for comp in _compositions(n, p):
            for sh in enumerate_shuffles(comp, cap=max(cap, n)):
                sign = koszul_sign(sh, degs)
                pos = 1
                blocks = []
                for size in comp:
                    blocks.append([vs[sh(t) - 1] for t in range(pos, pos + size)])
                    pos += size
                ys = [f(size, block) for size, block in zip(comp, blocks)]
                if any(y is None for y in ys):
                    continue
                total = accumulate(total, cod.bracket(p, ys), weight * sign)
    return cod.zero() if total is None else total


def check_morphism(f, dom: Operations, cod: Operations, argument_lists,
                   cap: int = DEFAULT_SHUFFLE_CAP):
    """Run `morphism_residual` over many tuples; (ok, witness | None)."""
    for vs in argument_lists:
        residual = morphism_residual(f, dom, cod, vs, cap)
        if not cod.is_zero(residual):
            return False, {"args": list(vs), "residual": residual}
    return True, None


def inclusion_component(k, xs):
    """The natural inclusion as a morphism component family."""
    return natural_inclusion(k, list(xs))


# ---------------------------------------------------------------------------
# momentum maps
# ---------------------------------------------------------------------------

def check_momentum_map(s: NPlecticStructure, algebra: ConstantPair,
                       fields, potentials, max_arity: int = 3,
                       cap: int = DEFAULT_EXTENSION_ARITY_CAP):
    """Certify a momentum-map candidate into the Poisson classes.

    The candidate assigns to each generator of the algebra a field and a
    potential.  Gate one: every (potential, field) pair must be a cocycle
    of the extension complex, so the potential really is one for the
    field.  Gate two: sending generators to their classes must satisfy
    the morphism equations against the algebra's bracket table up to the
    requested arity, with all higher components zero.

    Returns (ok, details); details lists the classes and any failures.
    """
    fields = list(fields)
    potentials = list(potentials)
    if not len(fields) == len(potentials) == algebra.dim:
        raise ValueError("need one field and one potential per generator")
    issues = []
    classes: list[CohomClass | None] = []
    for g, (pot, x) in enumerate(zip(potentials, fields), start=1):
        if not x.is_zero() and x.grade != 1:
            raise ValueError(f"field for generator {g} must have wedge degree one")
        try:
            classes.append(class_of(ExtensionElement(s, pot, x), degree=1))
        except NotACocycle as exc:
            classes.append(None)
            issues.append({"gate": "cocycle", "generator": g,
                           "reason": f"potential mismatch; residual {exc.residual!r}"})
        except ValueError as exc:
            classes.append(None)
            issues.append({"gate": "cocycle", "generator": g, "reason": str(exc)})
    if issues:
        return False, {"classes": classes, "issues": issues}

    dom = FiniteLInfinity.from_pair(algebra)
    cod = ClassLinf(s, cap)

    def component(k, vs):
        if k != 1:
            return None
        out = None
        for i, c in vs[0].items():
            term = c * classes[i - 1]
            out = term if out is None else out + term
        return out

    for arity in range(1, max_arity + 1):
        for combo in itertools.combinations_with_replacement(range(1, algebra.dim + 1), arity):
            vs = [dom.basis(i) for i in combo]
            residual = morphism_residual(component, dom, cod, vs, cap)
            if not residual.is_zero():
                issues.append({"gate": "morphism", "generators": list(combo),
                               "reason": f"residual {residual!r}"})
    return not issues, {"classes": classes, "issues": issues}
