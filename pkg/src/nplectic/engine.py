"""n-plectic structures and their central extension complex.

An n-plectic structure on a pair is a closed cotensor of tensor degree
-(n+1).  Around it live:

* symplectic tensors (d i_x omega = 0), considered modulo the kernel of
  contraction into omega;
* Hamiltonian tensors, those with a potential: d f = i_x omega;
* the extension complex whose degree-k piece pairs symplectic tensors of
  wedge degree k with cotensors of word length n-k, carrying the
  differential (f, x) -> (i_x omega - d f, 0) and Bell-number weighted
  k-brackets ((f_1,x_1)..(f_k,x_k)) -> (B_{k-1} i_{x_k^..^x_1} omega,
  [x_1..x_k]).

Everything is sliced by (wedge degree, polynomial degree) and solved with
exact linear algebra; the two shipped coefficient families keep every
slice finite.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .calculus import ce_differential, contract, higher_bracket
from .elements import Cotensor, Tensor, ascending_words, wedge_list
from .linalg import Echelon, null_space, solve
from .pairs import PairDescriptor, pair_from_json, pair_to_json
from .scalars import CapExceeded, Poly, bell, enumerate_shuffles, koszul_sign

DEFAULT_EXTENSION_ARITY_CAP = 6


class DegreeError(ValueError):
    """The would-be structure tensor has the wrong degree."""


class NotClosedError(ValueError):
    """The would-be structure tensor is not closed; carries the residual."""

    def __init__(self, residual: Cotensor):
        super().__init__(f"structure tensor is not closed; d omega = {residual!r}")
        self.residual = residual


class NPlecticStructure:
    """A validated pair (pair, n, omega) with omega closed of degree -(n+1)."""

    def __init__(self, pair: PairDescriptor, n: int, omega: Cotensor):
        if n < 1:
            raise DegreeError("n must be at least one")
        if omega.pair != pair:
            raise ValueError("omega lives over a different pair")
        if not omega.is_zero() and omega.grade != -(n + 1):
            raise DegreeError(
                f"omega must be homogeneous of degree {-(n + 1)}, got degrees {omega.degrees()}")
        residual = ce_differential(omega)
        if not residual.is_zero():
            raise NotClosedError(residual)
        self.pair = pair
        self.n = n
        self.omega = omega

    def __eq__(self, other):
        return (isinstance(other, NPlecticStructure)
                and self.pair == other.pair and self.n == other.n
                and self.omega == other.omega)

    def __hash__(self):
        return hash((self.pair, self.n, self.omega))

    def __repr__(self):
        return f"NPlecticStructure(n={self.n}, omega={self.omega!r})"

    def to_json(self) -> dict:
        return {"pair": pair_to_json(self.pair), "n": self.n,
                "omega": self.omega.to_json()}


def make_structure(pair: PairDescriptor, n: int, omega: Cotensor) -> NPlecticStructure:
    """Factory kept for symmetry with the JSON loader; validates on build."""
    return NPlecticStructure(pair, n, omega)


def structure_from_json(data: dict) -> NPlecticStructure:
    pair = pair_from_json(data["pair"])
    omega = Cotensor.from_json(pair, data["omega"])
    return NPlecticStructure(pair, int(data["n"]), omega)


# ---------------------------------------------------------------------------
# finite slices and exact solving
# ---------------------------------------------------------------------------

def monomials_upto(nvars: int, max_degree: int):
    """All exponent tuples of total degree <= max_degree, sorted."""
    if max_degree < 0:
        return []
    return sorted(e for e in itertools.product(range(max_degree + 1), repeat=nvars)
                  if sum(e) <= max_degree)


def monomials_exact(nvars: int, degree: int):
    if degree < 0:
        return []
    return sorted(e for e in itertools.product(range(degree + 1), repeat=nvars)
                  if sum(e) == degree)


def slice_basis(pair, kind: str, word_len: int, monos) -> list[tuple]:
    """Basis labels (word, exponent) of one finite (co)tensor slice."""
    words = list(ascending_words(pair.ngens, word_len))
    return [(w, e) for w in words for e in monos]


def basis_elements(pair, cls, labels):
    return [cls(pair, {w: Poly(pair.poly_nvars, {e: Fraction(1)})}) for w, e in labels]


def element_vector(elem, index: dict, size: int):
    """Coordinates of an element in a slice; raises if it leaves the window."""
    vec = [Fraction(0)] * size
    for w, poly in elem.terms.items():
        for e, c in poly.terms.items():
            key = (w, e)
            if key not in index:
                raise ValueError(f"element leaves the slice window at {key}")
            vec[index[key]] = c
    return vec


def vector_element(pair, cls, labels, vec):
    terms = {}
    for (w, e), c in zip(labels, vec):
        if c:
            terms.setdefault(w, {})[e] = c
    return cls(pair, [(w, Poly(pair.poly_nvars, t)) for w, t in terms.items()])


def matrix_of(fn, pair, src_cls, src_labels, tgt_cls=None):
    """Matrix of a linear map on a slice; the target window is inferred.

    Returns (matrix, tgt_labels): one column per source basis label, rows
    indexed by every (word, exponent) appearing in any image.
    """
    images = [fn(elem) for elem in basis_elements(pair, src_cls, src_labels)]
    seen = set()
    for img in images:
        for w, poly in img.terms.items():
            for e in poly.terms:
                seen.add((w, e))
    tgt_labels = sorted(seen)
    index = {lab: i for i, lab in enumerate(tgt_labels)}
    matrix = [[Fraction(0)] * len(src_labels) for _ in tgt_labels]
    for col, img in enumerate(images):
        for w, poly in img.terms.items():
            for e, c in poly.terms.items():
                matrix[index[(w, e)]][col] = c
    return matrix, tgt_labels


# ---------------------------------------------------------------------------
# symplectic and Hamiltonian tensors
# ---------------------------------------------------------------------------

def is_symplectic(x: Tensor, s: NPlecticStructure) -> bool:
    """d i_x omega = 0."""
    return ce_differential(contract(x, s.omega)).is_zero()


def _null_slice(s, degree, monos, fn):
    labels = slice_basis(s.pair, "tensor", degree, list(monos))
    if not labels:
        return []
    matrix, _ = matrix_of(fn, s.pair, Tensor, labels)
    kernel = null_space(matrix, cols=len(labels))
    return [vector_element(s.pair, Tensor, labels, vec) for vec in kernel]


def symplectic_slice(s: NPlecticStructure, degree: int, monos):
    """Basis of symplectic tensors with wedge degree and monomial support fixed."""
    return _null_slice(s, degree, monos, lambda x: ce_differential(contract(x, s.omega)))


def kernel_slice(s: NPlecticStructure, degree: int, monos):
    """Basis of the contraction kernel {x : i_x omega = 0} in one slice."""
    return _null_slice(s, degree, monos, lambda x: contract(x, s.omega))


def symplectic_basis(s: NPlecticStructure, degree: int, max_poly_degree: int = 3):
    """Basis of symplectic tensors of one wedge degree within a poly window."""
    return symplectic_slice(s, degree, monomials_upto(s.pair.poly_nvars, max_poly_degree))


def kernel_basis(s: NPlecticStructure, degree: int, max_poly_degree: int = 3):
    return kernel_slice(s, degree, monomials_upto(s.pair.poly_nvars, max_poly_degree))


def reduce_mod_kernel(s: NPlecticStructure, x: Tensor) -> Tensor:
    """Canonical representative of x modulo the contraction kernel.

    Works slice by slice; sound as long as the kernel is spanned inside
    the window of x, which holds whenever omega has homogeneous
    polynomial coefficients (true for every shipped model).
    """
    out = Tensor.zero(s.pair)
    pd = max(x.max_poly_degree(), 0)
    for degree, part in x.homogeneous_parts().items():
        labels = slice_basis(s.pair, "tensor", degree,
                             monomials_upto(s.pair.poly_nvars, pd))
        index = {lab: i for i, lab in enumerate(labels)}
        ech = Echelon(len(labels))
        for k in kernel_basis(s, degree, pd):
            ech.add(element_vector(k, index, len(labels)))
        vec = ech.reduce(element_vector(part, index, len(labels)))
        out = out + vector_element(s.pair, Tensor, labels, vec)
    return out


class SymplecticTensor:
    """A symplectic tensor held by its canonical representative mod kernel."""

    __slots__ = ("structure", "rep")

    def __init__(self, structure: NPlecticStructure, x: Tensor):
        if x.pair != structure.pair:
            raise ValueError("tensor lives over a different pair")
        if not is_symplectic(x, structure):
            raise ValueError(f"not a symplectic tensor: {x!r}")
        self.structure = structure
        self.rep = reduce_mod_kernel(structure, x)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    @property
    def grade(self):
        return self.rep.grade

    def __eq__(self, other):
        return (isinstance(other, SymplecticTensor)
                and self.structure == other.structure and self.rep == other.rep)

    def __hash__(self):
        return hash(self.rep)

    def __add__(self, other):
        assert self.structure == other.structure
        return SymplecticTensor(self.structure, self.rep + other.rep)

    def __neg__(self):
        return SymplecticTensor(self.structure, -self.rep)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return SymplecticTensor(self.structure, scalar * self.rep)

    __rmul__ = __mul__

    def __repr__(self):
        return f"[{self.rep!r}]"


def hamiltonian_potential(x: Tensor, s: NPlecticStructure,
                          max_poly_degree: int | None = None) -> Cotensor | None:
    """One exact solution f of d f = i_x omega, or None if there is none.

    The input must be symplectic (i_x omega closed), otherwise ValueError.
    Solving happens per (word length, polynomial degree) slice; free
    variables are pinned to zero, so the answer is canonical.
    """
    if not is_symplectic(x, s):
        raise ValueError("potential only makes sense for symplectic tensors")
    target = contract(x, s.omega)
    if target.is_zero():
        return Cotensor.zero(s.pair)
    out = Cotensor.zero(s.pair)
    for (deg, pd), part in target.bigraded_parts().items():
        wl = -deg
        if wl == 0:
            return None  # d never reaches word length zero
        # d drops the polynomial degree by one on the polynomial family
        src_pd = pd + 1 if s.pair.poly_nvars else 0
        labels = slice_basis(s.pair, "cotensor", wl - 1,
                             monomials_exact(s.pair.poly_nvars, src_pd)
                             if s.pair.poly_nvars else [()])
        if max_poly_degree is not None and src_pd > max_poly_degree:
            return None
        if not labels:
            return None
        matrix, tgt_labels = matrix_of(ce_differential, s.pair, Cotensor, labels)
        index = {lab: i for i, lab in enumerate(tgt_labels)}
        try:
            rhs = element_vector(part, index, len(tgt_labels))
        except ValueError:
            return None  # the slice image cannot reach this component
        sol = solve(matrix, rhs)
        if sol is None:
            return None
        out = out + vector_element(s.pair, Cotensor, labels, sol)
    return out


# ---------------------------------------------------------------------------
# the extension complex
# ---------------------------------------------------------------------------

class ExtensionElement:
    """Pair (f, x): a cotensor alongside a symplectic tensor.

    Homogeneous of degree k when the tensor has wedge degree k and the
    cotensor has word length n - k (the n-shift of its tensor degree).
    """

    __slots__ = ("structure", "f", "sym")

    def __init__(self, structure: NPlecticStructure, f: Cotensor, sym):
        if not isinstance(sym, SymplecticTensor):
            sym = SymplecticTensor(structure, sym)
        if f.pair != structure.pair:
            raise ValueError("cotensor lives over a different pair")
        self.structure = structure
        self.f = f
        self.sym = sym

    @classmethod
    def zero(cls, structure):
        return cls(structure, Cotensor.zero(structure.pair), Tensor.zero(structure.pair))

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.sym.is_zero()

    def degree(self) -> int | None:
        """Degree as an element of the shifted extension complex."""
        n = self.structure.n
        degs = {d for d in self.sym.rep.degrees()}
        degs |= {n + d for d in self.f.degrees()}
        if len(degs) == 1:
            return degs.pop()
        return None

    def __add__(self, other):
        assert self.structure == other.structure
        return ExtensionElement(self.structure, self.f + other.f, self.sym + other.sym)

    def __neg__(self):
        return ExtensionElement(self.structure, -self.f, -self.sym)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return ExtensionElement(self.structure, scalar * self.f, scalar * self.sym)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, ExtensionElement)
                and self.structure == other.structure
                and self.f == other.f and self.sym == other.sym)

    def __hash__(self):
        return hash((self.f, self.sym))

    def __repr__(self):
        return f"({self.f!r}, {self.sym!r})"

    def to_json(self):
        return {"f": self.f.to_json(), "x": self.sym.rep.to_json()}

    @classmethod
    def from_json(cls, structure, data):
        f = Cotensor.from_json(structure.pair, data.get("f", []))
        x = Tensor.from_json(structure.pair, data.get("x", []))
        return cls(structure, f, x)


def d_omega(e: ExtensionElement) -> ExtensionElement:
    """Extension differential (f, x) -> (i_x omega - d f, 0); squares to zero."""
    s = e.structure
    new_f = contract(e.sym.rep, s.omega) - ce_differential(e.f)
    return ExtensionElement(s, new_f, Tensor.zero(s.pair))


def extension_bracket(k: int, es, cap: int = DEFAULT_EXTENSION_ARITY_CAP) -> ExtensionElement:
    """k-ary bracket (B_{k-1} i_{x_k ^..^ x_1} omega, [x_1..x_k])."""
    es = list(es)
    if len(es) != k:
        raise ValueError(f"expected {k} arguments, got {len(es)}")
    if k < 2:
        raise ValueError("the unary operation of the extension complex is d_omega")
    if k > cap:
        raise CapExceeded(f"extension bracket arity {k} exceeds cap {cap}")
    s = es[0].structure
    xs = [e.sym.rep for e in es]
    reversed_wedge = wedge_list(s.pair, Tensor, list(reversed(xs)))
    f_part = Fraction(bell(k - 1)) * contract(reversed_wedge, s.omega)
    x_part = higher_bracket(k, xs)
    return ExtensionElement(s, f_part, x_part)


def extension_jacobi_residual(es, cap: int = DEFAULT_EXTENSION_ARITY_CAP) -> ExtensionElement:
    """Weak Jacobi residual of (d_omega, brackets) at arity len(es).

    This is the engine-side evaluation; `linf.check_linf` recomputes the
    same sum through the generic oracle machinery as an independent path.
    """
    es = list(es)
    n = len(es)
    s = es[0].structure
    if any(e.is_zero() for e in es):
        return ExtensionElement.zero(s)
    degs = []
    for e in es:
        d = e.degree()
        if d is None:
            raise ValueError("Jacobi residual needs homogeneous elements")
        degs.append(d)
    total = ExtensionElement.zero(s)
    for j in range(1, n + 1):
        i = n + 1 - j
        for sh in enumerate_shuffles((j, n - j), cap=max(cap, n)):
            sign = koszul_sign(sh, degs)
            inner_args = [es[sh(t) - 1] for t in range(1, j + 1)]
            inner = d_omega(inner_args[0]) if j == 1 else extension_bracket(j, inner_args, cap)
            if inner.is_zero():
                continue
            outer_args = [inner] + [es[sh(t) - 1] for t in range(j + 1, n + 1)]
            outer = d_omega(outer_args[0]) if i == 1 else extension_bracket(i, outer_args, cap)
            if outer.is_zero():
                continue
            total = total + (outer if sign == 1 else -outer)
    return total


def fundamental_pairing_check(k: int, xs, s: NPlecticStructure):
    """Check i_{[x_1..x_k]} omega = d i_{x_k ^..^ x_1} omega on symplectic xs.

    Returns (ok, lhs, rhs) so callers can report the residual.
    """
    xs = list(xs)
    lhs = contract(higher_bracket(k, xs), s.omega)
    rhs = ce_differential(contract(wedge_list(s.pair, Tensor, list(reversed(xs))), s.omega))
    return lhs == rhs, lhs, rhs
