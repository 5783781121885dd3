"""Commuting matrix tuples as finite-dimensional k[t1..tn]-modules.

A ``CommutingTuple`` is a vector space k^d with n pairwise-commuting
endomorphisms.  This module provides the structural operations on them:
invariant submodules with restriction and quotient, the annihilator ideal
(kernel of evaluating polynomials at the tuple, as a reduced Groebner
basis with its standard monomials), the radical submodule and filtration,
and the splitting into local pieces supported at single maximal ideals.
"""

import heapq
import random
from collections import deque

from .errors import FieldMismatchError, NonCommutingError
from .factor import DEFAULT_SEED, factor_univariate
from .linalg import (
    Echelon,
    Matrix,
    Subspace,
    column_space,
    eval_poly_at_matrix,
    kernel_basis,
    minimal_polynomial,
    rref,
)
from .poly import MultiPoly, grlex_key, mono_divides, normal_form, squarefree_part


class Ideal:
    """A zero-dimensional ideal of k[t1..tn], held as a reduced Groebner
    basis in the global graded-lex order, together with the standard
    monomials (a basis of the finite-dimensional quotient).

    Generators are stored monic, sorted descending by leading monomial;
    equality of ideals is literal equality of these canonical tuples.
    """

    __slots__ = ("field", "nvars", "gens", "standard_monomials")

    def __init__(self, field, nvars, gens, standard_monomials):
        gens = tuple(
            sorted(gens, key=lambda g: grlex_key(g.leading_monomial), reverse=True)
        )
        for g in gens:
            if g.field != field or g.nvars != nvars:
                raise FieldMismatchError("generator field/arity mismatch")
            if g.is_zero:
                raise ValueError("zero generator")
            if g.leading_coeff != field.one:
                raise ValueError("generators must be monic")
        std = tuple(sorted((tuple(m) for m in standard_monomials), key=grlex_key))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "standard_monomials", std)

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    @classmethod
    def unit(cls, field, nvars):
        return cls(field, nvars, [MultiPoly.one(field, nvars)], [])

    @classmethod
    def from_groebner_basis(cls, field, nvars, gens):
        """Rebuild an ideal from a reduced Groebner basis alone, recovering
        the standard monomials as the complement of the leading-term
        monoid (requires zero-dimensionality: every variable must occur as
        a pure power among the leading monomials)."""
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator")
        leads = [g.leading_monomial for g in gens]
        for i in range(nvars):
            if not any(
                lm[i] and all(e == 0 for j, e in enumerate(lm) if j != i)
                for lm in leads
            ):
                raise ValueError(
                    f"not zero-dimensional: no pure power of t{i + 1} among "
                    "the leading monomials"
                )
        std = []
        seen = set()
        queue = deque([(0,) * nvars])
        seen.add((0,) * nvars)
        while queue:
            m = queue.popleft()
            if any(mono_divides(lm, m) for lm in leads):
                continue
            std.append(m)
            for i in range(nvars):
                child = tuple(e + 1 if j == i else e for j, e in enumerate(m))
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
        return cls(field, nvars, gens, std)

    @property
    def quotient_dim(self):
        return len(self.standard_monomials)

    @property
    def is_unit(self):
        return self.quotient_dim == 0

    def normal_form(self, p):
        return normal_form(p, list(self.gens))

    def contains(self, p):
        return self.normal_form(p).is_zero

    def generator_strings(self):
        return tuple(str(g) for g in self.gens)

    def __eq__(self, other):
        if isinstance(other, Ideal):
            return (
                self.field == other.field
                and self.nvars == other.nvars
                and self.gens == other.gens
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.nvars, self.gens))

    def __repr__(self):
        return f"Ideal({', '.join(self.generator_strings())})"


def multiplication_matrix(ideal, p):
    """Matrix of multiplication by p on k[T]/I over the standard-monomial
    basis.  Normal forms against a reduced Groebner basis are supported on
    standard monomials, so columns read off directly."""
    std = ideal.standard_monomials
    index = {m: i for i, m in enumerate(std)}
    F = ideal.field
    cols = []
    for m in std:
        mono = MultiPoly(F, ideal.nvars, {m: F.one})
        r = ideal.normal_form(p * mono)
        col = [F.zero] * len(std)
        for e, c in r.terms:
            col[index[e]] = c
        cols.append(col)
    grid = [[cols[j][i] for j in range(len(std))] for i in range(len(std))]
    return Matrix(F, grid, cols=len(std))


def quotient_is_field(ideal, rng=None, attempts=25, exhaustive_bound=4096):
    """Decide whether k[T]/I is a field (i.e. I is maximal).

    Strategy: look for an element whose multiplication matrix has minimal
    polynomial of full degree; the quotient is then k[x]/(that polynomial)
    and the answer is its irreducibility.  Over a small prime field, fall
    back to exhaustively checking that every nonzero element is
    invertible.  This is the slow independent check; production code
    builds keys constructively and never calls it.
    """
    from itertools import product as _product

    if rng is None:
        rng = random.Random(DEFAULT_SEED)
    k = ideal.quotient_dim
    if k == 0:
        return False  # unit ideal: the zero ring
    F = ideal.field
    n = ideal.nvars
    candidates = [MultiPoly.variable(F, n, i) for i in range(n)]
    for _ in range(attempts):
        terms = {}
        for i in range(n):
            terms[tuple(1 if j == i else 0 for j in range(n))] = F.random_scalar(rng)
        candidates.append(MultiPoly(F, n, terms))
    for cand in candidates:
        mp = minimal_polynomial(multiplication_matrix(ideal, cand))
        if mp.degree == k:
            # quotient = k[cand], so the ideal is maximal iff mp is irreducible
            factors = factor_univariate(mp, rng)
            return len(factors) == 1 and factors[0][1] == 1
    if F.is_prime_field and F.characteristic**k <= exhaustive_bound:
        p = F.characteristic
        std = ideal.standard_monomials
        for coeffs in _product(range(p), repeat=k):
            if not any(coeffs):
                continue
            elem = MultiPoly(F, n, dict(zip(std, coeffs)))
            _, piv = rref(multiplication_matrix(ideal, elem))
            if len(piv) < k:
                return False
        return True
    raise RuntimeError("could not certify the quotient either way")


class MaximalIdealKey:
    """Canonical tag of a maximal ideal of k[t1..tn]: its reduced Groebner
    basis plus the residue field degree dim_k k[T]/M."""

    __slots__ = ("ideal", "residue_degree")

    def __init__(self, ideal, residue_degree):
        if residue_degree != ideal.quotient_dim:
            raise ValueError("residue degree must equal the quotient dimension")
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "residue_degree", residue_degree)

    def __setattr__(self, name, value):
        raise AttributeError("MaximalIdealKey is immutable")

    def sort_key(self):
        return (self.residue_degree, self.ideal.generator_strings())

    def __eq__(self, other):
        if isinstance(other, MaximalIdealKey):
            return self.ideal == other.ideal
        return NotImplemented

    def __hash__(self):
        return hash(self.ideal)

    def __repr__(self):
        return f"MaximalIdealKey([{', '.join(self.ideal.generator_strings())}])"


class InvariantSubmodule:
    """A subspace closed under every matrix of a commuting tuple."""

    __slots__ = ("parent_dim", "space")

    def __init__(self, t, space):
        if space.field != t.field or space.ambient_dim != t.dim:
            raise ValueError("subspace does not live in the module's space")
        for k, m in enumerate(t.mats):
            for v in space.basis:
                if not space.contains(m.mul_vec(v)):
                    raise ValueError(f"subspace is not invariant under matrix {k}")
        object.__setattr__(self, "parent_dim", t.dim)
        object.__setattr__(self, "space", space)

    def __setattr__(self, name, value):
        raise AttributeError("InvariantSubmodule is immutable")

    @property
    def dim(self):
        return self.space.dim

    def __eq__(self, other):
        if isinstance(other, InvariantSubmodule):
            return self.parent_dim == other.parent_dim and self.space == other.space
        return NotImplemented

    def __hash__(self):
        return hash((self.parent_dim, self.space))

    def __repr__(self):
        return f"InvariantSubmodule(dim {self.dim} of k^{self.parent_dim})"


class CommutingTuple:
    """n pairwise-commuting d x d matrices over an exact field.

    Commutation is checked at construction; a failing pair is reported
    with its indices.
    """

    __slots__ = ("field", "nvars", "dim", "mats")

    def __init__(self, field, nvars, dim, mats):
        mats = tuple(mats)
        if nvars < 1:
            raise ValueError("need at least one endomorphism")
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        if len(mats) != nvars:
            raise ValueError(f"expected {nvars} matrices, got {len(mats)}")
        for k, m in enumerate(mats):
            if not isinstance(m, Matrix):
                raise TypeError(f"matrix {k} is not a Matrix")
            if m.field != field:
                raise FieldMismatchError(f"matrix {k} is over {m.field}, not {field}")
            if m.rows != dim or m.cols != dim:
                raise ValueError(
                    f"matrix {k} is {m.rows}x{m.cols}, expected {dim}x{dim}"
                )
        for i in range(nvars):
            for j in range(i + 1, nvars):
                if mats[i] @ mats[j] != mats[j] @ mats[i]:
                    raise NonCommutingError(i, j)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "mats", mats)

    def __setattr__(self, name, value):
        raise AttributeError("CommutingTuple is immutable")

    @classmethod
    def zeros(cls, field, nvars, dim):
        return cls(field, nvars, dim, [Matrix.zeros(field, dim, dim)] * nvars)

    @classmethod
    def direct_sum(cls, *tuples):
        if not tuples:
            raise ValueError("need at least one summand")
        field, nvars = tuples[0].field, tuples[0].nvars
        for t in tuples:
            if t.field != field or t.nvars != nvars:
                raise FieldMismatchError("summands must share field and arity")
        mats = [
            Matrix.block_diag(field, [t.mats[i] for t in tuples])
            for i in range(nvars)
        ]
        return cls(field, nvars, sum(t.dim for t in tuples), mats)

    def __eq__(self, other):
        if isinstance(other, CommutingTuple):
            return (
                self.field == other.field
                and self.nvars == other.nvars
                and self.mats == other.mats
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.nvars, self.mats))

    def __repr__(self):
        return f"CommutingTuple(n={self.nvars}, dim={self.dim} over {self.field!r})"

    # -- submodules ----------------------------------------------------------

    def _as_space(self, s):
        if isinstance(s, InvariantSubmodule):
            if s.parent_dim != self.dim:
                raise ValueError("submodule belongs to a different module")
            return s.space
        if isinstance(s, Subspace):
            return s
        raise TypeError(f"expected InvariantSubmodule or Subspace, got {s!r}")

    def generated_submodule(self, vectors):
        """Smallest invariant subspace containing the vectors: close under
        every matrix by breadth-first application and echelon insertion."""
        ech = Echelon(self.field, self.dim)
        queue = deque()
        for v in vectors:
            v = tuple(self.field.coerce(x) for x in v)
            added, _ = ech.insert(v)
            if added:
                queue.append(v)
        while queue:
            v = queue.popleft()
            for m in self.mats:
                w = m.mul_vec(v)
                added, _ = ech.insert(w)
                if added:
                    queue.append(w)
        return InvariantSubmodule(self, Subspace(self.field, self.dim, ech.rows))

    def restrict(self, s):
        """The induced tuple on an invariant subspace, in its echelon basis."""
        sp = self._as_space(s)
        mats = []
        for k, m in enumerate(self.mats):
            cols = []
            for b in sp.basis:
                w = m.mul_vec(b)
                if not sp.contains(w):
                    raise ValueError(f"subspace is not invariant under matrix {k}")
                cols.append(sp.coords(w, check=False))
            grid = [[cols[j][i] for j in range(sp.dim)] for i in range(sp.dim)]
            mats.append(Matrix(self.field, grid, cols=sp.dim))
        return CommutingTuple(self.field, self.nvars, sp.dim, mats)

    def quotient(self, s):
        """The induced tuple on V/s, using the non-pivot coordinates of the
        submodule's echelon basis as the complement basis."""
        sp = self._as_space(s)
        for k, m in enumerate(self.mats):
            for b in sp.basis:
                if not sp.contains(m.mul_vec(b)):
                    raise ValueError(f"subspace is not invariant under matrix {k}")
        comp = sp.complement_coords()
        F = self.field
        mats = []
        for m in self.mats:
            cols = []
            for c in comp:
                e = tuple(F.one if i == c else F.zero for i in range(self.dim))
                r = sp.reduce(m.mul_vec(e))
                cols.append(tuple(r[cc] for cc in comp))
            grid = [[cols[j][i] for j in range(len(comp))] for i in range(len(comp))]
            mats.append(Matrix(F, grid, cols=len(comp)))
        return CommutingTuple(F, self.nvars, len(comp), mats)

    # -- annihilator ideal -----------------------------------------------------

    def annihilator_ideal(self):
        """Kernel of evaluation k[t1..tn] -> k[f1..fn], as a reduced
        Groebner basis plus the standard monomials.

        Breadth-first over monomials in increasing graded-lex order: each
        candidate's matrix is reduced against the span of the standard
        monomials' matrices; a dependency yields a generator (and the
        candidate is not expanded), independence makes the candidate
        standard and enqueues its variable multiples.  Terminates because
        the standard count is at most d^2.
        """
        F, n, d = self.field, self.nvars, self.dim
        if d == 0:
            return Ideal.unit(F, n)
        ech = Echelon(F, d * d, track=True)
        std = []
        std_mats = {}
        gens = []
        leads = []
        origin = (0,) * n
        heap = [(grlex_key(origin), origin)]
        seen = {origin}
        while heap:
            _, m = heapq.heappop(heap)
            if any(mono_divides(lm, m) for lm in leads):
                continue
            if m == origin:
                mat = Matrix.identity(F, d)
            else:
                mat = None
                for i in range(n):
                    if m[i]:
                        parent = tuple(e - 1 if j == i else e for j, e in enumerate(m))
                        if parent in std_mats:
                            mat = self.mats[i] @ std_mats[parent]
                            break
                if mat is None:
                    raise RuntimeError(f"no standard parent for monomial {m}")
            vec = [x for row in mat.entries for x in row]
            added, combo = ech.insert(vec)
            if added:
                std_mats[m] = mat
                std.append(m)
                for i in range(n):
                    child = tuple(e + 1 if j == i else e for j, e in enumerate(m))
                    if child not in seen:
                        seen.add(child)
                        heapq.heappush(heap, (grlex_key(child), child))
            else:
                terms = {m: F.one}
                for g, c in combo.items():
                    terms[std[g]] = F.neg(c)
                gens.append(MultiPoly(F, n, terms))
                leads.append(m)
        return Ideal(F, n, gens, std)

    # -- radical and filtration --------------------------------------------

    def radical_submodule(self):
        """The subspace Jac(R).V for R = k[T]/Ann(V): the sum of the images
        of s_i(f_i) with s_i the squarefree part of f_i's minimal
        polynomial (Seidenberg; needs a perfect field, which both supported
        fields are)."""
        F, d = self.field, self.dim
        total = Subspace.zero(F, d)
        if d == 0:
            return InvariantSubmodule(self, total)
        for m in self.mats:
            s = squarefree_part(minimal_polynomial(m))
            total = total.sum(column_space(eval_poly_at_matrix(s, [m])))
        return InvariantSubmodule(self, total)

    def semisimplify(self):
        """The semisimple quotient V/(Jac.V)."""
        return self.quotient(self.radical_submodule())

    def radical_filtration(self):
        """Layers (rad^j V)/(rad^{j+1} V), top down; each is semisimple and
        the dimensions add up to dim V."""
        layers = []
        cur = self
        while cur.dim > 0:
            r = cur.radical_submodule()
            layers.append(cur.quotient(r))
            if r.dim == 0:
                break
            cur = cur.restrict(r)
        return layers

    # -- primary decomposition ------------------------------------------------

    def _local_pieces(self, rng=None):
        """Split V into local pieces; returns [(submodule, piece, key)]
        sorted by the canonical key order."""
        if rng is None:
            rng = random.Random(DEFAULT_SEED)
        F, n, d = self.field, self.nvars, self.dim
        if d == 0:
            return []
        work = [Subspace.full(F, d)]
        done = []
        while work:
            sp = work.pop()
            t = self.restrict(sp)
            split = None
            for i in range(n):
                factors = factor_univariate(minimal_polynomial(t.mats[i]), rng)
                if len(factors) >= 2:
                    split = (i, factors)
                    break
            if split is None:
                done.append(sp)
                continue
            i, factors = split
            for q, e in factors:
                # ker q(f_i)^e is invariant under every f_j by commutativity
                ker = kernel_basis(eval_poly_at_matrix(q**e, [t.mats[i]]))
                vecs = []
                for kv in ker.basis:
                    w = [F.zero] * d
                    for c, b in zip(kv, sp.basis):
                        if c:
                            w = [F.add(x, F.mul(c, y)) for x, y in zip(w, b)]
                    vecs.append(w)
                work.append(Subspace(F, d, vecs))
        if sum(sp.dim for sp in done) != d:
            raise RuntimeError("primary decomposition lost dimensions")
        stacked = Subspace(F, d, [v for sp in done for v in sp.basis])
        if stacked.dim != d:
            raise RuntimeError("primary decomposition pieces are not independent")
        out = []
        for sp in done:
            piece = self.restrict(sp)
            key = piece.maximal_ideal_key(rng)
            out.append((InvariantSubmodule(self, sp), piece, key))
        out.sort(key=lambda item: item[2].sort_key())
        return out

    def primary_decomposition(self, rng=None):
        """V as a direct sum of pieces, each local at one maximal ideal:
        on every piece each f_i acts with irreducible-power minimal
        polynomial.  Pieces come back in canonical key order."""
        return [(sub, piece) for sub, piece, _ in self._local_pieces(rng)]

    def maximal_ideal_key(self, rng=None):
        """The key of the unique maximal ideal over a local tuple's
        annihilator: the annihilator of the semisimple quotient."""
        if rng is None:
            rng = random.Random(DEFAULT_SEED)
        if self.dim == 0:
            raise ValueError("the zero module has no maximal ideal key")
        for i, m in enumerate(self.mats):
            factors = factor_univariate(minimal_polynomial(m), rng)
            if len(factors) != 1:
                raise ValueError(
                    f"tuple is not local: matrix {i} has {len(factors)} distinct "
                    "irreducible factors in its minimal polynomial"
                )
        ss = self.semisimplify()
        ideal = ss.annihilator_ideal()
        rd = ideal.quotient_dim
        if rd == 0 or ss.dim % rd:
            raise RuntimeError(
                "semisimple quotient dimension is not a multiple of the residue degree"
            )
        return MaximalIdealKey(ideal, rd)
