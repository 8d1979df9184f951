"""
Free graded Lie algebras over Q, realised inside the tensor algebra.

Elements are sparse maps from tensor words (tuples of generator ids) to Fractions. A
chain Lie algebra (L_V, d) is a ``LieModel``: generators plus the value of d on each
generator, extended to words by the graded Leibniz rule.

The basis in degree n is the set of bracketings of Lyndon words of degree n, plus the
squares [P(u), P(u)] of odd Lyndon words u. Lyndon words are built from their standard
factorizations (u, v): u < v Lyndon and u a letter or u's right factor >= v. The smallest
word of every bracketing is its own leading word, so the basis is triangular against those
words and needs no elimination. Its size is checked against the Witt count from
``series.witt_decompose``. Ranks of sets of Lie elements are taken over QQ with sympy on
the leading-word columns only.
"""

import logging
import threading
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from rational_fourfolds import config
from rational_fourfolds.errors import BudgetExceededError, ConsistencyError, DomainError
from rational_fourfolds.series import GradedDims, tensor_hilbert, witt_decompose

logger = logging.getLogger(__name__)

Word = tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    id: int
    degree: int
    name: str = ""

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError(f"generator {self.name or self.id} needs degree >= 1")
        if not self.name:
            object.__setattr__(self, "name", f"g{self.id}")


@dataclass(frozen=True, eq=False)
class LieElement:
    """Homogeneous element of TV: word -> nonzero coefficient, all words of one degree."""

    terms: Mapping[Word, Fraction]
    degree: int

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {w: Fraction(c) for w, c in self.terms.items() if c != 0}
        )
        if () in self.terms:
            raise DomainError("the empty word is not a Lie element")

    @classmethod
    def zero(cls, degree: int) -> "LieElement":
        return cls({}, degree)

    @classmethod
    def word(cls, word: Word, degree: int, coefficient=1) -> "LieElement":
        return cls({tuple(word): Fraction(coefficient)}, degree)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_degree(self, other: "LieElement"):
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise DomainError(f"cannot add elements of degrees {self.degree} and {other.degree}")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check_degree(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        degree = self.degree if self.terms else other.degree
        return LieElement(terms, degree)

    def __neg__(self) -> "LieElement":
        return LieElement({w: -c for w, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __mul__(self, scalar) -> "LieElement":
        scalar = Fraction(scalar)
        return LieElement({w: scalar * c for w, c in self.terms.items()}, self.degree)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return f"LieElement(0, degree={self.degree})"
        body = " + ".join(f"{c}*{'.'.join(map(str, w))}" for w, c in sorted(self.terms.items()))
        return f"LieElement({body}, degree={self.degree})"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Graded commutator x*y - (-1)^{|x||y|} y*x in the tensor algebra."""
    sign = -1 if (x.degree * y.degree) % 2 else 1
    terms: dict[Word, Fraction] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = ca * cb
            terms[a + b] = terms.get(a + b, 0) + c
            terms[b + a] = terms.get(b + a, 0) - sign * c
    return LieElement(terms, x.degree + y.degree)


@dataclass(frozen=True, eq=False)
class LieModel:
    """Chain Lie algebra (L_V, d): generators with ids 0..n-1 and d on each generator.

    Generators missing from ``differential`` are cycles. Every d(g) must be a Lie element.
    """

    generators: tuple[Generator, ...]
    differential: Mapping[int, LieElement] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False, compare=False)

    def __post_init__(self):
        ids = [g.id for g in self.generators]
        if ids != list(range(len(ids))):
            raise DomainError(f"generator ids must be 0..{len(ids) - 1} in order, got {ids}")
        degrees = self.degrees
        for gid, image in self.differential.items():
            if gid not in range(len(ids)):
                raise DomainError(f"differential given on unknown generator {gid}")
            for word in image.terms:
                unknown = [letter for letter in word if letter not in range(len(ids))]
                if unknown:
                    raise DomainError(f"d({self.generators[gid].name}) uses unknown {unknown}")
                if sum(degrees[letter] for letter in word) != image.degree:
                    raise DomainError(f"d({self.generators[gid].name}) is not homogeneous")
            if not image.is_zero() and image.degree != degrees[gid] - 1:
                raise DomainError(
                    f"d({self.generators[gid].name}) has degree {image.degree}, "
                    f"expected {degrees[gid] - 1}"
                )
            if not is_lie_element(self, image):
                raise DomainError(f"d({self.generators[gid].name}) is not a Lie element")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def generator(self, name: str) -> LieElement:
        for g in self.generators:
            if g.name == name:
                return LieElement.word((g.id,), g.degree)
        raise DomainError(f"no generator named {name!r}")

    def generator_dims(self, order: int) -> GradedDims:
        counts: dict[int, int] = {}
        for g in self.generators:
            counts[g.degree] = counts.get(g.degree, 0) + 1
        return GradedDims.from_counts(counts, order)

    def word_count(self, degree: int) -> int:
        """Number of tensor words of the given degree."""
        return int(tensor_hilbert(self.generator_dims(degree), degree)[degree])

    def d_squared_vanishes(self) -> bool:
        return all(
            differential(self, differential(self, LieElement.word((g.id,), g.degree))).is_zero()
            for g in self.generators
        )


def differential(model: LieModel, x: LieElement) -> LieElement:
    """Extend d from generators to words: d(ab) = da.b + (-1)^{|a|} a.db."""
    if x.is_zero():
        return LieElement.zero(x.degree - 1)
    if x.degree < 1:
        raise DomainError(f"differential needs degree >= 1, got {x.degree}")
    degrees = model.degrees
    n = len(degrees)
    terms: dict[Word, Fraction] = {}
    for word, coefficient in x.terms.items():
        prefix_degree = 0
        for i, letter in enumerate(word):
            if not 0 <= letter < n:
                raise DomainError(f"word {word} contains unknown generator {letter}")
            image = model.differential.get(letter)
            if image is not None and image.terms:
                c = -coefficient if prefix_degree % 2 else coefficient
                head, tail = word[:i], word[i + 1 :]
                for middle, cm in image.terms.items():
                    key = head + middle + tail
                    terms[key] = terms.get(key, 0) + c * cm
            prefix_degree += degrees[letter]
    return LieElement(terms, x.degree - 1)


def _word_matrix(vectors: list[Mapping[Word, Fraction]]) -> tuple[DomainMatrix, list[Word]]:
    """Sparse matrix over QQ with one row per vector and one column per word."""
    columns: dict[Word, int] = {}
    rows: dict[int, dict[int, object]] = {}
    for i, vec in enumerate(vectors):
        row = {}
        for w, c in vec.items():
            j = columns.setdefault(w, len(columns))
            row[j] = QQ(c.numerator, c.denominator)
        if row:
            rows[i] = row
    matrix = DomainMatrix(rows, (len(vectors), max(len(columns), 1)), QQ)
    return matrix, list(columns)


def _blocks(vectors: list[Mapping[Word, Fraction]]) -> list[list[Mapping[Word, Fraction]]]:
    """Group vectors into classes that share no word; ranks add up over the classes."""
    parent: dict[Word, Word] = {}

    def find(w: Word) -> Word:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for vec in vectors:
        root = None
        for w in vec:
            parent.setdefault(w, w)
            r = find(w)
            if root is None:
                root = r
            elif r != root:
                parent[r] = root
    groups: dict[Word, list[Mapping[Word, Fraction]]] = {}
    for vec in vectors:
        if vec:
            groups.setdefault(find(next(iter(vec))), []).append(vec)
    return list(groups.values())


def exact_rank(vectors: list[Mapping[Word, Fraction]]) -> int:
    """Rank over QQ of sparse vectors indexed by words."""
    rank = 0
    for block in _blocks(vectors):
        matrix, _ = _word_matrix(block)
        rank += matrix.rank()
    return rank


def check_budget(
    model: LieModel, n: int, *, max_words: int | None = None, max_basis: int | None = None
):
    """Refuse degree n when its tensor-word count or its Lie dimension is over budget."""
    max_words = config.MAX_WORDS if max_words is None else max_words
    max_basis = config.MAX_BASIS if max_basis is None else max_basis
    words = model.word_count(n)
    if words > max_words:
        raise BudgetExceededError("tensor-word count over budget", n, words, max_words)
    size = witt_decompose(model.generator_dims(n), n).dim(n)
    if size > max_basis:
        raise BudgetExceededError("free Lie dimension over budget", n, size, max_basis)


def _lyndon_words(model: LieModel, n: int) -> dict[Word, tuple[Word, Word] | None]:
    """Lyndon words of degree n with their standard factorizations (None for letters)."""
    key = ("lyndon", n)
    cached = model._cache.get(key)
    if cached is not None:
        return cached
    words: dict[Word, tuple[Word, Word] | None] = {
        (g.id,): None for g in model.generators if g.degree == n
    }
    for i in range(1, n):
        right = _lyndon_words(model, n - i)
        for u, factors in _lyndon_words(model, i).items():
            for v in right:
                if u < v and (factors is None or factors[1] >= v):
                    words[u + v] = (u, v)
    with model._lock:
        model._cache.setdefault(key, words)
    return model._cache[key]


def _hall_words(model: LieModel, n: int) -> dict[Word, tuple[Word, Word] | None]:
    """Leading words of the degree-n basis: Lyndon words, and uu for u Lyndon of odd degree."""
    key = ("hall", n)
    cached = model._cache.get(key)
    if cached is not None:
        return cached
    words = dict(_lyndon_words(model, n))
    if n % 4 == 2:
        words.update({u + u: (u, u) for u in _lyndon_words(model, n // 2)})
    expected = witt_decompose(model.generator_dims(n), n).dim(n)
    if len(words) != expected:
        raise ConsistencyError(f"Lie basis size in degree {n} vs Witt count", expected, len(words))
    with model._lock:
        model._cache.setdefault(key, words)
    return model._cache[key]


def _hall_element(model: LieModel, word: Word) -> LieElement:
    """The basis element with leading word ``word``: [P(u), P(v)] over its factorization."""
    elements = model._cache.setdefault("elements", {})
    element = elements.get(word)
    if element is not None:
        return element
    degree = sum(model.degrees[letter] for letter in word)
    factors = _hall_words(model, degree)[word]
    if factors is None:
        element = LieElement.word(word, degree)
    else:
        left, right = factors
        element = bracket(_hall_element(model, left), _hall_element(model, right))
    lead = min(element.terms, default=None)
    if lead != word:
        raise ConsistencyError("leading word of a basis bracketing", word, lead)
    elements[word] = element
    return element


def lie_basis(
    model: LieModel, n: int, *, max_words: int | None = None, max_basis: int | None = None
) -> list[LieElement]:
    """Basis of the degree-n part of the free Lie algebra on the model's generators.

    Sorted by leading word. The size is checked against the Witt count.
    """
    if n < 1:
        raise DomainError(f"Lie basis needs degree >= 1, got {n}")
    key = ("basis", n)
    cached = model._cache.get(key)
    if cached is not None:
        return cached
    check_budget(model, n, max_words=max_words, max_basis=max_basis)
    basis = [_hall_element(model, word) for word in sorted(_hall_words(model, n))]
    logger.debug("lie_basis degree %d: %d elements", n, len(basis))
    with model._lock:
        model._cache.setdefault(key, basis)
    return model._cache[key]


def is_lie_element(model: LieModel, x: LieElement) -> bool:
    """Whether x lies in the free Lie algebra: reduce it against the basis, smallest lead first."""
    if x.is_zero():
        return True
    remainder = dict(x.terms)
    for lead in sorted(_hall_words(model, x.degree)):
        c = remainder.get(lead)
        if not c:
            continue
        element = _hall_element(model, lead)
        factor = c / element.terms[lead]
        for w, e in element.terms.items():
            value = remainder.get(w, 0) - factor * e
            if value:
                remainder[w] = value
            else:
                remainder.pop(w, None)
    return not remainder


def boundary_rank(
    model: LieModel, n: int, *, max_words: int | None = None, max_basis: int | None = None
) -> int:
    """Rank of d: L_n -> L_{n-1}.

    An element of L_{n-1} is fixed by its coefficients on the leading words of degree n-1,
    so the images are cut down to those columns. Basis elements built from cycles alone are
    cycles and are skipped.
    """
    if n <= 1:
        return 0
    key = ("boundary", n)
    cached = model._cache.get(key)
    if cached is not None:
        return cached
    check_budget(model, n, max_words=max_words, max_basis=max_basis)
    columns = _hall_words(model, n - 1)
    moving = {gid for gid, image in model.differential.items() if not image.is_zero()}
    images = []
    for word in _hall_words(model, n):
        if moving.isdisjoint(word):
            continue
        image = differential(model, _hall_element(model, word))
        images.append({w: c for w, c in image.terms.items() if w in columns})
    rank = exact_rank(images)
    logger.debug("boundary degree %d: rank %d from %d images", n, rank, len(images))
    with model._lock:
        model._cache[key] = rank
    return rank


def homology_dim(
    model: LieModel, n: int, *, max_words: int | None = None, max_basis: int | None = None
) -> int:
    """dim H_n(L_V, d) = dim L_n - rank(d on L_n) - rank(d on L_{n+1})."""
    if n < 1:
        raise DomainError(f"homology degree must be >= 1, got {n}")
    budget = {"max_words": max_words, "max_basis": max_basis}
    check_budget(model, n + 1, **budget)
    dim_n = len(_hall_words(model, n))
    outgoing = boundary_rank(model, n, **budget)
    incoming = boundary_rank(model, n + 1, **budget)
    value = dim_n - outgoing - incoming
    logger.debug(
        "H_%d: dim L=%d, rank out=%d, rank in=%d -> %d", n, dim_n, outgoing, incoming, value
    )
    return value


def d_squared_on_basis(
    model: LieModel, n: int, *, max_words: int | None = None, max_basis: int | None = None
) -> bool:
    """True when d(d(x)) = 0 for every basis element x of degree n."""
    if n < 2:
        return True
    for x in lie_basis(model, n, max_words=max_words, max_basis=max_basis):
        if not differential(model, differential(model, x)).is_zero():
            return False
    return True
