"""
Finite-set kernel.

Canonical, deterministic constructions over finite sets of integer ids:
(co)limits of spans, cospans and parallel pairs, kernel pairs, image
factorizations and the Kleene star. Every higher module builds its
componentwise (co)limits out of these.

All apexes are renumbered to dense ids 0..n-1; quotient classes are
represented by their minimal element and sorted by it.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product as _cartesian
from typing import (Dict, Generic, Iterable, Iterator, List, Mapping,
                    Optional, Sequence, Tuple, TypeVar)

from .errors import CarrierMismatch

ElemId = int
Word = Tuple[ElemId, ...]

O = TypeVar('O')
A = TypeVar('A')


@dataclass(frozen=True)
class FinSet:
    """A finite set of ids, iterated in sorted order."""

    elems: Tuple[ElemId, ...] = ()

    def __post_init__(self):
        elems = tuple(self.elems)
        for a, b in zip(elems, elems[1:]):
            if a >= b:
                raise CarrierMismatch(f"FinSet ids must be strictly increasing, got {elems}")
        object.__setattr__(self, 'elems', elems)

    @classmethod
    def of(cls, items: Iterable[ElemId]) -> 'FinSet':
        return cls(tuple(sorted(set(items))))

    @classmethod
    def range(cls, n: int) -> 'FinSet':
        return cls(tuple(range(n)))

    @cached_property
    def _position(self) -> Dict[ElemId, int]:
        return {x: i for i, x in enumerate(self.elems)}

    def index(self, x: ElemId) -> int:
        try:
            return self._position[x]
        except KeyError:
            raise CarrierMismatch(f"{x} is not an element of {self}") from None

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator[ElemId]:
        return iter(self.elems)

    def __contains__(self, x: object) -> bool:
        return x in self._position

    def __repr__(self) -> str:
        return f"FinSet({list(self.elems)})"


EMPTY = FinSet()


@dataclass(frozen=True)
class FinFn:
    """
    A total function between finite sets.

    ``images[i]`` is the image of ``dom.elems[i]``.
    """

    dom: FinSet
    cod: FinSet
    images: Tuple[ElemId, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != len(self.dom):
            raise CarrierMismatch(f"function table has {len(images)} entries for a domain of {len(self.dom)}")
        for y in images:
            if y not in self.cod:
                raise CarrierMismatch(f"image {y} lies outside the codomain {self.cod}")
        object.__setattr__(self, 'images', images)

    @classmethod
    def from_mapping(cls, dom: FinSet, cod: FinSet, mapping: Mapping[ElemId, ElemId]) -> 'FinFn':
        missing = [x for x in dom if x not in mapping]
        if missing:
            raise CarrierMismatch(f"function undefined on {missing}")
        return cls(dom, cod, tuple(mapping[x] for x in dom))

    def __call__(self, x: ElemId) -> ElemId:
        return self.images[self.dom.index(x)]

    def items(self) -> Iterator[Tuple[ElemId, ElemId]]:
        return zip(self.dom.elems, self.images)

    def as_dict(self) -> Dict[ElemId, ElemId]:
        return dict(self.items())

    def image(self) -> FinSet:
        return FinSet.of(self.images)

    def preimage(self, y: ElemId) -> List[ElemId]:
        return [x for x, fx in self.items() if fx == y]

    def __repr__(self) -> str:
        return f"FinFn({self.as_dict()} : {list(self.dom.elems)} -> {list(self.cod.elems)})"


@dataclass(frozen=True)
class SpanResult(Generic[O, A]):
    """Apex with two legs out of it (pullbacks, kernel pairs, products)."""

    apex: O
    leg1: A
    leg2: A


@dataclass(frozen=True)
class CospanResult(Generic[O, A]):
    """Apex with two legs into it (pushouts, coproducts)."""

    apex: O
    leg1: A
    leg2: A


class UnionFind:
    """
    Disjoint sets over arbitrary hashable keys.

    The representative of a set is always its minimal key.
    """

    def __init__(self, keys: Iterable = ()):
        self._parent: Dict = {}
        for k in keys:
            self.add(k)

    def add(self, key) -> None:
        if key not in self._parent:
            self._parent[key] = key

    def __contains__(self, key) -> bool:
        return key in self._parent

    def find(self, key):
        parent = self._parent
        root = key
        while parent[root] != root:
            root = parent[root]
        while parent[key] != root:
            parent[key], key = root, parent[key]
        return root

    def union(self, a, b) -> bool:
        """Merge the sets of a and b; returns True if they were distinct."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self._parent[rb] = ra
        return True

    def same(self, a, b) -> bool:
        return self.find(a) == self.find(b)

    def classes(self) -> List[List]:
        """All sets, each sorted, ordered by representative."""
        groups: Dict = {}
        for k in self._parent:
            groups.setdefault(self.find(k), []).append(k)
        return [sorted(groups[r]) for r in sorted(groups)]


# -- basic arrows -------------------------------------------------------------

def identity(X: FinSet) -> FinFn:
    return FinFn(X, X, X.elems)


def inclusion(A: FinSet, X: FinSet) -> FinFn:
    """Inclusion of a subset A of X."""
    return FinFn(A, X, A.elems)


def constant(X: FinSet, Y: FinSet, y: ElemId) -> FinFn:
    return FinFn(X, Y, (y,) * len(X))


def compose(g: FinFn, f: FinFn) -> FinFn:
    """g ∘ f, defined when cod(f) = dom(g)."""
    if f.cod != g.dom:
        raise CarrierMismatch(f"cannot compose: cod(f)={f.cod} differs from dom(g)={g.dom}")
    return FinFn(f.dom, g.cod, tuple(g(y) for y in f.images))


def is_injective(f: FinFn) -> bool:
    return len(set(f.images)) == len(f.images)


def is_surjective(f: FinFn) -> bool:
    return len(set(f.images)) == len(f.cod)


def is_bijective(f: FinFn) -> bool:
    return is_injective(f) and is_surjective(f)


def inverse(f: FinFn) -> FinFn:
    if not is_bijective(f):
        raise CarrierMismatch("only bijections have inverses")
    return FinFn.from_mapping(f.cod, f.dom, {y: x for x, y in f.items()})


def _require_same(a: FinSet, b: FinSet, what: str) -> None:
    if a != b:
        raise CarrierMismatch(f"{what}: {a} differs from {b}")


# -- limits -------------------------------------------------------------------

def pullback(f: FinFn, g: FinFn) -> SpanResult[FinSet, FinFn]:
    """
    Pullback of f: A → C and g: B → C.

    The apex enumerates the pairs (a, b) with f(a) = g(b) in lexicographic
    order and renumbers them 0..n-1.
    """
    _require_same(f.cod, g.cod, "pullback needs a common codomain")
    fibres: Dict[ElemId, List[ElemId]] = {}
    for b, c in g.items():
        fibres.setdefault(c, []).append(b)
    pairs = [(a, b) for a, c in f.items() for b in fibres.get(c, ())]
    apex = FinSet.range(len(pairs))
    return SpanResult(apex,
                      FinFn(apex, f.dom, tuple(a for a, _ in pairs)),
                      FinFn(apex, g.dom, tuple(b for _, b in pairs)))


def kernel_pair(f: FinFn) -> SpanResult[FinSet, FinFn]:
    return pullback(f, f)


def pair_index(span: SpanResult) -> Dict[Tuple[ElemId, ElemId], ElemId]:
    """Map each (leg1(p), leg2(p)) to p; later duplicates are dropped."""
    index: Dict[Tuple[ElemId, ElemId], ElemId] = {}
    for p in span.apex:
        index.setdefault((span.leg1(p), span.leg2(p)), p)
    return index


def product(A: FinSet, B: FinSet) -> SpanResult[FinSet, FinFn]:
    pairs = list(_cartesian(A.elems, B.elems))
    apex = FinSet.range(len(pairs))
    return SpanResult(apex,
                      FinFn(apex, A, tuple(a for a, _ in pairs)),
                      FinFn(apex, B, tuple(b for _, b in pairs)))


def equalizer(f: FinFn, g: FinFn) -> FinFn:
    """Inclusion of {x | f(x) = g(x)}, its domain renumbered."""
    _require_same(f.dom, g.dom, "equalizer needs parallel arrows")
    _require_same(f.cod, g.cod, "equalizer needs parallel arrows")
    kept = tuple(x for x in f.dom if f(x) == g(x))
    return FinFn(FinSet.range(len(kept)), f.dom, kept)


# -- colimits -----------------------------------------------------------------

def quotient(carrier: FinSet, uf: UnionFind) -> FinFn:
    """Canonical surjection from carrier onto dense class ids."""
    reps = sorted({uf.find(x) for x in carrier})
    number = {r: i for i, r in enumerate(reps)}
    return FinFn(carrier, FinSet.range(len(reps)), tuple(number[uf.find(x)] for x in carrier))


def coequalizer(f: FinFn, g: FinFn) -> FinFn:
    """Quotient of the codomain by the least equivalence with f(x) ~ g(x)."""
    _require_same(f.dom, g.dom, "coequalizer needs parallel arrows")
    _require_same(f.cod, g.cod, "coequalizer needs parallel arrows")
    uf = UnionFind(f.cod)
    for x in f.dom:
        uf.union(f(x), g(x))
    return quotient(f.cod, uf)


def coproduct(*sets: FinSet) -> Tuple[FinSet, List[FinFn]]:
    """Disjoint union with its coprojections; blocks laid out in argument order."""
    offset = 0
    injections: List[FinFn] = []
    total = sum(len(s) for s in sets)
    apex = FinSet.range(total)
    for s in sets:
        injections.append(FinFn(s, apex, tuple(range(offset, offset + len(s)))))
        offset += len(s)
    return apex, injections


def pushout(f: FinFn, g: FinFn) -> CospanResult[FinSet, FinFn]:
    """
    Pushout of f: C → A and g: C → B.

    Computed as the coequalizer of the induced pair C ⇉ A ⊎ B; A's block
    precedes B's, so when f and g are injective and A is dense, the ids of A
    survive unchanged.
    """
    _require_same(f.dom, g.dom, "pushout needs a common domain")
    total, (ia, ib) = coproduct(f.cod, g.cod)
    uf = UnionFind(total)
    for c in f.dom:
        uf.union(ia(f(c)), ib(g(c)))
    q = quotient(total, uf)
    return CospanResult(q.cod, compose(q, ia), compose(q, ib))


def image_factorize(f: FinFn) -> Tuple[FinFn, FinFn]:
    """(e, m) with e surjective, m injective and m ∘ e = f."""
    image = f.image()
    middle = FinSet.range(len(image))
    e = FinFn(f.dom, middle, tuple(image.index(y) for y in f.images))
    m = FinFn(middle, f.cod, image.elems)
    return e, m


# -- universal arrows ----------------------------------------------------------

def pushout_mediator(po: CospanResult, u: FinFn, v: FinFn) -> Optional[FinFn]:
    """
    The unique φ: apex → Y with φ ∘ leg1 = u and φ ∘ leg2 = v, or None.

    None is returned when the cocone does not factor or when the legs are not
    jointly surjective (the factorization would not be unique).
    """
    _require_same(u.dom, po.leg1.dom, "cocone leg 1")
    _require_same(v.dom, po.leg2.dom, "cocone leg 2")
    _require_same(u.cod, v.cod, "cocone vertex")
    assigned: Dict[ElemId, ElemId] = {}
    for leg, w in ((po.leg1, u), (po.leg2, v)):
        for x in leg.dom:
            p = leg(x)
            if assigned.setdefault(p, w(x)) != w(x):
                return None
    if len(assigned) != len(po.apex):
        return None
    return FinFn.from_mapping(po.apex, u.cod, assigned)


def pullback_mediator(pb: SpanResult, u: FinFn, v: FinFn) -> Optional[FinFn]:
    """The unique φ: X → apex with leg1 ∘ φ = u and leg2 ∘ φ = v, or None."""
    _require_same(u.cod, pb.leg1.cod, "cone leg 1")
    _require_same(v.cod, pb.leg2.cod, "cone leg 2")
    _require_same(u.dom, v.dom, "cone vertex")
    index: Dict[Tuple[ElemId, ElemId], List[ElemId]] = {}
    for p in pb.apex:
        index.setdefault((pb.leg1(p), pb.leg2(p)), []).append(p)
    images = []
    for x in u.dom:
        found = index.get((u(x), v(x)), [])
        if len(found) != 1:
            return None
        images.append(found[0])
    return FinFn(u.dom, pb.apex, tuple(images))


def count_pushout_mediators(po: CospanResult, u: FinFn, v: FinFn) -> int:
    """Number of φ with φ ∘ leg1 = u and φ ∘ leg2 = v (brute count, no shortcut)."""
    required: Dict[ElemId, set] = {p: set() for p in po.apex}
    for leg, w in ((po.leg1, u), (po.leg2, v)):
        for x in leg.dom:
            required[leg(x)].add(w(x))
    count = 1
    for p in po.apex:
        values = required[p]
        if len(values) > 1:
            return 0
        count *= 1 if values else len(u.cod)
    return count


def count_pullback_mediators(pb: SpanResult, u: FinFn, v: FinFn) -> int:
    """Number of φ with leg1 ∘ φ = u and leg2 ∘ φ = v."""
    count = 1
    for x in u.dom:
        count *= sum(1 for p in pb.apex if pb.leg1(p) == u(x) and pb.leg2(p) == v(x))
    return count


def commutes(path1: Sequence[FinFn], path2: Sequence[FinFn]) -> bool:
    """Compare two composable paths, each listed in application order."""
    def run(path):
        h = path[0]
        for k in path[1:]:
            h = compose(k, h)
        return h
    return run(path1) == run(path2)


def is_pushout_square(i1: FinFn, i2: FinFn, f: FinFn, g: FinFn) -> bool:
    """Is D with i1: A → D, i2: B → D a pushout of f: C → A, g: C → B?"""
    if compose(i1, f) != compose(i2, g):
        return False
    phi = pushout_mediator(pushout(f, g), i1, i2)
    return phi is not None and is_bijective(phi)


def is_pullback_square(p1: FinFn, p2: FinFn, f: FinFn, g: FinFn) -> bool:
    """Is P with p1: P → A, p2: P → B a pullback of f: A → C, g: B → C?"""
    if compose(f, p1) != compose(g, p2):
        return False
    phi = pullback_mediator(pullback(f, g), p1, p2)
    return phi is not None and is_bijective(phi)


# -- Kleene star ----------------------------------------------------------------

class StarMap:
    """The word-level map star(f): dom(f)⋆ → cod(f)⋆."""

    def __init__(self, fn: FinFn):
        self.fn = fn

    def __call__(self, word: Word) -> Word:
        for letter in word:
            if letter not in self.fn.dom:
                raise CarrierMismatch(f"letter {letter} is outside the carrier {self.fn.dom}")
        return tuple(self.fn(letter) for letter in word)

    def __repr__(self) -> str:
        return f"star({self.fn!r})"


def star(f: FinFn) -> StarMap:
    return StarMap(f)


def length(word: Word) -> int:
    return len(word)


def words(X: FinSet, max_len: int) -> Iterator[Word]:
    """All words over X of length ≤ max_len, shortest first."""
    for n in range(max_len + 1):
        yield from _cartesian(X.elems, repeat=n)


def all_functions(X: FinSet, Y: FinSet) -> Iterator[FinFn]:
    """Every function X → Y, in lexicographic order of image tables."""
    for images in _cartesian(Y.elems, repeat=len(X)):
        yield FinFn(X, Y, images)


def fn(mapping: Mapping[ElemId, ElemId], cod: Optional[Iterable[ElemId]] = None) -> FinFn:
    """Shorthand used by fixtures and tests: a FinFn from a dict."""
    dom = FinSet.of(mapping)
    codomain = FinSet.of(cod) if cod is not None else FinSet.of(mapping.values())
    return FinFn.from_mapping(dom, codomain, mapping)


