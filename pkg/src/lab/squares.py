"""
Commuting squares and cubes, and their certification as pushouts or
pullbacks in any category of ``categories``.

A square is read as::

    A --top--> B
    |          |
   left      right
    v          v
    C --bottom-> D
"""

from dataclasses import dataclass
from typing import Any, Dict

from ..core.errors import InvalidMorphism
from .categories import Category, optional_iso, same


@dataclass(frozen=True)
class Square:
    top: Any
    left: Any
    right: Any
    bottom: Any
    category: Category

    def commutes(self) -> bool:
        cat = self.category
        return same(cat.compose(self.right, self.top), cat.compose(self.bottom, self.left))

    def require_commuting(self) -> None:
        if not self.commutes():
            raise InvalidMorphism(f"square in {self.category.name} does not commute")


def certify_pushout(sq: Square) -> bool:
    """
    Is D (with right, bottom) a pushout of top and left?

    The canonical pushout is built, the cocone (right, bottom) is factored
    through it and the factorization must be an isomorphism.

    Raises:
        InvalidMorphism: if the square does not commute
    """
    sq.require_commuting()
    cat = sq.category
    po = cat.pushout(sq.top, sq.left)
    return optional_iso(cat, cat.pushout_mediator(po, sq.right, sq.bottom))


def certify_pullback(sq: Square) -> bool:
    """
    Is A (with top, left) a pullback of right and bottom?

    Raises:
        InvalidMorphism: if the square does not commute
    """
    sq.require_commuting()
    cat = sq.category
    pb = cat.pullback(sq.right, sq.bottom)
    return optional_iso(cat, cat.pullback_mediator(pb, sq.top, sq.left))


@dataclass(frozen=True)
class Cube:
    """
    A commuting cube over a bottom square f: A → B, m: A → C, g: B → D,
    n: C → D, with a primed top square and vertical arrows a, b, c, d from
    the top corners down to the bottom ones.
    """

    f: Any
    m: Any
    g: Any
    n: Any
    f2: Any
    m2: Any
    g2: Any
    n2: Any
    a: Any
    b: Any
    c: Any
    d: Any
    category: Category

    def bottom(self) -> Square:
        return Square(self.f, self.m, self.g, self.n, self.category)

    def top(self) -> Square:
        return Square(self.f2, self.m2, self.g2, self.n2, self.category)

    def back(self) -> Square:
        return Square(self.f2, self.a, self.b, self.f, self.category)

    def left(self) -> Square:
        return Square(self.m2, self.a, self.c, self.m, self.category)

    def front(self) -> Square:
        return Square(self.n2, self.c, self.d, self.n, self.category)

    def right(self) -> Square:
        return Square(self.g2, self.b, self.d, self.g, self.category)

    def faces(self) -> Dict[str, Square]:
        return {'bottom': self.bottom(), 'top': self.top(), 'back': self.back(),
                'left': self.left(), 'front': self.front(), 'right': self.right()}

    def commutes(self) -> bool:
        return all(face.commutes() for face in self.faces().values())


@dataclass(frozen=True)
class VanKampenVerdict:
    """
    Outcome of checking one cube.

    ``applicable`` says whether the preconditions hold (bottom pushout
    along a mono of the chosen class, back and left faces pullbacks,
    verticals in the class). ``holds`` is the equivalence between the top
    face being a pushout and the front and right faces being pullbacks.
    """

    applicable: bool
    top_pushout: bool
    front_pullback: bool
    right_pullback: bool

    @property
    def holds(self) -> bool:
        return self.top_pushout == (self.front_pullback and self.right_pullback)

    def to_dict(self) -> Dict[str, bool]:
        return {'applicable': self.applicable, 'top_pushout': self.top_pushout,
                'front_pullback': self.front_pullback, 'right_pullback': self.right_pullback,
                'holds': self.holds}


def check_vk_cube(cube: Cube, mono_class: str = 'pb', vertical_class: str = 'regular') -> VanKampenVerdict:
    """
    Evaluate the pushout/pullback equivalence on one cube.

    The bottom pushout must be along ``mono_class`` and the vertical
    arrows in ``vertical_class``; otherwise the verdict is marked not
    applicable rather than raising.

    Raises:
        InvalidMorphism: if a face does not commute
    """
    for face in cube.faces().values():
        face.require_commuting()
    cat = cube.category
    applicable = (certify_pushout(cube.bottom()) and cat.in_class(cube.m, mono_class)
                  and certify_pullback(cube.back()) and certify_pullback(cube.left())
                  and all(cat.in_class(v, vertical_class) for v in (cube.a, cube.b, cube.c, cube.d)))
    return VanKampenVerdict(applicable, certify_pushout(cube.top()),
                            certify_pullback(cube.front()), certify_pullback(cube.right()))
