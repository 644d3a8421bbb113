"""Exact color-set arithmetic.

Color sets are finite unions of half-open intervals ``[a, b)`` with
:class:`fractions.Fraction` endpoints.  Working with half-open intervals makes
"disjoint up to a null set" the same thing as plain set disjointness, so every
test in this module is an exact set test.

Recoloring works with measure-preserving piecewise translations of an ambient
interval ``[0, L)``; see :class:`PiecewiseIsometry`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator

Span = tuple[Fraction, Fraction]
Piece = tuple[Fraction, Fraction, Fraction]  # (start, end, offset)


def as_rational(x) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing binary floats."""
    if isinstance(x, float):
        raise TypeError(f"floating point value {x!r} is not an exact rational")
    return Fraction(x)


def _canonical(spans: Iterable[tuple]) -> tuple[Span, ...]:
    items = []
    for a, b in spans:
        a, b = as_rational(a), as_rational(b)
        if a > b:
            raise ValueError(f"reversed interval [{a}, {b})")
        if a < b:
            items.append((a, b))
    items.sort()
    out: list[Span] = []
    for a, b in items:
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


class IntervalSet:
    """A canonical finite union of disjoint, non-abutting ``[a, b)`` intervals."""

    __slots__ = ("_spans",)

    def __init__(self, spans: Iterable[tuple] = ()):
        self._spans = _canonical(spans)

    @classmethod
    def _trusted(cls, spans: tuple[Span, ...]) -> IntervalSet:
        obj = cls.__new__(cls)
        obj._spans = spans
        return obj

    @classmethod
    def span(cls, a, b) -> IntervalSet:
        return cls([(a, b)])

    @property
    def spans(self) -> tuple[Span, ...]:
        return self._spans

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self._spans), Fraction(0))

    def inf(self) -> Fraction:
        return self._spans[0][0]

    def sup(self) -> Fraction:
        return self._spans[-1][1]

    def __bool__(self) -> bool:
        return bool(self._spans)

    def __iter__(self) -> Iterator[Span]:
        return iter(self._spans)

    def __len__(self) -> int:
        return len(self._spans)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._spans == other._spans

    def __hash__(self) -> int:
        return hash(self._spans)

    def __repr__(self) -> str:
        if not self._spans:
            return "IntervalSet()"
        body = " ∪ ".join(f"[{a}, {b})" for a, b in self._spans)
        return f"IntervalSet({body})"

    def __or__(self, other: IntervalSet) -> IntervalSet:
        return IntervalSet(self._spans + other._spans)

    def __and__(self, other: IntervalSet) -> IntervalSet:
        out = []
        xs, ys = self._spans, other._spans
        i = j = 0
        while i < len(xs) and j < len(ys):
            lo = max(xs[i][0], ys[j][0])
            hi = min(xs[i][1], ys[j][1])
            if lo < hi:
                out.append((lo, hi))
            if xs[i][1] < ys[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet._trusted(tuple(out))

    def __sub__(self, other: IntervalSet) -> IntervalSet:
        out = []
        ys = other._spans
        j = 0
        for a, b in self._spans:
            cur = a
            while j < len(ys) and ys[j][1] <= cur:
                j += 1
            k = j
            while k < len(ys) and ys[k][0] < b:
                if ys[k][0] > cur:
                    out.append((cur, ys[k][0]))
                cur = max(cur, ys[k][1])
                if cur >= b:
                    break
                k += 1
            if cur < b:
                out.append((cur, b))
        return IntervalSet._trusted(tuple(out))

    def contains(self, t) -> bool:
        t = as_rational(t)
        return any(a <= t < b for a, b in self._spans)

    def issubset(self, other: IntervalSet) -> bool:
        return not (self - other)

    def isdisjoint(self, other: IntervalSet) -> bool:
        return not (self & other)

    def shift(self, t) -> IntervalSet:
        t = as_rational(t)
        return IntervalSet._trusted(tuple((a + t, b + t) for a, b in self._spans))

    def prefix(self, m) -> IntervalSet:
        """The leftmost part of this set with measure ``m``."""
        m = as_rational(m)
        if m < 0 or m > self.measure():
            raise ValueError(f"cannot take measure {m} from a set of measure {self.measure()}")
        out = []
        for a, b in self._spans:
            if m <= 0:
                break
            take = min(m, b - a)
            out.append((a, a + take))
            m -= take
        return IntervalSet._trusted(tuple(out))

    def suffix(self, m) -> IntervalSet:
        """The rightmost part of this set with measure ``m``."""
        m = as_rational(m)
        if m < 0 or m > self.measure():
            raise ValueError(f"cannot take measure {m} from a set of measure {self.measure()}")
        out = []
        for a, b in reversed(self._spans):
            if m <= 0:
                break
            take = min(m, b - a)
            out.append((b - take, b))
            m -= take
        return IntervalSet._trusted(tuple(reversed(out)))


EMPTY = IntervalSet()


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a | b


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a & b


def subtract(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a - b


def measure(a: IntervalSet) -> Fraction:
    return a.measure()


def build_level_partition(L_prime, L, delta) -> list[IntervalSet]:
    """Return ``[I_0, I_1, ..., I_s]`` for the recoloring cascade.

    ``I_1 .. I_s`` cut ``[0, L_prime)`` into consecutive blocks of length
    ``delta`` (the last may be shorter) and ``I_0 = [L_prime, L)``.
    """
    L_prime, L, delta = as_rational(L_prime), as_rational(L), as_rational(delta)
    if not 0 < L_prime < L:
        raise ValueError("need 0 < L_prime < L")
    if delta <= 0:
        raise ValueError("delta must be positive")
    s = math.ceil(L_prime / delta)
    parts = [IntervalSet.span(L_prime, L)]
    for k in range(1, s + 1):
        parts.append(IntervalSet.span((k - 1) * delta, min(k * delta, L_prime)))
    return parts


def _check_pieces(length: Fraction, pieces: tuple[Piece, ...]) -> None:
    prev = None
    for a, b, _ in pieces:
        if not 0 <= a < b <= length:
            raise ValueError(f"piece [{a}, {b}) outside [0, {length})")
        if prev is not None and a < prev:
            raise ValueError("overlapping source pieces")
        prev = b
    images = sorted((a + t, b + t) for a, b, t in pieces)
    prev = None
    for a, b in images:
        if a < 0 or b > length:
            raise ValueError(f"image [{a}, {b}) outside [0, {length})")
        if prev is not None and a < prev:
            raise ValueError("overlapping image pieces: map is not injective")
        prev = b


def _canonical_pieces(pieces: Iterable[tuple]) -> tuple[Piece, ...]:
    items = sorted(
        (as_rational(a), as_rational(b), as_rational(t)) for a, b, t in pieces if a != b
    )
    out: list[Piece] = []
    for a, b, t in items:
        if out and out[-1][1] == a and out[-1][2] == t:
            out[-1] = (out[-1][0], b, t)
        else:
            out.append((a, b, t))
    return tuple(out)


class PiecewiseIsometry:
    """An injective piecewise translation inside ``[0, length)``.

    Each piece ``(a, b, t)`` sends ``[a, b)`` to ``[a + t, b + t)``.  When the
    sources cover ``[0, length)`` the map is a measure-preserving bijection of
    the ambient interval; otherwise it is a partial isometry from
    :meth:`domain` onto :meth:`image`.
    """

    __slots__ = ("length", "pieces")

    def __init__(self, length, pieces: Iterable[tuple] = ()):
        self.length = as_rational(length)
        self.pieces = _canonical_pieces(pieces)
        _check_pieces(self.length, self.pieces)

    @classmethod
    def identity(cls, length, on: IntervalSet | None = None) -> PiecewiseIsometry:
        length = as_rational(length)
        spans = on.spans if on is not None else ((Fraction(0), length),)
        return cls(length, [(a, b, 0) for a, b in spans])

    def domain(self) -> IntervalSet:
        return IntervalSet((a, b) for a, b, _ in self.pieces)

    def image(self) -> IntervalSet:
        return IntervalSet((a + t, b + t) for a, b, t in self.pieces)

    def is_total(self) -> bool:
        return self.domain() == IntervalSet.span(0, self.length)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseIsometry):
            return NotImplemented
        return self.length == other.length and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash((self.length, self.pieces))

    def __repr__(self) -> str:
        body = ", ".join(f"[{a}, {b}){t:+}" for a, b, t in self.pieces)
        return f"PiecewiseIsometry(L={self.length}; {body})"

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        for a, b, t in self.pieces:
            if a <= x < b:
                return x + t
        raise ValueError(f"point {x} outside the domain")

    def apply(self, s: IntervalSet) -> IntervalSet:
        if not s.issubset(self.domain()):
            raise ValueError("set is not contained in the isometry's domain")
        out = []
        for a, b, t in self.pieces:
            for lo, hi in s.spans:
                if hi <= a:
                    continue
                if lo >= b:
                    break
                out.append((max(lo, a) + t, min(hi, b) + t))
        return IntervalSet(out)

    def inverse(self) -> PiecewiseIsometry:
        return PiecewiseIsometry(self.length, [(a + t, b + t, -t) for a, b, t in self.pieces])

    def compose(self, inner: PiecewiseIsometry) -> PiecewiseIsometry:
        """Return ``self ∘ inner``; the image of ``inner`` must lie in our domain."""
        if self.length != inner.length:
            raise ValueError("ambient lengths differ")
        out = []
        covered = Fraction(0)
        for a, b, t in inner.pieces:
            lo_img, hi_img = a + t, b + t
            for c, d, u in self.pieces:
                lo, hi = max(lo_img, c), min(hi_img, d)
                if lo < hi:
                    out.append((lo - t, hi - t, t + u))
                    covered += hi - lo
        if covered != inner.domain().measure():
            raise ValueError("inner image not contained in outer domain")
        return PiecewiseIsometry(self.length, out)

    def restrict(self, s: IntervalSet) -> PiecewiseIsometry:
        if not s.issubset(self.domain()):
            raise ValueError("restriction set not contained in the domain")
        out = []
        for a, b, t in self.pieces:
            for lo, hi in s.spans:
                lo, hi = max(lo, a), min(hi, b)
                if lo < hi:
                    out.append((lo, hi, t))
        return PiecewiseIsometry(self.length, out)

    def merge(self, other: PiecewiseIsometry) -> PiecewiseIsometry:
        """Union of two partial isometries with disjoint domains and images."""
        if self.length != other.length:
            raise ValueError("ambient lengths differ")
        return PiecewiseIsometry(self.length, self.pieces + other.pieces)

    def agrees_with(self, other: PiecewiseIsometry, on: IntervalSet) -> bool:
        return self.restrict(on) == other.restrict(on)

    def breakpoints(self) -> list[Fraction]:
        pts = set()
        for a, b, _ in self.pieces:
            pts.update((a, (a + b) / 2))
        return sorted(pts)


def identity(length) -> PiecewiseIsometry:
    return PiecewiseIsometry.identity(length)


def apply(iso: PiecewiseIsometry, a: IntervalSet) -> IntervalSet:
    return iso.apply(a)


def compose(outer: PiecewiseIsometry, inner: PiecewiseIsometry) -> PiecewiseIsometry:
    return outer.compose(inner)


def invert(iso: PiecewiseIsometry) -> PiecewiseIsometry:
    return iso.inverse()


def _zip(src: IntervalSet, dst: IntervalSet) -> list[Piece]:
    pieces = []
    xs, ys = list(src.spans), list(dst.spans)
    i = j = 0
    pos_x = xs[0][0] if xs else None
    pos_y = ys[0][0] if ys else None
    while i < len(xs) and j < len(ys):
        take = min(xs[i][1] - pos_x, ys[j][1] - pos_y)
        pieces.append((pos_x, pos_x + take, pos_y - pos_x))
        pos_x += take
        pos_y += take
        if pos_x == xs[i][1]:
            i += 1
            if i < len(xs):
                pos_x = xs[i][0]
        if pos_y == ys[j][1]:
            j += 1
            if j < len(ys):
                pos_y = ys[j][0]
    return pieces


def matching_isometry(
    src: IntervalSet, dst: IntervalSet, fix_overlap: bool = True, length=None
) -> PiecewiseIsometry:
    """A partial isometry from ``src`` onto ``dst`` built left to right.

    With ``fix_overlap`` every point of ``src ∩ dst`` is fixed and only the
    residues ``src \\ dst`` and ``dst \\ src`` are zipped together.
    """
    if src.measure() != dst.measure():
        raise ValueError(f"measures differ: {src.measure()} != {dst.measure()}")
    if length is None:
        length = max([Fraction(0)] + [s.sup() for s in (src, dst) if s])
    if fix_overlap:
        common = src & dst
        pieces = [(a, b, 0) for a, b in common.spans]
        pieces += _zip(src - common, dst - common)
    else:
        pieces = _zip(src, dst)
    return PiecewiseIsometry(length, pieces)


def extend_swap(base: PiecewiseIsometry, sigma: PiecewiseIsometry) -> PiecewiseIsometry:
    """Post-compose ``base`` with the ambient bijection induced by ``sigma``.

    ``sigma`` maps ``S`` onto ``T``.  The result sends ``t`` to
    ``sigma(base(t))`` when ``base(t) ∈ S``, to ``sigma⁻¹(base(t))`` when
    ``base(t) ∈ T \\ S`` and to ``base(t)`` otherwise.  ``sigma`` must map
    ``S ∩ T`` onto itself, otherwise the result would not be a bijection.
    """
    if base.length != sigma.length:
        raise ValueError("ambient lengths differ")
    S, T = sigma.domain(), sigma.image()
    overlap = S & T
    if sigma.apply(overlap) != overlap:
        raise ValueError("sigma does not map S ∩ T onto itself")
    ambient = IntervalSet.span(0, base.length)
    swap = sigma.merge(sigma.inverse().restrict(T - S))
    rest = ambient - (S | T)
    if rest:
        swap = swap.merge(PiecewiseIsometry.identity(base.length, rest))
    return swap.compose(base)
