"""Rotation itineraries and finite-word machinery.

Streams are infinite binary words with a memoized prefix.  A rotation
coding tracks the orbit of a start point under an irrational rotation
and records which cell of {[0,1/4), [1/4,1)} each orbit point visits.
Symbol indices are 1-based in every public contract (symbol i describes
the orbit point after i-1 rotation steps); internal buffers are plain
0-based byte arrays.

Generation is exact: a fast floating screen classifies points safely in
the interior of a cell, and every point that lands near a cell boundary
is re-checked with integer arithmetic.  An orbit point that hits 0 or
1/4 exactly raises :class:`CutPointCollision` instead of silently
picking a side.
"""

from __future__ import annotations

import math
from bisect import insort
from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

from gehman.exactnum import QuadSurd, mod1, rotate, surd_sign_int

# Float screen half-width, as a fraction of the circle. Any point whose
# float image lies this close to a cell boundary is re-decided exactly;
# float error is ~1e-15 so no misclassification can slip through.
_GUARD = 1e-7

_CHUNK = 1 << 15


class CutPointCollision(Exception):
    """An orbit point hit a cut point {0, 1/4} exactly.

    ``index`` is the 1-based symbol index whose orbit point collided.
    """

    def __init__(self, index: int, point_repr: str = ""):
        self.index = index
        detail = f" (point {point_repr})" if point_repr else ""
        super().__init__(f"cut-point collision at symbol index {index}{detail}")


class SymbolStream:
    """Infinite binary word with a growable memoized prefix."""

    def __init__(self, label: str = "stream"):
        self._buf = bytearray()
        self.label = label

    def _extend_to(self, n: int) -> None:
        raise NotImplementedError

    def prefix(self, n: int) -> bytes:
        """First n symbols as raw bytes with values 0/1."""
        if n < 0:
            raise ValueError("prefix length must be nonnegative")
        if len(self._buf) < n:
            self._extend_to(n)
        return bytes(self._buf[:n])

    def array(self, n: int) -> np.ndarray:
        """First n symbols as a read-only uint8 array."""
        return np.frombuffer(self.prefix(n), dtype=np.uint8)

    def word(self, n: int) -> str:
        """First n symbols as a 0/1 text word."""
        return (self.array(n) + ord("0")).tobytes().decode("ascii")

    def symbol(self, i: int) -> int:
        """Symbol at 1-based index i."""
        if i < 1:
            raise ValueError("symbol indices are 1-based")
        return self.prefix(i)[i - 1]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class RotationCoding(SymbolStream):
    """Itinerary of ``start`` under rotation by irrational ``alpha``.

    Symbol i is 0 iff the orbit point after i-1 steps lies in [0, 1/4).
    State is kept as integers over one common denominator so each step
    is two integer adds plus a reduction test.
    """

    def __init__(self, start, alpha, label: str | None = None):
        start_q = QuadSurd._coerce(start)
        alpha_q = QuadSurd._coerce(alpha)
        if start_q is None or alpha_q is None:
            raise TypeError("start and alpha must be QuadSurd or rational")
        alpha_q = mod1(alpha_q)
        if alpha_q.is_rational:
            raise ValueError("rotation angle must be irrational")
        start_q = mod1(start_q)
        start_q + alpha_q  # raises MixedFieldError on a genuine field mix
        self.alpha = alpha_q
        self.start = start_q
        d = alpha_q.d if start_q.is_rational else start_q.d
        m = math.lcm(
            start_q.a.denominator,
            start_q.b.denominator,
            alpha_q.a.denominator,
            alpha_q.b.denominator,
        )
        self._d = d
        self._den = m
        self._u0 = int(start_q.a * m)
        self._v0 = int(start_q.b * m)
        self._du = int(alpha_q.a * m)
        self._dv = int(alpha_q.b * m)
        # Reduced integer state for the scalar path: (u + v*sqrt(d))/m.
        self._u = self._u0
        self._v = self._v0
        self._steps = 0
        super().__init__(label or f"pt:{start_q}@{alpha_q}")

    # -- exact point access ---------------------------------------------

    def orbit_point(self, i: int) -> QuadSurd:
        """Exact circle point producing symbol i (1-based)."""
        if i < 1:
            raise ValueError("symbol indices are 1-based")
        k = i - 1
        return mod1(
            QuadSurd(
                self.start.a + k * self.alpha.a,
                self.start.b + k * self.alpha.b,
                self._d,
            )
        )

    def _exact_symbol(self, idx0: int) -> int:
        # idx0 is 0-based; collision raised with the 1-based index.
        p = self.orbit_point(idx0 + 1)
        if p.sign() == 0:
            raise CutPointCollision(idx0 + 1, str(p))
        q = (p - Fraction(1, 4)).sign()
        if q == 0:
            raise CutPointCollision(idx0 + 1, str(p))
        return 0 if q < 0 else 1

    # -- generation -------------------------------------------------------

    def _float_bound_ok(self, n: int) -> bool:
        # The vector screen computes u0 + i*du + (v0 + i*dv)*sqrt(d) in
        # float64; demand the magnitude stays well under 2^52 so the
        # integer parts are represented exactly.
        mag = abs(self._u0) + abs(self._v0) * 2
        mag += n * (abs(self._du) + abs(self._dv) * 2)
        return mag < 2**52

    def _extend_to(self, n: int) -> None:
        while len(self._buf) < n:
            lo = len(self._buf)
            hi = min(max(n, lo + _CHUNK), lo + 4 * _CHUNK)
            if self._float_bound_ok(hi):
                self._buf.extend(self._vector_chunk(lo, hi))
            else:
                self._buf.extend(self._scalar_chunk(lo, hi))

    def _vector_chunk(self, lo: int, hi: int) -> bytes:
        idx = np.arange(lo, hi, dtype=np.float64)
        sq = math.sqrt(self._d)
        w = (self._u0 + idx * self._du + (self._v0 + idx * self._dv) * sq) / self._den
        f = w - np.floor(w)
        sym = (f >= 0.25).astype(np.uint8)
        risky = (f < _GUARD) | (np.abs(f - 0.25) < _GUARD) | (f > 1.0 - _GUARD)
        for j in np.flatnonzero(risky):
            sym[j] = self._exact_symbol(lo + int(j))
        return sym.tobytes()

    def _scalar_chunk(self, lo: int, hi: int) -> bytes:
        # Exact integer walk; used when coefficients are too large for
        # the float screen. Invariant: (u, v) is the orbit point at
        # 0-based index `steps`.
        if self._steps > lo:
            self._u, self._v, self._steps = self._u0, self._v0, 0
        u, v, m, d = self._u, self._v, self._den, self._d
        du, dv = self._du, self._dv
        steps = self._steps
        while steps < lo:
            u += du
            v += dv
            if surd_sign_int(u - m, v, d) >= 0:
                u -= m
            steps += 1
        out = bytearray()
        for i in range(lo, hi):
            if u == 0 and v == 0:
                raise CutPointCollision(i + 1, "0")
            q = surd_sign_int(4 * u - m, 4 * v, d)
            if q == 0:
                raise CutPointCollision(i + 1, "1/4")
            out.append(0 if q < 0 else 1)
            u += du
            v += dv
            if surd_sign_int(u - m, v, d) >= 0:
                u -= m
        self._u, self._v, self._steps = u, v, hi
        return bytes(out)


class PeriodicStream(SymbolStream):
    """Periodic word w^inf for a finite 0/1 word w."""

    def __init__(self, word: str, label: str | None = None):
        if not word or any(c not in "01" for c in word):
            raise ValueError("periodic word must be a nonempty 0/1 string")
        self.base = word
        self._cell = bytes(int(c) for c in word)
        super().__init__(label or f"per:{word}")

    def _extend_to(self, n: int) -> None:
        reps = -(-(n - len(self._buf)) // len(self._cell)) + 1
        self._buf.extend(self._cell * reps)


class WordStream(SymbolStream):
    """Finite explicit word exposed through the stream interface.

    Reading past the stored symbols is an error; this class exists for
    tests and adapters, not for the infinite constructions.
    """

    def __init__(self, bits: Union[str, bytes], label: str | None = None):
        if isinstance(bits, str):
            if any(c not in "01" for c in bits):
                raise ValueError("word must be a 0/1 string")
            data = bytes(int(c) for c in bits)
        else:
            data = bytes(bits)
            if any(v not in (0, 1) for v in data):
                raise ValueError("word bytes must be 0/1 valued")
        super().__init__(label or "word")
        self._buf.extend(data)
        self.length = len(data)

    def _extend_to(self, n: int) -> None:
        raise ValueError(
            f"word stream {self.label!r} has only {self.length} symbols"
        )


class _ShiftedStream(SymbolStream):
    def __init__(self, base: SymbolStream, n: int):
        self.base = base
        self.offset = n
        super().__init__(f"shift({base.label},{n})")

    def _extend_to(self, n: int) -> None:
        data = self.base.prefix(self.offset + n)
        self._buf[:] = data[self.offset:]


def shift(x: SymbolStream, n: int) -> SymbolStream:
    """Stream y with y_i = x_{i+n}."""
    if n < 0:
        raise ValueError("shift offset must be nonnegative")
    if n == 0:
        return x
    if isinstance(x, _ShiftedStream):
        return _ShiftedStream(x.base, x.offset + n)
    return _ShiftedStream(x, n)


# -- itineraries ---------------------------------------------------------


def itinerary(rc: RotationCoding, n: int) -> str:
    """First n symbols of a rotation coding as a 0/1 word."""
    if n < 0:
        raise ValueError("itinerary length must be nonnegative")
    return rc.word(n)


def sturmian_stream(alpha) -> RotationCoding:
    """The coding A(alpha): symbol i describes the i-th rotation of alpha.

    The start point is rotate(alpha, alpha), so symbol 1 corresponds to
    the orbit point one step past alpha.
    """
    alpha_q = QuadSurd._coerce(alpha)
    if alpha_q is None:
        raise TypeError("alpha must be QuadSurd or rational")
    return RotationCoding(rotate(alpha_q, alpha_q), alpha_q, label=f"A:{alpha_q}")


def sturmian_A(alpha, n: int) -> str:
    """First n symbols of A(alpha)."""
    return sturmian_stream(alpha).word(n)


# -- word utilities --------------------------------------------------------

WordLike = Union[str, SymbolStream]


def _bits_for(x: WordLike, n: int) -> np.ndarray:
    if isinstance(x, SymbolStream):
        return x.array(n)
    if isinstance(x, str):
        arr = np.frombuffer(x.encode("ascii"), dtype=np.uint8) - ord("0")
        if arr.size and arr.max() > 1:
            raise ValueError("words must contain only 0/1")
        return arr[:n]
    raise TypeError(f"expected a stream or 0/1 word, got {type(x).__name__}")


def lcp(x: WordLike, y: WordLike, cap: int) -> int:
    """Length of the longest common prefix, saturating at cap.

    Finite words additionally saturate at the shorter length.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ax = _bits_for(x, cap)
    ay = _bits_for(y, cap)
    n = min(ax.shape[0], ay.shape[0])
    diff = np.flatnonzero(ax[:n] != ay[:n])
    return int(diff[0]) if diff.size else n


class DistBound(NamedTuple):
    """Sequence-metric value 2^-k; ``exact`` False means an upper bound."""

    value: Fraction
    exact: bool


def dist(x: WordLike, y: WordLike, cap: int) -> DistBound:
    """Sequence metric rho(x, y) = 2^-(lcp+1), saturated at cap.

    When the words agree through the cap the true distance is at most
    2^-cap and the result is flagged inexact.
    """
    k = lcp(x, y, cap)
    if k >= cap:
        return DistBound(Fraction(1, 2**cap), False)
    return DistBound(Fraction(1, 2 ** (k + 1)), True)


# -- factor machinery ------------------------------------------------------


def _packed_windows(arr: np.ndarray, n: int) -> np.ndarray:
    if not 1 <= n <= 64:
        raise ValueError("factor length must be in 1..64 (bit-packed)")
    length = arr.shape[0] - n + 1
    if length <= 0:
        return np.empty(0, dtype=np.uint64)
    w = np.zeros(length, dtype=np.uint64)
    one = np.uint64(1)
    for j in range(n):
        w = (w << one) | arr[j:j + length].astype(np.uint64)
    return w


def _pack_word(word: str) -> int:
    return int(word, 2) if word else 0


def _unpack_word(value: int, n: int) -> str:
    return format(value, f"0{n}b")


def factors(x: WordLike, n: int, horizon: int) -> set[str]:
    """All length-n words occurring in the first ``horizon`` symbols."""
    if horizon < n:
        raise ValueError("horizon must be at least the factor length")
    arr = _bits_for(x, horizon)
    packed = np.unique(_packed_windows(arr, n))
    return {_unpack_word(int(v), n) for v in packed}


def recurrent_factors(
    x: WordLike,
    n: int,
    horizon: int,
    tail_start: int | None = None,
    min_count: int = 5,
) -> set[str]:
    """Length-n words seen at least min_count times beyond tail_start.

    A finite stand-in for the factors of the omega-limit set: the first
    ``tail_start`` window positions are discarded as transient, and a
    word must recur ``min_count`` times in the remainder to count.  Both
    an over- and under-approximation in general; parameters are part of
    any reported result.
    """
    if tail_start is None:
        tail_start = horizon // 100
    if min_count < 2:
        raise ValueError("min_count must be >= 2")
    if tail_start + n > horizon:
        raise ValueError("insufficient horizon for the requested tail window")
    arr = _bits_for(x, horizon)
    windows = _packed_windows(arr, n)[tail_start:]
    values, counts = np.unique(windows, return_counts=True)
    keep = values[counts >= min_count]
    return {_unpack_word(int(v), n) for v in keep}


def factor_count_profile(x: WordLike, n_max: int, horizon: int) -> list[int]:
    """Distinct factor counts p(n) for n = 1..n_max; entry i is p(i+1).

    One sort of the packed n_max-windows serves every shorter length as
    a prefix count; the up-to n_max-1 windows that end past the last
    full n_max-window are patched in exactly.
    """
    if horizon < n_max:
        raise ValueError("horizon must be at least n_max")
    arr = _bits_for(x, horizon)
    full = np.sort(_packed_windows(arr, n_max))
    out: list[int] = []
    for n in range(1, n_max + 1):
        sh = np.uint64(n_max - n)
        pref = full >> sh
        count = 0
        if pref.size:
            count = 1 + int(np.count_nonzero(pref[1:] != pref[:-1]))
        # windows starting after the last full n_max-window
        extras = set()
        for start in range(full.shape[0], horizon - n + 1):
            v = 0
            for b in arr[start:start + n]:
                v = (v << 1) | int(b)
            extras.add(v)
        for v in extras:
            pos = int(np.searchsorted(pref, np.uint64(v)))
            if pos >= pref.shape[0] or int(pref[pos]) != v:
                count += 1
        out.append(count)
    return out


# -- refinement atoms ------------------------------------------------------


def _arc_pair_spread(l1, e1, l2, e2) -> QuadSurd:
    """Exact sup of circle distance between closed arcs [l1,l1+e1], [l2,l2+e2].

    The oriented gap from a point of the first arc to one of the second
    sweeps a closed arc of length e1+e2 starting at l2-l1-e1; the sup of
    min(g, 1-g) over that arc is 1/2 if it covers 1/2, else an endpoint.
    """
    extent = e1 + e2
    half = QuadSurd(Fraction(1, 2))
    if QuadSurd(1) <= extent:
        return half
    g0 = mod1(l2 - l1 - e1)
    if mod1(half - g0) <= extent:
        return half
    g1 = mod1(g0 + extent)
    return max(min(g0, QuadSurd(1) - g0), min(g1, QuadSurd(1) - g1))


class AtomProfile:
    """Cut-point refinement of the circle for one rotation angle.

    Depth k uses the cut set {mod1(c - i*alpha) : c in {0, 1/4}, i < k};
    the maximal gap between consecutive cuts bounds the diameter of any
    single arc on which the first k itinerary symbols are constant.  The
    full region of one k-symbol word is a union of such arcs and need
    not be connected, so separation depths are certified against exact
    word-region diameters, not raw gaps.
    """

    def __init__(self, alpha):
        alpha_q = QuadSurd._coerce(alpha)
        if alpha_q is None or alpha_q.is_rational:
            raise ValueError("atom profiles require an irrational angle")
        self.alpha = mod1(alpha_q)
        self._cuts: list[QuadSurd] = []
        self._diameters: list[QuadSurd] = []
        self._depth = 0
        self._cyl: dict[int, QuadSurd] = {}

    def _advance(self) -> None:
        i = self._depth
        for c in (QuadSurd(0), QuadSurd(Fraction(1, 4))):
            insort(self._cuts, mod1(c - i * self.alpha))
        self._depth += 1
        gaps = [
            self._cuts[j + 1] - self._cuts[j]
            for j in range(len(self._cuts) - 1)
        ]
        gaps.append(QuadSurd(1) - self._cuts[-1] + self._cuts[0])
        self._diameters.append(max(gaps))

    def diameter(self, k: int) -> QuadSurd:
        if k < 1:
            raise ValueError("depth must be >= 1")
        while self._depth < k:
            self._advance()
        return self._diameters[k - 1]

    def cylinder_diameter(self, k: int) -> QuadSurd:
        """Exact circle diameter of the largest depth-k word region.

        Groups the 2k cut arcs by their k-symbol word and takes the sup
        of circle distance over each group's closed arcs.  Distinct arcs
        can carry the same word (the word regions are then disconnected),
        in which case this strictly exceeds diameter(k); any separation
        certificate must clear this value, not the single-arc gap.
        """
        if k < 1:
            raise ValueError("depth must be >= 1")
        got = self._cyl.get(k)
        if got is not None:
            return got
        cuts = sorted(
            mod1(c - i * self.alpha)
            for c in (QuadSurd(0), QuadSurd(Fraction(1, 4)))
            for i in range(k)
        )
        arcs = []
        for j, left in enumerate(cuts):
            right = cuts[j + 1] if j + 1 < len(cuts) else cuts[0] + 1
            arcs.append((left, right - left))
        groups: dict[str, list] = {}
        for left, length in arcs:
            mid = mod1(left + length / 2)
            word = RotationCoding(mid, self.alpha).word(k)
            groups.setdefault(word, []).append((left, length))
        best = QuadSurd(0)
        for members in groups.values():
            for a in range(len(members)):
                for b in range(a, len(members)):
                    spread = _arc_pair_spread(*members[a], *members[b])
                    if best < spread:
                        best = spread
        self._cyl[k] = best
        return best

    def depth_for(self, delta, max_depth: int = 100_000) -> int:
        """Minimal k whose word regions all have diameter < delta.

        Two points at circle distance >= delta then cannot share their
        first k itinerary symbols, so depth_for(delta) certifies
        symbolic separation for any pair delta apart.  The gap bound
        diameter(k) is checked first as a cheap necessary condition.
        """
        dq = QuadSurd._coerce(delta)
        if dq is None:
            raise TypeError("delta must be QuadSurd or rational")
        if dq.sign() <= 0:
            raise ValueError("delta must be positive")
        k = 1
        while True:
            if self.diameter(k) < dq and self.cylinder_diameter(k) < dq:
                return k
            k += 1
            if k > max_depth:
                raise ValueError(f"no depth below {max_depth} refines past {delta}")


_PROFILES: dict[QuadSurd, AtomProfile] = {}


def atom_profile(alpha) -> AtomProfile:
    """Shared (memoized) atom profile for an angle."""
    alpha_q = mod1(QuadSurd._coerce(alpha))
    prof = _PROFILES.get(alpha_q)
    if prof is None:
        prof = AtomProfile(alpha_q)
        _PROFILES[alpha_q] = prof
    return prof


def atom_diameter(alpha, k: int) -> QuadSurd:
    """Maximal depth-k atom diameter for rotation by alpha; exact."""
    return atom_profile(alpha).diameter(k)
