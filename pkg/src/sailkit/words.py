"""Infinite word families over the positive integers.

Four families are supported:

* arithmetic -- starts ``1 2`` and repeats the initial segment, extending it
  by the next natural number on every repeat: ``1 2 1 2 3 1 2 3 4 ...``.
* power(q)   -- the n-th letter is ``k*(q-1) + j`` where the base-q expansion
  of n has k trailing zeros and lowest nonzero digit j.  For q = 2 this is
  the ruler sequence ``1 2 1 3 1 2 1 4 ...``.
* fibonacci  -- the n-th letter records where the lowest term of the
  Zeckendorf representation of n sits: ``1 2 3 1 4 1 2 5 ...``.
* periodic(p) -- an explicit pattern repeated forever.

Each family supports O(polylog) positional lookup (`letter_at`) and a
streaming generator built from the concatenation / substitution definition.
The two must agree everywhere; tests cross-check them since the closed forms
are derived independently of the generators.

Positions are 1-based everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, count, islice
from math import isqrt

from .errors import CapExceededError

ARITHMETIC = "arithmetic"
POWER = "power"
FIBONACCI = "fibonacci"
PERIODIC = "periodic"

DEFAULT_LETTER_CAP = 1_000_000


@dataclass(frozen=True)
class InfiniteWordSpec:
    """A named infinite word family; immutable and hashable."""

    family: str
    q: int | None = None
    pattern: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.family == POWER:
            if self.q is None or self.q < 2:
                raise ValueError("power family requires q >= 2")
        elif self.family == PERIODIC:
            if not self.pattern:
                raise ValueError("periodic family requires a nonempty pattern")
            if any(a < 1 for a in self.pattern):
                raise ValueError("pattern letters must be positive integers")
        elif self.family in (ARITHMETIC, FIBONACCI):
            if self.q is not None or self.pattern is not None:
                raise ValueError(f"{self.family} family takes no parameters")
        else:
            raise ValueError(f"unknown word family: {self.family!r}")

    @classmethod
    def arithmetic(cls) -> "InfiniteWordSpec":
        return cls(ARITHMETIC)

    @classmethod
    def power(cls, q: int) -> "InfiniteWordSpec":
        return cls(POWER, q=q)

    @classmethod
    def fibonacci(cls) -> "InfiniteWordSpec":
        return cls(FIBONACCI)

    @classmethod
    def periodic(cls, pattern) -> "InfiniteWordSpec":
        return cls(PERIODIC, pattern=tuple(pattern))

    def letter_at(self, n: int) -> int:
        """Closed-form letter at 1-based position n."""
        if self.family == ARITHMETIC:
            return arithmetic_letter(n)
        if self.family == POWER:
            return power_letter(self.q, n)
        if self.family == FIBONACCI:
            return fibonacci_letter(n)
        if n < 1:
            raise ValueError(f"position must be >= 1, got {n}")
        return self.pattern[(n - 1) % len(self.pattern)]

    def stream(self):
        """Infinite letter generator from the defining construction."""
        if self.family == ARITHMETIC:
            return _arithmetic_stream()
        if self.family == POWER:
            return _power_stream(self.q)
        if self.family == FIBONACCI:
            return _fibonacci_stream()
        return _periodic_stream(self.pattern)

    def token(self) -> str:
        """CLI-facing family token: nu | kappa:q | eta | periodic:a,b,c."""
        if self.family == ARITHMETIC:
            return "nu"
        if self.family == POWER:
            return f"kappa:{self.q}"
        if self.family == FIBONACCI:
            return "eta"
        return "periodic:" + ",".join(str(a) for a in self.pattern)

    @classmethod
    def from_token(cls, token: str) -> "InfiniteWordSpec":
        name, _, arg = token.partition(":")
        if name == "nu":
            return cls.arithmetic()
        if name == "kappa":
            if not arg:
                raise ValueError("kappa family needs a parameter, e.g. kappa:2")
            return cls.power(int(arg))
        if name == "eta":
            return cls.fibonacci()
        if name == "periodic":
            if not arg:
                raise ValueError("periodic family needs a pattern, e.g. periodic:1,2,4,3")
            return cls.periodic(int(a) for a in arg.split(","))
        raise ValueError(f"unknown family token {token!r}")


@dataclass(frozen=True)
class FiniteWord:
    """A finite block of letters, optionally remembering where it came from.

    ``origin`` is a (spec, start) pair meaning the letters equal the family's
    letters at positions start .. start+len-1.
    """

    letters: tuple[int, ...]
    origin: tuple[InfiniteWordSpec, int] | None = None

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def letter_at(self, position: int) -> int:
        """Letter at 1-based position within this word."""
        if not 1 <= position <= len(self.letters):
            raise ValueError(f"position {position} outside word of length {len(self.letters)}")
        return self.letters[position - 1]

    def __str__(self):
        return " ".join(str(a) for a in self.letters)


@dataclass(frozen=True)
class ZeckendorfRep:
    """Indices (k for F_k, with F_1 = F_2 = 1) of a Zeckendorf decomposition.

    Indices are strictly decreasing, start at 2, and no two are consecutive.
    """

    indices: tuple[int, ...]

    def value(self) -> int:
        return sum(_fib(k) for k in self.indices)


@dataclass(frozen=True)
class NestednessViolation:
    m: int
    x: int
    y: int
    z: int
    interval: tuple[int, int]

    def to_obj(self):
        return {"m": self.m, "x": self.x, "y": self.y, "z": self.z,
                "interval": list(self.interval)}


@dataclass(frozen=True)
class NestednessReport:
    nested: bool
    violation: NestednessViolation | None = None

    def to_obj(self):
        obj = {"nested": self.nested}
        if self.violation is not None:
            obj["violation"] = self.violation.to_obj()
        return obj


# ---------------------------------------------------------------------------
# closed-form letter functions
# ---------------------------------------------------------------------------

def arithmetic_letter(n: int) -> int:
    """Letter at position n of the arithmetic word.

    Block b (the factor ``1 2 ... b``) starts at position (b*b - b) / 2 for
    b >= 2, so the block containing n is found from the triangular-number
    inverse and the letter is the offset inside it.
    """
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n}")
    # largest b with (b*b - b) / 2 <= n
    b = (1 + isqrt(1 + 8 * n)) // 2
    while b * (b - 1) // 2 > n:
        b -= 1
    while (b + 1) * b // 2 <= n:
        b += 1
    return n - b * (b - 1) // 2 + 1


def power_letter(q: int, n: int) -> int:
    """Letter at position n of the power word for parameter q.

    Writes n = j*q^k + m*q^(k+1) with 1 <= j <= q-1 and returns k*(q-1) + j.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n}")
    k = 0
    while n % q == 0:
        n //= q
        k += 1
    j = n % q
    return k * (q - 1) + j


def fibonacci_letter(n: int) -> int:
    """Letter at position n of the fibonacci-type word.

    Equals (smallest Zeckendorf index of n) - 1; cross-checked against the
    substitution iterates, which are the authoritative definition.
    """
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n}")
    return zeckendorf(n).indices[-1] - 1


def zeckendorf(n: int) -> ZeckendorfRep:
    """Greedy decomposition of n as a sum of non-consecutive Fibonacci numbers.

    Indices refer to F_k with F_1 = F_2 = 1; only indices >= 2 are used so
    the representation is unique.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = 2
    while _fib(k + 1) <= n:
        k += 1
    indices = []
    rest = n
    while rest:
        while _fib(k) > rest:
            k -= 1
        indices.append(k)
        rest -= _fib(k)
        k -= 2  # non-consecutive by construction
    return ZeckendorfRep(tuple(indices))


_FIBS = [0, 1, 1]


def _fib(k: int) -> int:
    while len(_FIBS) <= k:
        _FIBS.append(_FIBS[-1] + _FIBS[-2])
    return _FIBS[k]


# ---------------------------------------------------------------------------
# streaming generators (concatenation / substitution definitions)
# ---------------------------------------------------------------------------

def _arithmetic_stream():
    for b in count(2):
        yield from range(1, b + 1)


def _power_stream(q):
    word = list(range(1, q))
    yield from word
    for n in count(2):
        grown = list(word)
        for i in range(1, q):
            letter = (n - 1) * (q - 1) + i
            yield letter
            yield from word
            grown.append(letter)
            grown.extend(word)
        word = grown


def _fibonacci_stream():
    iterates = [[], [1]]  # index n holds the n-th iterate
    yield 1
    for n in count(2):
        suffix = [n] + iterates[n - 2]
        yield from suffix
        iterates.append(iterates[n - 1] + suffix)


def _periodic_stream(pattern):
    while True:
        yield from pattern


# ---------------------------------------------------------------------------
# prefixes and iterates
# ---------------------------------------------------------------------------

def prefix(spec: InfiniteWordSpec, length: int, cap: int = DEFAULT_LETTER_CAP) -> FiniteWord:
    """First ``length`` letters of the family, from the streaming generator."""
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    if length > cap:
        raise CapExceededError(f"prefix length {length} exceeds cap {cap}")
    letters = tuple(islice(spec.stream(), length))
    return FiniteWord(letters, origin=(spec, 1))


def power_iterate(q: int, n: int, cap: int = DEFAULT_LETTER_CAP) -> FiniteWord:
    """n-th substitution iterate of the power word; length q^n - 1.

    Iterate 1 is ``1 2 ... q-1``; iterate n is q copies of iterate n-1 with
    the q-1 letters (n-1)(q-1)+1 .. n(q-1) inserted between them.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if q ** n - 1 > cap:
        raise CapExceededError(f"iterate length {q ** n - 1} exceeds cap {cap}")
    word = list(range(1, q))
    for level in range(2, n + 1):
        prev = word
        word = list(prev)
        for i in range(1, q):
            word.append((level - 1) * (q - 1) + i)
            word.extend(prev)
    return FiniteWord(tuple(word), origin=(InfiniteWordSpec.power(q), 1))


def fibonacci_iterate(n: int, cap: int = DEFAULT_LETTER_CAP) -> FiniteWord:
    """n-th substitution iterate of the fibonacci-type word; length F_{n+2} - 1.

    Iterate 1 is ``1``, iterate 2 is ``1 2``, and iterate n is iterate n-1,
    then the letter n, then iterate n-2.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if _fib(n + 2) - 1 > cap:
        raise CapExceededError(f"iterate length {_fib(n + 2) - 1} exceeds cap {cap}")
    prev2, prev = [], [1]
    for level in range(2, n + 1):
        prev2, prev = prev, prev + [level] + prev2
    return FiniteWord(tuple(prev), origin=(InfiniteWordSpec.fibonacci(), 1))


# ---------------------------------------------------------------------------
# nestedness
# ---------------------------------------------------------------------------

def is_nested(word, max_letter: int) -> NestednessReport:
    """Check the nested-word condition on a finite prefix.

    A word is nested if for every quadruple of letters m < x < y < z, every
    factor that starts with x and ends with z (or the reverse) contains m or
    y.  Only minimal factors (no interior occurrence of x or z) need to be
    checked: any violating factor contains a minimal violating one.

    Quadruples are drawn from letters <= max_letter occurring in the word;
    the first violation in quadruple-lexicographic, then positional, order
    is reported.  The empty word is vacuously nested.
    """
    letters = tuple(word.letters if isinstance(word, FiniteWord) else word)
    positions = {}
    for idx, a in enumerate(letters):
        if a <= max_letter:
            positions.setdefault(a, []).append(idx)
    occurring = sorted(positions)

    # minimal factors per unordered pair, cached across quadruples
    minimal = {}

    def minimal_factors(x, z):
        key = (x, z)
        if key not in minimal:
            merged = sorted(positions[x] + positions[z])
            out = []
            for a, b in zip(merged, merged[1:]):
                if letters[a] != letters[b]:
                    out.append((a, b))
            minimal[key] = out
        return minimal[key]

    for m, x, y, z in combinations(occurring, 4):
        for a, b in minimal_factors(x, z):
            interior = letters[a + 1:b]
            if m not in interior and y not in interior:
                return NestednessReport(
                    nested=False,
                    violation=NestednessViolation(m, x, y, z, (a + 1, b + 1)),
                )
    return NestednessReport(nested=True)


# ---------------------------------------------------------------------------
# letter-interval structure
# ---------------------------------------------------------------------------

def find_increasing_intervals(spec: InfiniteWordSpec, letters, search_bound: int):
    """Greedy disjoint position intervals covering growing letter sets.

    Interval 1 is the first occurrence of letters[0]; interval k starts right
    after interval k-1 and ends at the first position by which all of
    letters[0..k-1] have been seen.  Raises CapExceededError naming the
    failing k if the search bound is reached first.
    """
    letters = list(letters)
    if not letters:
        raise ValueError("need at least one letter")
    if any(b <= a for a, b in zip(letters, letters[1:])):
        raise ValueError("letters must be strictly increasing")
    word = prefix(spec, search_bound, cap=max(search_bound, DEFAULT_LETTER_CAP))

    intervals = []
    pos = 0  # 0-based scan index into word.letters
    for k, _ in enumerate(letters, start=1):
        need = set(letters[:k])
        start = pos
        while pos < search_bound and need:
            need.discard(word.letters[pos])
            pos += 1
        if need:
            raise CapExceededError(
                f"interval {k} not found within search bound {search_bound}"
                f" (still missing letters {sorted(need)})"
            )
        if k == 1:
            # first occurrence only, a single-position interval
            intervals.append((pos, pos))
        else:
            intervals.append((start + 1, pos))
    return intervals
