"""Exact coefficient rings: Z, Z/m, Q and Z with a finite set of primes inverted.

Elements are plain Python values: ``int`` for Z and Z/m (canonical residue in
[0, m)), ``Fraction`` for Q and the localized rings.
"""
from fractions import Fraction
from math import comb, gcd


class RingError(ValueError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class CoeffRing:
    """One of Integers, ModM(m), Rationals, LocalizedIntegers(primes).

    ``sqrt_minus_one`` records that -1 is a square in the ring.  It only
    matters in characteristic 2, where it makes the class {-1} vanish.
    """

    KINDS = ("z", "zmod", "q", "zloc")

    def __init__(self, kind, modulus=None, primes=(), sqrt_minus_one=False):
        if kind not in self.KINDS:
            raise RingError("unknown ring kind %r" % (kind,))
        if kind == "zmod":
            if modulus is None or int(modulus) < 2:
                raise RingError("Z/m needs m >= 2")
            modulus = int(modulus)
        else:
            modulus = None
        if kind == "zloc":
            primes = tuple(sorted(int(p) for p in primes))
            if len(set(primes)) != len(primes):
                raise RingError("inverted primes must be distinct")
            for p in primes:
                if not _is_prime(p):
                    raise RingError("%d is not prime" % p)
        else:
            primes = ()
        self.kind = kind
        self.modulus = modulus
        self.primes = primes
        self.sqrt_minus_one = bool(sqrt_minus_one)

    # construction helpers
    @classmethod
    def integers(cls):
        return cls("z")

    @classmethod
    def rationals(cls):
        return cls("q")

    @classmethod
    def mod(cls, m, sqrt_minus_one=False):
        return cls("zmod", modulus=m, sqrt_minus_one=sqrt_minus_one)

    @classmethod
    def localized(cls, primes):
        return cls("zloc", primes=primes)

    @classmethod
    def parse(cls, text, sqrt_minus_one=False):
        """Parse the CLI spelling: z, q, zmod:<m>, zloc:<p1,p2,...>."""
        text = text.strip().lower()
        if text == "z":
            return cls.integers()
        if text == "q":
            return cls.rationals()
        head, _, tail = text.partition(":")
        try:
            if head == "zmod" and tail:
                return cls.mod(int(tail), sqrt_minus_one=sqrt_minus_one)
            if head == "zloc" and tail:
                return cls.localized([int(x) for x in tail.split(",") if x])
        except ValueError:
            pass
        raise RingError("cannot parse coefficient ring %r" % (text,))

    def spelling(self):
        if self.kind == "zmod":
            return "zmod:%d" % self.modulus
        if self.kind == "zloc":
            return "zloc:" + ",".join(str(p) for p in self.primes)
        return self.kind

    def __repr__(self):
        extra = "+sqrt(-1)" if self.sqrt_minus_one else ""
        return "CoeffRing(%s%s)" % (self.spelling(), extra)

    def _key(self):
        return (self.kind, self.modulus, self.primes, self.sqrt_minus_one)

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # structural facts
    @property
    def characteristic(self):
        return self.modulus if self.kind == "zmod" else 0

    def is_field(self):
        if self.kind == "q":
            return True
        return self.kind == "zmod" and _is_prime(self.modulus)

    def is_pid(self):
        return self.kind in ("z", "q", "zloc") or self.is_field()

    def minus_one_class_vanishes(self):
        """True when {-1} = 0 in motivic cohomology of the base.

        This holds when 2 is invertible, or in characteristic 2 when -1 is
        flagged as a square.
        """
        if self.is_unit(self.reduce(2)):
            return True
        return self.characteristic == 2 and self.sqrt_minus_one

    # elements
    def reduce(self, x):
        """Canonical representative of an integer or fraction."""
        if self.kind == "z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise RingError("%s is not an integer" % x)
                return x.numerator
            return int(x)
        if self.kind == "zmod":
            if isinstance(x, Fraction):
                d = x.denominator % self.modulus
                if gcd(d, self.modulus) != 1:
                    raise RingError("denominator of %s not invertible mod %d" % (x, self.modulus))
                return (x.numerator * pow(d, -1, self.modulus)) % self.modulus
            return int(x) % self.modulus
        x = Fraction(x)
        if self.kind == "zloc":
            d = x.denominator
            for p in self.primes:
                while d % p == 0:
                    d //= p
            if d != 1:
                raise RingError("%s has a denominator prime that is not inverted" % x)
        return x

    def zero(self):
        return self.reduce(0)

    def one(self):
        return self.reduce(1)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def mul(self, a, b):
        return self.reduce(a * b)

    def is_zero(self, a):
        return a == 0

    def is_unit(self, x):
        if self.kind == "z":
            return x in (1, -1)
        if self.kind == "zmod":
            return gcd(int(x), self.modulus) == 1
        if self.kind == "q":
            return x != 0
        if x == 0:
            return False
        return self._strip(Fraction(x).numerator) == 1

    def inv(self, x):
        if not self.is_unit(x):
            raise RingError("%s is not a unit in %s" % (x, self.spelling()))
        if self.kind == "z":
            return x
        if self.kind == "zmod":
            return pow(int(x), -1, self.modulus)
        return self.reduce(1 / Fraction(x))

    def _strip(self, n):
        n = abs(int(n))
        for p in self.primes:
            while n and n % p == 0:
                n //= p
        return n

    # Euclidean structure (only for PIDs used by the linear algebra)
    def norm(self, a):
        """Euclidean size: 0 for zero, smaller is closer to a unit."""
        if a == 0:
            return 0
        if self.kind == "z":
            return abs(a)
        if self.kind == "zloc":
            return self._strip(Fraction(a).numerator)
        return 1

    def divmod(self, a, b):
        """(q, r) with a = q*b + r and norm(r) < norm(b)."""
        if b == 0:
            raise ZeroDivisionError("division by zero in %s" % self.spelling())
        if self.kind == "z":
            return divmod(a, b)
        if self.kind == "zloc":
            a, b = Fraction(a), Fraction(b)
            nb = self._strip(b.numerator)
            ub = b / nb
            na = self._strip(a.numerator)
            if na == 0:
                return Fraction(0), Fraction(0)
            ua = a / na
            qq, rr = divmod(na, nb)
            return self.reduce(ua * qq / ub), self.reduce(ua * rr)
        if not self.is_field():
            raise RingError("no Euclidean division in %s" % self.spelling())
        return self.mul(a, self.inv(b)), self.zero()

    def normalize_unit(self, a):
        """A unit u with u*a in a canonical associate class."""
        if a == 0:
            return self.one()
        if self.kind == "z":
            return -1 if a < 0 else 1
        if self.kind == "zloc":
            a = Fraction(a)
            return self.reduce(self._strip(a.numerator) / a)
        if self.is_field():
            return self.inv(a)
        return self.one()

    def divides(self, a, b):
        """True iff a divides b."""
        if a == 0:
            return b == 0
        if self.is_field():
            return True
        if self.kind == "zmod":
            g = gcd(int(a), self.modulus)
            return int(b) % g == 0
        _, r = self.divmod(b, a)
        return r == 0

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if r != 0:
            raise RingError("%s does not divide %s" % (b, a))
        return q

    def render(self, a):
        a = self.reduce(a)
        if isinstance(a, Fraction):
            if a.denominator == 1:
                return str(a.numerator)
            return "%d/%d" % (a.numerator, a.denominator)
        return str(a)

    def to_json(self, a):
        a = self.reduce(a)
        if isinstance(a, Fraction):
            return a.numerator if a.denominator == 1 else "%d/%d" % (a.numerator, a.denominator)
        return a

    def parse_element(self, text):
        return self.reduce(Fraction(str(text)))


def reduce(n, ring):
    return ring.reduce(n)


def is_unit(x, ring):
    return ring.is_unit(ring.reduce(x))


def binomial_in_ring(n, i, ring):
    if not 0 <= i <= n:
        raise RingError("binomial index %d out of range for n=%d" % (i, n))
    return ring.reduce(comb(n, i))
