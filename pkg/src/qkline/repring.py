"""Exact arithmetic in the integer group ring of the weight lattice.

Elements are finite integer combinations of formal exponentials ``e^lam``
with ``lam`` a weight-lattice point in fundamental-weight coordinates.  No
floating point is used anywhere.

Internally each exponent vector is packed into a single integer whose
natural ordering realizes graded-lex order on exponents (total degree field
first, then the coordinates, each shifted by a fixed offset).  Packing is
additive, so ``e^lam * e^mu`` is one integer addition; it also makes the
leading-term scans of exact division cheap.  The packing is an internal
detail: the public API speaks exponent tuples.

Division is polynomial long division against the graded-lex leading term.
For an exact quotient the leading term of each partial remainder equals
``LT(divisor) * (a term of the quotient)``, so the division terminates after
one step per quotient term; a remainder that drops below the trailing bound
proves there is no quotient and raises :class:`NotDivisible`.
"""

from __future__ import annotations

from functools import lru_cache

from . import rootsys
from .rootsys import CartanDatum


class NotDivisible(ArithmeticError):
    """No exact quotient exists in the group ring."""


class NotInSubring(ValueError):
    """Element does not lie in the subring generated by the e^{-alpha_i}."""


_COORD_BITS = 24
_COORD_OFF = 1 << 23
_DEG_OFF = 1 << 27


@lru_cache(maxsize=None)
def _codec(rank: int):
    shifts = tuple(_COORD_BITS * (rank - 1 - i) for i in range(rank))
    deg_shift = _COORD_BITS * rank
    key0 = (_DEG_OFF << deg_shift) + sum(_COORD_OFF << s for s in shifts)
    mask = (1 << _COORD_BITS) - 1
    return shifts, deg_shift, key0, mask


def _pack(rank: int, coords) -> int:
    shifts, deg_shift, _, _ = _codec(rank)
    key = (sum(coords) + _DEG_OFF) << deg_shift
    for c, s in zip(coords, shifts):
        key += (c + _COORD_OFF) << s
    return key


def _unpack(rank: int, key: int) -> tuple[int, ...]:
    shifts, _, _, mask = _codec(rank)
    return tuple(((key >> s) & mask) - _COORD_OFF for s in shifts)


class RingElt:
    """An element of the group ring; immutable and hashable."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, _terms: dict[int, int]):
        # _terms maps packed exponent -> nonzero coefficient; owned by self
        self.rank = rank
        self._terms = _terms
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(rank: int) -> "RingElt":
        return RingElt(rank, {})

    @staticmethod
    def one(rank: int) -> "RingElt":
        return RingElt.monomial(rank, (0,) * rank)

    @staticmethod
    def monomial(rank: int, coords, coeff: int = 1) -> "RingElt":
        if len(coords) != rank:
            raise ValueError("exponent length does not match rank")
        if coeff == 0:
            return RingElt(rank, {})
        return RingElt(rank, {_pack(rank, tuple(coords)): int(coeff)})

    @staticmethod
    def from_terms(rank: int, items) -> "RingElt":
        terms: dict[int, int] = {}
        for coords, coeff in items:
            key = _pack(rank, tuple(coords))
            val = terms.get(key, 0) + int(coeff)
            if val:
                terms[key] = val
            else:
                terms.pop(key, None)
        return RingElt(rank, terms)

    # -- inspection -----------------------------------------------------------

    def terms(self):
        """Pairs (exponent tuple, coefficient), graded-lex descending."""
        return [(_unpack(self.rank, k), c) for k, c in sorted(self._terms.items(), reverse=True)]

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, RingElt):
            return self.rank == other.rank and self._terms == other._terms
        if isinstance(other, int):
            return self == RingElt.monomial(self.rank, (0,) * self.rank, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "RingElt(0)"
        bits = [f"{c}*e{_unpack(self.rank, k)}" for k, c in sorted(self._terms.items(), reverse=True)]
        return "RingElt(" + " + ".join(bits) + ")"

    # -- ring operations --------------------------------------------------------

    def _check(self, other: "RingElt"):
        if self.rank != other.rank:
            raise ValueError("rank mismatch between ring elements")

    def __add__(self, other):
        if isinstance(other, int):
            other = RingElt.monomial(self.rank, (0,) * self.rank, other)
        if not isinstance(other, RingElt):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return RingElt(self.rank, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RingElt(self.rank, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = RingElt.monomial(self.rank, (0,) * self.rank, other)
        if not isinstance(other, RingElt):
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (self.__neg__()).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return RingElt(self.rank, {})
            return RingElt(self.rank, {k: c * other for k, c in self._terms.items()})
        if not isinstance(other, RingElt):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        key0 = _codec(self.rank)[2]
        out: dict[int, int] = {}
        get = out.get
        for k1, c1 in a.items():
            base = k1 - key0
            for k2, c2 in b.items():
                k = base + k2
                v = get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    del out[k]
        return RingElt(self.rank, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    # -- specializations ---------------------------------------------------------

    def specialize_to_one(self) -> int:
        """Sum of coefficients: the nonequivariant specialization e^lam -> 1."""
        return sum(self._terms.values())

    def map_exponents(self, fn) -> "RingElt":
        """Apply a lattice map to every exponent (must be injective on the
        support, as for any group automorphism)."""
        rank = self.rank
        out: dict[int, int] = {}
        for k, c in self._terms.items():
            key = _pack(rank, fn(_unpack(rank, k)))
            out[key] = out.get(key, 0) + c
        return RingElt(rank, {k: c for k, c in out.items() if c})


def zero(rank: int) -> RingElt:
    return RingElt.zero(rank)


def one(rank: int) -> RingElt:
    return RingElt.one(rank)


def monomial(rank: int, coords, coeff: int = 1) -> RingElt:
    return RingElt.monomial(rank, coords, coeff)


def specialize_to_one(a: RingElt) -> int:
    return a.specialize_to_one()


def weyl_act(w, a: RingElt) -> RingElt:
    """The ring automorphism e^lam -> e^{w lam} for a Weyl group element."""
    return a.map_exponents(w.act_weight)


def exact_divide(a: RingElt, b: RingElt) -> RingElt:
    """The exact quotient q with a == b*q, when it exists in the ring."""
    if a.rank != b.rank:
        raise ValueError("rank mismatch between ring elements")
    if not b:
        raise ZeroDivisionError("division by the zero ring element")
    if not a:
        return RingElt.zero(a.rank)
    key0 = _codec(a.rank)[2]
    bterms = b._terms
    lead_b = max(bterms)
    lead_bc = bterms[lead_b]
    floor = min(a._terms) - min(bterms)  # packed key of trail(a)/trail(b), off by key0
    rem = dict(a._terms)
    quo: dict[int, int] = {}
    while rem:
        lead_r = max(rem)
        t = lead_r - lead_b  # off by key0
        if t < floor:
            raise NotDivisible("leading term fell below the trailing bound")
        c, r = divmod(rem[lead_r], lead_bc)
        if r:
            raise NotDivisible("leading coefficient does not divide")
        quo[t + key0] = c
        for k, bc in bterms.items():
            kk = t + k
            v = rem.get(kk, 0) - c * bc
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    return RingElt(a.rank, quo)


def divides_one_minus_e(a: RingElt, beta_weight_coords) -> bool:
    """Fast test for divisibility by 1 - e^beta: project every exponent to a
    canonical representative of its coset modulo Z*beta and check that the
    coefficient sums vanish classwise."""
    if not a:
        return True
    b = tuple(beta_weight_coords)
    j = next(i for i, x in enumerate(b) if x)
    if b[j] < 0:
        b = tuple(-x for x in b)
        j = next(i for i, x in enumerate(b) if x)
    bj = b[j]
    rank = a.rank
    sums: dict[tuple[int, ...], int] = {}
    for k, c in a._terms.items():
        lam = _unpack(rank, k)
        t = lam[j] // bj
        rep = tuple(x - t * y for x, y in zip(lam, b))
        v = sums.get(rep, 0) + c
        if v:
            sums[rep] = v
        else:
            del sums[rep]
    return not sums


def rewrite_in_shifted_basis(a: RingElt, datum: CartanDatum) -> dict[tuple[int, ...], int]:
    """Write ``a`` as an integer polynomial in the shifted variables
    ``y_i = e^{-alpha_i} - 1``.

    The result maps exponent tuples (the multiset of y's) to coefficients.
    Raises :class:`NotInSubring` when some exponent of ``a`` is not a
    nonpositive integer combination of simple roots.
    """
    import itertools

    out: dict[tuple[int, ...], int] = {}
    for lam, coeff in a.terms():
        alpha = rootsys.omega_to_alpha(datum, lam)
        if alpha is None or any(x > 0 for x in alpha):
            raise NotInSubring(f"exponent {lam} is not in the nonpositive root cone")
        m = tuple(-x for x in alpha)
        # e^{-alpha_i}^{m_i} = (1+y_i)^{m_i}; expand binomially
        for ks in itertools.product(*(range(x + 1) for x in m)):
            mult = 1
            for mi, ki in zip(m, ks):
                mult *= _binom(mi, ki)
            v = out.get(ks, 0) + coeff * mult
            if v:
                out[ks] = v
            else:
                del out[ks]
    return out


@lru_cache(maxsize=None)
def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


# -- serialization and printing ------------------------------------------------


def to_pairs(a: RingElt, datum: CartanDatum):
    """Canonical serialization: a list of [exponent-vector, coefficient]
    pairs sorted lexicographically, exponents in simple-root coordinates
    when the whole element lies in the root lattice (else in
    fundamental-weight coordinates)."""
    rows = []
    in_root_lattice = True
    for lam, coeff in a.terms():
        alpha = rootsys.omega_to_alpha(datum, lam)
        if alpha is None:
            in_root_lattice = False
            break
        rows.append((alpha, coeff))
    if not in_root_lattice:
        rows = [(lam, coeff) for lam, coeff in a.terms()]
    return [[list(exp), coeff] for exp, coeff in sorted(rows)]


def from_pairs(datum: CartanDatum, pairs, basis: str = "alpha") -> RingElt:
    items = []
    for exp, coeff in pairs:
        exp = tuple(int(x) for x in exp)
        if basis == "alpha":
            exp = rootsys.alpha_to_omega(datum, exp)
        items.append((exp, int(coeff)))
    return RingElt.from_terms(datum.rank, items)


def format_elt(a: RingElt, datum: CartanDatum) -> str:
    """Human-readable form, e.g. ``1 - e^{-a1} + 2e^{-a1-a2}``."""
    if not a:
        return "0"
    bits = []
    for lam, coeff in _display_terms(a, datum):
        alpha = rootsys.omega_to_alpha(datum, lam)
        if alpha is not None:
            mono = _format_exponent(alpha, "a")
        else:
            mono = _format_exponent(lam, "w")
        if mono == "":
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            body = f"{abs(coeff)}{mono}"
        sign = "-" if coeff < 0 else "+"
        bits.append((sign, body))
    first_sign, first_body = bits[0]
    text = (first_sign if first_sign == "-" else "") + first_body
    for sign, body in bits[1:]:
        text += f" {sign} {body}"
    return text


def _display_terms(a: RingElt, datum: CartanDatum):
    """Terms ordered for printing: descending root-lattice height, so the
    constant term leads and deeper exponentials follow."""

    def key(item):
        lam, _ = item
        alpha = rootsys.omega_to_alpha(datum, lam)
        if alpha is None:
            return (1, lam)
        return (0, tuple(-x for x in (sum(alpha),) + alpha))

    return sorted(a.terms(), key=key)


def _format_exponent(coords, var: str) -> str:
    parts = []
    for i, c in enumerate(coords, start=1):
        if c == 0:
            continue
        mag = f"{abs(c)}" if abs(c) != 1 else ""
        parts.append(("-" if c < 0 else "+") + mag + f"{var}{i}")
    if not parts:
        return ""
    body = "".join(parts)
    if body.startswith("+"):
        body = body[1:]
    return "e^{" + body + "}"


# -- tiny expression parser (fixtures, tests) -----------------------------------


def parse_expression(datum: CartanDatum, text: str) -> RingElt:
    """Parse expressions like ``(1-e(-a1))*(1+e(-a1-2a2))`` or ``-e(-2a1-a2)``.

    Grammar: integers, ``e(<linear form in a1..ar>)``, ``+ - *`` and
    parentheses.  Used to keep transcribed table data readable.
    """
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take(expected=None):
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"parse error in {text!r} at token {tok!r}")
        pos[0] += 1
        return tok

    def parse_expr():
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        val = parse_term() * sign
        while peek() in ("+", "-"):
            op = take()
            val = val + parse_term() * (1 if op == "+" else -1)
        return val

    def parse_term():
        val = parse_factor()
        while peek() == "*":
            take()
            val = val * parse_factor()
        return val

    def parse_factor():
        tok = peek()
        if tok == "(":
            take()
            val = parse_expr()
            take(")")
            return val
        if tok == "e":
            take()
            take("(")
            coords = parse_linear()
            take(")")
            return RingElt.monomial(datum.rank, rootsys.alpha_to_omega(datum, coords))
        if isinstance(tok, int):
            take()
            return RingElt.monomial(datum.rank, (0,) * datum.rank, tok)
        if tok == "-":
            take()
            return -parse_factor()
        raise ValueError(f"parse error in {text!r} at token {tok!r}")

    def parse_linear():
        coords = [0] * datum.rank
        while peek() != ")":
            sign = 1
            while peek() in ("+", "-"):
                if take() == "-":
                    sign = -sign
            mult = 1
            if isinstance(peek(), int):
                mult = take()
                if peek() == "*":
                    take()
            name = take()
            if not (isinstance(name, str) and name.startswith("a") and name[1:].isdigit()):
                raise ValueError(f"expected a simple-root symbol in {text!r}, got {name!r}")
            idx = int(name[1:])
            if not 1 <= idx <= datum.rank:
                raise ValueError(f"root index {idx} out of range in {text!r}")
            coords[idx - 1] += sign * mult
        return tuple(coords)

    val = parse_expr()
    if pos[0] != len(tokens):
        raise ValueError(f"trailing tokens in {text!r}")
    return val


def _tokenize(text: str):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*()":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(int(text[i:j]))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum()):
                j += 1
            word = text[i:j]
            if word == "e":
                out.append("e")
            elif word.startswith("a") and word[1:].isdigit():
                out.append(word)
            elif word.startswith("e") and len(word) == 1:
                out.append("e")
            else:
                raise ValueError(f"unknown symbol {word!r}")
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r}")
    return out
