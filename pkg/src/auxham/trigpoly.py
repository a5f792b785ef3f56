"""
Exact double Fourier series with action-dependent coefficients.

A :class:`TrigPolynomial` represents

    f(phi1, phi2) = sum_m  A_m(I1, I2, w) exp(-j (m1 phi1 + m2 phi2)),

so the amplitude of mode ``m`` is ``<f exp(+j m.phi)>``. Each amplitude is an
:class:`Amplitude`, a finite sum of monomials

    (re + j im) * sqrt(2)^s2 * sqrt(I1)^a * sqrt(I2)^b * sqrt(w)^c

with rational ``re``, ``im`` and integer exponents counted in half steps. The
square root of ``I2`` is evaluated on a selectable branch, ``sqrt(I2) ->
branch2 * |sqrt(I2)|``, because the physically relevant solutions sit on the
negative branch.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

import numpy as np

Key = tuple[int, int, int, int]  # (s2, a, b, c)
CRational = tuple[Fraction, Fraction]

_ZERO = (Fraction(0), Fraction(0))


def _cmul(u: CRational, v: CRational) -> CRational:
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _as_crational(c) -> CRational:
    if isinstance(c, tuple):
        return (Fraction(c[0]), Fraction(c[1]))
    if isinstance(c, complex):
        raise TypeError("use exact (re, im) pairs, not floating complex numbers")
    return (Fraction(c), Fraction(0))


def _normalize(key: Key, coef: CRational) -> tuple[Key, CRational]:
    s2, a, b, c = key
    q, s2 = divmod(s2, 2)
    if q:
        f = Fraction(2) ** q
        coef = (coef[0] * f, coef[1] * f)
    return (s2, a, b, c), coef


class Amplitude:
    """Sum of monomials in sqrt(2), sqrt(I1), sqrt(I2), sqrt(w) with complex rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Key, CRational] | None = None):
        self.terms: dict[Key, CRational] = {}
        for k, c in (terms or {}).items():
            self._accumulate(k, _as_crational(c))

    @classmethod
    def monomial(cls, coef=1, s2=0, a=0, b=0, c=0) -> "Amplitude":
        return cls({(s2, a, b, c): coef})

    def _accumulate(self, key, coef):
        key, coef = _normalize(key, coef)
        old = self.terms.get(key, _ZERO)
        new = (old[0] + coef[0], old[1] + coef[1])
        if new == _ZERO:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def copy(self) -> "Amplitude":
        out = Amplitude()
        out.terms = dict(self.terms)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Amplitude) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Amplitude") -> "Amplitude":
        out = self.copy()
        for k, c in other.terms.items():
            out._accumulate(k, c)
        return out

    def __neg__(self):
        return Amplitude({k: (-c[0], -c[1]) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "Amplitude":
        if not isinstance(other, Amplitude):
            z = _as_crational(other)
            return Amplitude({k: _cmul(c, z) for k, c in self.terms.items()})
        out = Amplitude()
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out._accumulate(tuple(u + v for u, v in zip(k1, k2)), _cmul(c1, c2))
        return out

    __rmul__ = __mul__

    def times_j(self, power: int = 1) -> "Amplitude":
        z = [(1, 0), (0, 1), (-1, 0), (0, -1)][power % 4]
        return self * z

    def scale_omega(self, half_steps: int) -> "Amplitude":
        """Multiply by ``sqrt(w)^half_steps``."""
        return Amplitude({(s, a, b, c + half_steps): v for (s, a, b, c), v in self.terms.items()})

    def conjugate(self) -> "Amplitude":
        return Amplitude({k: (c[0], -c[1]) for k, c in self.terms.items()})

    def d_dI(self, index: int) -> "Amplitude":
        """Partial derivative with respect to ``I1`` (index 1) or ``I2`` (index 2).

        ``d/dI sqrt(I)^a = (a/2) sqrt(I)^(a-2)``; on the signed branch of
        ``sqrt(I2)`` the same rule holds because ``(s sqrt(I))^2 = I``.
        """
        pos = {1: 1, 2: 2}[index]
        out = Amplitude()
        for k, c in self.terms.items():
            n = k[pos]
            if n == 0:
                continue
            k2 = list(k)
            k2[pos] -= 2
            f = Fraction(n, 2)
            out._accumulate(tuple(k2), (c[0] * f, c[1] * f))
        return out

    def evaluate(self, I1, I2, omega, branch2: int = 1):
        r1 = np.sqrt(I1)
        r2 = branch2 * np.sqrt(I2)
        rw = np.sqrt(omega)
        total = 0j
        for (s2, a, b, c), (re, im) in self.terms.items():
            total = total + complex(float(re), float(im)) * (np.sqrt(2.0) ** s2) * (
                r1 ** a) * (r2 ** b) * (rw ** c)
        return total

    def to_json(self) -> list[dict]:
        return [
            {"re_num": re.numerator, "re_den": re.denominator,
             "im_num": im.numerator, "im_den": im.denominator,
             "sqrt2": s2, "sqrt_i1": a, "sqrt_i2": b, "sqrt_omega": c}
            for (s2, a, b, c), (re, im) in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "Amplitude":
        out = cls()
        for t in data:
            key = (t["sqrt2"], t["sqrt_i1"], t["sqrt_i2"], t["sqrt_omega"])
            out._accumulate(key, (Fraction(t["re_num"], t["re_den"]),
                                  Fraction(t["im_num"], t["im_den"])))
        return out

    def __repr__(self):
        parts = []
        for (s2, a, b, c), (re, im) in sorted(self.terms.items()):
            coef = f"({re}{'+' if im >= 0 else ''}{im}j)"
            parts.append(f"{coef}*r2^{s2}*rI1^{a}*rI2^{b}*rw^{c}")
        return " + ".join(parts) or "0"


Mode = tuple[int, int]


class TrigPolynomial:
    """Finite double Fourier series ``sum_m A_m exp(-j m.phi)``."""

    __slots__ = ("modes",)

    def __init__(self, modes: dict[Mode, Amplitude] | None = None):
        self.modes: dict[Mode, Amplitude] = {}
        for m, a in (modes or {}).items():
            self._accumulate(m, a)

    def _accumulate(self, m, amp):
        new = self.modes[m] + amp if m in self.modes else amp.copy()
        if new:
            self.modes[m] = new
        else:
            self.modes.pop(m, None)

    @classmethod
    def constant(cls, amp: Amplitude) -> "TrigPolynomial":
        return cls({(0, 0): amp})

    @classmethod
    def sin(cls, index: int, amp: Amplitude | None = None) -> "TrigPolynomial":
        """``amp * sin(phi_index)``."""
        amp = Amplitude.monomial() if amp is None else amp
        e = (1, 0) if index == 1 else (0, 1)
        neg = (-e[0], -e[1])
        half = Fraction(1, 2)
        return cls({e: amp * (0, half), neg: amp * (0, -half)})

    @classmethod
    def cos(cls, index: int, amp: Amplitude | None = None) -> "TrigPolynomial":
        amp = Amplitude.monomial() if amp is None else amp
        e = (1, 0) if index == 1 else (0, 1)
        neg = (-e[0], -e[1])
        half = Fraction(1, 2)
        return cls({e: amp * half, neg: amp * half})

    def __add__(self, other):
        if isinstance(other, Amplitude):
            other = TrigPolynomial.constant(other)
        out = TrigPolynomial(self.modes)
        for m, a in other.modes.items():
            out._accumulate(m, a)
        return out

    def __neg__(self):
        return TrigPolynomial({m: -a for m, a in self.modes.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "TrigPolynomial":
        if not isinstance(other, TrigPolynomial):
            return TrigPolynomial({m: a * other for m, a in self.modes.items()})
        out = TrigPolynomial()
        for m1, a1 in self.modes.items():
            for m2, a2 in other.modes.items():
                out._accumulate((m1[0] + m2[0], m1[1] + m2[1]), a1 * a2)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TrigPolynomial) and self.modes == other.modes

    def map(self, fn) -> "TrigPolynomial":
        """Apply ``fn(mode, amplitude) -> amplitude`` to every mode."""
        return TrigPolynomial({m: fn(m, a) for m, a in self.modes.items()})

    def select(self, pred) -> "TrigPolynomial":
        return TrigPolynomial({m: a for m, a in self.modes.items() if pred(m)})

    def d_dphi(self, index: int) -> "TrigPolynomial":
        i = index - 1
        return self.map(lambda m, a: a.times_j(-1) * m[i])

    def d_dI(self, index: int) -> "TrigPolynomial":
        return self.map(lambda m, a: a.d_dI(index))

    def mean(self) -> Amplitude:
        return self.modes.get((0, 0), Amplitude()).copy()

    @property
    def support(self) -> set[Mode]:
        return set(self.modes)

    def is_conjugate_symmetric(self) -> bool:
        for (m1, m2), a in self.modes.items():
            partner = self.modes.get((-m1, -m2))
            if partner is None or partner != a.conjugate():
                return False
        return True

    def amplitude(self, m: Mode, I1, I2, omega, branch2: int = 1) -> complex:
        a = self.modes.get(m)
        return 0j if a is None else a.evaluate(I1, I2, omega, branch2)

    def evaluate(self, phi1, phi2, I1, I2, omega, branch2: int = 1):
        phi1 = np.asarray(phi1, dtype=float)
        phi2 = np.asarray(phi2, dtype=float)
        total = np.zeros(np.broadcast(phi1, phi2).shape, dtype=complex)
        for (m1, m2), a in self.modes.items():
            total = total + a.evaluate(I1, I2, omega, branch2) * np.exp(-1j * (m1 * phi1 + m2 * phi2))
        return total

    def evaluate_real(self, *args, **kwargs):
        return np.real(self.evaluate(*args, **kwargs))

    def to_json(self) -> list[dict]:
        return [{"m1": m1, "m2": m2, "terms": a.to_json()}
                for (m1, m2), a in sorted(self.modes.items())]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "TrigPolynomial":
        return cls({(d["m1"], d["m2"]): Amplitude.from_json(d["terms"]) for d in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "TrigPolynomial":
        return cls.from_json(json.loads(text))

    def __repr__(self):
        return f"TrigPolynomial({len(self.modes)} modes)"
