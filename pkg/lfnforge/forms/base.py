"""
Newform descriptors, Dirichlet characters and normalized coefficient tables.
"""

# License: BSD (3-clause)

import dataclasses
import logging
from fractions import Fraction
from math import gcd

import numpy as np

from ..arith import divisor_count, prime_sieve, smallest_prime_factors

log = logging.getLogger(__name__)

INGEST_TOLERANCE = 1e-6


class CoefficientValidationError(ValueError):
    """Raised when a coefficient table violates one of its invariants.

    Parameters
    ----------
    reason: str
        Short name of the violated invariant, e.g. 'normalization',
        'Deligne bound', 'Hecke recurrence' or 'missing index'.
    message: str
        Human readable details.
    """
    def __init__(self, reason, message):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


def _turn_to_complex(turn):
    quarter = turn * 4
    if quarter.denominator == 1:
        return (1 + 0j, 1j, -1 + 0j, -1j)[int(quarter) % 4]
    return complex(np.exp(2j * np.pi * float(turn)))


class DirichletCharacter:
    """Dirichlet character given by an explicit table of values.

    Values are stored as fractions of a full turn, chi(r) = exp(2 pi i v(r)),
    so they can be evaluated exactly at any working precision.

    Parameters
    ----------
    modulus: int
        Modulus q >= 1.
    values: dict | None
        Map from every residue r with gcd(r, q) = 1 to a turn (Fraction or
        str like '1/2'). None gives the principal character.
    """
    def __init__(self, modulus, values=None):
        if modulus < 1:
            raise ValueError(f"modulus expected to be >= 1, got {modulus}")
        self.modulus = int(modulus)
        units = [r for r in range(self.modulus) if gcd(r, self.modulus) == 1]
        if values is None:
            turns = {r: Fraction(0) for r in units}
        else:
            turns = {int(r) % self.modulus: Fraction(v) % 1 for r, v in values.items()}
            for r in turns:
                if gcd(r, self.modulus) != 1:
                    raise ValueError(
                        f"residue {r} is not coprime to the modulus {self.modulus}")
            missing = [r for r in units if r not in turns]
            if missing:
                raise ValueError(f"character values missing for residues {missing}")
        self._turns = turns
        self.principal = all(v == 0 for v in turns.values())

    @classmethod
    def from_label(cls, label, modulus):
        """Parse 'principal' or 'values:r=a/b;r=a/b;...'."""
        label = label.strip()
        if label in ("principal", "1", "trivial"):
            return cls(modulus)
        if not label.startswith("values:"):
            raise ValueError(f"unknown character label '{label}'")
        values = {}
        for item in label[len("values:"):].split(";"):
            if not item:
                continue
            residue, turn = item.split("=")
            values[int(residue)] = Fraction(turn)
        return cls(modulus, values)

    @property
    def label(self):
        if self.principal:
            return "principal"
        items = ";".join(f"{r}={self._turns[r]}" for r in sorted(self._turns))
        return f"values:{items}"

    @property
    def is_real(self):
        return all(v in (0, Fraction(1, 2)) for v in self._turns.values())

    def turn(self, n):
        """Turn of chi(n), or None when gcd(n, q) > 1."""
        r = int(n) % self.modulus
        if gcd(r, self.modulus) != 1:
            return None
        return self._turns[r]

    def __call__(self, n):
        turn = self.turn(n)
        if turn is None:
            return 0j
        return _turn_to_complex(turn)

    def mp_value(self, n, mp):
        """chi(n) as an ``mpc`` of the context ``mp``."""
        turn = self.turn(n)
        if turn is None:
            return mp.mpc(0)
        if (turn * 4).denominator == 1:
            value = _turn_to_complex(turn)
            return mp.mpc(value.real, value.imag)
        return mp.expjpi(2 * mp.mpf(turn.numerator) / turn.denominator)

    def conjugate(self):
        if self.is_real:
            return self
        return DirichletCharacter(self.modulus, {r: -v for r, v in self._turns.items()})

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter) and
                self.modulus == other.modulus and self._turns == other._turns)

    def __hash__(self):
        return hash((self.modulus, self.label))

    def __repr__(self):
        return f"DirichletCharacter(modulus={self.modulus}, label='{self.label}')"


@dataclasses.dataclass(frozen=True)
class FormDescriptor:
    """Identifies one newform f in H_k(q, chi).

    Parameters
    ----------
    weight: int
        Even weight k >= 2.
    level: int
        Level q >= 1.
    character: DirichletCharacter
        Nebentypus modulo q.
    root_number: complex | None
        epsilon_f of the functional equation, None while unknown.
    self_dual: bool
        Whether all lambda_f(n) are real.
    label: str | None
        Name used in file headers; derived from (q, k, chi) if None.
    """
    weight: int
    level: int
    character: DirichletCharacter = None
    root_number: complex = None
    self_dual: bool = False
    label: str = None

    def __post_init__(self):
        if self.weight < 2 or self.weight % 2:
            raise ValueError(f"weight expected to be even and >= 2, got {self.weight}")
        if self.level < 1:
            raise ValueError(f"level expected to be >= 1, got {self.level}")
        if self.character is None:
            object.__setattr__(self, "character", DirichletCharacter(self.level))
        if self.character.modulus != self.level:
            raise ValueError(
                f"character modulus {self.character.modulus} does not match "
                f"level {self.level}")
        if self.self_dual and not self.character.is_real:
            raise ValueError("a self-dual form needs a real character")
        if self.root_number is not None:
            eps = complex(self.root_number)
            if abs(abs(eps) - 1) > 1e-9:
                raise ValueError(f"|root_number| expected to be 1, got {abs(eps)}")
            object.__setattr__(self, "root_number", eps)
        if self.label is None:
            object.__setattr__(
                self, "label", f"{self.level}.{self.weight}.{self.character.label}")

    @property
    def kappa(self):
        """(k - 1) / 2, the shift of the gamma factor."""
        return (self.weight - 1) / 2

    def with_root_number(self, root_number):
        return dataclasses.replace(self, root_number=root_number)

    def conjugate(self):
        """Descriptor of the dual form f-bar."""
        if self.self_dual:
            return self
        eps = None if self.root_number is None else self.root_number.conjugate()
        label = self.label[:-4] if self.label.endswith("-bar") else self.label + "-bar"
        return dataclasses.replace(
            self, character=self.character.conjugate(), root_number=eps, label=label)


def delta_descriptor():
    """Descriptor of the Ramanujan Delta function (k=12, q=1, eps=+1)."""
    return FormDescriptor(weight=12, level=1, root_number=1, self_dual=True, label="delta")


class CoefficientTable:
    """Normalized Hecke eigenvalues lambda_f(n), 1 <= n <= n_max.

    Double precision values are always present. Extended-precision values are
    produced on demand by :meth:`mp_values` from the most accurate source
    available: exact unnormalized integers, decimal literals read from a
    coefficient file, or the double precision values.

    Parameters
    ----------
    form: FormDescriptor
        The form the coefficients belong to.
    values: array-like of complex
        lambda_f(n) for n = 0..n_max. Index 0 is ignored and set to 0.
    exact: array-like of int | None
        Unnormalized integer coefficients a_f(n) = lambda_f(n) n^{(k-1)/2}
        for n = 0..n_exact, n_exact <= n_max.
    literals: list of (str, str) | None
        Decimal literals (real part, imaginary part) for n = 0..n_max.
    """
    def __init__(self, form, values, exact=None, literals=None, _conjugated=False):
        values = np.array(values, dtype=np.complex128)
        if values.ndim != 1 or len(values) < 2:
            raise ValueError("values expected to be a 1d sequence covering at least n=1")
        values[0] = 0
        values.flags.writeable = False
        if exact is not None:
            exact = np.array(exact, dtype=object)
            if len(exact) > len(values):
                exact = exact[:len(values)]
        if literals is not None and len(literals) != len(values):
            raise ValueError(
                f"got {len(literals)} literals for {len(values)} values")
        self.form = form
        self.values = values
        self.exact = exact
        self.literals = literals
        self._conjugated = _conjugated

    @property
    def n_max(self):
        return len(self.values) - 1

    @property
    def n_exact(self):
        return 0 if self.exact is None else len(self.exact) - 1

    @property
    def cache_key(self):
        return (self.form.label, self.n_max, self._conjugated)

    def __len__(self):
        return self.n_max

    def __getitem__(self, n):
        return self.values[n]

    def __repr__(self):
        return (f"CoefficientTable(form='{self.form.label}', n_max={self.n_max}, "
                f"n_exact={self.n_exact})")

    def with_form(self, form):
        """Same coefficients attached to another descriptor."""
        return CoefficientTable(form, self.values, exact=self.exact,
                                literals=self.literals, _conjugated=self._conjugated)

    def truncate(self, n_max):
        if n_max > self.n_max:
            raise ValueError(
                f"cannot truncate a table of size {self.n_max} to {n_max}")
        exact = None if self.exact is None else self.exact[:n_max + 1]
        literals = None if self.literals is None else self.literals[:n_max + 1]
        return CoefficientTable(self.form, self.values[:n_max + 1], exact=exact,
                                literals=literals, _conjugated=self._conjugated)

    def conjugate(self):
        """Table of the dual form, lambda_{f-bar}(n) = conj(lambda_f(n))."""
        if self.form.self_dual:
            return self
        return CoefficientTable(self.form.conjugate(), np.conj(self.values),
                                exact=self.exact, literals=self.literals,
                                _conjugated=not self._conjugated)

    def mp_values(self, mp, n):
        """lambda_f(0..n) as a list of ``mpc`` at the current precision of ``mp``."""
        if n > self.n_max:
            raise ValueError(
                f"coefficient table too short: need n <= {n}, have {self.n_max}")
        kappa = mp.mpf(self.form.weight - 1) / 2
        out = [mp.mpc(0)]
        for i in range(1, n + 1):
            if i <= self.n_exact:
                value = mp.mpc(mp.mpf(int(self.exact[i])) / mp.power(i, kappa))
            elif self.literals is not None:
                re, im = self.literals[i]
                value = mp.mpc(mp.mpf(re), mp.mpf(im))
            else:
                z = complex(self.values[i])
                value = mp.mpc(z.real, z.imag)
            if self._conjugated:
                value = mp.conj(value)
            out.append(value)
        return out

    def prime_values(self):
        """Dict p -> lambda_f(p) for all primes p <= n_max."""
        primes = np.flatnonzero(prime_sieve(self.n_max))
        return {int(p): complex(self.values[p]) for p in primes}


def validate_table(table, tol=INGEST_TOLERANCE):
    """Check every invariant of a coefficient table.

    Parameters
    ----------
    table: CoefficientTable
        Table to check.
    tol: float
        Absolute tolerance on each relation.

    Raises
    ------
    CoefficientValidationError
        With ``reason`` naming the first violated invariant.
    """
    values = table.values
    n_max = table.n_max
    chi = table.form.character
    if abs(values[1] - 1) > tol:
        raise CoefficientValidationError(
            "normalization", f"lambda(1) = {values[1]}, expected 1")
    n = np.arange(n_max + 1)
    bound = divisor_count(n_max).astype(float) * (1 + tol) + tol
    bad = np.flatnonzero(np.abs(values[1:]) > bound[1:]) + 1
    if len(bad):
        i = int(bad[0])
        raise CoefficientValidationError(
            "Deligne bound", f"|lambda({i})| = {abs(values[i]):.6g} > d({i}) = "
                             f"{int(bound[i] / (1 + tol))}")
    if table.form.self_dual:
        bad = np.flatnonzero(np.abs(values.imag[1:]) > tol) + 1
        if len(bad):
            raise CoefficientValidationError(
                "self-duality", f"lambda({int(bad[0])}) is not real")
    primes = np.flatnonzero(prime_sieve(n_max))
    for p in primes:
        p = int(p)
        chi_p = chi(p)
        if table.form.level % p == 0 and abs(values[p]) > 1 + tol:
            raise CoefficientValidationError(
                "ramified bound", f"|lambda({p})| > 1 for p | q")
        if p * p > n_max:
            continue
        prev2, prev1 = 1 + 0j, values[p]
        pm = p * p
        m = 2
        while pm <= n_max:
            expected = values[p] * prev1 - chi_p * prev2
            if abs(values[pm] - expected) > tol * max(1.0, abs(expected)):
                raise CoefficientValidationError(
                    "Hecke recurrence",
                    f"lambda({p}^{m}) = {values[pm]} but recurrence gives {expected}")
            prev2, prev1 = prev1, values[pm]
            pm *= p
            m += 1
    # multiplicativity on n = p^e * m, gcd(p, m) = 1
    spf = smallest_prime_factors(n_max)
    rest = n.copy()
    ppart = np.ones_like(n)
    p = spf.copy()
    for _ in range(int(np.log2(max(n_max, 2))) + 1):
        mask = (rest > 1) & (rest % np.maximum(p, 1) == 0)
        rest[mask] //= p[mask]
        ppart[mask] *= p[mask]
    composite = np.flatnonzero((ppart > 1) & (rest > 1))
    if len(composite):
        expected = values[ppart[composite]] * values[rest[composite]]
        dev = np.abs(values[composite] - expected)
        bad = np.flatnonzero(dev > tol * np.maximum(1.0, np.abs(expected)))
        if len(bad):
            i = int(composite[bad[0]])
            raise CoefficientValidationError(
                "multiplicativity", f"lambda({i}) != lambda({int(ppart[i])}) * "
                                    f"lambda({int(rest[i])})")
    log.info(f"Validated {n_max} coefficients of {table.form.label}.")