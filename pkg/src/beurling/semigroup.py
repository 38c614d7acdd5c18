"""Arithmetical semigroups over generalized primes.

A prime system is a multiset of generator norms p > 1.  The semigroup it
freely generates has elements g = p1^e1 * ... * pm^em with multiplicative
norm, and the basic counting object is

    N(x) = #{g : |g| <= x},

a right-continuous step function starting at N(1) = 1 for the unit.  This
module enumerates all element norms up to a cutoff (a k-way merge in the
style of generalized Hamming-number generation), computes von Mangoldt mass
per norm, and fits the axiom-A remainder bound |N(x) - kappa*(x-1)| <= A*x^theta.
"""

from __future__ import annotations

import csv
import hashlib
import heapq
import json
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

BUILTIN_KINDS = (
    "explicit-list",
    "rational-primes",
    "gaussian-ideal-norms",
    "single-prime",
    "synthetic",
)

# Relative tolerance for grouping real-valued norms that should coincide.
NORM_GROUP_RTOL = 1e-12

DEFAULT_ELEMENT_BUDGET = 20_000_000


class DescriptorError(ValueError):
    """Malformed prime-system descriptor."""


class BudgetError(RuntimeError):
    """Enumeration exceeded the configured element budget."""

    def __init__(self, count_reached: int, budget: int):
        super().__init__(
            f"element budget exceeded: reached {count_reached} of {budget}"
        )
        self.count_reached = count_reached
        self.budget = budget


def _sieve_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p:: p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def _seeded_uniform(seed: int, n: int) -> float:
    """Deterministic uniform in [0,1) derived from (seed, n) by hashing."""
    h = hashlib.blake2b(f"{seed}:{n}".encode(), digest_size=8).digest()
    return int.from_bytes(h, "big") / 2.0**64


@dataclass(frozen=True)
class PrimeSystem:
    """Generator specification of an arithmetical semigroup."""

    kind: str
    integer_norms: bool
    seed: int | None = None
    params: tuple = ()

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "integer_norms": self.integer_norms,
            "seed": self.seed,
            "params": dict(self.params),
        }

    def prime_copies(self, limit: float) -> list:
        """All generator norms <= limit, one entry per multiplicity copy,
        ascending.  Integer-norm systems return exact ints."""
        p = dict(self.params)
        if self.kind == "explicit-list":
            out = []
            for norm, mult in p["primes"]:
                if norm <= limit:
                    out.extend([norm] * mult)
            return sorted(out)
        if self.kind == "rational-primes":
            return [int(q) for q in _sieve_primes(int(limit))]
        if self.kind == "single-prime":
            q = p["q"]
            return [q] if q <= limit else []
        if self.kind == "gaussian-ideal-norms":
            out = []
            for q in _sieve_primes(int(limit)):
                q = int(q)
                if q == 2:
                    out.append(2)
                elif q % 4 == 1:
                    out.extend([q, q])
                elif q * q <= limit:
                    out.append(q * q)
            return sorted(out)
        if self.kind == "synthetic":
            dens = p.get("target_density", 1.0)
            out = []
            for n in range(2, int(limit) + 1):
                thresh = 1.0 if n == 2 else dens / math.log(n)
                if _seeded_uniform(self.seed or 0, n) < thresh:
                    out.append(n)
            return out
        raise DescriptorError(f"unknown kind {self.kind!r}")


def build_system(descriptor: dict) -> PrimeSystem:
    """Validate a descriptor dict and return the PrimeSystem it denotes.

    Schema: {"kind": <one of BUILTIN_KINDS>, "params": {...}, and optional
    "integer_norms": bool, "seed": int}.  Kind-specific params:
    explicit-list: primes = [[norm, multiplicity], ...];
    single-prime: q; synthetic: target_density (default 1.0).
    """
    if not isinstance(descriptor, dict):
        raise DescriptorError("descriptor must be a mapping")
    kind = descriptor.get("kind")
    if kind not in BUILTIN_KINDS:
        raise DescriptorError(f"unknown system kind {kind!r}")
    params = dict(descriptor.get("params", {}))
    seed = descriptor.get("seed")

    if kind == "explicit-list":
        primes = params.get("primes")
        if not primes:
            primes = []
        norm_list = []
        for entry in primes:
            try:
                norm, mult = entry
            except (TypeError, ValueError):
                raise DescriptorError(f"bad prime entry {entry!r}") from None
            if not norm > 1:
                raise DescriptorError(f"prime norm must exceed 1, got {norm!r}")
            if not (isinstance(mult, int) and mult >= 1):
                raise DescriptorError(f"multiplicity must be a positive int, got {mult!r}")
            norm_list.append((norm, int(mult)))
        norm_list.sort()
        all_integral = all(float(n).is_integer() for n, _ in norm_list)
        integer_norms = descriptor.get("integer_norms", all_integral)
        if integer_norms and not all_integral:
            raise DescriptorError("integer_norms requested but a norm is not integral")
        if integer_norms:
            norm_list = [(int(n), m) for n, m in norm_list]
        params["primes"] = tuple(norm_list)
    elif kind == "single-prime":
        q = params.get("q")
        if q is None or not q > 1:
            raise DescriptorError("single-prime requires q > 1")
        integral = float(q).is_integer()
        integer_norms = descriptor.get("integer_norms", integral)
        if integer_norms and not integral:
            raise DescriptorError("integer_norms requested but q is not integral")
        params["q"] = int(q) if integer_norms else float(q)
    elif kind == "synthetic":
        if seed is None:
            raise DescriptorError("synthetic systems require a seed")
        dens = float(params.get("target_density", 1.0))
        if dens <= 0:
            raise DescriptorError("target_density must be positive")
        params["target_density"] = dens
        integer_norms = descriptor.get("integer_norms", True)
        if not integer_norms:
            raise DescriptorError("synthetic systems place primes at integer norms")
    else:
        integer_norms = descriptor.get("integer_norms", True)
        if not integer_norms:
            raise DescriptorError(f"{kind} has integer norms by construction")

    return PrimeSystem(
        kind=kind,
        integer_norms=bool(integer_norms),
        seed=seed,
        params=tuple(sorted(params.items())),
    )


def load_system(path) -> PrimeSystem:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            descriptor = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"config is not valid JSON: {exc}") from exc
    return build_system(descriptor)


# ---------------------------------------------------------------------------
# Element enumeration
# ---------------------------------------------------------------------------

def iter_elements(
    system: PrimeSystem,
    cutoff: float,
    with_factorization: bool = False,
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> Iterator[tuple]:
    """Walk every semigroup element of norm <= cutoff in nondecreasing norm
    order via a priority-queue merge over the streams g * p_i.

    Yields (norm, divisor_count, mobius) tuples, or with factorization
    (norm, divisor_count, mobius, ((copy_index, exponent), ...)).  Each
    element appears exactly once: children only multiply by generator copies
    with index >= the element's top copy index.

    The unit (norm 1, d=1, mu=1) is yielded first.
    """
    copies = system.prime_copies(cutoff)
    if with_factorization:
        yield (1, 1, 1, ())
    else:
        yield (1, 1, 1)
    if not copies:
        return
    # heap entries: (norm, copy_idx, top_exp, d, mu[, factorization])
    heap: list = []
    for i, p in enumerate(copies):
        if with_factorization:
            heap.append((p, i, 1, 2, -1, ((i, 1),)))
        else:
            heap.append((p, i, 1, 2, -1))
    heapq.heapify(heap)
    produced = 1
    ncopies = len(copies)
    while heap:
        entry = heapq.heappop(heap)
        norm, idx, e_top, d, mu = entry[:5]
        produced += 1
        if produced > budget:
            raise BudgetError(produced - 1, budget)
        if with_factorization:
            yield (norm, d, mu, entry[5])
        else:
            yield (norm, d, mu)
        # child along the same top copy: exponent e_top + 1
        child = norm * copies[idx]
        if child <= cutoff:
            nd = d // (e_top + 1) * (e_top + 2)
            if with_factorization:
                fact = entry[5][:-1] + ((idx, e_top + 1),)
                heapq.heappush(heap, (child, idx, e_top + 1, nd, 0, fact))
            else:
                heapq.heappush(heap, (child, idx, e_top + 1, nd, 0))
        # children introducing a strictly larger copy index
        for j in range(idx + 1, ncopies):
            child = norm * copies[j]
            if child > cutoff:
                break
            if with_factorization:
                fact = entry[5] + ((j, 1),)
                heapq.heappush(heap, (child, j, 1, d * 2, -mu if mu else 0, fact))
            else:
                heapq.heappush(heap, (child, j, 1, d * 2, -mu if mu else 0))


@dataclass
class ElementTable:
    """Aggregated norms of all semigroup elements up to a cutoff.

    norms are strictly increasing with norms[0] == 1; counts[i] is the number
    of elements of that norm; lambda_mass[i] is the total von Mangoldt weight
    sum over prime powers p^k of that norm of log p (zero off prime powers).
    """

    cutoff: float
    norms: np.ndarray
    counts: np.ndarray
    lambda_mass: np.ndarray
    system: PrimeSystem
    integer_norms: bool = True
    _cum_counts: np.ndarray = field(default=None, repr=False)
    _logs: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.norms = np.asarray(self.norms, dtype=np.float64)
        self.counts = np.asarray(self.counts, dtype=np.int64)
        self.lambda_mass = np.asarray(self.lambda_mass, dtype=np.float64)
        if self.norms[0] != 1.0 or self.counts[0] != 1 or self.lambda_mass[0] != 0.0:
            raise ValueError("table must start with the unit entry (1, 1, 0)")
        if np.any(np.diff(self.norms) <= 0):
            raise ValueError("norms must be strictly increasing")
        if self.norms[-1] > self.cutoff:
            raise ValueError("norm beyond cutoff")
        self._cum_counts = np.cumsum(self.counts)
        self._logs = np.log(self.norms)

    def __len__(self) -> int:
        return len(self.norms)

    @property
    def total(self) -> int:
        """N(cutoff)."""
        return int(self._cum_counts[-1])

    @property
    def logs(self) -> np.ndarray:
        return self._logs

    def count_upto(self, x: float) -> int:
        """N(x): number of elements with norm <= x (right-continuous)."""
        if x < 0 or x > self.cutoff:
            raise ValueError(f"x={x} outside [0, cutoff={self.cutoff}]")
        i = np.searchsorted(self.norms, x, side="right")
        return int(self._cum_counts[i - 1]) if i else 0

    def remainder(self, kappa: float, x: float) -> float:
        """N(x) - kappa*(x - 1) for 1 <= x <= cutoff."""
        if x < 1:
            raise ValueError("remainder is defined for x >= 1")
        return self.count_upto(x) - kappa * (x - 1.0)

    def fingerprint(self) -> str:
        h = hashlib.blake2b(digest_size=16)
        for row in self._csv_rows():
            h.update(",".join(row).encode())
            h.update(b"\n")
        return h.hexdigest()

    def _format_norm(self, nu: float) -> str:
        return str(int(nu)) if self.integer_norms else repr(float(nu))

    def _csv_rows(self) -> Iterator[list[str]]:
        for nu, c, lam in zip(self.norms, self.counts, self.lambda_mass):
            yield [self._format_norm(nu), str(int(c)), repr(float(lam))]

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["norm", "count", "lambda_mass"])
            for row in self._csv_rows():
                w.writerow(row)

    @classmethod
    def from_csv(cls, path, system: PrimeSystem, cutoff: float) -> "ElementTable":
        norms, counts, lams = [], [], []
        with open(path, "r", encoding="utf-8") as fh:
            r = csv.reader(fh)
            header = next(r)
            if header != ["norm", "count", "lambda_mass"]:
                raise ValueError(f"unexpected table header {header!r}")
            for row in r:
                norms.append(float(row[0]))
                counts.append(int(row[1]))
                lams.append(float(row[2]))
        return cls(
            cutoff=cutoff,
            norms=np.array(norms),
            counts=np.array(counts),
            lambda_mass=np.array(lams),
            system=system,
            integer_norms=system.integer_norms,
        )


def enumerate_elements(
    system: PrimeSystem,
    cutoff: float,
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> ElementTable:
    """Build the ElementTable for all norms <= cutoff.

    Counts are exact; equal real norms are grouped at relative tolerance
    NORM_GROUP_RTOL (exact equality for integer-norm systems).
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    norms: list = []
    counts: list = []
    exact = system.integer_norms
    for elem in iter_elements(system, cutoff, budget=budget):
        nu = elem[0]
        if norms and (
            nu == norms[-1]
            if exact
            else nu <= norms[-1] * (1.0 + NORM_GROUP_RTOL)
        ):
            counts[-1] += 1
        else:
            norms.append(nu)
            counts.append(1)

    lam = [0.0] * len(norms)
    index = {nu: i for i, nu in enumerate(norms)}
    for p in system.prime_copies(cutoff):
        logp = math.log(p)
        power = p
        while power <= cutoff:
            if exact:
                lam[index[power]] += logp
            else:
                i = _locate(norms, power)
                lam[i] += logp
            power *= p

    return ElementTable(
        cutoff=float(cutoff),
        norms=np.array([float(n) for n in norms]),
        counts=np.array(counts),
        lambda_mass=np.array(lam),
        system=system,
        integer_norms=exact,
    )


def _locate(sorted_norms: list, value: float) -> int:
    import bisect

    i = bisect.bisect_left(sorted_norms, value * (1.0 - NORM_GROUP_RTOL))
    if i == len(sorted_norms) or abs(sorted_norms[i] - value) > value * 10 * NORM_GROUP_RTOL:
        raise ValueError(f"norm {value} not present in table")
    return i


# ---------------------------------------------------------------------------
# Axiom-A fitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomAParams:
    """Parameters of the density law N(x) = kappa*(x-1) + O(A x^theta)."""

    kappa: float
    theta: float
    A: float
    sup_location: float
    scan_cutoff: float

    def describe(self) -> dict:
        return {
            "kappa": self.kappa,
            "theta": self.theta,
            "A": self.A,
            "sup_location": self.sup_location,
            "scan_cutoff": self.scan_cutoff,
        }


BUILTIN_KAPPA = {
    "rational-primes": 1.0,
    "gaussian-ideal-norms": math.pi / 4.0,
}


def fit_axiom_a(
    table: ElementTable,
    theta: float,
    kappa: float | None = None,
) -> AxiomAParams:
    """Scan A = sup |N(x) - kappa*(x-1)| * x^(-theta) over [1, cutoff].

    Between jumps the remainder falls linearly with slope -kappa, and the
    scanned ratio is monotone on each gap, so jump values together with left
    limits at the next jump (and at the cutoff) realize the exact supremum.
    If kappa is omitted it is the zero-intercept least-squares slope of N(x)
    against (x - 1) over the top decade of the table.
    """
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    nu = table.norms
    cum = np.cumsum(table.counts).astype(np.float64)
    if kappa is None:
        lo = table.cutoff / 10.0
        mask = nu >= lo
        if mask.sum() < 2:
            mask = np.ones(len(nu), dtype=bool)
        xs = nu[mask] - 1.0
        ys = cum[mask]
        kappa = float(np.dot(ys, xs) / np.dot(xs, xs))
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")

    weight = nu**(-theta)
    at_jump = np.abs(cum - kappa * (nu - 1.0)) * weight
    # left limits: N just before nu[i] is cum[i-1]; before the first jump at 1
    # the remainder is 0 by convention.
    left_cum = np.concatenate(([0.0], cum[:-1]))
    at_left = np.abs(left_cum - kappa * (nu - 1.0)) * weight
    # left limit at the cutoff itself (N constant past the last jump)
    end_ratio = abs(cum[-1] - kappa * (table.cutoff - 1.0)) * table.cutoff**(-theta)

    i_jump = int(np.argmax(at_jump))
    i_left = int(np.argmax(at_left))
    best = [
        (float(at_jump[i_jump]), float(nu[i_jump])),
        (float(at_left[i_left]), float(nu[i_left])),
        (float(end_ratio), float(table.cutoff)),
    ]
    best.sort(reverse=True)
    A, where = best[0]
    return AxiomAParams(
        kappa=float(kappa),
        theta=float(theta),
        A=A,
        sup_location=where,
        scan_cutoff=float(table.cutoff),
    )


def theta_sweep(table: ElementTable, thetas, kappa: float | None = None):
    """Diagnostic: fitted A for each theta in a grid (callers pick theta)."""
    return [(float(th), fit_axiom_a(table, th, kappa)) for th in thetas]


# ---------------------------------------------------------------------------
# Arithmetic functions aggregated per norm
# ---------------------------------------------------------------------------

@dataclass
class ArithmeticTables:
    """Per-norm aggregates of element-level arithmetic functions."""

    norms: np.ndarray
    counts: np.ndarray          # G(nu)
    mobius_sum: np.ndarray      # sum of mu(g) over |g| = nu
    divisor_power_sums: dict    # k -> array of sum d(g)^k over |g| = nu
    moment_ratios: dict         # p -> (element-route F_p(X), norm-route F_p(X))

    def condition_b(self) -> bool:
        return bool(np.all(self.norms == np.round(self.norms)))


def arithmetic_function_sums(
    table: ElementTable,
    d_powers: tuple = (1,),
    moment_exponents: tuple = (),
) -> ArithmeticTables:
    """Aggregate mu, divisor-count powers and G-moments by norm.

    Values are computed per element during a fresh enumeration walk (d and mu
    propagate along the merge), then reduced to per-norm tables.  For each
    requested moment exponent p the average F_p(X) = (1/X) * sum_{|g|<=X}
    G(|g|)^p is computed on the element route and on the equivalent norm
    route (1/X) * sum_nu G(nu)^(1+p); the two must agree identically.
    """
    for k in d_powers:
        if k <= 0:
            raise ValueError("divisor powers must be positive")
    for p in moment_exponents:
        if p <= 0:
            raise ValueError("moment exponents must be positive")
    nu_arr = table.norms
    n = len(nu_arr)
    mob = np.zeros(n, dtype=np.int64)
    dpow = {k: np.zeros(n, dtype=np.float64) for k in d_powers}
    counts = np.zeros(n, dtype=np.int64)
    exact = table.integer_norms
    index = {float(v): i for i, v in enumerate(nu_arr)}
    norms_list = [float(v) for v in nu_arr]
    for norm, d, mu in iter_elements(table.system, table.cutoff):
        if exact:
            i = index[float(norm)]
        else:
            i = _locate(norms_list, float(norm))
        counts[i] += 1
        mob[i] += mu
        for k in d_powers:
            dpow[k][i] += float(d) ** k
    if not np.array_equal(counts, table.counts):
        raise RuntimeError("enumeration mismatch between walk and table")

    moments = {}
    X = table.cutoff
    gcount = table.counts.astype(np.float64)
    for p in moment_exponents:
        element_route = float(np.sum(gcount * gcount**p)) / X
        norm_route = float(np.sum(gcount ** (1.0 + p))) / X
        moments[float(p)] = (element_route, norm_route)

    return ArithmeticTables(
        norms=nu_arr.copy(),
        counts=counts,
        mobius_sum=mob,
        divisor_power_sums=dpow,
        moment_ratios=moments,
    )
