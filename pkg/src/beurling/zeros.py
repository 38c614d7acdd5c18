"""Zero counting and location in the critical strip via the argument principle.

Rectangles have their right edge at sigma = 2, where the reciprocal bound
|zeta| >= 1/zeta(2) certifies nonvanishing; when a rectangle encloses the
pole at s = 1 the winding total is the zero count minus one, and the count
is corrected accordingly.  Boundary phase tracking accumulates increments
with adaptive step halving whenever a step turns by more than pi/2.  Located
zeros are refined by Newton iteration (multiplicity-aware step m*f/f') on the
smoothed evaluator at full table precision.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .zeta import EvalContext, SmoothedEvaluator

TWO_PI = 2.0 * math.pi

# Default effective cutoff for coarse winding passes; subdivision does not
# need full-table accuracy, only Newton refinement does.
COARSE_CUTOFF = 3.0e4

# Factor between the evaluator's working tolerance and the smallest |zeta|
# accepted on a certified boundary.
BOUNDARY_SAFETY = 10.0


class BoundaryError(RuntimeError):
    """A zero sits on or near the rectangle boundary at working precision;
    the caller must perturb the rectangle."""


class IncompleteDatabaseError(RuntimeError):
    """The zero database does not certifiably cover the requested region."""


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle [b, right] x [t_low, t_high] in the s-plane."""

    b: float
    t_low: float
    t_high: float
    right: float = 2.0

    def __post_init__(self):
        if not self.t_low < self.t_high:
            raise ValueError("t_low must be below t_high")
        if not self.b < self.right:
            raise ValueError("left edge must be left of right edge")

    @property
    def width(self) -> float:
        return self.right - self.b

    @property
    def height(self) -> float:
        return self.t_high - self.t_low

    def contains_pole(self) -> bool:
        return self.b < 1.0 < self.right and self.t_low < 0.0 < self.t_high

    def split4(self, fx: float = 0.5, fy: float = 0.5) -> list["Rectangle"]:
        xm = self.b + fx * self.width
        ym = self.t_low + fy * self.height
        return [
            Rectangle(self.b, self.t_low, ym, xm),
            Rectangle(xm, self.t_low, ym, self.right),
            Rectangle(self.b, ym, self.t_high, xm),
            Rectangle(xm, ym, self.t_high, self.right),
        ]


@dataclass
class ZeroRecord:
    beta: float
    gamma: float
    multiplicity: int
    residual: float
    method: str  # "refinement" or "subdivision"

    @property
    def rho(self) -> complex:
        return complex(self.beta, self.gamma)


@dataclass(frozen=True)
class SweepCertificate:
    b: float
    t_low: float
    t_high: float
    winding: int  # zero count in the band (pole contribution removed)
    found: int    # sum of located multiplicities


@dataclass
class BoundaryReport:
    samples: int = 0
    refinements: int = 0
    min_abs: float = math.inf
    floor: float = 0.0
    pole_adjusted: bool = False
    perturbed: tuple = ()


# ---------------------------------------------------------------------------
# Argument-principle machinery
# ---------------------------------------------------------------------------

def _phase_total(values: np.ndarray) -> tuple[float, list[int]]:
    """Sum of phase increments; returns (total, indices of oversized steps)."""
    ratios = values[1:] / values[:-1]
    dphi = np.angle(ratios)
    bad = np.nonzero(np.abs(dphi) > 0.5 * math.pi)[0]
    return float(np.sum(dphi[np.abs(dphi) <= 0.5 * math.pi])), list(bad)


def _refine_phase(ev, s_a: complex, s_b: complex, z_a: complex, z_b: complex,
                  floor: float, report: BoundaryReport, depth: int) -> float:
    """Phase increment from s_a to s_b with recursive bisection."""
    dphi = np.angle(z_b / z_a)
    if abs(dphi) <= 0.5 * math.pi:
        return float(dphi)
    if depth <= 0:
        raise BoundaryError(
            f"phase step {dphi:+.3f} rad at {s_a}..{s_b} did not settle; "
            "a zero lies on or near the boundary"
        )
    sm = 0.5 * (s_a + s_b)
    zm = ev.value(sm)
    report.samples += 1
    report.refinements += 1
    report.min_abs = min(report.min_abs, abs(zm))
    if abs(zm) <= floor:
        raise BoundaryError(f"|zeta({sm})| = {abs(zm):.3e} below floor {floor:.3e}")
    return _refine_phase(ev, s_a, sm, z_a, zm, floor, report, depth - 1) + _refine_phase(
        ev, sm, s_b, zm, z_b, floor, report, depth - 1
    )


def _edge_values(ev: SmoothedEvaluator, s_a: complex, s_b: complex, n: int) -> np.ndarray:
    if s_a.real == s_b.real:  # vertical edge
        dt = (s_b.imag - s_a.imag) / n
        return ev.t_grid(s_a.real, s_a.imag, dt, n + 1)
    if s_a.imag == s_b.imag:  # horizontal edge
        ds = (s_b.real - s_a.real) / n
        return ev.sigma_grid(s_a.imag, s_a.real, ds, n + 1)
    raise ValueError("edges must be axis-aligned")


def winding_count(
    ev: SmoothedEvaluator,
    rect: Rectangle,
    min_samples: int = 32,
    samples_per_unit: float = 16.0,
    max_depth: int = 48,
) -> tuple[int, BoundaryReport]:
    """Number of zeros (with multiplicity) enclosed by rect.

    Counterclockwise phase tracking of the smoothed zeta along the boundary;
    every sample must stay above the certification floor derived from the
    evaluator's working tolerance.  The accumulated total must land within
    0.25 of an integer multiple of 2*pi, else the sampling is halved and the
    boundary rewalked.  If the rectangle encloses the pole at s = 1 the
    winding is corrected by +1.
    """
    report = BoundaryReport()
    report.floor = BOUNDARY_SAFETY * ev.working_tolerance(rect.b)
    corners = [
        complex(rect.b, rect.t_low),
        complex(rect.right, rect.t_low),
        complex(rect.right, rect.t_high),
        complex(rect.b, rect.t_high),
        complex(rect.b, rect.t_low),
    ]
    scale = 1
    for _attempt in range(4):
        try:
            total = 0.0
            for s_a, s_b in zip(corners[:-1], corners[1:]):
                length = abs(s_b - s_a)
                n = max(min_samples, int(math.ceil(samples_per_unit * scale * length)))
                vals = _edge_values(ev, s_a, s_b, n)
                report.samples += n + 1
                amin = float(np.min(np.abs(vals)))
                report.min_abs = min(report.min_abs, amin)
                if amin <= report.floor:
                    raise BoundaryError(
                        f"boundary |zeta| minimum {amin:.3e} below floor "
                        f"{report.floor:.3e} on {s_a}..{s_b}"
                    )
                good, bad = _phase_total(vals)
                total += good
                for i in bad:
                    sa = s_a + (s_b - s_a) * (i / n)
                    sb = s_a + (s_b - s_a) * ((i + 1) / n)
                    total += _refine_phase(
                        ev, sa, sb, vals[i], vals[i + 1], report.floor, report, max_depth
                    )
            w = total / TWO_PI
            if abs(w - round(w)) <= 0.25:
                count = int(round(w))
                if rect.contains_pole():
                    count += 1
                    report.pole_adjusted = True
                return count, report
        except BoundaryError:
            raise
        scale *= 2
    raise BoundaryError(f"winding total did not settle on an integer for {rect}")


# Deterministic perturbation offsets used when a zero blocks a boundary.
_PERTURB = (7.1e-4, -5.3e-4, 9.7e-4, -8.9e-4, 3.1e-4, -2.3e-4)


def _winding_perturbed(ev, rect: Rectangle, **kw) -> tuple[int, BoundaryReport, Rectangle]:
    """winding_count with the documented nudge policy on boundary failures."""
    try:
        c, rep = winding_count(ev, rect, **kw)
        return c, rep, rect
    except BoundaryError:
        pass
    for k, d in enumerate(_PERTURB):
        moved = Rectangle(rect.b + d, rect.t_low - d, rect.t_high + d, rect.right)
        try:
            c, rep = winding_count(ev, moved, **kw)
            rep.perturbed = (k, d)
            return c, rep, moved
        except BoundaryError:
            continue
    raise BoundaryError(f"could not certify any perturbation of {rect}")


# ---------------------------------------------------------------------------
# Zero location
# ---------------------------------------------------------------------------

NEWTON_SEED_SIZE = 0.4
MAX_NEWTON_ITER = 60


def _newton(fine: SmoothedEvaluator, z0: complex, mult: int, tol: float, box):
    """Multiplicity-aware Newton iteration confined to box = (sig_lo, sig_hi,
    t_lo, t_hi); escaping the box counts as failure (caller subdivides)."""
    z = complex(z0)
    sig_lo, sig_hi, t_lo, t_hi = box
    for _ in range(MAX_NEWTON_ITER):
        f = fine.value(z)
        if abs(f) == 0.0:
            return z, 0.0, True
        fp = fine.deriv(z)
        if fp == 0:
            return z, abs(f), False
        step = mult * f / fp
        z -= step
        if not (sig_lo <= z.real <= sig_hi and t_lo <= z.imag <= t_hi):
            return z, abs(f), False
        if abs(step) < 1e-12 * max(1.0, abs(z)):
            break
    res = abs(fine.value(z))
    return z, res, res <= tol


def _deflated_newton(fine: SmoothedEvaluator, z0: complex, poles, tol: float, box):
    """Newton on f with the already-located zeros divided out: the step uses
    f/(f' - f * sum m_k/(z - z_k)), whose fixed points are exactly the
    remaining zeros.  A run that returns to a listed zero signals genuine
    extra multiplicity there."""
    z = complex(z0)
    sig_lo, sig_hi, t_lo, t_hi = box
    for _ in range(MAX_NEWTON_ITER):
        f = fine.value(z)
        if abs(f) == 0.0:
            return z, 0.0, True
        fp = fine.deriv(z)
        corr = sum(m / (z - zk) for zk, m, _ in poles if z != zk)
        den = fp - f * corr
        if den == 0:
            return z, abs(f), False
        step = f / den
        z -= step
        if not (sig_lo <= z.real <= sig_hi and t_lo <= z.imag <= t_hi):
            return z, abs(f), False
        if abs(step) < 1e-12 * max(1.0, abs(z)):
            break
    res = abs(fine.value(z))
    return z, res, res <= tol


def _resolve_cell(fine: SmoothedEvaluator, cell: Rectangle, w: int, tol: float):
    """Locate the w zeros of a Newton-seed-sized cell.

    Single-winding cells refine from the center.  Multi-winding cells locate
    zeros one at a time by deflation: close pairs cannot be separated by
    further subdivision (any split line would dip below the certification
    floor), and a plain m-fold Newton step can stall on one member of a pair
    while reporting inflated multiplicity.  A deflated run converging back
    onto a listed zero raises that zero's multiplicity instead.  Returns a
    record list, or None when the cell stays unresolved.
    """
    pad = 0.5 * NEWTON_SEED_SIZE
    box = (cell.b - pad, cell.right + pad, cell.t_low - pad, cell.t_high + pad)
    center = complex(cell.b + 0.5 * cell.width, cell.t_low + 0.5 * cell.height)
    if w == 1:
        z, res, ok = _newton(fine, center, 1, tol, box)
        if ok and _inside(z, cell, 1e-6):
            return [ZeroRecord(z.real, z.imag, 1, res, "refinement")]
        return None
    seeds = [center]
    for dx, dy in ((1, 1), (-1, 1), (1, -1), (-1, -1), (1, 0), (-1, 0), (0, 1), (0, -1)):
        seeds.append(
            complex(center.real + 0.3 * dx * cell.width, center.imag + 0.3 * dy * cell.height)
        )
    same_zero = 100.0 * max(tol, 1e-12)
    found: list[list] = []  # [location, multiplicity, residual]
    while sum(m for _, m, _ in found) < w:
        progress = False
        for z0 in seeds:
            z, res, ok = _deflated_newton(fine, z0, found, tol, box)
            if not ok or not _inside(z, cell, 1e-6):
                continue
            for item in found:
                if abs(z - item[0]) <= same_zero:
                    item[1] += 1
                    item[2] = max(item[2], res)
                    break
            else:
                found.append([z, 1, res])
            progress = True
            break
        if not progress:
            return None
    if sum(m for _, m, _ in found) != w:
        return None
    return [ZeroRecord(z.real, z.imag, m, res, "refinement") for z, m, res in found]


def _inside(z: complex, cell: Rectangle, pad: float) -> bool:
    return (
        cell.b - pad <= z.real <= cell.right + pad
        and cell.t_low - pad <= z.imag <= cell.t_high + pad
    )


def find_zeros(
    coarse: SmoothedEvaluator,
    fine: SmoothedEvaluator,
    rect: Rectangle,
    tol: float = 1e-8,
) -> list[ZeroRecord]:
    """Locate all zeros inside rect.

    Recursive quadtree subdivision (winding on the coarse evaluator) down to
    cells holding a single winding unit or the Newton seed size, then
    multiplicity-aware Newton refinement on the fine evaluator.  Clusters
    coinciding within 10*tol merge into one record.  Raises BoundaryError if
    some boundary cannot be certified even after perturbation, and
    RuntimeError if a Newton run fails to reach tol (unresolved cell).
    """
    total, _, rect0 = _winding_perturbed(coarse, rect)
    records: list[ZeroRecord] = []
    stack = [(rect0, total)]
    while stack:
        cell, w = stack.pop()
        if w == 0:
            continue
        if max(cell.width, cell.height) <= NEWTON_SEED_SIZE:
            recs = _resolve_cell(fine, cell, w, tol)
            if recs is not None:
                records.extend(recs)
                continue
            if max(cell.width, cell.height) <= 50.0 * tol:
                raise RuntimeError(
                    f"unresolved cell {cell} with winding {w} at tolerance {tol:.1e}"
                )
            # fall through to subdivision with a tighter cell
        # split; verify winding additivity, trying jittered split lines when
        # a zero sits on a midline
        done = False
        for fx, fy in ((0.5, 0.5), (0.53, 0.47), (0.47, 0.55), (0.56, 0.44)):
            try:
                parts = []
                for sub in cell.split4(fx, fy):
                    c, _rep, moved = _winding_perturbed(coarse, sub)
                    parts.append((c, moved))
                if sum(c for c, _ in parts) != w:
                    continue  # a zero escaped through a perturbed edge; rejitter
                for c, moved in parts:
                    if c:
                        stack.append((moved, c))
                done = True
                break
            except BoundaryError:
                continue
        if not done:
            raise BoundaryError(f"could not subdivide cell {cell} with winding {w}")

    # merge Newton clusters that coincide within 10*tol
    merged: list[ZeroRecord] = []
    for rec in sorted(records, key=lambda r: (r.gamma, r.beta)):
        for m in merged:
            if abs(rec.rho - m.rho) <= 10.0 * max(tol, rec.residual + m.residual):
                m.multiplicity += rec.multiplicity
                m.residual = max(m.residual, rec.residual)
                break
        else:
            merged.append(rec)
    return merged


# ---------------------------------------------------------------------------
# Zero database
# ---------------------------------------------------------------------------

@dataclass
class ZeroDatabase:
    """Located zeros with per-band completeness certificates.

    Records are stored for gamma >= 0 only; the conjugate of every record
    with gamma > 0 is implied.  Within each certified band the sum of located
    multiplicities (counting both halves of symmetric bands) equals the
    winding count exactly.
    """

    fingerprint: str
    b: float
    records: list[ZeroRecord] = field(default_factory=list)
    certificates: list[SweepCertificate] = field(default_factory=list)

    @property
    def t_max(self) -> float:
        return max((c.t_high for c in self.certificates), default=0.0)

    def covers(self, b: float, t_low: float, t_high: float) -> bool:
        """True when certified bands tile [t_low, t_high] at left edge <= b."""
        if b < self.b:
            return False
        bands = sorted((c.t_low, c.t_high) for c in self.certificates)
        reach = t_low
        for lo, hi in bands:
            if lo > reach + 1e-9:
                break
            reach = max(reach, hi)
            if reach >= t_high - 1e-9:
                return True
        return reach >= t_high - 1e-9

    def require_cover(self, b: float, t_low: float, t_high: float) -> None:
        if not self.covers(b, t_low, t_high):
            raise IncompleteDatabaseError(
                f"database (b={self.b}, t<={self.t_max}) does not cover "
                f"[{b},1]x[{t_low},{t_high}]"
            )

    def count_two_sided(self, b: float, t: float) -> int:
        """Zeros with beta >= b and |gamma| <= t, conjugates included."""
        self.require_cover(b, 0.0, t)
        n = 0
        for r in self.records:
            if r.beta >= b and r.gamma <= t:
                n += r.multiplicity * (1 if r.gamma == 0.0 else 2)
        return n

    def count_window(self, b: float, t_low: float, t_high: float) -> int:
        """Zeros with beta >= b and gamma in (t_low, t_high]."""
        self.require_cover(b, max(t_low, 0.0), t_high)
        return sum(
            r.multiplicity
            for r in self.records
            if r.beta >= b and t_low < r.gamma <= t_high
        )

    def in_disk(self, center: complex, radius: float) -> list[ZeroRecord]:
        out = []
        for r in self.records:
            if abs(r.rho - center) <= radius:
                out.append(r)
        return out

    # persistence ----------------------------------------------------------

    def save(self, zeros_path, certs_path) -> None:
        with open(zeros_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# table={self.fingerprint}\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["beta", "gamma", "multiplicity", "residual", "method"])
            for r in sorted(self.records, key=lambda r: (r.gamma, r.beta)):
                w.writerow([repr(r.beta), repr(r.gamma), r.multiplicity,
                            repr(r.residual), r.method])
        with open(certs_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# table={self.fingerprint}\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["b", "t_low", "t_high", "winding", "found"])
            for c in sorted(self.certificates, key=lambda c: c.t_low):
                w.writerow([repr(c.b), repr(c.t_low), repr(c.t_high), c.winding, c.found])

    @classmethod
    def load(cls, zeros_path, certs_path) -> "ZeroDatabase":
        def read(path):
            with open(path, "r", encoding="utf-8") as fh:
                fp = fh.readline().strip()
                if not fp.startswith("# table="):
                    raise ValueError(f"{path}: missing table fingerprint header")
                rows = list(csv.reader(fh))
            return fp.removeprefix("# table="), rows[1:]

        fp1, zrows = read(zeros_path)
        fp2, crows = read(certs_path)
        if fp1 != fp2:
            raise ValueError("zero table and certificates fingerprints disagree")
        records = [
            ZeroRecord(float(b), float(g), int(m), float(res), meth)
            for b, g, m, res, meth in zrows
        ]
        certs = [
            SweepCertificate(float(b), float(lo), float(hi), int(w), int(f))
            for b, lo, hi, w, f in crows
        ]
        db = cls(fingerprint=fp1, b=min((c.b for c in certs), default=0.0))
        db.records = records
        db.certificates = certs
        return db


def sweep_zeros(
    ctx: EvalContext,
    b: float,
    t_max: float,
    tol: float = 1e-8,
    band_height: float = 4.0,
    coarse_cutoff: float = COARSE_CUTOFF,
    workers: int = 1,
) -> ZeroDatabase:
    """Build a certified-complete zero database on [b, 2] x [-t_max, t_max].

    The first band is symmetric about the real axis (its winding is corrected
    for the enclosed pole); zeros are stored for gamma >= 0 with conjugates
    implied.  Band edges are nudged by the documented perturbation offsets
    when a zero obstructs certification.  Bands are disjoint, so with
    workers > 1 they are swept by a thread pool (the compiled kernels release
    the GIL); results merge in band order, keeping output deterministic.
    """
    if b <= ctx.theta:
        raise ValueError(f"left edge {b} must exceed theta = {ctx.theta}")
    coarse = SmoothedEvaluator(ctx, x_eff=coarse_cutoff)
    fine = SmoothedEvaluator(ctx)
    db = ZeroDatabase(fingerprint=ctx.table.fingerprint(), b=b)

    h0 = min(band_height, t_max)
    rect = Rectangle(b, -h0, h0)
    recs = find_zeros(coarse, fine, rect, tol)
    found = sum(r.multiplicity for r in recs)
    kept: list[ZeroRecord] = []
    for r in recs:
        if r.gamma < -10.0 * tol:
            continue  # conjugate of a record in the upper half
        if abs(r.gamma) <= 10.0 * tol:
            r.gamma = 0.0
        kept.append(r)
    upper = sum(r.multiplicity for r in kept if r.gamma > 0.0)
    axis = sum(r.multiplicity for r in kept if r.gamma == 0.0)
    if 2 * upper + axis != found:
        raise RuntimeError("conjugate pairing mismatch in the symmetric band")
    db.records.extend(kept)
    # certificate for the upper half [0, h0] of the symmetric band
    db.certificates.append(SweepCertificate(b, 0.0, h0, upper + axis, upper + axis))

    bands = []
    lo = h0
    while lo < t_max:
        hi = min(lo + band_height, t_max)
        bands.append((lo, hi))
        lo = hi

    def sweep_band(band):
        lo, hi = band
        return find_zeros(coarse, fine, Rectangle(b, lo, hi), tol)

    if workers > 1 and len(bands) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(sweep_band, bands))
    else:
        results = [sweep_band(band) for band in bands]

    for (lo, hi), recs in zip(bands, results):
        found = sum(r.multiplicity for r in recs)
        db.records.extend(recs)
        db.certificates.append(SweepCertificate(b, lo, hi, found, found))
    db.records.sort(key=lambda r: (r.gamma, r.beta))
    return db


# ---------------------------------------------------------------------------
# Counting-lemma checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CountingCase:
    lemma: str   # "window-h", "strip", "unit-band"
    b: float
    t: float


@dataclass(frozen=True)
class CountingCheck:
    lemma: str
    b: float
    t: float
    actual: int
    bound: float

    @property
    def slack(self) -> float:
        return self.bound - self.actual

    @property
    def passed(self) -> bool:
        return self.slack > 0.0


def counting_window_height(b: float, theta: float) -> float:
    """Height parameter of the short-window zero count: sqrt(7)/3 *
    sqrt((b-theta)(1-theta))."""
    return math.sqrt(7.0) / 3.0 * math.sqrt((b - theta) * (1.0 - theta))


def check_counting_lemmas(
    params,
    db: ZeroDatabase,
    cases: list[CountingCase],
) -> list[CountingCheck]:
    """Compare actual zero counts against the closed-form counting bounds.

    window-h: zeros in [b,1] x [T-h, T+h], h as above, valid |T| >= 5.222;
    strip: N(b, T), both signs of gamma, valid T >= 5;
    unit-band: zeros with gamma in (T-1, T+1], valid T >= 6.
    A case whose actual count exceeds its bound indicates a bug (these are
    theorems); callers treat nonpositive slack as a hard error.
    """
    theta, A, kappa = params.theta, params.A, params.kappa
    out = []
    for case in cases:
        b, T = case.b, case.t
        if b <= theta or b >= 1.0:
            raise ValueError(f"case left edge {b} outside (theta, 1)")
        if case.lemma == "window-h":
            if abs(T) < math.e ** 1.25 + math.sqrt(3.0):
                raise ValueError(f"window-h case requires |T| >= 5.222, got {T}")
            h = counting_window_height(b, theta)
            actual = db.count_window(b, T - h, T + h)
            bound = (1.0 - theta) / (b - theta) * (
                0.654 * math.log(abs(T))
                + math.log(math.log(abs(T)))
                + 6.0 * math.log(A + kappa)
                + 6.0 * math.log(1.0 / (1.0 - theta))
                + 12.5
            )
        elif case.lemma == "strip":
            if T < 5.0:
                raise ValueError(f"strip case requires T >= 5, got {T}")
            actual = db.count_two_sided(b, T)
            bound = (1.0 / (b - theta)) * (
                0.5 * T * math.log(T)
                + (2.0 * math.log(A + kappa) + math.log(1.0 / (b - theta)) + 3.0) * T
            )
        elif case.lemma == "unit-band":
            if T < 6.0:
                raise ValueError(f"unit-band case requires T >= 6, got {T}")
            actual = db.count_window(b, T - 1.0, T + 1.0)
            bound = (1.0 / (b - theta)) * (
                6.2 * math.log(T)
                + 6.2 * math.log((A + kappa) ** 2 / (b - theta))
                + 24.0
            )
        else:
            raise ValueError(f"unknown counting lemma {case.lemma!r}")
        out.append(CountingCheck(case.lemma, b, T, actual, bound))
    return out
