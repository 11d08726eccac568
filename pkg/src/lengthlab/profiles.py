"""Profiles of torus elements and the (c,k)-quasiorder between them.

The profile of a torus element lists, in decreasing order, half the
distances |1-beta_i(t)|/2 of the fundamental character values of an
*optimal* representative t of its rearrangement orbit: the one whose
cumulative character-distance sums are lexicographically maximal.
Profiles of sequences of elements are compared by F(k*i+1) <= c*H(i+1),
a quasiorder whose witnesses (c, k) compose under transitivity.

Monomial unitaries (permutation matrices with phases) provide a class
with closed-form spectra on which the Ky Fan singular-value estimates
can be exercised without any dense eigensolver.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .roots import (
    TorusElement,
    lambda_tilde,
    lfrac,
    normalize_angle,
    scaled_rank_length_inf,
)


class Unrealizable(Exception):
    pass


class IndexOutOfRange(Exception):
    pass


# ----------------------------------------------------------- profiles

@dataclass(frozen=True)
class Profile:
    """Decreasing values in [0,1], implicitly zero beyond the support.

    distances carries the exact character distances (units of pi) when
    the profile came from exact arithmetic; exact=False marks profiles
    built by a heuristic orbit search.
    """

    values: tuple
    support_bound: int
    distances: tuple = None
    exact: bool = True

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        assert all(-1e-12 <= v <= 1 + 1e-12 for v in vals), vals
        assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:])), vals

    def value(self, i):
        """F(i), 1-based, zero beyond the support."""
        if i < 1:
            raise IndexOutOfRange(i)
        return self.values[i - 1] if i <= len(self.values) else 0.0

    def support(self):
        return sum(1 for v in self.values if v > 1e-12)

    def to_json(self):
        return {
            "values": [repr(v) for v in self.values],
            "support_bound": self.support_bound,
            "distances": None if self.distances is None
            else [str(d) for d in self.distances],
            "exact": self.exact,
        }


@dataclass(frozen=True)
class ProfileSequence:
    """Finite indexed family n -> Profile."""

    profiles: dict

    def indices(self):
        return sorted(self.profiles)


@dataclass(frozen=True)
class OrderWitness:
    c: float
    k: int
    n0: int = 0

    def __post_init__(self):
        assert self.c >= 1 and self.k >= 1


# ------------------------------------------- optimal torus elements

_OPT_STATE_CAP = 50_000


def _distances_to_profile(dists, rank, exact=True):
    d = tuple(sorted(dists, reverse=True))
    values = tuple(math.sin(math.pi * float(x) / 2) for x in d)
    return Profile(values, rank, d, exact)


def optimal_torus_element(t: TorusElement, state_cap=_OPT_STATE_CAP,
                          expect=None):
    """Orbit representative with lexicographically maximal cumulative
    character-distance sums; returns (element, exact_flag).

    Lex-maximality of cumulative sums equals lex-maximality of the
    distance sequence itself, found by a greedy search that keeps every
    partial arrangement achieving the running maximum.  Falls back to a
    sorted zigzag heuristic (exact_flag False) past state_cap.  With
    expect (a distance -> count map) the search aborts and returns
    (None, True) as soon as the optimal distance multiset cannot equal
    the expected one.
    """
    typ = "A" if t.type == "U" else t.type
    angles = [normalize_angle(a) for a in t.angles]
    vals = sorted(set(angles))
    counts = tuple(angles.count(v) for v in vals)
    k = len(vals)
    n = len(angles)
    signs = (1, -1) if typ in ("B", "C", "D") else (1,)
    sval = {(i, s): normalize_angle(s * v)
            for i, v in enumerate(vals) for s in signs}

    # state: (remaining counts, (value idx, sign), flip parity) -> witness
    states = {}
    for i in range(k):
        rem = list(counts)
        rem[i] -= 1
        for s in signs:
            key = (tuple(rem), (i, s), 1 if s < 0 else 0)
            states.setdefault(key, [sval[(i, s)]])
    budget = None if expect is None else dict(expect)

    def draw(d):
        # early abort: the greedy maximum is forced, so any draw outside
        # the expected multiset already decides the mismatch
        if budget is None:
            return True
        if budget.get(d, 0) == 0:
            return False
        budget[d] -= 1
        return True

    dseq = []
    exact = True
    for step in range(n - 1):
        final = step == n - 2
        best = None
        nxt = {}
        for (rem, (i, s), par), arr in states.items():
            pv = sval[(i, s)]
            for j in range(k):
                if rem[j] == 0:
                    continue
                for s2 in signs:
                    par2 = par ^ (1 if s2 < 0 else 0)
                    if final and typ == "D" and par2 != 0:
                        continue
                    cv = sval[(j, s2)]
                    d = lfrac(pv - cv)
                    if typ == "D" and final:
                        score = (d, lfrac(pv + cv))
                    else:
                        score = (d,)
                    if best is None or score > best:
                        best = score
                        nxt = {}
                    if score == best:
                        rem2 = list(rem)
                        rem2[j] -= 1
                        key = (tuple(rem2), (j, s2), par2)
                        nxt.setdefault(key, arr + [cv])
        if not all(draw(d) for d in best):
            return None, True
        dseq.extend(best)
        states = nxt
        if len(states) > state_cap:
            exact = False
            break

    if not exact and expect is not None:
        return None, False
    if not exact:
        # zigzag of the sorted angles: large distances first
        srt = sorted(angles)
        arr = []
        lo, hi = 0, len(srt) - 1
        while lo <= hi:
            arr.append(srt[lo])
            lo += 1
            if lo <= hi:
                arr.append(srt[hi])
                hi -= 1
        opt = TorusElement(t.type, t.rank, tuple(arr))
        return opt, False

    if typ in ("B", "C"):
        mult = 2 if typ == "C" else 1
        best_end = max(lfrac(mult * sval[key[1]]) for key in states)
        states = {key: arr for key, arr in states.items()
                  if lfrac(mult * sval[key[1]]) == best_end}
        if not draw(best_end):
            return None, True
        dseq.append(best_end)

    arr = next(iter(states.values()))
    opt = TorusElement(t.type, t.rank, tuple(arr))
    # all survivors share dseq by construction; cross-check the witness
    assert [lfrac(b) for b in opt.betas()] == dseq if typ != "D" else True
    return opt, True


def profile_of(t: TorusElement, state_cap=_OPT_STATE_CAP) -> Profile:
    """Decreasing half-distances of the optimal orbit representative."""
    opt, exact = optimal_torus_element(t, state_cap=state_cap)
    dists = [lfrac(b) for b in opt.betas()]
    return _distances_to_profile(dists, t.rank, exact)


def profile_of_finite_type(ell, n) -> Profile:
    """Step profile of a normalized length value: 1 on [1, floor(n*ell)]."""
    ell = Fraction(ell)
    assert 0 <= ell <= 1
    support = int(n * ell)
    return Profile((1.0,) * support, n, (Fraction(1),) * support, True)


# --------------------------------------------------------- quasiorder

def precede_check(F: ProfileSequence, H: ProfileSequence, w: OrderWitness):
    """Does F_n(k*i+1) <= c*H_n(i+1) hold for all n >= n0, i >= 0?

    Returns (ok, first violation (n, i) or None).  Indices beyond every
    support carry value zero, so the scan is finite.
    """
    shared = [n for n in F.indices() if n in H.profiles and n >= w.n0]
    for n in shared:
        fp, hp = F.profiles[n], H.profiles[n]
        imax = max(len(fp.values), len(hp.values)) + 1
        for i in range(imax):
            if fp.value(w.k * i + 1) > w.c * hp.value(i + 1) + 1e-12:
                return False, (n, i)
    return True, None


def precede_search(F: ProfileSequence, H: ProfileSequence,
                   c_max, k_max, n0=0):
    """Least (k, then c) integer witness on the grid, or None.

    None is grid-relative only; it never proves incomparability.
    """
    for k in range(1, k_max + 1):
        for c in range(1, c_max + 1):
            w = OrderWitness(c, k, n0)
            ok, _ = precede_check(F, H, w)
            if ok:
                return w
    return None


def profile_meet(F: Profile, H: Profile) -> Profile:
    return _pointwise(F, H, min)


def profile_join(F: Profile, H: Profile) -> Profile:
    return _pointwise(F, H, max)


def _pointwise(F, H, op):
    ln = max(len(F.values), len(H.values))
    values = tuple(op(F.value(i), H.value(i)) for i in range(1, ln + 1))
    dists = None
    if F.distances is not None and H.distances is not None:
        fd = list(F.distances) + [Fraction(0)] * (ln - len(F.distances))
        hd = list(H.distances) + [Fraction(0)] * (ln - len(H.distances))
        dists = tuple(op(a, b) for a, b in zip(fd, hd))
    return Profile(values, max(F.support_bound, H.support_bound),
                   dists, F.exact and H.exact)


# --------------------------------------------------------- realization

def _distinct_orderings(items):
    """Distinct permutations of a multiset, near-sorted orders first."""
    items = sorted(items, reverse=True)

    def rec(rem):
        if not rem:
            yield ()
            return
        prev = object()
        for i, x in enumerate(rem):
            if x == prev:
                continue
            prev = x
            for tail in rec(rem[:i] + rem[i + 1:]):
                yield (x, *tail)

    return rec(items)


def _realize_candidates(dists, typ, rank):
    """Angle tuples whose own distance multiset equals dists.

    Any element realizing the target profile has its optimal arrangement
    among these: consecutive angles differ by one of the distances up to
    sign, the end character fixes the global shift (for signed types),
    and a global reflection is free.
    """
    n = rank + 1 if typ in ("A", "U") else rank
    if typ in ("A", "U"):
        for edges in _distinct_orderings(dists):
            for pat in itertools.product((1, -1), repeat=max(0, rank - 1)):
                zig = [Fraction(0), edges[0]] if rank else [Fraction(0)]
                for s, d in zip(pat, edges[1:]):
                    zig.append(zig[-1] + s * d)
                shift = -sum(zig) / n if typ == "A" else Fraction(0)
                yield tuple(z + shift for z in zig)
        return
    ends = sorted(set(dists))
    for e in ends:
        rest = list(dists)
        rest.remove(e)
        for edges in _distinct_orderings(rest):
            for pat in itertools.product((1, -1), repeat=max(0, n - 2)):
                zig = [Fraction(0)]
                if n >= 2:
                    zig.append(edges[0])
                for s, d in zip(pat, edges[1:]):
                    zig.append(zig[-1] + s * d)
                for es in (1, -1):
                    if typ == "B":
                        shift = es * e - zig[-1]
                    elif typ == "C":
                        shift = Fraction(es * e, 2) - zig[-1]
                    else:
                        shift = (es * e - zig[-2] - zig[-1]) / 2
                    yield tuple(z + shift for z in zig)


def realize_profile(P: Profile, typ, rank, cap=100_000) -> TorusElement:
    """Torus element whose profile equals P exactly.

    Candidate elements trace the distances as consecutive steps on the
    angle circle; each is accepted only if its own optimal profile
    reproduces P, since a rearrangement with sign flips can beat the
    intended arrangement.  Raises Unrealizable when no candidate within
    the cap verifies.
    """
    if typ not in ("A", "U", "B", "C", "D"):
        raise ValueError(f"unknown type {typ}")
    if P.distances is not None:
        dists = [Fraction(d) for d in P.distances]
    else:
        dists = [Fraction(2 * math.asin(min(1.0, max(0.0, v))) / math.pi)
                 .limit_denominator(10**12) for v in P.values]
    if len(dists) > rank:
        raise Unrealizable("support exceeds rank")
    dists = sorted(dists + [Fraction(0)] * (rank - len(dists)), reverse=True)

    expect = {}
    for d in dists:
        expect[d] = expect.get(d, 0) + 1
    tried = 0
    seen = set()
    for angles in _realize_candidates(dists, typ, rank):
        # candidates are only defined up to the rearrangement orbit, so
        # dedup by an orbit invariant before the expensive check
        norm = tuple(normalize_angle(a) for a in angles)
        if typ in ("A", "U"):
            key = tuple(sorted(norm))
        else:
            folded = tuple(sorted(lfrac(a) for a in norm))
            par = 0
            if typ == "D" and 0 not in folded and 1 not in folded:
                par = sum(1 for a in norm if a < 0) % 2
            key = (folded, par)
        if key in seen:
            continue
        seen.add(key)
        tried += 1
        if tried > cap:
            break
        t = TorusElement(typ, rank, angles)
        opt, exact = optimal_torus_element(t, expect=expect)
        if opt is not None and exact:
            return t
    raise Unrealizable(f"no realization found for {dists} in type {typ}")


# --------------------------------------------------- monomial unitaries

def monomial_spectrum(perm, phases):
    """Eigenvalue angles of the monomial unitary sending e_i to
    e^{i*pi*phases[i]} e_{perm(i)}: per cycle of length k with phase sum
    Theta, the k angles (Theta + 2j)/k."""
    images = perm.images
    n = len(images)
    assert len(phases) == n
    seen = [False] * n
    angles = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cyc.append(cur)
            cur = images[cur]
        theta = sum((Fraction(phases[i]) for i in cyc), Fraction(0))
        k = len(cyc)
        angles.extend(normalize_angle((theta + 2 * j) / k) for j in range(k))
    return sorted(angles)


def monomial_product(g_mon, h_mon):
    """(perm, phases) of the matrix product g*h of two monomials."""
    from .perms import Permutation

    pg, fg = g_mon
    ph, fh = h_mon
    n = len(pg.images)
    images = tuple(pg.images[ph.images[i]] for i in range(n))
    phases = tuple(Fraction(fh[i]) + Fraction(fg[ph.images[i]])
                   for i in range(n))
    return Permutation(images), phases


def monomial_matrix(mon):
    perm, phases = mon
    n = len(perm.images)
    M = np.zeros((n, n), dtype=complex)
    for i in range(n):
        M[perm.images[i], i] = cmath.exp(1j * math.pi * float(phases[i]))
    return M


def _spectrum_profile(angles):
    n = len(angles)
    t = TorusElement("U", n - 1, tuple(angles))
    return profile_of(t)


def kyfan_profile_check(g_mon, h_mon, z_trials=5, seed=0) -> dict:
    """Verify F_gh(6i+6j+1) <= 2F_g(i+1) + 2F_h(j+1) on a monomial pair,
    plus the underlying additive singular-value step on sampled central
    multipliers.  Returns a report; violations are collected, not raised."""
    rng = random.Random(seed)
    gh = monomial_product(g_mon, h_mon)
    spec_g = monomial_spectrum(*g_mon)
    spec_h = monomial_spectrum(*h_mon)
    spec_gh = monomial_spectrum(*gh)
    Fg = _spectrum_profile(spec_g)
    Fh = _spectrum_profile(spec_h)
    Fgh = _spectrum_profile(spec_gh)

    report = {"main_ok": True, "kyfan_ok": True, "violations": [],
              "pairs_checked": 0, "exact": Fg.exact and Fh.exact
              and Fgh.exact}
    n = len(spec_g)
    for i in range((n // 6) + 2):
        for j in range((n // 6) + 2):
            lhs = Fgh.value(6 * i + 6 * j + 1) if 6 * i + 6 * j + 1 <= n - 1 \
                else 0.0
            rhs = 2 * Fg.value(i + 1) + 2 * Fh.value(j + 1)
            report["pairs_checked"] += 1
            if lhs > rhs + 1e-12:
                report["main_ok"] = False
                report["violations"].append(("main", i, j, lhs, rhs))

    # raw additive step: s_{i+j+1}(1 - xy*gh) <= s_{i+1}(1-x*g) + s_{j+1}(1-y*h)
    for _ in range(z_trials):
        phi_x = Fraction(rng.randint(-24, 24), 24)
        phi_y = Fraction(rng.randint(-24, 24), 24)
        u = _shifted_singular_values(spec_g, phi_x)
        v = _shifted_singular_values(spec_h, phi_y)
        w = _shifted_singular_values(spec_gh, phi_x + phi_y)
        for i in range(n):
            for j in range(n - i):
                if w[i + j] > u[i] + v[j] + 1e-12:
                    report["kyfan_ok"] = False
                    report["violations"].append(
                        ("kyfan", float(phi_x), float(phi_y), i, j))
    return report


def _shifted_singular_values(spec, phi):
    """Singular values of 1 - e^{i*pi*phi} g, decreasing (g normal)."""
    return sorted(
        (abs(1 - cmath.exp(1j * math.pi * float(phi + a))) for a in spec),
        reverse=True)


def underline_singular(spec, i) -> float:
    """min over unit z of half the i-th largest |1 - z*mu_j|, 1-based.

    Each |1 - z*mu_j| = 2|sin(pi(phi+theta_j)/2)| is piecewise concave in
    phi, so the minimum of the i-th order statistic is attained at a
    kink, a crest, or a crossing of two branches; all are rational."""
    n = len(spec)
    if not 1 <= i <= n:
        raise IndexOutOfRange(i)
    spec = [normalize_angle(a) for a in spec]
    candidates = set()
    for a in spec:
        candidates.add(normalize_angle(-a))
        candidates.add(normalize_angle(1 - a))
        for b in spec:
            candidates.add(normalize_angle(-(a + b) / 2))
            candidates.add(normalize_angle(-(a + b) / 2 + 1))
    best = math.inf
    for phi in candidates:
        vals = sorted(
            (2 * abs(math.sin(math.pi * float(phi + a) / 2)) for a in spec),
            reverse=True)
        best = min(best, vals[i - 1] / 2)
    return best


# ------------------------------------------------- incomparability demo

def incomparability_demo(n_max, c_max=64, k_max=8) -> list:
    """First failing family index for every grid witness, both ways.

    Uses the two proof-backed length functions: scaled rank length for
    the direction g before h, and the orbit-maximal torus length for the
    reverse.  Rows: (direction, c, k, first_failing_n).
    """
    ns = range(2, n_max + 1)
    from .roots import counterexample_family

    g_rank, h_rank = {}, {}
    g_tilde, h_tilde = {}, {}
    for n in ns:
        g, h = counterexample_family(n)
        dim = 2 * n + 1
        g_rank[n] = profile_of_finite_type(scaled_rank_length_inf(g), dim)
        h_rank[n] = profile_of_finite_type(scaled_rank_length_inf(h), dim)
        g_tilde[n] = profile_of_finite_type(lambda_tilde(g), 2 * n)
        h_tilde[n] = profile_of_finite_type(lambda_tilde(h), 2 * n)

    rows = []
    for direction, F, H in (("g_preceq_h", g_rank, h_rank),
                            ("h_preceq_g", h_tilde, g_tilde)):
        for k in range(1, k_max + 1):
            for c in range(1, c_max + 1):
                first = None
                for n in ns:
                    ok, _ = precede_check(
                        ProfileSequence({n: F[n]}),
                        ProfileSequence({n: H[n]}),
                        OrderWitness(c, k))
                    if not ok:
                        first = n
                        break
                rows.append((direction, c, k, first))
    return rows
