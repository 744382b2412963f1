"""Finite and infinite products of matrices: submultiplicativity of the
contractivity coefficient, finite-horizon convergence diagnostics, the
scrambling-product bound r^(n-1) - eps^(n-1), minimal contractive product
length over a finite family, and weak-ergodicity bookkeeping.

Composition convention: sequence index k is application time in
x(k+1) = A_k x(k), so the composite operator over [a, b] is
A_b A_(b-1) ... A_a.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .contractivity import contractivity, contractivity_linf
from .graphs import has_spanning_directed_tree, interaction_digraph
from .matcore import Matrix, as_matrix, delta, is_scrambling, is_stochastic, mu, row_sum_profile
from .projections import LINF, Norm, linf

PRODUCT_ZERO_THRESHOLD = 1e-12
DELTA_ZERO_THRESHOLD = 1e-8
ENUMERATION_BUDGET = 10 ** 6


class BudgetError(RuntimeError):
    """Exhaustive enumeration would exceed the product budget."""


def random_stochastic_spanning_tree(n: int, rng, min_entry: float = 0.05,
                                    extra_edge_prob: float = 0.3) -> Matrix:
    """Random stochastic matrix with positive diagonal whose interaction
    digraph contains a spanning directed tree.

    Every structurally nonzero entry is >= min_entry.  The tree is drawn
    by attaching each vertex to a random already-reachable parent; a tree
    edge p -> v in the interaction digraph requires A[v, p] != 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    max_nonzeros = int(1.0 / min_entry)
    if max_nonzeros < 2 and n > 1:
        raise ValueError("min_entry too large for a positive diagonal plus a tree edge")
    order = rng.permutation(n)
    support = [{i} for i in range(n)]  # row i: diagonal always present
    for idx in range(1, n):
        v = int(order[idx])
        p = int(order[int(rng.integers(idx))])
        support[v].add(p)
    for i in range(n):
        room = max_nonzeros - len(support[i])
        others = [j for j in range(n) if j not in support[i]]
        rng.shuffle(others)
        for j in others[:room]:
            if rng.random() < extra_edge_prob:
                support[i].add(j)
    a = np.zeros((n, n))
    for i in range(n):
        cols = sorted(support[i])
        k = len(cols)
        slack = 1.0 - k * min_entry
        u = rng.random(k)
        a[i, cols] = min_entry + slack * u / u.sum()
    return Matrix(a)


@dataclass
class MatrixSequence:
    """Finite list of matrices, or a seeded generator producing item k on
    demand (deterministic per seed)."""

    items: list | None = None
    generator: dict | None = None
    n: int = field(init=False)

    def __post_init__(self):
        if (self.items is None) == (self.generator is None):
            raise ValueError("provide exactly one of items or generator")
        if self.items is not None:
            self.items = [as_matrix(m) for m in self.items]
            if not self.items:
                raise ValueError("sequence must be nonempty")
            self.n = self.items[0].n
            if any(m.n != self.n for m in self.items):
                raise ValueError("all matrices must share a dimension")
        else:
            spec = self.generator
            if spec.get("kind") != "random_stochastic_spanning_tree":
                raise ValueError(f"unknown generator kind {spec.get('kind')!r}")
            self.n = int(spec["n"])
            self._seed = int(spec.get("seed", 0))
            self._min_entry = float(spec.get("min_entry", 0.05))
            self._cache = {}

    def __len__(self):
        if self.items is not None:
            return len(self.items)
        raise TypeError("generated sequence has no fixed length")

    def __getitem__(self, k: int) -> Matrix:
        if self.items is not None:
            return self.items[k]
        if k < 0:
            raise IndexError(k)
        if k not in self._cache:
            rng = np.random.default_rng([self._seed, k])
            self._cache[k] = random_stochastic_spanning_tree(self.n, rng, self._min_entry)
        return self._cache[k]


def product(seq: MatrixSequence, frm: int, to: int) -> Matrix:
    """Composite matrix mapping x(frm) to x(to + 1): A_to ... A_frm."""
    if frm < 0 or to < frm:
        raise IndexError(f"invalid index range [{frm}, {to}]")
    if seq.items is not None and to >= len(seq.items):
        raise IndexError(f"index {to} out of range")
    acc = np.eye(seq.n)
    for k in range(frm, to + 1):
        acc = seq[k].a @ acc
    return Matrix(acc)


def product_contractivity_bound(seq: MatrixSequence, norm: Norm) -> tuple[float, float]:
    """(exact coefficient of the full product, product of per-factor
    coefficients).  Under the l-infinity closed form the exact value
    never exceeds the bound; the l2 closed form is itself only an upper
    bound per factor, so there the comparison is diagnostic."""
    ms = seq.items
    if ms is None:
        raise ValueError("requires a finite sequence")
    c_exact = contractivity(product(seq, 0, len(ms) - 1), norm).c
    c_bound = 1.0
    for m in ms:
        c_bound *= contractivity(m, norm).c
    return c_exact, c_bound


def check_convergence_condition(c_values, horizon: int | None = None,
                                threshold: float = PRODUCT_ZERO_THRESHOLD) -> dict:
    """Running products of the per-step coefficients and a finite-horizon
    verdict on whether they reach (numerically) zero.  A surrogate for an
    asymptotic condition, never a proof."""
    c_values = np.asarray(c_values, dtype=float)
    if np.any(c_values < 0):
        raise ValueError("coefficients must be nonnegative")
    if horizon is not None:
        c_values = c_values[:horizon]
    running = np.cumprod(c_values)
    return {
        "converges_to_zero_over_horizon": bool(running.size and running[-1] < threshold),
        "running_products": running,
    }


@dataclass(frozen=True)
class ScramblingProductCheck:
    hypotheses_hold: bool
    failures: tuple
    product_is_scrambling: bool
    mu_product: float
    mu_lower_bound: float
    c_bound: float

    def to_json(self) -> dict:
        return {
            "hypotheses_hold": self.hypotheses_hold,
            "failures": list(self.failures),
            "product_is_scrambling": self.product_is_scrambling,
            "mu_product": self.mu_product,
            "mu_lower_bound": self.mu_lower_bound,
            "c_bound": self.c_bound,
        }


def scrambling_product_theorem_check(seq: MatrixSequence, epsilon: float,
                                     r: float, tol: float = 1e-9) -> ScramblingProductCheck:
    """Check the hypotheses (nonnegative, positive diagonal, nonzero
    entries >= epsilon, row sums <= r, spanning directed tree) on each of
    the first n-1 factors, form their product P, and report whether P is
    scrambling together with mu(P) >= epsilon^(n-1) and the coefficient
    bound r^(n-1) - epsilon^(n-1)."""
    n = seq.n
    need = max(1, n - 1)
    if seq.items is not None and len(seq.items) < need:
        raise ValueError(f"need at least {need} matrices")
    failures = []
    for k in range(need):
        m = seq[k]
        a = m.a
        if np.any(a < -tol):
            failures.append((k, "negative entry"))
        if np.any(np.diag(a) <= m.zero_tol):
            failures.append((k, "nonpositive diagonal"))
        nz = m.nonzero_pattern()
        if np.any(a[nz] < epsilon - tol):
            failures.append((k, "nonzero entry below epsilon"))
        if np.any(a.sum(axis=1) > r + tol):
            failures.append((k, "row sum above r"))
        if not has_spanning_directed_tree(interaction_digraph(m))[0]:
            failures.append((k, "no spanning directed tree"))
    P = product(seq, 0, need - 1)
    return ScramblingProductCheck(
        hypotheses_hold=not failures,
        failures=tuple(failures),
        product_is_scrambling=is_scrambling(P),
        mu_product=mu(P),
        mu_lower_bound=epsilon ** (n - 1),
        c_bound=r ** (n - 1) - epsilon ** (n - 1),
    )


def min_contractive_product_length(H, norm_q: Norm, max_m: int,
                                   predicate: str = "contractive",
                                   budget: int = ENUMERATION_BUDGET) -> int | None:
    """Smallest m <= max_m such that every length-m product over the
    family H satisfies the predicate ('contractive' under norm_q, or
    'scrambling'), or None if no such m is found.

    All |H|^m orderings are enumerated; raises BudgetError when a level
    would exceed the enumeration budget.
    """
    H = [as_matrix(m) for m in H]
    if not H:
        raise ValueError("family must be nonempty")
    if predicate not in ("contractive", "scrambling"):
        raise ValueError(f"unknown predicate {predicate!r}")
    for m in range(1, max_m + 1):
        if len(H) ** m > budget:
            raise BudgetError(f"|H|^{m} exceeds enumeration budget {budget}")
        ok = True
        for combo in itertools.product(H, repeat=m):
            P = combo[0].a
            for factor in combo[1:]:
                P = factor.a @ P
            if predicate == "contractive":
                if not contractivity(Matrix(P), norm_q).is_set_contractive:
                    ok = False
                    break
            elif not is_scrambling(Matrix(P)):
                ok = False
                break
        if ok:
            return m
    return None


def ergodicity_coefficient(A, norm: Norm | None = None, tol: float = 1e-9) -> float:
    """Proper coefficient of ergodicity 1 - c(A) for stochastic A that is
    set-nonexpansive under the chosen norm.  Equals 1 exactly for
    rank-one A = e v^T."""
    A = as_matrix(A)
    if norm is None:
        norm = linf()
    if not is_stochastic(A, tol):
        raise ValueError("matrix must be stochastic")
    c = contractivity(A, norm).c
    if c > 1.0 + tol:
        raise ValueError("matrix is not set-nonexpansive under this norm")
    return float(min(1.0, max(0.0, 1.0 - c)))


@dataclass(frozen=True)
class ErgodicityReport:
    horizon: int
    block_len: int
    anchors: tuple
    delta_of_partial_products: np.ndarray  # growing products from anchor 0
    delta_by_anchor: dict
    block_mu_c_partial_sums: np.ndarray
    verdict: str  # consistent_with_weak_ergodicity | inconclusive | violated_nonincrease

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "block_len": self.block_len,
            "anchors": list(self.anchors),
            "delta_of_partial_products": [float(v) for v in self.delta_of_partial_products],
            "block_mu_c_partial_sums": [float(v) for v in self.block_mu_c_partial_sums],
            "verdict": self.verdict,
        }


def weak_ergodicity_diagnostic(seq: MatrixSequence, horizon: int,
                               block_len: int | None = None,
                               norm: Norm | None = None) -> ErgodicityReport:
    """Finite-horizon weak-ergodicity bookkeeping for a stochastic
    sequence: delta of growing partial products from several anchors, and
    partial sums of the ergodicity coefficient over consecutive blocks
    (one canonical subsequence choice, i_j = j * block_len).

    The verdict is a diagnostic, never a proof: 'consistent' when every
    anchored delta series ends below the zero threshold.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if norm is None:
        norm = linf()
    if block_len is None:
        block_len = max(1, seq.n - 1)
    for k in range(horizon):
        if not is_stochastic(seq[k]):
            raise ValueError(f"sequence item {k} is not stochastic")

    anchors = sorted({0, horizon // 3, (2 * horizon) // 3} - {horizon})
    delta_by_anchor = {}
    nonincrease_ok = True
    for r in anchors:
        acc = np.eye(seq.n)
        series = []
        for k in range(r, horizon):
            acc = seq[k].a @ acc
            series.append(delta(Matrix(acc)))
        series = np.asarray(series)
        if np.any(np.diff(series) > 1e-10):
            nonincrease_ok = False
        delta_by_anchor[r] = series

    sums = []
    total = 0.0
    for start in range(0, horizon, block_len):
        stop = min(start + block_len, horizon) - 1
        block = product(seq, start, stop)
        total += ergodicity_coefficient(block, norm)
        sums.append(total)

    if not nonincrease_ok:
        verdict = "violated_nonincrease"
    elif all(series[-1] <= DELTA_ZERO_THRESHOLD for series in delta_by_anchor.values()):
        verdict = "consistent_with_weak_ergodicity"
    else:
        verdict = "inconclusive"
    return ErgodicityReport(
        horizon=horizon, block_len=block_len, anchors=tuple(anchors),
        delta_of_partial_products=delta_by_anchor[0],
        delta_by_anchor=delta_by_anchor,
        block_mu_c_partial_sums=np.asarray(sums),
        verdict=verdict)
