"""Majority-voting ensemble analysis over two-class labels.

Components vote -1 or +1 per sample; the ensemble predicts the sign of the
vote sum, with 0 meaning a tie. Generalization errors are counting
fractions, kept as exact rationals so equivalence checks are bit-exact
rather than approximate.

Tie policy: a tie counts as an error. The error indicator is undefined on
ties in the underlying derivation, so this module counts them
conservatively and reports tie counts separately, letting callers layer a
different policy without touching the math here.

The substitution toolkit replaces one component's votes and reports whether
the swap helps. The per-sample check (error after <= error before at every
sample) is an assumption to be tested per input, not a theorem; when it
does hold everywhere, summing it over samples forces the aggregate benefit,
and that implication is asserted on every comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

__all__ = [
    "VoteInstance",
    "SubstitutionReport",
    "InstanceParseError",
    "component_error",
    "vote_sum",
    "ensemble_output",
    "ensemble_error",
    "brute_force_error",
    "substitute_and_compare",
    "search_beneficial_substitutions",
    "parse_instance",
    "format_instance",
    "parse_labels",
    "format_labels",
]

SEARCH_MAX_SAMPLES = 20


def _check_labels(values, what: str) -> tuple[int, ...]:
    out = tuple(int(v) for v in values)
    for v in out:
        if v not in (-1, 1):
            raise ValueError(f"{what} entries must be -1 or +1, got {v}")
    return out


@dataclass(frozen=True)
class VoteInstance:
    """Expected labels and the component output matrix.

    ``expected`` has length k; ``outputs`` is N rows of length k, row i
    holding component i's votes. All entries are -1 or +1.
    """

    expected: tuple[int, ...]
    outputs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        expected = _check_labels(self.expected, "expected")
        if len(expected) < 1:
            raise ValueError("need at least one sample")
        if len(self.outputs) < 1:
            raise ValueError("need at least one component")
        outputs = []
        for i, row in enumerate(self.outputs, start=1):
            row = _check_labels(row, f"component {i}")
            if len(row) != len(expected):
                raise ValueError(
                    f"component {i} has {len(row)} outputs, expected {len(expected)}"
                )
            outputs.append(row)
        object.__setattr__(self, "expected", expected)
        object.__setattr__(self, "outputs", tuple(outputs))

    @property
    def n_components(self) -> int:
        return len(self.outputs)

    @property
    def n_samples(self) -> int:
        return len(self.expected)


def _error_term(prod: int) -> int:
    # prod is f*o in {-1, 0, +1}; 0 (a tie) counts as an error.
    return 0 if prod == 1 else 1


def _sgn(x: int) -> int:
    return 1 if x > 0 else (-1 if x < 0 else 0)


def _check_component_index(inst: VoteInstance, i: int) -> None:
    if not 1 <= i <= inst.n_components:
        raise IndexError(
            f"component index {i} out of range 1..{inst.n_components}"
        )


def _check_sample_index(inst: VoteInstance, j: int) -> None:
    if not 1 <= j <= inst.n_samples:
        raise IndexError(f"sample index {j} out of range 1..{inst.n_samples}")


def component_error(inst: VoteInstance, i: int) -> Fraction:
    """Fraction of samples where component i (1-based) disagrees with the
    expected label."""
    _check_component_index(inst, i)
    row = inst.outputs[i - 1]
    wrong = sum(_error_term(f * o) for f, o in zip(row, inst.expected))
    return Fraction(wrong, inst.n_samples)


def vote_sum(inst: VoteInstance, j: int) -> int:
    """Sum of all component votes on sample j (1-based); shares N's parity."""
    _check_sample_index(inst, j)
    return sum(row[j - 1] for row in inst.outputs)


def ensemble_output(inst: VoteInstance, j: int) -> int:
    """Sign of the vote sum on sample j: -1, +1, or 0 on a tie."""
    return _sgn(vote_sum(inst, j))


def ensemble_error(inst: VoteInstance) -> Fraction:
    """Fraction of samples the majority vote gets wrong (ties count)."""
    wrong = sum(
        _error_term(ensemble_output(inst, j) * inst.expected[j - 1])
        for j in range(1, inst.n_samples + 1)
    )
    return Fraction(wrong, inst.n_samples)


def brute_force_error(inst: VoteInstance) -> Fraction:
    """Ensemble error recomputed by direct per-sample ballot counting.

    Deliberately avoids the vote-sum algebra: votes for each label are
    tallied and compared head to head. Must agree with
    :func:`ensemble_error` exactly on every instance.
    """
    wrong = 0
    for j in range(inst.n_samples):
        plus = sum(1 for row in inst.outputs if row[j] == 1)
        minus = inst.n_components - plus
        if plus > minus:
            predicted = 1
        elif minus > plus:
            predicted = -1
        else:
            wrong += 1  # tie: counted as an error
            continue
        if predicted != inst.expected[j]:
            wrong += 1
    return Fraction(wrong, inst.n_samples)


@dataclass(frozen=True)
class SubstitutionReport:
    """Before/after comparison for swapping out one component's votes."""

    index_e: int
    error_before: Fraction
    error_after: Fraction
    per_sample_ok: tuple[bool, ...]
    benefit: bool
    tie_count_before: int
    tie_count_after: int

    def __post_init__(self):
        if self.benefit != (self.error_after <= self.error_before):
            raise ValueError("benefit flag inconsistent with errors")
        if all(self.per_sample_ok) and not self.benefit:
            raise ValueError("per-sample dominance without aggregate benefit")


def substitute_and_compare(
    inst: VoteInstance, e: int, replacement
) -> SubstitutionReport:
    """Replace component e's votes (1-based) and compare ensemble errors.

    ``per_sample_ok[j]`` records whether the swapped ensemble is at least as
    good as the original on sample j+1 under the tie-as-error count. When
    that holds for every sample the aggregate benefit follows by summation,
    which is asserted.
    """
    _check_component_index(inst, e)
    replacement = _check_labels(replacement, "replacement")
    if len(replacement) != inst.n_samples:
        raise ValueError(
            f"replacement has {len(replacement)} entries, expected {inst.n_samples}"
        )
    k = inst.n_samples
    old_row = inst.outputs[e - 1]
    errs_before = []
    errs_after = []
    ties_before = 0
    ties_after = 0
    for j in range(k):
        s = sum(row[j] for row in inst.outputs)
        s_sub = s - old_row[j] + replacement[j]
        ties_before += s == 0
        ties_after += s_sub == 0
        errs_before.append(_error_term(_sgn(s) * inst.expected[j]))
        errs_after.append(_error_term(_sgn(s_sub) * inst.expected[j]))
    per_sample_ok = tuple(a <= b for a, b in zip(errs_after, errs_before))
    error_before = Fraction(sum(errs_before), k)
    error_after = Fraction(sum(errs_after), k)
    if all(per_sample_ok):
        assert error_after <= error_before  # summation of the per-sample bound
    return SubstitutionReport(
        index_e=e,
        error_before=error_before,
        error_after=error_after,
        per_sample_ok=per_sample_ok,
        benefit=error_after <= error_before,
        tie_count_before=ties_before,
        tie_count_after=ties_after,
    )


def search_beneficial_substitutions(
    inst: VoteInstance, e: int
) -> list[tuple[tuple[int, ...], SubstitutionReport]]:
    """Enumerate all replacement vote vectors that strictly lower the error.

    Returns ``(replacement, report)`` pairs sorted by error after, ties
    broken lexicographically on the replacement, so output order is
    deterministic. Guarded to k <= 20 samples (2^k candidates).
    """
    _check_component_index(inst, e)
    k = inst.n_samples
    if k > SEARCH_MAX_SAMPLES:
        raise ValueError(
            f"exhaustive search needs k <= {SEARCH_MAX_SAMPLES}, got k={k}"
        )
    base = [
        sum(row[j] for row in inst.outputs) - inst.outputs[e - 1][j]
        for j in range(k)
    ]
    error_before = ensemble_error(inst)
    improving = []
    for candidate in product((-1, 1), repeat=k):
        wrong = sum(
            _error_term(_sgn(base[j] + candidate[j]) * inst.expected[j])
            for j in range(k)
        )
        if Fraction(wrong, k) < error_before:
            improving.append(candidate)
    results = [(c, substitute_and_compare(inst, e, c)) for c in improving]
    results.sort(key=lambda item: (item[1].error_after, item[0]))
    return results


class InstanceParseError(ValueError):
    """Malformed instance or label text; carries 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _parse_label_token(token: str, line: int, column: int) -> int:
    if token in ("+1", "1"):
        return 1
    if token == "-1":
        return -1
    raise InstanceParseError(line, column, f"expected a +1/-1 label, got {token!r}")


def _tokenize(text: str):
    # Yields (line_no, column_no, token) with 1-based positions.
    for line_no, line in enumerate(text.splitlines(), start=1):
        col = 0
        for token in line.split():
            col = line.index(token, col)
            yield line_no, col + 1, token
            col += len(token)


def parse_instance(text: str) -> VoteInstance:
    """Parse the plain text matrix format.

    First line ``N k``, second line the k expected labels, then N rows of k
    component votes; labels are ``+1`` / ``-1`` tokens.
    """
    tokens = list(_tokenize(text))
    if len(tokens) < 2:
        raise InstanceParseError(1, 1, "missing 'N k' header")
    (l0, c0, tn), (l1, c1, tk) = tokens[0], tokens[1]
    try:
        n = int(tn)
    except ValueError:
        raise InstanceParseError(l0, c0, f"component count is not an integer: {tn!r}")
    try:
        k = int(tk)
    except ValueError:
        raise InstanceParseError(l1, c1, f"sample count is not an integer: {tk!r}")
    if n < 1 or k < 1:
        raise InstanceParseError(l0, c0, f"N and k must be >= 1, got N={n} k={k}")
    need = (n + 1) * k
    body = tokens[2:]
    if len(body) < need:
        last = tokens[-1]
        raise InstanceParseError(
            last[0], last[1], f"expected {need} label tokens, found {len(body)}"
        )
    if len(body) > need:
        extra = body[need]
        raise InstanceParseError(extra[0], extra[1], f"unexpected token {extra[2]!r}")
    labels = [_parse_label_token(t, ln, col) for ln, col, t in body]
    expected = tuple(labels[:k])
    outputs = tuple(
        tuple(labels[k * (i + 1) : k * (i + 2)]) for i in range(n)
    )
    return VoteInstance(expected=expected, outputs=outputs)


def format_instance(inst: VoteInstance) -> str:
    """Inverse of :func:`parse_instance`; labels rendered as +1/-1."""
    lines = [f"{inst.n_components} {inst.n_samples}", format_labels(inst.expected)]
    lines.extend(format_labels(row) for row in inst.outputs)
    return "\n".join(lines) + "\n"


def parse_labels(text: str, expect: int | None = None) -> tuple[int, ...]:
    """Parse a whitespace-separated +1/-1 vector, optionally of fixed length."""
    tokens = list(_tokenize(text))
    labels = tuple(_parse_label_token(t, ln, col) for ln, col, t in tokens)
    if expect is not None and len(labels) != expect:
        raise InstanceParseError(
            1, 1, f"expected {expect} labels, found {len(labels)}"
        )
    return labels


def format_labels(labels) -> str:
    return " ".join("+1" if v == 1 else "-1" for v in labels)
