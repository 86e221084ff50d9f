"""End-to-end acceptance checks, one per advertised capability.

Each test runs the corresponding seeded batch from bilinid.acceptance,
prints its single PASS/FAIL line, and enforces the runtime budget.
Run with `python3 -m pytest tests/test_acceptance.py -v -s` to see the
lines, or `bilinid reproduce` for the same batches from the shell.
"""

from bilinid.acceptance import (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
)


def _check(result):
    print(result.line)
    assert result.passed, result.details
    assert result.elapsed <= result.budget, (
        f"took {result.elapsed:.2f}s, budget {result.budget:.0f}s")


def test_twin_systems_match_all_moments_yet_differ():
    _check(criterion_1())


def test_single_pulse_pairs_agree_then_separate():
    _check(criterion_2())


def test_pulse_family_pairs_agree_across_amplitudes():
    _check(criterion_3())


def test_sampled_pairs_agree_at_ticks_and_differ_between():
    _check(criterion_4())


def test_identification_recovers_equivalent_systems():
    _check(criterion_5())


def test_similarity_recovery_and_self_dual_transform():
    _check(criterion_6())


def test_simulator_consistency_restart_and_time_scaling():
    _check(criterion_7())


def test_generic_systems_admit_twin_constructions():
    _check(criterion_8())
