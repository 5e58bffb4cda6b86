"""Smoke test for the cavity_vacuum extension module.

Build and install first:  pip install maturin && maturin develop -m crates/py/Cargo.toml
"""
import math

import cavity_vacuum as cv


def close(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(abs(a), abs(b))


def main():
    p = cv.PhysicalParams.figure_defaults()
    assert p.n_max() == 106, p.n_max()
    assert cv.max_mode_index(p) == 106
    assert close(cv.mode_frequency(1, p), math.pi * p.c / p.l0)
    assert cv.coupling_c(2, 5, p) == cv.coupling_c(5, 2, p)

    omegas, numbers, n_osc = cv.photon_spectrum(p)
    assert len(omegas) == len(numbers) == 106
    assert close(sum(numbers), 2.0 * n_osc, 1e-10)
    assert close(n_osc, cv.mirror_excitation(p), 1e-12)

    b = cv.energy_shift(p)
    assert close(b["hint"], 2.0 * b["e2"], 1e-10)
    assert close(b["hint"], -2.0 * b["h0"], 1e-10)

    f = cv.casimir_energy_correction(p)
    assert not f["cutoff_crossed"]

    value, change = cv.time_split_baseline(p)
    assert close(value, cv.baseline_density(p), 1e-8), (value, change)

    grid, delta, total = cv.density_profile(p, 101)
    assert len(grid) == 101 and grid[0] == 0.0
    assert all(d >= 0.0 for d in delta)
    assert close(delta[50], cv.delta_density(grid[50], p), 1e-12)

    q = cv.PhysicalParams.parse("L0_m = 1e-5\nM_kg = 1e-11\nomega_osc = 1e5\nomega_cut = 5e15\n")
    assert q.n_max() == 53
    assert p.replace(omega_cut=5e15).n_max() == 53

    nat = cv.PhysicalParams.natural(10.0, math.pi, 2)
    rows = cv.oracle_report(nat, [0.1, 0.05, 0.025])
    errs = [abs(r[3] - 1.0) for r in rows]
    assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-3, errs

    try:
        cv.PhysicalParams(-1.0, 1.0, 1.0, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative length accepted")

    print("smoke test passed:", p)


if __name__ == "__main__":
    main()
