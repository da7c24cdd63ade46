"""Smoke test for the `momlat` extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import cmath
import math

import momlat


def close(u, v, tol=1e-12):
    return abs(u - v) <= tol


def main():
    lat = momlat.Lattice(0.0, 0.1, 64)
    assert (lat.p0, lat.a, lat.n, len(lat)) == (0.0, 0.1, 64, 64)
    assert close(lat.momenta()[10], 1.0)

    well = momlat.Lattice.square_well(1.0, 16)
    assert close(well.p0, math.pi) and close(well.a, math.pi)

    assert momlat.check("A*P") == ("(P+a)*A", False)
    assert momlat.check("[X,P] + i - (i*a/2)*Q")[1]
    assert all(zero for _, zero, _ in momlat.verify_symbolic())
    rows = momlat.verify_numeric(lat)
    assert len(rows) >= 14 and all(r < 1e-12 for _, _, r in rows)

    x = momlat.operator(momlat.Lattice(0.0, 0.25, 4), "X")
    assert x[0][1] == complex(0.0, -2.0) and x[1][0] == complex(0.0, 2.0)
    shifted = momlat.apply(momlat.Lattice(0.0, 1.0, 3), "A", [1, 2, 3])
    assert shifted == [2, 3, 0]
    small = momlat.Lattice(0.0, 0.5, 3)
    assert close(momlat.a_integral(small, [1, 1, 1]), 1.5)
    assert close(momlat.inner_product(small, [1j, 0, 0], [1j, 0, 0]), 0.5)

    al = momlat.alpha(0.5, 1.0)
    assert close(abs(al), 1.0) and close(al.imag, 0.5)

    unit = momlat.Lattice(0.0, 1.0, 5)
    phi = momlat.eigenvector(unit, 0.0)
    assert [round(v.real) for v in phi] == [1, 0, 1, 0, 1]
    assert close(momlat.normalization_direct(unit, 0.0), 1 / math.sqrt(3))
    rec = momlat.eigenvector(momlat.Lattice(0.0, 1.0, 8), 0.5, cmath.exp(0.3j), method="recurrence")
    cf = momlat.eigenvector(momlat.Lattice(0.0, 1.0, 8), 0.5, cmath.exp(0.3j))
    assert max(abs(u - v) for u, v in zip(rec, cf)) < 1e-12
    assert close(momlat.normalization_closed_form(0.5, 1.0, 8), 1 / math.sqrt(6))

    ev = momlat.spectrum(momlat.Lattice(0.0, 1.0, 3))
    assert close(ev[0], -math.sqrt(0.5)) and ev[1] == 0.0 and close(ev[2], math.sqrt(0.5))

    rows, slope = momlat.continuum_scan([0.1, 0.05, 0.025])
    assert abs(slope - 2.0) < 0.1 and len(rows) == 3

    try:
        momlat.eigenvector(unit, 2.0)
    except ValueError as e:
        assert "outside lattice band" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("momlat smoke test: ok")


if __name__ == "__main__":
    main()
