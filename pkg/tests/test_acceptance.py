"""End-to-end acceptance suite.

Each test implements one acceptance criterion at its stated tolerance:

1. reference RMSE table reproduction (relative 1e-3, both operators,
   4 examples x 8 degrees), with alternative-denominator reporting;
2. exact operator identities (1e-10 at random points);
3. oracle equivalence (determinant representation; closed form vs
   transform path);
4. axis continuity of the piecewise disk operators (1e-10);
5. range preservation for the discontinuous step example (no overshoot);
6. pointwise convergence-rate probes;
7. mesh cardinalities;
8. byte-level determinism of the CLI table runs.
"""

import math
import warnings

import numpy as np
import pytest

from diskbern import experiments as ex
from diskbern.bivariate import CurvilinearDomain, NodeSchedule, stancu, stancu_determinant, voronovskaja_probe
from diskbern.cli import main as cli_main
from diskbern.disk import (
    Quadrant,
    axis_continuity_check,
    quadrant_bernstein_type,
    quadrant_bernstein_type_via_transforms,
)
from diskbern.bivariate import UNIT_SQUARE
from diskbern.univariate import Transform1D, c_tau

RNG = np.random.default_rng(20240821)


def test_1_reference_table_reproduction():
    """All 64 RMSE cells match the reference values within relative 1e-3
    under one denominator convention applied uniformly.

    Failing cells are reported together with the alternative-denominator
    value so the two conventions can be compared cell by cell.
    """
    rtol = 1e-3
    failing = []
    for example_id in (1, 2, 3, 4):
        for cell in ex.reference_report(example_id, threads=4):
            if not cell.within(rtol):
                failing.append(cell)
    if failing:
        lines = [
            f"{len(failing)}/64 cells outside relative {rtol:g} "
            "(nominal-denominator convention; alt = actual-count denominator):"
        ]
        for c in failing:
            lines.append(
                f"  example{c.example_id} {c.operator_id} n={c.n}: "
                f"computed={c.computed:.6g} (rel {c.rel_error:.2e}), "
                f"alt={c.computed_alt:.6g} (rel {c.rel_error_alt:.2e}), "
                f"reference={c.reference:.6g}"
            )
        pytest.fail("\n".join(lines))


def test_2_exact_identities():
    """Operator identities hold to 1e-10 at 100 random points for each n."""
    dom = CurvilinearDomain(
        -1.0, 2.0, lambda x: -1.0 + 0.2 * math.sin(2 * x), lambda x: 1.0 + 0.3 * math.cos(x)
    )
    pts = []
    while len(pts) < 100:
        x = float(RNG.uniform(dom.a, dom.b))
        lo, hi = dom.phi1(x), dom.phi2(x)
        pts.append((x, float(RNG.uniform(lo, hi))))
    tau = Transform1D(lambda t: t * t, math.sqrt)
    xs_unit = RNG.uniform(0, 1, 100)
    for n in (3, 10, 50):
        sched = NodeSchedule.constant(n)
        for x, y in pts:
            assert stancu(lambda a, b: 1.0, dom, n, sched, x, y) == pytest.approx(
                1.0, abs=1e-10
            )
            assert stancu(lambda a, b: a, dom, n, sched, x, y) == pytest.approx(x, abs=1e-10)
            expected = x * x + (x - dom.a) * (dom.b - x) / n
            assert stancu(lambda a, b: a * a, dom, n, sched, x, y) == pytest.approx(
                expected, abs=1e-10
            )
        for x in xs_unit:
            x = float(x)
            tx = x * x
            assert c_tau(lambda t: t * t, tau, n, x) == pytest.approx(tx, abs=1e-10)
            assert c_tau(lambda t: t**4, tau, n, x) == pytest.approx(
                (1 - 1 / n) * tx * tx + tx / n, abs=1e-10
            )


def test_3_oracle_equivalence():
    """Determinant representation (n <= 4, 1e-9) and closed-form vs
    transform-path quadrant evaluation (n <= 12, 1e-10)."""
    dom = CurvilinearDomain(
        0.0, 1.0, lambda x: -0.5 - 0.1 * x, lambda x: 0.5 + 0.2 * x * x
    )
    coeffs = RNG.uniform(-1, 1, (20, 4))
    pairs = []
    for c0, c1, c2, c3 in coeffs:
        pairs.append(
            lambda a, b, c0=c0, c1=c1, c2=c2, c3=c3: c0
            + c1 * a
            + c2 * b
            + c3 * math.sin(a + 2 * b)
        )
    for i, f in enumerate(pairs):
        n = 1 + i % 4
        sched = NodeSchedule.constant(n)
        x = float(RNG.uniform(dom.a, dom.b))
        y = float(RNG.uniform(dom.phi1(x), dom.phi2(x)))
        direct = stancu(f, dom, n, sched, x, y)
        det = stancu_determinant(f, dom, n, sched, x, y)
        assert det == pytest.approx(direct, abs=1e-9)

    f_disk = ex.builtin(1)
    for q in Quadrant:
        count = 0
        while count < 50:
            x, y = RNG.uniform(-1, 1, 2)
            if x * x + y * y > 1.0 or q.sx * x < 0 or q.sy * y < 0:
                continue
            count += 1
            n = 1 + count % 12
            closed = quadrant_bernstein_type(f_disk, q, n, float(x), float(y))
            transform = quadrant_bernstein_type_via_transforms(f_disk, q, n, float(x), float(y))
            assert closed == pytest.approx(transform, abs=1e-10)


def test_4_axis_continuity():
    """Adjacent-quadrant values agree on the axes to 1e-10."""
    smooth = ex.builtin(1)
    discontinuous = ex.builtin(4)
    for which in ("stancu", "bernstein-type"):
        for n in (5, 20, 80):
            for f in (smooth, discontinuous):
                assert axis_continuity_check(which, f, n, samples=32) <= 1e-10


def test_5_range_preservation_step_function():
    """The operators never overshoot the [0, 1] range of the step example."""
    eta = ex.builtin(4)
    tol = 1e-12
    for n in (10, 40, 80):
        for kind in ("Cbar", "Bbar", "Bstancu"):
            op = ex.disk_operator(kind, n)
            for mesh in (ex.mesh_quadrant_disk(n), ex.mesh_stancu_disk(n)):
                vals = op(eta, mesh.points, threads=4)
                assert np.all(vals >= -tol) and np.all(vals <= 1.0 + tol)
        rows = ex.cross_section("Cbar", eta, [n], samples=801)
        vals = np.array([r[4] for r in rows])
        assert np.all(vals >= -tol) and np.all(vals <= 1.0 + tol)


def test_6_convergence_rate_probes():
    """Scaled pointwise residuals: exact 1/(4n) rate for the quadratic, and
    a bounded band for the smooth exponential example."""
    for n in (10, 20, 40):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            (_, _, scaled), = voronovskaja_probe(
                lambda a, b: a * a, UNIT_SQUARE, (0.5, 0.3), [n]
            )
        assert scaled == pytest.approx(0.25, abs=1e-10)
    f = ex.builtin(3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        probes = voronovskaja_probe(f, UNIT_SQUARE, (0.3, 0.4), [10, 20, 40, 80])
    scaled = [abs(s) for (_, _, s) in probes]
    assert max(scaled) / min(scaled) < 3.0


def test_7_mesh_cardinalities():
    """Published cardinalities, with the deduplicated quadrant mesh holding
    exactly one more point (the origin) than its nominal count."""
    for n in (1, 5, 15, 80):
        chord = ex.mesh_stancu_disk(n)
        assert len(chord.points) == (n + 1) ** 2 == chord.nominal_size
        raw = ex.mesh_quadrant_disk(n, dedup=False)
        assert len(raw.points) == 2 * (n + 1) * (n + 2)
        deduped = ex.mesh_quadrant_disk(n, dedup=True)
        assert len(deduped.points) == 2 * n * (n + 1) + 1
        assert deduped.nominal_size == 2 * n * (n + 1)
        assert len(deduped.points) == deduped.nominal_size + 1  # documented off-by-one


def test_8_cli_determinism(tmp_path, capsys):
    """Repeated CLI table runs are byte-identical regardless of threads."""
    for example in ("1", "2", "3", "4"):
        a = tmp_path / f"a{example}.csv"
        b = tmp_path / f"b{example}.csv"
        assert cli_main(["--threads", "1", "table", "--example", example, "--out", str(a)]) == 0
        assert cli_main(["--threads", "8", "table", "--example", example, "--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text().splitlines()[0] == "n,rmse_C,rmse_B"
