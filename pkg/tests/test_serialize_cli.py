import json

import numpy as np
import pytest

from limspace import cli
from limspace import duals as D
from limspace import sampling as S
from limspace import serialize as Z
from limspace.measures import POS_INF, SignedMeasure, StepFunction


class TestDumps:
    def test_sorted_keys_and_digits(self):
        assert Z.dumps({"b": 0.1, "a": [1, -0.0, float("inf")]}, indent=None) == (
            '{"a": [1, 0, "inf"], "b": 0.10000000000000001}'
        )

    def test_round_trips_floats(self):
        rng = np.random.default_rng(0)
        vals = rng.standard_normal(50).tolist()
        assert json.loads(Z.dumps(vals)) == vals


class TestRoundTrips:
    def test_measure(self):
        mu = SignedMeasure.from_atoms("half", [(1.0, 2.0), (POS_INF, -1.0)], StepFunction([0.0, 1.0], [[3.0]]))
        d = Z.measure_to_dict(mu)
        assert d["atoms"][1]["loc"] == "inf"
        back = Z.measure_from_dict(json.loads(Z.dumps(d)))
        assert back.locs.tolist() == mu.locs.tolist()
        assert back.weights.tolist() == mu.weights.tolist()
        assert back.density.values.tolist() == mu.density.values.tolist()

    def test_functions(self):
        rng = np.random.default_rng(1)
        for x in (S.random_half(rng, 2), S.random_line(rng, 2)):
            d = json.loads(Z.dumps(Z.function_to_dict(x)))
            back = Z.function_from_dict(d)
            k = x.knots()
            assert np.array_equal(back.right(k), x.right(k))
            assert ("limit_neg" in d) == hasattr(x, "limit_neg")

    def test_functionals(self):
        rng = np.random.default_rng(2)
        y = S.random_step(rng, 0.0, 4.0)
        fs = [
            D.MeasureFunctional(S.random_measure(rng), [0.5]),
            D.LineMeasureFunctional(S.random_measure(rng, "line"), [1.0], [2.0]),
            D.ExtendedMeasureFunctional(S.random_measure(rng, at_infinity=True)),
            D.DensityFunctional(y, [1.0], 2.0),
            D.LineDensityFunctional(y, [1.0], [2.0]),
            D.SequenceFunctional([1.0, 2.0], 3.0),
            D.SobolevFunctional(y, None, [1.0]),
        ]
        x = S.random_half(rng)
        for f in fs:
            back = Z.functional_from_dict(json.loads(Z.dumps(Z.functional_to_dict(f))))
            assert type(back) is type(f)
            if isinstance(f, (D.MeasureFunctional, D.ExtendedMeasureFunctional, D.DensityFunctional, D.SobolevFunctional)):
                assert D.pair(back, x) == D.pair(f, x)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            Z.functional_from_dict({"kind": "nope"})


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCli:
    def test_verify_norms(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "norms", "--seed", "7", "--count", "1000")
        assert code == 0
        rep = json.loads(out)
        props = rep["suites"][0]["properties"]
        ratio = next(p for p in props if p["name"].startswith("norm_equivalence"))
        assert ratio["detail"]["max_ratio"] <= 3.0

    def test_byte_stable(self, capsys):
        a = run(capsys, "verify", "--suite", "sequence", "--seed", "3", "--count", "50")[1]
        b = run(capsys, "verify", "--suite", "sequence", "--seed", "3", "--count", "50")[1]
        assert a == b

    def test_all(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "all", "--count", "20")
        assert code == 0
        assert [s["suite"] for s in json.loads(out)["suites"]] == sorted(
            ["norms", "riesz-half", "riesz-line", "lebesgue", "sequence", "sobolev", "hilbert", "convex"]
        )

    def test_failure_injection(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "lebesgue", "--count", "5", "--inject-failure")
        assert code == 1
        failed = [p for p in json.loads(out)["suites"][0]["properties"] if not p["passed"]]
        assert len(failed) == 1
        assert failed[0]["witness"] is not None

    def test_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2

    def test_bad_count(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "--count", "0"])
        assert exc.value.code == 2

    def test_csv_and_out(self, tmp_path, capsys):
        path = tmp_path / "r.csv"
        code, out, _ = run(capsys, "verify", "--suite", "sobolev", "--count", "5", "--format", "csv", "--out", str(path))
        assert code == 0 and out == ""
        lines = path.read_text().splitlines()
        assert lines[0] == "suite,name,passed,max_error,checked,tolerance,witness"
        assert len(lines) == 5

    def test_degeneracy(self, capsys):
        code, out, _ = run(capsys, "degeneracy", "--n-max", "5")
        assert code == 0
        rep = json.loads(out)
        row = rep["rows"][1]
        assert (row["n"], row["sup_dist"], row["witness"]) == (2, pytest.approx(0.4, abs=1e-16), pytest.approx(0.2, abs=1e-16))
        d = [r["sup_dist"] for r in rep["rows"]]
        assert all(a > b for a, b in zip(d, d[1:]))
        assert rep["subdifferential"]["c0"]["mu_is_zero"]
        assert rep["subdifferential"]["clim"]["mu_is_delta_inf"]

    def test_degeneracy_empty(self, capsys):
        code, out, _ = run(capsys, "degeneracy", "--n-max", "0")
        assert code == 0 and json.loads(out)["rows"] == []
        code, out, _ = run(capsys, "degeneracy", "--n-max", "0", "--format", "csv")
        assert out.strip() == "n,sup_dist,witness,sup_dist_closed_form,witness_closed_form"

    def test_degeneracy_negative(self, capsys):
        assert run(capsys, "degeneracy", "--n-max", "-1")[0] == 2

    def _spec(self, tmp_path, y, alpha, primal):
        p = tmp_path / "f.json"
        p.write_text(json.dumps({"functional": {"kind": "sequence", "y": y, "alpha": alpha}, "primal": primal, "p": 1}))
        return str(p)

    def test_dualnorm_p_composite(self, tmp_path, capsys):
        code, out, _ = run(capsys, "dualnorm", self._spec(tmp_path, [1, -2, 0], 3, "P-COMPOSITE"))
        rep = json.loads(out)
        assert code == 0
        assert (rep["oracle"]["value"], rep["sum_formula"], rep["q_composite_formula"]) == (3, 5, 3)
        assert rep["matches"] == ["q_composite"]

    def test_dualnorm_max(self, tmp_path, capsys):
        rep = json.loads(run(capsys, "dualnorm", self._spec(tmp_path, [1, -2, 0], 3, "MAX"))[1])
        assert rep["oracle"]["value"] == 5 and rep["matches"] == ["sum"]

    def test_dualnorm_zero(self, tmp_path, capsys):
        rep = json.loads(run(capsys, "dualnorm", self._spec(tmp_path, [0, 0, 0], 0, "p"))[1])
        assert rep["oracle"]["value"] == rep["sum_formula"] == rep["q_composite_formula"] == 0

    def test_dualnorm_bad_file(self, tmp_path, capsys):
        assert run(capsys, "dualnorm", str(tmp_path / "missing.json"))[0] == 2
        bad = tmp_path / "bad.json"
        bad.write_text('{"functional": {"kind": "sequence", "y": [1], "alpha": 0}, "primal": "weird"}')
        assert run(capsys, "dualnorm", str(bad))[0] == 2
