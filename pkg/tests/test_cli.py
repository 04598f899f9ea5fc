from bangles.cli import main
from bangles.curve import arc_curve, format_curve, transport_curve
from bangles.fixtures import load_surface
from bangles.surface import flip


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_band_annulus(capsys):
    code, out, _ = run(
        capsys, "compute", "--triangulation", "annulus", "--curve", "annulus-core"
    )
    assert code == 0
    assert "graph: band, 2 tiles" in out
    assert "tile 1: diagonal 1 at (0, 0), N=4 E=2 S=3 W=2" in out
    assert "gluing: U" in out
    assert "F = 1 + y2 + y1*y2" in out
    assert "g = (1, -1)" in out
    assert "h = (0, -1)" in out
    assert "MSW = x1^-1*x2^-1 + x1^-1*x2 + x1*x2^-1" in out


def test_compute_principal_coefficients(capsys):
    code, out, _ = run(
        capsys,
        "compute",
        "--triangulation",
        "annulus",
        "--curve",
        "annulus-core",
        "--coefficients",
        "principal",
    )
    assert code == 0
    assert "MSW = x1^-1*x2^-1*y2 + x1*x2^-1 + x1^-1*x2*y1*y2" in out


def test_compute_snake_from_file(tmp_path, capsys):
    t = load_surface("pentagon")
    res = flip(t, 1)
    back = transport_curve(arc_curve(1), res.quad, forward=False)
    curve_file = tmp_path / "c.curve"
    curve_file.write_text(format_curve(t, back))
    code, out, _ = run(
        capsys, "compute", "--triangulation", "pentagon", "--curve", str(curve_file)
    )
    assert code == 0
    assert "graph: snake, 1 tile\n" in out
    assert "F = 1 + y1" in out
    assert "MSW = x1^-1 + x1^-1*x2" in out


def test_compute_plain_arc(tmp_path, capsys):
    curve_file = tmp_path / "a.curve"
    curve_file.write_text("curve closed=0\narc 2\n")
    code, out, _ = run(
        capsys, "compute", "--triangulation", "pentagon", "--curve", str(curve_file)
    )
    assert code == 0
    assert "graph: none" in out
    assert "g = (0, 1)" in out
    assert "MSW = x2" in out


def test_mutate_prints_matrix_and_triangulation(capsys):
    code, out, _ = run(capsys, "mutate", "--triangulation", "annulus", "--flips", "1")
    assert code == 0
    assert "flip 1: B = ((0, 2), (-2, 0))" in out
    assert "surface g=0 b=2 m=1,1 p=0" in out
    assert "triangle" in out


def test_verify_keylemma_word(capsys):
    code, out, _ = run(
        capsys,
        "verify-keylemma",
        "--triangulation",
        "annulus",
        "--curve",
        "annulus-core",
        "--flips",
        "1 2",
    )
    assert code == 0
    assert out.count("[pass]") == 6
    assert "keylemma-F" in out and "keylemma-g" in out and "keylemma-h" in out


def test_verify_shear_prints_each_step(capsys):
    code, out, _ = run(
        capsys,
        "verify-shear",
        "--triangulation",
        "annulus",
        "--curve",
        "annulus-core",
        "--flips",
        "1 2",
    )
    assert code == 0
    assert "step 0: Sh = (1, -1)" in out
    assert "step 1: Sh = (-1, 1)" in out
    assert "step 2: Sh = (1, -1)" in out
    assert out.count("[pass] shear-flip") == 2


def test_verify_arc_roundtrip(tmp_path, capsys):
    curve_file = tmp_path / "a.curve"
    curve_file.write_text("curve closed=0\narc 1\n")
    code, out, _ = run(
        capsys,
        "verify-arc",
        "--triangulation",
        "annulus",
        "--curve",
        str(curve_file),
        "--flips",
        "1",
    )
    assert code == 0
    assert "[pass] arc-vs-cluster" in out


def test_run_corpus_exits_zero(capsys):
    code, out, _ = run(capsys, "run-corpus")
    assert code == 0
    assert out.strip().endswith("0 failed")


def test_unknown_fixture_is_a_user_error(capsys):
    code, _, err = run(
        capsys, "compute", "--triangulation", "nowhere", "--curve", "annulus-core"
    )
    assert code == 2
    assert "neither a file nor a bundled fixture" in err


def test_bad_flip_word(capsys):
    code, _, err = run(
        capsys, "mutate", "--triangulation", "annulus", "--flips", "one two"
    )
    assert code == 2
    assert "whitespace-separated integers" in err


def test_unsupported_flip_label(capsys):
    code, _, err = run(capsys, "mutate", "--triangulation", "annulus", "--flips", "9")
    assert code == 2
    assert "cannot flip arc 9" in err
