import json
import pathlib

import pytest

from wrapcheck.battery import BatteryOptions, run_battery
from wrapcheck.cli import EXIT_EXCLUDED, EXIT_OK, EXIT_USAGE, corpus_paths, main
from wrapcheck.descriptor import ParseError, parse_descriptor, parse_descriptor_file

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "src" / "wrapcheck" / "corpus"
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden" / "corpus_verdicts.json"


def corpus_file(name: str) -> str:
    return str(CORPUS / f"{name}.descriptor")


class TestParser:
    def test_t4_descriptor(self):
        d = parse_descriptor_file(corpus_file("t4"))
        assert d.name == "t4" and d.n == 4
        assert [deg for _, deg in d.cohomology.generators] == [1, 1, 1, 1]
        assert d.cohomology.relations == ()
        assert d.pi1.kind == "free-abelian" and d.pi1.rank == 4
        assert d.betti == (3, 3)

    def test_nine_manifold_descriptor(self):
        from wrapcheck.algebra import cup_square_form
        from wrapcheck.quadform import QuadraticForm, discriminant

        d = parse_descriptor_file(corpus_file("nine_disc2"))
        degs = {deg for _, deg in d.cohomology.generators}
        assert degs == {2, 5}
        gram, _ = cup_square_form(d.cohomology, 2)
        form = QuadraticForm(tuple(tuple(r) for r in gram))
        assert discriminant(form) == -2

    def test_odd_cube_is_parse_error(self):
        text = """name: bad
n: 3
[cohomology]
generators: x:1
relation: x^3
fundamental_class: x
[pi1]
type: finite
"""
        with pytest.raises(ParseError) as err:
            parse_descriptor(text)
        assert err.value.line == 5
        assert "exponent" in str(err.value)

    def test_unknown_key(self):
        with pytest.raises(ParseError, match="unknown key"):
            parse_descriptor("name: a\nn: 2\nflavor: mint\n")

    def test_malformed_rational(self):
        text = """name: bad
n: 2
[cohomology]
generators: x:1 y:1
relation: 1/0 x y
fundamental_class: x y
[pi1]
type: finite
"""
        with pytest.raises(ParseError, match="rational"):
            parse_descriptor(text)

    def test_unknown_generator(self):
        text = """name: bad
n: 2
[cohomology]
generators: x:1 y:1
fundamental_class: x z
[pi1]
type: finite
"""
        with pytest.raises(ParseError, match="unknown generator"):
            parse_descriptor(text)

    def test_fundamental_class_degree_checked(self):
        text = """name: bad
n: 3
[cohomology]
generators: x:1 y:1
fundamental_class: x y
[pi1]
type: finite
"""
        with pytest.raises(ParseError, match="degree"):
            parse_descriptor(text)

    def test_bracket_indices_validated(self):
        text = """name: bad
n: 3
[cohomology]
generators: x:1 y:1 z:1
fundamental_class: x y z
[pi1]
type: nilpotent
dim: 3
bracket: [2,1] = e3
"""
        with pytest.raises(ParseError, match="bracket"):
            parse_descriptor(text)

    def test_notes_preserved(self):
        d = parse_descriptor_file(corpus_file("genus2"))
        assert "genus 2" in d.notes

    HEADER = "name: a\nn: 2\n[cohomology]\ngenerators: x:1 y:1\nfundamental_class: x y\n"

    @pytest.mark.parametrize(
        "text,message",
        [
            (HEADER + "[cohomology]\n[pi1]\ntype: finite\n", "duplicate section"),
            (
                "name: a\nn: 2\n[cohomology]\ngenerators: w:3\nfundamental_class: w\n"
                "[pi1]\ntype: finite\n",
                "overflows the formal dimension",
            ),
            (
                "name: a\nn: 2\n[cohomology]\ngenerators: w:2\nrelation: w^4\n"
                "fundamental_class: w\n[pi1]\ntype: finite\n",
                "overflows the allowed maximum",
            ),
            (HEADER, "missing .pi1."),
            (HEADER + "[pi1]\ntype: quaternionic\n", "unknown pi1 type"),
            (HEADER + "[pi1]\ntype: nilpotent\n", "needs a dim line"),
            (
                HEADER + "[pi1]\ntype: finite\n[betti]\nb_plus: 1\n",
                "needs b_plus and b_minus",
            ),
        ],
    )
    def test_error_paths(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_descriptor(text)

    def test_zero_relation_reported_at_its_line(self):
        text = (
            "name: a\nn: 2\n[cohomology]\ngenerators: x:1 y:1\n"
            "relation: x y - x y\nfundamental_class: x y\n[pi1]\ntype: finite\n"
        )
        with pytest.raises(ParseError) as err:
            parse_descriptor(text)
        assert err.value.line == 5


class TestBattery:
    def test_t4_report(self):
        d = parse_descriptor_file(corpus_file("t4"))
        rep = run_battery(d, BatteryOptions(embed_budget=2000))
        assert rep.verdict == "no-obstruction-found"
        wit = rep.embedding.morphism.assignment
        assert str(wit["x1"]) == "1*e{1}"

    def test_heisenberg_witnesses(self):
        d = parse_descriptor_file(corpus_file("heisenberg3"))
        rep = run_battery(d, BatteryOptions(embed_budget=100))
        assert rep.verdict == "excluded-with-witness"
        assert "fundamental-group-abelian" in rep.witnesses
        assert "degree-one-subalgebra" in rep.witnesses

    def test_genus2_chi_witness(self):
        d = parse_descriptor_file(corpus_file("genus2"))
        rep = run_battery(d, BatteryOptions(embed_budget=100))
        assert rep.verdict == "excluded-with-witness"
        assert "euler-characteristic" in rep.witnesses
        chi_check = next(c for c in rep.checks if c.check_id == "euler-characteristic")
        assert chi_check.witness["chi"] == -2

    def test_every_exclusion_names_its_principle(self):
        for path in corpus_paths():
            rep = run_battery(
                parse_descriptor_file(path), BatteryOptions(embed=False)
            )
            for check in rep.checks:
                if check.verdict == "fail":
                    assert check.principle  # a statement of the theorem used
            if rep.verdict == "excluded-with-witness":
                assert rep.witnesses

    def test_text_rendering(self):
        d = parse_descriptor_file(corpus_file("s2xs2"))
        rep = run_battery(d, BatteryOptions(embed_budget=2000))
        text = rep.render_text()
        assert "verdict: no-obstruction-found" in text
        assert "embedding: found (certified)" in text


class TestCLI:
    def test_check_exit_codes(self, capsys):
        assert main(["check", corpus_file("t4"), "--budget", "2000"]) == EXIT_OK
        capsys.readouterr()
        assert main(["check", corpus_file("genus2")]) == EXIT_EXCLUDED
        capsys.readouterr()

    def test_parse_error_exit(self, tmp_path, capsys):
        bad = tmp_path / "bad.descriptor"
        bad.write_text("name: x\n")
        assert main(["check", str(bad)]) == EXIT_USAGE
        capsys.readouterr()

    def test_missing_file_exit(self, capsys):
        assert main(["check", "/nonexistent.descriptor"]) == EXIT_USAGE
        capsys.readouterr()

    def test_usage_error(self, capsys):
        assert main(["frobnicate"]) == EXIT_USAGE
        capsys.readouterr()

    def test_surface_subcommand(self, tmp_path):
        out = tmp_path / "surface.txt"
        code = main(
            ["surface", "--family", "power-log", "--epsilon", "0.5", "--out", str(out)]
        )
        assert code == EXIT_OK
        text = out.read_text()
        assert "Hyperbolic" in text and "window_start" in text

    def test_surface_profile_file(self, tmp_path):
        import numpy as np

        prof = tmp_path / "prof.txt"
        r = np.geomspace(2.0, 2.0**18, 4000)
        prof.write_text("\n".join(f"{a} {3.0 * a * np.log(a)}" for a in r))
        out = tmp_path / "class.txt"
        assert main(["surface", "--profile", str(prof), "--out", str(out)]) == EXIT_OK
        assert "Parabolic" in out.read_text()

    def test_embed_subcommand(self, tmp_path):
        out = tmp_path / "embed.json"
        code = main(
            [
                "embed",
                corpus_file("cp3"),
                "--n",
                "6",
                "--budget",
                "5000",
                "--format",
                "structured",
                "--out",
                str(out),
            ]
        )
        assert code == EXIT_OK
        data = json.loads(out.read_text())
        assert data["status"] == "found-certified"

    def test_lie_subcommand(self, tmp_path):
        out = tmp_path / "lie.json"
        code = main(
            ["lie", corpus_file("heisenberg3"), "--format", "structured", "--out", str(out)]
        )
        assert code == EXIT_EXCLUDED
        data = json.loads(out.read_text())
        assert data["lower_central_series"] == [3, 1, 0]
        assert data["growth_degree"] == 4

    def test_map_subcommand(self, tmp_path):
        out = tmp_path / "map.tsv"
        code = main(
            ["map", "--map", "identity", "--n", "2", "--radii", "4,8", "--step", "0.1", "--out", str(out)]
        )
        assert code == EXIT_OK
        assert "normalized_integral" in out.read_text()


class TestGoldenCorpus:
    def test_structured_output_is_deterministic(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        args = ["corpus", "--budget", "4000", "--seed", "0", "--format", "structured"]
        assert main(args + ["--out", str(a)]) == EXIT_OK
        assert main(args + ["--out", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

    def test_matches_committed_golden_table(self, tmp_path):
        out = tmp_path / "corpus.json"
        assert (
            main(
                [
                    "corpus",
                    "--budget",
                    "4000",
                    "--seed",
                    "0",
                    "--format",
                    "structured",
                    "--out",
                    str(out),
                ]
            )
            == EXIT_OK
        )
        assert out.read_bytes() == GOLDEN.read_bytes()
