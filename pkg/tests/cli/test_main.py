import contextlib
import importlib
import io
import json
import unittest
from unittest import mock

from lie_stability import OutputFormat, Subcommand
from lie_stability.lattice import parse_cosine
from lie_stability.algebra.characters import character_from_fundamental
from lie_stability.cli.main import (
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    CommandRequest,
    build_parser,
    main,
    request_from_args,
    run,
)
from lie_stability.utils import decode_polynomial

cli_main = importlib.import_module("lie_stability.cli.main")


def invoke(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        code = main(list(argv))
    return code, stdout.getvalue().strip(), stderr.getvalue().strip()


class TestParser(unittest.TestCase):
    def test_request_from_args(self):
        args = build_parser().parse_args(["eigenvalue", "G2", "1", "0", "--scale", "killing", "--json"])
        request = request_from_args(args)
        self.assertEqual(request.subcommand, Subcommand.EIGENVALUE)
        self.assertEqual(request.group, "G2")
        self.assertEqual(request.parameters["coords"], [1, 0])
        self.assertEqual(request.parameters["scale"], "killing")
        self.assertEqual(request.output_format, OutputFormat.JSON)

    def test_character_form_json(self):
        args = build_parser().parse_args(["character", "G2", "1", "0", "--form", "json"])
        self.assertEqual(request_from_args(args).output_format, OutputFormat.JSON)

    def test_missing_subcommand(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main([])
        self.assertEqual(ctx.exception.code, EXIT_USAGE)


class TestEigenvalue(unittest.TestCase):
    def test_fh_scale(self):
        self.assertEqual(invoke("eigenvalue", "G2", "1", "0"), (EXIT_OK, "-6", ""))

    def test_killing_scale(self):
        self.assertEqual(invoke("eigenvalue", "G2", "1", "0", "--scale", "killing"), (EXIT_OK, "-1/2", ""))

    def test_json(self):
        code, out, _ = invoke("eigenvalue", "G2", "0", "1", "--json")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(
            json.loads(out),
            {"group": "G2", "weight": [0, 1], "scale": "fh", "eigenvalue": {"num": -12, "den": 1}},
        )

    def test_wrong_number_of_coordinates(self):
        code, out, err = invoke("eigenvalue", "G2", "1")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("rank 2", err)

    def test_unknown_group(self):
        code, _, err = invoke("eigenvalue", "E9", "1", "0")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("Should be one of A1, A2, G2", err)


class TestCharacter(unittest.TestCase):
    def test_cosine(self):
        self.assertEqual(
            invoke("character", "G2", "1", "0", "--form", "cosine"),
            (EXIT_OK, "2cos(θ1) + 2cos(θ2) + 2cos(θ1+θ2) + 1", ""),
        )

    def test_weyl_route_uses_fundamental_coordinates(self):
        with mock.patch.object(cli_main, "character_from_fundamental", wraps=character_from_fundamental) as spy:
            code, _, _ = invoke("character", "G2", "2", "1", "--json")
        self.assertEqual(code, EXIT_OK)
        spy.assert_called_once()
        self.assertEqual(tuple(spy.call_args[0][1]), (2, 1))

    def test_wrong_number_of_coordinates(self):
        code, out, err = invoke("character", "A2", "1")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("rank 2", err)

    def test_schur_route(self):
        weyl = invoke("character", "G2", "0", "1")
        schur = invoke("character", "G2", "0", "1", "--route", "schur")
        self.assertEqual(weyl, schur)

    def test_schur_route_needs_g2(self):
        code, _, _ = invoke("character", "A2", "1", "0", "--route", "schur")
        self.assertEqual(code, EXIT_USAGE)

    def test_json(self):
        code, out, _ = invoke("character", "G2", "1", "0", "--form", "json")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["dimension"], 7)
        self.assertEqual(
            decode_polynomial(data["character"]),
            parse_cosine("2cos(θ1) + 2cos(θ2) + 2cos(θ1+θ2) + 1", 2),
        )

    def test_non_real_character_has_no_cosine_form(self):
        code, _, err = invoke("character", "A2", "1", "0")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--form json", err)

    def test_non_real_character_json(self):
        code, out, _ = invoke("character", "A2", "1", "0", "--json")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["dimension"], 3)


class TestIntegrate(unittest.TestCase):
    def test_cube(self):
        code, out, _ = invoke("integrate", "G2", "--expr", "chi3", "1", "0")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("unit_haar = 1", out)
        self.assertIn("raw_torus = 48*pi^2", out)

    def test_one(self):
        code, out, _ = invoke("integrate", "A1", "--expr", "one", "--json")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["unit_haar_value"], {"num": 1, "den": 1})
        self.assertEqual(data["raw_torus_value"], {"coefficient": {"num": 4, "den": 1}, "pi_power": 1})

    def test_chi2(self):
        code, out, _ = invoke("integrate", "G2", "--expr", "chi2", "2", "0")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("unit_haar = 1", out)

    def test_unknown_expression(self):
        code, _, err = invoke("integrate", "G2", "--expr", "chi4", "1", "0")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("chi4", err)

    def test_wrong_number_of_coordinates(self):
        code, _, err = invoke("integrate", "A1", "--expr", "chi3", "1", "0")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("rank 1", err)

    def test_malformed_coordinates(self):
        code, _, _ = invoke("integrate", "G2", "--expr", "chi", "x", "0")
        self.assertEqual(code, EXIT_USAGE)


class TestStability(unittest.TestCase):
    def test_g2(self):
        code, out, _ = invoke("stability", "G2")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("48*pi^2", out)
        self.assertIn("DYNAMICALLY UNSTABLE", out)
        self.assertIn("C > 0", out)

    def test_g2_json(self):
        code, out, _ = invoke("stability", "G2", "--bound", "40", "--json")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(len(data["neutral_weights"]), 1)
        self.assertEqual(data["verdict"], "DYNAMICALLY UNSTABLE")

    def test_a1(self):
        code, out, _ = invoke("stability", "A1")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("none", out)
        self.assertIn("NO NEUTRAL DIRECTION", out)

    def test_empty_search_space(self):
        code, _, err = invoke("stability", "G2", "--bound", "7")
        self.assertEqual(code, EXIT_PRECONDITION)
        self.assertIn("|λ+ρ|^2 <= 7", err)

    def test_malformed_bound(self):
        code, _, _ = invoke("stability", "G2", "--bound", "forty")
        self.assertEqual(code, EXIT_USAGE)


class TestVerify(unittest.TestCase):
    def test_pass(self):
        code, out, _ = invoke("verify", "G2", "--expr", "chi3", "1", "0")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.endswith("PASS"))

    def test_grid_too_small(self):
        code, _, err = invoke("verify", "G2", "--expr", "chi3", "1", "0", "--grid", "8")
        self.assertEqual(code, EXIT_PRECONDITION)
        self.assertIn("at least 20", err)


class TestRun(unittest.TestCase):
    def test_non_dominant_weight(self):
        result = run(CommandRequest(Subcommand.EIGENVALUE, "G2", {"coords": [-1, 0]}))
        self.assertEqual(result.exit_code, EXIT_PRECONDITION)
        self.assertTrue(result.is_error)

    def test_deterministic(self):
        request = CommandRequest(Subcommand.STABILITY, "G2", {}, OutputFormat.JSON)
        self.assertEqual(run(request).output, run(request).output)


if __name__ == "__main__":
    unittest.main()
