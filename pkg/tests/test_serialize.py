import json
import random
from fractions import Fraction

import pytest

from tropeig.charpoly import CharPoly, PolyMatrix, charpoly_direct
from tropeig.exact import ExactComplex, ec
from tropeig.models import circuit_laplacian, effective_liouvillian_example
from tropeig.poly import ScalarPoly
from tropeig.serialize import (ParseError, charpoly_from_json, charpoly_to_json,
                               dumps, exact_from_json, exact_to_json,
                               polymatrix_from_json, polymatrix_to_json,
                               report_from_json, report_to_json,
                               scalarpoly_from_json, scalarpoly_to_json)
from tropeig.tropical import SplittingReport, TropicalRoot, tropical_roots


def rand_scalarpoly(rng):
    terms = {rng.randint(0, 8): ec(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                                   rng.randint(-5, 5))
             for _ in range(rng.randint(0, 4))}
    trunc = rng.choice([None, None, 10])
    return ScalarPoly(terms, trunc)


class TestScalarRoundTrip:
    def test_exact_complex(self):
        z = ExactComplex(Fraction(-2, 3), Fraction(5), Fraction(1, 7), Fraction(0), 5)
        assert exact_from_json(json.loads(json.dumps(exact_to_json(z))), "$") == z

    def test_rationals_survive_as_strings(self):
        out = exact_to_json(ec(Fraction(1, 3)))
        assert out["re"] == "1/3"

    def test_scalarpoly_plain_and_truncated(self):
        rng = random.Random(90)
        for _ in range(50):
            p = rand_scalarpoly(rng)
            blob = json.loads(json.dumps(scalarpoly_to_json(p)))
            assert scalarpoly_from_json(blob, "$") == p

    def test_plain_form_is_a_bare_array(self):
        p = ScalarPoly({2: 3})
        assert isinstance(scalarpoly_to_json(p), list)

    def test_bad_exponent_path(self):
        with pytest.raises(ParseError, match=r"\$\[0\]\.exp"):
            scalarpoly_from_json([{"exp": -1, "re": "1", "im": "0"}], "$")


class TestMatrixRoundTrip:
    def test_random_matrices(self):
        rng = random.Random(91)
        for _ in range(20):
            n = rng.randint(1, 4)
            m = PolyMatrix([[rand_scalarpoly(rng) for _ in range(n)] for _ in range(n)])
            blob = json.loads(json.dumps(polymatrix_to_json(m)))
            assert polymatrix_from_json(blob) == m

    def test_radical_entries_round_trip(self):
        m = circuit_laplacian("epsilon").realization
        blob = json.loads(json.dumps(charpoly_to_json(m)))
        assert charpoly_from_json(blob) == m

    def test_non_square_rejected_with_path(self):
        with pytest.raises(ParseError, match=r"entries\[1\]"):
            polymatrix_from_json({"entries": [[[], []], [[]]]})

    def test_wrong_declared_dimension(self):
        with pytest.raises(ParseError, match=r"\$\.n"):
            polymatrix_from_json({"n": 3, "entries": [[[]]]})


class TestCharPolyRoundTrip:
    def test_round_trip(self):
        cp = effective_liouvillian_example().realization
        blob = json.loads(json.dumps(charpoly_to_json(cp)))
        assert charpoly_from_json(blob) == cp

    def test_monic_enforced(self):
        with pytest.raises(ParseError):
            charpoly_from_json({"coeffs": [[{"exp": 0, "re": "2", "im": "0"}], []]})


class TestReportRoundTrip:
    def test_round_trip(self):
        rep = SplittingReport((TropicalRoot(Fraction(1, 5), 5),
                               TropicalRoot(Fraction(1), 1)), 3, False)
        blob = json.loads(json.dumps(report_to_json(rep)))
        assert report_from_json(blob) == rep

    def test_exact_omega_strings(self):
        rep = SplittingReport((TropicalRoot(Fraction(2, 3), 3),), 0)
        assert report_to_json(rep)["roots"][0]["omega"] == "2/3"


class TestDeterminism:
    def test_dumps_stable_under_reparse(self):
        cp = charpoly_direct(PolyMatrix([[0, 1], [ScalarPoly.t(), 0]]))
        body = {"splitting": report_to_json(tropical_roots(cp)),
                "charpoly": charpoly_to_json(cp)}
        assert dumps(body) == dumps(json.loads(dumps(body)))
