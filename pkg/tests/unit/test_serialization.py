"""Unit tests for the JSON codecs."""

import json
import pytest
from fractions import Fraction
from unittest.mock import patch
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../src'))

from errors import ParseError, PreconditionViolation, StructuralError
from models.complexes import RegularCellComplex, SimplicialComplex
from models.reports import RunReport, Verdict
from models.summaries import CutData, Hierarchy, ManifoldSummary
from services.phi_cd import charney_davis
from services.serialization import (
    dumps,
    format_rational,
    load_document,
    parse_rational,
    simplicial_to_dict,
    summary_to_dict,
    to_jsonable,
)


class TestRationals:
    """Test cases for the p/q rational format."""

    def test_format(self):
        """Rationals print in lowest terms."""
        assert format_rational(Fraction(-2, 32)) == "-1/16"
        assert format_rational(Fraction(4, 2)) == "2"

    def test_parse(self):
        """p/q strings and integers parse exactly."""
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational(" -7 ") == -7

    @pytest.mark.parametrize("text", ["abc", "1/0", ""])
    def test_parse_error(self, text):
        """Malformed rationals raise ParseError."""
        with pytest.raises(ParseError):
            parse_rational(text)


class TestLoadDocument:
    """Test cases for load_document."""

    def test_cell_complex(self):
        """Documents with cells decode to a regular cell complex."""
        text = json.dumps({"top_dim": 0, "cells": [{"id": "a", "dim": 0}, {"id": "b", "dim": 0}]})
        complex_ = load_document(text)
        assert isinstance(complex_, RegularCellComplex)
        assert len(complex_) == 2

    def test_annotated_cell(self):
        """A chi annotation survives decoding."""
        text = json.dumps({"cells": [
            {"id": "v", "dim": 0},
            {"id": "c", "dim": 1, "boundary": ["v"], "chi": 0},
        ]})
        assert load_document(text).by_id["c"].chi == 0

    def test_simplicial(self, octahedron_sphere):
        """Documents with facets decode to a simplicial complex."""
        decoded = load_document(json.dumps(simplicial_to_dict(octahedron_sphere)))
        assert isinstance(decoded, SimplicialComplex)
        assert decoded == octahedron_sphere

    def test_summary(self, hypercube_summary):
        """Summary documents decode with every field."""
        assert load_document(json.dumps(summary_to_dict(hypercube_summary))) == hypercube_summary

    def test_cut(self):
        """Cut documents decode to CutData."""
        text = json.dumps({"kind": "cut", "f0_G": 0, "chiF_G": [0, 0, 0], "haken": True, "label": "closed"})
        assert load_document(text) == CutData(haken=True, label="closed")

    def test_cut_unknown_field(self):
        """Unknown cut fields are rejected."""
        with pytest.raises(ParseError, match="unknown fields"):
            load_document(json.dumps({"kind": "cut", "genus": 2}))

    def test_hierarchy(self, hypercube_summary, cube_cut):
        """Hierarchy documents decode stage by stage."""
        document = to_jsonable(Hierarchy(((hypercube_summary, cube_cut),), (hypercube_summary,)))
        decoded = load_document(json.dumps(document))
        assert decoded.stages[0] == (hypercube_summary, cube_cut)
        assert decoded.terminal == (hypercube_summary,)

    @pytest.mark.parametrize("text", [
        "{not json",
        "[1, 2]",
        '{"kind": "mystery"}',
        '{"kind": "summary"}',
    ])
    def test_malformed(self, text):
        """Broken, non-object, unknown or incomplete documents raise ParseError."""
        with pytest.raises(ParseError):
            load_document(text, source="test.json")

    def test_top_dim_mismatch(self):
        """A declared top_dim must match the cells."""
        with pytest.raises(StructuralError):
            load_document(json.dumps({"top_dim": 2, "cells": [{"id": "a", "dim": 0}]}))

    def test_invariant_violation_propagates(self):
        """A well-formed summary that breaks an invariant is not a parse error."""
        document = {"kind": "summary", "chi_total": 1, "f": [1, 0, 0, 0], "chiF": [2, 0, 0, 0]}
        with pytest.raises(PreconditionViolation):
            load_document(json.dumps(document))


class TestToJsonable:
    """Test cases for to_jsonable and dumps."""

    def test_fractions_are_strings(self):
        """Rationals never become floats."""
        assert to_jsonable({"phi": Fraction(-15, 2)}) == {"phi": "-15/2"}

    def test_sets_sorted(self):
        """Sets become sorted lists."""
        assert to_jsonable(frozenset({3, 1, 2})) == [1, 2, 3]

    def test_report_properties(self):
        """Derived pass flags are included."""
        report = RunReport("phi", {"input": "catalog:I4"}, [Verdict("phi", True, {"value": Fraction(1)})])
        record = to_jsonable(report)
        assert record["all_pass"] is True
        assert record["results"][0]["details"] == {"value": "1"}

    def test_charney_davis_report(self, cross4):
        """Charney-Davis reports carry kappa as a rational and the equivalence flag."""
        record = to_jsonable(charney_davis(cross4))
        assert record["kappa"] == "0"
        assert record["equivalence_holds"] is True
        assert record["f_star"]["counts"] == [8, 24, 32, 16]

    def test_dumps_deterministic(self, hypercube_summary):
        """Equal values always give identical text with sorted keys."""
        first = dumps(hypercube_summary)
        assert first == dumps(ManifoldSummary(**vars(hypercube_summary)))
        assert list(json.loads(first)) == sorted(json.loads(first))

    def test_dumps_indent(self, mock_config, hypercube_summary):
        """Indentation follows output.json_indent."""
        mock_config.get.side_effect = lambda key, default=None: None if key == "output.json_indent" else default
        with patch('services.serialization.config', mock_config):
            assert "\n" not in dumps(hypercube_summary)
