"""CSV / JSON artifact store."""

import json

import pytest

from adaregret.schemas import CriterionResult
from adaregret.storage import ArtifactStore, format_cell, format_float, format_vector


def test_format_float_round_trips():
    assert format_float(0.1) == "0.10000000000000001"
    assert float(format_float(1 / 3)) == 1 / 3
    assert format_float(float("nan")) == "nan"
    assert format_float(2.0, precision=3) == "2"


@pytest.mark.parametrize("value, expected", [(None, ""), (True, "1"), (False, "0"), (7, "7"), ("x", "x"), (0.5, "0.5")])
def test_format_cell(value, expected):
    assert format_cell(value) == expected


def test_format_vector():
    assert format_vector([0.5, -1.0]) == "0.5;-1"


class TestArtifactStore:
    async def test_write_csv(self, tmp_path):
        store = ArtifactStore(tmp_path / "out")
        path = await store.write_csv("t.csv", ("a", "b"), [[1, 0.25], [2, None]])
        assert path.endswith("t.csv")
        assert await store.read_text("t.csv") == "a,b\n1,0.25\n2,\n"

    async def test_row_width(self, tmp_path):
        store = ArtifactStore(tmp_path)
        with pytest.raises(ValueError):
            await store.write_csv("bad.csv", ("a", "b"), [[1]])

    async def test_write_json(self, tmp_path):
        store = ArtifactStore(tmp_path)
        result = CriterionResult(name="c", description="d", passed=True, metrics={"runs": 3.0})
        await store.write_json("r.json", result)
        data = json.loads((tmp_path / "r.json").read_text(encoding="utf-8"))
        assert data["passed"] is True
        assert data["metrics"] == {"runs": 3.0}
