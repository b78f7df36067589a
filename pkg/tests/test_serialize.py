import json

import pytest

from rickartlab.finmod import regular
from rickartlab.finring import zmod
from rickartlab.modprops import decide_module_property
from rickartlab.serialize import (SchemaError, module_from_json, module_to_json, ring_from_json,
                                  ring_to_json, to_jsonable, zmodule_from_json, zmodule_to_json)


def roundtrip(doc):
    return json.loads(json.dumps(doc))


def test_ring_roundtrip(corpus):
    for name, R in corpus.rings():
        doc = roundtrip(ring_to_json(R))
        assert ring_from_json(doc) == R, name


def test_constructor_rings_serialize_as_trees(corpus):
    doc = ring_to_json(corpus.get("ring", "m2_z2"))
    assert doc == {"constructor": {"op": "matrix", "args": [{"op": "zmod", "args": [2]}, 2]}}
    assert "tables" in ring_to_json(corpus.get("ring", "t2_z2"))


def test_module_roundtrip(corpus):
    for name, M in corpus.modules():
        back = module_from_json(roundtrip(module_to_json(M)))
        assert back == M, name


def test_zmodule_roundtrip(corpus):
    for name, G in corpus.zmodules():
        assert zmodule_from_json(roundtrip(zmodule_to_json(G))) == G


@pytest.mark.parametrize("doc,field", [
    ({"tables": {"add": [[0]], "mul": [[0]], "zero": 0}}, "one"),
    ({"nothing": 1}, "constructor"),
])
def test_ring_schema_errors_name_the_field(doc, field):
    with pytest.raises(SchemaError, match=field):
        ring_from_json(doc)


def test_module_schema_errors():
    with pytest.raises(SchemaError, match="ring"):
        module_from_json({"cyclic_orders": [2]})
    with pytest.raises(SchemaError, match="cyclic_orders"):
        module_from_json({"ring": "zmod(2)"})
    with pytest.raises(SchemaError, match="rank"):
        zmodule_from_json({"torsion": [2]})


def test_witness_serialization_is_reverifiable():
    """A serialized endomorphism witness can be replayed from its generator images alone."""
    M = regular(zmod(4))
    v = decide_module_property(M, "rickart")
    doc = roundtrip(to_jsonable(v, M))
    assert doc["status"] == "FAILS"
    images = doc["witness"]["endomorphism"]["images"]
    assert images == [[2]]
    kernel = doc["witness"]["kernel"]["members"]
    # recompute the kernel of x -> 2x on Z_4 from the images
    assert sorted(kernel) == sorted([[x] for x in range(4) if (x * images[0][0]) % 4 == 0])
