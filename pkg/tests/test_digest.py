import hashlib

from hypothesis import given, strategies as st

from netbench.digest import canonical_json, digest


def test_canonical_json_sorts_keys():
    assert canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}'


def test_canonical_json_is_compact():
    assert canonical_json([1, {"k": [2, 3]}]) == '[1,{"k":[2,3]}]'


def test_digest_is_sha256_of_canonical_text():
    obj = {"x": [1, 2], "y": "z"}
    expected = hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
    assert digest(obj) == expected


def test_digest_key_order_independent():
    assert digest({"a": 1, "b": 2}) == digest({"b": 2, "a": 1})


def test_digest_distinguishes_values():
    assert digest({"a": 1}) != digest({"a": 2})


json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=8),
    lambda children: st.lists(children, max_size=4)
    | st.dictionaries(st.text(max_size=4), children, max_size=4),
    max_leaves=10,
)


@given(json_values)
def test_digest_stable_across_calls(obj):
    assert digest(obj) == digest(obj)
    assert len(digest(obj)) == 64
