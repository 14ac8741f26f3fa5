"""rdf-core: terms, JSON-LD subset, N-Quads, append, isomorphism, BGP matching."""

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from easlit.rdf import (
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Dataset,
    Iri,
    JsonLdContext,
    JsonLdError,
    JsonLdParseError,
    JsonLdWarning,
    Literal,
    NQuadsParseError,
    PatternError,
    Quad,
    QuadPattern,
    RdfValueError,
    UnsupportedFeatureError,
    Variable,
    append,
    compact,
    expand,
    isomorphic,
    match_pattern,
    match_single,
    parse_jsonld,
    parse_nquads,
    serialize_jsonld,
    serialize_nquads,
)

from helpers import bindings_as_sets, brute_force_bgp, random_bgp, random_dataset

STEM = "https://vocab.example.org/easlit#stem"
STEM_CTX = JsonLdContext({"stem": STEM})
STEM_DOC = json.dumps(
    {"@context": {"stem": STEM}, "@id": "urn:x:1", "stem": "2+2=?"}
)


class TestTerms:
    def test_iri_requires_scheme(self):
        with pytest.raises(RdfValueError):
            Iri("relative/path")

    def test_blank_label_charset(self):
        with pytest.raises(RdfValueError):
            BlankNode("no spaces")

    def test_language_literal_forces_langstring_datatype(self):
        with pytest.raises(RdfValueError):
            Literal("hi", XSD_STRING, "en")

    def test_literal_subject_rejected(self):
        with pytest.raises(RdfValueError):
            Quad(Literal("x"), Iri("urn:p:1"), Literal("y"))

    def test_blank_predicate_rejected(self):
        with pytest.raises(RdfValueError):
            Quad(Iri("urn:s:1"), BlankNode("b"), Literal("y"))

    def test_dataset_deduplicates(self):
        q = Quad(Iri("urn:s:1"), Iri("urn:p:1"), Literal("y"))
        assert len(Dataset([q, q])) == 1


class TestParseJsonLd:
    def test_single_stem_quad(self):
        # expected quad derived by hand from the JSON-LD expansion algorithm
        ds = parse_jsonld(STEM_DOC)
        assert ds == Dataset([Quad(Iri("urn:x:1"), Iri(STEM), Literal("2+2=?"))])

    def test_empty_document(self):
        assert parse_jsonld("{}") == Dataset()

    def test_graph_with_two_nodes(self):
        doc = json.dumps({
            "@context": {"stem": STEM},
            "@graph": [
                {"@id": "urn:x:1", "stem": "2+2=?"},
                {"@id": "urn:x:2", "stem": "3+3=?"},
            ],
        })
        assert len(parse_jsonld(doc)) == 2

    def test_node_without_id_gets_blank_node(self):
        ds = parse_jsonld(json.dumps({"@context": {"stem": STEM}, "stem": "q"}))
        (quad,) = ds
        assert isinstance(quad.subject, BlankNode)

    def test_relative_iri_resolved_against_base(self):
        ds = parse_jsonld(
            json.dumps({"@context": {"stem": STEM}, "@id": "item/1", "stem": "q"}),
            base="https://a.example.org/",
        )
        (quad,) = ds
        assert quad.subject == Iri("https://a.example.org/item/1")

    def test_malformed_json_reports_offset(self):
        with pytest.raises(JsonLdParseError) as exc:
            parse_jsonld('{"a": }')
        assert exc.value.offset > 0

    def test_reverse_is_unsupported(self):
        with pytest.raises(UnsupportedFeatureError) as exc:
            parse_jsonld('{"@reverse": {}}')
        assert exc.value.keyword == "@reverse"

    def test_remote_context_is_unsupported(self):
        with pytest.raises(UnsupportedFeatureError):
            parse_jsonld('{"@context": "https://ctx.example.org/c.jsonld"}')


class TestExpand:
    def test_short_name_becomes_iri(self):
        expanded = json.loads(expand(STEM_DOC))
        assert expanded == [{"@id": "urn:x:1", STEM: [{"@value": "2+2=?"}]}]

    def test_idempotent(self):
        once = expand(STEM_DOC)
        assert expand(once) == once

    def test_unknown_key_dropped_with_warning(self):
        doc = json.dumps({"@context": {"stem": STEM}, "@id": "urn:x:1", "oops": "v"})
        with pytest.warns(JsonLdWarning, match="oops"):
            expanded = json.loads(expand(doc))
        assert expanded == [{"@id": "urn:x:1"}]

    def test_vocab_fallback(self):
        doc = json.dumps({"@context": {"@vocab": "urn:v:"}, "@id": "urn:x:1", "k": 1})
        assert json.loads(expand(doc)) == [{"@id": "urn:x:1", "urn:v:k": [{"@value": 1}]}]


class TestCompact:
    def test_inverse_of_expand(self):
        compacted = json.loads(compact(expand(STEM_DOC), STEM_CTX))
        assert compacted == json.loads(STEM_DOC)

    def test_empty_context_only_drops_context(self):
        out = json.loads(compact(expand(STEM_DOC), JsonLdContext()))
        assert "@context" not in out
        assert out[STEM] == "2+2=?"

    def test_two_contexts_same_dataset(self):
        expanded = expand(STEM_DOC)
        c1 = compact(expanded, JsonLdContext({"stem": STEM}))
        c2 = compact(expanded, JsonLdContext({"question": STEM}))
        assert json.loads(c1) != json.loads(c2)
        assert isomorphic(parse_jsonld(c1), parse_jsonld(c2))

    def test_ambiguous_context_prefers_smallest_name(self):
        ctx = JsonLdContext({"stem": STEM, "question": STEM})
        with pytest.warns(JsonLdWarning):
            out = json.loads(compact(expand(STEM_DOC), ctx))
        assert "question" in out and "stem" not in out


class TestSerializeJsonLd:
    def test_empty_dataset(self):
        doc = json.loads(serialize_jsonld(Dataset(), STEM_CTX))
        assert doc == {"@context": {"stem": STEM}, "@graph": []}

    def test_one_quad_round_trip(self):
        ds = parse_jsonld(STEM_DOC)
        out = serialize_jsonld(ds, STEM_CTX)
        node = json.loads(out)["@graph"][0]
        assert node == {"@id": "urn:x:1", "stem": "2+2=?"}
        assert isomorphic(parse_jsonld(out), ds)

    def test_blank_subject_uses_blank_prefix(self):
        ds = Dataset([Quad(BlankNode("b0"), Iri(STEM), Literal("q"))])
        node = json.loads(serialize_jsonld(ds, STEM_CTX))["@graph"][0]
        assert node["@id"].startswith("_:")

    def test_deterministic(self):
        rng = random.Random(7)
        ds = random_dataset(rng)
        assert serialize_jsonld(ds, STEM_CTX) == serialize_jsonld(ds, STEM_CTX)


class TestNQuads:
    def test_single_line(self):
        ds = parse_nquads('<urn:x:1> <urn:p> "a" .\n')
        assert ds == Dataset([Quad(Iri("urn:x:1"), Iri("urn:p"), Literal("a"))])

    def test_empty(self):
        assert parse_nquads("") == Dataset()

    def test_malformed_line_number(self):
        with pytest.raises(NQuadsParseError) as exc:
            parse_nquads('<urn:x:1> <urn:p> "a" .\nnot a quad\n')
        assert exc.value.line == 2

    def test_trailing_garbage(self):
        with pytest.raises(NQuadsParseError):
            parse_nquads('<urn:x:1> <urn:p> "a" . extra')

    def test_sorted_output(self):
        ds = parse_nquads('<urn:z> <urn:p> "1" .\n<urn:a> <urn:p> "1" .\n')
        lines = serialize_nquads(ds).splitlines()
        assert lines == sorted(lines)

    def test_random_round_trip(self):
        rng = random.Random(42)
        for _ in range(25):
            ds = random_dataset(rng)
            assert isomorphic(parse_nquads(serialize_nquads(ds)), ds)

    @given(st.text(alphabet='ab"\\\n\r\t|,', max_size=20))
    def test_literal_escaping_round_trip(self, text):
        ds = Dataset([Quad(Iri("urn:s"), Iri("urn:p"), Literal(text))])
        assert parse_nquads(serialize_nquads(ds)) == ds


class TestAppend:
    def test_empty_is_identity(self):
        rng = random.Random(1)
        ds = random_dataset(rng)
        assert isomorphic(append(ds, Dataset()), ds)
        assert isomorphic(append(Dataset(), ds), ds)

    def test_shared_blank_labels_kept_apart(self):
        a = Dataset([Quad(BlankNode("b0"), Iri("urn:p:1"), Literal("x"))])
        b = Dataset([Quad(BlankNode("b0"), Iri("urn:p:2"), Literal("y"))])
        merged = append(a, b)
        assert len(merged) == 2
        assert len(merged.blank_labels()) == 2

    def test_disjoint_sizes_add(self):
        a = Dataset([Quad(Iri("urn:i:1"), Iri("urn:p:1"), Literal("x"))])
        b = Dataset([Quad(Iri("urn:d:1"), Iri("urn:p:2"), Iri("urn:d:2"))])
        assert len(append(a, b)) == len(a) + len(b)

    def test_associative_up_to_isomorphism(self):
        rng = random.Random(5)
        for _ in range(10):
            a, b, c = (random_dataset(rng, max_quads=10) for _ in range(3))
            assert isomorphic(append(append(a, b), c), append(a, append(b, c)))


class TestIsomorphic:
    def test_reflexive(self):
        ds = random_dataset(random.Random(3))
        assert isomorphic(ds, ds)

    def test_blank_rename(self):
        a = Dataset([Quad(BlankNode("a"), Iri("urn:p"), Literal("1"))])
        b = Dataset([Quad(BlankNode("z"), Iri("urn:p"), Literal("1"))])
        assert isomorphic(a, b)

    def test_self_loop_vs_two_blanks(self):
        a = Dataset([Quad(BlankNode("a"), Iri("urn:p"), BlankNode("a"))])
        b = Dataset([Quad(BlankNode("x"), Iri("urn:p"), BlankNode("y"))])
        assert not isomorphic(a, b)

    def test_many_symmetric_blanks_terminate(self):
        p = Iri("urn:p")
        a = Dataset([Quad(BlankNode(f"a{i}"), p, Literal("v")) for i in range(64)])
        b = Dataset([Quad(BlankNode(f"z{i}"), p, Literal("v")) for i in range(64)])
        assert isomorphic(a, b)

    def test_ground_difference(self):
        a = Dataset([Quad(Iri("urn:s"), Iri("urn:p"), Literal("1"))])
        b = Dataset([Quad(Iri("urn:s"), Iri("urn:p"), Literal("2"))])
        assert not isomorphic(a, b)


class TestMatchPattern:
    ds = Dataset([
        Quad(Iri("urn:i:1"), Iri("urn:linksDomain"), Iri("urn:d:A")),
    ])

    def test_two_variables(self):
        out = match_pattern(
            self.ds,
            [QuadPattern(Variable("s"), Iri("urn:linksDomain"), Variable("d"))],
        )
        assert out == [{"s": Iri("urn:i:1"), "d": Iri("urn:d:A")}]

    def test_no_match(self):
        out = match_pattern(
            self.ds,
            [QuadPattern(Variable("s"), Iri("urn:linksDomain"), Iri("urn:d:Z"))],
        )
        assert out == []

    def test_empty_bgp_rejected(self):
        with pytest.raises(PatternError):
            match_pattern(self.ds, [])

    def test_join_agrees_with_brute_force_fixture(self):
        ds = Dataset([
            Quad(Iri("urn:i:1"), Iri("urn:p:a"), Iri("urn:d:A")),
            Quad(Iri("urn:i:1"), Iri("urn:p:b"), Literal("1")),
            Quad(Iri("urn:i:2"), Iri("urn:p:a"), Iri("urn:d:A")),
            Quad(Iri("urn:i:2"), Iri("urn:p:b"), Literal("2")),
            Quad(Iri("urn:i:3"), Iri("urn:p:a"), Iri("urn:d:B")),
        ])
        bgp = [
            QuadPattern(Variable("s"), Iri("urn:p:a"), Iri("urn:d:A")),
            QuadPattern(Variable("s"), Iri("urn:p:b"), Variable("v")),
        ]
        assert bindings_as_sets(match_pattern(ds, bgp)) == bindings_as_sets(
            brute_force_bgp(ds, bgp)
        )

    def test_random_agrees_with_brute_force(self):
        rng = random.Random(11)
        for _ in range(40):
            ds = random_dataset(rng)
            bgp = random_bgp(rng, ds)
            assert bindings_as_sets(match_pattern(ds, bgp)) == bindings_as_sets(
                brute_force_bgp(ds, bgp)
            )

    def test_all_variable_single_pattern_clears(self):
        pattern = QuadPattern(Variable("s"), Variable("p"), Variable("o"), Variable("g"))
        ds = random_dataset(random.Random(2))
        assert len(match_single(ds, pattern)) == len(ds)


class TestRoundTripProperties:
    def test_jsonld_round_trip_random(self):
        rng = random.Random(99)
        ctx = JsonLdContext({"p0": "urn:p:0", "p1": "urn:p:1"})
        for _ in range(25):
            ds = random_dataset(rng)
            assert isomorphic(parse_jsonld(serialize_jsonld(ds, ctx)), ds)

    def test_context_exchange(self):
        contexts = [
            JsonLdContext({"stem": STEM}),
            JsonLdContext({"frage": STEM}),
            JsonLdContext(),
        ]
        expanded = expand(STEM_DOC)
        datasets = [parse_jsonld(compact(expanded, c)) for c in contexts]
        for ds in datasets[1:]:
            assert isomorphic(datasets[0], ds)
