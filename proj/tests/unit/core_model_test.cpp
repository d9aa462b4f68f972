#include <doctest.h>

#include "annogate/core/codebook.hpp"
#include "annogate/core/corpus.hpp"
#include "annogate/core/gold.hpp"
#include "annogate/error.hpp"
#include "annogate/util.hpp"
#include "support.hpp"

using namespace annogate;
using namespace annogate::core;

namespace {

std::vector<TextSample> sample_fixture() {
    return {
        {"s1", "plain text", {{"source", "forum"}}},
        {"s2", "comma, \"quote\", and\nnewline", {}},
        {"s3", "unicode \xc3\xa9\xc3\xa0\xe6\x97\xa5\xe6\x9c\xac", {{"lang", "mixed"}}},
    };
}

}  // namespace

TEST_CASE("corpus jsonl round trip keeps order, text, and metadata") {
    testsup::TempDir tmp;
    auto samples = sample_fixture();
    auto path = tmp.path / "corpus.jsonl";
    write_corpus(path, samples, CorpusFormat::jsonl);
    auto loaded = load_corpus(path, CorpusFormat::jsonl);
    CHECK(loaded == samples);
}

TEST_CASE("corpus csv round trip survives quoting") {
    testsup::TempDir tmp;
    auto samples = sample_fixture();
    auto path = tmp.path / "corpus.csv";
    write_corpus(path, samples, CorpusFormat::csv);
    auto loaded = load_corpus(path, CorpusFormat::csv);
    REQUIRE(loaded.size() == samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        CHECK(loaded[i].id == samples[i].id);
        CHECK(loaded[i].text == samples[i].text);
    }
    // csv serialization unions metadata keys, so absent cells come back empty
    CHECK(loaded[0].metadata.at("source") == "forum");
    CHECK(loaded[2].metadata.at("lang") == "mixed");
}

TEST_CASE("corpus loader rejects bad input") {
    testsup::TempDir tmp;
    auto path = tmp.path / "corpus.jsonl";

    SUBCASE("duplicate id") {
        write_file(path, R"({"id":"a","text":"x"})" "\n" R"({"id":"a","text":"y"})" "\n");
        CHECK_THROWS_WITH_AS(load_corpus(path, CorpusFormat::jsonl), doctest::Contains("a"), Error);
    }
    SUBCASE("empty text") {
        write_file(path, R"({"id":"a","text":"  "})" "\n");
        CHECK_THROWS_AS(load_corpus(path, CorpusFormat::jsonl), Error);
    }
    SUBCASE("missing id") {
        write_file(path, R"({"text":"x"})" "\n");
        CHECK_THROWS_AS(load_corpus(path, CorpusFormat::jsonl), Error);
    }
    SUBCASE("not json") {
        write_file(path, "not json\n");
        CHECK_THROWS_AS(load_corpus(path, CorpusFormat::jsonl), Error);
    }
    SUBCASE("empty file") {
        write_file(path, "");
        CHECK_THROWS_AS(load_corpus(path, CorpusFormat::jsonl), Error);
    }
    SUBCASE("blank lines are skipped, not errors") {
        write_file(path, "\n" R"({"id":"a","text":"x"})" "\n\n");
        CHECK(load_corpus(path, CorpusFormat::jsonl).size() == 1);
    }
}

TEST_CASE("corpus format names") {
    CHECK(corpus_format_from_string("jsonl") == CorpusFormat::jsonl);
    CHECK(corpus_format_from_string("csv") == CorpusFormat::csv);
    CHECK_THROWS_AS(corpus_format_from_string("tsv"), Error);
}

TEST_CASE("codebook serialize then parse is identity") {
    auto cb = testsup::make_codebook({"relevance", "tone"}, 2);
    cb.preamble = "Line one.\n\nLine three after a blank.";
    auto parsed = parse_codebook(serialize_codebook(cb));
    CHECK(parsed == cb);
}

TEST_CASE("codebook parser details") {
    SUBCASE("dimension without a display name falls back to the key") {
        auto cb = parse_codebook(
            "codebook_id: x\nversion: 1\n\n## DIMENSION foo\nBody.\n\n## OUTPUT\nContract.\n");
        REQUIRE(cb.dimensions.size() == 1);
        CHECK(cb.dimensions[0].key == "foo");
        CHECK(cb.dimensions[0].name == "foo");
    }
    SUBCASE("missing OUTPUT section") {
        CHECK_THROWS_AS(
            parse_codebook("codebook_id: x\nversion: 1\n\n## DIMENSION a\nBody.\n"), Error);
    }
    SUBCASE("no dimensions") {
        CHECK_THROWS_AS(parse_codebook("codebook_id: x\nversion: 1\n\n## OUTPUT\nC.\n"), Error);
    }
    SUBCASE("duplicate dimension keys") {
        CHECK_THROWS_AS(parse_codebook("codebook_id: x\nversion: 1\n\n## DIMENSION a\nB.\n"
                                       "\n## DIMENSION a\nB.\n\n## OUTPUT\nC.\n"),
                        Error);
    }
    SUBCASE("version 2 must name a parent") {
        CHECK_THROWS_AS(
            parse_codebook("codebook_id: x\nversion: 2\n\n## DIMENSION a\nB.\n\n## OUTPUT\nC.\n"),
            Error);
    }
    SUBCASE("version 1 cannot name a parent") {
        CHECK_THROWS_AS(parse_codebook("codebook_id: x\nversion: 1\nparent_version: 1\n"
                                       "\n## DIMENSION a\nB.\n\n## OUTPUT\nC.\n"),
                        Error);
    }
    SUBCASE("parent must be older") {
        CHECK_THROWS_AS(parse_codebook("codebook_id: x\nversion: 2\nparent_version: 2\n"
                                       "\n## DIMENSION a\nB.\n\n## OUTPUT\nC.\n"),
                        Error);
    }
    SUBCASE("unknown section") {
        CHECK_THROWS_AS(parse_codebook("codebook_id: x\nversion: 1\n\n## NOTES\nB.\n"
                                       "\n## OUTPUT\nC.\n"),
                        Error);
    }
    SUBCASE("unknown header key") {
        CHECK_THROWS_AS(parse_codebook("codebook_id: x\nversion: 1\nauthor: me\n"
                                       "\n## DIMENSION a\nB.\n\n## OUTPUT\nC.\n"),
                        Error);
    }
}

TEST_CASE("gold csv serialize then parse is identity") {
    auto cb = testsup::make_codebook({"a", "b"});
    std::vector<GoldRecord> records = {
        testsup::gold_record("s1", {{"a", 1}, {"b", 0}}),
        testsup::gold_record("s2", {{"a", 0}, {"b", 0}}),
    };
    records[0].annotator_ids = {"ann1", "ann2"};
    auto parsed = parse_gold_csv(serialize_gold_csv(records, cb), cb);
    CHECK(parsed == records);
}

TEST_CASE("gold csv tolerates extra columns and rejects bad labels") {
    auto cb = testsup::make_codebook({"a"});

    SUBCASE("extra columns are ignored") {
        auto records = parse_gold_csv("sample_id,a,notes\ns1,1,whatever\n", cb);
        REQUIRE(records.size() == 1);
        CHECK(records[0].labels.at("a") == Label::positive);
    }
    SUBCASE("missing dimension column") {
        CHECK_THROWS_WITH_AS(parse_gold_csv("sample_id,notes\ns1,x\n", cb),
                             doctest::Contains("a"), Error);
    }
    SUBCASE("non-binary cell") {
        CHECK_THROWS_AS(parse_gold_csv("sample_id,a\ns1,2\n", cb), Error);
    }
    SUBCASE("empty cell") {
        CHECK_THROWS_AS(parse_gold_csv("sample_id,a\ns1,\n", cb), Error);
    }
    SUBCASE("duplicate sample rows") {
        CHECK_THROWS_AS(parse_gold_csv("sample_id,a\ns1,1\ns1,0\n", cb), Error);
    }
    SUBCASE("missing sample_id column") {
        CHECK_THROWS_AS(parse_gold_csv("id,a\ns1,1\n", cb), Error);
    }
}

TEST_CASE("join_gold rejects gold rows outside the corpus") {
    testsup::TempDir tmp;
    auto cb = testsup::make_codebook({"a"});
    auto gold_path = tmp.path / "gold.csv";
    write_file(gold_path, "sample_id,a\nghost,1\n");
    std::vector<TextSample> corpus = {{"s1", "text", {}}};
    CHECK_THROWS_WITH_AS(join_gold(corpus, gold_path, cb), doctest::Contains("ghost"), Error);
}

TEST_CASE("error classes map to their exit codes") {
    CHECK(Error(Errc::config_invalid, "x").exit_code() == 1);
    CHECK(Error(Errc::malformed_row, "x").exit_code() == 2);
    CHECK(Error(Errc::endpoint_error, "x").exit_code() == 3);
    CHECK(Error(Errc::holdout_leak, "x").exit_code() == 4);
    CHECK(std::string(Error(Errc::auth_error, "denied").what()) == "AuthError: denied");
}

TEST_CASE("rational arithmetic stays exact") {
    Rational a(5, 7), b(2, 7);
    CHECK(a + b == Rational(1, 1));
    CHECK(a - b == Rational(3, 7));
    CHECK(a * b == Rational(10, 49));
    CHECK(a / b == Rational(5, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2) < Rational(0, 1));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(a / Rational(0, 1), std::domain_error);
}

TEST_CASE("rational decimal rendering rounds half away from zero") {
    CHECK(Rational(5, 7).decimals(6) == "0.714286");
    CHECK(Rational(2, 3).decimals(3) == "0.667");
    CHECK(Rational(1, 2).decimals(0) == "1");
    CHECK(Rational(-1, 2).decimals(0) == "-1");
    CHECK(Rational(1, 8).decimals(2) == "0.13");
    CHECK(Rational(1, 1).decimals(3) == "1.000");
    CHECK(Rational(0, 5).decimals(3) == "0.000");
}

TEST_CASE("rational from_decimal parses exactly") {
    CHECK(Rational::from_decimal("0.75") == Rational(3, 4));
    CHECK(Rational::from_decimal(".5") == Rational(1, 2));
    CHECK(Rational::from_decimal("-1") == Rational(-1, 1));
    CHECK(Rational::from_decimal("1.0") == Rational(1, 1));
    CHECK_THROWS_AS(Rational::from_decimal("abc"), std::domain_error);
    CHECK_THROWS_AS(Rational::from_decimal("1e-3"), std::domain_error);
    CHECK_THROWS_AS(Rational::from_decimal(""), std::domain_error);
}

TEST_CASE("csv parser handles quoting, embedded newlines, and crlf") {
    auto rows = csv_parse("a,b\n\"x,y\",\"he said \"\"hi\"\"\"\r\n\"multi\nline\",z\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "x,y");
    CHECK(rows[1][1] == "he said \"hi\"");
    CHECK(rows[2][0] == "multi\nline");
    CHECK(rows[2][1] == "z");
    CHECK(csv_join({"x,y", "he said \"hi\""}) == "\"x,y\",\"he said \"\"hi\"\"\"");
}
