#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hkbase/io.hpp"

using namespace hkbase;

namespace {

std::string data(const std::string& name) { return std::string(HKBASE_TEST_DATA) + "/" + name; }

std::string input_error(const json& doc)
{
    try {
        parse_config_document(doc);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

json chain_doc()
{
    return json::parse(R"({"n": 2, "basis": ["M", "B1", "B2"],
        "gram": [[0, 2, 0], [2, -4, 2], [0, 2, -2]], "mobile": 0,
        "components": [{"index": 1}, {"index": 2}], "m_primitive": "yes"})");
}

} // namespace

TEST_CASE("documents load")
{
    const auto bm = load_config_document(data("bm.json"));
    CHECK(bm.component_count() == 1);
    CHECK(bm.m_primitive() == Primitivity::no);
    REQUIRE(bm.rr().has_value());
    CHECK(*bm.rr() == k3n_preset(2));
    CHECK(classify(bm) == ClassificationResult{PrimeFixed{-2}});

    const auto chain = load_config_document(data("chain.json"));
    CHECK(chain.gram() == chain_gram(1, -4, -2));
    CHECK(chain.labels() == std::vector<std::string>{"M", "B1", "B2"});

    CHECK_THROWS_AS(load_config_document(data("nonsymmetric.json")), InputError);
    CHECK_THROWS_AS(load_config_document(data("missing.json")), InputError);
}

TEST_CASE("basis order is taken from the document")
{
    auto doc = json::parse(R"({"n": 2, "basis": ["B2", "M", "B1"],
        "gram": [[-2, 0, 2], [0, 0, 2], [2, 2, -4]], "mobile": 1,
        "components": [{"index": 2}, {"index": 0}], "m_primitive": true})");
    const auto c = parse_config_document(doc);
    CHECK(c.gram() == chain_gram(1, -4, -2));
    CHECK(c.m_primitive() == Primitivity::yes);
    CHECK(c.labels() == std::vector<std::string>{"M", "B1", "B2"});
}

TEST_CASE("half-integral entries in general mode")
{
    auto doc = json::parse(R"({"n": 2, "mode": "general",
        "gram": [[0, "1/2"], ["1/2", -1]], "mobile": 0, "components": [{"index": 1}]})");
    const auto c = parse_config_document(doc);
    CHECK(c.gram().at(0, 1) == Rational(1, 2));
    CHECK(c.m_primitive() == Primitivity::unknown);
    doc["mode"] = "even";
    CHECK(input_error(doc).find("/gram") == 0);
}

TEST_CASE("diagnostics name the offending field")
{
    auto doc = chain_doc();
    doc["colour"] = "red";
    CHECK(input_error(doc).find("colour") != std::string::npos);

    doc = chain_doc();
    doc["components"][1]["weight"] = 2;
    CHECK(input_error(doc).find("/components/1") != std::string::npos);

    doc = chain_doc();
    doc["gram"][2][1] = "two";
    CHECK(input_error(doc).find("/gram/2/1") != std::string::npos);

    doc = chain_doc();
    doc["components"][1]["index"] = 1;
    CHECK(input_error(doc).find("/components/1/index") != std::string::npos);

    doc = chain_doc();
    doc["m_primitive"] = "maybe";
    CHECK(input_error(doc).find("/m_primitive") != std::string::npos);

    doc = chain_doc();
    doc.erase("mobile");
    CHECK(input_error(doc).find("mobile") != std::string::npos);

    doc = chain_doc();
    doc["rr"] = {{"coefficients", {4, 1, 1}}};
    CHECK(input_error(doc).find("/rr") != std::string::npos);

    doc = chain_doc();
    doc["rr"] = {{"preset", "k3n"}, {"n", 3}};
    CHECK_FALSE(input_error(doc).empty());
}

TEST_CASE("classification report")
{
    const auto chain = load_config_document(data("chain.json"));
    const auto report = classification_report(chain);
    CHECK(report.at("classification").at("class") == "Chain");
    CHECK(report.at("classification").at("d") == "-4");
    CHECK(report.at("certificate").is_array());
    CHECK_FALSE(report.contains("branches"));
    CHECK(dump(report) == dump(classification_report(chain)));

    const auto unknown = chain.with_primitivity(Primitivity::unknown);
    const auto both = classification_report(unknown);
    REQUIRE(both.contains("branches"));
    CHECK(both.at("branches").size() == 2);

    const auto bm = classification_report(load_config_document(data("bm.json")));
    CHECK(bm.at("classification").at("class") == "PrimeFixed");
    CHECK(bm.at("classification").at("qB") == "-2");
}

TEST_CASE("survivor CSV")
{
    SearchBounds b;
    b.max_components = 2;
    b.entry_bound = 2;
    b.square_min = -4;
    b.threads = 1;
    const auto report = enumerate(b);
    std::ostringstream out;
    write_survivor_csv(out, report);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "gram,mults,class,k,d,q_last");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
    }
    CHECK(rows == report.survivors.size());
    CHECK(out.str().find("0;2;2;-4;2;-2;0;2;-2") == std::string::npos);
    const auto summary = enumeration_summary(report, b);
    CHECK(summary.at("counterexamples").empty());
    CHECK(summary.at("bounds").at("entry_bound") == 2);
}
