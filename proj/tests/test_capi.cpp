#include "doctest.h"

#include "cycalc/cycalc.h"

#include <json.hpp>

#include <string>

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    cycalc_free_string(s);
    return out;
}

}  // namespace

TEST_CASE("C API catalog and resolution") {
    char* s = nullptr;
    REQUIRE(cycalc_catalog(0, 0, &s) == CYCALC_OK);
    auto rows = nlohmann::json::parse(take(s));
    CHECK(rows.size() == 22);
    REQUIRE(cycalc_catalog(2, 7, &s) == CYCALC_OK);
    auto g27 = nlohmann::json::parse(take(s));
    std::vector<int> nums;
    for (const auto& r : g27) nums.push_back(r["number"].get<int>());
    CHECK(nums == std::vector<int>{12, 13, 15, 16});

    REQUIRE(cycalc_resolve("16", "auto", &s) == CYCALC_OK);
    auto job = nlohmann::json::parse(take(s));
    CHECK(job["compute"] == "no12");
    CHECK(job["alias_of"] == 12);
    CHECK(cycalc_resolve("no25", "abelianization", &s) == CYCALC_ERR_PIPELINE);
    CHECK(std::string(cycalc_last_error()).find("not dualizable") != std::string::npos);
    CHECK(cycalc_resolve("no99", "auto", &s) == CYCALC_ERR_NOT_FOUND);
    CHECK(cycalc_resolve("no7", "bogus", &s) == CYCALC_ERR_INVALID);
}

TEST_CASE("C API series and operators") {
    cycalc_series* s = nullptr;
    REQUIRE(cycalc_series_compute("no7", "auto", 3, &s) == CYCALC_OK);
    char* text = nullptr;
    REQUIRE(cycalc_series_to_json(s, &text) == CYCALC_OK);
    auto j = nlohmann::json::parse(take(text));
    CHECK(j["I0"][3] == "8359");
    CHECK(j["I1red"][3] == "64373/2");
    cycalc_series_free(s);

    REQUIRE(cycalc_series_compute("no4", "auto", 40, &s) == CYCALC_OK);
    cycalc_operator* op = nullptr;
    REQUIRE(cycalc_pf_search(s, 4, 12, &op) == CYCALC_OK);
    cycalc_operator* golden = nullptr;
    REQUIRE(cycalc_golden("no4", &golden) == CYCALC_OK);
    int equal = 0;
    REQUIRE(cycalc_operator_equal(op, golden, &equal) == CYCALC_OK);
    CHECK(equal == 1);
    int vanishing = 0, length = 0;
    REQUIRE(cycalc_operator_verify(op, s, &vanishing, &length) == CYCALC_OK);
    CHECK(vanishing == length);
    REQUIRE(cycalc_operator_to_json(op, &text) == CYCALC_OK);
    cycalc_operator* back = nullptr;
    REQUIRE(cycalc_operator_from_json(take(text).c_str(), &back) == CYCALC_OK);
    REQUIRE(cycalc_operator_equal(op, back, &equal) == CYCALC_OK);
    CHECK(equal == 1);
    cycalc_operator_free(back);
    cycalc_operator_free(golden);
    cycalc_operator_free(op);
    cycalc_series_free(s);

    REQUIRE(cycalc_series_compute("no4", "auto", 6, &s) == CYCALC_OK);
    CHECK(cycalc_pf_search(s, 4, 12, &op) == CYCALC_ERR_UNDERDETERMINED);
    cycalc_series_free(s);

    CHECK(cycalc_series_compute("no25", "abelianization", 3, &s) == CYCALC_ERR_PIPELINE);
    CHECK(cycalc_operator_parse("\\theta ^", &op) != CYCALC_OK);
    CHECK(cycalc_series_to_json(nullptr, &text) == CYCALC_ERR_INVALID);
}

TEST_CASE("C API invariants") {
    char* s = nullptr;
    REQUIRE(cycalc_invariants("no22", &s) == CYCALC_OK);
    auto j = nlohmann::json::parse(take(s));
    CHECK(j["computed"] == nlohmann::json({"128", "128", "-128"}));
    CHECK(j["match"] == true);
    const char* bad = R"({"grassmann":[2,5],"summands":[{"carrier":"O","lambda":[],"twist":1}]})";
    CHECK(cycalc_invariants(bad, &s) == CYCALC_ERR_INVARIANT);
    take(s);
}
