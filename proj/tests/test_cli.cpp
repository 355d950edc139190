// SPDX-License-Identifier: Apache-2.0
#include "dw/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

using namespace dw;
using namespace dw::cli;

namespace {

const std::filesystem::path kProblems = DW_PROBLEMS_DIR;

Json read(const std::string& name) {
    std::ifstream in(kProblems / name);
    return Json::parse(in);
}

std::vector<std::string> corpus() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(kProblems)) {
        const auto name = e.path().filename().string();
        if (e.path().extension() == ".json" && name != "malformed.json" && name.rfind("bad_", 0) != 0)
            out.push_back(name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string pointer_of(const Json& doc) {
    try {
        (void)load_problem(doc);
    } catch (const SchemaError& e) {
        return e.pointer;
    }
    return "<none>";
}

} // namespace

TEST(CliLoad, SchemaErrorsCarryPointers) {
    EXPECT_EQ(pointer_of(read("bad_letter.adc.json")), "/automaton/transitions/0/1");
    EXPECT_EQ(pointer_of(Json::array()), "");
    EXPECT_EQ(pointer_of(Json{{"alphabet", {"a"}}, {"mode", "adc"}}), "");
    EXPECT_EQ(pointer_of(Json{{"alphabet", {"a", "a"}}}), "/alphabet/1");
    EXPECT_EQ(pointer_of(Json{{"alphabet", {"a"}}, {"mode", "nope"}}), "/mode");
    EXPECT_EQ(pointer_of(Json{{"alphabet", {"a"}}, {"formula", "a &"}}), "/formula");
    EXPECT_EQ(pointer_of(Json{{"alphabet", {"a"}}, {"formula", "b"}}), "/formula");
    Json bad_state = read("key_a.adc.json");
    bad_state["automaton"]["initial"] = 4;
    EXPECT_EQ(pointer_of(bad_state), "/automaton/initial");
    Json bad_kind = read("key_a.adc.json");
    bad_kind["constraints"][0]["kind"] = "unique";
    EXPECT_EQ(pointer_of(bad_kind), "/constraints/0/kind");
    Json extra = read("distinct_values.ltl.json");
    extra["automaton"] = read("key_a.adc.json")["automaton"];
    EXPECT_EQ(pointer_of(extra), "/automaton");
    Json bad_var = read("even_a.presburger.json");
    bad_var["presburger"]["formula"]["and"][0]["rhs"][0] = "z";
    EXPECT_EQ(pointer_of(bad_var), "/presburger/formula/and/0/rhs/0");
}

TEST(CliLoad, SaveLoadRoundTrip) {
    for (const auto& name : corpus()) {
        auto p = load_problem(read(name));
        auto doc = save_problem(p);
        auto q = load_problem(doc);
        EXPECT_EQ(save_problem(q), doc) << name;
    }
}

TEST(CliCheck, ExampleVerdicts) {
    const std::vector<std::pair<const char*, int>> expected{
        {"distinct_values.ltl.json", 0},       {"every_value_twice.ltl.json", 0},
        {"weak_unsat.ltl.json", 1},     {"inclusion_unsat.adc.json", 1},
        {"key_a.adc.json", 0},          {"universal_incl_denial.adc.json", 0},
        {"universal.profile-adc.json", 0}, {"all_same_key.profile-adc.json", 1},
        {"all_diff.profile-adc.json", 0},  {"even_a.presburger.json", 0},
        {"odd_conflict.presburger.json", 1}};
    for (const auto& [name, code] : expected) {
        auto out = cmd_check(load_problem(read(name)), {});
        EXPECT_EQ(out.exitCode, code) << name;
    }
}

TEST(CliCheck, ReportsCarryVerificationAndStats) {
    for (const auto& name : corpus()) {
        auto out = cmd_check(load_problem(read(name)), {});
        const auto& r = out.report;
        ASSERT_TRUE(r.contains("verdict")) << name;
        EXPECT_TRUE(r.contains("stats")) << name;
        EXPECT_TRUE(r.contains("timeMs")) << name;
        if (out.exitCode != 0)
            continue;
        if (r.contains("verification")) {
            const auto& v = r["verification"];
            if (v.contains("ok"))
                EXPECT_TRUE(v["ok"].get<bool>()) << name;
            else
                EXPECT_TRUE(v["nfaAccepts"].get<bool>() && v["formulaHolds"].get<bool>()) << name;
        } else {
            EXPECT_TRUE(r["replayOk"].get<bool>()) << name;
        }
    }
}

TEST(CliWitness, KeyGivesDistinctValues) {
    RunOptions o;
    o.unroll = 5;
    auto out = cmd_witness(load_problem(read("key_a.adc.json")), o);
    ASSERT_EQ(out.exitCode, 0);
    const auto& pre = out.report["prefix"];
    ASSERT_EQ(pre.size(), 5u);
    std::set<std::uint64_t> values;
    for (const auto& l : pre)
        values.insert(l[1].get<std::uint64_t>());
    EXPECT_EQ(values.size(), 5u);
    EXPECT_TRUE(out.report["verification"]["ok"].get<bool>());
}

TEST(CliWitness, UnconstrainedUnrollsAnAcceptedLasso) {
    auto p = load_problem(read("no_constraints.adc.json"));
    auto out = cmd_witness(p, {});
    ASSERT_EQ(out.exitCode, 0);
    EXPECT_TRUE(out.report["verification"]["runAccepted"].get<bool>());
    EXPECT_EQ(out.report["prefix"][0][0], "a");
}

TEST(CliWitness, EmptyInstanceExplains) {
    auto out = cmd_witness(load_problem(read("inclusion_unsat.adc.json")), {});
    EXPECT_EQ(out.exitCode, 1);
    EXPECT_TRUE(out.report.contains("error"));
    EXPECT_FALSE(out.report.contains("prefix"));
}

TEST(CliWitness, LtlUnrollLength) {
    RunOptions o;
    o.unroll = 12;
    auto out = cmd_witness(load_problem(read("distinct_values.ltl.json")), o);
    ASSERT_EQ(out.exitCode, 0);
    EXPECT_EQ(out.report["prefix"].size(), 12u);
}

TEST(CliTranslate, NormalFormText) {
    auto doc = cmd_translate(load_problem(read("distinct_values.ltl.json")), Target::NormalForm);
    EXPECT_EQ(doc["formula"], "(G (!a | !Ds a) & G F a)");
    EXPECT_EQ(doc["mode"], "ltl");
}

TEST(CliTranslate, ZonalConstraintsGolden) {
    // key(a), inclusion(a,{b}) and denial(a,b) over {a, b}
    Json src = {{"mode", "profile-adc"},
                {"alphabet", {"a", "b"}},
                {"automaton", read("universal.profile-adc.json")["automaton"]},
                {"constraints",
                 {{{"kind", "key"}, {"letter", "a"}},
                  {{"kind", "inclusion"}, {"letter", "a"}, {"targets", {"b"}}},
                  {{"kind", "denial"}, {"letters", {"a", "b"}}}}}};
    auto doc = cmd_translate(load_problem(src), Target::Zonal);
    // every set letter meeting a inherits each constraint; repeated denials are merged
    const Json golden = Json::parse(R"([
        {"kind": "key", "letter": "{a}"},
        {"kind": "key", "letter": "{a,b}"},
        {"kind": "denial", "letters": ["{a}", "{a,b}"]},
        {"kind": "inclusion", "letter": "{a}", "targets": ["{b}", "{a,b}"]},
        {"kind": "inclusion", "letter": "{a,b}", "targets": ["{b}", "{a,b}"]},
        {"kind": "denial", "letters": ["{a}", "{b}"]},
        {"kind": "denial", "letters": ["{b}", "{a,b}"]},
        {"kind": "denial", "letters": ["{a,b}", "{a,b}"]}
    ])");
    EXPECT_EQ(doc["mode"], "zonal");
    EXPECT_EQ(doc["constraints"], golden) << doc["constraints"].dump();
}

TEST(CliTranslate, FragmentMismatch) {
    EXPECT_THROW((void)cmd_translate(load_problem(read("key_a.adc.json")), Target::NormalForm), TranslateError);
    EXPECT_THROW((void)cmd_translate(load_problem(read("key_a.adc.json")), Target::Zonal), TranslateError);
    EXPECT_THROW((void)cmd_translate(load_problem(read("weak_sat.ltl.json")), Target::Zonal), TranslateError);
}

TEST(CliTranslate, RoundTripKeepsVerdicts) {
    std::size_t translated = 0;
    for (const auto& name : corpus()) {
        auto p = load_problem(read(name));
        const int code = cmd_check(p, {}).exitCode;
        for (Target t : {Target::Adc, Target::Zonal, Target::NormalForm}) {
            Json doc;
            try {
                doc = cmd_translate(p, t);
            } catch (const TranslateError&) {
                continue;
            }
            ++translated;
            auto q = load_problem(Json::parse(doc.dump()));
            EXPECT_EQ(cmd_check(q, {}).exitCode, code) << name << " target " << static_cast<int>(t);
        }
    }
    EXPECT_GE(translated, 12u);
}

TEST(CliReport, Deterministic) {
    for (const auto& name : corpus()) {
        auto p = load_problem(read(name));
        auto a = cmd_witness(p, {}).report, b = cmd_witness(p, {}).report;
        EXPECT_EQ(without_timing(a).dump(), without_timing(b).dump()) << name;
        EXPECT_FALSE(without_timing(a).contains("timeMs"));
    }
}
