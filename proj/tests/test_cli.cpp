#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "hermackey/cli/runner.hpp"

using namespace hermackey;
using namespace hermackey::cli;

namespace {

std::string s3_table_doc() {
    FinGroup g = symmetric_group_3();
    Json j = to_json(g);
    j["name"] = "S3";
    return j.dump();
}

std::string read_sample() {
    std::ifstream in(std::string(HERMACKEY_SOURCE_DIR) + "/samples/tasks.json");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<TaskReport> run_all(const Problem& p, const Defaults& d = {}) {
    std::vector<TaskReport> out;
    for (const auto& t : p.tasks) out.push_back(run_task(t, p.registry, d));
    return out;
}

TaskReport run_one(const std::string& doc, const Registry& reg = {}) {
    const Json j = parse_json_text(doc);
    return run_task(parse_task(Node(j, "$")), reg, {});
}

}  // namespace

TEST_CASE("a burnside_mod builder declaration gives burnside_mod(3)") {
    Problem p = parse_input(R"({"kind":"mackey","name":"A3","builder":"burnside_mod","m":3})");
    HermMackey h = p.registry.mackey("A3");
    CHECK(h.same_structure(burnside_mod(3)));
    CHECK(h.name() == "A3");
}

TEST_CASE("a 36-entry table declares S3") {
    Json doc = parse_json_text(s3_table_doc());
    REQUIRE(doc["table"].size() == 6);
    // Flattened tables are accepted as well.
    Json flat = Json::array();
    for (const auto& row : doc["table"])
        for (const auto& v : row) flat.push_back(v);
    doc["table"] = flat;
    REQUIRE(flat.size() == 36);
    Problem p = parse_problem(doc);
    FinGroup g = p.registry.group("S3");
    CHECK(g == symmetric_group_3());
    CHECK(involution_classes(g).size() == 2);
}

TEST_CASE("groups from generating permutations") {
    Problem p = parse_input(R"({"kind":"group","name":"D4","generators":[[1,2,3,0],[3,2,1,0]]})");
    FinGroup g = p.registry.group("D4");
    CHECK(g.order() == 8);
    CHECK(!g.is_abelian());
    CHECK(involution_classes(g).size() == 4);
}

TEST_CASE("a non-associative table is a validation error") {
    CHECK_THROWS_AS(parse_input(R"({"kind":"group","name":"bad","table":[[0,1],[0,0]]})"), ValidationError);
    CHECK_THROWS_AS(parse_input(R"({"kind":"monoid","name":"bad","table":[1,0,0,0],"involution":[0,1]})"),
                    ValidationError);
}

TEST_CASE("constructor invariants surface as validation errors") {
    // w = id on S3 is not an anti-involution.
    CHECK_THROWS_AS(parse_input(R"({"kind":"monoid","name":"m","group":"S3","involution":[0,1,2,3,4,5]})"),
                    ValidationError);
    // x -> -x on Z/3 moves the unit.
    CHECK_THROWS_AS(parse_input(R"({"kind":"ring","name":"r","orders":[3],"structure":[1],"one":[1],"involution":[[2]]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_input(R"({"kind":"ring","name":"r","orders":[3],"structure":[1],"one":[1,0]})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"kind":"ring","name":"r","orders":[4],"structure":[1],"one":[2]})"), ValidationError);
    // tr must be a homomorphism of the stated levels.
    CHECK_THROWS_AS(parse_input(R"({"kind":"mackey","name":"x","under":[3],"fix":[2],"w":[[1]],"res":[[1]],"tr":[[1]],
                                    "ring":"Z/3","action":[[[1]],[[1]],[[1]]]})"),
                    ValidationError);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_input("{\n  \"kind\": \"group\",\n  \"name\" \"S3\"\n}");
        FAIL("no exception");
    } catch (const ParseError& e) {
        // Reported where the unexpected string ends.
        CHECK(e.line == 3);
        CHECK(e.column == 13);
    }
}

TEST_CASE("structural errors carry the JSON path") {
    try {
        parse_input(R"({"declarations":[{"kind":"group","name":"g","table":[0]},{"kind":"ring","name":"r"}]})");
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(e.line == 0);
        CHECK(e.path == "$.declarations[1]");
        CHECK(std::string(e.what()).find("orders") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_input(R"({"tasks":[{"command":"frobnicate"}]})"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"decls":[]})"), ParseError);
}

TEST_CASE("references must resolve") {
    CHECK_THROWS_AS(parse_input(R"({"kind":"morphism","name":"f","source":"nowhere","target":"U3","under":[[1]],"fix":[[1]]})"),
                    ValidationError);
    CHECK_THROWS(parse_input(R"([{"kind":"group","name":"g","catalog":"Z2"},{"kind":"ring","name":"g","builder":"zmod","m":3}])"));
    Problem p = parse_input(R"([{"kind":"mackey","name":"A3","builder":"burnside_mod","m":3},
                                {"kind":"morphism","name":"d","builder":"rank","m":3,"source":"A3"}])");
    CHECK(p.registry.morphism("d").source.name() == "A3");
    CHECK_THROWS_AS(parse_input(R"([{"kind":"mackey","name":"A5","builder":"burnside_mod","m":5},
                                    {"kind":"morphism","name":"d","builder":"rank","m":3,"source":"A5"}])"),
                    ParseError);
}

TEST_CASE("round trip: groups, rings, Mackey and Tambara functors, morphisms, monoids") {
    Registry reg;
    for (const auto& n : catalog_group_names()) {
        FinGroup g = catalog_group(n);
        FinGroup back = parse_group(Node(to_json(g), "$"), reg);
        CHECK(back == g);
        CHECK(back.labels() == g.labels());
    }
    for (const auto& n : catalog_ring_names()) {
        FinRingInv r = catalog_ring(n);
        CHECK(parse_ring(Node(to_json(r), "$"), reg) == r);
    }
    for (const auto& n : {"U3", "A3", "A5", "UM2", "M2(U3)", "U3[Z2]", "A3[S3]"}) {
        HermMackey h = catalog_mackey(n);
        Json j = to_json(h);
        HermMackey back = parse_mackey(Node(j, "$"), reg);
        CHECK(back.same_structure(h));
        CHECK(back.fix_unit() == h.fix_unit());
        CHECK(back.name() == h.name());
        // Serializing twice gives the same document.
        CHECK(to_json(back).dump() == j.dump());
    }
    for (Int m : {3, 5}) {
        TambaraDecl t{"T", burnside_tambara(m)};
        TambaraDecl back = parse_tambara(Node(to_json(t), "$"), reg);
        CHECK(same_tambara(*back.tambara, *t.tambara));
    }
    {
        Registry r2;
        HermMorphism d = rank_map_trivial(3);
        r2.add(d.source.name(), d.source);
        r2.add(d.target.name(), d.target);
        HermMorphism back = parse_morphism(Node(to_json(d), "$"), r2);
        CHECK(same_morphism(back, d));
        CHECK(back.source.same_structure(d.source));
        CHECK(back.target.same_structure(d.target));
    }
    for (const auto& m : catalog_monoids()) {
        MonoidAI back = parse_monoid(Node(to_json(m), "$"), reg);
        CHECK(back == m);
    }
}

TEST_CASE("the witt0 command prints the group with its stability flag") {
    TaskReport r = run_one(R"({"command":"witt0","mackey":"U3","dim_bound":4})");
    REQUIRE(r.status() == Status::pass);
    REQUIRE(!r.lines.empty());
    CHECK(r.lines[0] == "W0 = Z/4 (stable)");
    CHECK(r.echo == "witt0 --mackey U3 --dim-bound 4");
    CHECK(r.results["W0"]["group"] == "Z/4");
    CHECK(r.results["W0"]["stable"] == true);

    TaskReport t = run_one(R"({"command":"witt0","mackey":"U3","dim_bound":1})");
    CHECK(t.lines[0] == "W0 = Z^2 (truncated, no stability claim)");
    CHECK(!t.results["W0"].contains("stable"));
}

TEST_CASE("involution-classes lists one row per class") {
    TaskReport r = run_one(R"({"command":"involution-classes","group":"S3"})");
    REQUIRE(r.results["classes"].size() == 2);
    CHECK(r.results["classes"][0]["representative"] == "e");
    CHECK(r.results["classes"][0]["class_size"] == 1);
    CHECK(r.results["classes"][1]["representative"] == "(12)");
    CHECK(r.results["classes"][1]["class_size"] == 3);
    CHECK(r.results["classes"][1]["centralizer"].size() == 2);
}

TEST_CASE("check-axioms on A3 passes every check") {
    TaskReport r = run_one(R"({"command":"check-axioms","mackey":"A3"})");
    CHECK(r.status() == Status::pass);
    CHECK(r.checks.size() > 10);
}

TEST_CASE("a failing check makes the task FAIL with a witness") {
    // A map Z/3 -> Z/3 that is additive but does not preserve the action.
    Problem p = parse_input(R"([{"kind":"mackey","name":"U","builder":"underline","ring":"Z/3"},
                                {"kind":"morphism","name":"two","source":"U","target":"U","under":[[2]],"fix":[[2]]}])");
    TaskReport r = run_task(parse_task(Node(parse_json_text(R"({"command":"check-axioms","morphism":"two"})"), "$")),
                            p.registry, {});
    CHECK(r.status() == Status::fail);
    bool witnessed = false;
    for (const auto& c : r.checks) witnessed = witnessed || (!c.passed && !c.witness.empty());
    CHECK(witnessed);
}

TEST_CASE("module errors become ERROR reports") {
    TaskReport r = run_one(R"({"command":"witt0","mackey":"A5","dim_bound":4})");
    CHECK(r.status() == Status::error);
    CHECK(r.error->find("TooLarge") == 0);
    CHECK_THROWS_AS(run_one(R"({"command":"nerve-homology","group":"S3","coeff":"zp:4"})"), ValidationError);
    CHECK_THROWS_AS(run_one(R"({"command":"kh0","mackey":"U3","dim_bound":0})"), ParseError);
}

TEST_CASE("nerve-homology reports degrees below the truncation") {
    TaskReport r = run_one(R"({"command":"nerve-homology","group":"Z2","trunc":4})");
    REQUIRE(r.results["homology"].size() == 4);
    CHECK(r.results["homology"][1] == "Z/2");
    CHECK(r.results["homology"][2] == "0");
    TaskReport q = run_one(R"({"command":"nerve-homology","group":"Z2","trunc":4,"coeff":"zp:2"})");
    CHECK(q.results["homology"][2] == "Z/2");
}

TEST_CASE("the sample document runs and every task passes") {
    Problem p = parse_input(read_sample());
    REQUIRE(p.tasks.size() >= 10);
    std::vector<TaskReport> reports = run_all(p);
    for (const auto& r : reports) {
        INFO(render_text(r, false));
        CHECK(r.status() == Status::pass);
    }
}

TEST_CASE("reports are byte-identical across runs") {
    Problem p = parse_input(read_sample());
    const std::string a = report_json("run", 7, run_all(p)).dump(2);
    Problem q = parse_input(read_sample());
    const std::string b = report_json("run", 7, run_all(q)).dump(2);
    CHECK(a == b);
    CHECK(a.find("seconds") == std::string::npos);
    std::string ta, tb;
    for (const auto& r : run_all(p)) ta += render_text(r, false);
    for (const auto& r : run_all(q)) tb += render_text(r, false);
    CHECK(ta == tb);
}
