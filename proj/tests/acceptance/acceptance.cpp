// Acceptance suite: one PASS/FAIL line per criterion. With --emit FILE the
// results are also written as JSON (no timings, so runs compare byte for byte).

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "hermackey/constructions/catalog.hpp"
#include "hermackey/constructions/comparisons.hpp"
#include "hermackey/hermforms/classify.hpp"
#include "hermackey/realnerve/identifications.hpp"

using namespace hermackey;
using Json = nlohmann::ordered_json;

namespace {

struct Criterion {
    int id = 0;
    std::string title;
    bool passed = true;
    std::vector<std::string> details;
    double seconds = 0;  // printed, never emitted

    Criterion() = default;
    Criterion(int i, std::string t) : id(i), title(std::move(t)) {}

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            details.push_back("FAILED: " + what);
        }
    }
    void note(const std::string& s) { details.push_back(s); }
};

std::string str(const PresentedGroup& g) {
    std::string s = g.to_string();
    if (g.stable == true) return s + " (stable)";
    if (g.stable == false) return s + " (not stable)";
    return s + (g.truncated ? " (truncated)" : "");
}

double since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void add_report(Criterion& c, const CheckReport& r, const std::string& subject, std::uint64_t& cases, bool& sampled) {
    for (const auto& k : r.checks) {
        cases += k.cases;
        if (k.sampled) c.note("sampled: " + subject + ": " + k.name + " (" + std::to_string(k.cases) + " cases)");
        sampled = sampled || k.sampled;
        c.require(k.passed, subject + ": " + k.name + " (" + k.witness + ")");
    }
}

Criterion axiom_suites() {
    Criterion c{1, "axiom suites exhaustive on the catalog, under 120 s"};
    const auto start = std::chrono::steady_clock::now();
    SearchPolicy policy;
    policy.exhaustive_limit = 100'000'000;
    std::uint64_t cases = 0;
    bool sampled = false;
    for (const auto& name : catalog_ring_names()) {
        FinRingInv r = catalog_ring(name);
        add_report(c, check_ring_axioms(r, policy), name, cases, sampled);
        add_report(c, check_anti_involution(r, policy), name, cases, sampled);
    }
    for (const auto& name : catalog_mackey_names()) {
        HermMackey h = catalog_mackey(name);
        std::uint64_t before = cases;
        add_report(c, check_mackey_axioms(h.base(), policy), name, cases, sampled);
        add_report(c, check_hermitian_axioms(h, policy), name, cases, sampled);
        if (h.tambara()) add_report(c, check_tambara_axioms(*h.tambara(), policy), name, cases, sampled);
        c.note(name + ": " + std::to_string(cases - before) + " elementary checks");
    }
    c.require(!sampled, "every check ran exhaustively (none sampled)");
    c.require(cases <= 100'000'000, "at most 10^8 elementary checks in total");
    c.note("total elementary checks: " + std::to_string(cases));
    c.require(since(start) < 120, "runtime under 120 s");
    return c;
}

Criterion mackey_relation() {
    Criterion c{2, "res o tr = id + w as an exact matrix identity"};
    for (const auto& name : catalog_mackey_names()) {
        HermMackey h = catalog_mackey(name);
        IntMatrix rt = h.base().tr_hom().then(h.base().res_hom()).matrix();
        c.require(mackey_relation_exact(h.base()), name + ": res*tr = " + rt.to_string());
    }
    c.note(std::to_string(catalog_mackey_names().size()) + " instances");
    return c;
}

Criterion comparison_isos() {
    Criterion c{3, "matrix and group-ring comparison isomorphisms over Z/3"};
    auto run = [&](const CheckReport& r) {
        bool ok = r.passed();
        const CheckResult* f = r.first_failure();
        c.require(ok, r.subject + (f ? ": " + f->name + " (" + f->witness + ")" : ""));
        if (ok) c.note(r.subject + ": PASS (" + std::to_string(r.checks.size()) + " checks)");
    };
    run(matrix_iso_check(zmod(3), 2));
    run(groupring_iso_check(zmod(3), cyclic_group(2)));
    run(groupring_iso_check(zmod(3), cyclic_group(3)));
    return c;
}

/// Witt and KH_0 groups share one computation per ring.
struct FormGroups {
    KH0Result u3, u5;
    double u3_seconds = 0, u5_seconds = 0;
};

FormGroups form_groups() {
    FormGroups g;
    auto t = std::chrono::steady_clock::now();
    g.u3 = kh0(catalog_mackey("U3"), 4);
    g.u3_seconds = since(t);
    t = std::chrono::steady_clock::now();
    g.u5 = kh0(catalog_mackey("U5"), 4);
    g.u5_seconds = since(t);
    return g;
}

Criterion witt_groups(const FormGroups& g) {
    Criterion c{4, "W0 of underline(Z/3) and underline(Z/5) at D = 4"};
    PresentedGroup w3 = witt0_from(g.u3).group, w5 = witt0_from(g.u5).group;
    c.note("W0(underline Z/3) = " + str(w3));
    c.note("W0(underline Z/5) = " + str(w5));
    c.require(w3.to_string() == "Z/4" && w3.stable == true, "W0(underline Z/3) = Z/4, stable");
    c.require(w5.to_string() == "Z/2 + Z/2" && w5.stable == true, "W0(underline Z/5) = Z/2 + Z/2, stable");
    c.require(g.u3_seconds < 60 && g.u5_seconds < 60, "each computation under 60 s");
    return c;
}

Criterion kh0_group(const FormGroups& g) {
    Criterion c{5, "KH0(underline Z/3) at D = 4"};
    c.note("KH0(underline Z/3) = " + str(g.u3.group));
    c.require(g.u3.group.to_string() == "Z + Z/2" && g.u3.group.stable == true, "KH0 = Z + Z/2, stable");
    return c;
}

Criterion burnside_classes() {
    Criterion c{6, "one-dimensional forms over burnside_mod(3) and the rank map"};
    HermMackey a3 = catalog_mackey("A3"), u3 = catalog_mackey("U3");
    Classification cl = enumerate_iso_classes(a3, 1);
    const FinAbGroup& F = a3.fix();
    std::set<std::set<Coords>> got;
    for (std::size_t k = 0; k < cl.classes().size(); ++k) {
        std::set<Coords> members;
        for (std::uint64_t x = 0; x < cl.elements(); ++x)
            if (cl.label(x) == k) members.insert(F.decode(Elem(x)));
        got.insert(members);
    }
    const std::set<std::set<Coords>> expected = {{{1, 0}, {2, 1}}, {{0, 2}}, {{2, 0}, {1, 2}}, {{0, 1}}};
    c.require(got == expected, "classes {(1,0),(2,1)}, {(0,2)}, {(2,0),(1,2)}, {(0,1)}");
    std::set<Coords> reps;
    for (const auto& fc : cl.classes()) reps.insert(F.decode(fc.representative.cells[0]));
    c.require(reps == std::set<Coords>{{0, 1}, {0, 2}, {1, 0}, {1, 2}}, "representatives are the smallest members");
    c.note(std::to_string(cl.classes().size()) + " classes among " + std::to_string(cl.forms()) + " forms");

    HermMorphism d = rank_map_trivial(3);
    KH0Result ka = kh0(a3, 1), ku = kh0(u3, 1);
    InducedMap m = induced_kh0_map(d, ka, ku);
    auto cls = [&](Coords b) { return *cl.class_of(diagonal_form(a3, {F.encode(b)})); };
    const std::size_t one = *ku.dims[0].class_of(diagonal_form(u3, {1}));
    c.require(cls({1, 0}) != cls({0, 2}), "(1,0) and (0,2) are distinct classes over burnside_mod(3)");
    c.require(m.class_map[0][cls({1, 0})] == one && m.class_map[0][cls({0, 2})] == one, "d sends both to [<1>]");
    std::size_t to_one = 0;
    for (auto t : m.class_map[0]) to_one += t == one;
    c.require(to_one == 2, "exactly two classes map to [<1>]");
    return c;
}

Criterion half_transfer_section() {
    Criterion c{7, "induced(d) o induced(T/2) = id for m in {3,5}, pi in {1, Z/2}"};
    for (Int m : {3, 5})
        for (const FinGroup& pi : {trivial_group(), cyclic_group(2)}) {
            const bool trivial = pi.order() == 1;
            HermMorphism d = trivial ? rank_map_trivial(m) : rank_map(m, pi);
            HermMorphism h = trivial ? half_transfer_trivial(m) : half_transfer_section(m, pi);
            const std::size_t D = trivial ? 3 : 2;
            const std::string tag = "m=" + std::to_string(m) + ", pi=" + (trivial ? std::string("1") : pi.name()) +
                                    ", D=" + std::to_string(D);
            KH0Result ku = kh0(h.source, D), ka = kh0(h.target, D);
            InducedMap ih = induced_kh0_map(h, ku, ka), id = induced_kh0_map(d, ka, ku);
            std::uint64_t forms = 0;
            bool form_level = true;
            for (std::size_t n = 1; n <= D; ++n) {
                const Classification& cl = ku.dims[n - 1];
                for (std::uint64_t x = 0; x < cl.elements(); ++x) {
                    if (cl.label(x) == Classification::kNone) continue;
                    HermForm b = cl.form_at(x);
                    ++forms;
                    form_level = form_level && apply_morphism(d, apply_morphism(h, b)) == b;
                }
            }
            c.require(form_level, tag + ": d(T/2(B)) = B for every form");
            bool classes = true;
            for (std::size_t n = 0; n < D; ++n)
                for (std::size_t k = 0; k < ih.class_map[n].size(); ++k) classes = classes && id.class_map[n][ih.class_map[n][k]] == k;
            c.require(classes, tag + ": identity on isometry classes");
            GroupHom comp = ih.kh0_map.then(id.kh0_map);
            c.require(comp.same_map(GroupHom::identity(ku.presentation.group)), tag + ": identity on KH0");
            c.note(tag + ": " + std::to_string(forms) + " forms, KH0 = " + ku.group.to_string());
        }
    return c;
}

Criterion fixed_point_isos() {
    Criterion c{8, "sigma and dihedral fixed-point identifications up to degree 4, under 30 s"};
    const auto start = std::chrono::steady_clock::now();
    for (const auto& m : catalog_monoids()) {
        if (m.size() > 6) continue;
        CheckReport s = check_sigma_fixed_iso_report(m, 4), d = check_di_fixed_iso_report(m, 4);
        c.require(s.passed(), m.name() + " sigma: " + (s.passed() ? "" : s.first_failure()->witness));
        c.require(d.passed(), m.name() + " dihedral: " + (d.passed() ? "" : d.first_failure()->witness));
        c.note(m.name() + " (order " + std::to_string(m.size()) + "): " + (s.passed() && d.passed() ? "true" : "false"));
    }
    c.require(since(start) < 30, "runtime under 30 s");
    return c;
}

Criterion fixed_components() {
    Criterion c{9, "components and H1 of the sigma-fixed nerve"};
    for (const auto& name : catalog_group_names()) {
        FinGroup g = catalog_group(name);
        SigmaFixedAnalysis a = analyze_sigma_fixed(g, 3);
        std::string h1;
        for (const auto& p : a.parts) h1 += (h1.empty() ? "" : "; ") + p.h1.to_string();
        c.note(name + ": " + std::to_string(a.components) + " components, H1 = " + h1);
        for (const auto& k : a.report.checks) c.require(k.passed, name + ": " + k.name + " (" + k.witness + ")");
        if (name == "S3") {
            c.require(a.components == 2, "S3 has 2 components");
            for (const auto& p : a.parts) c.require(p.h1.to_string() == "Z/2", "S3 components have H1 = Z/2");
        }
        if (name == "Q8") {
            c.require(a.components == 2, "Q8 has 2 components");
            for (const auto& p : a.parts) c.require(p.h1.to_string() == "Z/2 + Z/2", "Q8 components have H1 = Z/2 + Z/2");
        }
    }
    return c;
}

Criterion lambda() {
    Criterion c{10, "lambda then inclusion then forgetful map is the identity on H0 and H1"};
    for (const FinGroup& g : {cyclic_group(2), symmetric_group_3()}) {
        LambdaCheck l = lambda_check(g, 3);
        for (const auto& k : l.report.checks) c.require(k.passed, g.name() + ": " + k.name + " (" + k.witness + ")");
        std::string maps;
        for (std::size_t k = 0; k < l.induced.size(); ++k)
            maps += " H" + std::to_string(k) + " = " + l.induced[k].source().to_string() + " via " + l.induced[k].matrix().to_string();
        c.note(g.name() + ":" + maps);
    }
    return c;
}

Criterion kronecker() {
    Criterion c{11, "Kronecker suite over underline(Z/3), dimensions <= 2"};
    HermMackey u3 = catalog_mackey("U3");
    std::vector<HermForm> one_dim, all;
    for (std::size_t n = 1; n <= 2; ++n) {
        Classification cl(u3, n);
        for (std::uint64_t x = 0; x < cl.elements(); ++x) {
            all.push_back(cl.form_at(x));
            if (n == 1) one_dim.push_back(cl.form_at(x));
        }
    }
    const HermForm one = diagonal_form(u3, {1});
    std::uint64_t unit = 0, restr = 0, left = 0, right = 0;
    bool unit_ok = true, restr_ok = true, left_ok = true, right_ok = true;
    for (const auto& b : all) {
        unit_ok = unit_ok && kronecker_product(one, b) == b && kronecker_product(b, one) == b;
        ++unit;
    }
    for (const auto& b : all)
        for (const auto& b2 : all) {
            restr_ok = restr_ok && form_restriction(kronecker_product(b, b2)) ==
                                       kronecker_matrix(form_restriction(b), form_restriction(b2));
            ++restr;
        }
    // Block sums of total dimension <= 2 on the side that is summed.
    for (const auto& b : one_dim)
        for (const auto& b2 : one_dim)
            for (const auto& b3 : all) {
                left_ok = left_ok && kronecker_product(block_sum(b, b2), b3) ==
                                         block_sum(kronecker_product(b, b3), kronecker_product(b2, b3));
                ++left;
            }
    for (const auto& b : all)
        for (const auto& b2 : one_dim)
            for (const auto& b3 : one_dim) {
                const std::size_t n = b.n, m = 2;
                // Row k*m + u of B (x) (B' + B'') is row sigma(k*m + u) of the block sum.
                std::vector<std::size_t> sigma(n * m), inv(n * m);
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t u = 0; u < m; ++u) sigma[k * m + u] = u == 0 ? k : n + k;
                for (std::size_t i = 0; i < n * m; ++i) inv[sigma[i]] = i;
                HermForm lhs = kronecker_product(b, block_sum(b2, b3));
                HermForm rhs = block_sum(kronecker_product(b, b2), kronecker_product(b, b3));
                right_ok = right_ok && lhs == form_action(permutation_matrix(u3.ring(), inv), rhs);
                ++right;
            }
    c.require(unit_ok, "unit law");
    c.require(restr_ok, "R(B (x) B') = R(B) (x) R(B')");
    c.require(left_ok, "(B + B') (x) B'' = (B (x) B'') + (B' (x) B'')");
    c.require(right_ok, "B (x) (B' + B'') = sigma . ((B (x) B') + (B (x) B''))");
    c.note("cases: unit " + std::to_string(unit) + ", restriction " + std::to_string(restr) + ", left distributivity " +
           std::to_string(left) + ", right distributivity " + std::to_string(right));

    const std::vector<std::vector<std::string>> displayed{{"B11B'11", "R(B11)B'12", "B12R(B'11)", "B12B'12"},
                                                          {"B11B'22", "B12w(B'12)", "B12R(B'22)"},
                                                          {"B22B'11", "R(B22)B'12"},
                                                          {"B22B'22"}};
    auto sym = kronecker_symbolic(2, 2);
    bool match = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) match = match && sym[i][j] == displayed[i][j - i];
    c.require(match, "symbolic 2x2 (x) 2x2 product matches the displayed matrix entry for entry");
    return c;
}

std::vector<Criterion> run_suite(bool verbose) {
    std::vector<Criterion> out;
    auto run = [&](std::function<Criterion()> f) {
        const auto t = std::chrono::steady_clock::now();
        Criterion c = f();
        c.seconds = since(t);
        if (verbose)
            std::cout << "criterion " << c.id << ": " << (c.passed ? "PASS" : "FAIL") << "  " << c.title << "  ("
                      << std::to_string(c.seconds).substr(0, 6) << " s)" << std::endl;
        out.push_back(std::move(c));
    };
    run(axiom_suites);
    run(mackey_relation);
    run(comparison_isos);
    FormGroups g;
    double fg_seconds = 0;
    {
        const auto t = std::chrono::steady_clock::now();
        g = form_groups();
        fg_seconds = since(t);
    }
    run([&] { return witt_groups(g); });
    out.back().seconds += fg_seconds;
    run([&] { return kh0_group(g); });
    run(burnside_classes);
    run(half_transfer_section);
    run(fixed_point_isos);
    run(fixed_components);
    run(lambda);
    run(kronecker);
    return out;
}

Json to_json(const std::vector<Criterion>& cs) {
    Json arr = Json::array();
    for (const auto& c : cs) {
        Json j;
        j["id"] = c.id;
        j["title"] = c.title;
        j["status"] = c.passed ? "PASS" : "FAIL";
        j["details"] = c.details;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    std::string emit;
    bool details = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--emit" && i + 1 < argc) {
            emit = argv[++i];
        } else if (a == "--details") {
            details = true;
        } else {
            std::cerr << "usage: acceptance [--emit FILE] [--details]\n";
            return 2;
        }
    }

    std::vector<Criterion> first = run_suite(true);
    // Second full run for the determinism criterion.
    std::vector<Criterion> second = run_suite(false);
    const std::string a = to_json(first).dump(2), b = to_json(second).dump(2);
    Criterion det{12, "two full-suite runs give byte-identical emitted documents"};
    det.require(a == b, "documents differ");
    det.note("document size " + std::to_string(a.size()) + " bytes");
    std::cout << "criterion 12: " << (det.passed ? "PASS" : "FAIL") << "  " << det.title << std::endl;
    first.push_back(det);

    int failed = 0;
    for (const auto& c : first) {
        failed += !c.passed;
        if (details || !c.passed)
            for (const auto& d : c.details) std::cout << "  [" << c.id << "] " << d << "\n";
    }
    std::cout << (first.size() - failed) << "/" << first.size() << " criteria passed" << std::endl;

    if (!emit.empty()) {
        Json doc;
        doc["suite"] = "hermackey acceptance";
        doc["criteria"] = to_json(first);
        doc["passed"] = first.size() - failed;
        doc["total"] = first.size();
        std::ofstream out(emit, std::ios::binary);
        out << doc.dump(2) << "\n";
        if (!out) {
            std::cerr << "cannot write " << emit << "\n";
            return 2;
        }
    }
    return failed == 0 ? 0 : 1;
}
