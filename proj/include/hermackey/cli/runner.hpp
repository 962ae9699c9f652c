#pragma once

// Dispatch of tasks to the library operations.

#include <chrono>
#include <string>
#include <vector>

#include "hermackey/cli/problem.hpp"
#include "hermackey/cli/report.hpp"
#include "hermackey/hermforms/classify.hpp"
#include "hermackey/realnerve/homology.hpp"

namespace hermackey::cli {

/// Values used when a task leaves an argument out.
struct Defaults {
    std::size_t dim = 1;
    std::optional<std::size_t> dim_bound;
    std::optional<std::size_t> trunc;
    std::string coeff = "z";
    std::uint64_t seed = SearchPolicy{}.seed;
};

/// Command-line form of a task, e.g. "witt0 --mackey U3 --dim-bound 4".
inline std::string echo(const Task& t) {
    std::string s = t.command;
    for (auto it = t.args.begin(); it != t.args.end(); ++it) {
        std::string key = it.key();
        std::replace(key.begin(), key.end(), '_', '-');
        s += " --" + key + " " + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    return s;
}

namespace detail {

class Args {
public:
    Args(const Task& t, const Registry& reg, const Defaults& d) : node_(t.args, t.path), reg_(reg), def_(d) {}

    bool has(const std::string& k) const { return node_.has(k); }
    [[noreturn]] void fail(const std::string& msg) const { node_.fail(msg); }
    Node at(const std::string& k) const { return node_.at(k); }
    const Registry& reg() const { return reg_; }

    std::size_t number(const std::string& k, std::optional<std::size_t> fallback, std::size_t lo, std::size_t hi) const {
        std::size_t v;
        if (has(k)) {
            v = at(k).index();
        } else if (fallback) {
            v = *fallback;
        } else {
            node_.fail("missing field \"" + k + "\"");
        }
        if (v < lo || v > hi)
            node_.fail(k + " must be in " + std::to_string(lo) + ".." + std::to_string(hi) + ", got " + std::to_string(v));
        return v;
    }
    std::size_t dim_bound(std::size_t fallback) const { return number("dim_bound", def_.dim_bound.value_or(fallback), 1, 8); }
    std::size_t trunc(std::size_t fallback, std::size_t lo = 1) const { return number("trunc", def_.trunc.value_or(fallback), lo, 12); }
    std::size_t dim() const { return number("dim", def_.dim, 1, 8); }
    std::string coeff() const { return has("coeff") ? at("coeff").str() : def_.coeff; }
    SearchPolicy policy() const {
        SearchPolicy p;
        p.seed = has("seed") ? static_cast<std::uint64_t>(at("seed").index()) : def_.seed;
        return p;
    }
    MonoidAI monoid() const {
        if (has("monoid")) return parse_monoid(at("monoid"), reg_);
        if (has("group")) return monoid_of_group(parse_group(at("group"), reg_));
        node_.fail("expected \"monoid\" or \"group\"");
    }

private:
    Node node_;
    const Registry& reg_;
    const Defaults& def_;
};

inline void run_check_axioms(const Args& a, TaskReport& r) {
    SearchPolicy pol = a.policy();
    int given = 0;
    for (const char* k : {"mackey", "ring", "tambara", "morphism", "group", "monoid"}) given += a.has(k);
    if (given != 1) a.fail("check-axioms takes exactly one of mackey, ring, tambara, morphism, group, monoid");
    if (a.has("mackey")) {
        HermMackey h = parse_mackey(a.at("mackey"), a.reg());
        r.lines.push_back("subject: Hermitian Mackey functor " + h.name() + " (|L(Z/2)| = " + std::to_string(h.under().size()) +
                          ", |L(*)| = " + std::to_string(h.fix().size()) + ")");
        r.results["subject"] = h.name();
        r.add_checks(check_mackey_axioms(h.base(), pol), "Mackey: ");
        r.add_checks(check_hermitian_axioms(h, pol), "Hermitian: ");
        if (h.tambara()) r.add_checks(check_tambara_axioms(*h.tambara(), pol), "Tambara: ");
    } else if (a.has("ring")) {
        FinRingInv R = parse_ring(a.at("ring"), a.reg());
        r.lines.push_back("subject: ring " + R.name() + " of order " + std::to_string(R.size()));
        r.results["subject"] = R.name();
        r.add_checks(check_ring_axioms(R, pol), "ring: ");
        r.add_checks(check_anti_involution(R, pol), "involution: ");
    } else if (a.has("tambara")) {
        TambaraDecl t = parse_tambara(a.at("tambara"), a.reg());
        r.lines.push_back("subject: Tambara functor " + t.name);
        r.results["subject"] = t.name;
        r.add_checks(check_mackey_axioms(t.tambara->base(), pol), "Mackey: ");
        r.add_checks(check_tambara_axioms(*t.tambara, pol), "Tambara: ");
    } else if (a.has("morphism")) {
        HermMorphism f = parse_morphism(a.at("morphism"), a.reg());
        r.lines.push_back("subject: morphism " + f.name + ": " + f.source.name() + " -> " + f.target.name());
        r.results["subject"] = f.name;
        r.add_checks(check_herm_morphism(f, pol));
    } else {
        // Groups and monoids are validated exhaustively when constructed.
        const bool group = a.has("group");
        std::size_t n = 0;
        std::string name;
        if (group) {
            FinGroup g = parse_group(a.at("group"), a.reg());
            n = g.order(), name = g.name();
        } else {
            MonoidAI m = parse_monoid(a.at("monoid"), a.reg());
            n = m.size(), name = m.name();
        }
        r.lines.push_back(std::string("subject: ") + (group ? "group " : "monoid with anti-involution ") + name +
                          " of order " + std::to_string(n));
        r.results["subject"] = name;
        CheckResult c(group ? "associativity, identity and inverses" : "associativity and anti-involution laws");
        c.cases = n * n * n;
        r.checks.push_back(c);
    }
}

inline void run_classify(const Args& a, TaskReport& r) {
    HermMackey h = parse_mackey(a.at("mackey"), a.reg());
    const std::size_t n = a.dim();
    Classification c = enumerate_iso_classes(h, n);
    r.lines.push_back("M" + std::to_string(n) + "(" + h.name() + ")(*): " + std::to_string(c.elements()) + " elements, " +
                      std::to_string(c.forms()) + " forms, " + std::to_string(c.classes().size()) + " classes");
    r.results["elements"] = c.elements();
    r.results["forms"] = c.forms();
    Json classes = Json::array();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < c.classes().size(); ++i) {
        const FormClass& fc = c.classes()[i];
        total += fc.size;
        r.lines.push_back("  class " + std::to_string(i) + ": " + fc.representative.to_string() + "  orbit size " +
                          std::to_string(fc.size));
        classes.push_back({{"representative", fc.representative.to_string()}, {"size", fc.size}});
    }
    r.results["classes"] = classes;
    CheckResult sum("orbit sizes sum to the number of forms");
    sum.cases = c.classes().size();
    if (total != c.forms()) {
        sum.passed = false;
        sum.witness = std::to_string(total) + " != " + std::to_string(c.forms());
    }
    r.checks.push_back(sum);
}

inline void run_kh0(const Args& a, TaskReport& r, bool witt) {
    HermMackey h = parse_mackey(a.at("mackey"), a.reg());
    const std::size_t D = a.dim_bound(3);
    KH0Result k = kh0(h, D);
    if (witt) r.add_group("W0", witt0_from(k).group);
    r.add_group("KH0", k.group);
    std::string counts;
    for (std::size_t d = 1; d <= D; ++d)
        counts += (d > 1 ? ", " : "") + std::to_string(k.dims[d - 1].classes().size());
    r.lines.push_back("classes per dimension 1.." + std::to_string(D) + ": " + counts);
    r.results["dim_bound"] = D;
    r.results["generators"] = k.generators.size();
}

inline void run_induced(const Args& a, TaskReport& r) {
    HermMorphism f = parse_morphism(a.at("morphism"), a.reg());
    const std::size_t D = a.dim_bound(2);
    CheckReport ax = check_herm_morphism(f, a.policy());
    r.add_checks(ax, "morphism: ");
    if (!ax.passed()) return;
    KH0Result src = kh0(f.source, D), tgt = kh0(f.target, D);
    CheckResult desc("f descends to isometry classes");
    InducedMap m;
    try {
        m = induced_kh0_map(f, src, tgt);
        desc.cases = m.forms_checked;
    } catch (const NotWellDefined& e) {
        desc.passed = false;
        desc.witness = e.what();
    }
    r.checks.push_back(desc);
    if (!desc.passed) return;
    r.add_group("KH0(source)", src.group);
    r.add_group("KH0(target)", tgt.group);
    Json cm = Json::array();
    for (std::size_t d = 1; d <= D; ++d) {
        std::string line = "dim " + std::to_string(d) + ":";
        for (std::size_t c = 0; c < m.class_map[d - 1].size(); ++c)
            line += " " + std::to_string(c) + "->" + std::to_string(m.class_map[d - 1][c]);
        r.lines.push_back(line);
        cm.push_back(m.class_map[d - 1]);
    }
    r.results["class_map"] = cm;
    r.lines.push_back("KH0 map matrix: " + m.kh0_map.matrix().to_string());
    r.results["kh0_matrix"] = m.kh0_map.matrix().to_string();
    if (f.unital && D >= 2) {
        CheckResult hyp("hyperbolic class preserved");
        hyp.cases = 1;
        Coords image = m.kh0_map.apply(src.class_in_group(hyperbolic(f.source, 1)));
        Coords expect = tgt.class_in_group(hyperbolic(f.target, 1));
        if (image != expect) {
            hyp.passed = false;
            hyp.witness = "f[H] = " + format_coords(image) + " but [H] = " + format_coords(expect);
        }
        r.checks.push_back(hyp);
    }
}

inline SSetPtr build_nerve(const MonoidAI& m, const std::string& kind, std::size_t T) {
    if (kind == "plain") return group_nerve(m, T);
    if (kind == "sigma") return real_nerve(m, T);
    if (kind == "dihedral") return dihedral_nerve(m, T);
    if (kind == "sym") return sym_nerve(m, T);
    if (kind == "symcy") return symcy_nerve(m, T);
    auto sd = [&](bool di) -> SSetPtr {
        SSetPtr x = di ? SSetPtr(dihedral_nerve(m, 2 * T + 1)) : SSetPtr(real_nerve(m, 2 * T + 1));
        return edgewise_subdivide(x, T);
    };
    if (kind == "sd-sigma") return sd(false);
    if (kind == "sd-dihedral") return sd(true);
    if (kind == "fixed-sigma") return fixed_simplices(sd(false));
    if (kind == "fixed-dihedral") return fixed_simplices(sd(true));
    throw ValidationError("unknown nerve kind " + kind +
                          " (plain, sigma, dihedral, sym, symcy, sd-sigma, sd-dihedral, fixed-sigma, fixed-dihedral)");
}

inline void run_homology(const Args& a, TaskReport& r) {
    MonoidAI m = a.monoid();
    const std::string kind = a.has("nerve") ? a.at("nerve").str() : "plain";
    const std::size_t T = a.trunc(3);
    Coefficients coeff = Coefficients::parse(a.coeff());
    SSetPtr x = build_nerve(m, kind, T);
    r.checks.push_back(check_boundary_squared(*x));
    HomologyResult h = homology(*x, coeff);
    std::string ranks;
    for (std::size_t p = 0; p < h.chain_ranks.size(); ++p) ranks += (p ? ", " : "") + std::to_string(h.chain_ranks[p]);
    r.lines.push_back("space: " + x->name() + ", coefficients " + coeff.to_string() + ", truncation " + std::to_string(T));
    r.lines.push_back("chain ranks: " + ranks);
    r.results["space"] = x->name();
    r.results["chain_ranks"] = h.chain_ranks;
    Json groups = Json::array();
    for (std::size_t k = 0; k < h.groups.size(); ++k) {
        r.lines.push_back("H" + std::to_string(k) + " = " + h.groups[k].to_string());
        groups.push_back(h.groups[k].to_string());
    }
    r.results["homology"] = groups;
    r.lines.push_back("degrees >= " + std::to_string(h.groups.size()) + " omitted (outside the truncation)");
}

inline void run_fixed_iso(const Args& a, TaskReport& r) {
    MonoidAI m = a.monoid();
    const std::size_t T = a.trunc(4, 1);
    r.lines.push_back("monoid " + m.name() + " of order " + std::to_string(m.size()) + ", " + std::to_string(m.fixed().size()) +
                      " fixed elements, subdivided degrees 0.." + std::to_string(T));
    r.results["monoid"] = m.name();
    r.add_checks(check_sigma_fixed_iso_report(m, T), "sigma: ");
    r.add_checks(check_di_fixed_iso_report(m, T), "dihedral: ");
}

inline void run_involutions(const Args& a, TaskReport& r) {
    FinGroup g = parse_group(a.at("group"), a.reg());
    auto classes = involution_classes(g);
    Json rows = Json::array();
    r.lines.push_back("group " + g.name() + " of order " + std::to_string(g.order()) + ": " + std::to_string(classes.size()) +
                      " classes of elements with g^2 = 1");
    for (const auto& c : classes) {
        std::string members;
        for (auto x : c.centralizer.labels()) members += (members.empty() ? "" : " ") + x;
        const std::string ab = abelianization(c.centralizer).group.to_string();
        r.lines.push_back("  " + g.label(c.representative) + "  class size " + std::to_string(c.size) + "  centralizer order " +
                          std::to_string(c.centralizer.order()) + " {" + members + "}, abelianization " + ab);
        rows.push_back({{"representative", g.label(c.representative)},
                        {"class_size", c.size},
                        {"centralizer", c.centralizer.labels()},
                        {"centralizer_abelianization", ab}});
    }
    r.results["classes"] = rows;
    if (a.has("trunc")) {
        SigmaFixedAnalysis s = analyze_sigma_fixed(g, a.trunc(3, 2));
        r.lines.push_back("components of the sigma-fixed nerve: " + std::to_string(s.components));
        r.results["fixed_components"] = s.components;
        Json h1 = Json::array();
        for (const auto& p : s.parts) {
            r.lines.push_back("  component of " + g.label(p.representative) + ": H1 = " + p.h1.to_string());
            h1.push_back(p.h1.to_string());
        }
        r.results["component_h1"] = h1;
        r.add_checks(s.report);
    }
}

inline void run_lambda(const Args& a, TaskReport& r) {
    FinGroup g = parse_group(a.at("group"), a.reg());
    const std::size_t T = a.trunc(3, 2);
    LambdaCheck l = lambda_check(g, T);
    r.add_checks(l.report);
    for (std::size_t k = 0; k < l.induced.size(); ++k) {
        const GroupHom& h = l.induced[k];
        r.lines.push_back("H" + std::to_string(k) + " = " + h.source().to_string() + ", induced map " + h.matrix().to_string());
        r.results["H" + std::to_string(k)] = {{"group", h.source().to_string()}, {"matrix", h.matrix().to_string()}};
    }
}

}  // namespace detail

/// Runs one task. Module errors end up in the report; malformed arguments
/// (ParseError, ValidationError, unknown names) propagate.
inline TaskReport run_task(const Task& t, const Registry& reg, const Defaults& d) {
    TaskReport r;
    r.echo = echo(t);
    detail::Args a(t, reg, d);
    const auto start = std::chrono::steady_clock::now();
    try {
        if (t.command == "check-axioms") detail::run_check_axioms(a, r);
        else if (t.command == "classify-forms") detail::run_classify(a, r);
        else if (t.command == "kh0") detail::run_kh0(a, r, false);
        else if (t.command == "witt0") detail::run_kh0(a, r, true);
        else if (t.command == "induced-map") detail::run_induced(a, r);
        else if (t.command == "nerve-homology") detail::run_homology(a, r);
        else if (t.command == "fixed-iso-check") detail::run_fixed_iso(a, r);
        else if (t.command == "involution-classes") detail::run_involutions(a, r);
        else if (t.command == "lambda-check") detail::run_lambda(a, r);
        else throw ValidationError("unknown command " + t.command);
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError&) {
        throw;
    } catch (const UnknownName&) {
        throw;
    } catch (const TooLarge& e) {
        r.error = std::string("TooLarge: ") + e.what();
    } catch (const NotWellDefined& e) {
        r.error = std::string("NotWellDefined: ") + e.what();
    } catch (const TruncationTooShallow& e) {
        r.error = std::string("TruncationTooShallow: ") + e.what();
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace hermackey::cli
