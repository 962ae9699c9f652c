#pragma once

// Problem documents: JSON declarations of groups, rings, Mackey and Tambara
// functors, morphisms and monoids, followed by a task list.

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermackey/constructions/catalog.hpp"
#include "hermackey/constructions/comparisons.hpp"
#include "hermackey/realnerve/identifications.hpp"

namespace hermackey::cli {

using Json = nlohmann::ordered_json;

/// Malformed input. `line`/`column` are 1-based and zero when the problem is
/// structural rather than syntactic; `path` then locates the offending value.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line_, std::size_t column_, std::string path_)
        : std::runtime_error(format(msg, line_, column_, path_)), line(line_), column(column_), path(std::move(path_)) {}
    std::size_t line, column;
    std::string path;

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column, const std::string& path) {
        std::string where;
        if (line) where = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
        if (!path.empty()) where += path + ": ";
        return "parse error: " + where + msg;
    }
};

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find("column "); p != std::string::npos)
            if (auto q = msg.find(": ", p); q != std::string::npos) msg = msg.substr(q + 2);
        throw ParseError(msg, line, column, "");
    }
}

/// Typed access to a JSON value with a path for error messages.
class Node {
public:
    Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const Json& json() const { return *j_; }
    const std::string& path() const { return path_; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 0, 0, path_); }

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
    Node at(const std::string& key) const {
        if (!j_->is_object()) fail("expected an object");
        if (!j_->contains(key)) fail("missing field \"" + key + "\"");
        return Node((*j_)[key], path_ + "." + key);
    }
    Node at(std::size_t i) const { return Node((*j_)[i], path_ + "[" + std::to_string(i) + "]"); }
    std::size_t size() const {
        if (!j_->is_array()) fail("expected an array");
        return j_->size();
    }

    std::string str() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }
    Int integer() const {
        if (!j_->is_number_integer()) fail("expected an integer");
        return j_->get<Int>();
    }
    std::size_t index() const {
        Int v = integer();
        if (v < 0) fail("expected a non-negative integer");
        return static_cast<std::size_t>(v);
    }
    bool boolean() const {
        if (!j_->is_boolean()) fail("expected true or false");
        return j_->get<bool>();
    }
    std::vector<Int> ints() const {
        std::vector<Int> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).integer());
        return out;
    }
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).index());
        return out;
    }
    /// Flat list, or list of rows flattened row by row.
    std::vector<std::size_t> flat_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i) {
            Node e = at(i);
            if (e.json().is_array()) {
                for (auto v : e.indices()) out.push_back(v);
            } else {
                out.push_back(e.index());
            }
        }
        return out;
    }
    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).str());
        return out;
    }
    IntMatrix matrix(std::size_t rows, std::size_t cols) const {
        if (size() != rows) fail("expected " + std::to_string(rows) + " rows");
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            std::vector<Int> r = at(i).ints();
            if (r.size() != cols) at(i).fail("expected " + std::to_string(cols) + " entries");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = r[j];
        }
        return m;
    }

private:
    const Json* j_;
    std::string path_;
};

struct TambaraDecl {
    std::string name;
    std::shared_ptr<const TambaraZ2> tambara;
};

/// Named objects of a document. Lookups fall back to the built-in catalog.
class Registry {
public:
    FinGroup group(const std::string& name) const {
        if (auto it = groups_.find(name); it != groups_.end()) return it->second;
        return catalog_group(name);
    }
    FinRingInv ring(const std::string& name) const {
        if (auto it = rings_.find(name); it != rings_.end()) return it->second;
        return catalog_ring(name);
    }
    HermMackey mackey(const std::string& name) const {
        if (auto it = mackeys_.find(name); it != mackeys_.end()) return it->second;
        return catalog_mackey(name);
    }
    TambaraDecl tambara(const std::string& name) const {
        if (auto it = tambaras_.find(name); it != tambaras_.end()) return it->second;
        HermMackey h = catalog_mackey(name);
        if (!h.tambara()) throw UnknownName("no Tambara structure on " + name);
        return {name, h.tambara()};
    }
    HermMorphism morphism(const std::string& name) const {
        if (auto it = morphisms_.find(name); it != morphisms_.end()) return it->second;
        throw UnknownName("unknown morphism " + name);
    }
    MonoidAI monoid(const std::string& name) const {
        if (auto it = monoids_.find(name); it != monoids_.end()) return it->second;
        if (auto it = groups_.find(name); it != groups_.end()) return monoid_of_group(it->second);
        try {
            return catalog_monoid(name);
        } catch (const std::invalid_argument&) {
        }
        return monoid_of_group(catalog_group(name));
    }

    void add(const std::string& name, FinGroup g) {
        claim(name);
        groups_.emplace(name, std::move(g));
    }
    void add(const std::string& name, FinRingInv r) {
        claim(name);
        rings_.emplace(name, std::move(r));
    }
    void add(const std::string& name, HermMackey h) {
        claim(name);
        mackeys_.emplace(name, std::move(h));
    }
    void add(const std::string& name, TambaraDecl t) {
        claim(name);
        tambaras_.emplace(name, std::move(t));
    }
    void add(const std::string& name, HermMorphism f) {
        claim(name);
        morphisms_.emplace(name, std::move(f));
    }
    void add(const std::string& name, MonoidAI m) {
        claim(name);
        monoids_.emplace(name, std::move(m));
    }

    /// Declaration names in input order with their kinds.
    const std::vector<std::pair<std::string, std::string>>& declared() const { return order_; }
    void note(const std::string& name, const std::string& kind) { order_.emplace_back(name, kind); }

private:
    void claim(const std::string& name) {
        if (names_.count(name)) throw ValidationError("name " + name + " is declared twice");
        names_.insert(name);
    }

    std::set<std::string> names_;
    std::vector<std::pair<std::string, std::string>> order_;
    std::map<std::string, FinGroup> groups_;
    std::map<std::string, FinRingInv> rings_;
    std::map<std::string, HermMackey> mackeys_;
    std::map<std::string, TambaraDecl> tambaras_;
    std::map<std::string, HermMorphism> morphisms_;
    std::map<std::string, MonoidAI> monoids_;
};

namespace detail {

/// Turns lookup and constructor failures into ValidationError with context.
template <class F>
auto resolving(const Node& n, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ValidationError(n.path() + ": " + e.what());
    } catch (const std::exception& e) {
        throw ValidationError(n.path() + ": " + e.what());
    }
}

inline std::string name_of(const Node& n) { return n.has("name") ? n.at("name").str() : ""; }

}  // namespace detail

FinRingInv parse_ring(const Node& n, const Registry& reg);

/// Group by name, by multiplication table, or by generating permutations.
inline FinGroup parse_group(const Node& n, const Registry& reg) {
    if (n.json().is_string()) return detail::resolving(n, [&] { return reg.group(n.str()); });
    const std::string name = detail::name_of(n);
    if (n.has("catalog")) return detail::resolving(n, [&] { return catalog_group(n.at("catalog").str()); });
    if (n.has("table")) {
        std::vector<std::size_t> table = n.at("table").flat_indices();
        std::size_t order = 0;
        while (order * order < table.size()) ++order;
        if (order * order != table.size()) n.at("table").fail("table length is not a square");
        std::vector<std::string> labels;
        if (n.has("labels")) {
            labels = n.at("labels").strings();
            if (labels.size() != order) n.at("labels").fail("expected " + std::to_string(order) + " labels");
        } else {
            for (std::size_t i = 0; i < order; ++i) labels.push_back(std::to_string(i));
        }
        return detail::resolving(n, [&] { return FinGroup(name, labels, table); });
    }
    if (n.has("generators")) {
        Node gens = n.at("generators");
        std::vector<std::vector<std::size_t>> perms;
        for (std::size_t i = 0; i < gens.size(); ++i) perms.push_back(gens.at(i).indices());
        std::size_t degree = n.has("degree") ? n.at("degree").index() : (perms.empty() ? 0 : perms[0].size());
        return detail::resolving(n, [&] { return group_from_permutations(name, perms, degree); });
    }
    n.fail("a group needs \"table\", \"generators\" or \"catalog\"");
}

/// Ring by name, builder, or additive orders + structure constants + involution.
inline FinRingInv parse_ring(const Node& n, const Registry& reg) {
    if (n.json().is_string()) return detail::resolving(n, [&] { return reg.ring(n.str()); });
    const std::string name = detail::name_of(n);
    if (n.has("builder")) {
        const std::string b = n.at("builder").str();
        if (b == "zmod") {
            const Int m = n.at("m").integer();
            if (m < 1) n.at("m").fail("modulus must be positive");
            return zmod(m);
        }
        if (b == "matrix") {
            FinRingInv r = parse_ring(n.at("ring"), reg);
            const std::size_t k = n.at("n").index();
            if (k < 1 || k > 4) n.at("n").fail("matrix size must be in 1..4");
            return detail::resolving(n, [&] { return matrix_ring(r, k); });
        }
        if (b == "group_algebra") {
            FinRingInv r = parse_ring(n.at("ring"), reg);
            FinGroup g = parse_group(n.at("group"), reg);
            std::vector<std::size_t> tau = n.has("tau") ? n.at("tau").indices() : g.inversion();
            return detail::resolving(n, [&] { return group_algebra(r, g, tau); });
        }
        n.at("builder").fail("unknown ring builder " + b);
    }
    std::vector<Int> orders = n.at("orders").ints();
    for (Int o : orders)
        if (o < 1) n.at("orders").fail("additive orders must be positive");
    const std::size_t k = orders.size();
    std::vector<Int> structure = n.at("structure").ints();
    Coords one = n.at("one").ints();
    if (one.size() != k) n.at("one").fail("expected " + std::to_string(k) + " coordinates");
    IntMatrix w = n.has("involution") ? n.at("involution").matrix(k, k) : IntMatrix::identity(k);
    FinRingInv r = detail::resolving(n, [&] { return FinRingInv(name, FinAbGroup(orders), structure, one, w); });
    CheckReport ax = check_ring_axioms(r);
    if (!ax.passed())
        throw ValidationError(n.path() + ": " + ax.first_failure()->name + " fails at " + ax.first_failure()->witness);
    CheckReport inv = check_anti_involution(r);
    if (!inv.passed())
        throw ValidationError(n.path() + ": " + inv.first_failure()->name + " fails at " + inv.first_failure()->witness);
    return r;
}

/// Raw Mackey data: level orders, the three structure maps as matrices, the
/// ring on the underlying level and one action matrix per underlying element.
inline HermMackey parse_raw_mackey(const Node& n, const Registry& reg, const std::string& name) {
    FinAbGroup U(n.at("under").ints()), F(n.at("fix").ints());
    for (Int o : U.orders())
        if (o < 1) n.at("under").fail("orders must be positive");
    for (Int o : F.orders())
        if (o < 1) n.at("fix").fail("orders must be positive");
    if (!U.enumerable() || !F.enumerable() || U.size() > (1u << 16) || F.size() > (1u << 20))
        n.fail("levels are too large (at most 2^16 underlying and 2^20 fixed elements)");
    const std::size_t ku = U.rank(), kf = F.rank();
    IntMatrix w = n.at("w").matrix(ku, ku), res = n.at("res").matrix(ku, kf), tr = n.at("tr").matrix(kf, ku);
    MackeyZ2 base = detail::resolving(n, [&] { return MackeyZ2(U, F, GroupHom(U, U, w), GroupHom(F, U, res), GroupHom(U, F, tr)); });
    FinRingInv ring = parse_ring(n.at("ring"), reg);
    Node act = n.at("action");
    if (act.size() != U.size()) act.fail("expected one matrix per element of the underlying level (" + std::to_string(U.size()) + ")");
    auto endo = std::make_shared<std::vector<IntMatrix>>();
    for (std::size_t a = 0; a < U.size(); ++a) endo->push_back(act.at(a).matrix(kf, kf));
    HermMackey h = detail::resolving(n, [&] {
        return HermMackey(name, base, ring, [endo, F](Elem a, Elem b) {
            const IntMatrix& m = (*endo)[a];
            Coords x = F.decode(b), y(x.size(), 0);
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = 0; j < x.size(); ++j) y[i] += m(i, j) * x[j];
            return F.encode(y);
        });
    });
    if (n.has("fix_unit")) {
        Coords u = n.at("fix_unit").ints();
        if (u.size() != kf) n.at("fix_unit").fail("expected " + std::to_string(kf) + " coordinates");
        h = h.with_fix_unit(F.encode(u));
    }
    return h;
}

inline HermMackey parse_mackey(const Node& n, const Registry& reg) {
    if (n.json().is_string()) return detail::resolving(n, [&] { return reg.mackey(n.str()); });
    std::string name = detail::name_of(n);
    HermMackey h;
    if (n.has("builder")) {
        const std::string b = n.at("builder").str();
        if (b == "burnside_mod") {
            const Int m = n.at("m").integer();
            if (m < 1 || m > 64) n.at("m").fail("modulus must be in 1..64");
            h = burnside_mod(m).with_tambara(burnside_tambara(m));
        } else if (b == "underline") {
            FinRingInv r = parse_ring(n.at("ring"), reg);
            h = detail::resolving(n, [&] { return underline_of_ring(r, name); });
            if (r.is_commutative() && r.involution().same_map(GroupHom::identity(r.additive())))
                h = h.with_tambara(underline_tambara(r));
        } else if (b == "matrix") {
            HermMackey base = parse_mackey(n.at("mackey"), reg);
            const std::size_t k = n.at("n").index();
            if (k < 1 || k > 4) n.at("n").fail("matrix size must be in 1..4");
            h = detail::resolving(n, [&] { return matrix_mackey(base, k); });
        } else if (b == "group") {
            GroupMackeyParams params;
            params.base = parse_mackey(n.at("mackey"), reg);
            params.pi = parse_group(n.at("group"), reg);
            if (n.has("tau")) params.tau = n.at("tau").indices();
            if (n.has("section")) params.section = n.at("section").indices();
            h = detail::resolving(n, [&] { return group_mackey(params); });
        } else if (b == "catalog") {
            h = detail::resolving(n, [&] { return catalog_mackey(n.at("of").str()); });
        } else {
            n.at("builder").fail("unknown Mackey builder " + b);
        }
    } else {
        h = parse_raw_mackey(n, reg, name);
    }
    return name.empty() ? h : h.renamed(name);
}

inline TambaraDecl parse_tambara(const Node& n, const Registry& reg) {
    if (n.json().is_string()) return detail::resolving(n, [&] { return reg.tambara(n.str()); });
    const std::string name = detail::name_of(n);
    if (n.has("builder")) {
        const std::string b = n.at("builder").str();
        if (b == "burnside") {
            const Int m = n.at("m").integer();
            if (m < 1 || m > 64) n.at("m").fail("modulus must be in 1..64");
            return {name, burnside_tambara(m)};
        }
        if (b == "underline") {
            FinRingInv r = parse_ring(n.at("ring"), reg);
            return {name, detail::resolving(n, [&] { return underline_tambara(r); })};
        }
        n.at("builder").fail("unknown Tambara builder " + b);
    }
    FinAbGroup U(n.at("under").ints()), F(n.at("fix").ints());
    if (!U.enumerable() || !F.enumerable() || U.size() > (1u << 16) || F.size() > (1u << 20))
        n.fail("levels are too large (at most 2^16 underlying and 2^20 fixed elements)");
    const std::size_t ku = U.rank(), kf = F.rank();
    IntMatrix w = n.at("w").matrix(ku, ku), res = n.at("res").matrix(ku, kf), tr = n.at("tr").matrix(kf, ku);
    MackeyZ2 base = detail::resolving(n, [&] { return MackeyZ2(U, F, GroupHom(U, U, w), GroupHom(F, U, res), GroupHom(U, F, tr)); });
    FinRingInv R = parse_ring(n.at("under_ring"), reg);
    FinRingInv S = parse_ring(n.at("fix_ring"), reg);
    Node norm = n.at("norm");
    if (norm.size() != U.size()) norm.fail("expected one value per element of the underlying level");
    std::vector<Elem> values;
    for (std::size_t a = 0; a < norm.size(); ++a) {
        Coords c = norm.at(a).ints();
        if (c.size() != kf) norm.at(a).fail("expected " + std::to_string(kf) + " coordinates");
        values.push_back(F.encode(c));
    }
    auto t = detail::resolving(n, [&] {
        return std::make_shared<const TambaraZ2>(base, R, S, [values](Elem a) { return values[a]; });
    });
    return {name, t};
}

/// Builder morphisms keep their own source and target unless the document
/// names structurally identical ones.
inline HermMorphism parse_morphism(const Node& n, const Registry& reg) {
    if (n.json().is_string()) return detail::resolving(n, [&] { return reg.morphism(n.str()); });
    const std::string name = detail::name_of(n);
    HermMorphism f;
    if (n.has("builder")) {
        const std::string b = n.at("builder").str();
        if (b == "identity") {
            f = identity_morphism(parse_mackey(n.at("mackey"), reg));
        } else if (b == "rank" || b == "half_transfer") {
            const Int m = n.at("m").integer();
            if (m < 1 || m > 64) n.at("m").fail("modulus must be in 1..64");
            FinGroup pi = n.has("group") ? parse_group(n.at("group"), reg) : trivial_group();
            f = detail::resolving(n, [&] {
                if (b == "rank") return pi.order() == 1 ? rank_map_trivial(m) : rank_map(m, pi);
                return pi.order() == 1 ? half_transfer_trivial(m) : half_transfer_section(m, pi);
            });
        } else {
            n.at("builder").fail("unknown morphism builder " + b);
        }
        auto adopt = [&](const char* key, HermMackey& slot) {
            if (!n.has(key)) return;
            HermMackey named = parse_mackey(n.at(key), reg);
            if (!named.same_structure(slot)) n.at(key).fail("does not match the builder's " + std::string(key));
            slot = named;
        };
        adopt("source", f.source);
        adopt("target", f.target);
    } else {
        f.source = parse_mackey(n.at("source"), reg);
        f.target = parse_mackey(n.at("target"), reg);
        IntMatrix u = n.at("under").matrix(f.target.under().rank(), f.source.under().rank());
        IntMatrix x = n.at("fix").matrix(f.target.fix().rank(), f.source.fix().rank());
        f.f_under = GroupHom(f.source.under(), f.target.under(), u);
        f.f_fix = GroupHom(f.source.fix(), f.target.fix(), x);
        if (!f.f_under.well_defined() || !f.f_fix.well_defined())
            throw ValidationError(n.path() + ": level maps do not respect the cyclic orders");
        f.unital = n.has("unital") ? n.at("unital").boolean() : true;
    }
    if (!name.empty()) f.name = name;
    return f;
}

inline MonoidAI parse_monoid(const Node& n, const Registry& reg) {
    if (n.json().is_string()) return detail::resolving(n, [&] { return reg.monoid(n.str()); });
    const std::string name = detail::name_of(n);
    if (n.has("group")) {
        FinGroup g = parse_group(n.at("group"), reg);
        if (!n.has("involution")) return detail::resolving(n, [&] { return monoid_of_group(g, g.inversion(), name); });
        std::vector<std::size_t> w = n.at("involution").indices();
        return detail::resolving(n, [&] { return monoid_of_group(g, w, name); });
    }
    if (n.has("ring")) {
        FinRingInv r = parse_ring(n.at("ring"), reg);
        return detail::resolving(n, [&] { return multiplicative_monoid(r, name); });
    }
    std::vector<std::size_t> table = n.at("table").flat_indices();
    std::size_t order = 0;
    while (order * order < table.size()) ++order;
    if (order * order != table.size()) n.at("table").fail("table length is not a square");
    std::vector<std::string> labels;
    if (n.has("labels"))
        labels = n.at("labels").strings();
    else
        for (std::size_t i = 0; i < order; ++i) labels.push_back(std::to_string(i));
    std::vector<std::size_t> w = n.at("involution").indices();
    MonoidAI m = detail::resolving(n, [&] { return MonoidAI(name, labels, table, w); });
    // Nerves are built over unital monoids.
    bool unital = false;
    for (std::size_t e = 0; e < order && !unital; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < order && ok; ++a) ok = m.mul(e, a) == a && m.mul(a, e) == a;
        unital = ok;
    }
    if (!unital) throw ValidationError(n.path() + ": monoid " + name + " has no unit");
    return m;
}

/// A task: a command plus its named arguments, kept as JSON.
struct Task {
    std::string command;
    Json args;  // object
    std::string path;
};

inline const std::vector<std::string>& task_commands() {
    static const std::vector<std::string> c = {"check-axioms", "classify-forms", "kh0",           "witt0",
                                               "induced-map",  "nerve-homology", "fixed-iso-check", "involution-classes",
                                               "lambda-check"};
    return c;
}

struct Problem {
    Registry registry;
    std::vector<Task> tasks;
};

inline const std::vector<std::string>& declaration_kinds() {
    static const std::vector<std::string> k = {"group", "ring", "mackey", "tambara", "morphism", "monoid"};
    return k;
}

/// Adds one declaration to the registry.
inline void declare(const Node& n, Registry& reg) {
    const std::string kind = n.at("kind").str();
    const std::string name = n.at("name").str();
    if (name.empty()) n.at("name").fail("names must be nonempty");
    if (kind == "group")
        reg.add(name, parse_group(n, reg));
    else if (kind == "ring")
        reg.add(name, parse_ring(n, reg));
    else if (kind == "mackey")
        reg.add(name, parse_mackey(n, reg));
    else if (kind == "tambara")
        reg.add(name, parse_tambara(n, reg));
    else if (kind == "morphism")
        reg.add(name, parse_morphism(n, reg));
    else if (kind == "monoid")
        reg.add(name, parse_monoid(n, reg));
    else
        n.at("kind").fail("unknown declaration kind " + kind);
    reg.note(name, kind);
}

inline Task parse_task(const Node& n) {
    if (!n.json().is_object()) n.fail("a task must be an object");
    Task t{n.at("command").str(), n.json(), n.path()};
    const auto& cmds = task_commands();
    if (std::find(cmds.begin(), cmds.end(), t.command) == cmds.end()) n.at("command").fail("unknown command " + t.command);
    if (n.has("kind")) {
        const std::string k = n.at("kind").str();
        if (k != "form-task" && k != "nerve-task" && k != "check-task") n.at("kind").fail("unknown task kind " + k);
    }
    t.args.erase("command");
    t.args.erase("kind");
    return t;
}

/// Accepts a full document {"declarations": [...], "tasks": [...]}, a bare
/// list of declarations, or a single declaration object.
inline Problem parse_problem(const Json& doc) {
    Problem p;
    Node root(doc, "$");
    auto declare_all = [&](const Node& list) {
        for (std::size_t i = 0; i < list.size(); ++i) declare(list.at(i), p.registry);
    };
    if (doc.is_array()) {
        declare_all(root);
    } else if (doc.is_object() && doc.contains("kind")) {
        declare(root, p.registry);
    } else if (doc.is_object()) {
        for (auto it = doc.begin(); it != doc.end(); ++it)
            if (it.key() != "declarations" && it.key() != "tasks") root.fail("unexpected top-level field \"" + it.key() + "\"");
        if (root.has("declarations")) declare_all(root.at("declarations"));
        if (root.has("tasks")) {
            Node tasks = root.at("tasks");
            for (std::size_t i = 0; i < tasks.size(); ++i) p.tasks.push_back(parse_task(tasks.at(i)));
        }
    } else {
        root.fail("expected an object or an array");
    }
    return p;
}

inline Problem parse_input(const std::string& text) { return parse_problem(parse_json_text(text)); }

// ---- serialization -------------------------------------------------------

inline Json matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

inline Json to_json(const FinGroup& g) {
    Json j;
    j["kind"] = "group";
    j["name"] = g.name();
    j["labels"] = g.labels();
    const std::size_t n = g.order();
    Json rows = Json::array();
    for (std::size_t a = 0; a < n; ++a) {
        Json r = Json::array();
        for (std::size_t b = 0; b < n; ++b) r.push_back(g.mul(a, b));
        rows.push_back(r);
    }
    j["table"] = rows;
    return j;
}

inline Json to_json(const FinRingInv& r) {
    Json j;
    j["kind"] = "ring";
    j["name"] = r.name();
    j["orders"] = r.additive().orders();
    j["structure"] = r.structure();
    j["one"] = r.coords(r.one());
    j["involution"] = matrix_json(r.involution().matrix());
    return j;
}

inline Json to_json(const HermMackey& h) {
    Json j;
    j["kind"] = "mackey";
    j["name"] = h.name();
    j["under"] = h.under().orders();
    j["fix"] = h.fix().orders();
    j["w"] = matrix_json(h.base().w_hom().matrix());
    j["res"] = matrix_json(h.base().res_hom().matrix());
    j["tr"] = matrix_json(h.base().tr_hom().matrix());
    Json ring = to_json(h.ring());
    ring.erase("kind");
    j["ring"] = ring;
    Json act = Json::array();
    for (std::uint64_t a = 0; a < h.under().size(); ++a) act.push_back(matrix_json(h.endomorphism(Elem(a))));
    j["action"] = act;
    if (h.fix_unit()) j["fix_unit"] = h.fix().decode(*h.fix_unit());
    return j;
}

inline Json to_json(const TambaraDecl& t) {
    Json j;
    j["kind"] = "tambara";
    j["name"] = t.name;
    const MackeyZ2& m = t.tambara->base();
    j["under"] = m.under().orders();
    j["fix"] = m.fix().orders();
    j["w"] = matrix_json(m.w_hom().matrix());
    j["res"] = matrix_json(m.res_hom().matrix());
    j["tr"] = matrix_json(m.tr_hom().matrix());
    for (auto [key, ring] : {std::pair{"under_ring", &t.tambara->under_ring()}, std::pair{"fix_ring", &t.tambara->fix_ring()}}) {
        Json r = to_json(*ring);
        r.erase("kind");
        j[key] = r;
    }
    Json norm = Json::array();
    const FinAbGroup& F = m.fix();
    for (std::uint64_t a = 0; a < t.tambara->base().under().size(); ++a) norm.push_back(F.decode(t.tambara->norm(Elem(a))));
    j["norm"] = norm;
    return j;
}

inline Json to_json(const HermMorphism& f) {
    Json j;
    j["kind"] = "morphism";
    j["name"] = f.name;
    j["source"] = f.source.name();
    j["target"] = f.target.name();
    j["under"] = matrix_json(f.f_under.matrix());
    j["fix"] = matrix_json(f.f_fix.matrix());
    j["unital"] = f.unital;
    return j;
}

inline Json to_json(const MonoidAI& m) {
    Json j;
    j["kind"] = "monoid";
    j["name"] = m.name();
    j["labels"] = m.labels();
    j["table"] = m.table();
    j["involution"] = m.involution();
    return j;
}

inline bool same_tambara(const TambaraZ2& a, const TambaraZ2& b) {
    if (!(a.base() == b.base()) || !(a.under_ring() == b.under_ring()) || !(a.fix_ring() == b.fix_ring())) return false;
    for (std::uint64_t x = 0; x < a.base().under().size(); ++x)
        if (a.norm(Elem(x)) != b.norm(Elem(x))) return false;
    return true;
}

}  // namespace hermackey::cli
