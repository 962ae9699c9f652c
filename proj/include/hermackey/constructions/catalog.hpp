#pragma once

// Named rings, groups and Hermitian Mackey functors.
//
//   Z/m          the ring Z/m with trivial involution
//   M2(Z/3)      2x2 matrices over Z/3 with the transpose
//   Um           underline(Z/m) with its Tambara structure;  UM2 = underline(M2(Z/3))
//   Am           Burnside functor mod m with its Tambara structure
//   Mn(X)        matrix Mackey functor of X
//   X[G]         group Mackey functor of X over the named group, tau = inversion
//
// Groups: 1, Z2, Z3, Z4, Zn, S3, D4, Q8.

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "hermackey/constructions/group_mackey.hpp"
#include "hermackey/constructions/matrix_mackey.hpp"

namespace hermackey {

struct UnknownName : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool all_digits(const std::string& s) {
    return !s.empty() && s.size() < 6 &&
           std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace detail

inline FinGroup catalog_group(const std::string& name) {
    if (name == "1" || name == "trivial") return trivial_group();
    if (name == "S3") return symmetric_group_3();
    if (name == "Q8") return quaternion_group();
    if (name == "D4") return dihedral_group(4);
    if (name.size() > 1 && name[0] == 'Z') {
        const std::string digits = name.substr(name[1] == '/' ? 2 : 1);
        if (detail::all_digits(digits) && std::stoul(digits) >= 1) return cyclic_group(std::stoul(digits));
    }
    throw UnknownName("unknown group " + name);
}

inline std::vector<std::string> catalog_group_names() { return {"Z2", "Z4", "S3", "D4", "Q8"}; }

inline FinRingInv catalog_ring(const std::string& name) {
    if (name == "M2(Z/3)") return matrix_ring(zmod(3), 2);
    if (name.rfind("Z/", 0) == 0) {
        const std::string digits = name.substr(2);
        if (detail::all_digits(digits) && std::stoll(digits) >= 1) return zmod(std::stoll(digits));
    }
    throw UnknownName("unknown ring " + name);
}

inline std::vector<std::string> catalog_ring_names() { return {"Z/3", "Z/4", "Z/5", "Z/9", "M2(Z/3)"}; }

inline HermMackey catalog_mackey(const std::string& name) {
    if (name.empty()) throw UnknownName("empty Mackey functor name");
    if (name.back() == ']') {
        const std::size_t open = name.rfind('[');
        if (open == std::string::npos || open == 0) throw UnknownName("unknown Mackey functor " + name);
        HermMackey base = catalog_mackey(name.substr(0, open));
        return group_mackey(base, catalog_group(name.substr(open + 1, name.size() - open - 2))).renamed(name);
    }
    if (name[0] == 'M' && name.back() == ')') {
        const std::size_t open = name.find('(');
        if (open != std::string::npos && detail::all_digits(name.substr(1, open - 1))) {
            const std::size_t n = std::stoul(name.substr(1, open - 1));
            HermMackey base = catalog_mackey(name.substr(open + 1, name.size() - open - 2));
            return matrix_mackey(base, n).renamed(name);
        }
    }
    if (name == "UM2") return underline_of_ring(matrix_ring(zmod(3), 2), "UM2");
    if (name.size() > 1 && detail::all_digits(name.substr(1))) {
        const Int m = std::stoll(name.substr(1));
        if (name[0] == 'U' && m >= 1) return underline_of_ring(zmod(m), name).with_tambara(underline_tambara(zmod(m)));
        if (name[0] == 'A' && m >= 1) return burnside_mod(m).renamed(name).with_tambara(burnside_tambara(m));
    }
    throw UnknownName("unknown Mackey functor " + name);
}

/// The instances the axiom suites run over.
inline std::vector<std::string> catalog_mackey_names() {
    return {"U3",        "U4",        "U5",        "U9",        "UM2",       "A3",       "A5",
            "M2(U3)",    "M2(U4)",    "M2(U5)",    "M2(A3)",    "M2(A5)",    "U3[Z2]",   "U3[Z3]",
            "U3[S3]",    "A3[Z2]",    "A3[Z3]",    "A3[S3]",    "U5[Z2]",    "A5[Z2]"};
}

}  // namespace hermackey
