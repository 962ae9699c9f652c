#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hermackey/exactalg/abelian_group.hpp"

namespace hermackey {

/// Mixed-radix view of a direct sum of enumerable blocks. Because group
/// elements are indexed lexicographically, the index of a direct sum is the
/// mixed-radix number whose digits are the block indices.
class BlockLayout {
public:
    BlockLayout() = default;
    explicit BlockLayout(std::vector<std::uint64_t> sizes) : sizes_(std::move(sizes)), strides_(sizes_.size()) {
        long double total = 1;
        std::uint64_t s = 1;
        for (std::size_t i = sizes_.size(); i-- > 0;) {
            strides_[i] = s;
            total *= static_cast<long double>(sizes_[i]);
            if (total <= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) s *= sizes_[i];
        }
        enumerable_ = total <= static_cast<long double>(std::numeric_limits<Elem>::max());
        total_ = total;
    }

    std::size_t blocks() const { return sizes_.size(); }
    std::uint64_t block_size(std::size_t i) const { return sizes_[i]; }
    bool enumerable() const { return enumerable_; }
    long double total() const { return total_; }

    void decode(std::uint64_t e, Elem* out) const {
        for (std::size_t i = 0; i < sizes_.size(); ++i) {
            out[i] = static_cast<Elem>(e / strides_[i]);
            e %= strides_[i];
        }
    }
    std::vector<Elem> decode(std::uint64_t e) const {
        std::vector<Elem> v(sizes_.size());
        decode(e, v.data());
        return v;
    }
    std::uint64_t encode(const Elem* digits) const {
        std::uint64_t e = 0;
        for (std::size_t i = 0; i < sizes_.size(); ++i) e += digits[i] * strides_[i];
        return e;
    }
    std::uint64_t encode(const std::vector<Elem>& d) const { return encode(d.data()); }

private:
    std::vector<std::uint64_t> sizes_;
    std::vector<std::uint64_t> strides_;
    bool enumerable_ = true;
    long double total_ = 1;
};

}  // namespace hermackey
