#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace opm {

/// Square boolean matrix stored as packed row bitsets. Used for
/// zero/nonzero pattern arithmetic (reachability, matrix-power positivity).
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n)
        : n_(n), words_(word_count(n)), bits_(n * words_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    std::size_t size() const { return n_; }

    void set(std::size_t i, std::size_t j) {
        bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }

    // Boolean product: out(i,j) = OR_k this(i,k) AND other(k,j).
    BitMatrix multiply(const BitMatrix& other) const {
        BitMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint64_t* dst = &out.bits_[i * words_];
            const std::uint64_t* row = &bits_[i * words_];
            for (std::size_t k = 0; k < n_; ++k) {
                if ((row[k / 64] >> (k % 64)) & 1u) {
                    const std::uint64_t* src = &other.bits_[k * words_];
                    for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
                }
            }
        }
        return out;
    }

    void or_with(const BitMatrix& other) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] |= other.bits_[w];
    }

    bool all_set() const {
        if (n_ == 0) return false;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (!get(i, j)) return false;
        return true;
    }

    // True iff column j is set in every row.
    bool full_column(std::size_t j) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (!get(i, j)) return false;
        return true;
    }

    bool has_full_column() const {
        if (n_ == 0) return false;
        std::vector<std::uint64_t> acc(words_, ~std::uint64_t{0});
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t w = 0; w < words_; ++w) acc[w] &= bits_[i * words_ + w];
        for (std::size_t j = 0; j < n_; ++j)
            if ((acc[j / 64] >> (j % 64)) & 1u) return true;
        return false;
    }

    bool operator==(const BitMatrix& other) const {
        return n_ == other.n_ && bits_ == other.bits_;
    }

private:
    static std::size_t word_count(std::size_t n) { return n == 0 ? 0 : (n + 63) / 64; }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace opm
