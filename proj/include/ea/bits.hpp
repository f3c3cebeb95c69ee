#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace ea {

/// Fixed-width bitset sized at runtime. Used for element subsets and as
/// rows of relation matrices; n stays small (carrier cap 16384) so the
/// word vector is cheap to copy.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    friend Bits operator&(Bits a, const Bits& b) { a &= b; return a; }
    friend Bits operator|(Bits a, const Bits& b) { a |= b; return a; }
    friend bool operator==(const Bits& a, const Bits& b) { return a.w_ == b.w_; }

    bool is_subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    /// Calls f(i) for every set bit, ascending.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                unsigned b = std::countr_zero(w);
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

    // lexicographic on word vectors; total order for canonical sorting
    friend bool operator<(const Bits& a, const Bits& b) { return a.w_ < b.w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Square boolean matrix with 64-bit packed rows.
class Bitmat {
public:
    Bitmat() = default;
    explicit Bitmat(std::size_t n) : n_(n), words_((n + 63) / 64), v_(n * words_, 0) {}

    std::size_t dim() const { return n_; }
    std::size_t words_per_row() const { return words_; }

    void set(std::size_t r, std::size_t c) {
        v_[r * words_ + (c >> 6)] |= (std::uint64_t{1} << (c & 63));
    }
    bool get(std::size_t r, std::size_t c) const {
        return (v_[r * words_ + (c >> 6)] >> (c & 63)) & 1;
    }
    const std::uint64_t* row(std::size_t r) const { return v_.data() + r * words_; }

    Bits row_bits(std::size_t r) const {
        Bits b(n_);
        const std::uint64_t* p = row(r);
        for (std::size_t i = 0; i < words_; ++i) b.words()[i] = p[i];
        return b;
    }

private:
    std::size_t n_ = 0, words_ = 0;
    std::vector<std::uint64_t> v_;
};

namespace detail {

inline bool rows_and_any(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

/// true iff (a & b) is a subset of c
inline bool rows_and_subset(const std::uint64_t* a, const std::uint64_t* b,
                            const std::uint64_t* c, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i)
        if ((a[i] & b[i]) & ~c[i]) return false;
    return true;
}

template <typename F>
inline void rows_and_for_each(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t words, F&& f) {
    for (std::size_t wi = 0; wi < words; ++wi) {
        std::uint64_t w = a[wi] & b[wi];
        while (w) {
            unsigned bit = std::countr_zero(w);
            f(wi * 64 + bit);
            w &= w - 1;
        }
    }
}

} // namespace detail
} // namespace ea
