#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fockalg {

/// Upper bound on D(n, m) for any truncated Fock space the library builds.
inline constexpr std::size_t kMaxFockDimension = 1'000'000;

/// A word g_{i1} g_{i2} ... g_{ik} in the free semigroup on n generators.
/// Letters are 1-based; the empty word is the identity e.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters);
    explicit Word(std::vector<int> letters);

    static Word letter(int i) { return Word{i}; }

    [[nodiscard]] std::size_t length() const noexcept { return letters_.size(); }
    [[nodiscard]] bool empty() const noexcept { return letters_.empty(); }
    [[nodiscard]] int operator[](std::size_t pos) const { return letters_[pos]; }
    [[nodiscard]] std::span<const int> letters() const noexcept { return letters_; }

    [[nodiscard]] int max_letter() const noexcept;
    [[nodiscard]] Word reversed() const;

    /// Concatenation: the word αβ.
    friend Word operator*(const Word& a, const Word& b);

    friend bool operator==(const Word&, const Word&) = default;
    /// Graded lexicographic order: shorter words first, then letter by letter.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);

    [[nodiscard]] std::string to_string() const;

private:
    std::vector<int> letters_;
};

/// Bijection between words of length ≤ m over n letters and {0, ..., D(n,m)-1},
/// graded then lexicographic, index(e) = 0.
class WordIndex {
public:
    WordIndex(int n, int m);

    [[nodiscard]] int generators() const noexcept { return n_; }
    [[nodiscard]] int degree() const noexcept { return m_; }
    [[nodiscard]] std::size_t dim() const noexcept { return offsets_.back(); }

    /// First index of grade k (k may equal m + 1, which gives dim()).
    [[nodiscard]] std::size_t grade_offset(int k) const { return offsets_.at(k); }
    [[nodiscard]] std::size_t grade_size(int k) const { return offsets_.at(k + 1) - offsets_.at(k); }

    [[nodiscard]] std::size_t index(const Word& w) const;
    [[nodiscard]] Word word(std::size_t idx) const;
    [[nodiscard]] int grade_of(std::size_t idx) const;

private:
    int n_;
    int m_;
    std::vector<std::size_t> offsets_;
};

/// n^k, saturating at SIZE_MAX.
[[nodiscard]] std::size_t power(std::size_t n, int k) noexcept;

/// D(n, m) = sum_{k=0}^m n^k, saturating at SIZE_MAX.
[[nodiscard]] std::size_t fock_dimension(int n, int m) noexcept;

/// Rank of w inside its grade (base-n number with digits letter - 1).
[[nodiscard]] std::size_t lex_rank(const Word& w, int n);

/// Throws ResourceError when D(n, m) exceeds kMaxFockDimension.
void require_fock_dimension(int n, int m);

}  // namespace fockalg
