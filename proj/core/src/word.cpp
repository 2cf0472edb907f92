#include "fockalg/word.hpp"

#include <algorithm>
#include <limits>

#include "fockalg/errors.hpp"

namespace fockalg {

Word::Word(std::initializer_list<int> letters) : letters_(letters) {
    for (int l : letters_) {
        if (l < 1) throw ArgumentError("word letters are 1-based generator indices");
    }
}

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int l : letters_) {
        if (l < 1) throw ArgumentError("word letters are 1-based generator indices");
    }
}

int Word::max_letter() const noexcept {
    return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
}

Word Word::reversed() const {
    Word r;
    r.letters_.assign(letters_.rbegin(), letters_.rend());
    return r;
}

Word operator*(const Word& a, const Word& b) {
    Word r;
    r.letters_.reserve(a.length() + b.length());
    r.letters_.insert(r.letters_.end(), a.letters_.begin(), a.letters_.end());
    r.letters_.insert(r.letters_.end(), b.letters_.begin(), b.letters_.end());
    return r;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    return a.letters_ <=> b.letters_;
}

std::string Word::to_string() const {
    if (letters_.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) s += ' ';
        s += 'g';
        s += std::to_string(letters_[i]);
    }
    return s;
}

std::size_t power(std::size_t n, int k) noexcept {
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (n != 0 && r > std::numeric_limits<std::size_t>::max() / n) {
            return std::numeric_limits<std::size_t>::max();
        }
        r *= n;
    }
    return r;
}

std::size_t fock_dimension(int n, int m) noexcept {
    std::size_t total = 0;
    for (int k = 0; k <= m; ++k) {
        const std::size_t p = power(static_cast<std::size_t>(n), k);
        if (p > std::numeric_limits<std::size_t>::max() - total) {
            return std::numeric_limits<std::size_t>::max();
        }
        total += p;
    }
    return total;
}

void require_fock_dimension(int n, int m) {
    if (n < 1) throw ArgumentError("generator count must be positive");
    if (m < 0) throw ArgumentError("truncation degree must be nonnegative");
    const std::size_t d = fock_dimension(n, m);
    if (d > kMaxFockDimension) {
        throw ResourceError("truncated Fock space D(" + std::to_string(n) + "," + std::to_string(m) +
                            ") exceeds the cap of " + std::to_string(kMaxFockDimension));
    }
}

std::size_t lex_rank(const Word& w, int n) {
    std::size_t r = 0;
    for (int l : w.letters()) {
        if (l > n) throw ArgumentError("word letter exceeds generator count");
        r = r * static_cast<std::size_t>(n) + static_cast<std::size_t>(l - 1);
    }
    return r;
}

WordIndex::WordIndex(int n, int m) : n_(n), m_(m) {
    require_fock_dimension(n, m);
    offsets_.resize(static_cast<std::size_t>(m) + 2);
    offsets_[0] = 0;
    for (int k = 0; k <= m; ++k) {
        offsets_[k + 1] = offsets_[k] + power(static_cast<std::size_t>(n), k);
    }
}

std::size_t WordIndex::index(const Word& w) const {
    if (static_cast<int>(w.length()) > m_) throw ArgumentError("word longer than truncation degree");
    return offsets_[w.length()] + lex_rank(w, n_);
}

int WordIndex::grade_of(std::size_t idx) const {
    if (idx >= dim()) throw ArgumentError("index outside the truncated Fock space");
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), idx);
    return static_cast<int>(it - offsets_.begin()) - 1;
}

Word WordIndex::word(std::size_t idx) const {
    const int k = grade_of(idx);
    std::size_t r = idx - offsets_[k];
    std::vector<int> letters(static_cast<std::size_t>(k));
    for (int pos = k - 1; pos >= 0; --pos) {
        letters[pos] = static_cast<int>(r % static_cast<std::size_t>(n_)) + 1;
        r /= static_cast<std::size_t>(n_);
    }
    return Word(std::move(letters));
}

}  // namespace fockalg
