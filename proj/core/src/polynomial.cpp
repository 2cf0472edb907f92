#include "fockalg/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "fockalg/errors.hpp"

namespace fockalg {

BallPoint::BallPoint(std::initializer_list<Complex> coords) : coords_(static_cast<Eigen::Index>(coords.size())) {
    Eigen::Index t = 0;
    for (const Complex& c : coords) coords_(t++) = c;
}

Complex BallPoint::monomial(const Word& w) const {
    Complex r = 1.0;
    for (int l : w.letters()) {
        if (l > dimension()) throw ArgumentError("word letter exceeds point dimension");
        r *= coords_(l - 1);
    }
    return r;
}

Complex inner(const BallPoint& a, const BallPoint& b) {
    if (a.dimension() != b.dimension()) throw ArgumentError("points of different dimension");
    return b.coords().dot(a.coords());  // Eigen's dot conjugates its left operand
}

NcPolynomial::NcPolynomial(int n) : n_(n) {
    if (n < 1) throw ArgumentError("generator count must be positive");
}

NcPolynomial NcPolynomial::constant(int n, Complex c) {
    return monomial(n, Word{}, c);
}

NcPolynomial NcPolynomial::monomial(int n, const Word& w, Complex c) {
    NcPolynomial p(n);
    p.add_term(w, c);
    return p;
}

NcPolynomial NcPolynomial::generator(int n, int i) {
    return monomial(n, Word{i}, 1.0);
}

int NcPolynomial::degree() const noexcept {
    if (terms_.empty()) return kZeroDegree;
    // graded order: the last key has maximal length
    return static_cast<int>(terms_.rbegin()->first.length());
}

bool NcPolynomial::is_homogeneous() const noexcept {
    if (terms_.empty()) return true;
    return terms_.begin()->first.length() == terms_.rbegin()->first.length();
}

Complex NcPolynomial::coeff(const Word& w) const {
    const auto it = terms_.find(w);
    return it == terms_.end() ? Complex{} : it->second;
}

void NcPolynomial::add_term(const Word& w, Complex c) {
    if (w.max_letter() > n_) throw ArgumentError("word letter exceeds generator count");
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kCoefficientDropTolerance) terms_.erase(it);
}

NcPolynomial NcPolynomial::homogeneous_component(int k) const {
    NcPolynomial r(n_);
    for (const auto& [w, c] : terms_) {
        if (static_cast<int>(w.length()) == k) r.terms_.emplace(w, c);
    }
    return r;
}

double NcPolynomial::l2_norm() const {
    double s = 0.0;
    for (const auto& [w, c] : terms_) s += std::norm(c);
    return std::sqrt(s);
}

void NcPolynomial::check_same_n(const NcPolynomial& q) const {
    if (n_ != q.n_) throw ArgumentError("polynomials over different generator counts");
}

NcPolynomial& NcPolynomial::operator+=(const NcPolynomial& q) {
    check_same_n(q);
    for (const auto& [w, c] : q.terms_) add_term(w, c);
    return *this;
}

NcPolynomial& NcPolynomial::operator-=(const NcPolynomial& q) {
    check_same_n(q);
    for (const auto& [w, c] : q.terms_) add_term(w, -c);
    return *this;
}

NcPolynomial& NcPolynomial::operator*=(Complex s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        if (std::abs(it->second) < kCoefficientDropTolerance) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

NcPolynomial tensor_product(const NcPolynomial& p, const NcPolynomial& q) {
    if (p.generators() != q.generators()) throw ArgumentError("polynomials over different generator counts");
    NcPolynomial r(p.generators());
    for (const auto& [a, ca] : p.terms()) {
        for (const auto& [b, cb] : q.terms()) r.add_term(a * b, ca * cb);
    }
    return r;
}

NcPolynomial flip(const NcPolynomial& p) {
    NcPolynomial r(p.generators());
    for (const auto& [w, c] : p.terms()) r.add_term(w.reversed(), c);
    return r;
}

Complex evaluate(const NcPolynomial& p, const BallPoint& lambda) {
    if (lambda.dimension() != p.generators()) throw ArgumentError("point dimension differs from generator count");
    Complex s = 0.0;
    for (const auto& [w, c] : p.terms()) s += c * lambda.monomial(w);
    return s;
}

namespace {

// p(T) = a_e I + Σ_i T_i p_i(T), where p_i collects the words beginning with i
// (first letter stripped). Terms are visited in graded order, so we regroup by
// first letter explicitly.
CMatrix evaluate_suffixes(const std::vector<std::pair<std::span<const int>, Complex>>& terms,
                          std::span<const CMatrix> tuple, Eigen::Index d) {
    CMatrix result = CMatrix::Zero(d, d);
    const int n = static_cast<int>(tuple.size());
    std::vector<std::vector<std::pair<std::span<const int>, Complex>>> by_letter(static_cast<std::size_t>(n));
    for (const auto& [letters, c] : terms) {
        if (letters.empty()) {
            result.diagonal().array() += c;
        } else {
            by_letter[letters[0] - 1].emplace_back(letters.subspan(1), c);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (by_letter[i].empty()) continue;
        result.noalias() += tuple[i] * evaluate_suffixes(by_letter[i], tuple, d);
    }
    return result;
}

}  // namespace

CMatrix evaluate(const NcPolynomial& p, std::span<const CMatrix> tuple) {
    if (static_cast<int>(tuple.size()) != p.generators()) {
        throw ArgumentError("operator tuple length differs from generator count");
    }
    if (tuple.empty()) throw ArgumentError("empty operator tuple");
    const Eigen::Index d = tuple[0].rows();
    for (const CMatrix& t : tuple) {
        if (t.rows() != d || t.cols() != d) throw ArgumentError("operator tuple entries must be square of equal size");
    }
    std::vector<std::pair<std::span<const int>, Complex>> terms;
    terms.reserve(p.size());
    for (const auto& [w, c] : p.terms()) terms.emplace_back(w.letters(), c);
    return evaluate_suffixes(terms, tuple, d);
}

NcMatrixPolynomial::NcMatrixPolynomial(int n, int rows, int cols)
    : n_(n), rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), NcPolynomial(n)) {
    if (rows < 1 || cols < 1) throw ArgumentError("matrix polynomial needs positive dimensions");
}

NcPolynomial& NcMatrixPolynomial::at(int r, int c) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ArgumentError("matrix polynomial index out of range");
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

const NcPolynomial& NcMatrixPolynomial::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ArgumentError("matrix polynomial index out of range");
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

int NcMatrixPolynomial::degree() const noexcept {
    int d = NcPolynomial::kZeroDegree;
    for (const auto& p : entries_) d = std::max(d, p.degree());
    return d;
}

CMatrix NcMatrixPolynomial::evaluate(const BallPoint& lambda) const {
    CMatrix out(rows_, cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out(r, c) = fockalg::evaluate(at(r, c), lambda);
    }
    return out;
}

}  // namespace fockalg
