#include "fockalg/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace fockalg::ideals {

namespace {

// Cap on rows x columns of any dense spanning block handed to an SVD.
constexpr std::size_t kMaxSpanningEntries = 20'000'000;

std::vector<NcPolynomial> normalized(const std::vector<NcPolynomial>& gens) {
    std::vector<NcPolynomial> out;
    out.reserve(gens.size());
    for (const NcPolynomial& g : gens) out.push_back(g * (1.0 / g.l2_norm()));
    return out;
}

struct TermRanks {
    int length;
    std::size_t rank;
    Complex coeff;
};

std::vector<TermRanks> term_ranks(const NcPolynomial& g) {
    std::vector<TermRanks> out;
    for (const auto& [w, c] : g.terms()) out.push_back({static_cast<int>(w.length()), lex_rank(w, g.generators()), c});
    return out;
}

// Columns e_α ⊗ g ⊗ e_β with |α| = a, |β| = b, written into `cols` starting at
// column `col`. Row coordinates are relative to `row_base(grade)`.
void padded_columns(const NcPolynomial& g, int n, int a, int b, const std::function<std::size_t(int)>& row_base,
                    CMatrix& cols, Eigen::Index& col) {
    const auto terms = term_ranks(g);
    const std::size_t na = power(static_cast<std::size_t>(n), a);
    const std::size_t nb = power(static_cast<std::size_t>(n), b);
    for (std::size_t ra = 0; ra < na; ++ra) {
        for (std::size_t rb = 0; rb < nb; ++rb) {
            for (const TermRanks& t : terms) {
                const std::size_t rank =
                    (ra * power(static_cast<std::size_t>(n), t.length) + t.rank) * nb + rb;
                cols(static_cast<Eigen::Index>(row_base(a + t.length + b) + rank), col) += t.coeff;
            }
            ++col;
        }
    }
}

void check_spanning_size(std::size_t rows, std::size_t cols) {
    if (rows != 0 && cols > kMaxSpanningEntries / rows) {
        throw ResourceError("ideal spanning set of " + std::to_string(rows) + " x " + std::to_string(cols) +
                            " entries exceeds the cap");
    }
}

CMatrix word_product(const std::vector<CMatrix>& ops, const Word& w, Eigen::Index dim) {
    CMatrix out = CMatrix::Identity(dim, dim);
    for (int l : w.letters()) out = out * ops[static_cast<std::size_t>(l - 1)];
    return out;
}

std::vector<Word> words_up_to(int n, int max_len) {
    std::vector<Word> out{Word{}};
    std::vector<Word> level{Word{}};
    for (int k = 1; k <= max_len; ++k) {
        std::vector<Word> next;
        for (const Word& w : level) {
            for (int i = 1; i <= n; ++i) next.push_back(w * Word{i});
        }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

}  // namespace

IdealSpec::IdealSpec(int n, std::vector<NcPolynomial> generators, int m)
    : n_(n), generators_(std::move(generators)), m_(m), homogeneous_(true) {
    require_fock_dimension(n, m);
    for (std::size_t t = 0; t < generators_.size(); ++t) {
        const NcPolynomial& g = generators_[t];
        const std::string where = "generators[" + std::to_string(t) + "]";
        if (g.generators() != n) throw ArgumentError(where + ": generator count mismatch");
        if (g.is_zero()) throw ArgumentError(where + ": zero generator");
        if (g.degree() > m) throw ArgumentError(where + ": degree exceeds truncation degree");
        homogeneous_ = homogeneous_ && g.is_homogeneous();
    }
}

int IdealSpec::max_generator_degree() const noexcept {
    int d = 0;
    for (const NcPolynomial& g : generators_) d = std::max(d, g.degree());
    return d;
}

IdealSpec IdealSpec::with_degree(int m) const {
    return IdealSpec(n_, generators_, m);
}

CMatrix uniform_relations(int n, Complex q) {
    CMatrix lambda = CMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) lambda(j, i) = q;
    }
    return lambda;
}

IdealSpec q_commutation_spec(int n, const CMatrix& relations, int m) {
    if (n < 2) throw ArgumentError("q-commutation relations need n ≥ 2");
    if (relations.rows() != n || relations.cols() != n) throw ArgumentError("relation matrix must be n x n");
    std::vector<NcPolynomial> gens;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            NcPolynomial g = NcPolynomial::monomial(n, Word{j, i}) -
                             NcPolynomial::monomial(n, Word{i, j}, relations(j - 1, i - 1));
            gens.push_back(std::move(g));
        }
    }
    return IdealSpec(n, std::move(gens), m);
}

CMatrix ideal_subspace(const IdealSpec& spec, double rank_tol) {
    const int n = spec.n();
    const int m = spec.degree();
    const WordIndex idx(n, m);
    const auto gens = normalized(spec.generators());
    const auto dim = static_cast<Eigen::Index>(idx.dim());

    if (spec.homogeneous()) {
        std::vector<CMatrix> blocks;
        Eigen::Index total = 0;
        for (int k = 0; k <= m; ++k) {
            std::size_t ncols = 0;
            for (const NcPolynomial& g : gens) {
                const int dg = g.degree();
                if (dg > k) continue;
                ncols += static_cast<std::size_t>(k - dg + 1) * power(static_cast<std::size_t>(n), k - dg);
            }
            check_spanning_size(idx.grade_size(k), ncols);
            CMatrix cols = CMatrix::Zero(static_cast<Eigen::Index>(idx.grade_size(k)), static_cast<Eigen::Index>(ncols));
            Eigen::Index col = 0;
            for (const NcPolynomial& g : gens) {
                const int dg = g.degree();
                for (int a = 0; a + dg <= k; ++a) {
                    padded_columns(g, n, a, k - dg - a, [](int) { return std::size_t{0}; }, cols, col);
                }
            }
            blocks.push_back(numerics::orthonormal_basis(cols, rank_tol));
            total += blocks.back().cols();
        }
        CMatrix basis = CMatrix::Zero(dim, total);
        Eigen::Index c0 = 0;
        for (int k = 0; k <= m; ++k) {
            basis.block(static_cast<Eigen::Index>(idx.grade_offset(k)), c0, blocks[k].rows(), blocks[k].cols()) =
                blocks[k];
            c0 += blocks[k].cols();
        }
        return basis;
    }

    std::size_t ncols = 0;
    for (const NcPolynomial& g : gens) {
        for (int s = 0; s + g.degree() <= m; ++s) {
            ncols += static_cast<std::size_t>(s + 1) * power(static_cast<std::size_t>(n), s);
        }
    }
    check_spanning_size(idx.dim(), ncols);
    CMatrix cols = CMatrix::Zero(dim, static_cast<Eigen::Index>(ncols));
    Eigen::Index col = 0;
    const auto base = [&idx](int grade) { return idx.grade_offset(grade); };
    for (const NcPolynomial& g : gens) {
        for (int s = 0; s + g.degree() <= m; ++s) {
            for (int a = 0; a <= s; ++a) padded_columns(g, n, a, s - a, base, cols, col);
        }
    }
    return numerics::orthonormal_basis(cols, rank_tol);
}

std::vector<int> QuotientModel::grade_dimensions() const {
    if (approximate) return {};
    std::vector<int> dims(static_cast<std::size_t>(spec.degree()) + 1, 0);
    for (int g : column_grades) ++dims[static_cast<std::size_t>(g)];
    return dims;
}

namespace {

// N_k ⊂ C^n ⊗ N_{k-1}: a vector of C^n ⊗ N_{k-1} lies in N_k iff it is
// orthogonal to every g ⊗ e_β of grade k (the other padded products
// e_i ⊗ (...) are handled by the factor N_{k-1}).
std::vector<CMatrix> graded_complement(const IdealSpec& spec, double rank_tol) {
    const int n = spec.n();
    const int m = spec.degree();
    const auto gens = normalized(spec.generators());
    const bool has_constant = std::any_of(gens.begin(), gens.end(), [](const NcPolynomial& g) { return g.degree() == 0; });

    std::vector<CMatrix> blocks;
    blocks.push_back(has_constant ? CMatrix(1, 0) : CMatrix(CMatrix::Identity(1, 1)));
    for (int k = 1; k <= m; ++k) {
        const CMatrix& prev = blocks.back();
        const Eigen::Index r = prev.cols();
        const auto prev_rows = static_cast<Eigen::Index>(power(static_cast<std::size_t>(n), k - 1));
        const Eigen::Index rows = prev_rows * n;
        if (r == 0) {
            blocks.emplace_back(rows, 0);
            continue;
        }
        const Eigen::Index lifted = r * n;

        std::vector<CVector> constraints;
        for (const NcPolynomial& g : gens) {
            const int dg = g.degree();
            if (dg > k || dg == 0) continue;
            const std::size_t nb = power(static_cast<std::size_t>(n), k - dg);
            struct Split {
                int first;
                std::size_t tail_rank;  // rank of γ' within grade dg - 1
                Complex coeff;
            };
            std::vector<Split> splits;
            for (const auto& [w, c] : g.terms()) {
                const std::vector<int> rest(w.letters().begin() + 1, w.letters().end());
                splits.push_back({w[0], lex_rank(Word(rest), n), c});
            }
            check_spanning_size(static_cast<std::size_t>(lifted), constraints.size() + nb);
            for (std::size_t rb = 0; rb < nb; ++rb) {
                CVector y = CVector::Zero(lifted);
                for (const Split& s : splits) {
                    const auto row = static_cast<Eigen::Index>(s.tail_rank * nb + rb);
                    y.segment(static_cast<Eigen::Index>(s.first - 1) * r, r) += s.coeff * prev.row(row).adjoint();
                }
                constraints.push_back(std::move(y));
            }
        }

        CMatrix coeff;
        if (constraints.empty()) {
            coeff = CMatrix::Identity(lifted, lifted);
        } else {
            CMatrix y(lifted, static_cast<Eigen::Index>(constraints.size()));
            for (std::size_t c = 0; c < constraints.size(); ++c) y.col(static_cast<Eigen::Index>(c)) = constraints[c];
            coeff = numerics::orthogonal_complement(numerics::orthonormal_basis(y, rank_tol), lifted);
        }

        CMatrix block(rows, coeff.cols());
        for (int i = 0; i < n; ++i) {
            block.middleRows(i * prev_rows, prev_rows).noalias() = prev * coeff.middleRows(i * r, r);
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace

QuotientModel build_quotient(const IdealSpec& spec, double rank_tol) {
    const int n = spec.n();
    const int m = spec.degree();
    const WordIndex idx(n, m);
    QuotientModel model{spec, {}, {}, {}, 0, !spec.homogeneous()};

    if (spec.homogeneous()) {
        const auto blocks = graded_complement(spec, rank_tol);
        Eigen::Index total = 0;
        std::size_t entries = 0;
        for (const CMatrix& b : blocks) {
            total += b.cols();
            entries += static_cast<std::size_t>(b.cols());
        }
        check_spanning_size(idx.dim(), entries);
        model.basis = CMatrix::Zero(static_cast<Eigen::Index>(idx.dim()), total);
        Eigen::Index c0 = 0;
        for (int k = 0; k <= m; ++k) {
            const CMatrix& b = blocks[static_cast<std::size_t>(k)];
            model.basis.block(static_cast<Eigen::Index>(idx.grade_offset(k)), c0, b.rows(), b.cols()) = b;
            model.column_grades.insert(model.column_grades.end(), static_cast<std::size_t>(b.cols()), k);
            c0 += b.cols();
        }
        model.reliable_degree = std::max(0, m - 1);
    } else {
        if (idx.dim() > kMaxDenseQuotientDimension) {
            throw ResourceError("non-homogeneous quotient on D(n,m) = " + std::to_string(idx.dim()) +
                                " exceeds the dense cap of " + std::to_string(kMaxDenseQuotientDimension));
        }
        const CMatrix ideal = ideal_subspace(spec, rank_tol);
        model.basis = numerics::orthogonal_complement(ideal, static_cast<Eigen::Index>(idx.dim()));
        model.column_grades.assign(static_cast<std::size_t>(model.basis.cols()), -1);
        model.reliable_degree = std::max(0, m - std::max(1, spec.max_generator_degree()));
    }

    for (int i = 1; i <= n; ++i) {
        const CSparse s = compressed_mult_matrix(NcPolynomial::generator(n, i), m);
        const CMatrix sn = s * model.basis;
        model.compressions.push_back(model.basis.adjoint() * sn);
    }
    return model;
}

CMatrix restriction_to_grades(const QuotientModel& model, int r) {
    const Eigen::Index dim = model.dim();
    if (!model.approximate) {
        std::vector<Eigen::Index> keep;
        for (Eigen::Index c = 0; c < dim; ++c) {
            if (model.column_grades[static_cast<std::size_t>(c)] <= r) keep.push_back(c);
        }
        CMatrix sel = CMatrix::Zero(dim, static_cast<Eigen::Index>(keep.size()));
        for (std::size_t t = 0; t < keep.size(); ++t) sel(keep[t], static_cast<Eigen::Index>(t)) = 1.0;
        return sel;
    }
    const auto low = static_cast<Eigen::Index>(fock_dimension(model.spec.n(), std::max(r, 0)));
    const Eigen::Index high_rows = model.basis.rows() - low;
    if (high_rows <= 0 || dim == 0) return CMatrix::Identity(dim, dim);
    return numerics::null_space(model.basis.bottomRows(high_rows));
}

double semi_invariance_residual(const QuotientModel& model) {
    if (model.trivial()) return 0.0;
    const CMatrix restricted = model.basis * restriction_to_grades(model, model.reliable_degree);
    double worst = 0.0;
    for (int i = 1; i <= model.spec.n(); ++i) {
        const CSparse adj = annihilation_matrix(model.spec.n(), i, model.spec.degree());
        const CMatrix x = adj * restricted;
        const CMatrix r = x - model.basis * (model.basis.adjoint() * x);
        worst = std::max(worst, numerics::operator_norm(r));
    }
    return worst;
}

double q_relation_residual(const QuotientModel& model, const CMatrix& relations) {
    const int n = model.spec.n();
    if (relations.rows() != n || relations.cols() != n) throw ArgumentError("relation matrix must be n x n");
    if (model.trivial()) return 0.0;
    const CMatrix sel = restriction_to_grades(model, model.reliable_degree);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const CMatrix& bi = model.compressions[static_cast<std::size_t>(i)];
            const CMatrix& bj = model.compressions[static_cast<std::size_t>(j)];
            const CMatrix r = (bj * bi - relations(j, i) * (bi * bj)) * sel;
            worst = std::max(worst, numerics::operator_norm(r));
        }
    }
    return worst;
}

CMatrix symmetrized_basis(int n, const CMatrix& relations, int m) {
    if (n < 2) throw ArgumentError("symmetrized basis needs n ≥ 2");
    if (relations.rows() != n || relations.cols() != n) throw ArgumentError("relation matrix must be n x n");
    const WordIndex idx(n, m);
    std::vector<CVector> columns;
    std::vector<int> letters;
    // Nondecreasing words of length k, in lexicographic order.
    const std::function<void(int, int)> visit = [&](int remaining, int smallest) {
        if (remaining == 0) {
            CVector v = CVector::Zero(static_cast<Eigen::Index>(idx.dim()));
            std::vector<int> w = letters;
            do {
                Complex eps = 1.0;
                for (std::size_t a = 0; a < w.size(); ++a) {
                    for (std::size_t b = a + 1; b < w.size(); ++b) {
                        if (w[a] > w[b]) eps *= relations(w[a] - 1, w[b] - 1);
                    }
                }
                v(static_cast<Eigen::Index>(idx.index(Word(w)))) = std::conj(eps);
            } while (std::next_permutation(w.begin(), w.end()));
            columns.push_back(v / v.norm());
            return;
        }
        for (int l = smallest; l <= n; ++l) {
            letters.push_back(l);
            visit(remaining - 1, l);
            letters.pop_back();
        }
    };
    for (int k = 0; k <= m; ++k) visit(k, 1);
    CMatrix basis(static_cast<Eigen::Index>(idx.dim()), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = columns[c];
    return basis;
}

CMatrix functional_calculus(const NcPolynomial& f, const QuotientModel& model) {
    if (f.generators() != model.spec.n()) throw ArgumentError("polynomial and ideal differ in generator count");
    if (model.trivial()) return CMatrix(0, 0);
    return evaluate(f, std::span<const CMatrix>(model.compressions));
}

namespace {

CMatrix compressed_operator(const NcPolynomial& f, const QuotientModel& model) {
    if (f.generators() != model.spec.n()) throw ArgumentError("polynomial and ideal differ in generator count");
    if (f.degree() > model.spec.degree()) throw ArgumentError("polynomial degree exceeds truncation degree");
    const CSparse op = compressed_mult_matrix(f, model.spec.degree());
    const CMatrix fn = op * model.basis;
    return model.basis.adjoint() * fn;
}

}  // namespace

double quotient_distance(const NcPolynomial& f, const QuotientModel& model) {
    if (model.trivial() || f.is_zero()) return 0.0;
    return numerics::operator_norm(compressed_operator(f, model));
}

double quotient_distance(const NcPolynomial& f, const IdealSpec& spec) {
    return quotient_distance(f, build_quotient(spec));
}

double reliable_quotient_distance(const NcPolynomial& f, const QuotientModel& model) {
    if (model.trivial() || f.is_zero()) return 0.0;
    const CMatrix sel = restriction_to_grades(model, model.reliable_degree);
    if (sel.cols() == 0) return 0.0;
    return numerics::operator_norm(CMatrix(compressed_operator(f, model) * sel));
}

double caratheodory_distance(const NcPolynomial& p, int m0) {
    if (p.degree() > m0) throw ArgumentError("caratheodory_distance: polynomial degree exceeds m0");
    if (p.is_zero()) return 0.0;
    return numerics::operator_norm(compressed_mult_matrix(p, m0));
}

std::vector<double> generator_norms(const poisson::RowContraction& t, const IdealSpec& spec) {
    if (t.length() != spec.n()) throw ArgumentError("tuple length differs from generator count");
    std::vector<double> out;
    for (const NcPolynomial& g : spec.generators()) {
        out.push_back(numerics::operator_norm(evaluate(g, std::span<const CMatrix>(t.operators()))));
    }
    return out;
}

namespace {

void require_annihilation(const std::vector<double>& norms, double tol) {
    bool ok = true;
    std::ostringstream os;
    os << "tuple does not annihilate the ideal generators:";
    for (std::size_t g = 0; g < norms.size(); ++g) {
        if (norms[g] > tol) {
            ok = false;
            os << " generators[" << g << "] norm " << norms[g] << ";";
        }
    }
    if (!ok) throw PreconditionError(os.str());
}

}  // namespace

ConstrainedVonNeumann constrained_von_neumann_check(const poisson::RowContraction& t, const NcPolynomial& f,
                                                    const QuotientModel& model, double relation_tol) {
    ConstrainedVonNeumann out;
    out.generator_norms = generator_norms(t, model.spec);
    require_annihilation(out.generator_norms, relation_tol);
    out.lhs = numerics::operator_norm(evaluate(f, std::span<const CMatrix>(t.operators())));
    out.rhs = quotient_distance(f, model);
    return out;
}

QuotientPoissonResidual quotient_poisson_check(const poisson::RowContraction& t, const QuotientModel& model,
                                               double relation_tol) {
    require_annihilation(generator_norms(t, model.spec), relation_tol);
    const int n = model.spec.n();
    const int m = model.spec.degree();
    const poisson::PoissonKernelMatrix kernel = poisson::poisson_kernel(t, m);
    const Eigen::Index d = kernel.d;
    const Eigen::Index dim = model.basis.rows();

    // Row a of `flat` holds the d x d block K_a, row-major.
    CMatrix flat(dim, d * d);
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index h = 0; h < d; ++h) flat(a, r * d + h) = kernel.k(a * d + r, h);
        }
    }
    const auto blocks_gram = [d](const CMatrix& left, const CMatrix& right) {
        CMatrix g = CMatrix::Zero(d, d);
        CMatrix l(d, d);
        CMatrix r(d, d);
        for (Eigen::Index a = 0; a < left.rows(); ++a) {
            for (Eigen::Index i = 0; i < d; ++i) {
                for (Eigen::Index j = 0; j < d; ++j) {
                    l(i, j) = left(a, i * d + j);
                    r(i, j) = right(a, i * d + j);
                }
            }
            g.noalias() += l.adjoint() * r;
        }
        return g;
    };

    QuotientPoissonResidual out;
    const CMatrix lifted = model.basis.adjoint() * flat;  // blocks L_c = Σ_a conj(N(a, c)) K_a
    const CMatrix outside = flat - model.basis * lifted;
    const CMatrix og = blocks_gram(outside, outside);
    out.range_residual = std::sqrt(numerics::operator_norm(CMatrix(0.5 * (og + og.adjoint()))));

    const Eigen::Index r = model.dim();
    for (const Word& alpha : words_up_to(n, std::min(2, m))) {
        const CMatrix ba = word_product(model.compressions, alpha, r);
        const CMatrix ta = t.word_product(alpha);
        for (const Word& beta : words_up_to(n, std::min(2, m))) {
            const CMatrix x = ba * word_product(model.compressions, beta, r).adjoint();
            const CMatrix sandwich = blocks_gram(lifted, CMatrix(x * lifted));
            const CMatrix target = ta * t.word_product(beta).adjoint();
            out.covariance_residual = std::max(out.covariance_residual, numerics::operator_norm(CMatrix(sandwich - target)));
        }
    }
    return out;
}

}  // namespace fockalg::ideals
