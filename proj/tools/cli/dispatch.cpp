#include "dispatch.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fockalg/fock.hpp"
#include "fockalg/ideals.hpp"
#include "fockalg/numerics.hpp"
#include "fockalg/pick.hpp"
#include "fockalg/poisson.hpp"

namespace fockalg::cli {

using nlohmann::json;

namespace {

constexpr double kConvergenceSlack = 1e-3;

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::string join(const std::vector<std::string>& words) {
    std::string s;
    for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
    return s;
}

struct Resolved {
    int degree;
    double tol;
    int kmax;
};

Resolved resolve(const ProblemFile& p, const Options& o, int fallback_degree) {
    Resolved r{};
    r.degree = o.degree.value_or(p.degree.value_or(fallback_degree));
    r.tol = o.tol.value_or(p.tol.value_or(numerics::kDefaultPsdTolerance));
    r.kmax = o.kmax.value_or(p.kmax.value_or(std::max(r.degree + 1, 50)));
    return r;
}

void require_kind(const ProblemFile& p, ProblemKind kind, const std::string& command) {
    if (p.kind != kind) {
        throw InputError("kind", "command \"" + command + "\" expects kind \"" + to_string(kind) + "\", got \"" +
                                     to_string(p.kind) + "\"");
    }
}

const NcPolynomial& require_polynomial(const ProblemFile& p) {
    if (!p.polynomial) throw InputError("polynomial", "missing field");
    if (p.polynomial->is_zero()) throw InputError("polynomial", "zero polynomial");
    return *p.polynomial;
}

json vector_to_json(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json word_json(const Word& w) {
    json a = json::array();
    for (int l : w.letters()) a.push_back(l);
    return a;
}

// ---------------------------------------------------------------- pick

pick::PickProblem make_pick(const ProblemFile& p) {
    return pick::PickProblem(p.points, p.targets);
}

Report run_pick(const std::string& sub, const ProblemFile& file, const Options& opts, Report report) {
    require_kind(file, ProblemKind::Pick, report.command);
    const Resolved r = resolve(file, opts, default_degree(file.n));
    report.parameters["tol"] = r.tol;
    const pick::PickProblem problem = make_pick(file);
    report.parameters["k"] = problem.nodes();
    report.parameters["N"] = problem.target_size();

    if (sub == "check") {
        const auto cert = pick::certify(problem, r.tol);
        report.results["feasible"] = cert.feasible;
        report.results["psd"] = cert.psd;
        report.results["marginal"] = cert.marginal;
        report.results["min_eigenvalue"] = cert.min_eigenvalue;
        report.results["min_norm"] = cert.min_norm;
        report.results["min_norm_within_unit_ball"] = cert.min_norm <= 1.0 + r.tol;
        if (cert.marginal) report.warnings.push_back("Pick matrix is marginally PSD: min eigenvalue within tolerance of 0");
        if (cert.psd != (cert.min_norm <= 1.0 + r.tol)) {
            report.warnings.push_back("PSD test and minimal-norm test disagree (boundary case)");
        }
        report.notes.push_back("feasibility is decided by positive semidefiniteness (>= 0 within tol); strict "
                               "positive definiteness is not required");
        report.notes.push_back("for interpolation by the norm-closed (disc) algebra the norm bound holds as "
                               "<= 1 + eps for every eps > 0");
        if (!cert.feasible) report.exit_code = kPropertyViolation;
    } else if (sub == "norm") {
        report.results["min_norm"] = pick::min_interpolation_norm(problem);
    } else if (sub == "interpolant") {
        const auto phi = pick::lagrange_interpolant(problem);
        double worst = 0.0;
        for (int j = 0; j < problem.nodes(); ++j) {
            worst = std::max(worst, numerics::operator_norm(CMatrix(phi.evaluate(problem.points()[j]) - problem.targets()[j])));
        }
        report.results["degree"] = phi.degree();
        report.results["max_node_residual"] = worst;
        report.results["polynomial"] = matrix_polynomial_to_json(phi);
        report.notes.push_back("the interpolant matches the data exactly but carries no norm guarantee");
    } else if (sub == "classical") {
        const auto classical = numerics::psd_check(pick::classical_ball_matrix(problem), r.tol);
        const auto nc = numerics::psd_check(pick::pick_matrix(problem, 1.0), r.tol);
        report.results["classical_psd"] = classical.is_psd;
        report.results["classical_min_eigenvalue"] = classical.min_eigenvalue;
        report.results["pick_psd"] = nc.is_psd;
        report.results["pick_min_eigenvalue"] = nc.min_eigenvalue;
        report.notes.push_back("the classical matrix is a necessary condition for bounded analytic interpolation "
                               "on the ball; the noncommutative Pick condition implies it");
        if (!classical.is_psd) report.exit_code = kPropertyViolation;
    } else {
        throw InputError("", "unknown pick subcommand \"" + sub + "\" (check|norm|interpolant|classical)");
    }
    return report;
}

// ---------------------------------------------------------------- caratheodory

Report run_caratheodory(const ProblemFile& file, const Options& opts, Report report) {
    require_kind(file, ProblemKind::Caratheodory, report.command);
    const NcPolynomial& p = require_polynomial(file);
    const Resolved r = resolve(file, opts, std::max(p.degree(), 0));
    if (r.degree < p.degree()) throw InputError("degree", "degree must be at least deg p");
    report.parameters["m0"] = r.degree;
    require_fock_dimension(file.n, r.degree);
    report.results["distance"] = ideals::caratheodory_distance(p, r.degree);
    report.results["coefficient_l2_norm"] = p.l2_norm();
    report.results["sup_norm_upper_bound"] = homogeneous_l2_sum(p);
    return report;
}

// ---------------------------------------------------------------- poisson

poisson::RowContraction make_contraction(const ProblemFile& p) {
    if (!p.operators.empty()) return poisson::RowContraction(p.operators);
    if (!p.points.empty()) return poisson::RowContraction::diagonal(p.points);
    throw InputError("operators", "give operators or points");
}

Report run_poisson(const std::string& sub, const ProblemFile& file, const Options& opts, Report report) {
    require_kind(file, ProblemKind::Poisson, report.command);
    const Resolved r = resolve(file, opts, default_degree(file.n));
    const poisson::RowContraction t = make_contraction(file);
    report.warnings.insert(report.warnings.end(), t.warnings().begin(), t.warnings().end());
    report.parameters["tol"] = r.tol;
    report.parameters["d"] = static_cast<int>(t.dim());

    if (sub == "c0") {
        report.parameters["kmax"] = r.kmax;
        const auto seq = poisson::c0_sequence(t, r.kmax);
        report.results["sigma"] = vector_to_json(seq);
        report.results["certified_c0"] = poisson::c0_certified(seq, r.tol);
        if (!poisson::c0_certified(seq, r.tol)) report.exit_code = kPropertyViolation;
        return report;
    }

    report.parameters["m"] = r.degree;
    if (sub == "kernel") {
        const auto kernel = poisson::poisson_kernel(t, r.degree, r.tol);
        const auto seq = poisson::c0_sequence(t, r.degree + 1);
        CMatrix expected = CMatrix::Identity(t.dim(), t.dim());
        CMatrix power = CMatrix::Identity(t.dim(), t.dim());
        for (int k = 0; k <= r.degree; ++k) power = t.apply_map(power);
        expected -= power;
        report.results["rows"] = static_cast<long long>(kernel.k.rows());
        report.results["tail"] = kernel.tail;
        report.results["sigma_m_plus_1"] = seq.back();
        report.results["identity_residual"] =
            numerics::operator_norm(CMatrix(kernel.k.adjoint() * kernel.k - expected));
        report.results["certified"] = kernel.certified;
        report.results["minimal_subspace_dim"] = static_cast<long long>(poisson::minimal_subspace(kernel).cols());
        const int suggested = poisson::suggest_degree(t, r.tol, std::max(r.degree, 64));
        if (suggested >= 0) report.results["suggested_degree"] = suggested;
        if (!kernel.certified) {
            report.warnings.push_back("uncertified tail: ||I - K*K|| = " + short_number(kernel.tail) +
                                      " exceeds tol; use a larger degree or a radial scaling");
        }
    } else if (sub == "vonneumann") {
        const NcPolynomial& p = require_polynomial(file);
        const auto margin = poisson::von_neumann_margin(t, p, r.degree);
        report.results["lhs"] = margin.lhs;
        report.results["lower"] = margin.lower;
        report.results["upper"] = margin.upper;
        report.results["holds_upper"] = margin.lhs <= margin.upper + 1e-12;
        report.results["within_lower_plus_slack"] = margin.lhs <= margin.lower + kConvergenceSlack;
        if (!(margin.lhs <= margin.upper + 1e-12)) report.exit_code = kPropertyViolation;
        if (!(margin.lhs <= margin.lower + kConvergenceSlack)) {
            report.warnings.push_back("lhs exceeds the truncated lower bound; increase --degree until it stabilizes");
        }
    } else if (sub == "covariance") {
        const Word alpha = file.alpha.value_or(Word{});
        const Word beta = file.beta.value_or(Word{});
        report.parameters["alpha"] = word_json(alpha);
        report.parameters["beta"] = word_json(beta);
        report.results["residual"] = poisson::poisson_covariance_check(t, alpha, beta, r.degree);
        report.results["sigma_m_plus_1"] = poisson::c0_sequence(t, r.degree + 1).back();
    } else {
        throw InputError("", "unknown poisson subcommand \"" + sub + "\" (kernel|c0|vonneumann|covariance)");
    }
    return report;
}

// ---------------------------------------------------------------- ideal

CMatrix relation_matrix(const ProblemFile& p) {
    CMatrix lambda = CMatrix::Zero(p.n, p.n);
    std::size_t t = 0;
    for (int i = 0; i < p.n; ++i) {
        for (int j = i + 1; j < p.n; ++j) lambda(j, i) = (*p.lambda_q)[t++];
    }
    return lambda;
}

ideals::IdealSpec make_spec(const ProblemFile& p, int m) {
    if (p.lambda_q) return ideals::q_commutation_spec(p.n, relation_matrix(p), m);
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
        if (p.generators[g].degree() > m) {
            throw InputError("generators[" + std::to_string(g) + "]", "degree exceeds the truncation degree");
        }
    }
    return ideals::IdealSpec(p.n, p.generators, m);
}

Report run_ideal(const std::string& sub, const ProblemFile& file, const Options& opts, Report report) {
    require_kind(file, ProblemKind::Ideal, report.command);
    const Resolved r = resolve(file, opts, default_degree(file.n));
    report.parameters["m"] = r.degree;
    report.parameters["tol"] = r.tol;
    const ideals::IdealSpec spec = make_spec(file, r.degree);
    const ideals::QuotientModel model = ideals::build_quotient(spec);
    report.parameters["reliable_degree"] = model.reliable_degree;
    report.notes.push_back("relation and semi-invariance residuals are evaluated on grades <= reliable_degree = " +
                           std::to_string(model.reliable_degree));
    if (model.approximate) {
        report.warnings.push_back("approximation only: non-homogeneous generators, the padded truncated model has "
                                  "no grade-exactness guarantee");
    }
    if (model.trivial()) report.warnings.push_back("trivial quotient: N_J^(m) = {0}");

    if (sub == "basis") {
        const CMatrix ideal = ideals::ideal_subspace(spec);
        report.results["fock_dim"] = static_cast<long long>(model.basis.rows());
        report.results["ideal_dim"] = static_cast<long long>(ideal.cols());
        report.results["quotient_dim"] = static_cast<long long>(model.dim());
        report.results["homogeneous"] = spec.homogeneous();
        if (!model.approximate) {
            json dims = json::array();
            for (int d : model.grade_dimensions()) dims.push_back(d);
            report.results["grade_dimensions"] = std::move(dims);
        }
    } else if (sub == "distance") {
        const NcPolynomial& f = require_polynomial(file);
        if (f.degree() > r.degree) throw InputError("polynomial", "degree exceeds the truncation degree");
        report.results["quotient_distance"] = ideals::quotient_distance(f, model);
        report.results["reliable_quotient_distance"] = ideals::reliable_quotient_distance(f, model);
        report.results["sup_norm_upper_bound"] = homogeneous_l2_sum(f);
        report.notes.push_back("the truncated quotient distance is a lower bound, nondecreasing in m");
    } else if (sub == "compressions") {
        json bs = json::array();
        for (const CMatrix& b : model.compressions) bs.push_back(matrix_to_json(b));
        report.results["quotient_dim"] = static_cast<long long>(model.dim());
        report.results["compressions"] = std::move(bs);
        const double semi = ideals::semi_invariance_residual(model);
        report.results["semi_invariance_residual"] = semi;
        if (semi > r.tol) report.exit_code = kPropertyViolation;
        if (file.lambda_q) {
            const double rel = ideals::q_relation_residual(model, relation_matrix(file));
            report.results["q_relation_residual"] = rel;
            if (rel > r.tol) report.exit_code = kPropertyViolation;
        }
    } else if (sub == "check") {
        const NcPolynomial& f = require_polynomial(file);
        if (file.operators.empty() && file.points.empty()) throw InputError("operators", "give operators or points");
        const poisson::RowContraction t = !file.operators.empty() ? poisson::RowContraction(file.operators)
                                                                  : poisson::RowContraction::diagonal(file.points);
        report.warnings.insert(report.warnings.end(), t.warnings().begin(), t.warnings().end());
        const auto seq = poisson::c0_sequence(t, r.degree + 1);
        report.results["sigma_m_plus_1"] = seq.back();
        if (!(seq.back() < 1.0)) report.warnings.push_back("tuple is not certified C_0 at this degree");
        const auto vn = ideals::constrained_von_neumann_check(t, f, model);
        report.results["lhs"] = vn.lhs;
        report.results["rhs"] = vn.rhs;
        report.results["generator_norms"] = vector_to_json(vn.generator_norms);
        report.results["within_slack"] = vn.lhs <= vn.rhs + kConvergenceSlack;
        if (!(vn.lhs <= vn.rhs + kConvergenceSlack)) {
            report.warnings.push_back("lhs exceeds the truncated quotient distance; increase --degree");
        }
        const auto res = ideals::quotient_poisson_check(t, model);
        report.results["range_residual"] = res.range_residual;
        report.results["covariance_residual"] = res.covariance_residual;
    } else {
        throw InputError("", "unknown ideal subcommand \"" + sub + "\" (basis|distance|compressions|check)");
    }
    return report;
}

}  // namespace

int default_degree(int n) {
    if (n <= 1) return 12;
    if (n == 2) return 8;
    if (n == 3) return 6;
    return 4;
}

Report dispatch(const std::vector<std::string>& command, const ProblemFile& problem, const Options& options) {
    if (command.empty()) throw InputError("", "missing command");
    Report report;
    report.command = join(command);
    const std::string& group = command[0];
    const std::string sub = command.size() > 1 ? command[1] : "";
    if (command.size() > 2) throw InputError("", "too many command words");
    if (group == "pick") return run_pick(sub, problem, options, std::move(report));
    if (group == "caratheodory") {
        if (!sub.empty()) throw InputError("", "caratheodory takes no subcommand");
        return run_caratheodory(problem, options, std::move(report));
    }
    if (group == "poisson") return run_poisson(sub, problem, options, std::move(report));
    if (group == "ideal") return run_ideal(sub, problem, options, std::move(report));
    throw InputError("", "unknown command \"" + group + "\" (pick|caratheodory|poisson|ideal)");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"fockalg: interpolation, Poisson kernels and quotients on truncated full Fock spaces"};
    std::vector<std::string> positional;
    Options opts;
    int degree = -1;
    double tol = -1.0;
    int kmax = -1;
    std::string out_path;
    app.add_option("args", positional, "command words followed by the problem file")->required();
    app.add_option("--degree", degree, "truncation degree m");
    app.add_option("--tol", tol, "PSD / certification tolerance (default 1e-10)");
    app.add_option("--kmax", kmax, "iterations for the C_0 sequence");
    app.add_flag("--json", opts.json, "emit a machine-readable report");
    app.add_option("--out", out_path, "also write the report to this path");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kComputed : kInputError;
    }
    if (degree >= 0) opts.degree = degree;
    if (tol > 0.0) opts.tol = tol;
    if (kmax >= 0) opts.kmax = kmax;
    if (!out_path.empty()) opts.out = out_path;

    std::vector<std::string> command(positional.begin(), positional.end());
    std::string path;
    if (!command.empty()) {
        path = command.back();
        command.pop_back();
    }

    Report report;
    try {
        if (command.empty()) throw InputError("", "usage: fockalg <command> [subcommand] <problem.json>");
        const ProblemFile problem = parse_problem_file(path);
        report = dispatch(command, problem, opts);
    } catch (const ResourceError& e) {
        report = error_report(join(command), kResourceCap, e.what());
    } catch (const Error& e) {
        report = error_report(join(command), kInputError, e.what());
    }

    const std::string text = opts.json ? report.to_json().dump(2) + "\n" : report.to_text();
    (report.exit_code >= kInputError && !opts.json ? err : out) << text;
    if (opts.out) {
        std::ofstream f(*opts.out);
        if (!f) {
            err << "cannot write " << *opts.out << "\n";
            return kInputError;
        }
        f << text;
    }
    return report.exit_code;
}

}  // namespace fockalg::cli
