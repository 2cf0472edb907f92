#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockalg/errors.hpp"
#include "fockalg/polynomial.hpp"
#include "fockalg/types.hpp"

namespace fockalg::cli {

/// Schema or invariant violation in a problem file. `field` names the
/// offending location, e.g. "points[0]".
class InputError : public Error {
public:
    InputError(std::string field, const std::string& message)
        : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class ProblemKind { Pick, Caratheodory, Poisson, Ideal };

[[nodiscard]] std::string to_string(ProblemKind kind);

/// Typed view of a validated problem document. Optional members are absent
/// when the field was not given.
struct ProblemFile {
    ProblemKind kind = ProblemKind::Pick;
    int n = 0;
    std::vector<BallPoint> points;
    std::vector<CMatrix> targets;
    /// Targets were written as bare complex numbers rather than matrices.
    bool scalar_targets = false;
    std::optional<NcPolynomial> polynomial;
    std::vector<NcPolynomial> generators;
    /// Relation coefficients λ_{ji} in pair order (1,2), (1,3), ..., (2,3), ...
    std::optional<std::vector<Complex>> lambda_q;
    /// lambda_q was a single complex number applied to every pair.
    bool uniform_lambda = false;
    std::vector<CMatrix> operators;
    std::optional<Word> alpha;
    std::optional<Word> beta;
    std::optional<int> degree;
    std::optional<double> tol;
    std::optional<int> kmax;
};

[[nodiscard]] ProblemFile parse_problem(const nlohmann::json& doc);
[[nodiscard]] ProblemFile parse_problem_text(const std::string& text);
/// Reads and validates a problem file; I/O failures raise InputError on field "".
[[nodiscard]] ProblemFile parse_problem_file(const std::string& path);

/// Canonical document for a parsed problem (inverse of parse_problem).
[[nodiscard]] nlohmann::json serialize(const ProblemFile& problem);

/// JSON encodings shared with reports.
[[nodiscard]] nlohmann::json complex_to_json(Complex c);
[[nodiscard]] nlohmann::json matrix_to_json(const CMatrix& m);
[[nodiscard]] nlohmann::json polynomial_to_json(const NcPolynomial& p);
[[nodiscard]] nlohmann::json matrix_polynomial_to_json(const NcMatrixPolynomial& p);

}  // namespace fockalg::cli
