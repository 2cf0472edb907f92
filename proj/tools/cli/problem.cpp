#include "problem.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fockalg::cli {

using nlohmann::json;

namespace {

std::string at(const std::string& field, std::size_t i) {
    return field + "[" + std::to_string(i) + "]";
}

Complex parse_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError(field, "expected a complex number [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

bool looks_complex(const json& j) {
    return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

CMatrix parse_matrix(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw InputError(field, "expected a nonempty row-major matrix");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) throw InputError(field, "matrix rows must be nonempty arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw InputError(at(field, static_cast<std::size_t>(r)), "ragged matrix row");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = parse_complex(row[static_cast<std::size_t>(c)],
                                    at(at(field, static_cast<std::size_t>(r)), static_cast<std::size_t>(c)));
        }
    }
    return m;
}

int parse_int(const json& j, const std::string& field, int min_value) {
    if (!j.is_number_integer()) throw InputError(field, "expected an integer");
    const auto v = j.get<long long>();
    if (v < min_value || v > 1'000'000) throw InputError(field, "integer out of range");
    return static_cast<int>(v);
}

Word parse_word(const json& j, const std::string& field, int n) {
    if (!j.is_array()) throw InputError(field, "expected an array of generator indices");
    std::vector<int> letters;
    for (std::size_t t = 0; t < j.size(); ++t) {
        const int l = parse_int(j[t], at(field, t), 1);
        if (l > n) throw InputError(at(field, t), "generator index exceeds n");
        letters.push_back(l);
    }
    return Word(std::move(letters));
}

struct PolyTerm {
    Word word;
    Complex coeff;
    std::optional<std::pair<int, int>> block;
};

std::vector<PolyTerm> parse_terms(const json& j, const std::string& field, int n) {
    if (!j.is_array()) throw InputError(field, "expected a list of {\"word\", \"coeff\"} terms");
    std::vector<PolyTerm> out;
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string f = at(field, t);
        const json& term = j[t];
        if (!term.is_object()) throw InputError(f, "expected an object");
        for (const auto& [key, value] : term.items()) {
            if (key != "word" && key != "coeff" && key != "block") throw InputError(f + "." + key, "unknown field");
        }
        if (!term.contains("word")) throw InputError(f + ".word", "missing field");
        if (!term.contains("coeff")) throw InputError(f + ".coeff", "missing field");
        PolyTerm pt{parse_word(term["word"], f + ".word", n), parse_complex(term["coeff"], f + ".coeff"), std::nullopt};
        if (term.contains("block")) {
            const json& b = term["block"];
            if (!b.is_array() || b.size() != 2) throw InputError(f + ".block", "expected [row, col]");
            pt.block = std::make_pair(parse_int(b[0], f + ".block[0]", 0), parse_int(b[1], f + ".block[1]", 0));
        }
        out.push_back(std::move(pt));
    }
    return out;
}

NcPolynomial parse_polynomial(const json& j, const std::string& field, int n) {
    NcPolynomial p(n);
    const auto terms = parse_terms(j, field, n);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (terms[t].block) throw InputError(at(field, t) + ".block", "matrix-valued terms are not accepted here");
        p.add_term(terms[t].word, terms[t].coeff);
    }
    return p;
}

const std::set<std::string>& allowed_fields(ProblemKind kind) {
    static const std::set<std::string> pick{"kind", "n", "points", "targets", "tol"};
    static const std::set<std::string> cara{"kind", "n", "polynomial", "degree", "tol"};
    static const std::set<std::string> poisson{"kind",      "n",   "operators", "points", "polynomial",
                                               "degree",    "tol", "kmax",      "alpha",  "beta"};
    static const std::set<std::string> ideal{"kind",      "n",      "generators", "lambda_q", "polynomial",
                                             "operators", "points", "degree",     "tol",      "kmax"};
    switch (kind) {
        case ProblemKind::Pick: return pick;
        case ProblemKind::Caratheodory: return cara;
        case ProblemKind::Poisson: return poisson;
        case ProblemKind::Ideal: return ideal;
    }
    return pick;
}

}  // namespace

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::Pick: return "pick";
        case ProblemKind::Caratheodory: return "caratheodory";
        case ProblemKind::Poisson: return "poisson";
        case ProblemKind::Ideal: return "ideal";
    }
    return "pick";
}

ProblemFile parse_problem(const json& doc) {
    if (!doc.is_object()) throw InputError("", "problem document must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw InputError("kind", "missing or not a string");
    ProblemFile p;
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "pick") {
        p.kind = ProblemKind::Pick;
    } else if (kind == "caratheodory") {
        p.kind = ProblemKind::Caratheodory;
    } else if (kind == "poisson") {
        p.kind = ProblemKind::Poisson;
    } else if (kind == "ideal") {
        p.kind = ProblemKind::Ideal;
    } else {
        throw InputError("kind", "unknown kind \"" + kind + "\"");
    }
    const auto& allowed = allowed_fields(p.kind);
    for (const auto& [key, value] : doc.items()) {
        if (!allowed.contains(key)) throw InputError(key, "unknown field for kind \"" + kind + "\"");
    }
    if (!doc.contains("n")) throw InputError("n", "missing field");
    p.n = parse_int(doc["n"], "n", 1);

    if (doc.contains("degree")) p.degree = parse_int(doc["degree"], "degree", 0);
    if (doc.contains("kmax")) p.kmax = parse_int(doc["kmax"], "kmax", 0);
    if (doc.contains("tol")) {
        if (!doc["tol"].is_number() || !(doc["tol"].get<double>() > 0.0)) throw InputError("tol", "expected a positive number");
        p.tol = doc["tol"].get<double>();
    }

    if (doc.contains("points")) {
        const json& pts = doc["points"];
        if (!pts.is_array() || pts.empty()) throw InputError("points", "expected a nonempty list of points");
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const std::string f = at("points", j);
            if (!pts[j].is_array() || static_cast<int>(pts[j].size()) != p.n) {
                throw InputError(f, "expected " + std::to_string(p.n) + " complex coordinates");
            }
            CVector c(p.n);
            for (int t = 0; t < p.n; ++t) c(t) = parse_complex(pts[j][static_cast<std::size_t>(t)], at(f, static_cast<std::size_t>(t)));
            BallPoint pt(c);
            if (!(pt.norm() < 1.0) && p.kind != ProblemKind::Ideal) {
                std::ostringstream os;
                os << "|λ| = " << pt.norm() << " is not inside the open unit ball";
                throw InputError(f, os.str());
            }
            p.points.push_back(std::move(pt));
        }
    }

    if (doc.contains("targets")) {
        const json& tg = doc["targets"];
        if (!tg.is_array() || tg.empty()) throw InputError("targets", "expected a nonempty list");
        p.scalar_targets = looks_complex(tg[0]);
        for (std::size_t j = 0; j < tg.size(); ++j) {
            const std::string f = at("targets", j);
            CMatrix w = looks_complex(tg[j]) ? CMatrix::Constant(1, 1, parse_complex(tg[j], f)) : parse_matrix(tg[j], f);
            if (looks_complex(tg[j]) != p.scalar_targets) throw InputError(f, "mixes scalar and matrix targets");
            if (w.rows() != w.cols()) throw InputError(f, "target must be square");
            if (!p.targets.empty() && w.rows() != p.targets.front().rows()) {
                throw InputError(f, "target size " + std::to_string(w.rows()) + " differs from N = " +
                                        std::to_string(p.targets.front().rows()));
            }
            p.targets.push_back(std::move(w));
        }
    }

    if (doc.contains("polynomial")) p.polynomial = parse_polynomial(doc["polynomial"], "polynomial", p.n);

    if (doc.contains("generators")) {
        const json& gs = doc["generators"];
        if (!gs.is_array()) throw InputError("generators", "expected a list of polynomials");
        for (std::size_t g = 0; g < gs.size(); ++g) {
            NcPolynomial poly = parse_polynomial(gs[g], at("generators", g), p.n);
            if (poly.is_zero()) throw InputError(at("generators", g), "zero generator");
            p.generators.push_back(std::move(poly));
        }
    }

    if (doc.contains("lambda_q")) {
        const json& lq = doc["lambda_q"];
        if (p.n < 2) throw InputError("lambda_q", "q-commutation relations need n >= 2");
        const std::size_t pairs = static_cast<std::size_t>(p.n) * static_cast<std::size_t>(p.n - 1) / 2;
        std::vector<Complex> values;
        if (looks_complex(lq)) {
            p.uniform_lambda = true;
            values.assign(pairs, parse_complex(lq, "lambda_q"));
        } else {
            if (!lq.is_array() || lq.size() != pairs) {
                throw InputError("lambda_q", "expected one complex number or " + std::to_string(pairs) + " of them");
            }
            for (std::size_t t = 0; t < pairs; ++t) values.push_back(parse_complex(lq[t], at("lambda_q", t)));
        }
        p.lambda_q = std::move(values);
    }

    if (doc.contains("operators")) {
        const json& ops = doc["operators"];
        if (!ops.is_array() || static_cast<int>(ops.size()) != p.n) {
            throw InputError("operators", "expected n = " + std::to_string(p.n) + " square matrices");
        }
        for (std::size_t i = 0; i < ops.size(); ++i) {
            CMatrix t = parse_matrix(ops[i], at("operators", i));
            if (t.rows() != t.cols()) throw InputError(at("operators", i), "operator must be square");
            if (!p.operators.empty() && t.rows() != p.operators.front().rows()) {
                throw InputError(at("operators", i), "operators must share one size");
            }
            p.operators.push_back(std::move(t));
        }
    }

    if (doc.contains("alpha")) p.alpha = parse_word(doc["alpha"], "alpha", p.n);
    if (doc.contains("beta")) p.beta = parse_word(doc["beta"], "beta", p.n);

    switch (p.kind) {
        case ProblemKind::Pick:
            if (p.points.empty()) throw InputError("points", "missing field");
            if (p.targets.size() != p.points.size()) {
                throw InputError("targets", "expected one target per point (" + std::to_string(p.points.size()) + ")");
            }
            break;
        case ProblemKind::Caratheodory:
            if (!p.polynomial) throw InputError("polynomial", "missing field");
            break;
        case ProblemKind::Poisson:
            if (p.operators.empty() && p.points.empty()) throw InputError("operators", "give operators or points");
            if (!p.operators.empty() && !p.points.empty()) throw InputError("points", "give operators or points, not both");
            break;
        case ProblemKind::Ideal:
            if (p.lambda_q && !p.generators.empty()) throw InputError("lambda_q", "give generators or lambda_q, not both");
            if (!p.operators.empty() && !p.points.empty()) throw InputError("points", "give operators or points, not both");
            for (std::size_t j = 0; j < p.points.size(); ++j) {
                if (p.points[j].norm() > 1.0) throw InputError(at("points", j), "point outside the closed unit ball");
            }
            break;
    }
    return p;
}

ProblemFile parse_problem_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_problem(doc);
}

ProblemFile parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("", "cannot read problem file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

json complex_to_json(Complex c) {
    return json::array({c.real(), c.imag()});
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

json word_to_json(const Word& w) {
    json a = json::array();
    for (int l : w.letters()) a.push_back(l);
    return a;
}

}  // namespace

json polynomial_to_json(const NcPolynomial& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms()) terms.push_back({{"word", word_to_json(w)}, {"coeff", complex_to_json(c)}});
    return terms;
}

json matrix_polynomial_to_json(const NcMatrixPolynomial& p) {
    json terms = json::array();
    for (int r = 0; r < p.rows(); ++r) {
        for (int c = 0; c < p.cols(); ++c) {
            for (const auto& [w, coeff] : p.at(r, c).terms()) {
                terms.push_back({{"word", word_to_json(w)}, {"coeff", complex_to_json(coeff)}, {"block", {r, c}}});
            }
        }
    }
    return terms;
}

json serialize(const ProblemFile& p) {
    json doc;
    doc["kind"] = to_string(p.kind);
    doc["n"] = p.n;
    if (!p.points.empty()) {
        json pts = json::array();
        for (const BallPoint& pt : p.points) {
            json coords = json::array();
            for (int t = 0; t < pt.dimension(); ++t) coords.push_back(complex_to_json(pt[t]));
            pts.push_back(std::move(coords));
        }
        doc["points"] = std::move(pts);
    }
    if (!p.targets.empty()) {
        json tg = json::array();
        for (const CMatrix& w : p.targets) tg.push_back(p.scalar_targets ? complex_to_json(w(0, 0)) : matrix_to_json(w));
        doc["targets"] = std::move(tg);
    }
    if (p.polynomial) doc["polynomial"] = polynomial_to_json(*p.polynomial);
    if (!p.generators.empty()) {
        json gs = json::array();
        for (const NcPolynomial& g : p.generators) gs.push_back(polynomial_to_json(g));
        doc["generators"] = std::move(gs);
    }
    if (p.lambda_q) {
        if (p.uniform_lambda) {
            doc["lambda_q"] = complex_to_json(p.lambda_q->front());
        } else {
            json lq = json::array();
            for (const Complex& c : *p.lambda_q) lq.push_back(complex_to_json(c));
            doc["lambda_q"] = std::move(lq);
        }
    }
    if (!p.operators.empty()) {
        json ops = json::array();
        for (const CMatrix& t : p.operators) ops.push_back(matrix_to_json(t));
        doc["operators"] = std::move(ops);
    }
    if (p.alpha) doc["alpha"] = word_to_json(*p.alpha);
    if (p.beta) doc["beta"] = word_to_json(*p.beta);
    if (p.degree) doc["degree"] = *p.degree;
    if (p.tol) doc["tol"] = *p.tol;
    if (p.kmax) doc["kmax"] = *p.kmax;
    return doc;
}

}  // namespace fockalg::cli
